use std::str::FromStr;

use super::MatrixRep;
use crate::error::{Error, Result};
use crate::exactlin::PackedMatrix;

/// Single-argument functors on representations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Functor {
    Dual,
    Alt2,
    Sym2,
    Alt3,
}

impl FromStr for Functor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dual" => Ok(Functor::Dual),
            "alt2" => Ok(Functor::Alt2),
            "sym2" => Ok(Functor::Sym2),
            "alt3" => Ok(Functor::Alt3),
            _ => Err(Error::Invalid(format!("unknown functor `{s}`"))),
        }
    }
}

impl Functor {
    pub fn dim(self, d: usize) -> usize {
        match self {
            Functor::Dual => d,
            Functor::Alt2 => d * d.saturating_sub(1) / 2,
            Functor::Sym2 => d * (d + 1) / 2,
            Functor::Alt3 => d * d.saturating_sub(1) * d.saturating_sub(2) / 6,
        }
    }

    pub fn apply_matrix(self, g: &PackedMatrix) -> Result<PackedMatrix> {
        match self {
            Functor::Dual => g
                .inverse()
                .map(|i| i.transpose())
                .ok_or_else(|| Error::NonInvertible("matrix".into())),
            Functor::Alt2 => Ok(alt2_matrix(g)),
            Functor::Sym2 => Ok(sym2_matrix(g)),
            Functor::Alt3 => Ok(alt3_matrix(g)),
        }
    }
}

fn pairs(d: usize, strict: bool) -> Vec<(usize, usize)> {
    (0..d)
        .flat_map(|i| (if strict { i + 1 } else { i }..d).map(move |j| (i, j)))
        .collect()
}

/// `e_i ^ e_j -> g e_i ^ g e_j` on the basis `i < j` in lexicographic order.
pub fn alt2_matrix(g: &PackedMatrix) -> PackedMatrix {
    let m = g.modulus();
    let a = g.to_rows();
    let idx = pairs(g.rows(), true);
    PackedMatrix::from_fn(m, idx.len(), idx.len(), |r, c| {
        let ((k, l), (i, j)) = (idx[r], idx[c]);
        m.sub(m.mul(a[k][i], a[l][j]), m.mul(a[l][i], a[k][j]))
    })
}

/// `e_i e_j -> (g e_i)(g e_j)` on monomials `i <= j`, no division.
pub fn sym2_matrix(g: &PackedMatrix) -> PackedMatrix {
    let m = g.modulus();
    let a = g.to_rows();
    let idx = pairs(g.rows(), false);
    PackedMatrix::from_fn(m, idx.len(), idx.len(), |r, c| {
        let ((k, l), (i, j)) = (idx[r], idx[c]);
        if k == l {
            m.mul(a[k][i], a[k][j])
        } else {
            m.add(m.mul(a[k][i], a[l][j]), m.mul(a[l][i], a[k][j]))
        }
    })
}

/// `e_i ^ e_j ^ e_k` for `i < j < k`; entries are 3x3 minors.
pub fn alt3_matrix(g: &PackedMatrix) -> PackedMatrix {
    let m = g.modulus();
    let a = g.to_rows();
    let d = g.rows();
    let idx: Vec<[usize; 3]> = (0..d)
        .flat_map(|i| (i + 1..d).flat_map(move |j| (j + 1..d).map(move |k| [i, j, k])))
        .collect();
    PackedMatrix::from_fn(m, idx.len(), idx.len(), |r, c| {
        let (rw, cl) = (idx[r], idx[c]);
        let e = |x: usize, y: usize| a[rw[x]][cl[y]];
        let pos = m.add(
            m.add(
                m.mul(m.mul(e(0, 0), e(1, 1)), e(2, 2)),
                m.mul(m.mul(e(0, 1), e(1, 2)), e(2, 0)),
            ),
            m.mul(m.mul(e(0, 2), e(1, 0)), e(2, 1)),
        );
        let neg = m.add(
            m.add(
                m.mul(m.mul(e(0, 2), e(1, 1)), e(2, 0)),
                m.mul(m.mul(e(0, 0), e(1, 2)), e(2, 1)),
            ),
            m.mul(m.mul(e(0, 1), e(1, 0)), e(2, 2)),
        );
        m.sub(pos, neg)
    })
}

impl MatrixRep {
    pub fn apply(&self, f: Functor) -> Result<MatrixRep> {
        let images = self
            .images()
            .iter()
            .map(|g| f.apply_matrix(g))
            .collect::<Result<Vec<_>>>()?;
        self.with_images(images)
    }

    pub fn dual(&self) -> Result<MatrixRep> {
        self.apply(Functor::Dual)
    }
    pub fn alt2(&self) -> Result<MatrixRep> {
        self.apply(Functor::Alt2)
    }
    pub fn sym2(&self) -> Result<MatrixRep> {
        self.apply(Functor::Sym2)
    }
    pub fn alt3(&self) -> Result<MatrixRep> {
        self.apply(Functor::Alt3)
    }

    /// Kronecker product; both factors must share their source.
    pub fn tensor(&self, other: &MatrixRep) -> Result<MatrixRep> {
        if !self.same_source(other) {
            return Err(Error::Invalid("tensor factors come from different groups".into()));
        }
        let images = self
            .images()
            .iter()
            .zip(other.images())
            .map(|(a, b)| a.kronecker(b))
            .collect::<Result<Vec<_>>>()?;
        self.with_images(images)
    }
}

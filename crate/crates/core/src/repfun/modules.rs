use super::MatrixRep;
use crate::error::{Error, Result};
use crate::exactlin::{kernel_basis, rref, PackedMatrix};

/// Largest dimension accepted by [`invariant_bilinear_forms`] (`d^2` unknowns).
const MAX_FORM_DIM: usize = 128;

/// Basis (as rows) of the vectors fixed by every image.
pub fn fixed_points(rep: &MatrixRep) -> Result<PackedMatrix> {
    let md = rep.modulus();
    let d = rep.dim();
    let id = PackedMatrix::identity(md, d);
    let mut stack = PackedMatrix::zeros(md, 0, d);
    for g in rep.images() {
        stack = stack.vstack(&g.sub(&id)?)?;
    }
    kernel_basis(&stack)
}

/// Basis of `{B : g^T B g = B}` over all images.
pub fn invariant_bilinear_forms(rep: &MatrixRep) -> Result<Vec<PackedMatrix>> {
    let md = rep.modulus();
    let d = rep.dim();
    if d > MAX_FORM_DIM {
        return Err(Error::TooLarge(format!(
            "bilinear forms in dimension {d} (limit {MAX_FORM_DIM})"
        )));
    }
    let id = PackedMatrix::identity(md, d * d);
    let mut stack = PackedMatrix::zeros(md, 0, d * d);
    for g in rep.images() {
        let t = g.transpose();
        stack = stack.vstack(&t.kronecker(&t)?.sub(&id)?)?;
    }
    let ker = kernel_basis(&stack)?;
    Ok((0..ker.rows())
        .map(|r| {
            let v = ker.row(r);
            PackedMatrix::from_fn(md, d, d, |i, j| v[i * d + j])
        })
        .collect())
}

/// Echelon basis of a span, with a reducer modulo it.
struct Span {
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Span {
    fn new(rep: &MatrixRep, vectors: &[Vec<u32>]) -> Result<Self> {
        let d = rep.dim();
        if vectors.iter().any(|v| v.len() != d) {
            return Err(Error::Dimension(format!("span vectors must have length {d}")));
        }
        let red = rref(&PackedMatrix::from_rows_with_cols(rep.modulus(), d, vectors)?)?;
        Ok(Span {
            rows: (0..red.rank).map(|i| red.matrix.row(i)).collect(),
            pivots: red.pivots,
        })
    }

    fn reduce(&self, rep: &MatrixRep, v: &mut [u32]) {
        let md = rep.modulus();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = v[c];
            if f != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = md.sub(*x, md.mul(f, r));
                }
            }
        }
    }

    fn check_stable(&self, rep: &MatrixRep) -> Result<()> {
        for (name, g) in rep.names().iter().zip(rep.images()) {
            for (i, w) in self.rows.iter().enumerate() {
                let mut v = g.apply(w)?;
                self.reduce(rep, &mut v);
                if v.iter().any(|&x| x != 0) {
                    return Err(Error::NotStable {
                        generator: name.clone(),
                        vector: i,
                    });
                }
            }
        }
        Ok(())
    }

    fn free_columns(&self, d: usize) -> Vec<usize> {
        (0..d).filter(|c| !self.pivots.contains(c)).collect()
    }
}

/// The action induced on `V / span(vectors)`, in coordinates given by the
/// non-pivot columns of the span's echelon form.
pub fn quotient_module(rep: &MatrixRep, vectors: &[Vec<u32>]) -> Result<MatrixRep> {
    let span = Span::new(rep, vectors)?;
    span.check_stable(rep)?;
    let d = rep.dim();
    let free = span.free_columns(d);
    let md = rep.modulus();
    let images = rep
        .images()
        .iter()
        .map(|g| {
            let cols: Vec<Vec<u32>> = free
                .iter()
                .map(|&f| {
                    let mut v: Vec<u32> = (0..d).map(|i| g.get(i, f)).collect();
                    span.reduce(rep, &mut v);
                    free.iter().map(|&c| v[c]).collect()
                })
                .collect();
            PackedMatrix::from_fn(md, free.len(), free.len(), |i, j| cols[j][i])
        })
        .collect();
    rep.with_images(images)
}

/// The action restricted to a stable span, in its echelon basis.
pub fn submodule(rep: &MatrixRep, vectors: &[Vec<u32>]) -> Result<MatrixRep> {
    let span = Span::new(rep, vectors)?;
    span.check_stable(rep)?;
    let md = rep.modulus();
    let r = span.rows.len();
    let images = rep
        .images()
        .iter()
        .map(|g| {
            let cols: Vec<Vec<u32>> = span
                .rows
                .iter()
                .map(|w| {
                    let v = g.apply(w).expect("dimensions match");
                    span.pivots.iter().map(|&c| v[c]).collect()
                })
                .collect();
            PackedMatrix::from_fn(md, r, r, |i, j| cols[j][i])
        })
        .collect();
    rep.with_images(images)
}

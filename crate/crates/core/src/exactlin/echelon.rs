//! Row reduction over prime fields. `F_2` runs directly on packed words.

use super::matrix::PackedMatrix;
use super::modulus::Modulus;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: PackedMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

fn require_field(m: &PackedMatrix) -> Result<()> {
    if m.modulus().is_field() {
        Ok(())
    } else {
        Err(Error::NotPrime(m.modulus().q() as u64))
    }
}

fn words_of(m: &PackedMatrix) -> Vec<Vec<u64>> {
    (0..m.rows()).map(|r| m.row_words(r).to_vec()).collect()
}

#[inline]
fn bit(row: &[u64], c: usize) -> bool {
    (row[c / 64] >> (c % 64)) & 1 == 1
}

#[inline]
fn xor_from(dst: &mut [u64], src: &[u64], from_word: usize) {
    for (d, s) in dst[from_word..].iter_mut().zip(&src[from_word..]) {
        *d ^= s;
    }
}

/// Gauss-Jordan over packed `F_2` rows; `full` also clears above pivots.
fn eliminate_f2(rows: &mut [Vec<u64>], cols: usize, full: bool) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| bit(&rows[i], c)) else {
            continue;
        };
        rows.swap(r, p);
        let w = c / 64;
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            if bit(row, c) {
                xor_from(row, pivot_row, w);
            }
        }
        if full {
            let (above, rest) = head.split_at_mut(r);
            for row in above.iter_mut() {
                if bit(row, c) {
                    xor_from(row, &rest[0], w);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn eliminate_fp(m: Modulus, rows: &mut [Vec<u32>], cols: usize, full: bool) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let s = m.inv(rows[r][c]).expect("nonzero in a field");
        for x in rows[r][c..].iter_mut() {
            *x = m.mul(*x, s);
        }
        let pivot_row = rows[r].clone();
        let targets: Box<dyn Iterator<Item = usize>> = if full {
            Box::new((0..rows.len()).filter(move |&i| i != r))
        } else {
            Box::new(r + 1..rows.len())
        };
        for i in targets {
            let f = rows[i][c];
            if f == 0 {
                continue;
            }
            let nf = m.neg(f);
            for (x, &y) in rows[i][c..].iter_mut().zip(&pivot_row[c..]) {
                if y != 0 {
                    *x = m.add(*x, m.mul(nf, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Reduced row echelon form over a prime field.
pub fn rref(m: &PackedMatrix) -> Result<Rref> {
    require_field(m)?;
    let modulus = m.modulus();
    if modulus.is_f2() {
        let mut rows = words_of(m);
        let pivots = eliminate_f2(&mut rows, m.cols(), true);
        let data = rows.concat();
        return Ok(Rref {
            matrix: PackedMatrix::from_words(modulus, m.rows(), m.cols(), data),
            rank: pivots.len(),
            pivots,
        });
    }
    let mut rows = m.to_rows();
    let pivots = eliminate_fp(modulus, &mut rows, m.cols(), true);
    Ok(Rref {
        matrix: PackedMatrix::from_reduced_rows(modulus, m.cols(), &rows),
        rank: pivots.len(),
        pivots,
    })
}

/// Rank via forward elimination only.
pub fn rank(m: &PackedMatrix) -> Result<usize> {
    require_field(m)?;
    if m.modulus().is_f2() {
        let mut rows = words_of(m);
        return Ok(eliminate_f2(&mut rows, m.cols(), false).len());
    }
    let mut rows = m.to_rows();
    Ok(eliminate_fp(m.modulus(), &mut rows, m.cols(), false).len())
}

/// Basis of `{v : M v = 0}`, one vector per row of the returned matrix.
pub fn kernel_basis(m: &PackedMatrix) -> Result<PackedMatrix> {
    let red = rref(m)?;
    let modulus = m.modulus();
    let cols = m.cols();
    let mut is_pivot = vec![None; cols];
    for (i, &c) in red.pivots.iter().enumerate() {
        is_pivot[c] = Some(i);
    }
    let free: Vec<usize> = (0..cols).filter(|&c| is_pivot[c].is_none()).collect();
    let mut out = PackedMatrix::zeros(modulus, free.len(), cols);
    for (k, &f) in free.iter().enumerate() {
        out.set(k, f, 1);
        for (i, &pc) in red.pivots.iter().enumerate() {
            let v = red.matrix.get(i, f);
            if v != 0 {
                out.set(k, pc, modulus.neg(v));
            }
        }
    }
    Ok(out)
}

/// Basis of the row space (the nonzero rows of the RREF).
pub fn row_space_basis(m: &PackedMatrix) -> Result<PackedMatrix> {
    let red = rref(m)?;
    let rows: Vec<Vec<u32>> = (0..red.rank).map(|i| red.matrix.row(i)).collect();
    Ok(PackedMatrix::from_reduced_rows(m.modulus(), m.cols(), &rows))
}

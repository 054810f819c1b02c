//! Kernels of large linear systems whose equations are produced on demand.
//!
//! Tall systems are compressed by random linear combinations (seeded, so the
//! result is reproducible), solved densely, and then every candidate kernel
//! generator is checked against every original equation. The check makes the
//! answer exact regardless of the random draw: a generating set of
//! `ker(R A)` that lies in `ker(A)` generates `ker(A)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::howell::kernel_of_rows;
use super::matrix::PackedMatrix;
use super::modulus::Modulus;
use crate::error::{Error, Result};

/// A system of linear equations over `Z/p^k`, enumerated in a fixed order.
pub trait EquationStream {
    fn modulus(&self) -> Modulus;
    fn unknowns(&self) -> usize;
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    /// Calls `f(index, terms)` for every equation, where `terms` lists
    /// `(unknown, coefficient)` pairs (repeated unknowns add up).
    fn for_each(&self, f: &mut dyn FnMut(usize, &[(usize, u32)]));
}

/// Rows of a dense matrix viewed as an equation stream.
pub struct DenseEquations<'a>(pub &'a PackedMatrix);

impl EquationStream for DenseEquations<'_> {
    fn modulus(&self) -> Modulus {
        self.0.modulus()
    }
    fn unknowns(&self) -> usize {
        self.0.cols()
    }
    fn len(&self) -> usize {
        self.0.rows()
    }
    fn for_each(&self, f: &mut dyn FnMut(usize, &[(usize, u32)])) {
        let mut terms = Vec::new();
        for r in 0..self.0.rows() {
            terms.clear();
            terms.extend(self.0.row(r).into_iter().enumerate().filter(|&(_, v)| v != 0));
            f(r, &terms);
        }
    }
}

fn dense_rows(src: &dyn EquationStream) -> Vec<Vec<u32>> {
    let m = src.modulus();
    let mut rows = Vec::with_capacity(src.len());
    src.for_each(&mut |_, terms| {
        let mut row = vec![0u32; src.unknowns()];
        for &(c, v) in terms {
            row[c] = m.add(row[c], v % m.q());
        }
        rows.push(row);
    });
    rows
}

fn compressed_rows(src: &dyn EquationStream, count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<u32>> {
    let m = src.modulus();
    let q = m.q() as u64;
    let mut acc = vec![vec![0u64; src.unknowns()]; count];
    // u64 accumulators, reduced before any entry can pass 2^62
    let flush_every = ((u64::MAX / 4) / (q * q)).max(1);
    let mut pending = 0u64;
    let mut coeffs = vec![0u64; count];
    src.for_each(&mut |_, terms| {
        for c in coeffs.iter_mut() {
            *c = rng.gen_range(0..q);
        }
        for &(col, v) in terms {
            let v = v as u64 % q;
            if v == 0 {
                continue;
            }
            for (row, &c) in acc.iter_mut().zip(&coeffs) {
                row[col] += c * v;
            }
        }
        pending += terms.len() as u64;
        if pending >= flush_every {
            for row in acc.iter_mut() {
                for x in row.iter_mut() {
                    *x %= q;
                }
            }
            pending = 0;
        }
    });
    acc.into_iter()
        .map(|row| row.into_iter().map(|x| (x % q) as u32).collect())
        .collect()
}

fn satisfies_all(src: &dyn EquationStream, kernel: &PackedMatrix) -> bool {
    let m = src.modulus();
    let q = m.q() as u64;
    let gens = kernel.to_rows();
    let mut ok = true;
    src.for_each(&mut |_, terms| {
        if !ok {
            return;
        }
        for g in &gens {
            let s: u64 = terms.iter().map(|&(c, v)| v as u64 * g[c] as u64 % q).sum();
            if !s.is_multiple_of(q) {
                ok = false;
                return;
            }
        }
    });
    ok
}

/// Generators of the solution module of `src`.
pub fn stream_kernel(src: &dyn EquationStream, seed: u64) -> Result<PackedMatrix> {
    let n = src.unknowns();
    if src.len() <= 2 * n {
        return Ok(kernel_of_rows(src.modulus(), n, &dense_rows(src)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..4 {
        let rows = compressed_rows(src, n + 16 * (attempt + 1), &mut rng);
        let kernel = kernel_of_rows(src.modulus(), n, &rows);
        if satisfies_all(src, &kernel) {
            return Ok(kernel);
        }
    }
    Err(Error::Inconsistent(
        "randomized kernel failed verification after 4 attempts".into(),
    ))
}

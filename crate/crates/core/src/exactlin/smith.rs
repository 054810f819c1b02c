//! Dense integer Smith reduction with checked arithmetic.

use super::abelian::FiniteAbelianGroup;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

/// Cokernel `Z^r / im(M)` as free rank plus torsion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cokernel {
    pub free_rank: usize,
    pub torsion: FiniteAbelianGroup,
}

fn ck(v: Option<i64>) -> Result<i64> {
    v.ok_or(Error::Overflow("integer Smith reduction"))
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged integer matrix".into()));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn diagonal(d: &[i64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }
    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// `row[dst] -= f * row[src]`
    fn row_axpy(&mut self, dst: usize, src: usize, f: i64, from: usize) -> Result<()> {
        for c in from..self.cols {
            let s = self.get(src, c);
            if s != 0 {
                let v = ck(self.get(dst, c).checked_sub(ck(f.checked_mul(s))?))?;
                self.set(dst, c, v);
            }
        }
        Ok(())
    }

    fn col_axpy(&mut self, dst: usize, src: usize, f: i64, from: usize) -> Result<()> {
        for r in from..self.rows {
            let s = self.get(r, src);
            if s != 0 {
                let v = ck(self.get(r, dst).checked_sub(ck(f.checked_mul(s))?))?;
                self.set(r, dst, v);
            }
        }
        Ok(())
    }

    fn min_abs_from(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, i64)> = None;
        for r in t..self.rows {
            for c in t..self.cols {
                let v = self.get(r, c);
                if v != 0 && best.is_none_or(|(_, _, b)| v.unsigned_abs() < b.unsigned_abs()) {
                    best = Some((r, c, v));
                    if v.abs() == 1 {
                        return Some((r, c));
                    }
                }
            }
        }
        best.map(|(r, c, _)| (r, c))
    }

    /// Diagonal of an equivalent diagonal matrix (not yet in divisibility order).
    pub fn diagonalize(&self) -> Result<Vec<i64>> {
        let mut a = self.clone();
        let mut diag = Vec::new();
        let n = a.rows.min(a.cols);
        for t in 0..n {
            let Some((r, c)) = a.min_abs_from(t) else { break };
            a.swap_rows(t, r);
            a.swap_cols(t, c);
            loop {
                let p = a.get(t, t);
                let mut dirty = false;
                for i in t + 1..a.rows {
                    let x = a.get(i, t);
                    if x != 0 {
                        a.row_axpy(i, t, x / p, t)?;
                        dirty |= a.get(i, t) != 0;
                    }
                }
                for j in t + 1..a.cols {
                    let x = a.get(t, j);
                    if x != 0 {
                        a.col_axpy(j, t, x / p, t)?;
                        dirty |= a.get(t, j) != 0;
                    }
                }
                if !dirty {
                    break;
                }
                // a smaller remainder now sits in row or column t: move it to the pivot
                let mut best = (t, t, p.unsigned_abs());
                for i in t + 1..a.rows {
                    let x = a.get(i, t).unsigned_abs();
                    if x != 0 && x < best.2 {
                        best = (i, t, x);
                    }
                }
                for j in t + 1..a.cols {
                    let x = a.get(t, j).unsigned_abs();
                    if x != 0 && x < best.2 {
                        best = (t, j, x);
                    }
                }
                a.swap_rows(t, best.0);
                a.swap_cols(t, best.1);
            }
            diag.push(a.get(t, t).abs());
        }
        Ok(diag)
    }

    /// Invariant factors of the Smith form (nonzero part, divisibility order).
    pub fn smith_invariants(&self) -> Result<Vec<i64>> {
        let diag = self.diagonalize()?;
        let nonzero = diag.len();
        let tors = FiniteAbelianGroup::from_cyclic_orders(diag.iter().map(|&d| d as u64));
        let mut out = vec![1; nonzero - tors.rank()];
        out.extend(tors.invariants().iter().map(|&d| d as i64));
        Ok(out)
    }

    /// `Z^rows / (column span)`.
    pub fn cokernel(&self) -> Result<Cokernel> {
        let diag = self.diagonalize()?;
        Ok(Cokernel {
            free_rank: self.rows - diag.len(),
            torsion: FiniteAbelianGroup::from_cyclic_orders(diag.iter().map(|&d| d as u64)),
        })
    }
}

/// Torsion of the cokernel of an integer matrix.
pub fn cokernel_invariants(m: &IntMatrix) -> Result<FiniteAbelianGroup> {
    Ok(m.cokernel()?.torsion)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::modulus::gcd;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn det(m: &[Vec<i128>]) -> i128 {
        let n = m.len();
        if n == 1 {
            return m[0][0];
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum()
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }

    /// Determinantal divisors `D_k = gcd of k x k minors`; invariants are `D_k / D_{k-1}`.
    fn minors_oracle(rows: &[Vec<i64>]) -> Vec<i64> {
        let (r, c) = (rows.len(), rows[0].len());
        let mut prev = 1i128;
        let mut out = Vec::new();
        for k in 1..=r.min(c) {
            let mut g = 0u64;
            for rs in subsets(r, k) {
                for cs in subsets(c, k) {
                    let m: Vec<Vec<i128>> = rs
                        .iter()
                        .map(|&i| cs.iter().map(|&j| rows[i][j] as i128).collect())
                        .collect();
                    g = gcd(g, det(&m).unsigned_abs() as u64);
                }
            }
            if g == 0 {
                break;
            }
            out.push((g as i128 / prev) as i64);
            prev = g as i128;
        }
        out
    }

    #[test]
    fn diagonal_cases() {
        let m = IntMatrix::diagonal(&[1, 2, 4]);
        assert_eq!(cokernel_invariants(&m).unwrap().to_string(), "Z2 x Z4");
        let m = IntMatrix::diagonal(&[6, 4]);
        assert_eq!(cokernel_invariants(&m).unwrap().to_string(), "Z2 x Z12");
        assert_eq!(m.smith_invariants().unwrap(), vec![2, 12]);
    }

    #[test]
    fn free_part() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 0], vec![0, 0]]).unwrap();
        let c = m.cokernel().unwrap();
        assert_eq!(c.free_rank, 2);
        assert_eq!(c.torsion, FiniteAbelianGroup::cyclic(2));
    }

    #[test]
    fn random_against_minors() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..150 {
            let (r, c) = (rng.gen_range(1..5), rng.gen_range(1..5));
            let rows: Vec<Vec<i64>> = (0..r)
                .map(|_| (0..c).map(|_| rng.gen_range(-6..=6)).collect())
                .collect();
            let m = IntMatrix::from_rows(&rows).unwrap();
            assert_eq!(m.smith_invariants().unwrap(), minors_oracle(&rows), "{rows:?}");
        }
    }

    #[test]
    fn overflow_is_reported() {
        let m = IntMatrix::from_rows(&[vec![i64::MAX, 2], vec![1, i64::MAX]]).unwrap();
        assert!(matches!(m.diagonalize(), Err(Error::Overflow(_))));
    }
}

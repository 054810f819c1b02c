//! Howell normal form over `Z/p^k`.
//!
//! Pivot rows are scaled so their leading entry is `p^v`, entries above a pivot
//! are reduced into `[0, p^v)`, and for every pivot row `r` with `v > 0` the row
//! `p^(k-v) r` lies in the span of the rows below it. The last condition makes
//! membership testing by greedy reduction exact and makes the form canonical.

use super::matrix::PackedMatrix;
use super::modulus::Modulus;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HowellForm {
    modulus: Modulus,
    cols: usize,
    rows: Vec<Vec<u32>>,
    /// `(column, valuation of the leading entry)` per row.
    pivots: Vec<(usize, u32)>,
}

fn sub_mul_pow2_scalar(dst: &mut [u32], src: &[u32], nf: u32, mask: u32) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = d.wrapping_add(nf.wrapping_mul(s)) & mask;
    }
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2")]
unsafe fn sub_mul_pow2_avx2(dst: &mut [u32], src: &[u32], nf: u32, mask: u32) {
    sub_mul_pow2_scalar(dst, src, nf, mask)
}

#[inline]
fn sub_mul_pow2(dst: &mut [u32], src: &[u32], nf: u32, mask: u32) {
    #[cfg(target_arch = "x86_64")]
    if std::arch::is_x86_feature_detected!("avx2") {
        // SAFETY: the CPU supports AVX2.
        unsafe { sub_mul_pow2_avx2(dst, src, nf, mask) };
        return;
    }
    sub_mul_pow2_scalar(dst, src, nf, mask)
}

/// `dst -= f * src` on the suffix starting at `from`.
#[inline]
pub(crate) fn sub_mul(m: Modulus, dst: &mut [u32], src: &[u32], f: u32, from: usize) {
    if f == 0 {
        return;
    }
    let q = m.q();
    let nf = q - f;
    if q.is_power_of_two() {
        sub_mul_pow2(&mut dst[from..], &src[from..], nf, q - 1);
    } else {
        let (q64, nf64) = (q as u64, nf as u64);
        for (d, &s) in dst[from..].iter_mut().zip(&src[from..]) {
            if s != 0 {
                *d = ((*d as u64 + nf64 * s as u64) % q64) as u32;
            }
        }
    }
}

#[inline]
pub(crate) fn scale_row(m: Modulus, row: &mut [u32], s: u32, from: usize) {
    for x in row[from..].iter_mut() {
        *x = m.mul(*x, s);
    }
}

impl HowellForm {
    pub fn from_rows(modulus: Modulus, cols: usize, rows: Vec<Vec<u32>>) -> Self {
        let mut h = Self::echelon(modulus, cols, rows);
        h.reduce_above();
        h
    }

    /// Forward elimination with the Howell closure rows but without
    /// reducing entries above pivots.
    fn echelon(modulus: Modulus, cols: usize, mut rows: Vec<Vec<u32>>) -> Self {
        rows.retain(|r| r.iter().any(|&x| x != 0));
        let k = modulus.k();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows.len() {
                break;
            }
            let mut best: Option<(usize, u32)> = None;
            for (i, row) in rows.iter().enumerate().skip(r) {
                let v = modulus.valuation(row[c]);
                if v == k {
                    continue;
                }
                if best.is_none_or(|(_, bv)| v < bv) {
                    best = Some((i, v));
                    if v == 0 {
                        break;
                    }
                }
            }
            let Some((p, v)) = best else { continue };
            rows.swap(r, p);
            let pv = modulus.pow_p(v);
            let unit = rows[r][c] / pv;
            let s = modulus.inv(unit).expect("unit part is invertible");
            scale_row(modulus, &mut rows[r], s, c);
            let pivot_row = std::mem::take(&mut rows[r]);
            for row in rows.iter_mut().skip(r + 1) {
                let b = row[c];
                if b != 0 {
                    sub_mul(modulus, row, &pivot_row, b / pv, c);
                }
            }
            if v > 0 {
                let mut extra = pivot_row.clone();
                scale_row(modulus, &mut extra, modulus.pow_p(k - v), c);
                if extra.iter().any(|&x| x != 0) {
                    rows.push(extra);
                }
            }
            rows[r] = pivot_row;
            pivots.push((c, v));
            r += 1;
        }
        rows.truncate(r);
        HowellForm {
            modulus,
            cols,
            rows,
            pivots,
        }
    }

    fn reduce_above(&mut self) {
        let modulus = self.modulus;
        for i in 0..self.rows.len() {
            let (c, v) = self.pivots[i];
            let pv = modulus.pow_p(v);
            let (above, rest) = self.rows.split_at_mut(i);
            let pivot_row = &rest[0];
            for row in above.iter_mut() {
                let f = row[c] / pv;
                if f != 0 {
                    sub_mul(modulus, row, pivot_row, f, c);
                }
            }
        }
    }

    pub fn of_matrix(m: &PackedMatrix) -> Self {
        Self::from_rows(m.modulus(), m.cols(), m.to_rows())
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[(usize, u32)] {
        &self.pivots
    }
    pub fn len(&self) -> usize {
        self.rows.len()
    }
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_matrix(&self) -> PackedMatrix {
        PackedMatrix::from_reduced_rows(self.modulus, self.cols, &self.rows)
    }

    /// `log_p` of the number of elements in the row span.
    pub fn log_order(&self) -> u32 {
        let k = self.modulus.k();
        self.pivots.iter().map(|&(_, v)| k - v).sum()
    }

    /// Canonical residue of `x` modulo the row span (zero iff `x` is in it).
    pub fn reduce(&self, x: &[u32]) -> Vec<u32> {
        let mut x = x.to_vec();
        for (row, &(c, v)) in self.rows.iter().zip(&self.pivots) {
            let pv = self.modulus.pow_p(v);
            let f = x[c] / pv;
            if f != 0 {
                sub_mul(self.modulus, &mut x, row, f, c);
            }
        }
        x
    }

    pub fn contains(&self, x: &[u32]) -> bool {
        self.reduce(x).iter().all(|&v| v == 0)
    }

    /// Expresses `x` as a combination of this form's rows, if possible.
    pub fn solve(&self, x: &[u32]) -> Option<Vec<u32>> {
        let mut x = x.to_vec();
        let mut coeffs = vec![0; self.rows.len()];
        for (i, (row, &(c, v))) in self.rows.iter().zip(&self.pivots).enumerate() {
            let pv = self.modulus.pow_p(v);
            if !x[c].is_multiple_of(pv) {
                return None;
            }
            let f = x[c] / pv;
            coeffs[i] = f;
            sub_mul(self.modulus, &mut x, row, f, c);
        }
        x.iter().all(|&v| v == 0).then_some(coeffs)
    }
}

/// Canonical Howell form of the row span of `m`.
pub fn howell_form(m: &PackedMatrix) -> PackedMatrix {
    HowellForm::of_matrix(m).to_matrix()
}

/// Generators of `{x : M x = 0}` over `Z/p^k`, one per row of the result.
pub fn kernel_mod(m: &PackedMatrix) -> PackedMatrix {
    kernel_of_rows(m.modulus(), m.cols(), &m.to_rows())
}

/// Right kernel of the matrix whose rows are `rows`, via the Howell form of
/// `[A^T | I]`.
pub(crate) fn kernel_of_rows(modulus: Modulus, cols: usize, rows: &[Vec<u32>]) -> PackedMatrix {
    let nr = rows.len();
    let aug: Vec<Vec<u32>> = (0..cols)
        .map(|j| {
            let mut v = Vec::with_capacity(nr + cols);
            v.extend(rows.iter().map(|r| r[j]));
            v.extend((0..cols).map(|i| (i == j) as u32));
            v
        })
        .collect();
    let h = HowellForm::echelon(modulus, nr + cols, aug);
    let kernel: Vec<Vec<u32>> = h
        .rows
        .iter()
        .zip(&h.pivots)
        .filter(|(_, &(c, _))| c >= nr)
        .map(|(r, _)| r[nr..].to_vec())
        .collect();
    PackedMatrix::from_reduced_rows(modulus, cols, &kernel)
}

/// Invariant factors of `Z/p^k`-module `Z/p^k^cols / rowspan(m)`, via a local
/// Smith reduction (minimal-valuation pivots).
pub fn local_smith_diagonal(m: &PackedMatrix) -> Vec<u32> {
    let modulus = m.modulus();
    let k = modulus.k();
    let mut a = m.to_rows();
    let (nr, nc) = (m.rows(), m.cols());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        let mut best: Option<(usize, usize, u32)> = None;
        'search: for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                let v = modulus.valuation(x);
                if v < k && best.is_none_or(|(_, _, bv)| v < bv) {
                    best = Some((i, j, v));
                    if v == 0 {
                        break 'search;
                    }
                }
            }
        }
        let Some((i, j, v)) = best else { break };
        a.swap(t, i);
        for row in a.iter_mut() {
            row.swap(t, j);
        }
        let pv = modulus.pow_p(v);
        let s = modulus.inv(a[t][t] / pv).unwrap();
        scale_row(modulus, &mut a[t], s, 0);
        let pivot_row = a[t].clone();
        for row in a.iter_mut().skip(t + 1) {
            let f = row[t] / pv;
            sub_mul(modulus, row, &pivot_row, f, 0);
        }
        // column elimination: only row t has nonzero entries to the right now
        for c in t + 1..nc {
            a[t][c] = 0;
        }
        diag.push(v);
        t += 1;
    }
    diag
}

/// Cokernel of a `Z/p^k` matrix (rows are relations) as a finite abelian group.
pub fn cokernel_invariants_mod(m: &PackedMatrix) -> crate::exactlin::FiniteAbelianGroup {
    let modulus = m.modulus();
    let diag = local_smith_diagonal(m);
    let mut orders: Vec<u64> = diag
        .iter()
        .filter(|&&v| v > 0)
        .map(|&v| (modulus.p() as u64).pow(v))
        .collect();
    orders.extend(std::iter::repeat_n(modulus.q() as u64, m.cols() - diag.len()));
    crate::exactlin::FiniteAbelianGroup::from_cyclic_orders(orders)
}

use std::fmt;

use super::modulus::Modulus;
use crate::error::{parse_err, Error, Result};

/// Dense matrix over `Z/p^k` with every entry stored in `ceil(log2 p^k)` bits.
///
/// Rows are padded to whole 64-bit words and padding bits are always zero, so
/// derived equality and hashing are entrywise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PackedMatrix {
    modulus: Modulus,
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

fn per_word(m: Modulus) -> usize {
    64 / m.bits() as usize
}

fn stride_for(m: Modulus, cols: usize) -> usize {
    cols.div_ceil(per_word(m))
}

impl PackedMatrix {
    pub fn zeros(modulus: Modulus, rows: usize, cols: usize) -> Self {
        let stride = stride_for(modulus, cols);
        PackedMatrix {
            modulus,
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(modulus: Modulus, n: usize) -> Self {
        let mut m = Self::zeros(modulus, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(modulus: Modulus, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows_with_cols(modulus, cols, rows)
    }

    pub fn from_rows_with_cols(modulus: Modulus, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut m = Self::zeros(modulus, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= modulus.q() {
                    return Err(Error::Invalid(format!(
                        "entry {v} at ({i},{j}) is not reduced modulo {}",
                        modulus.q()
                    )));
                }
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    /// Builds a matrix from residues that are already reduced.
    pub(crate) fn from_reduced_rows(modulus: Modulus, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(modulus, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            m.set_row(i, row);
        }
        m
    }

    pub fn from_fn(modulus: Modulus, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut m = Self::zeros(modulus, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j) % modulus.q();
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        debug_assert!(r < self.rows && c < self.cols);
        let pw = per_word(self.modulus);
        let bits = self.modulus.bits();
        let w = self.data[r * self.stride + c / pw];
        let shift = (c % pw) as u32 * bits;
        ((w >> shift) & ((1u64 << bits) - 1)) as u32
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        debug_assert!(v < self.modulus.q());
        let pw = per_word(self.modulus);
        let bits = self.modulus.bits();
        let idx = r * self.stride + c / pw;
        let shift = (c % pw) as u32 * bits;
        let mask = ((1u64 << bits) - 1) << shift;
        self.data[idx] = (self.data[idx] & !mask) | ((v as u64) << shift);
    }

    pub fn row(&self, r: usize) -> Vec<u32> {
        (0..self.cols).map(|c| self.get(r, c)).collect()
    }

    pub fn set_row(&mut self, r: usize, values: &[u32]) {
        for (c, &v) in values.iter().enumerate() {
            self.set(r, c, v);
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub(crate) fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub(crate) fn from_words(modulus: Modulus, rows: usize, cols: usize, data: Vec<u64>) -> Self {
        let stride = stride_for(modulus, cols);
        debug_assert_eq!(data.len(), rows * stride);
        PackedMatrix {
            modulus,
            rows,
            cols,
            stride,
            data,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.modulus, self.rows)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.modulus, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if v != 0 {
                    t.set(j, i, v);
                }
            }
        }
        t
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus || self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "{}x{} over {} vs {}x{} over {}",
                self.rows, self.cols, self.modulus, other.rows, other.cols, other.modulus
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        if self.modulus.is_f2() {
            let data = self.data.iter().zip(&other.data).map(|(a, b)| a ^ b).collect();
            return Ok(Self::from_words(self.modulus, self.rows, self.cols, data));
        }
        let m = self.modulus;
        Ok(Self::from_fn(m, self.rows, self.cols, |i, j| {
            m.add(self.get(i, j), other.get(i, j))
        }))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let m = self.modulus;
        if m.is_f2() {
            return self.add(other);
        }
        Ok(Self::from_fn(m, self.rows, self.cols, |i, j| {
            m.sub(self.get(i, j), other.get(i, j))
        }))
    }

    pub fn scale(&self, s: u32) -> Self {
        let m = self.modulus;
        let s = s % m.q();
        Self::from_fn(m, self.rows, self.cols, |i, j| m.mul(self.get(i, j), s))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.modulus != other.modulus || self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let m = self.modulus;
        if m.is_f2() {
            let stride = other.stride;
            let mut data = vec![0u64; self.rows * stride];
            for i in 0..self.rows {
                let out = &mut data[i * stride..(i + 1) * stride];
                for (wi, &w) in self.row_words(i).iter().enumerate() {
                    let mut bits = w;
                    while bits != 0 {
                        let l = wi * 64 + bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        for (o, s) in out.iter_mut().zip(other.row_words(l)) {
                            *o ^= s;
                        }
                    }
                }
            }
            return Ok(Self::from_words(m, self.rows, other.cols, data));
        }
        let q = m.q() as u64;
        let b_rows = other.to_rows();
        let mut out = Self::zeros(m, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for (l, brow) in b_rows.iter().enumerate() {
                let a = self.get(i, l) as u64;
                if a == 0 {
                    continue;
                }
                for (x, &b) in acc.iter_mut().zip(brow) {
                    *x = (*x + a * b as u64) % q;
                }
            }
            for (j, &x) in acc.iter().enumerate() {
                out.set(i, j, x as u32);
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        let q = self.modulus.q() as u64;
        Ok((0..self.rows)
            .map(|i| {
                let mut s = 0u64;
                for (j, &x) in v.iter().enumerate() {
                    if x != 0 {
                        s = (s + self.get(i, j) as u64 * x as u64) % q;
                    }
                }
                s as u32
            })
            .collect())
    }

    /// Gauss-Jordan inverse; `None` when the matrix is singular.
    ///
    /// Over `Z/p^k` a matrix is invertible iff it is invertible modulo `p`, so
    /// every pivot can be taken to be a unit.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let m = self.modulus;
        let mut a = self.to_rows();
        let mut inv = Self::identity(m, n).to_rows();
        for col in 0..n {
            let piv = (col..n).find(|&r| m.is_unit(a[r][col]))?;
            a.swap(col, piv);
            inv.swap(col, piv);
            let s = m.inv(a[col][col]).expect("unit pivot");
            for x in a[col].iter_mut() {
                *x = m.mul(*x, s);
            }
            for x in inv[col].iter_mut() {
                *x = m.mul(*x, s);
            }
            for r in 0..n {
                if r == col || a[r][col] == 0 {
                    continue;
                }
                let f = a[r][col];
                let (pa, pi) = (a[col].clone(), inv[col].clone());
                for (x, y) in a[r].iter_mut().zip(&pa) {
                    *x = m.sub(*x, m.mul(f, *y));
                }
                for (x, y) in inv[r].iter_mut().zip(&pi) {
                    *x = m.sub(*x, m.mul(f, *y));
                }
            }
        }
        Some(Self::from_reduced_rows(m, n, &inv))
    }

    pub fn pow(&self, mut e: u64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.modulus, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kronecker(&self, other: &Self) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::Dimension("kronecker of different moduli".into()));
        }
        let m = self.modulus;
        let (r2, c2) = (other.rows, other.cols);
        Ok(Self::from_fn(m, self.rows * r2, self.cols * c2, |i, j| {
            m.mul(self.get(i / r2, j / c2), other.get(i % r2, j % c2))
        }))
    }

    pub fn trace(&self) -> u32 {
        let m = self.modulus;
        (0..self.rows.min(self.cols)).fold(0, |acc, i| m.add(acc, self.get(i, i)))
    }

    /// Stacks `self` above `other`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.modulus != other.modulus || self.cols != other.cols {
            return Err(Error::Dimension("vstack with mismatched columns".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self::from_words(self.modulus, self.rows + other.rows, self.cols, data))
    }

    /// Writes the matrix in the text block format
    /// `p=<p> k=<k> rows=<r> cols=<c>` followed by one digit string per row.
    pub fn to_text(&self) -> Result<String> {
        let q = self.modulus.q();
        if q > 36 {
            return Err(Error::Invalid(format!("modulus {q} has no single-digit text encoding")));
        }
        let mut s = format!(
            "p={} k={} rows={} cols={}\n",
            self.modulus.p(),
            self.modulus.k(),
            self.rows,
            self.cols
        );
        for r in 0..self.rows {
            for c in 0..self.cols {
                s.push(char::from_digit(self.get(r, c), 36).unwrap());
            }
            s.push('\n');
        }
        Ok(s)
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text.lines().collect();
        let (m, consumed) = Self::parse_block(&lines, 0)?;
        if let Some((i, l)) = lines
            .iter()
            .enumerate()
            .skip(consumed)
            .find(|(_, l)| !l.trim().is_empty())
        {
            return Err(parse_err(i + 1, format!("trailing content `{}`", l.trim())));
        }
        Ok(m)
    }

    /// Parses one matrix block starting at `lines[start]`; returns the matrix
    /// and the index of the first line after the block. Line numbers in errors
    /// are 1-based positions in `lines`.
    pub fn parse_block(lines: &[&str], start: usize) -> Result<(Self, usize)> {
        let header = lines
            .get(start)
            .ok_or_else(|| parse_err(start + 1, "missing matrix header"))?;
        let mut fields = [None::<u64>; 4];
        for tok in header.split_whitespace() {
            let (key, val) = tok
                .split_once('=')
                .ok_or_else(|| parse_err(start + 1, format!("bad header token `{tok}`")))?;
            let slot = match key {
                "p" => 0,
                "k" => 1,
                "rows" => 2,
                "cols" => 3,
                _ => return Err(parse_err(start + 1, format!("unknown header key `{key}`"))),
            };
            let v = val
                .parse::<u64>()
                .map_err(|_| parse_err(start + 1, format!("bad number `{val}`")))?;
            fields[slot] = Some(v);
        }
        let get =
            |i: usize, name: &str| fields[i].ok_or_else(|| parse_err(start + 1, format!("header is missing `{name}`")));
        let modulus =
            Modulus::new(get(0, "p")? as u32, get(1, "k")? as u32).map_err(|e| parse_err(start + 1, e.to_string()))?;
        let (rows, cols) = (get(2, "rows")? as usize, get(3, "cols")? as usize);
        let mut m = Self::zeros(modulus, rows, cols);
        for r in 0..rows {
            let ln = start + 1 + r;
            let line = lines
                .get(ln)
                .ok_or_else(|| parse_err(ln + 1, "matrix block ends early"))?
                .trim();
            if line.chars().count() != cols {
                return Err(parse_err(
                    ln + 1,
                    format!("expected {cols} digits, found {}", line.chars().count()),
                ));
            }
            for (c, ch) in line.chars().enumerate() {
                let v = ch
                    .to_digit(36)
                    .filter(|&v| v < modulus.q())
                    .ok_or_else(|| parse_err(ln + 1, format!("invalid digit `{ch}`")))?;
                m.set(r, c, v);
            }
        }
        Ok((m, start + 1 + rows))
    }
}

impl fmt::Debug for PackedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PackedMatrix {}x{} over {}", self.rows, self.cols, self.modulus)?;
        for r in 0..self.rows.min(32) {
            let row: Vec<String> = (0..self.cols.min(32)).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pack_unpack_all_widths() {
        for &(p, k) in &[(2, 1), (3, 1), (5, 1), (7, 1), (13, 1), (2, 3), (2, 8), (3, 2)] {
            let m = Modulus::new(p, k).unwrap();
            let a = PackedMatrix::from_fn(m, 7, 70, |i, j| (i * 31 + j * 7) as u32);
            for i in 0..7 {
                for j in 0..70 {
                    assert_eq!(a.get(i, j), ((i * 31 + j * 7) as u32) % m.q());
                }
            }
        }
    }

    #[test]
    fn f2_mul_matches_generic_rule() {
        let m = Modulus::F2;
        let a = PackedMatrix::from_fn(m, 5, 70, |i, j| ((i * j + i) % 3 == 0) as u32);
        let b = PackedMatrix::from_fn(m, 70, 66, |i, j| ((i + 2 * j) % 5 == 1) as u32);
        let c = a.mul(&b).unwrap();
        for i in 0..5 {
            for j in 0..66 {
                let s: u32 = (0..70).map(|l| a.get(i, l) * b.get(l, j)).sum();
                assert_eq!(c.get(i, j), s % 2);
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = Modulus::new(2, 3).unwrap();
        let a = PackedMatrix::from_rows(m, &[vec![1, 2, 0], vec![0, 3, 4], vec![2, 0, 5]]).unwrap();
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        let sing = PackedMatrix::from_rows(m, &[vec![2, 0], vec![0, 1]]).unwrap();
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn text_round_trip_and_errors() {
        let m = Modulus::prime(5).unwrap();
        let a = PackedMatrix::from_fn(m, 3, 4, |i, j| (i + j) as u32);
        let t = a.to_text().unwrap();
        assert_eq!(t, "p=5 k=1 rows=3 cols=4\n0123\n1234\n2340\n");
        assert_eq!(PackedMatrix::from_text(&t).unwrap(), a);
        let bad = "p=5 k=1 rows=2 cols=2\n01\n0x\n";
        match PackedMatrix::from_text(bad) {
            Err(Error::Parse { line: 3, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(PackedMatrix::from_text("p=4 k=1 rows=1 cols=1\n0\n").is_err());
        assert!(PackedMatrix::from_text("p=2 k=1 rows=2 cols=1\n0\n").is_err());
    }
}

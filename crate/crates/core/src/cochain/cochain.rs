use rand::Rng;

use super::coeffs::Coefficients;
use crate::error::{parse_err, Error, Result};

/// Number of normalized `k`-tuples over a group of order `n`.
pub fn tuple_count(n: usize, k: usize) -> usize {
    (n - 1).pow(k as u32)
}

/// Index of a tuple of non-identity elements; `None` if any entry is the identity.
#[inline]
pub fn tuple_index(n: usize, t: &[usize]) -> Option<usize> {
    let mut idx = 0;
    for &g in t {
        if g == 0 {
            return None;
        }
        idx = idx * (n - 1) + (g - 1);
    }
    Some(idx)
}

pub fn tuple_at(n: usize, k: usize, mut idx: usize) -> Vec<usize> {
    let mut t = vec![0; k];
    for slot in t.iter_mut().rev() {
        *slot = idx % (n - 1) + 1;
        idx /= n - 1;
    }
    t
}

/// A normalized cochain `G^k -> (Z/m)^r`: tuples containing the identity map to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    level: usize,
    group_order: usize,
    rank: usize,
    modulus: u64,
    values: Vec<u64>,
}

impl Cochain {
    pub fn zero(group_order: usize, coeffs: &Coefficients, level: usize) -> Self {
        let r = coeffs.rank();
        Cochain {
            level,
            group_order,
            rank: r,
            modulus: coeffs.modulus(),
            values: vec![0; tuple_count(group_order, level) * r],
        }
    }

    pub fn from_values(group_order: usize, coeffs: &Coefficients, level: usize, values: Vec<u64>) -> Result<Self> {
        let r = coeffs.rank();
        if values.len() != tuple_count(group_order, level) * r {
            return Err(Error::Dimension(format!(
                "a level-{level} cochain needs {} values",
                tuple_count(group_order, level) * r
            )));
        }
        let m = coeffs.modulus();
        Ok(Cochain {
            level,
            group_order,
            rank: r,
            modulus: m,
            values: values.into_iter().map(|v| v % m).collect(),
        })
    }

    pub fn from_fn(
        group_order: usize,
        coeffs: &Coefficients,
        level: usize,
        mut f: impl FnMut(&[usize]) -> Vec<u64>,
    ) -> Self {
        let mut c = Self::zero(group_order, coeffs, level);
        for i in 0..tuple_count(group_order, level) {
            let t = tuple_at(group_order, level, i);
            let v = f(&t);
            c.set_index(i, &v);
        }
        c
    }

    pub fn random(group_order: usize, coeffs: &Coefficients, level: usize, rng: &mut impl Rng) -> Self {
        let mut c = Self::zero(group_order, coeffs, level);
        let m = coeffs.modulus();
        for v in c.values.iter_mut() {
            *v = rng.gen_range(0..m);
        }
        c
    }

    pub fn level(&self) -> usize {
        self.level
    }
    pub fn group_order(&self) -> usize {
        self.group_order
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn modulus(&self) -> u64 {
        self.modulus
    }
    pub fn values(&self) -> &[u64] {
        &self.values
    }
    pub fn num_tuples(&self) -> usize {
        tuple_count(self.group_order, self.level)
    }

    pub fn at_index(&self, i: usize) -> &[u64] {
        &self.values[i * self.rank..(i + 1) * self.rank]
    }

    pub fn set_index(&mut self, i: usize, v: &[u64]) {
        let m = self.modulus;
        for (d, &x) in self.values[i * self.rank..(i + 1) * self.rank].iter_mut().zip(v) {
            *d = x % m;
        }
    }

    /// Value at an arbitrary tuple (zero when it contains the identity).
    pub fn get(&self, t: &[usize]) -> Vec<u64> {
        match tuple_index(self.group_order, t) {
            Some(i) => self.at_index(i).to_vec(),
            None => vec![0; self.rank],
        }
    }

    pub fn set(&mut self, t: &[usize], v: &[u64]) -> Result<()> {
        match tuple_index(self.group_order, t) {
            Some(i) => {
                self.set_index(i, v);
                Ok(())
            }
            None if v.iter().all(|&x| x % self.modulus == 0) => Ok(()),
            None => Err(Error::Invalid(format!("normalized cochain must vanish at {t:?}"))),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    fn check_compatible(&self, other: &Cochain) -> Result<()> {
        if (self.level, self.group_order, self.rank, self.modulus)
            != (other.level, other.group_order, other.rank, other.modulus)
        {
            return Err(Error::Dimension("cochains live in different spaces".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.check_compatible(other)?;
        let mut c = self.clone();
        for (a, &b) in c.values.iter_mut().zip(&other.values) {
            *a = (*a + b) % self.modulus;
        }
        Ok(c)
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cochain {
        self.scale(self.modulus - 1)
    }

    pub fn scale(&self, s: u64) -> Cochain {
        let mut c = self.clone();
        let m = self.modulus;
        for a in c.values.iter_mut() {
            *a = (*a as u128 * s as u128 % m as u128) as u64;
        }
        c
    }

    /// Reinterprets values in `Z/m'` for `m | m'` via `x -> (m'/m) x`
    /// (the inclusion `Z/m -> Z/m'`).
    pub fn include_into(&self, new_modulus: u64) -> Result<Cochain> {
        if !new_modulus.is_multiple_of(self.modulus) {
            return Err(Error::Invalid(format!(
                "{} does not divide {new_modulus}",
                self.modulus
            )));
        }
        let f = new_modulus / self.modulus;
        let mut c = self.clone();
        c.modulus = new_modulus;
        for a in c.values.iter_mut() {
            *a *= f;
        }
        Ok(c)
    }

    /// Reduction into `Z/q` for `q | m`.
    pub fn reduce(&self, q: u64) -> Result<Cochain> {
        if !self.modulus.is_multiple_of(q) {
            return Err(Error::Invalid(format!("{q} does not divide {}", self.modulus)));
        }
        let mut c = self.clone();
        c.modulus = q;
        for a in c.values.iter_mut() {
            *a %= q;
        }
        Ok(c)
    }

    /// One line per non-identity tuple: `g1,g2 -> v` (components separated by spaces).
    /// Zero values are omitted unless `dense`.
    pub fn to_text(&self, dense: bool) -> String {
        let mut s = String::new();
        for i in 0..self.num_tuples() {
            let v = self.at_index(i);
            if !dense && v.iter().all(|&x| x == 0) {
                continue;
            }
            let t = tuple_at(self.group_order, self.level, i);
            let ts: Vec<String> = t.iter().map(|g| g.to_string()).collect();
            let vs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("{} -> {}\n", ts.join(","), vs.join(" ")));
        }
        s
    }

    /// Parses the line format; absent tuples are zero. `first_line` offsets
    /// the line numbers reported in errors.
    pub fn from_text(
        text: &str,
        group_order: usize,
        coeffs: &Coefficients,
        level: usize,
        first_line: usize,
    ) -> Result<Cochain> {
        let mut c = Self::zero(group_order, coeffs, level);
        let mut seen = vec![false; c.num_tuples()];
        for (i, raw) in text.lines().enumerate() {
            let ln = first_line + i;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| parse_err(ln, "expected `g1,...,gk -> value`"))?;
            let lhs = lhs.trim();
            let tuple: Vec<usize> = if lhs.is_empty() {
                Vec::new()
            } else {
                lhs.split(',')
                    .map(|s| s.trim().parse::<usize>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| parse_err(ln, format!("bad tuple `{lhs}`")))?
            };
            if tuple.len() != level {
                return Err(parse_err(
                    ln,
                    format!("expected a {level}-tuple, found {}", tuple.len()),
                ));
            }
            if tuple.iter().any(|&g| g >= group_order) {
                return Err(parse_err(ln, format!("element out of range in `{lhs}`")));
            }
            let vals: Vec<i64> = rhs
                .split_whitespace()
                .map(str::parse::<i64>)
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| parse_err(ln, format!("bad value `{}`", rhs.trim())))?;
            if vals.len() != c.rank {
                return Err(parse_err(ln, format!("expected {} components", c.rank)));
            }
            let m = c.modulus as i64;
            let v: Vec<u64> = vals.iter().map(|x| x.rem_euclid(m) as u64).collect();
            match tuple_index(group_order, &tuple) {
                Some(idx) => {
                    if std::mem::replace(&mut seen[idx], true) {
                        return Err(parse_err(ln, format!("duplicate tuple `{lhs}`")));
                    }
                    c.set_index(idx, &v);
                }
                None if v.iter().all(|&x| x == 0) => {}
                None => return Err(parse_err(ln, "nonzero value on a tuple containing the identity")),
            }
        }
        Ok(c)
    }
}

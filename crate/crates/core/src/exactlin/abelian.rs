use std::fmt;
use std::str::FromStr;

use super::modulus::{factorize, gcd};
use crate::error::{Error, Result};

/// A finite abelian group in invariant-factor form `Z_{d1} x ... x Z_{dn}`
/// with `d1 | d2 | ... | dn` and every `di > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic_orders([n])
    }

    /// `Z_p^d`.
    pub fn elementary(p: u64, d: usize) -> Self {
        Self::from_cyclic_orders(std::iter::repeat_n(p, d))
    }

    /// Normalizes an arbitrary direct sum of cyclic groups. Orders `0` and `1`
    /// are dropped.
    pub fn from_cyclic_orders(orders: impl IntoIterator<Item = u64>) -> Self {
        let mut by_prime: Vec<(u64, Vec<u32>)> = Vec::new();
        for n in orders {
            if n <= 1 {
                continue;
            }
            for (p, e) in factorize(n) {
                match by_prime.iter_mut().find(|(q, _)| *q == p) {
                    Some((_, v)) => v.push(e),
                    None => by_prime.push((p, vec![e])),
                }
            }
        }
        Self::from_primary(by_prime)
    }

    fn from_primary(mut by_prime: Vec<(u64, Vec<u32>)>) -> Self {
        let len = by_prime.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
        for (_, v) in by_prime.iter_mut() {
            v.sort_unstable();
            let pad = len - v.len();
            v.splice(0..0, std::iter::repeat_n(0, pad));
        }
        let factors = (0..len)
            .map(|i| by_prime.iter().map(|(p, v)| p.pow(v[i])).product())
            .collect();
        FiniteAbelianGroup { factors }
    }

    /// Builds from a verified invariant-factor list.
    pub fn from_invariants(factors: Vec<u64>) -> Result<Self> {
        if factors.iter().any(|&d| d <= 1) {
            return Err(Error::Invalid("invariant factors must exceed 1".into()));
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::Invalid(format!("{factors:?} is not a divisibility chain")));
        }
        Ok(FiniteAbelianGroup { factors })
    }

    pub fn invariants(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    /// Elementary divisors `(p, [e1 <= e2 <= ...])` per prime.
    pub fn primary(&self) -> Vec<(u64, Vec<u32>)> {
        let mut out: Vec<(u64, Vec<u32>)> = Vec::new();
        for &d in &self.factors {
            for (p, e) in factorize(d) {
                match out.iter_mut().find(|(q, _)| *q == p) {
                    Some((_, v)) => v.push(e),
                    None => out.push((p, vec![e])),
                }
            }
        }
        out.sort_by_key(|(p, _)| *p);
        out
    }

    pub fn p_part(&self, p: u64) -> Self {
        Self::from_cyclic_orders(self.factors.iter().map(|&d| {
            let mut r = 1;
            let mut d = d;
            while d % p == 0 {
                d /= p;
                r *= p;
            }
            r
        }))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::from_cyclic_orders(self.factors.iter().chain(&other.factors).copied())
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self::from_cyclic_orders(
            self.factors
                .iter()
                .flat_map(|&a| other.factors.iter().map(move |&b| gcd(a, b))),
        )
    }

    /// `Tor(A, B)`, which for finite groups is isomorphic to `A ⊗ B`.
    pub fn tor(&self, other: &Self) -> Self {
        self.tensor(other)
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl FromStr for FiniteAbelianGroup {
    type Err = Error;

    /// Accepts `0`, `Z4`, `Z2 x Z4`, `Z2^3 x Z3`, and `+` as a separator.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" || s == "1" || s.is_empty() {
            return Ok(Self::trivial());
        }
        let mut orders = Vec::new();
        for tok in s.split(['x', '+', '⊕']).map(str::trim) {
            let body = tok
                .strip_prefix('Z')
                .ok_or_else(|| Error::Invalid(format!("bad cyclic factor `{tok}`")))?;
            let body = body.trim_start_matches('_');
            let (n, mult) = match body.split_once('^') {
                Some((n, m)) => (n, m),
                None => (body, "1"),
            };
            let n: u64 = n.parse().map_err(|_| Error::Invalid(format!("bad order in `{tok}`")))?;
            let m: usize = mult
                .parse()
                .map_err(|_| Error::Invalid(format!("bad multiplicity in `{tok}`")))?;
            orders.extend(std::iter::repeat_n(n, m));
        }
        Ok(Self::from_cyclic_orders(orders))
    }
}

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::exactlin::{factorize, inv_mod, Modulus, PackedMatrix};
use crate::groupkit::GroupTable;

/// A coefficient module `(Z/m)^r` with a left action of a finite group,
/// stored as one `r x r` matrix per group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coefficients {
    modulus: u64,
    rank: usize,
    action: Vec<Vec<u64>>,
    trivial: bool,
}

fn mat_mul(a: &[u64], b: &[u64], r: usize, m: u64) -> Vec<u64> {
    let mut out = vec![0; r * r];
    for i in 0..r {
        for k in 0..r {
            let x = a[i * r + k];
            if x == 0 {
                continue;
            }
            for j in 0..r {
                out[i * r + j] = (out[i * r + j] + x * b[k * r + j]) % m;
            }
        }
    }
    out
}

fn identity(r: usize) -> Vec<u64> {
    let mut v = vec![0; r * r];
    for i in 0..r {
        v[i * r + i] = 1;
    }
    v
}

impl Coefficients {
    pub fn trivial(group_order: usize, modulus: u64, rank: usize) -> Self {
        Coefficients {
            modulus,
            rank,
            action: vec![identity(rank); group_order],
            trivial: true,
        }
    }

    /// Validates that `action` is a homomorphism into `GL_r(Z/m)`.
    pub fn from_action(g: &GroupTable, modulus: u64, rank: usize, action: Vec<Vec<u64>>) -> Result<Self> {
        if !(2..=1 << 31).contains(&modulus) {
            return Err(Error::Invalid(format!("coefficient modulus {modulus} out of range")));
        }
        if action.len() != g.order() || action.iter().any(|a| a.len() != rank * rank) {
            return Err(Error::Dimension("one r x r matrix per group element expected".into()));
        }
        let action: Vec<Vec<u64>> = action
            .into_iter()
            .map(|a| a.into_iter().map(|x| x % modulus).collect())
            .collect();
        if action[0] != identity(rank) {
            return Err(Error::Invalid("identity must act trivially".into()));
        }
        for x in 0..g.order() {
            for y in 0..g.order() {
                if mat_mul(&action[x], &action[y], rank, modulus) != action[g.mul(x, y)] {
                    return Err(Error::Invalid(format!("action is not a homomorphism at ({x}, {y})")));
                }
            }
        }
        let trivial = action.iter().all(|a| *a == identity(rank));
        Ok(Coefficients {
            modulus,
            rank,
            action,
            trivial,
        })
    }

    /// Extends generator images to the whole group and validates the result.
    pub fn from_generators(g: &GroupTable, modulus: u64, rank: usize, gens: &[(usize, Vec<u64>)]) -> Result<Self> {
        let n = g.order();
        let mut action: Vec<Option<Vec<u64>>> = vec![None; n];
        action[0] = Some(identity(rank));
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (s, a) in gens {
                let y = g.mul(x, *s);
                let prod = mat_mul(action[x].as_ref().unwrap(), a, rank, modulus);
                match &action[y] {
                    None => {
                        action[y] = Some(prod);
                        queue.push_back(y);
                    }
                    Some(existing) if *existing != prod => {
                        return Err(Error::Invalid("generator images do not define an action".into()));
                    }
                    _ => {}
                }
            }
        }
        let action: Option<Vec<Vec<u64>>> = action.into_iter().collect();
        let action = action.ok_or_else(|| Error::Invalid("generators do not generate the group".into()))?;
        Self::from_action(g, modulus, rank, action)
    }

    /// `Z/m` with `x` acting by multiplication by the unit `chi[x]`.
    pub fn cyclic_twisted(g: &GroupTable, modulus: u64, chi: &[u64]) -> Result<Self> {
        let action = chi.iter().map(|&u| vec![u % modulus]).collect();
        let c = Self::from_action(g, modulus, 1, action)?;
        if chi.iter().any(|&u| inv_mod(u, modulus).is_none()) {
            return Err(Error::Invalid("twisting character must take unit values".into()));
        }
        Ok(c)
    }

    /// From matrix images of the listed generator elements.
    pub fn from_matrices(g: &GroupTable, gens: &[usize], images: &[PackedMatrix]) -> Result<Self> {
        let m = images
            .first()
            .map(PackedMatrix::modulus)
            .ok_or_else(|| Error::Invalid("no generator images".into()))?;
        let r = images[0].rows();
        let pairs: Vec<(usize, Vec<u64>)> = gens
            .iter()
            .zip(images)
            .map(|(&s, a)| (s, a.to_rows().concat().into_iter().map(u64::from).collect()))
            .collect();
        Self::from_generators(g, m.q() as u64, r, &pairs)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn is_trivial(&self) -> bool {
        self.trivial
    }
    pub fn group_order(&self) -> usize {
        self.action.len()
    }
    pub fn matrix(&self, x: usize) -> &[u64] {
        &self.action[x]
    }

    /// Number of module elements, if it fits in a `u64`.
    pub fn size(&self) -> Option<u64> {
        self.modulus.checked_pow(self.rank as u32)
    }

    pub fn act(&self, x: usize, v: &[u64]) -> Vec<u64> {
        if self.trivial {
            return v.to_vec();
        }
        let (r, m, a) = (self.rank, self.modulus, &self.action[x]);
        (0..r)
            .map(|i| (0..r).fold(0, |s, j| (s + a[i * r + j] * v[j]) % m))
            .collect()
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.modulus).collect()
    }

    pub fn encode(&self, v: &[u64]) -> usize {
        v.iter()
            .rev()
            .fold(0, |acc, &x| acc * self.modulus as usize + x as usize)
    }

    pub fn decode(&self, mut i: usize) -> Vec<u64> {
        (0..self.rank)
            .map(|_| {
                let x = (i % self.modulus as usize) as u64;
                i /= self.modulus as usize;
                x
            })
            .collect()
    }

    /// The contragredient module: `x` acts by the transpose of `x^-1`.
    pub fn dual(&self, g: &GroupTable) -> Self {
        let r = self.rank;
        let action = (0..g.order())
            .map(|x| {
                let a = &self.action[g.inv(x)];
                let mut t = vec![0; r * r];
                for i in 0..r {
                    for j in 0..r {
                        t[i * r + j] = a[j * r + i];
                    }
                }
                t
            })
            .collect();
        Coefficients {
            modulus: self.modulus,
            rank: r,
            action,
            trivial: self.trivial,
        }
    }

    /// Reduction modulo a divisor of the modulus.
    pub fn reduce(&self, q: u64) -> Result<Self> {
        if q == 0 || !self.modulus.is_multiple_of(q) {
            return Err(Error::Invalid(format!("{q} does not divide {}", self.modulus)));
        }
        Ok(Coefficients {
            modulus: q,
            rank: self.rank,
            action: self.action.iter().map(|a| a.iter().map(|&x| x % q).collect()).collect(),
            trivial: self.trivial,
        })
    }

    /// Prime-power components `(Modulus p^e, module mod p^e)`.
    pub fn primary_components(&self) -> Result<Vec<(Modulus, Coefficients)>> {
        factorize(self.modulus)
            .into_iter()
            .map(|(p, e)| {
                let md = Modulus::new(p as u32, e)?;
                Ok((md, self.reduce(md.q() as u64)?))
            })
            .collect()
    }
}

/// CRT idempotents: `e_i = 1 mod q_i`, `0 mod q_j` for `j != i`, all mod `m`.
pub fn crt_idempotents(m: u64) -> Vec<(u64, u64)> {
    factorize(m)
        .into_iter()
        .map(|(p, e)| {
            let q = p.pow(e);
            let rest = m / q;
            let e = (rest as u128 * inv_mod(rest % q, q).unwrap_or(0) as u128 % m as u128) as u64;
            (q, e % m)
        })
        .collect()
}

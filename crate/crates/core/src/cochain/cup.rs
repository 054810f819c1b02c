use super::cochain::{tuple_at, tuple_count, Cochain};
use super::coeffs::Coefficients;
use crate::error::{Error, Result};
use crate::groupkit::GroupTable;

/// A bilinear pairing `(Z/ma)^ra x (Z/mb)^rb -> Z/target`, stored as the
/// matrix of values on basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairing {
    target: u64,
    rank_a: usize,
    rank_b: usize,
    matrix: Vec<u64>,
}

impl Pairing {
    /// `<a, b> = sum a_s M[s][t] b_t`; checks the formula is well defined on
    /// residues (`ma M = mb M = 0` in `Z/target`).
    pub fn from_matrix(a: &Coefficients, b: &Coefficients, target: u64, matrix: Vec<u64>) -> Result<Self> {
        let (ra, rb) = (a.rank(), b.rank());
        if matrix.len() != ra * rb {
            return Err(Error::Dimension(format!("pairing matrix must be {ra} x {rb}")));
        }
        let matrix: Vec<u64> = matrix.into_iter().map(|x| x % target).collect();
        for &x in &matrix {
            if !(a.modulus() as u128 * x as u128).is_multiple_of(target as u128)
                || !(b.modulus() as u128 * x as u128).is_multiple_of(target as u128)
            {
                return Err(Error::NotBilinear(format!(
                    "entry {x} is not killed by the coefficient moduli {} and {}",
                    a.modulus(),
                    b.modulus()
                )));
            }
        }
        Ok(Pairing {
            target,
            rank_a: ra,
            rank_b: rb,
            matrix,
        })
    }

    /// From a full value table `table[enc(a)][enc(b)]`, verified bilinear.
    pub fn from_table(a: &Coefficients, b: &Coefficients, target: u64, table: &[Vec<u64>]) -> Result<Self> {
        let (sa, sb) = (a.size(), b.size());
        let (sa, sb) = match (sa, sb) {
            (Some(x), Some(y)) if x * y <= 1 << 22 => (x as usize, y as usize),
            _ => return Err(Error::TooLarge("pairing table too large to verify".into())),
        };
        if table.len() != sa || table.iter().any(|r| r.len() != sb) {
            return Err(Error::Dimension(format!("pairing table must be {sa} x {sb}")));
        }
        let unit = |c: &Coefficients, i: usize| {
            let mut v = vec![0; c.rank()];
            v[i] = 1;
            c.encode(&v)
        };
        let matrix = (0..a.rank())
            .flat_map(|s| (0..b.rank()).map(move |t| (s, t)))
            .map(|(s, t)| table[unit(a, s)][unit(b, t)])
            .collect();
        let p = Self::from_matrix(a, b, target, matrix)?;
        for (ia, row) in table.iter().enumerate() {
            let va = a.decode(ia);
            for (ib, &val) in row.iter().enumerate() {
                if p.eval(&va, &b.decode(ib)) != val % target {
                    return Err(Error::NotBilinear(format!(
                        "table entry ({ia}, {ib}) breaks bilinearity"
                    )));
                }
            }
        }
        Ok(p)
    }

    /// `<a, b> = a b (target / m)` on `Z/m x Z/m`.
    pub fn scaled_product(m: u64, target: u64) -> Result<Self> {
        if !target.is_multiple_of(m) {
            return Err(Error::Invalid(format!("{m} does not divide {target}")));
        }
        Ok(Pairing {
            target,
            rank_a: 1,
            rank_b: 1,
            matrix: vec![target / m],
        })
    }

    pub fn target(&self) -> u64 {
        self.target
    }

    pub fn eval(&self, a: &[u64], b: &[u64]) -> u64 {
        let t = self.target as u128;
        let mut s = 0u128;
        for i in 0..self.rank_a {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank_b {
                s = (s + a[i] as u128 * self.matrix[i * self.rank_b + j] as u128 % t * b[j] as u128) % t;
            }
        }
        s as u64
    }

    /// The same pairing with arguments exchanged.
    pub fn swapped(&self) -> Self {
        let mut m = vec![0; self.matrix.len()];
        for i in 0..self.rank_a {
            for j in 0..self.rank_b {
                m[j * self.rank_a + i] = self.matrix[i * self.rank_b + j];
            }
        }
        Pairing {
            target: self.target,
            rank_a: self.rank_b,
            rank_b: self.rank_a,
            matrix: m,
        }
    }

    /// `<x a, x b> = <a, b>` for all `x`, checked on basis vectors.
    pub fn check_invariant(&self, g: &GroupTable, a: &Coefficients, b: &Coefficients) -> Result<()> {
        for x in 0..g.order() {
            for s in 0..self.rank_a {
                for t in 0..self.rank_b {
                    let mut ea = vec![0; self.rank_a];
                    ea[s] = 1;
                    let mut eb = vec![0; self.rank_b];
                    eb[t] = 1;
                    if self.eval(&a.act(x, &ea), &b.act(x, &eb)) != self.eval(&ea, &eb) {
                        return Err(Error::NotBilinear(format!(
                            "pairing is not invariant under element {x}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Alexander-Whitney cup product followed by the pairing:
/// `(a u k)(g1..g_{i+j}) = <a(g1..gi), (g1...gi) k(g_{i+1}..)>`.
pub fn cup_pair(
    g: &GroupTable,
    alpha: &Cochain,
    a: &Coefficients,
    kappa: &Cochain,
    b: &Coefficients,
    pairing: &Pairing,
) -> Result<Cochain> {
    if alpha.rank() != a.rank() || kappa.rank() != b.rank() || alpha.group_order() != g.order() {
        return Err(Error::Dimension(
            "cochains do not match their coefficient modules".into(),
        ));
    }
    pairing.check_invariant(g, a, b)?;
    let (i, j) = (alpha.level(), kappa.level());
    let n = g.order();
    let target = Coefficients::trivial(n, pairing.target(), 1);
    let mut out = Cochain::zero(n, &target, i + j);
    for idx in 0..tuple_count(n, i + j) {
        let t = tuple_at(n, i + j, idx);
        let x = alpha.get(&t[..i]);
        if x.iter().all(|&v| v == 0) {
            continue;
        }
        let prod = t[..i].iter().fold(0, |acc, &h| g.mul(acc, h));
        let y = b.act(prod, &kappa.get(&t[i..]));
        out.set_index(idx, &[pairing.eval(&x, &y)]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::differential::{coboundary, is_cocycle};
    use super::*;
    use crate::groupkit::table;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_cup() {
        let g = table::cyclic(4);
        let m = Coefficients::trivial(4, 4, 1);
        let p = Pairing::scaled_product(4, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = Cochain::random(4, &m, 1, &mut rng);
        let z = Cochain::zero(4, &m, 2);
        assert!(cup_pair(&g, &a, &m, &z, &m, &p).unwrap().is_zero());
    }

    #[test]
    fn leibniz() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = table::dihedral(6).unwrap();
        // n = Z/3 with reflections acting by -1; dual action is the same
        let chi: Vec<u64> = (0..6).map(|x| if x >= 3 { 2 } else { 1 }).collect();
        let n = Coefficients::cyclic_twisted(&g, 3, &chi).unwrap();
        let nd = n.dual(&g);
        let p = Pairing::scaled_product(3, 6).unwrap();
        let t = Coefficients::trivial(6, 6, 1);
        for (i, j) in [(1, 1), (1, 2), (2, 1), (0, 2)] {
            let a = Cochain::random(6, &nd, i, &mut rng);
            let k = Cochain::random(6, &n, j, &mut rng);
            let lhs = coboundary(&g, &t, &cup_pair(&g, &a, &nd, &k, &n, &p).unwrap()).unwrap();
            let t1 = cup_pair(&g, &coboundary(&g, &nd, &a).unwrap(), &nd, &k, &n, &p).unwrap();
            let t2 = cup_pair(&g, &a, &nd, &coboundary(&g, &n, &k).unwrap(), &n, &p).unwrap();
            let rhs = if i % 2 == 0 { t1.add(&t2) } else { t1.sub(&t2) }.unwrap();
            assert_eq!(lhs, rhs, "degrees ({i}, {j})");
        }
    }

    #[test]
    fn cup_of_cocycles_is_cocycle() {
        let g = table::elementary_abelian(2, 2).unwrap();
        let f2 = Coefficients::trivial(4, 2, 1);
        let t = Coefficients::trivial(4, 2, 1);
        let p = Pairing::scaled_product(2, 2).unwrap();
        // homomorphisms V -> Z/2 are cocycles
        let h1 = Cochain::from_fn(4, &f2, 1, |x| vec![(x[0] & 1) as u64]);
        let h2 = Cochain::from_fn(4, &f2, 1, |x| vec![((x[0] >> 1) & 1) as u64]);
        assert!(is_cocycle(&g, &f2, &h1).unwrap());
        let c = cup_pair(&g, &h1, &f2, &h2, &f2, &p).unwrap();
        assert!(is_cocycle(&g, &t, &c).unwrap());
    }

    #[test]
    fn table_checks() {
        let a = Coefficients::trivial(1, 4, 1);
        let good: Vec<Vec<u64>> = (0..4).map(|x| (0..4).map(|y| x * y % 4).collect()).collect();
        assert!(Pairing::from_table(&a, &a, 4, &good).is_ok());
        let mut bad = good.clone();
        bad[2][3] = 1;
        assert!(matches!(
            Pairing::from_table(&a, &a, 4, &bad),
            Err(Error::NotBilinear(_))
        ));
        // Z/4 x Z/4 -> Z/2 via a b is fine, but a b into Z/8 is not well defined
        assert!(Pairing::from_matrix(&a, &a, 8, vec![1]).is_err());
        assert!(Pairing::from_matrix(&a, &a, 8, vec![2]).is_ok());
    }
}

//! Total-degree-3 LHS bookkeeping, Sylow fixed points on `H^3(Z_p, U(1))`,
//! and the integral Kunneth formula in degree 4.

use std::fmt;

use crate::cochain::{cohomology_module, cohomology_u1, Coefficients};
use crate::constants::{self, ConstantValue};
use crate::error::{Error, Result};
use crate::exactlin::{factorize, gcd, is_prime, pow_mod, FiniteAbelianGroup};
use crate::groupkit::GroupTable;

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// The automorphism `g -> g^a` of `Z_p` acts on `H^{2k-1}(Z_p, U(1)) = Z_p`
/// by multiplication by `a^k`.
pub fn cyclic_h_odd(p: u64, k: u32, a: i64) -> Result<u64> {
    check_prime(p)?;
    if k == 0 {
        return Err(Error::Invalid("degree index k must be positive".into()));
    }
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return Err(Error::Invalid(format!("{a} is not a unit mod {p}")));
    }
    Ok(pow_mod(a, k as u64, p))
}

/// Smallest primitive root mod `p`.
pub fn primitive_root(p: u64) -> Result<u64> {
    check_prime(p)?;
    if p == 2 {
        return Ok(1);
    }
    let factors = factorize(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&(f, _)| pow_mod(g, (p - 1) / f, p) != 1))
        .ok_or_else(|| Error::Inconsistent(format!("no primitive root mod {p}")))
}

/// Generator of the unique order-`q` subgroup of `(Z/p)^x`.
pub fn unit_subgroup_generator(p: u64, q: u64) -> Result<u64> {
    check_prime(p)?;
    if q == 0 || !(p - 1).is_multiple_of(q) {
        return Err(Error::Invalid(format!("{q} does not divide {p} - 1")));
    }
    Ok(pow_mod(primitive_root(p)?, (p - 1) / q, p))
}

/// `H^{2k}(Z_p : Z_q, Z)_(p)`: the `Z_q`-fixed part of `H^{2k}(Z_p, Z) = Z_p`.
pub fn semidirect_even_p_part(p: u64, q: u64, k: u32) -> Result<FiniteAbelianGroup> {
    let h = unit_subgroup_generator(p, q)?;
    let w = cyclic_h_odd(p, k, h as i64)?;
    Ok(if w == 1 {
        FiniteAbelianGroup::cyclic(p)
    } else {
        FiniteAbelianGroup::trivial()
    })
}

/// `H^3(Z_p : Z_q, U(1))_(p)`, the `q`-fixed part of `H^3(Z_p, U(1)) = Z_p`.
pub fn frobenius_h3_p_part(p: u64, q: u64) -> Result<FiniteAbelianGroup> {
    semidirect_even_p_part(p, q, 2)
}

/// Integral cohomology `H^1..H^4` of a finite group; `H^0 = Z` is implicit.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntegralCohomology {
    /// `degrees[i - 1] = H^i(G, Z)` for `i = 1..=4`.
    pub degrees: [FiniteAbelianGroup; 4],
}

impl IntegralCohomology {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn new(h1: FiniteAbelianGroup, h2: FiniteAbelianGroup, h3: FiniteAbelianGroup, h4: FiniteAbelianGroup) -> Self {
        IntegralCohomology {
            degrees: [h1, h2, h3, h4],
        }
    }

    /// `Z_n`: `Z_n` in even positive degrees.
    pub fn cyclic(n: u64) -> Self {
        let z = FiniteAbelianGroup::cyclic(n);
        let o = FiniteAbelianGroup::trivial();
        Self::new(o.clone(), z.clone(), o, z)
    }

    /// `H^i(G, Z) = H^{i-1}(G, U(1))` for `i >= 2`, and `H^1 = 0`, by brute force.
    pub fn from_table(g: &GroupTable) -> Result<Self> {
        Ok(Self::new(
            FiniteAbelianGroup::trivial(),
            cohomology_u1(g, 1)?,
            cohomology_u1(g, 2)?,
            cohomology_u1(g, 3)?,
        ))
    }

    /// `p`-parts of `Z_p : Z_q`.
    pub fn semidirect_p_part(p: u64, q: u64) -> Result<Self> {
        let o = FiniteAbelianGroup::trivial();
        Ok(Self::new(
            o.clone(),
            semidirect_even_p_part(p, q, 1)?,
            o,
            semidirect_even_p_part(p, q, 2)?,
        ))
    }

    pub fn degree(&self, i: usize) -> Option<&FiniteAbelianGroup> {
        (1..=4).contains(&i).then(|| &self.degrees[i - 1])
    }

    pub fn p_part(&self, p: u64) -> Self {
        IntegralCohomology {
            degrees: self.degrees.clone().map(|g| g.p_part(p)),
        }
    }
}

/// `H^4(A x B, Z) = sum_{i+j=4} H^i(A) (x) H^j(B) + sum_{i+j=5} Tor(H^i(A), H^j(B))`.
pub fn kunneth_degree4_z(a: &IntegralCohomology, b: &IntegralCohomology) -> FiniteAbelianGroup {
    let mut total = a.degrees[3].direct_sum(&b.degrees[3]);
    for i in 1..=3 {
        total = total.direct_sum(&a.degrees[i - 1].tensor(&b.degrees[4 - i - 1]));
    }
    for i in 1..=4 {
        let j = 5 - i;
        if j <= 4 {
            total = total.direct_sum(&a.degrees[i - 1].tor(&b.degrees[j - 1]));
        }
    }
    total
}

/// One row of the large-primes vanishing table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LargePrimeRow {
    pub p: u64,
    pub method: String,
    pub value: FiniteAbelianGroup,
}

/// `H^3(M, U(1))_(p)` bounds for `p = 11` and every prime divisor `p >= 17`
/// of `|M|`, from the quoted Sylow normalizer shapes.
pub fn large_primes_table() -> Result<Vec<LargePrimeRow>> {
    constants::lookup("large_prime_sylow_normalizer")?;
    let mut rows = Vec::new();
    for p in constants::monster_primes() {
        if p == 11 {
            let part = IntegralCohomology::semidirect_p_part(11, 5)?;
            rows.push(LargePrimeRow {
                p,
                method: "Kunneth on (11:5)^2".into(),
                value: kunneth_degree4_z(&part, &part).p_part(11),
            });
        } else if p >= 17 {
            rows.push(LargePrimeRow {
                p,
                method: format!("fixed points of {p}:{}", (p - 1) / 2),
                value: frobenius_h3_p_part(p, (p - 1) / 2)?,
            });
        }
    }
    Ok(rows)
}

/// How an E2 entry was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Computed(String),
    Input(&'static str),
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntryValue {
    Group(FiniteAbelianGroup),
    /// An `F_p`-module given by its dimension.
    Dimension {
        p: u64,
        dim: usize,
    },
    Exponent(u64),
    Unknown,
}

impl fmt::Display for EntryValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntryValue::Group(g) => write!(f, "{g}"),
            EntryValue::Dimension { p, dim } => write!(f, "F{p}^{dim}"),
            EntryValue::Exponent(e) => write!(f, "exponent {e}"),
            EntryValue::Unknown => write!(f, "unknown"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub label: &'static str,
    pub value: EntryValue,
    pub provenance: Provenance,
}

/// The four `E2` terms of total degree 3 for `H^3(n.J, U(1))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E2PageDeg3 {
    /// `H^0(J, H^3(n, U(1)))`, `H^1(J, H^2(n, U(1)))`, `H^2(J, n^)`, `H^3(J, U(1))`.
    pub entries: [Entry; 4],
    /// Simplifications recorded along the way (e.g. for cyclic `n`).
    pub notes: Vec<String>,
}

impl E2PageDeg3 {
    /// Product of the entry orders when every entry is a known group; the
    /// order of `H^3(n.J, U(1))` divides it.
    pub fn order_bound(&self) -> Option<u64> {
        self.entries.iter().try_fold(1u64, |acc, e| match &e.value {
            EntryValue::Group(g) => acc.checked_mul(g.order()),
            _ => None,
        })
    }
}

const LABELS: [&str; 4] = [
    "H^0(J, H^3(n, U(1)))",
    "H^1(J, H^2(n, U(1)))",
    "H^2(J, n^)",
    "H^3(J, U(1))",
];

/// Assembles the page for a cyclic `n = Z_m` with `J` acting through the
/// rank-one coefficient module `n`.
pub fn e2_deg3(j: &GroupTable, n: &Coefficients) -> Result<E2PageDeg3> {
    if n.rank() != 1 {
        return Err(Error::Invalid(
            "e2_deg3 handles cyclic n (rank-one coefficients)".into(),
        ));
    }
    let m = n.modulus();
    // x acts on H^3(Z_m, U(1)) = Z_m by the square of its multiplier
    let fixed = (0..j.order()).fold(m, |g, x| {
        let u = n.matrix(x)[0];
        let w = u * u % m;
        gcd(g, (w + m - 1) % m)
    });
    let computed = |what: &str| Provenance::Computed(what.to_string());
    let dual = n.dual(j);
    let entries = [
        Entry {
            label: LABELS[0],
            value: EntryValue::Group(FiniteAbelianGroup::cyclic(if fixed == 0 { m } else { fixed })),
            provenance: computed("fixed points of the squared multipliers on Z_m"),
        },
        Entry {
            label: LABELS[1],
            value: EntryValue::Group(FiniteAbelianGroup::trivial()),
            provenance: computed("H^2(Z_m, U(1)) = 0"),
        },
        Entry {
            label: LABELS[2],
            value: EntryValue::Group(cohomology_module(j, &dual, 2)?),
            provenance: computed("bar cochains"),
        },
        Entry {
            label: LABELS[3],
            value: EntryValue::Group(cohomology_u1(j, 3)?),
            provenance: computed("bar cochains"),
        },
    ];
    Ok(E2PageDeg3 {
        entries,
        notes: vec![
            format!("n = Z{m} is cyclic: H^1(n, U(1)) = n^, H^2(n, U(1)) = 0"),
            "H^1(J, n) = 0 is assumed, not checked".into(),
        ],
    })
}

/// The page for `2^{1+24}.Co1` from quoted inputs.
pub fn e2_co1_ledger() -> Result<E2PageDeg3> {
    let input = |name: &str| -> Result<(EntryValue, Provenance)> {
        let c = constants::lookup(name)?;
        let v = match c.value {
            ConstantValue::Exponent(e) => EntryValue::Exponent(e),
            ConstantValue::Group(_) => EntryValue::Group(c.group()?),
            _ => EntryValue::Unknown,
        };
        Ok((v, Provenance::Input(c.source)))
    };
    let names = [
        "extraspecial_h3_u1_exponent",
        "extraspecial_h2_u1_exponent",
        "extraspecial_h1_u1_exponent",
        "co1_h3_u1",
    ];
    let mut entries = Vec::new();
    for (label, name) in LABELS.iter().zip(names) {
        let (value, provenance) = input(name)?;
        entries.push(Entry {
            label,
            value,
            provenance,
        });
    }
    let entries: [Entry; 4] = entries.try_into().expect("four entries");
    Ok(E2PageDeg3 {
        entries,
        notes: vec!["entries 1-3 bound the exponent of the coefficient module only".into()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupkit::table;

    #[test]
    fn multipliers() {
        assert_eq!(cyclic_h_odd(7, 2, -1).unwrap(), 1);
        assert_eq!(cyclic_h_odd(3, 2, 2).unwrap(), 1);
        let h = unit_subgroup_generator(19, 9).unwrap();
        assert_ne!(cyclic_h_odd(19, 2, h as i64).unwrap(), 1);
        assert!(frobenius_h3_p_part(19, 9).unwrap().is_trivial());
        assert!(cyclic_h_odd(5, 2, 10).is_err());
        assert!(cyclic_h_odd(6, 2, 1).is_err());
    }

    #[test]
    fn frobenius_parts() {
        assert!(frobenius_h3_p_part(11, 5).unwrap().is_trivial());
        assert_eq!(frobenius_h3_p_part(5, 2).unwrap(), FiniteAbelianGroup::cyclic(5));
        for p in [7u64, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
            for q in (1..p).filter(|q| (p - 1) % q == 0) {
                assert_eq!(frobenius_h3_p_part(p, q).unwrap().is_trivial(), q > 2, "p={p} q={q}");
            }
        }
    }

    #[test]
    fn large_primes_vanish() {
        let rows = large_primes_table().unwrap();
        assert_eq!(
            rows.iter().map(|r| r.p).collect::<Vec<_>>(),
            vec![11, 17, 19, 23, 29, 31, 41, 47, 59, 71]
        );
        assert!(rows.iter().all(|r| r.value.is_trivial()));
    }

    #[test]
    fn kunneth_small() {
        let z3 = IntegralCohomology::cyclic(3);
        assert_eq!(kunneth_degree4_z(&z3, &z3).to_string(), "Z3 x Z3 x Z3");
        let t = IntegralCohomology::trivial();
        assert_eq!(kunneth_degree4_z(&t, &z3), FiniteAbelianGroup::cyclic(3));
        let z2 = IntegralCohomology::cyclic(2);
        let z4 = IntegralCohomology::cyclic(4);
        assert_eq!(kunneth_degree4_z(&z2, &z4), kunneth_degree4_z(&z4, &z2));
    }

    #[test]
    fn kunneth_matches_bar_cochains() {
        let pairs = [
            (table::cyclic(2), table::cyclic(2)),
            (table::cyclic(2), table::cyclic(4)),
            (table::cyclic(2), table::symmetric(3).unwrap()),
            (table::cyclic(3), table::cyclic(3)),
        ];
        for (a, b) in pairs {
            let ha = IntegralCohomology::from_table(&a).unwrap();
            let hb = IntegralCohomology::from_table(&b).unwrap();
            let g = table::direct_product(&a, &b).unwrap();
            assert_eq!(
                kunneth_degree4_z(&ha, &hb),
                cohomology_u1(&g, 3).unwrap(),
                "{}",
                g.name()
            );
        }
        assert_eq!(
            IntegralCohomology::from_table(&table::cyclic(5)).unwrap(),
            IntegralCohomology::cyclic(5)
        );
    }

    #[test]
    fn e2_for_z4_and_products() {
        let j = table::cyclic(2);
        let n = Coefficients::trivial(2, 2, 1);
        let page = e2_deg3(&j, &n).unwrap();
        assert_eq!(page.entries[2].value, EntryValue::Group(FiniteAbelianGroup::cyclic(2)));
        let h = cohomology_u1(&table::cyclic(4), 3).unwrap();
        assert_eq!(page.order_bound().unwrap() % h.order(), 0);
        // split products with trivial action: the page has the exact order
        for (m, order) in [(2u64, 2usize), (3, 2), (2, 3)] {
            let j = table::cyclic(order);
            let n = Coefficients::trivial(order, m, 1);
            let page = e2_deg3(&j, &n).unwrap();
            let g = table::direct_product(&table::cyclic(m as usize), &j).unwrap();
            assert_eq!(page.order_bound().unwrap(), cohomology_u1(&g, 3).unwrap().order());
        }
    }

    #[test]
    fn co1_ledger_is_quoted() {
        let page = e2_co1_ledger().unwrap();
        let shown: Vec<String> = page.entries.iter().map(|e| e.value.to_string()).collect();
        assert_eq!(shown, ["exponent 4", "exponent 2", "exponent 2", "Z12"]);
        assert!(page
            .entries
            .iter()
            .all(|e| matches!(e.provenance, Provenance::Input(_))));
    }
}

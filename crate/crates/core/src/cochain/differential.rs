//! Bar differentials, cocycle/coboundary modules and cohomology groups.

use super::cochain::{tuple_at, tuple_count, tuple_index, Cochain};
use super::coeffs::Coefficients;
use crate::error::{Error, Result};
use crate::exactlin::{stream_kernel, EquationStream, FiniteAbelianGroup, HowellForm, Modulus, PackedMatrix};
use crate::groupkit::GroupTable;

const KERNEL_SEED: u64 = 0xc0c4_a1b0;

/// Largest normalized cochain space (entries) the dense paths accept.
pub const MAX_UNKNOWNS: usize = 4096;

/// `(dc)(g1..g_{k+1}) = g1 c(g2..) + sum_i (-1)^i c(..g_i g_{i+1}..) + (-1)^{k+1} c(g1..g_k)`.
pub fn coboundary(g: &GroupTable, coeffs: &Coefficients, c: &Cochain) -> Result<Cochain> {
    let n = g.order();
    if c.group_order() != n || c.rank() != coeffs.rank() || c.modulus() != coeffs.modulus() {
        return Err(Error::Dimension("cochain does not match group and coefficients".into()));
    }
    let k = c.level();
    let m = coeffs.modulus();
    let r = coeffs.rank();
    let mut out = Cochain::zero(n, coeffs, k + 1);
    let mut buf = vec![0usize; k];
    let mut acc = vec![0u64; r];
    for idx in 0..tuple_count(n, k + 1) {
        let t = tuple_at(n, k + 1, idx);
        acc.copy_from_slice(&coeffs.act(t[0], &c.get(&t[1..])));
        for i in 1..=k {
            buf[..i - 1].copy_from_slice(&t[..i - 1]);
            buf[i - 1] = g.mul(t[i - 1], t[i]);
            buf[i..].copy_from_slice(&t[i + 1..]);
            let v = c.get(&buf);
            for (a, x) in acc.iter_mut().zip(v) {
                *a = if i % 2 == 1 { (*a + m - x) % m } else { (*a + x) % m };
            }
        }
        let v = c.get(&t[..k]);
        for (a, x) in acc.iter_mut().zip(v) {
            *a = if (k + 1) % 2 == 1 {
                (*a + m - x) % m
            } else {
                (*a + x) % m
            };
        }
        out.set_index(idx, &acc);
    }
    Ok(out)
}

/// First tuple where `dc` is nonzero, if any.
pub fn cocycle_violation(g: &GroupTable, coeffs: &Coefficients, c: &Cochain) -> Result<Option<Vec<usize>>> {
    let d = coboundary(g, coeffs, c)?;
    Ok((0..d.num_tuples())
        .find(|&i| d.at_index(i).iter().any(|&x| x != 0))
        .map(|i| tuple_at(g.order(), c.level() + 1, i)))
}

pub fn is_cocycle(g: &GroupTable, coeffs: &Coefficients, c: &Cochain) -> Result<bool> {
    Ok(cocycle_violation(g, coeffs, c)?.is_none())
}

/// Rows of the matrix of `d_k : C^k -> C^{k+1}` over a prime-power modulus,
/// produced tuple by tuple.
pub struct CoboundaryRows<'a> {
    group: &'a GroupTable,
    coeffs: &'a Coefficients,
    level: usize,
    modulus: Modulus,
}

impl<'a> CoboundaryRows<'a> {
    pub fn new(group: &'a GroupTable, coeffs: &'a Coefficients, level: usize) -> Result<Self> {
        let modulus = Modulus::from_order(coeffs.modulus())?;
        Ok(CoboundaryRows {
            group,
            coeffs,
            level,
            modulus,
        })
    }
}

impl EquationStream for CoboundaryRows<'_> {
    fn modulus(&self) -> Modulus {
        self.modulus
    }
    fn unknowns(&self) -> usize {
        tuple_count(self.group.order(), self.level) * self.coeffs.rank()
    }
    fn len(&self) -> usize {
        tuple_count(self.group.order(), self.level + 1) * self.coeffs.rank()
    }
    fn for_each(&self, f: &mut dyn FnMut(usize, &[(usize, u32)])) {
        let (g, n, k, r) = (self.group, self.group.order(), self.level, self.coeffs.rank());
        let q = self.modulus.q();
        let neg1 = q - 1;
        let mut terms: Vec<(usize, u32)> = Vec::with_capacity((k + 2) * r);
        let mut buf = vec![0usize; k];
        for idx in 0..tuple_count(n, k + 1) {
            let t = tuple_at(n, k + 1, idx);
            let first = tuple_index(n, &t[1..]).expect("non-identity entries");
            let a = self.coeffs.matrix(t[0]);
            let mut middle: Vec<(usize, u32)> = Vec::with_capacity(k + 1);
            for i in 1..=k {
                buf[..i - 1].copy_from_slice(&t[..i - 1]);
                buf[i - 1] = g.mul(t[i - 1], t[i]);
                buf[i..].copy_from_slice(&t[i + 1..]);
                if let Some(j) = tuple_index(n, &buf) {
                    middle.push((j, if i % 2 == 1 { neg1 } else { 1 }));
                }
            }
            let last = tuple_index(n, &t[..k]).expect("non-identity entries");
            middle.push((last, if (k + 1) % 2 == 1 { neg1 } else { 1 }));
            for comp in 0..r {
                terms.clear();
                for j in 0..r {
                    let x = a[comp * r + j] as u32;
                    if x != 0 {
                        terms.push((first * r + j, x));
                    }
                }
                for &(tup, s) in &middle {
                    terms.push((tup * r + comp, s));
                }
                f(idx * r + comp, &terms);
            }
        }
    }
}

/// Dense matrix of `d_k` (rows are `(k+1)`-tuple components).
pub fn coboundary_matrix(g: &GroupTable, coeffs: &Coefficients, k: usize) -> Result<PackedMatrix> {
    let rows = CoboundaryRows::new(g, coeffs, k)?;
    let md = rows.modulus;
    let mut m = PackedMatrix::zeros(md, rows.len(), rows.unknowns());
    rows.for_each(&mut |i, terms| {
        for &(c, v) in terms {
            let cur = m.get(i, c);
            m.set(i, c, md.add(cur, v));
        }
    });
    Ok(m)
}

/// Generators of `Z^k` (rows), over a prime-power modulus.
pub fn cocycle_generators(g: &GroupTable, coeffs: &Coefficients, k: usize) -> Result<Vec<Vec<u32>>> {
    let rows = CoboundaryRows::new(g, coeffs, k)?;
    Ok(stream_kernel(&rows, KERNEL_SEED)?.to_rows())
}

/// Generators of `B^k`: the images `d(e)` of the basis cochains of `C^{k-1}`.
pub fn coboundary_generators(g: &GroupTable, coeffs: &Coefficients, k: usize) -> Result<Vec<Vec<u32>>> {
    if k == 0 {
        return Ok(Vec::new());
    }
    let rows = CoboundaryRows::new(g, coeffs, k - 1)?;
    let md = rows.modulus;
    let mut gens = vec![vec![0u32; rows.len()]; rows.unknowns()];
    rows.for_each(&mut |i, terms| {
        for &(c, v) in terms {
            gens[c][i] = md.add(gens[c][i], v);
        }
    });
    Ok(gens)
}

/// Invariants of `(span W + span B) / span B` over `Z/p^e`.
pub fn quotient_invariants(md: Modulus, cols: usize, w: &[Vec<u32>], b: &[Vec<u32>]) -> FiniteAbelianGroup {
    let e = md.k();
    let base = HowellForm::from_rows(md, cols, b.to_vec()).log_order();
    let mut s = Vec::with_capacity(e as usize + 2);
    for j in 0..=e {
        let pj = md.pow_p(j) % md.q();
        let mut rows: Vec<Vec<u32>> = w.iter().map(|r| r.iter().map(|&x| md.mul(x, pj)).collect()).collect();
        rows.extend(b.iter().cloned());
        s.push(HowellForm::from_rows(md, cols, rows).log_order() - base);
    }
    s.push(0);
    // c[j] = number of cyclic factors of order at least p^(j+1)
    let c: Vec<u32> = (0..=e as usize).map(|j| s[j] - s[j + 1]).collect();
    let p = md.p() as u64;
    let mut orders = Vec::new();
    for j in 0..e as usize {
        let exactly = c[j] - c.get(j + 1).copied().unwrap_or(0);
        orders.extend(std::iter::repeat_n(p.pow(j as u32 + 1), exactly as usize));
    }
    FiniteAbelianGroup::from_cyclic_orders(orders)
}

fn check_cells(g: &GroupTable, coeffs: &Coefficients, k: usize) -> Result<()> {
    let cells = (g.order() as f64).powi(k as i32 + 1) * coeffs.rank() as f64;
    if cells > 1e7 {
        return Err(Error::TooLarge(format!(
            "H^{k} with |G| = {} and rank {} needs about {cells:.2e} cells (limit 1e7)",
            g.order(),
            coeffs.rank()
        )));
    }
    Ok(())
}

fn cohomology_prime_power(g: &GroupTable, coeffs: &Coefficients, k: usize) -> Result<FiniteAbelianGroup> {
    let md = Modulus::from_order(coeffs.modulus())?;
    let z = cocycle_generators(g, coeffs, k)?;
    let b = coboundary_generators(g, coeffs, k)?;
    let cols = tuple_count(g.order(), k) * coeffs.rank();
    Ok(quotient_invariants(md, cols, &z, &b))
}

/// `H^k(G, M)` for a finite coefficient module, by brute force on normalized
/// bar cochains (prime-power components computed separately).
pub fn cohomology_module(g: &GroupTable, coeffs: &Coefficients, k: usize) -> Result<FiniteAbelianGroup> {
    check_cells(g, coeffs, k)?;
    let mut total = FiniteAbelianGroup::trivial();
    for (_, part) in coeffs.primary_components()? {
        total = total.direct_sum(&cohomology_prime_power(g, &part, k)?);
    }
    Ok(total)
}

/// Rough operation count for `H^k(G, U(1))`: equations times unknowns.
pub fn u1_cost_estimate(order: usize, k: usize) -> (usize, usize, f64) {
    let unknowns = tuple_count(order, k);
    let equations = tuple_count(order, k + 1);
    (equations, unknowns, equations as f64 * unknowns as f64)
}

/// `H^k(G, U(1))` for `k >= 1`.
///
/// For each prime `p` with `p^a || |G|`, the p-part follows from
/// `H^j(G, Z/p^a) = H^j(G, U(1))_p + H^{j-1}(G, U(1))_p` (the Bockstein
/// sequence of `Z/p^a -> U(1) -> U(1)` splits abstractly), starting from
/// `H^0(G, U(1))_p` contributing nothing.
pub fn cohomology_u1(g: &GroupTable, k: usize) -> Result<FiniteAbelianGroup> {
    if k == 0 {
        return Err(Error::Invalid("H^0(G, U(1)) = U(1) is not finite".into()));
    }
    let n = g.order();
    if n == 1 {
        return Ok(FiniteAbelianGroup::trivial());
    }
    let (equations, unknowns, cost) = u1_cost_estimate(n, k);
    if unknowns > MAX_UNKNOWNS || cost > 2.5e8 {
        return Err(Error::TooLarge(format!(
            "H^{k}(G, U(1)) for |G| = {n}: {equations} equations in {unknowns} unknowns (~{cost:.1e} cell operations)"
        )));
    }
    let mut total = FiniteAbelianGroup::trivial();
    for (p, a) in crate::exactlin::factorize(n as u64) {
        let coeffs = Coefficients::trivial(n, p.pow(a), 1);
        let mut prev = FiniteAbelianGroup::trivial();
        for j in 1..=k {
            let h = cohomology_prime_power(g, &coeffs, j)?;
            prev = cancel(&h, &prev)?;
        }
        total = total.direct_sum(&prev);
    }
    Ok(total)
}

/// `C` with `A = B + C`, by elementary-divisor multiset difference.
pub fn cancel(a: &FiniteAbelianGroup, b: &FiniteAbelianGroup) -> Result<FiniteAbelianGroup> {
    let mut left: Vec<(u64, Vec<u32>)> = a.primary();
    for (p, es) in b.primary() {
        let slot = left
            .iter_mut()
            .find(|(q, _)| *q == p)
            .ok_or_else(|| Error::Inconsistent(format!("{b} is not a summand of {a}")))?;
        for e in es {
            let pos = slot
                .1
                .iter()
                .position(|&x| x == e)
                .ok_or_else(|| Error::Inconsistent(format!("{b} is not a summand of {a}")))?;
            slot.1.remove(pos);
        }
    }
    Ok(FiniteAbelianGroup::from_cyclic_orders(
        left.into_iter()
            .flat_map(|(p, es)| es.into_iter().map(move |e| p.pow(e))),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupkit::table;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_cochain_boundary() {
        let g = table::cyclic(4);
        let m = Coefficients::trivial(4, 6, 1);
        let c = Cochain::from_values(4, &m, 0, vec![5]).unwrap();
        assert!(coboundary(&g, &m, &c).unwrap().is_zero());
        let tw = Coefficients::cyclic_twisted(&g, 5, &[1, 2, 4, 3]).unwrap();
        let c = Cochain::from_values(4, &tw, 0, vec![1]).unwrap();
        let d = coboundary(&g, &tw, &c).unwrap();
        assert_eq!(d.get(&[1]), vec![1]);
    }

    #[test]
    fn d_squared_vanishes() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let sign = |x: bool| if x { 6 } else { 1 };
        let z6 = table::cyclic(6);
        let d8 = table::dihedral(8).unwrap();
        let d6 = table::dihedral(6).unwrap();
        let cases = [
            (
                &z6,
                Coefficients::cyclic_twisted(&z6, 7, &(0..6).map(|x| sign(x % 2 == 1)).collect::<Vec<_>>()).unwrap(),
            ),
            (
                &d8,
                Coefficients::cyclic_twisted(&d8, 7, &(0..8).map(|x| sign(x >= 4)).collect::<Vec<_>>()).unwrap(),
            ),
            (
                &d6,
                Coefficients::cyclic_twisted(&d6, 7, &(0..6).map(|x| sign(x >= 3)).collect::<Vec<_>>()).unwrap(),
            ),
            (&d6, Coefficients::trivial(6, 4, 2)),
        ];
        for (g, coeffs) in &cases {
            for k in 0..4 {
                for _ in 0..5 {
                    let c = Cochain::random(g.order(), coeffs, k, &mut rng);
                    let dd = coboundary(g, coeffs, &coboundary(g, coeffs, &c).unwrap()).unwrap();
                    assert!(dd.is_zero());
                }
            }
        }
    }

    #[test]
    fn one_cocycles_are_homomorphisms_for_z6() {
        let g = table::cyclic(6);
        let m = Coefficients::trivial(6, 6, 1);
        let mut cocycles = 0;
        for code in 0..6u64.pow(5) {
            let mut x = code;
            let vals: Vec<u64> = (0..5)
                .map(|_| {
                    let v = x % 6;
                    x /= 6;
                    v
                })
                .collect();
            let c = Cochain::from_values(6, &m, 1, vals.clone()).unwrap();
            let hom = (1..6).all(|a| vals[a - 1] == (a as u64 * vals[0]) % 6);
            assert_eq!(is_cocycle(&g, &m, &c).unwrap(), hom);
            cocycles += hom as usize;
        }
        assert_eq!(cocycles, 6);
    }

    #[test]
    fn matrix_matches_direct() {
        let g = table::symmetric(3).unwrap();
        let m = Coefficients::trivial(6, 4, 1);
        let d = coboundary_matrix(&g, &m, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let c = Cochain::random(6, &m, 1, &mut rng);
        let v: Vec<u32> = c.values().iter().map(|&x| x as u32).collect();
        let direct: Vec<u32> = coboundary(&g, &m, &c)
            .unwrap()
            .values()
            .iter()
            .map(|&x| x as u32)
            .collect();
        assert_eq!(d.apply(&v).unwrap(), direct);
    }

    #[test]
    fn small_cohomology() {
        let z2 = table::cyclic(2);
        let f2 = Coefficients::trivial(2, 2, 1);
        assert_eq!(cohomology_module(&z2, &f2, 1).unwrap(), FiniteAbelianGroup::cyclic(2));
        assert_eq!(cohomology_module(&z2, &f2, 2).unwrap(), FiniteAbelianGroup::cyclic(2));
        let z4 = Coefficients::trivial(2, 4, 1);
        assert_eq!(cohomology_module(&z2, &z4, 1).unwrap(), FiniteAbelianGroup::cyclic(2));
        let z6 = table::cyclic(6);
        let c12 = Coefficients::trivial(6, 12, 1);
        assert_eq!(cohomology_module(&z6, &c12, 1).unwrap(), FiniteAbelianGroup::cyclic(6));
        assert_eq!(cohomology_module(&z6, &c12, 0).unwrap(), FiniteAbelianGroup::cyclic(12));
    }

    #[test]
    fn cyclic_u1() {
        for n in 2..=8 {
            let g = table::cyclic(n);
            assert_eq!(
                cohomology_u1(&g, 1).unwrap(),
                FiniteAbelianGroup::cyclic(n as u64),
                "n={n}"
            );
            assert!(cohomology_u1(&g, 2).unwrap().is_trivial(), "n={n}");
        }
        for p in [2, 3, 5] {
            assert_eq!(
                cohomology_u1(&table::cyclic(p), 3).unwrap(),
                FiniteAbelianGroup::cyclic(p as u64)
            );
        }
    }

    #[test]
    fn klein_four_u1() {
        let v = table::elementary_abelian(2, 2).unwrap();
        assert_eq!(cohomology_u1(&v, 1).unwrap(), FiniteAbelianGroup::elementary(2, 2));
        assert_eq!(cohomology_u1(&v, 2).unwrap(), FiniteAbelianGroup::cyclic(2));
        assert_eq!(cohomology_u1(&v, 3).unwrap(), FiniteAbelianGroup::elementary(2, 3));
    }

    #[test]
    fn cancellation() {
        let a: FiniteAbelianGroup = "Z2 x Z4 x Z3".parse().unwrap();
        let b: FiniteAbelianGroup = "Z4".parse().unwrap();
        assert_eq!(cancel(&a, &b).unwrap().to_string(), "Z6");
        assert!(cancel(&b, &a).is_err());
    }

    #[test]
    fn size_cap() {
        let g = table::dicyclic(24).unwrap();
        assert!(matches!(cohomology_u1(&g, 3), Err(Error::TooLarge(_))));
    }
}

use cohowork_core::chern16::{self, ChernElement, MergedClassFunction};
use cohowork_core::cochain::{coboundary, cocycle_generators, cup_pair, is_cocycle, Cochain, Coefficients, Pairing};
use cohowork_core::exactlin::{
    cokernel_invariants, howell_form, is_prime, kernel_basis, rank, rref, FiniteAbelianGroup, IntMatrix, Modulus,
    PackedMatrix,
};
use cohowork_core::foxone::{abelianization_rank, fox_derivatives, fox_matrix};
use cohowork_core::groupkit::{corpus, coxeter_presentation, extension_from_cocycle, table, Letter, Word};
use cohowork_core::repfun::{fixed_points, Functor, MatrixRep};
use cohowork_core::specseq::{frobenius_h3_p_part, kunneth_degree4_z, unit_subgroup_generator, IntegralCohomology};
use cohowork_core::{datasets, tdual};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn matrix(md: Modulus, rows: usize, cols: usize, seed: u64) -> PackedMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    PackedMatrix::from_fn(md, rows, cols, |_, _| rng.gen_range(0..md.q()))
}

fn invertible(md: Modulus, d: usize, rng: &mut ChaCha8Rng) -> PackedMatrix {
    loop {
        let g = PackedMatrix::from_fn(md, d, d, |_, _| rng.gen_range(0..md.q()));
        if g.inverse().is_some() {
            return g;
        }
    }
}

fn random_word(gens: usize, len: usize, rng: &mut ChaCha8Rng) -> Word {
    Word(
        (0..len)
            .map(|_| Letter {
                generator: rng.gen_range(0..gens),
                exponent: if rng.gen_bool(0.5) { 1 } else { -1 },
            })
            .collect(),
    )
}

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5, 7])
}

fn prime_power() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 4, 8, 3, 9, 27, 5, 25, 7])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rref_is_idempotent(p in prime(), r in 0usize..14, c in 1usize..80, seed: u64) {
        let md = Modulus::prime(p).unwrap();
        let m = matrix(md, r, c, seed);
        let once = rref(&m).unwrap();
        let twice = rref(&once.matrix).unwrap();
        prop_assert_eq!(once.matrix, twice.matrix);
    }

    #[test]
    fn rank_nullity(p in prime(), r in 0usize..14, c in 1usize..80, seed: u64) {
        let md = Modulus::prime(p).unwrap();
        let m = matrix(md, r, c, seed);
        let k = kernel_basis(&m).unwrap();
        prop_assert_eq!(rank(&m).unwrap() + k.rows(), c);
        for i in 0..k.rows() {
            prop_assert!(m.apply(&k.row(i)).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn howell_is_left_invariant(q in prime_power(), r in 1usize..7, c in 1usize..7, seed: u64) {
        let md = Modulus::from_order(q).unwrap();
        let m = matrix(md, r, c, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let u = invertible(md, r, &mut rng);
        prop_assert_eq!(howell_form(&u.mul(&m).unwrap()), howell_form(&m));
    }

    #[test]
    fn diagonal_cokernel(d in prop::collection::vec(1i64..60, 0..6)) {
        let g = cokernel_invariants(&IntMatrix::diagonal(&d)).unwrap();
        prop_assert_eq!(g, FiniteAbelianGroup::from_cyclic_orders(d.iter().map(|&x| x as u64)));
    }
}

#[test]
fn corpus_tables_are_groups() {
    for g in corpus::small_corpus() {
        let t = &g.table;
        let n = t.order();
        for a in 0..n {
            assert_eq!(t.mul(0, a), a);
            assert_eq!(t.mul(a, t.inv(a)), 0);
            for b in 0..n {
                for c in 0..n {
                    assert_eq!(t.mul(t.mul(a, b), c), t.mul(a, t.mul(b, c)));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn extension_quotient_is_j(case in 0usize..4, m in prop::sample::select(vec![2u64, 3, 4]), seed: u64) {
        let j = [table::cyclic(2), table::cyclic(3), table::elementary_abelian(2, 2).unwrap(), table::symmetric(3).unwrap()][case].clone();
        let n = Coefficients::trivial(j.order(), m, 1);
        let gens = cocycle_generators(&j, &n, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let len = Cochain::zero(j.order(), &n, 2).values().len();
        let mut v = vec![0u64; len];
        for g in &gens {
            let c = rng.gen_range(0..m);
            for (x, &y) in v.iter_mut().zip(g) {
                *x = (*x + c * y as u64) % m;
            }
        }
        let kappa = Cochain::from_values(j.order(), &n, 2, v).unwrap();
        let g = extension_from_cocycle(&j, &n, &kappa).unwrap();
        let size = m as usize;
        for a in 0..g.order() {
            for b in 0..g.order() {
                prop_assert_eq!(g.mul(a, b) / size, j.mul(a / size, b / size));
            }
        }
        // kernel of the projection is the embedded n
        prop_assert_eq!((0..g.order()).filter(|&a| a / size == 0).count(), size);
    }
}

#[test]
fn coxeter_quotients_and_perfect_co1() {
    let names = ["a", "b", "c", "d", "e", "f", "g", "h", "i"];
    let path: Vec<(usize, usize, u32)> = (0..8).map(|i| (i, i + 1, if i == 2 { 8 } else { 3 })).collect();
    let mut p = coxeter_presentation(&names, &path).unwrap();
    assert_eq!(abelianization_rank(&p, 2).unwrap(), 2);
    p.add_relator_text("( c d )^4 a^-1").unwrap();
    assert_eq!(abelianization_rank(&p, 2).unwrap(), 1);
    for n in 3..=9 {
        let edges: Vec<(usize, usize, u32)> = (0..n - 1).map(|i| (i, i + 1, 3)).collect();
        let q = coxeter_presentation(&names[..n], &edges).unwrap();
        assert_eq!(abelianization_rank(&q, 2).unwrap(), 1);
    }
    let co1 = datasets::co1_presentation().unwrap();
    for prime in [2, 3, 5, 7] {
        assert_eq!(abelianization_rank(&co1, prime).unwrap(), 0);
    }
    let rep = datasets::co1_rep().unwrap();
    assert!(rep.images().iter().all(|g| g.mul(g).unwrap().is_identity()));
    assert!(rep.check_relators().unwrap().iter().all(|&b| b));
}

fn corpus_rep(p: u32, which: usize) -> MatrixRep {
    let g = corpus::small_corpus().swap_remove(which);
    let md = Modulus::prime(p).unwrap();
    let n = g.table.order();
    let images: Vec<PackedMatrix> = g
        .generators
        .iter()
        .map(|&s| PackedMatrix::from_fn(md, n, n, |i, j| u32::from(g.table.mul(s, j) == i)))
        .collect();
    MatrixRep::from_presentation(g.presentation, images).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn functors_respect_words(p in prime(), which in 0usize..19, seed: u64) {
        let rep = corpus_rep(p, which);
        prop_assume!(rep.dim() <= 8);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rep.names().len();
        let (w1, w2) = (random_word(n, 6, &mut rng), random_word(n, 6, &mut rng));
        for f in [Functor::Dual, Functor::Alt2, Functor::Sym2, Functor::Alt3] {
            let img = |w: &Word| f.apply_matrix(&rep.evaluate(w).unwrap()).unwrap();
            prop_assert_eq!(img(&w1).mul(&img(&w2)).unwrap(), img(&w1.concat(&w2)));
        }
    }

    #[test]
    fn alt2_trace(p in prop::sample::select(vec![3u32, 5, 7, 11]), d in 1usize..6, seed: u64) {
        let md = Modulus::prime(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = invertible(md, d, &mut rng);
        let (t, t2) = (g.trace(), g.mul(&g).unwrap().trace());
        let expect = md.mul(md.sub(md.mul(t, t), t2), md.inv(2).unwrap());
        prop_assert_eq!(Functor::Alt2.apply_matrix(&g).unwrap().trace(), expect);
    }

    #[test]
    fn fixed_points_are_fixed_by_words(p in prime(), which in 0usize..19, seed: u64) {
        let rep = corpus_rep(p, which);
        let fix = fixed_points(&rep).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_word(rep.names().len(), 8, &mut rng);
        let g = rep.evaluate(&w).unwrap();
        for i in 0..fix.rows() {
            prop_assert_eq!(g.apply(&fix.row(i)).unwrap(), fix.row(i));
        }
    }

    #[test]
    fn alt2_plus_sym2(d in 0usize..40) {
        prop_assert_eq!(Functor::Alt2.dim(d) + Functor::Sym2.dim(d), d * d);
    }

    #[test]
    fn d_squared_is_zero(which in 0usize..19, m in prop::sample::select(vec![2u64, 3, 4, 6]), level in 0usize..3, seed: u64) {
        let g = corpus::small_corpus().swap_remove(which).table;
        prop_assume!(g.order() <= 12 || level < 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coeffs = Coefficients::trivial(g.order(), m, 1 + level % 2);
        let c = Cochain::random(g.order(), &coeffs, level, &mut rng);
        let dd = coboundary(&g, &coeffs, &coboundary(&g, &coeffs, &c).unwrap()).unwrap();
        prop_assert!(dd.is_zero());
    }

    #[test]
    fn cup_of_cocycles_is_cocycle(which in 0usize..6, seed: u64) {
        let groups = [table::cyclic(2), table::cyclic(4), table::cyclic(3), table::elementary_abelian(2, 2).unwrap(), table::symmetric(3).unwrap(), table::cyclic(6)];
        let g = &groups[which];
        let m = if g.order().is_multiple_of(3) { 3 } else { 2 };
        let n = Coefficients::trivial(g.order(), m, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let random_cocycle = |level: usize, rng: &mut ChaCha8Rng| {
            let gens = cocycle_generators(g, &n, level).unwrap();
            let len = Cochain::zero(g.order(), &n, level).values().len();
            let mut v = vec![0u64; len];
            for row in &gens {
                let c = rng.gen_range(0..m);
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = (*x + c * y as u64) % m;
                }
            }
            Cochain::from_values(g.order(), &n, level, v).unwrap()
        };
        let a = random_cocycle(1, &mut rng);
        let b = random_cocycle(2, &mut rng);
        let pairing = Pairing::scaled_product(m, m).unwrap();
        let c = cup_pair(g, &a, &n, &b, &n, &pairing).unwrap();
        let target = Coefficients::trivial(g.order(), m, 1);
        prop_assert!(is_cocycle(g, &target, &c).unwrap());
    }

    #[test]
    fn fox_product_rule(p in prime(), which in 0usize..19, seed: u64) {
        let rep = corpus_rep(p, which);
        prop_assume!(rep.dim() <= 12);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rep.names().len();
        let (u, v) = (random_word(n, 5, &mut rng), random_word(n, 5, &mut rng));
        let du = fox_derivatives(&u, &rep).unwrap();
        let dv = fox_derivatives(&v, &rep).unwrap();
        let duv = fox_derivatives(&u.concat(&v), &rep).unwrap();
        let ru = rep.evaluate(&u).unwrap();
        for i in 0..n {
            prop_assert_eq!(&duv[i], &du[i].add(&ru.mul(&dv[i]).unwrap()).unwrap());
        }
    }

    #[test]
    fn principal_crossed_homs_solve_fox(p in prime(), which in 0usize..19, seed: u64) {
        let g = corpus::small_corpus().swap_remove(which);
        let rep = corpus_rep(p, which);
        let md = rep.modulus();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v: Vec<u32> = (0..rep.dim()).map(|_| rng.gen_range(0..md.q())).collect();
        let mut z = Vec::new();
        for img in rep.images() {
            let gv = img.apply(&v).unwrap();
            z.extend(gv.iter().zip(&v).map(|(&a, &b)| md.sub(a, b)));
        }
        let fox = fox_matrix(&g.presentation, &rep).unwrap();
        prop_assert!(fox.apply(&z).unwrap().iter().all(|&x| x == 0));
    }
}

fn small_primes() -> Vec<u64> {
    (3..200).filter(|&p| is_prime(p)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn frobenius_vanishing_criterion(i in 0usize..44, pick: u64) {
        let primes = small_primes();
        let p = primes[i % primes.len()];
        let divisors: Vec<u64> = (1..p).filter(|q| (p - 1).is_multiple_of(*q)).collect();
        let q = divisors[(pick % divisors.len() as u64) as usize];
        let h = unit_subgroup_generator(p, q).unwrap();
        let squares_trivial = (0..q).all(|e| {
            let a = (0..e).fold(1u64, |acc, _| acc * h % p);
            a * a % p == 1
        });
        let part = frobenius_h3_p_part(p, q).unwrap();
        prop_assert_eq!(part.is_trivial(), !squares_trivial);
        prop_assert_eq!(part.is_trivial(), q > 2);
    }

    #[test]
    fn kunneth_symmetric(a in prop::collection::vec(1u64..13, 4), b in prop::collection::vec(1u64..13, 4)) {
        let mk = |v: &[u64]| IntegralCohomology {
            degrees: [0, 1, 2, 3].map(|i| FiniteAbelianGroup::cyclic(v[i])),
        };
        let (x, y) = (mk(&a), mk(&b));
        prop_assert_eq!(kunneth_degree4_z(&x, &y), kunneth_degree4_z(&y, &x));
    }
}

#[test]
fn kunneth_on_products_of_order_at_most_4() {
    let groups = [
        table::cyclic(1),
        table::cyclic(2),
        table::cyclic(3),
        table::cyclic(4),
        table::elementary_abelian(2, 2).unwrap(),
    ];
    let cohom: Vec<IntegralCohomology> = groups
        .iter()
        .map(|g| IntegralCohomology::from_table(g).unwrap())
        .collect();
    for i in 0..groups.len() {
        for j in i..groups.len() {
            let prod = table::direct_product(&groups[i], &groups[j]).unwrap();
            let brute = cohomology_u1_deg3(&prod);
            assert_eq!(
                kunneth_degree4_z(&cohom[i], &cohom[j]),
                brute,
                "{} x {}",
                groups[i].name(),
                groups[j].name()
            );
        }
    }
}

fn cohomology_u1_deg3(g: &cohowork_core::groupkit::GroupTable) -> FiniteAbelianGroup {
    cohowork_core::cochain::cohomology_u1(g, 3).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn tdual_laws(case in 0usize..4, seed: u64) {
        let s3 = table::symmetric(3).unwrap();
        let sign: Vec<u64> = (0..6).map(|x| if s3.element_order(x) == 2 { 2 } else { 1 }).collect();
        let (j, n) = match case {
            0 => (table::cyclic(2), Coefficients::trivial(2, 2, 1)),
            1 => (table::cyclic(2), Coefficients::trivial(2, 4, 1)),
            2 => (table::elementary_abelian(2, 2).unwrap(), Coefficients::trivial(4, 2, 1)),
            _ => (s3.clone(), Coefficients::cyclic_twisted(&s3, 3, &sign).unwrap()),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = tdual::random_datum(&j, &n, &mut rng).unwrap();
        prop_assert_eq!(d.validate().unwrap(), None);
        let dd = d.dualize().unwrap();
        prop_assert_eq!(dd.validate().unwrap(), None);
        prop_assert_eq!(&dd.dualize().unwrap(), &d);
        let size = n.modulus() as usize * j.order();
        prop_assert_eq!(d.total_group().unwrap().order(), size);
        prop_assert_eq!(dd.total_group().unwrap().order(), size);
        let eta = Cochain::random(j.order(), &n, 1, &mut rng);
        let map = tdual::eta_isomorphism(&j, &n, &d.kappa, &eta).unwrap();
        let mut sorted = map.clone();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, (0..size).collect::<Vec<_>>());
    }
}

fn multiplicities() -> impl Strategy<Value = [i64; 7]> {
    prop::array::uniform7(0i64..=20)
}

/// Integer combinations of `V0`, `V1 + V4`, `V2 + V3 + V4`, `V5 + V6`.
fn merged_constant() -> impl Strategy<Value = [i64; 7]> {
    prop::array::uniform4(0i64..=20).prop_map(|[a, b, c, d]| [a, b, c, c, b + c, d, d])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn whitney_multiplicativity(n in multiplicities(), m in multiplicities()) {
        let sum: [i64; 7] = std::array::from_fn(|i| n[i] + m[i]);
        let lhs = chern16::total_chern(&sum).unwrap();
        prop_assert_eq!(lhs, chern16::total_chern(&n).unwrap() * chern16::total_chern(&m).unwrap());
        let inv = chern16::total_chern(&n.map(|x| -x)).unwrap();
        prop_assert_eq!(inv * chern16::total_chern(&n).unwrap(), ChernElement::ONE);
    }

    #[test]
    fn merged_constant_cross_term_vanishes(n in merged_constant(), m in merged_constant()) {
        let product = chern16::total_chern(&n).unwrap() * chern16::total_chern(&m).unwrap();
        prop_assert_eq!(product.eps, 0);
        let chi = MergedClassFunction::of_multiplicities(&n).unwrap();
        let psi = MergedClassFunction::of_multiplicities(&m).unwrap();
        let both = MergedClassFunction::new(std::array::from_fn(|i| chi.values[i] + psi.values[i]));
        let total = chern16::c2_restricted(&both).unwrap();
        let parts = (chern16::c2_restricted(&chi).unwrap() + chern16::c2_restricted(&psi).unwrap()) % 16;
        prop_assert_eq!(total, parts);
    }

    #[test]
    fn decompose_round_trip(n in merged_constant()) {
        let chi = MergedClassFunction::of_multiplicities(&n).unwrap();
        prop_assert_eq!(chern16::decompose_merged(&chi).unwrap(), n);
    }
}

#[test]
fn sym_power_merged_constancy() {
    let t = chern16::char_table_q16().unwrap();
    for k in 0..=chern16::MAX_SYM_POWER {
        let s = chern16::sym_power_defining(k).unwrap();
        // order-8 traces are rational exactly when k is even or k = 3 mod 4
        let rational = k % 2 == 0 || k % 4 == 3;
        assert_eq!(t.merged(&s.character).is_some(), rational, "k = {k}");
    }
    assert!(t.merged(&chern16::sym_power_defining(3).unwrap().character).is_some());
    assert!(t.merged(&chern16::sym_power_defining(1).unwrap().character).is_none());
}

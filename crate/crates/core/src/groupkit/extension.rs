use super::table::{GroupTable, MAX_ORDER};
use crate::cochain::{cocycle_violation, Cochain, Coefficients};
use crate::error::{Error, Result};

/// The extension `n -> E -> J` defined by a 2-cocycle `kappa`.
///
/// Element `(a, x)` has index `x |n| + enc(a)`, with product
/// `(a, x)(b, y) = (a + x.b + kappa(x, y), x y)`.
pub fn extension_from_cocycle(j: &GroupTable, n: &Coefficients, kappa: &Cochain) -> Result<GroupTable> {
    if kappa.level() != 2 {
        return Err(Error::Invalid(format!(
            "expected a 2-cochain, got level {}",
            kappa.level()
        )));
    }
    if let Some(tuple) = cocycle_violation(j, n, kappa)? {
        return Err(Error::NotCocycle { tuple });
    }
    let size = n
        .size()
        .filter(|&s| s as usize * j.order() <= MAX_ORDER)
        .ok_or_else(|| Error::TooLarge(format!("extension of order |n| x {} exceeds {MAX_ORDER}", j.order())))?
        as usize;
    let order = size * j.order();
    let elems: Vec<Vec<u64>> = (0..size).map(|i| n.decode(i)).collect();
    let mut table = vec![vec![0usize; order]; order];
    for x in 0..j.order() {
        for y in 0..j.order() {
            let k = kappa.get(&[x, y]);
            let xy = j.mul(x, y);
            for (ia, a) in elems.iter().enumerate() {
                let ak = n.add(a, &k);
                let row = &mut table[x * size + ia];
                for (ib, b) in elems.iter().enumerate() {
                    let v = n.add(&ak, &n.act(x, b));
                    row[y * size + ib] = xy * size + n.encode(&v);
                }
            }
        }
    }
    GroupTable::from_table(format!("{} . {}", size, j.name()), table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupkit::table;

    #[test]
    fn z4_from_z2() {
        let j = table::cyclic(2);
        let n = Coefficients::trivial(2, 2, 1);
        let k = Cochain::from_fn(2, &n, 2, |_| vec![1]);
        let e = extension_from_cocycle(&j, &n, &k).unwrap();
        assert!(e.is_abelian());
        assert_eq!(e.exponent(), 4);
        let split = extension_from_cocycle(&j, &n, &Cochain::zero(2, &n, 2)).unwrap();
        assert_eq!(split.exponent(), 2);
    }

    fn bit(x: usize, i: usize) -> u64 {
        ((x >> i) & 1) as u64
    }

    #[test]
    fn quaternion_and_dihedral() {
        let j = table::elementary_abelian(2, 2).unwrap();
        let n = Coefficients::trivial(4, 2, 1);
        // x1^2 + x1 y1... standard cocycles as bilinear forms on F2^2
        let q8 = Cochain::from_fn(4, &n, 2, |t| {
            let (x, y) = (t[0], t[1]);
            vec![(bit(x, 0) * bit(y, 0) + bit(x, 1) * bit(y, 1) + bit(x, 0) * bit(y, 1)) % 2]
        });
        let d8 = Cochain::from_fn(4, &n, 2, |t| vec![bit(t[0], 0) * bit(t[1], 1)]);
        let count4 = |e: &GroupTable| e.element_orders().iter().filter(|&&o| o == 4).count();
        let eq = extension_from_cocycle(&j, &n, &q8).unwrap();
        assert_eq!(count4(&eq), 6);
        assert!(!eq.is_abelian());
        let ed = extension_from_cocycle(&j, &n, &d8).unwrap();
        assert_eq!(count4(&ed), 2);
    }

    #[test]
    fn rejects_non_cocycle() {
        let j = table::cyclic(3);
        let n = Coefficients::trivial(3, 3, 1);
        let mut k = Cochain::zero(3, &n, 2);
        k.set(&[1, 1], &[1]).unwrap();
        assert!(matches!(
            extension_from_cocycle(&j, &n, &k),
            Err(Error::NotCocycle { .. })
        ));
    }

    #[test]
    fn quotient_recovers_base() {
        let j = table::cyclic(3);
        let n = Coefficients::trivial(3, 3, 1);
        let k = Cochain::from_fn(3, &n, 2, |t| vec![u64::from(t[0] + t[1] >= 3)]);
        let e = extension_from_cocycle(&j, &n, &k).unwrap();
        assert_eq!(e.order(), 9);
        assert_eq!(e.exponent(), 9);
        for a in 0..9 {
            for b in 0..9 {
                assert_eq!(e.mul(a, b) / 3, j.mul(a / 3, b / 3));
            }
        }
    }
}

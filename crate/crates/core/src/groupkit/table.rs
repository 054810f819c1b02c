use std::collections::{HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactlin::gcd;

pub const MAX_ORDER: usize = 4096;

/// A finite group as a multiplication table. Element 0 is always the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    name: String,
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    orders: Vec<usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl GroupTable {
    /// Validates a law given as `table[a][b] = ab` and relabels so that the
    /// identity becomes element 0 (other elements keep their relative order).
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || n > MAX_ORDER {
            return Err(Error::TooLarge(format!("group order {n} outside 1..={MAX_ORDER}")));
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::Invalid("multiplication table is not closed".into()));
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::Invalid("no identity element".into()))?;
        let mut perm: Vec<usize> = Vec::with_capacity(n);
        perm.push(e);
        perm.extend((0..n).filter(|&g| g != e));
        let mut pos = vec![0; n];
        for (i, &g) in perm.iter().enumerate() {
            pos[g] = i;
        }
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = pos[table[perm[a]][perm[b]]] as u32;
            }
        }
        Self::from_relabeled(name.into(), n, mul)
    }

    fn from_relabeled(name: String, n: usize, mul: Vec<u32>) -> Result<Self> {
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            let row = &mul[a * n..(a + 1) * n];
            if let Some(b) = row.iter().position(|&x| x == 0) {
                inv[a] = b as u32;
            }
            let mut seen = vec![false; n];
            for &x in row {
                if std::mem::replace(&mut seen[x as usize], true) {
                    return Err(Error::Invalid(format!("row {a} of the table is not a permutation")));
                }
            }
        }
        let mut g = GroupTable {
            name,
            n,
            mul,
            inv,
            orders: Vec::new(),
            classes: Vec::new(),
            class_of: Vec::new(),
        };
        g.check_associative()?;
        for a in 0..n {
            if g.mul(a, g.inv(a)) != 0 || g.mul(g.inv(a), a) != 0 {
                return Err(Error::Invalid(format!("element {a} has no two-sided inverse")));
            }
        }
        g.orders = (0..n).map(|a| g.order_of_uncached(a)).collect();
        g.compute_classes();
        Ok(g)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.n;
        let bad = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c));
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if bad(a, b, c) {
                            return Err(Error::Invalid(format!("not associative at ({a}, {b}, {c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            for _ in 0..100_000 {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if bad(a, b, c) {
                    return Err(Error::Invalid(format!("not associative at ({a}, {b}, {c})")));
                }
            }
        }
        Ok(())
    }

    fn order_of_uncached(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    fn compute_classes(&mut self) {
        let n = self.n;
        let mut class_id = vec![usize::MAX; n];
        let mut raw: Vec<Vec<usize>> = Vec::new();
        for a in 0..n {
            if class_id[a] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = (0..n).map(|g| self.conj(g, a)).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_id[m] = raw.len();
            }
            raw.push(members);
        }
        raw.sort_by_key(|c| (self.orders[c[0]], c.len(), c[0]));
        self.class_of = vec![0; n];
        for (i, c) in raw.iter().enumerate() {
            for &m in c {
                self.class_of[m] = i;
            }
        }
        self.classes = raw;
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
    pub fn order(&self) -> usize {
        self.n
    }
    pub fn identity(&self) -> usize {
        0
    }
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }
    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }
    /// `g a g^-1`
    pub fn conj(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }
    pub fn element_order(&self, a: usize) -> usize {
        self.orders[a]
    }
    pub fn element_orders(&self) -> &[usize] {
        &self.orders
    }
    /// Conjugacy classes ordered by element order, then size, then least member.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }
    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }
    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn exponent(&self) -> usize {
        self.orders
            .iter()
            .fold(1, |acc, &o| acc / gcd(acc as u64, o as u64) as usize * o)
    }

    pub fn pow(&self, a: usize, m: i64) -> usize {
        let o = self.orders[a] as i64;
        let e = m.rem_euclid(o);
        let mut x = 0;
        for _ in 0..e {
            x = self.mul(x, a);
        }
        x
    }

    /// `g -> g^m` on every element.
    pub fn power_map(&self, m: i64) -> Vec<usize> {
        (0..self.n).map(|a| self.pow(a, m)).collect()
    }

    /// Power maps on classes for every `m` dividing the exponent.
    pub fn class_power_maps(&self) -> Vec<(usize, Vec<usize>)> {
        let e = self.exponent();
        (1..=e)
            .filter(|m| e.is_multiple_of(*m))
            .map(|m| {
                let map = self
                    .classes
                    .iter()
                    .map(|c| self.class_of(self.pow(c[0], m as i64)))
                    .collect();
                (m, map)
            })
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Number of elements of each order, sorted by order.
    pub fn order_statistics(&self) -> Vec<(usize, usize)> {
        let mut m: HashMap<usize, usize> = HashMap::new();
        for &o in &self.orders {
            *m.entry(o).or_default() += 1;
        }
        let mut v: Vec<_> = m.into_iter().collect();
        v.sort_unstable();
        v
    }

    /// The subgroup generated by `gens`, as a sorted element list.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        let mut out = vec![0];
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Evaluates a word on chosen group elements.
    pub fn evaluate(&self, w: &crate::groupkit::Word, images: &[usize]) -> usize {
        w.letters().iter().fold(0, |acc, l| {
            let g = images[l.generator];
            self.mul(acc, if l.exponent > 0 { g } else { self.inv(g) })
        })
    }

    /// Invariant fingerprint: order statistics and sorted class sizes.
    pub fn fingerprint(&self) -> (Vec<(usize, usize)>, Vec<usize>) {
        let mut sizes = self.class_sizes();
        sizes.sort_unstable();
        (self.order_statistics(), sizes)
    }
}

/// Closure of a set of elements under an associative product, as a table.
pub fn close_under<T, F>(name: &str, identity: T, gens: &[T], product: F) -> Result<(GroupTable, Vec<T>)>
where
    T: Clone + Eq + std::hash::Hash,
    F: Fn(&T, &T) -> T,
{
    let mut elems = vec![identity.clone()];
    let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let y = product(&elems[i], g);
            if !index.contains_key(&y) {
                if elems.len() == MAX_ORDER {
                    return Err(Error::TooLarge(format!("closure exceeds {MAX_ORDER} elements")));
                }
                index.insert(y.clone(), elems.len());
                elems.push(y);
            }
        }
        i += 1;
    }
    let n = elems.len();
    let table: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|b| index[&product(&elems[a], &elems[b])]).collect())
        .collect();
    Ok((GroupTable::from_table(name, table)?, elems))
}

pub fn cyclic(n: usize) -> GroupTable {
    let t = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    GroupTable::from_table(format!("Z{n}"), t).expect("cyclic law")
}

/// Dihedral group of the given order `2n`; element `r^a s^b` is `a + n b`.
pub fn dihedral(order: usize) -> Result<GroupTable> {
    if order < 2 || !order.is_multiple_of(2) {
        return Err(Error::Invalid(format!("dihedral order {order} must be even")));
    }
    let n = order / 2;
    let t = (0..order)
        .map(|x| {
            (0..order)
                .map(|y| {
                    let (a, b, c, d) = (x % n, x / n, y % n, y / n);
                    let e = if b == 0 { (a + c) % n } else { (a + n - c) % n };
                    e + n * ((b + d) % 2)
                })
                .collect()
        })
        .collect();
    GroupTable::from_table(format!("D{order}"), t)
}

/// Dicyclic group of order `4n`: `x^a y^b` with `y^2 = x^n`, `y x y^-1 = x^-1`.
/// Element `x^a y^b` is `a + 2n b`.
pub fn dicyclic(order: usize) -> Result<GroupTable> {
    if order < 4 || !order.is_multiple_of(4) {
        return Err(Error::Invalid(format!(
            "dicyclic order {order} must be a multiple of 4"
        )));
    }
    let n = order / 4;
    let m = 2 * n;
    let t = (0..order)
        .map(|u| {
            (0..order)
                .map(|v| {
                    let (a, b, c, d) = (u % m, u / m, v % m, v / m);
                    // x^a y^b x^c y^d = x^{a ± c} y^{b + d}
                    let mut e = if b == 0 { (a + c) % m } else { (a + m - c) % m };
                    let mut f = b + d;
                    if f == 2 {
                        e = (e + n) % m;
                        f = 0;
                    }
                    e + m * f
                })
                .collect()
        })
        .collect();
    GroupTable::from_table(format!("Dic{order}"), t)
}

pub fn elementary_abelian(p: usize, d: u32) -> Result<GroupTable> {
    let n = p
        .checked_pow(d)
        .filter(|&n| n <= MAX_ORDER)
        .ok_or_else(|| Error::TooLarge(format!("{p}^{d}")))?;
    let add = |mut a: usize, mut b: usize| {
        let (mut out, mut place) = (0, 1);
        for _ in 0..d {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    };
    let t = (0..n).map(|a| (0..n).map(|b| add(a, b)).collect()).collect();
    let name = if d == 1 { format!("Z{p}") } else { format!("Z{p}^{d}") };
    GroupTable::from_table(name, t)
}

/// `A x B`; the pair `(a, b)` is element `a * |B| + b`.
pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Result<GroupTable> {
    let (na, nb) = (a.order(), b.order());
    if na * nb > MAX_ORDER {
        return Err(Error::TooLarge(format!("order {}", na * nb)));
    }
    let t = (0..na * nb)
        .map(|x| {
            (0..na * nb)
                .map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
                .collect()
        })
        .collect();
    GroupTable::from_table(format!("{} x {}", a.name(), b.name()), t)
}

/// Permutation group generated by images lists `g[i]` (acting `i -> g[i]`),
/// composed so that `(gh)(i) = g(h(i))`.
pub fn from_permutations(name: &str, gens: &[Vec<usize>]) -> Result<(GroupTable, Vec<Vec<usize>>)> {
    let deg = gens.first().map_or(0, Vec::len);
    for g in gens {
        let mut s = g.clone();
        s.sort_unstable();
        if s != (0..deg).collect::<Vec<_>>() {
            return Err(Error::Invalid(format!("{g:?} is not a permutation of 0..{deg}")));
        }
    }
    let id: Vec<usize> = (0..deg).collect();
    close_under(name, id, gens, |g, h| h.iter().map(|&i| g[i]).collect())
}

pub fn symmetric(n: usize) -> Result<GroupTable> {
    let mut gens = Vec::new();
    if n >= 2 {
        let mut t: Vec<usize> = (0..n).collect();
        t.swap(0, 1);
        gens.push(t);
        gens.push((0..n).map(|i| (i + 1) % n).collect());
    }
    Ok(from_permutations(&format!("S{n}"), &gens)?.0)
}

pub fn alternating(n: usize) -> Result<GroupTable> {
    let gens: Vec<Vec<usize>> = (2..n)
        .map(|k| {
            let mut g: Vec<usize> = (0..n).collect();
            // 3-cycle (0 1 k)
            g[0] = 1;
            g[1] = k;
            g[k] = 0;
            g
        })
        .collect();
    Ok(from_permutations(&format!("A{n}"), &gens)?.0)
}

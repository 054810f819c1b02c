//! Characters and Chern classes of the binary dihedral group `Q16 = 2D8`.
//!
//! Irreducibles `V0..V6` follow the affine `D6` McKay graph: `V6` is the
//! defining 2-dimensional representation, `V6 (x) V6 = V0 + V1 + V4`.
//! `c2` values live in `H^4(Q16, Z) = Z/16` with `c2(V6) = 1`; `c1` values in
//! `H^2 = F2^2` with basis `u = c1(V2)`, `v = c1(V3)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;

use crate::error::{parse_err, Error, Result};
use crate::groupkit::{table, GroupTable};

/// `a + b sqrt(2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Zsqrt2 {
    pub a: i64,
    pub b: i64,
}

impl Zsqrt2 {
    pub const ZERO: Zsqrt2 = Zsqrt2 { a: 0, b: 0 };

    pub fn int(a: i64) -> Self {
        Zsqrt2 { a, b: 0 }
    }

    pub fn as_int(self) -> Option<i64> {
        (self.b == 0).then_some(self.a)
    }
}

impl Add for Zsqrt2 {
    type Output = Zsqrt2;
    fn add(self, o: Zsqrt2) -> Zsqrt2 {
        Zsqrt2 {
            a: self.a + o.a,
            b: self.b + o.b,
        }
    }
}

impl Sub for Zsqrt2 {
    type Output = Zsqrt2;
    fn sub(self, o: Zsqrt2) -> Zsqrt2 {
        self + (-o)
    }
}

impl Neg for Zsqrt2 {
    type Output = Zsqrt2;
    fn neg(self) -> Zsqrt2 {
        Zsqrt2 { a: -self.a, b: -self.b }
    }
}

impl Mul for Zsqrt2 {
    type Output = Zsqrt2;
    fn mul(self, o: Zsqrt2) -> Zsqrt2 {
        Zsqrt2 {
            a: self.a * o.a + 2 * self.b * o.b,
            b: self.a * o.b + self.b * o.a,
        }
    }
}

impl fmt::Display for Zsqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "r2"),
            (0, -1) => write!(f, "-r2"),
            (0, b) => write!(f, "{b}r2"),
            (a, b) if b < 0 => write!(f, "{a}{b}r2"),
            (a, b) => write!(f, "{a}+{b}r2"),
        }
    }
}

/// Element of `Z[zeta8]` on the basis `1, z, z^2, z^3` with `z^4 = -1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
struct Cyclo8([i64; 4]);

impl Cyclo8 {
    fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut c = [0; 4];
        c[k % 4] = if k < 4 { 1 } else { -1 };
        Cyclo8(c)
    }

    fn add(self, o: Cyclo8) -> Cyclo8 {
        let mut c = self.0;
        for (x, y) in c.iter_mut().zip(o.0) {
            *x += y;
        }
        Cyclo8(c)
    }

    /// Real elements are `c0 + c1 (z - z^3) = c0 + c1 sqrt(2)`.
    fn to_real(self) -> Result<Zsqrt2> {
        let [c0, c1, c2, c3] = self.0;
        if c2 != 0 || c3 != -c1 {
            return Err(Error::Inconsistent(format!("{:?} is not real", self.0)));
        }
        Ok(Zsqrt2 { a: c0, b: c1 })
    }
}

/// Merged class labels, in the order used by [`MergedClassFunction`].
pub const MERGED_LABELS: [&str; 4] = ["1A", "2B", "4D", "8F"];
/// Element orders of the merged classes.
pub const MERGED_ORDERS: [u64; 4] = [1, 2, 4, 8];

/// Indices into the 7 classes making up each merged class.
const MERGE: [&[usize]; 4] = [&[0], &[1], &[2, 3, 4], &[5, 6]];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub label: &'static str,
    pub representative: usize,
    pub size: usize,
    pub order: usize,
}

/// Class order: `1, x^4, x^2, [y], [xy], [x], [x^3]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub group: GroupTable,
    pub classes: Vec<ClassInfo>,
    /// `rows[i][c] = chi_{V_i}(class c)`.
    pub rows: [[Zsqrt2; 7]; 7],
}

/// `x^a y^b` in the dicyclic table.
fn dicyclic_element(g: &GroupTable, a: usize, b: usize) -> usize {
    g.mul(g.pow(1, a as i64), g.pow(8, b as i64))
}

impl CharacterTable {
    pub fn dims(&self) -> [i64; 7] {
        self.rows.map(|r| r[0].a)
    }

    /// `sum_c |c| chi(c) psi(c) / |G|` for real characters.
    pub fn inner(&self, chi: &[Zsqrt2; 7], psi: &[Zsqrt2; 7]) -> Result<i64> {
        let s = (0..7).fold(Zsqrt2::ZERO, |acc, c| {
            acc + Zsqrt2::int(self.classes[c].size as i64) * chi[c] * psi[c]
        });
        match s.as_int() {
            Some(v) if v % 16 == 0 => Ok(v / 16),
            _ => Err(Error::NonIntegral(format!("inner product {s}/16"))),
        }
    }

    /// Multiplicities of `V0..V6` in a class function.
    pub fn decompose(&self, chi: &[Zsqrt2; 7]) -> Result<[i64; 7]> {
        let mut out = [0; 7];
        for (i, row) in self.rows.iter().enumerate() {
            out[i] = self.inner(chi, row)?;
        }
        Ok(out)
    }

    /// Projection onto the merged classes, if constant on each.
    pub fn merged(&self, chi: &[Zsqrt2; 7]) -> Option<MergedClassFunction> {
        let mut v = [0; 4];
        for (r, cls) in MERGE.iter().enumerate() {
            let first = chi[cls[0]];
            if cls.iter().any(|&c| chi[c] != first) {
                return None;
            }
            v[r] = first.as_int()?;
        }
        Some(MergedClassFunction { values: v })
    }
}

/// The character table of `Q16`, computed from its multiplication table.
pub fn char_table_q16() -> Result<CharacterTable> {
    let g = table::dicyclic(16)?.with_name("Q16");
    let (x, y) = (1usize, 8usize);
    if g.element_order(x) != 8 || g.mul(y, y) != g.pow(x, 4) || g.conj(y, x) != g.inv(x) {
        return Err(Error::Inconsistent("unexpected dicyclic indexing".into()));
    }
    let reps = [
        ("1", 0usize, 0usize),
        ("x^4", 4, 0),
        ("x^2", 2, 0),
        ("y", 0, 1),
        ("xy", 1, 1),
        ("x", 1, 0),
        ("x^3", 3, 0),
    ];
    let classes: Vec<ClassInfo> = reps
        .iter()
        .map(|&(label, a, b)| {
            let e = dicyclic_element(&g, a, b);
            ClassInfo {
                label,
                representative: e,
                size: g.classes()[g.class_of(e)].len(),
                order: g.element_order(e),
            }
        })
        .collect();
    let distinct: std::collections::BTreeSet<usize> = classes.iter().map(|c| g.class_of(c.representative)).collect();
    if distinct.len() != 7 {
        return Err(Error::Inconsistent("class representatives are not distinct".into()));
    }
    let mut rows = [[Zsqrt2::ZERO; 7]; 7];
    for (c, &(_, a, b)) in reps.iter().enumerate() {
        let sign = |s: i64, t: i64| Zsqrt2::int(s.pow(a as u32) * t.pow(b as u32));
        // one-dimensional: x -> s, y -> t
        rows[0][c] = sign(1, 1);
        rows[1][c] = sign(1, -1);
        rows[2][c] = sign(-1, 1);
        rows[3][c] = sign(-1, -1);
        // two-dimensional: x -> diag(z^j, z^-j), y antidiagonal (trace 0)
        for (i, j) in [(4usize, 2i64), (5, 3), (6, 1)] {
            rows[i][c] = if b == 1 {
                Zsqrt2::ZERO
            } else {
                Cyclo8::zeta_pow(j * a as i64)
                    .add(Cyclo8::zeta_pow(-j * a as i64))
                    .to_real()?
            };
        }
    }
    Ok(CharacterTable {
        group: g,
        classes,
        rows,
    })
}

/// The `4 x 7` matrix `M[r][i] = sum_{c in r} |c| chi_i(c) / 16`.
pub fn merged_decomposition_matrix() -> Result<[[Ratio<i64>; 7]; 4]> {
    let t = char_table_q16()?;
    let mut m = [[Ratio::from_integer(0); 7]; 4];
    for (r, cls) in MERGE.iter().enumerate() {
        for i in 0..7 {
            let s = cls.iter().fold(Zsqrt2::ZERO, |acc, &c| {
                acc + Zsqrt2::int(t.classes[c].size as i64) * t.rows[i][c]
            });
            let s = s
                .as_int()
                .ok_or_else(|| Error::Inconsistent(format!("irrational merged entry for V{i}")))?;
            m[r][i] = Ratio::new(s, 16);
        }
    }
    Ok(m)
}

/// Traces at `(1, 2B, 4D, 8F)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MergedClassFunction {
    pub values: [i64; 4],
}

impl MergedClassFunction {
    pub fn new(values: [i64; 4]) -> Self {
        MergedClassFunction { values }
    }

    /// The merged character of `sum n_i V_i`, if it is merged-constant.
    pub fn of_multiplicities(n: &[i64; 7]) -> Result<Self> {
        let t = char_table_q16()?;
        let mut chi = [Zsqrt2::ZERO; 7];
        for (i, row) in t.rows.iter().enumerate() {
            for c in 0..7 {
                chi[c] = chi[c] + Zsqrt2::int(n[i]) * row[c];
            }
        }
        t.merged(&chi)
            .ok_or_else(|| Error::Invalid(format!("{n:?} is not constant on the merged classes")))
    }

    /// `class,order,value` rows for `1A, 2B, 4D, 8F`, with header.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["class", "order", "value"]).expect("in-memory write");
        for ((label, order), v) in MERGED_LABELS.iter().zip(MERGED_ORDERS).zip(self.values) {
            w.write_record([label.to_string(), order.to_string(), v.to_string()])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii")
    }

    /// Parses the CSV form; rows may come in any order but each class must
    /// appear exactly once with its element order.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rd = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .flexible(true)
            .from_reader(text.as_bytes());
        let mut values: [Option<i64>; 4] = [None; 4];
        for rec in rd.records() {
            let rec = rec.map_err(|e| {
                let line = e.position().map_or(0, |p| p.line() as usize);
                parse_err(line, e.to_string())
            })?;
            let line = rec.position().map_or(0, |p| p.line() as usize);
            if rec.len() != 3 {
                return Err(parse_err(line, "expected `class,order,value`"));
            }
            if &rec[0] == "class" {
                continue;
            }
            let idx = MERGED_LABELS
                .iter()
                .position(|l| *l == &rec[0])
                .ok_or_else(|| parse_err(line, format!("unknown class `{}`", &rec[0])))?;
            if rec[1].parse::<u64>().ok() != Some(MERGED_ORDERS[idx]) {
                return Err(parse_err(
                    line,
                    format!("class {} has order {}", MERGED_LABELS[idx], MERGED_ORDERS[idx]),
                ));
            }
            let v: i64 = rec[2]
                .parse()
                .map_err(|_| parse_err(line, format!("value `{}` is not an integer", &rec[2])))?;
            if values[idx].replace(v).is_some() {
                return Err(parse_err(line, format!("class {} listed twice", MERGED_LABELS[idx])));
            }
        }
        let mut out = [0; 4];
        for (i, v) in values.iter().enumerate() {
            out[i] = v.ok_or_else(|| parse_err(0, format!("class {} missing", MERGED_LABELS[i])))?;
        }
        Ok(MergedClassFunction { values: out })
    }
}

impl fmt::Display for MergedClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.values;
        write!(f, "({a}, {b}, {c}, {d})")
    }
}

/// `chi . M`; non-integral results are reported, not rounded.
pub fn decompose_merged(chi: &MergedClassFunction) -> Result<[i64; 7]> {
    let m = merged_decomposition_matrix()?;
    let mut out = [0; 7];
    for (i, o) in out.iter_mut().enumerate() {
        let s = (0..4).fold(Ratio::from_integer(0), |acc, r| acc + m[r][i] * chi.values[r]);
        if !s.is_integer() {
            return Err(Error::NonIntegral(format!("multiplicity of V{i} in {chi} is {s}")));
        }
        *o = s.to_integer();
    }
    Ok(out)
}

/// Characters of `Sym^k V6` on all classes, its decomposition, and
/// `c2 = sum w^2 / 2` over the `SU(2)` weights `k, k-2, .., -k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPower {
    pub k: u32,
    pub character: [Zsqrt2; 7],
    pub multiplicities: [i64; 7],
    /// Unreduced integer value; reduce mod 16 for `H^4`.
    pub c2: i64,
}

pub const MAX_SYM_POWER: u32 = 8;

pub fn sym_power_defining(k: u32) -> Result<SymPower> {
    if k > MAX_SYM_POWER {
        return Err(Error::TooLarge(format!("Sym^{k} (limit {MAX_SYM_POWER})")));
    }
    let t = char_table_q16()?;
    // V6 eigenvalue exponents of zeta8 per class
    let eig: [(i64, i64); 7] = [(0, 0), (4, 4), (2, -2), (2, -2), (2, -2), (1, -1), (3, -3)];
    let mut character = [Zsqrt2::ZERO; 7];
    for (c, &(e1, e2)) in eig.iter().enumerate() {
        let h = (0..=k as i64).fold(Cyclo8::default(), |acc, a| {
            acc.add(Cyclo8::zeta_pow(a * e1 + (k as i64 - a) * e2))
        });
        character[c] = h.to_real()?;
    }
    if k == 1 && character != t.rows[6] {
        return Err(Error::Inconsistent("defining character mismatch".into()));
    }
    let multiplicities = t.decompose(&character)?;
    let c2 = (0..=k as i64).map(|a| (k as i64 - 2 * a).pow(2)).sum::<i64>() / 2;
    Ok(SymPower {
        k,
        character,
        multiplicities,
        c2,
    })
}

/// Total Chern class truncated above degree 4:
/// `1 + (alpha u + beta v) + (value + eps a)` with `a = u^2 = v^2`, `uv = 0`, `2a = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct ChernElement {
    /// Coefficients of `u` and `v` in `F2`.
    pub c1: [u8; 2],
    /// Degree-4 part in `Z/16`, in units of `c2(V6)`.
    pub c2: u8,
    /// Coefficient of the undetermined `a = c1(V2)^2`.
    pub eps: u8,
}

impl ChernElement {
    pub const ONE: ChernElement = ChernElement {
        c1: [0, 0],
        c2: 0,
        eps: 0,
    };

    pub fn new(c1: [u8; 2], c2: i64, eps: u8) -> Self {
        ChernElement {
            c1: [c1[0] & 1, c1[1] & 1],
            c2: c2.rem_euclid(16) as u8,
            eps: eps & 1,
        }
    }

    /// `(alpha u + beta v)(alpha' u + beta' v) = (alpha alpha' + beta beta') a`.
    fn c1_product(x: [u8; 2], y: [u8; 2]) -> u8 {
        (x[0] & y[0]) ^ (x[1] & y[1])
    }

    /// `c^n`, including negative `n` (virtual representations).
    pub fn pow(self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self };
        let n = n.unsigned_abs();
        // (1 + x + y)^n = 1 + n x + (n y + C(n, 2) x^2)
        let odd = (n & 1) as u8;
        // C(n, 2) is odd iff n = 2, 3 mod 4
        let pairs_odd = u8::from(n % 4 >= 2);
        let sq = Self::c1_product(base.c1, base.c1);
        ChernElement {
            c1: [base.c1[0] & odd, base.c1[1] & odd],
            c2: ((base.c2 as u64 * (n % 16)) % 16) as u8,
            eps: ((base.eps & odd) ^ (sq & pairs_odd)) & 1,
        }
    }

    /// `(1 + x + y)^-1 = 1 - x + (x^2 - y)`.
    pub fn inverse(self) -> Self {
        let sq = Self::c1_product(self.c1, self.c1);
        ChernElement {
            c1: self.c1,
            c2: ((16 - self.c2 as u16) % 16) as u8,
            eps: self.eps ^ sq,
        }
    }
}

impl Mul for ChernElement {
    type Output = ChernElement;
    fn mul(self, o: ChernElement) -> ChernElement {
        ChernElement {
            c1: [self.c1[0] ^ o.c1[0], self.c1[1] ^ o.c1[1]],
            c2: (self.c2 + o.c2) % 16,
            eps: self.eps ^ o.eps ^ Self::c1_product(self.c1, o.c1),
        }
    }
}

impl fmt::Display for ChernElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec!["1".to_string()];
        match self.c1 {
            [1, 1] => parts.push("(u+v)".into()),
            [1, 0] => parts.push("u".into()),
            [0, 1] => parts.push("v".into()),
            _ => {}
        }
        if self.c2 != 0 {
            parts.push(self.c2.to_string());
        }
        if self.eps != 0 {
            parts.push("a".into());
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Results of the derivation chain for the Chern classes of `V0..V6`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernConstants {
    /// `c(V_i)` for `i = 0..6`.
    pub total: [ChernElement; 7],
    pub c2_v4: u8,
    pub c2_v5: u8,
    pub c2_v2_plus_v3: u8,
    /// Human-readable steps in the order they were executed.
    pub steps: Vec<String>,
}

fn fail(msg: String) -> Error {
    Error::Inconsistent(format!("Chern chain: {msg}"))
}

/// `c1` of each irreducible from its determinant character
/// `det(g) = (chi(g)^2 - chi(g^2)) / 2` (or `chi` itself in dimension one).
fn first_chern_classes(t: &CharacterTable) -> Result<[[u8; 2]; 7]> {
    let g = &t.group;
    let one_dim_c1 = [[0u8, 0u8], [1, 1], [1, 0], [0, 1]];
    // V1 = V2 (x) V3 makes c1(V1) = u + v
    for c in 0..7 {
        if t.rows[1][c] != t.rows[2][c] * t.rows[3][c] {
            return Err(fail("V1 != V2 (x) V3".into()));
        }
    }
    let class_of_square: Vec<usize> = t
        .classes
        .iter()
        .map(|cl| {
            let sq = g.class_of(g.mul(cl.representative, cl.representative));
            t.classes
                .iter()
                .position(|d| g.class_of(d.representative) == sq)
                .expect("closed")
        })
        .collect();
    let mut out = [[0u8; 2]; 7];
    for i in 0..7 {
        let det: Vec<Zsqrt2> = (0..7)
            .map(|c| {
                if t.rows[i][0].a == 1 {
                    t.rows[i][c]
                } else {
                    let s = t.rows[i][c] * t.rows[i][c] - t.rows[i][class_of_square[c]];
                    Zsqrt2 { a: s.a / 2, b: s.b / 2 }
                }
            })
            .collect();
        let j = (0..4)
            .find(|&j| t.rows[j].as_slice() == det.as_slice())
            .ok_or_else(|| fail(format!("determinant of V{i} is not a linear character")))?;
        out[i] = one_dim_c1[j];
    }
    Ok(out)
}

/// Executes the chain: `c1` from determinants, then `c2(V4)` from
/// `Sym^2 V6`, `c2(V5)` from `Sym^3 V6`, `c2(V2 + V3)` from `Sym^4 V6`,
/// using `c1(V1)^2 = 0` as the only extra input.
pub fn chern_constants() -> Result<ChernConstants> {
    let t = char_table_q16()?;
    let c1 = first_chern_classes(&t)?;
    let mut steps = Vec::new();
    for (i, x) in c1.iter().enumerate() {
        let text = match x {
            [0, 0] => "0",
            [1, 0] => "u",
            [0, 1] => "v",
            _ => "u + v",
        };
        steps.push(format!("c1(V{i}) = {text}"));
    }
    if ChernElement::c1_product(c1[1], c1[1]) != 0 {
        return Err(fail("c1(V1)^2 must vanish".into()));
    }
    steps.push("axiom: c1(V1)^2 = 0".into());
    let mut total: [Option<ChernElement>; 7] = [None; 7];
    for i in 0..4 {
        total[i] = Some(ChernElement::new(c1[i], 0, 0));
    }
    total[6] = Some(ChernElement::new(c1[6], 1, 0));
    // c(V_target) = c(Sym^k) / prod of the already known summands
    let mut solve = |k: u32, target: usize| -> Result<ChernElement> {
        let s = sym_power_defining(k)?;
        let mut known = ChernElement::ONE;
        for (i, &n) in s.multiplicities.iter().enumerate() {
            if i == target {
                if n != 1 {
                    return Err(fail(format!("V{target} occurs {n} times in Sym^{k}")));
                }
                continue;
            }
            if n != 0 {
                let c = total[i].ok_or_else(|| fail(format!("c(V{i}) needed before it is known")))?;
                known = known * c.pow(n);
            }
        }
        let whole = ChernElement::new([0, 0], s.c2, 0);
        let c = whole * known.inverse();
        if c.c1 != c1[target] {
            return Err(fail(format!("degree-2 Whitney mismatch for V{target}")));
        }
        total[target] = Some(c);
        Ok(c)
    };
    let v4 = solve(2, 4)?;
    if v4.eps != 0 {
        return Err(fail("c2(V4) depends on a".into()));
    }
    steps.push(format!("Sym^2 V6 = V1 + V4, c2 = 4: c2(V4) = {}", v4.c2));
    let v5 = solve(3, 5)?;
    steps.push(format!("Sym^3 V6 = V5 + V6, c2 = 10: c2(V5) = {}", v5.c2));
    let s4 = sym_power_defining(4)?;
    if s4.multiplicities[2] != 1 || s4.multiplicities[3] != 1 {
        return Err(fail("Sym^4 V6 must contain V2 + V3 once".into()));
    }
    let mut rest = ChernElement::ONE;
    for (i, &n) in s4.multiplicities.iter().enumerate() {
        if i != 2 && i != 3 && n != 0 {
            rest = rest * total[i].ok_or_else(|| fail(format!("c(V{i}) unknown")))?.pow(n);
        }
    }
    let v23 = ChernElement::new([0, 0], s4.c2, 0) * rest.inverse();
    // Whitney: c2(V2 + V3) = uv, so the chain forces uv = 0
    let product = total[2].unwrap() * total[3].unwrap();
    if v23.c1 != product.c1 || v23.c2 != 0 || v23.eps != 0 || product != v23 {
        return Err(fail(format!("c(V2 + V3) = {v23}, Whitney gives {product}")));
    }
    steps.push(format!(
        "Sym^4 V6 = {}, c2 = 20: c2(V2 + V3) = {} mod 16, hence uv = 0",
        describe(&s4.multiplicities),
        v23.c2
    ));
    let total = total.map(|c| c.expect("all irreducibles solved"));
    Ok(ChernConstants {
        total,
        c2_v4: v4.c2,
        c2_v5: v5.c2,
        c2_v2_plus_v3: v23.c2,
        steps,
    })
}

/// `V0 + 2 V4`-style text for a multiplicity vector.
pub fn describe(n: &[i64; 7]) -> String {
    let parts: Vec<String> = n
        .iter()
        .enumerate()
        .filter(|(_, &k)| k != 0)
        .map(|(i, &k)| if k == 1 { format!("V{i}") } else { format!("{k} V{i}") })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Total Chern class of `sum n_i V_i` via the Whitney formula.
pub fn total_chern(n: &[i64; 7]) -> Result<ChernElement> {
    let k = chern_constants()?;
    Ok(n.iter()
        .zip(k.total)
        .fold(ChernElement::ONE, |acc, (&m, c)| acc * c.pow(m)))
}

/// `c2` of the representation with merged character `chi`, in `Z/16`.
pub fn c2_restricted(chi: &MergedClassFunction) -> Result<u8> {
    let n = decompose_merged(chi)?;
    let c = total_chern(&n)?;
    if c.eps != 0 {
        return Err(Error::Invalid(format!(
            "c2 of {chi} depends on the undetermined c1(V2)^2"
        )));
    }
    let direct = (4 * n[4] + 9 * n[5] + n[6]).rem_euclid(16) as u8;
    if direct != c.c2 {
        return Err(fail(format!(
            "Whitney product {} disagrees with 4 n4 + 9 n5 + n6 = {direct}",
            c.c2
        )));
    }
    Ok(c.c2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DivisibilityReport {
    pub n4_div_8: bool,
    pub n5_eq_n6_div_16: bool,
    pub n2_eq_n3: bool,
}

impl DivisibilityReport {
    pub fn passes(&self) -> bool {
        self.n4_div_8 && self.n5_eq_n6_div_16 && self.n2_eq_n3
    }
}

pub fn verify_monster_divisibility(chi: &MergedClassFunction) -> Result<DivisibilityReport> {
    let n = decompose_merged(chi)?;
    Ok(DivisibilityReport {
        n4_div_8: n[4] % 8 == 0,
        n5_eq_n6_div_16: n[5] == n[6] && n[5] % 16 == 0,
        n2_eq_n3: n[2] == n[3],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Ratio<i64> {
        Ratio::new(a, b)
    }

    #[test]
    fn orthogonality() {
        let t = char_table_q16().unwrap();
        assert_eq!(t.dims(), [1, 1, 1, 1, 2, 2, 2]);
        assert_eq!(t.dims().iter().map(|d| d * d).sum::<i64>(), 16);
        assert_eq!(
            t.classes.iter().map(|c| c.size).collect::<Vec<_>>(),
            [1, 1, 2, 4, 4, 2, 2]
        );
        for i in 0..7 {
            for j in 0..7 {
                assert_eq!(t.inner(&t.rows[i], &t.rows[j]).unwrap(), i64::from(i == j));
            }
        }
        // column orthogonality: sum_i chi_i(c) chi_i(d) = delta |C(c)|
        for c in 0..7 {
            for d in 0..7 {
                let s = (0..7).fold(Zsqrt2::ZERO, |acc, i| acc + t.rows[i][c] * t.rows[i][d]);
                let expect = if c == d { 16 / t.classes[c].size as i64 } else { 0 };
                assert_eq!(s, Zsqrt2::int(expect));
            }
        }
    }

    #[test]
    fn mckay_graph() {
        let t = char_table_q16().unwrap();
        let tensor = |i: usize, j: usize| {
            let mut chi = [Zsqrt2::ZERO; 7];
            for c in 0..7 {
                chi[c] = t.rows[i][c] * t.rows[j][c];
            }
            t.decompose(&chi).unwrap()
        };
        assert_eq!(tensor(6, 6), [1, 1, 0, 0, 1, 0, 0]);
        assert_eq!(tensor(6, 4), [0, 0, 0, 0, 0, 1, 1]);
        assert_eq!(tensor(6, 5), [0, 0, 1, 1, 1, 0, 0]);
    }

    #[test]
    fn printed_matrix() {
        let m = merged_decomposition_matrix().unwrap();
        let s = r(1, 16);
        let e = r(1, 8);
        let q = r(1, 4);
        let z = r(0, 1);
        let expect = [
            [s, s, s, s, e, e, e],
            [s, s, s, s, e, -e, -e],
            [r(5, 8), r(-3, 8), e, e, -q, z, z],
            [q, q, -q, -q, z, z, z],
        ];
        assert_eq!(m, expect);
    }

    #[test]
    fn decompositions() {
        let f = MergedClassFunction::new;
        assert_eq!(decompose_merged(&f([1, 1, 1, 1])).unwrap(), [1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(decompose_merged(&f([16, 0, 0, 0])).unwrap(), [1, 1, 1, 1, 2, 2, 2]);
        assert_eq!(decompose_merged(&f([4, -4, 0, 0])).unwrap(), [0, 0, 0, 0, 0, 1, 1]);
        assert!(matches!(decompose_merged(&f([1, 0, 0, 0])), Err(Error::NonIntegral(_))));
    }

    #[test]
    fn sym_powers() {
        let s2 = sym_power_defining(2).unwrap();
        assert_eq!((s2.multiplicities, s2.c2), ([0, 1, 0, 0, 1, 0, 0], 4));
        let s3 = sym_power_defining(3).unwrap();
        assert_eq!((s3.multiplicities, s3.c2), ([0, 0, 0, 0, 0, 1, 1], 10));
        let s4 = sym_power_defining(4).unwrap();
        assert_eq!((s4.multiplicities, s4.c2), ([1, 0, 1, 1, 1, 0, 0], 20));
        let t = char_table_q16().unwrap();
        assert_eq!(t.merged(&s3.character), Some(MergedClassFunction::new([4, -4, 0, 0])));
        assert_eq!(t.merged(&s2.character), Some(MergedClassFunction::new([3, 3, -1, 1])));
        for k in 0..=MAX_SYM_POWER {
            let s = sym_power_defining(k).unwrap();
            assert_eq!(
                s.multiplicities.iter().zip(t.dims()).map(|(n, d)| n * d).sum::<i64>(),
                k as i64 + 1
            );
        }
        assert!(sym_power_defining(9).is_err());
    }

    #[test]
    fn chain() {
        let k = chern_constants().unwrap();
        assert_eq!((k.c2_v4, k.c2_v5, k.c2_v2_plus_v3), (4, 9, 0));
        assert_eq!(k.total[1].c1, [1, 1]);
        assert_eq!(k.total[4].c1, [1, 1]);
        assert_eq!(k.total[5].c1, [0, 0]);
        assert_eq!(k.total[6], ChernElement::new([0, 0], 1, 0));
    }

    #[test]
    fn restricted_c2() {
        let f = MergedClassFunction::new;
        assert_eq!(c2_restricted(&f([1, 1, 1, 1])).unwrap(), 0);
        assert_eq!(c2_restricted(&f([4, -4, 0, 0])).unwrap(), 10);
        let pass = verify_monster_divisibility(&f([128, 0, 0, 0])).unwrap();
        assert!(pass.passes());
        assert_eq!(c2_restricted(&f([128, 0, 0, 0])).unwrap(), 0);
        let one = verify_monster_divisibility(&f([16, 0, 0, 0])).unwrap();
        assert!(!one.n4_div_8 && !one.n5_eq_n6_div_16 && one.n2_eq_n3);
        assert!(verify_monster_divisibility(&f([1, 1, 1, 1])).unwrap().passes());
    }

    #[test]
    fn csv_round_trip() {
        for v in [[1, 1, 1, 1], [4, -4, 0, 0], [196883, 275, -21, 3]] {
            let chi = MergedClassFunction::new(v);
            let text = chi.to_csv();
            assert_eq!(MergedClassFunction::from_csv(&text).unwrap(), chi);
            assert_eq!(MergedClassFunction::from_csv(&text).unwrap().to_csv(), text);
        }
        let shuffled = "8F,8,1\n1A,1,3\n4D,4,-1\n2B,2,3\n";
        assert_eq!(MergedClassFunction::from_csv(shuffled).unwrap().values, [3, 3, -1, 1]);
        assert!(MergedClassFunction::from_csv("1A,1,1\n2B,2,1\n4D,4,1\n").is_err());
        assert!(MergedClassFunction::from_csv("1A,1,1\n2B,2,1\n4D,4,1\n8A,8,1\n").is_err());
        assert!(MergedClassFunction::from_csv("1A,1,1\n2B,2,1\n4D,4,1.5\n8F,8,1\n").is_err());
    }
}

//! T-duality data `(kappa, alpha, beta)` for extensions `n.J` with cyclic `n`.
//!
//! `U(1)` is modelled as `Z/M` with `M = |n| |J|`; the pairing `n^ x n -> U(1)`
//! sends `(a, b)` to `a b (M / |n|)`.

use std::fmt;

use rand::Rng;

use crate::cochain::{
    coboundary, cocycle_generators, cocycle_violation, cup_pair, solve_primitive, Cochain, Coefficients, Pairing,
};
use crate::error::{parse_err, Error, Result};
use crate::exactlin::{inv_mod, Modulus};
use crate::groupkit::{extension_from_cocycle, named_group, GroupTable};

/// Which factor comes first in the defining equation `d beta = <x u y>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CupOrder {
    AlphaKappa,
    KappaAlpha,
}

impl CupOrder {
    fn flipped(self) -> Self {
        match self {
            CupOrder::AlphaKappa => CupOrder::KappaAlpha,
            CupOrder::KappaAlpha => CupOrder::AlphaKappa,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            CupOrder::AlphaKappa => "alpha-kappa",
            CupOrder::KappaAlpha => "kappa-alpha",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TDualityDatum {
    pub j: GroupTable,
    /// `n = Z/m` as a `J`-module.
    pub n: Coefficients,
    pub kappa: Cochain,
    /// Valued in `n^ = n.dual(J)`.
    pub alpha: Cochain,
    /// Valued in `Z/M`, `M = m |J|`.
    pub beta: Cochain,
    pub cup_order: CupOrder,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    KappaNotCocycle(Vec<usize>),
    AlphaNotCocycle(Vec<usize>),
    /// `d beta` and the cup product differ at this 4-tuple.
    Equation(Vec<usize>),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::KappaNotCocycle(t) => write!(f, "kappa is not a cocycle at {t:?}"),
            Violation::AlphaNotCocycle(t) => write!(f, "alpha is not a cocycle at {t:?}"),
            Violation::Equation(t) => write!(f, "d beta != <alpha u kappa> at {t:?}"),
        }
    }
}

/// Assumption the construction relies on but does not check.
pub const UNCHECKED_ASSUMPTION: &str = "H^1(J, n) = H^1(J, n^) = 0 (cocycle choices essentially unique)";

impl TDualityDatum {
    pub fn new(
        j: GroupTable,
        n: Coefficients,
        kappa: Cochain,
        alpha: Cochain,
        beta: Cochain,
        cup_order: CupOrder,
    ) -> Result<Self> {
        let d = TDualityDatum {
            j,
            n,
            kappa,
            alpha,
            beta,
            cup_order,
        };
        d.check_shapes()?;
        Ok(d)
    }

    /// All-zero datum.
    pub fn zero(j: GroupTable, n: Coefficients) -> Result<Self> {
        let order = j.order();
        let u1 = u1_coefficients(&j, &n);
        let kappa = Cochain::zero(order, &n, 2);
        let alpha = Cochain::zero(order, &n.dual(&j), 2);
        let beta = Cochain::zero(order, &u1, 3);
        Self::new(j, n, kappa, alpha, beta, CupOrder::AlphaKappa)
    }

    fn check_shapes(&self) -> Result<()> {
        if self.n.rank() != 1 || self.n.group_order() != self.j.order() {
            return Err(Error::Invalid("n must be a cyclic J-module".into()));
        }
        let m = self.n.modulus();
        let big = self.u1_modulus();
        let shapes = [
            (&self.kappa, 2, m, "kappa"),
            (&self.alpha, 2, m, "alpha"),
            (&self.beta, 3, big, "beta"),
        ];
        for (c, level, modulus, name) in shapes {
            if c.level() != level || c.modulus() != modulus || c.rank() != 1 || c.group_order() != self.j.order() {
                return Err(Error::Dimension(format!(
                    "{name} must be a level-{level} cochain mod {modulus}"
                )));
            }
        }
        Ok(())
    }

    pub fn u1_modulus(&self) -> u64 {
        self.n.modulus() * self.j.order() as u64
    }

    pub fn n_dual(&self) -> Coefficients {
        self.n.dual(&self.j)
    }

    /// `<alpha u kappa>` (or `<kappa u alpha>`) as a 4-cochain in `Z/M`.
    pub fn cup(&self) -> Result<Cochain> {
        let pairing = Pairing::scaled_product(self.n.modulus(), self.u1_modulus())?;
        let nd = self.n_dual();
        match self.cup_order {
            CupOrder::AlphaKappa => cup_pair(&self.j, &self.alpha, &nd, &self.kappa, &self.n, &pairing),
            CupOrder::KappaAlpha => cup_pair(&self.j, &self.kappa, &self.n, &self.alpha, &nd, &pairing),
        }
    }

    /// Checks both cocycle conditions, then the defining equation pointwise.
    pub fn validate(&self) -> Result<Option<Violation>> {
        if let Some(t) = cocycle_violation(&self.j, &self.n, &self.kappa)? {
            return Ok(Some(Violation::KappaNotCocycle(t)));
        }
        if let Some(t) = cocycle_violation(&self.j, &self.n_dual(), &self.alpha)? {
            return Ok(Some(Violation::AlphaNotCocycle(t)));
        }
        let u1 = u1_coefficients(&self.j, &self.n);
        let lhs = coboundary(&self.j, &u1, &self.beta)?;
        let rhs = self.cup()?;
        let n = self.j.order();
        Ok((0..lhs.num_tuples())
            .find(|&i| lhs.at_index(i) != rhs.at_index(i))
            .map(|i| Violation::Equation(crate::cochain::tuple_at(n, 4, i))))
    }

    fn require_valid(&self) -> Result<()> {
        match self.validate()? {
            None => Ok(()),
            Some(v) => Err(Error::Inconsistent(v.to_string())),
        }
    }

    /// Swaps `kappa` and `alpha`, replaces `n` by `n^`, and flips the cup
    /// order so the defining equation is literally unchanged.
    pub fn dualize(&self) -> Result<Self> {
        self.require_valid()?;
        Ok(TDualityDatum {
            j: self.j.clone(),
            n: self.n_dual(),
            kappa: self.alpha.clone(),
            alpha: self.kappa.clone(),
            beta: self.beta.clone(),
            cup_order: self.cup_order.flipped(),
        })
    }

    /// `G = n.J` classified by `kappa`.
    pub fn total_group(&self) -> Result<GroupTable> {
        extension_from_cocycle(&self.j, &self.n, &self.kappa)
    }

    /// `G^ = n^.J` classified by `alpha`.
    pub fn dual_total_group(&self) -> Result<GroupTable> {
        extension_from_cocycle(&self.j, &self.n_dual(), &self.alpha)
    }

    /// Sections `[n] [J] [action] [kappa] [alpha] [beta] [cup]`.
    pub fn to_text(&self) -> String {
        let mut s = format!("[n]\nZ{}\n[J]\n{}\n[action]\n", self.n.modulus(), self.j.name());
        for x in 1..self.j.order() {
            s.push_str(&format!("{x} -> {}\n", self.n.matrix(x)[0]));
        }
        for (name, c) in [("kappa", &self.kappa), ("alpha", &self.alpha), ("beta", &self.beta)] {
            s.push_str(&format!("[{name}]\n{}", c.to_text(false)));
        }
        s.push_str(&format!("[cup]\n{}\n", self.cup_order.as_str()));
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let sections = split_sections(text)?;
        let get = |name: &str| {
            sections
                .iter()
                .find(|s| s.name == name)
                .ok_or_else(|| parse_err(0, format!("missing section [{name}]")))
        };
        let n_sec = get("n")?;
        let m: u64 = single_line(n_sec)?
            .1
            .strip_prefix('Z')
            .and_then(|s| s.parse().ok())
            .filter(|&m| m >= 2)
            .ok_or_else(|| parse_err(n_sec.first_line, "expected `Zm` with m >= 2"))?;
        let j_sec = get("J")?;
        let (ln, name) = single_line(j_sec)?;
        let j = named_group(name).map_err(|e| parse_err(ln, e.to_string()))?;
        let a_sec = get("action")?;
        let mut gens = Vec::new();
        for (ln, line) in a_sec.lines() {
            let (x, u) = line
                .split_once("->")
                .ok_or_else(|| parse_err(ln, "expected `element -> unit`"))?;
            let x: usize = x.trim().parse().map_err(|_| parse_err(ln, "bad element index"))?;
            let u: u64 = u.trim().parse().map_err(|_| parse_err(ln, "bad unit"))?;
            if x >= j.order() || inv_mod(u % m, m).is_none() {
                return Err(parse_err(
                    ln,
                    format!("`{x} -> {u}` is not an element and a unit mod {m}"),
                ));
            }
            gens.push((x, vec![u % m]));
        }
        let n = if gens.is_empty() {
            Coefficients::trivial(j.order(), m, 1)
        } else {
            // every element not listed must still be reached from the listed ones
            Coefficients::from_generators(&j, m, 1, &gens).map_err(|e| parse_err(a_sec.first_line, e.to_string()))?
        };
        let u1 = u1_coefficients(&j, &n);
        let cochain = |name: &str, coeffs: &Coefficients, level: usize| -> Result<Cochain> {
            let sec = get(name)?;
            Cochain::from_text(&sec.body, j.order(), coeffs, level, sec.first_line)
        };
        let kappa = cochain("kappa", &n, 2)?;
        let alpha = cochain("alpha", &n.dual(&j), 2)?;
        let beta = cochain("beta", &u1, 3)?;
        let cup_order = match sections.iter().find(|s| s.name == "cup") {
            None => CupOrder::AlphaKappa,
            Some(sec) => match single_line(sec)? {
                (_, "alpha-kappa") => CupOrder::AlphaKappa,
                (_, "kappa-alpha") => CupOrder::KappaAlpha,
                (ln, other) => return Err(parse_err(ln, format!("unknown cup order `{other}`"))),
            },
        };
        Self::new(j, n, kappa, alpha, beta, cup_order)
    }
}

fn u1_coefficients(j: &GroupTable, n: &Coefficients) -> Coefficients {
    Coefficients::trivial(j.order(), n.modulus() * j.order() as u64, 1)
}

struct Section {
    name: String,
    first_line: usize,
    body: String,
}

impl Section {
    fn lines(&self) -> impl Iterator<Item = (usize, &str)> {
        self.body
            .lines()
            .enumerate()
            .map(|(i, l)| (self.first_line + i, l.split('#').next().unwrap().trim()))
            .filter(|(_, l)| !l.is_empty())
    }
}

fn single_line(s: &Section) -> Result<(usize, &str)> {
    let mut it = s.lines();
    match (it.next(), it.next()) {
        (Some(l), None) => Ok(l),
        _ => Err(parse_err(
            s.first_line,
            format!("section [{}] must have exactly one line", s.name),
        )),
    }
}

fn split_sections(text: &str) -> Result<Vec<Section>> {
    let mut out: Vec<Section> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let trimmed = raw.trim();
        if let Some(name) = trimmed.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            if out.iter().any(|s| s.name == name) {
                return Err(parse_err(i + 1, format!("duplicate section [{name}]")));
            }
            out.push(Section {
                name: name.to_string(),
                first_line: i + 2,
                body: String::new(),
            });
        } else if let Some(s) = out.last_mut() {
            s.body.push_str(raw);
            s.body.push('\n');
        } else if !trimmed.is_empty() && !trimmed.starts_with('#') {
            return Err(parse_err(i + 1, "text before the first section"));
        }
    }
    Ok(out)
}

fn random_cocycle(j: &GroupTable, coeffs: &Coefficients, level: usize, rng: &mut impl Rng) -> Result<Cochain> {
    let md = Modulus::from_order(coeffs.modulus())?;
    let gens = cocycle_generators(j, coeffs, level)?;
    let len = Cochain::zero(j.order(), coeffs, level).values().len();
    let mut v = vec![0u32; len];
    for g in &gens {
        let c = rng.gen_range(0..md.q());
        for (x, &y) in v.iter_mut().zip(g) {
            *x = md.add(*x, md.mul(c, y));
        }
    }
    Cochain::from_values(j.order(), coeffs, level, v.into_iter().map(u64::from).collect())
}

/// A random valid datum: random cocycles `kappa`, `alpha` (retrying `alpha`
/// until the cup product is exact, falling back to `alpha = 0`), and a
/// primitive `beta` shifted by a random 3-cocycle. `n` must have prime-power order.
pub fn random_datum(j: &GroupTable, n: &Coefficients, rng: &mut impl Rng) -> Result<TDualityDatum> {
    let mut d = TDualityDatum::zero(j.clone(), n.clone())?;
    d.kappa = random_cocycle(j, n, 2, rng)?;
    let u1 = u1_coefficients(j, n);
    for attempt in 0..4 {
        d.alpha = if attempt < 3 {
            random_cocycle(j, &d.n_dual(), 2, rng)?
        } else {
            Cochain::zero(j.order(), &d.n_dual(), 2)
        };
        if let Some(beta) = solve_primitive(j, &u1, &d.cup()?)?.solved() {
            d.beta = beta;
            break;
        }
    }
    let shift = Cochain::random(j.order(), &u1, 2, rng);
    d.beta = d.beta.add(&coboundary(j, &u1, &shift)?)?;
    if Modulus::from_order(u1.modulus()).is_ok() {
        d.beta = d.beta.add(&random_cocycle(j, &u1, 3, rng)?)?;
    }
    Ok(d)
}

/// For `kappa' = kappa + d eta`, the map `(a, x) -> (a - eta(x), x)` from
/// `n.J` (via `kappa`) to `n.J` (via `kappa'`); checked to be an isomorphism.
pub fn eta_isomorphism(j: &GroupTable, n: &Coefficients, kappa: &Cochain, eta: &Cochain) -> Result<Vec<usize>> {
    if eta.level() != 1 {
        return Err(Error::Invalid("eta must be a 1-cochain".into()));
    }
    let moved = kappa.add(&coboundary(j, n, eta)?)?;
    let g = extension_from_cocycle(j, n, kappa)?;
    let h = extension_from_cocycle(j, n, &moved)?;
    let size = n.size().ok_or_else(|| Error::TooLarge("coefficient module".into()))? as usize;
    let map: Vec<usize> = (0..g.order())
        .map(|i| {
            let (x, a) = (i / size, n.decode(i % size));
            let e = eta.get(&[x]);
            let b: Vec<u64> = a
                .iter()
                .zip(&e)
                .map(|(&p, &q)| (p + n.modulus() - q) % n.modulus())
                .collect();
            x * size + n.encode(&b)
        })
        .collect();
    for a in 0..g.order() {
        for b in 0..g.order() {
            if map[g.mul(a, b)] != h.mul(map[a], map[b]) {
                return Err(Error::Inconsistent(format!("eta map fails on elements {a}, {b}")));
            }
        }
    }
    Ok(map)
}

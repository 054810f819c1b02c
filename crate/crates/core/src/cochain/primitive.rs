use super::cochain::{tuple_at, Cochain};
use super::coeffs::{crt_idempotents, Coefficients};
use super::differential::{coboundary, coboundary_generators};
use crate::error::{Error, Result};
use crate::exactlin::{HowellForm, Modulus};
use crate::groupkit::GroupTable;

/// Why a cochain has no primitive: its normal form modulo coboundaries in
/// one prime-power component is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub modulus: u64,
    pub residual: Vec<u32>,
    /// First tuple where the residual is nonzero.
    pub tuple: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Primitive {
    Solved(Cochain),
    Obstructed(Obstruction),
}

impl Primitive {
    pub fn solved(self) -> Option<Cochain> {
        match self {
            Primitive::Solved(b) => Some(b),
            Primitive::Obstructed(_) => None,
        }
    }
}

fn solve_component(
    g: &GroupTable,
    coeffs: &Coefficients,
    c: &Cochain,
) -> Result<std::result::Result<Vec<u32>, Obstruction>> {
    let md = Modulus::from_order(coeffs.modulus())?;
    let k = c.level();
    let gens = coboundary_generators(g, coeffs, k)?;
    let (cols, prev) = (c.values().len(), gens.len());
    let rows: Vec<Vec<u32>> = gens
        .into_iter()
        .enumerate()
        .map(|(j, mut row)| {
            row.resize(cols + prev, 0);
            row[cols + j] = 1;
            row
        })
        .collect();
    let hf = HowellForm::from_rows(md, cols + prev, rows);
    let mut target: Vec<u32> = c.values().iter().map(|&v| v as u32).collect();
    target.resize(cols + prev, 0);
    let res = hf.reduce(&target);
    if let Some(pos) = res[..cols].iter().position(|&x| x != 0) {
        return Ok(Err(Obstruction {
            modulus: md.q() as u64,
            residual: res[..cols].to_vec(),
            tuple: tuple_at(g.order(), k, pos / coeffs.rank()),
        }));
    }
    Ok(Ok(res[cols..].iter().map(|&x| md.neg(x)).collect()))
}

/// Finds `b` with `db = c` for a `k`-cochain `c` (`k >= 1`), or reports an
/// obstruction. The returned primitive is checked by recomputing `db`.
pub fn solve_primitive(g: &GroupTable, coeffs: &Coefficients, c: &Cochain) -> Result<Primitive> {
    let k = c.level();
    if k == 0 {
        return Err(Error::Invalid("level-0 cochains have no primitive".into()));
    }
    if c.modulus() != coeffs.modulus() || c.rank() != coeffs.rank() || c.group_order() != g.order() {
        return Err(Error::Dimension("cochain does not match group and coefficients".into()));
    }
    let m = coeffs.modulus();
    let idem = crt_idempotents(m);
    let mut beta = vec![0u64; Cochain::zero(g.order(), coeffs, k - 1).values().len()];
    for (q, e) in idem {
        let part = coeffs.reduce(q)?;
        match solve_component(g, &part, &c.reduce(q)?)? {
            Err(ob) => return Ok(Primitive::Obstructed(ob)),
            Ok(b) => {
                for (dst, &x) in beta.iter_mut().zip(&b) {
                    *dst = ((*dst as u128 + e as u128 * x as u128) % m as u128) as u64;
                }
            }
        }
    }
    let beta = Cochain::from_values(g.order(), coeffs, k - 1, beta)?;
    if coboundary(g, coeffs, &beta)? != *c {
        return Err(Error::Inconsistent("primitive failed verification".into()));
    }
    Ok(Primitive::Solved(beta))
}

//! Finite presentations, words, matrix evaluation and multiplication tables.

pub mod corpus;
mod eval;
mod extension;
pub mod table;
mod word;

pub use corpus::PresentedGroup;
pub use eval::{evaluate_word, generators_to_text, images_for, parse_generators, MatrixImages};
pub use extension::extension_from_cocycle;
pub use table::{GroupTable, MAX_ORDER};
pub use word::{coxeter_presentation, Letter, Presentation, Word};

use crate::error::{Error, Result};

/// Builds a table from a short name: `Zn`/`Cn`, `Zp^d`, `Dn` (order n),
/// `Qn`/`Dicn` (order n), `Sn`, `An`, and products joined by ` x `.
pub fn named_group(name: &str) -> Result<GroupTable> {
    let factors: Vec<&str> = name.split(['x', '×']).map(str::trim).collect();
    if factors.len() > 1 {
        let mut acc = named_group(factors[0])?;
        for f in &factors[1..] {
            acc = table::direct_product(&acc, &named_group(f)?)?;
        }
        return Ok(acc.with_name(name.trim()));
    }
    let f = factors[0];
    let bad = || Error::Invalid(format!("unknown group name `{f}`"));
    let split = f.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?;
    let (head, rest) = f.split_at(split);
    let (num, pow) = match rest.split_once('^') {
        Some((a, b)) => (a, Some(b.parse::<u32>().map_err(|_| bad())?)),
        None => (rest, None),
    };
    let n: usize = num.parse().map_err(|_| bad())?;
    let g = match (head, pow) {
        ("Z" | "C", None) if n >= 1 => table::cyclic(n),
        ("Z" | "C", Some(d)) => table::elementary_abelian(n, d)?,
        ("D", None) => table::dihedral(n)?,
        ("Q" | "Dic", None) => table::dicyclic(n)?,
        ("S", None) => table::symmetric(n)?,
        ("A", None) => table::alternating(n)?,
        _ => return Err(bad()),
    };
    Ok(g.with_name(f))
}

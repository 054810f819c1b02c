use super::table::{self, GroupTable};
use super::word::Presentation;
use crate::error::{Error, Result};

/// A table together with a presentation and the elements its generators name.
#[derive(Clone, Debug)]
pub struct PresentedGroup {
    pub table: GroupTable,
    pub presentation: Presentation,
    pub generators: Vec<usize>,
}

impl PresentedGroup {
    /// Checks that the named elements satisfy every relator and generate the table.
    pub fn new(table: GroupTable, presentation: Presentation, generators: Vec<usize>) -> Result<Self> {
        if generators.len() != presentation.num_generators() {
            return Err(Error::Dimension("one element per generator expected".into()));
        }
        for (i, w) in presentation.relators.iter().enumerate() {
            if table.evaluate(w, &generators) != 0 {
                return Err(Error::RelatorFailed {
                    index: i,
                    text: presentation.relator_text[i].clone(),
                });
            }
        }
        if table.generated_subgroup(&generators).len() != table.order() {
            return Err(Error::Invalid("generators do not generate the group".into()));
        }
        Ok(PresentedGroup {
            table,
            presentation,
            generators,
        })
    }
}

fn build(table: GroupTable, gens: &[&str], rels: &[&str], elems: Vec<usize>) -> PresentedGroup {
    let p = Presentation::from_strs(gens, rels).expect("corpus presentation parses");
    PresentedGroup::new(table, p, elems).expect("corpus presentation is satisfied")
}

pub fn cyclic(n: usize) -> PresentedGroup {
    let t = table::cyclic(n);
    let g = if n > 1 { 1 } else { 0 };
    build(t, &["a"], &[&format!("a^{n}")], vec![g])
}

/// `<r, s | r^n, s^2, (s r)^2>` for the dihedral group of order `2n`.
pub fn dihedral(order: usize) -> Result<PresentedGroup> {
    let n = order / 2;
    let t = table::dihedral(order)?;
    // element a + n b is r^a s^b; the identity sits at 0 already
    Ok(build(
        t,
        &["r", "s"],
        &[&format!("r^{n}"), "s^2", "( s r )^2"],
        vec![1 % n, n],
    ))
}

/// `<x, y | x^2n, y^2 x^-n, y x y^-1 x>` for the dicyclic group of order `4n`.
pub fn dicyclic(order: usize) -> Result<PresentedGroup> {
    let n = order / 4;
    let t = table::dicyclic(order)?;
    Ok(build(
        t,
        &["x", "y"],
        &[&format!("x^{}", 2 * n), &format!("y^2 x^-{n}"), "y x y^-1 x"],
        vec![1, 2 * n],
    ))
}

/// `<a, b | a^p, b^p, a b a^-1 b^-1>`.
pub fn elementary_abelian_2(p: usize) -> Result<PresentedGroup> {
    let t = table::elementary_abelian(p, 2)?;
    Ok(build(
        t,
        &["a", "b"],
        &[&format!("a^{p}"), &format!("b^{p}"), "a b a^-1 b^-1"],
        vec![1, p],
    ))
}

fn perm_index(elems: &[Vec<usize>], g: &[usize]) -> usize {
    elems
        .iter()
        .position(|e| e == g)
        .expect("generator lies in the closure")
}

/// `S3 = <s, t | s^2, t^2, (s t)^3>` on transpositions `(0 1)`, `(1 2)`.
pub fn s3() -> PresentedGroup {
    let (s, t) = (vec![1, 0, 2], vec![0, 2, 1]);
    let (tab, elems) = table::from_permutations("S3", &[s.clone(), t.clone()]).unwrap();
    let gens = vec![perm_index(&elems, &s), perm_index(&elems, &t)];
    build(tab, &["s", "t"], &["s^2", "t^2", "( s t )^3"], gens)
}

/// `A4 = <a, b | a^2, b^3, (a b)^3>` with `a = (0 1)(2 3)`, `b = (0 1 2)`.
pub fn a4() -> PresentedGroup {
    let (a, b) = (vec![1, 0, 3, 2], vec![1, 2, 0, 3]);
    let (tab, elems) = table::from_permutations("A4", &[a.clone(), b.clone()]).unwrap();
    let gens = vec![perm_index(&elems, &a), perm_index(&elems, &b)];
    build(tab, &["a", "b"], &["a^2", "b^3", "( a b )^3"], gens)
}

/// `S4` as the Coxeter group of type `A3`.
pub fn s4() -> PresentedGroup {
    let gens = [vec![1, 0, 2, 3], vec![0, 2, 1, 3], vec![0, 1, 3, 2]];
    let (tab, elems) = table::from_permutations("S4", &gens).unwrap();
    let p = super::word::coxeter_presentation(&["a", "b", "c"], &[(0, 1, 3), (1, 2, 3)]).unwrap();
    let idx = gens.iter().map(|g| perm_index(&elems, g)).collect();
    PresentedGroup::new(tab, p, idx).unwrap()
}

/// Every presented group of order at most 24 used by the cross-checks.
pub fn small_corpus() -> Vec<PresentedGroup> {
    let mut out: Vec<PresentedGroup> = (2..=8).map(cyclic).collect();
    for order in [6, 8, 10, 12] {
        out.push(dihedral(order).unwrap());
    }
    for order in [8, 12, 16] {
        out.push(dicyclic(order).unwrap());
    }
    out.push(elementary_abelian_2(2).unwrap());
    out.push(elementary_abelian_2(3).unwrap());
    out.push(s3());
    out.push(a4());
    out.push(s4());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_consistent() {
        let c = small_corpus();
        assert_eq!(c.len(), 19);
        for g in &c {
            assert!(g.table.order() <= 24);
        }
    }
}

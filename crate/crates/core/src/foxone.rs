//! First cohomology from a presentation via Fox derivatives.

use crate::error::{Error, Result};
use crate::exactlin::{rank, FiniteAbelianGroup, Modulus, PackedMatrix};
use crate::groupkit::{Presentation, Word};
use crate::repfun::MatrixRep;

fn check_shape(p: &Presentation, rep: &MatrixRep) -> Result<()> {
    if rep.images().len() != p.num_generators() {
        return Err(Error::Dimension(format!(
            "{} images for {} generators",
            rep.images().len(),
            p.num_generators()
        )));
    }
    Ok(())
}

/// Blocks `rho(dw/dg_i)`, one `d x d` matrix per generator, using a running
/// prefix image.
fn fox_blocks(w: &Word, rep: &MatrixRep) -> Result<(Vec<PackedMatrix>, PackedMatrix)> {
    let md = rep.modulus();
    let d = rep.dim();
    let mut blocks = vec![PackedMatrix::zeros(md, d, d); rep.images().len()];
    let mut prefix = PackedMatrix::identity(md, d);
    for l in w.letters() {
        let i = l.generator;
        if l.exponent > 0 {
            blocks[i] = blocks[i].add(&prefix)?;
            prefix = prefix.mul(&rep.images()[i])?;
        } else {
            prefix = prefix.mul(&rep.inverses()[i])?;
            blocks[i] = blocks[i].sub(&prefix)?;
        }
    }
    Ok((blocks, prefix))
}

/// `rho(dw/dg_i)` for every generator `g_i`.
pub fn fox_derivatives(w: &Word, rep: &MatrixRep) -> Result<Vec<PackedMatrix>> {
    Ok(fox_blocks(w, rep)?.0)
}

/// The linear conditions on `(z_1, .., z_n)` for `g_i -> z_i` to extend to a
/// crossed homomorphism: one row block per relator, one column block per generator.
pub fn fox_matrix(p: &Presentation, rep: &MatrixRep) -> Result<PackedMatrix> {
    check_shape(p, rep)?;
    let md = rep.modulus();
    let d = rep.dim();
    let n = p.num_generators();
    let mut out = PackedMatrix::zeros(md, p.relators.len() * d, n * d);
    for (r, w) in p.relators.iter().enumerate() {
        let (blocks, image) = fox_blocks(w, rep)?;
        if !image.is_identity() {
            return Err(Error::RelatorFailed {
                index: r,
                text: p.relator_text[r].clone(),
            });
        }
        for (i, b) in blocks.iter().enumerate() {
            for a in 0..d {
                for c in 0..d {
                    let v = b.get(a, c);
                    if v != 0 {
                        out.set(r * d + a, i * d + c, v);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Dimension data behind `H^1`: `(dim Z^1, dim B^1)`.
pub fn h1_dimensions(p: &Presentation, rep: &MatrixRep) -> Result<(usize, usize)> {
    let fox = fox_matrix(p, rep)?;
    let z = fox.cols() - rank(&fox)?;
    let md = rep.modulus();
    let d = rep.dim();
    let id = PackedMatrix::identity(md, d);
    let mut cob = PackedMatrix::zeros(md, 0, d);
    for g in rep.images() {
        cob = cob.vstack(&g.sub(&id)?)?;
    }
    Ok((z, rank(&cob)?))
}

/// `H^1(G, M)` as `Z_p^dim`.
pub fn h1(p: &Presentation, rep: &MatrixRep) -> Result<FiniteAbelianGroup> {
    let (z, b) = h1_dimensions(p, rep)?;
    Ok(FiniteAbelianGroup::elementary(rep.modulus().p() as u64, z - b))
}

/// `dim H^1(G, F_p)` from the exponent-sum matrix.
pub fn abelianization_rank(p: &Presentation, prime: u32) -> Result<usize> {
    let md = Modulus::prime(prime)?;
    let n = p.num_generators();
    let rows: Vec<Vec<u32>> = p
        .relators
        .iter()
        .map(|w| w.exponent_sums(n).into_iter().map(|e| md.reduce_i64(e)).collect())
        .collect();
    let m = PackedMatrix::from_rows_with_cols(md, n, &rows)?;
    Ok(n - rank(&m)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::cohomology_module;
    use crate::groupkit::corpus;
    use crate::repfun::{alt2_matrix, MatrixRep};

    fn perm(md: Modulus, p: &[usize]) -> PackedMatrix {
        PackedMatrix::from_fn(md, p.len(), p.len(), |i, j| u32::from(p[j] == i))
    }

    #[test]
    fn cyclic_trivial() {
        for p in [2u32, 3, 5] {
            let pres = Presentation::from_strs(&["g"], &[&format!("g^{p}")]).unwrap();
            let md = Modulus::prime(p).unwrap();
            let rep = MatrixRep::trivial(pres.clone(), md, 1).unwrap();
            assert!(fox_matrix(&pres, &rep).unwrap().is_zero());
            assert_eq!(h1(&pres, &rep).unwrap().to_string(), format!("Z{p}"));
            assert_eq!(abelianization_rank(&pres, p).unwrap(), 1);
        }
    }

    #[test]
    fn abelianization_examples() {
        let free = Presentation::from_strs(&["a", "b"], &[]).unwrap();
        assert_eq!(abelianization_rank(&free, 2).unwrap(), 2);
        for n in 2..7 {
            let d = Presentation::from_strs(&["a", "b"], &["a^2", "b^2", &format!("( a b )^{n}")]).unwrap();
            assert_eq!(abelianization_rank(&d, 2).unwrap(), if n % 2 == 0 { 2 } else { 1 });
        }
    }

    #[test]
    fn relator_failure_is_named() {
        let pres = Presentation::from_strs(&["g"], &["g^3"]).unwrap();
        let md = Modulus::F2;
        let rep = MatrixRep::from_presentation(pres.clone(), vec![perm(md, &[1, 0])]).unwrap();
        assert!(matches!(
            fox_matrix(&pres, &rep),
            Err(Error::RelatorFailed { index: 0, .. })
        ));
    }

    #[test]
    fn s3_natural_matches_bar_oracle() {
        let s3 = corpus::s3();
        let md = Modulus::F2;
        // natural F2^2: quotient of the permutation module by the all-ones line
        let gens = vec![
            PackedMatrix::from_rows(md, &[vec![0, 1], vec![1, 0]]).unwrap(),
            PackedMatrix::from_rows(md, &[vec![1, 1], vec![0, 1]]).unwrap(),
        ];
        let rep = MatrixRep::from_presentation(s3.presentation.clone(), gens.clone()).unwrap();
        let fox = h1(&s3.presentation, &rep).unwrap();
        let tab = MatrixRep::from_table_generators(s3.table.clone(), &s3.generators, &gens).unwrap();
        let oracle = cohomology_module(&s3.table, &tab.to_coefficients().unwrap(), 1).unwrap();
        assert_eq!(fox, oracle);
    }

    #[test]
    fn corpus_agrees_with_bar_cohomology() {
        for g in corpus::small_corpus() {
            for p in [2u32, 3] {
                let md = Modulus::prime(p).unwrap();
                let mut reps = vec![vec![PackedMatrix::identity(md, 1); g.generators.len()]];
                // regular-ish modules: the permutation action on the group itself, then Alt2 of it when small
                if g.table.order() <= 8 {
                    let regular: Vec<PackedMatrix> = g
                        .generators
                        .iter()
                        .map(|&s| perm(md, &(0..g.table.order()).map(|x| g.table.mul(s, x)).collect::<Vec<_>>()))
                        .collect();
                    if g.table.order() <= 4 {
                        reps.push(regular.iter().map(alt2_matrix).collect());
                    }
                    if g.table.order() <= 6 {
                        reps.push(regular);
                    }
                }
                for images in reps {
                    let rep = MatrixRep::from_presentation(g.presentation.clone(), images.clone()).unwrap();
                    let fox = h1(&g.presentation, &rep).unwrap();
                    let tab = MatrixRep::from_table_generators(g.table.clone(), &g.generators, &images).unwrap();
                    let bar = cohomology_module(&g.table, &tab.to_coefficients().unwrap(), 1).unwrap();
                    assert_eq!(fox, bar, "{} over F{p}, dim {}", g.table.name(), rep.dim());
                }
            }
        }
    }
}

//! Matrix representations over prime fields and the functors used to build
//! coefficient modules.

mod functors;
mod modules;

pub use functors::{alt2_matrix, alt3_matrix, sym2_matrix, Functor};
pub use modules::{fixed_points, invariant_bilinear_forms, quotient_module, submodule};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cochain::Coefficients;
use crate::error::{Error, Result};
use crate::exactlin::{Modulus, PackedMatrix};
use crate::groupkit::{GroupTable, MatrixImages, Presentation, Word};

/// Where the generator images of a representation come from.
#[derive(Clone, Debug)]
pub enum RepSource {
    /// Images indexed by the presentation's generators.
    Presentation(Presentation),
    /// Images of every element of the table, indexed by element.
    Table(GroupTable),
}

/// A representation `G -> GL_d(F_p)` acting on column vectors.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    source: RepSource,
    modulus: Modulus,
    images: MatrixImages,
}

const TABLE_SPOT_CHECKS: usize = 10_000;

impl MatrixRep {
    /// Builds from generator images; images must be invertible. Relators are
    /// not checked here (see [`MatrixRep::check_relators`]).
    pub fn from_presentation(p: Presentation, images: Vec<PackedMatrix>) -> Result<Self> {
        if images.len() != p.num_generators() {
            return Err(Error::Dimension(format!(
                "{} images for {} generators",
                images.len(),
                p.num_generators()
            )));
        }
        let modulus = field_of(&images)?;
        let images = MatrixImages::new(p.generators.clone(), images)?;
        Ok(MatrixRep {
            source: RepSource::Presentation(p),
            modulus,
            images,
        })
    }

    /// Builds from one image per group element, checking the homomorphism
    /// property (exhaustively up to order 64, else on random pairs).
    pub fn from_table(table: GroupTable, images: Vec<PackedMatrix>) -> Result<Self> {
        let n = table.order();
        if images.len() != n {
            return Err(Error::Dimension(format!(
                "{} images for a group of order {n}",
                images.len()
            )));
        }
        let modulus = field_of(&images)?;
        let check = |x: usize, y: usize| -> Result<()> {
            if images[x].mul(&images[y])? != images[table.mul(x, y)] {
                return Err(Error::Invalid(format!("images are not multiplicative at ({x}, {y})")));
            }
            Ok(())
        };
        if n <= 64 {
            for x in 0..n {
                for y in 0..n {
                    check(x, y)?;
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x7ab1e);
            for _ in 0..TABLE_SPOT_CHECKS {
                check(rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        let names = (0..n).map(|x| x.to_string()).collect();
        let images = MatrixImages::new(names, images)?;
        Ok(MatrixRep {
            source: RepSource::Table(table),
            modulus,
            images,
        })
    }

    /// Extends images of the listed generating elements to the whole table.
    pub fn from_table_generators(table: GroupTable, gens: &[usize], images: &[PackedMatrix]) -> Result<Self> {
        if gens.len() != images.len() {
            return Err(Error::Dimension("one image per generating element expected".into()));
        }
        let modulus = field_of(images)?;
        let d = images[0].rows();
        let mut all: Vec<Option<PackedMatrix>> = vec![None; table.order()];
        all[0] = Some(PackedMatrix::identity(modulus, d));
        let mut queue = std::collections::VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for (&s, a) in gens.iter().zip(images) {
                let y = table.mul(x, s);
                if all[y].is_none() {
                    all[y] = Some(all[x].as_ref().unwrap().mul(a)?);
                    queue.push_back(y);
                }
            }
        }
        let all: Option<Vec<PackedMatrix>> = all.into_iter().collect();
        let all = all.ok_or_else(|| Error::Invalid("elements do not generate the group".into()))?;
        Self::from_table(table, all)
    }

    /// The trivial `d`-dimensional representation of a presentation.
    pub fn trivial(p: Presentation, modulus: Modulus, d: usize) -> Result<Self> {
        let images = vec![PackedMatrix::identity(modulus, d); p.num_generators()];
        Self::from_presentation(p, images)
    }

    pub fn source(&self) -> &RepSource {
        &self.source
    }
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }
    pub fn dim(&self) -> usize {
        self.images.dim()
    }
    pub fn names(&self) -> &[String] {
        &self.images.names
    }
    pub fn images(&self) -> &[PackedMatrix] {
        &self.images.images
    }
    pub fn inverses(&self) -> &[PackedMatrix] {
        &self.images.inverses
    }
    pub fn matrix_images(&self) -> &MatrixImages {
        &self.images
    }

    /// Image of a word in the generators.
    pub fn evaluate(&self, w: &Word) -> Result<PackedMatrix> {
        self.images.evaluate(w)
    }

    /// Whether each relator of the source presentation maps to the identity.
    pub fn check_relators(&self) -> Result<Vec<bool>> {
        match &self.source {
            RepSource::Presentation(p) => self.images.check_relators(p),
            RepSource::Table(_) => Ok(Vec::new()),
        }
    }

    /// The coefficient module over the source table.
    pub fn to_coefficients(&self) -> Result<Coefficients> {
        let RepSource::Table(t) = &self.source else {
            return Err(Error::Invalid(
                "coefficient modules need a table-backed representation".into(),
            ));
        };
        let action = self
            .images()
            .iter()
            .map(|g| g.to_rows().concat().into_iter().map(u64::from).collect())
            .collect();
        Coefficients::from_action(t, self.modulus.q() as u64, self.dim(), action)
    }

    /// Same source with new images, one per generator.
    pub(crate) fn with_images(&self, images: Vec<PackedMatrix>) -> Result<Self> {
        let modulus = images.first().map_or(self.modulus, PackedMatrix::modulus);
        Ok(MatrixRep {
            source: self.source.clone(),
            modulus,
            images: MatrixImages::new(self.images.names.clone(), images)?,
        })
    }

    pub(crate) fn same_source(&self, other: &MatrixRep) -> bool {
        self.names() == other.names()
            && match (&self.source, &other.source) {
                (RepSource::Presentation(a), RepSource::Presentation(b)) => a.relator_text == b.relator_text,
                (RepSource::Table(a), RepSource::Table(b)) => a == b,
                _ => false,
            }
    }
}

fn field_of(images: &[PackedMatrix]) -> Result<Modulus> {
    let m = images
        .first()
        .map(PackedMatrix::modulus)
        .ok_or_else(|| Error::Invalid("a representation needs at least one image".into()))?;
    if !m.is_field() {
        return Err(Error::NotPrime(m.q() as u64));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupkit::{corpus, table};

    pub(crate) fn perm_matrix(md: Modulus, perm: &[usize]) -> PackedMatrix {
        PackedMatrix::from_fn(md, perm.len(), perm.len(), |i, j| u32::from(perm[j] == i))
    }

    #[test]
    fn table_and_generators_agree() {
        let s3 = corpus::s3();
        let f3 = Modulus::prime(3).unwrap();
        let gens = [perm_matrix(f3, &[1, 0, 2]), perm_matrix(f3, &[0, 2, 1])];
        let rep = MatrixRep::from_table_generators(s3.table.clone(), &s3.generators, &gens).unwrap();
        assert_eq!(rep.images().len(), 6);
        let pres = MatrixRep::from_presentation(s3.presentation.clone(), gens.to_vec()).unwrap();
        assert!(pres.check_relators().unwrap().iter().all(|&b| b));
        let c = rep.to_coefficients().unwrap();
        assert_eq!(c.rank(), 3);
    }

    #[test]
    fn rejects_non_homomorphism() {
        let g = table::cyclic(3);
        let f2 = Modulus::F2;
        let swap = perm_matrix(f2, &[1, 0]);
        let id = PackedMatrix::identity(f2, 2);
        assert!(MatrixRep::from_table(g, vec![id.clone(), swap.clone(), id]).is_err());
        let p = Presentation::from_strs(&["a"], &["a^2"]).unwrap();
        let z4 = Modulus::new(2, 2).unwrap();
        assert!(matches!(
            MatrixRep::from_presentation(p, vec![PackedMatrix::identity(z4, 1)]),
            Err(Error::NotPrime(4))
        ));
    }
}

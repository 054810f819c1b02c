use super::word::{Presentation, Word};
use crate::error::{parse_err, Error, Result};
use crate::exactlin::PackedMatrix;

/// Generator images together with their inverses.
#[derive(Clone, Debug)]
pub struct MatrixImages {
    pub names: Vec<String>,
    pub images: Vec<PackedMatrix>,
    pub inverses: Vec<PackedMatrix>,
}

impl MatrixImages {
    pub fn new(names: Vec<String>, images: Vec<PackedMatrix>) -> Result<Self> {
        if names.len() != images.len() {
            return Err(Error::Dimension(format!(
                "{} names for {} images",
                names.len(),
                images.len()
            )));
        }
        let d = images.first().map_or(0, PackedMatrix::rows);
        let m = images.first().map(PackedMatrix::modulus);
        let mut inverses = Vec::with_capacity(images.len());
        for (name, g) in names.iter().zip(&images) {
            if !g.is_square() || g.rows() != d || Some(g.modulus()) != m {
                return Err(Error::Dimension(format!("image of `{name}` has the wrong shape")));
            }
            inverses.push(g.inverse().ok_or_else(|| Error::NonInvertible(name.clone()))?);
        }
        Ok(MatrixImages {
            names,
            images,
            inverses,
        })
    }

    pub fn dim(&self) -> usize {
        self.images.first().map_or(0, PackedMatrix::rows)
    }

    pub fn letter(&self, l: super::Letter) -> &PackedMatrix {
        if l.exponent > 0 {
            &self.images[l.generator]
        } else {
            &self.inverses[l.generator]
        }
    }

    pub fn evaluate(&self, w: &Word) -> Result<PackedMatrix> {
        let modulus = self
            .images
            .first()
            .map(PackedMatrix::modulus)
            .ok_or_else(|| Error::Invalid("no generator images".into()))?;
        let mut acc = PackedMatrix::identity(modulus, self.dim());
        for &l in w.letters() {
            if l.generator >= self.images.len() {
                return Err(Error::Invalid(format!("generator index {} out of range", l.generator)));
            }
            acc = acc.mul(self.letter(l))?;
        }
        Ok(acc)
    }

    /// Per-relator check; `true` where the relator evaluates to the identity.
    pub fn check_relators(&self, p: &Presentation) -> Result<Vec<bool>> {
        p.relators.iter().map(|w| Ok(self.evaluate(w)?.is_identity())).collect()
    }

    /// Errors with the first relator that is not satisfied.
    pub fn require_relators(&self, p: &Presentation) -> Result<()> {
        for (i, ok) in self.check_relators(p)?.into_iter().enumerate() {
            if !ok {
                return Err(Error::RelatorFailed {
                    index: i,
                    text: p.relator_text[i].clone(),
                });
            }
        }
        Ok(())
    }
}

/// Product of the images (and their inverses) along the word.
pub fn evaluate_word(w: &Word, images: &[PackedMatrix]) -> Result<PackedMatrix> {
    let names = (0..images.len()).map(|i| format!("g{i}")).collect();
    MatrixImages::new(names, images.to_vec())?.evaluate(w)
}

/// Parses `gen: <name>` headers each followed by a matrix block.
pub fn parse_generators(text: &str) -> Result<Vec<(String, PackedMatrix)>> {
    let lines: Vec<&str> = text.lines().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let line = lines[i].trim();
        if line.is_empty() || line.starts_with('#') {
            i += 1;
            continue;
        }
        let name = line
            .strip_prefix("gen:")
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .ok_or_else(|| parse_err(i + 1, format!("expected `gen: <name>`, found `{line}`")))?;
        let (m, next) = PackedMatrix::parse_block(&lines, i + 1)?;
        out.push((name.to_string(), m));
        i = next;
    }
    Ok(out)
}

pub fn generators_to_text(gens: &[(String, PackedMatrix)]) -> Result<String> {
    let mut s = String::new();
    for (name, m) in gens {
        s.push_str(&format!("gen: {name}\n"));
        s.push_str(&m.to_text()?);
    }
    Ok(s)
}

/// Orders the parsed generator matrices to match a presentation's generators.
pub fn images_for(p: &Presentation, gens: Vec<(String, PackedMatrix)>) -> Result<MatrixImages> {
    let mut images = Vec::with_capacity(p.num_generators());
    for name in &p.generators {
        let m = gens
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m.clone())
            .ok_or_else(|| Error::Invalid(format!("no matrix for generator `{name}`")))?;
        images.push(m);
    }
    MatrixImages::new(p.generators.clone(), images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Modulus;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn empty_word_is_identity() {
        let g = PackedMatrix::from_rows(Modulus::F2, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(evaluate_word(&Word::empty(), &[g]).unwrap().is_identity());
    }

    #[test]
    fn singular_image_named() {
        let g = PackedMatrix::from_rows(Modulus::F2, &[vec![1, 1], vec![1, 1]]).unwrap();
        let w = Word::generator(0).inverse();
        assert!(matches!(evaluate_word(&w, &[g]), Err(Error::NonInvertible(n)) if n == "g0"));
    }

    #[test]
    fn word_times_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let md = Modulus::prime(3).unwrap();
        let mut gens = Vec::new();
        while gens.len() < 3 {
            let m = PackedMatrix::from_fn(md, 4, 4, |_, _| rng.gen_range(0..3));
            if m.inverse().is_some() {
                gens.push(m);
            }
        }
        for _ in 0..50 {
            let w = Word(
                (0..rng.gen_range(0..20))
                    .map(|_| super::super::Letter {
                        generator: rng.gen_range(0..3),
                        exponent: if rng.gen_bool(0.5) { 1 } else { -1 },
                    })
                    .collect(),
            );
            assert!(evaluate_word(&w.concat(&w.inverse()), &gens).unwrap().is_identity());
        }
    }

    #[test]
    fn generator_text_round_trip() {
        let a = PackedMatrix::from_rows(Modulus::F2, &[vec![0, 1], vec![1, 0]]).unwrap();
        let b = PackedMatrix::identity(Modulus::F2, 2);
        let gens = vec![("s".to_string(), a), ("t".to_string(), b)];
        let text = generators_to_text(&gens).unwrap();
        let back = parse_generators(&text).unwrap();
        assert_eq!(back, gens);
        assert_eq!(generators_to_text(&back).unwrap(), text);
        assert!(parse_generators("gen: s\np=2 k=1 rows=2 cols=2\n01\n").is_err());
    }
}

//! Bundled text assets with pinned SHA-256 digests.

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exactlin::PackedMatrix;
use crate::groupkit::{images_for, parse_generators, Presentation};
use crate::repfun::MatrixRep;

#[derive(Clone, Copy, Debug)]
pub struct Dataset {
    pub name: &'static str,
    pub text: &'static str,
    pub sha256: &'static str,
}

pub const CO1_PRESENTATION: Dataset = Dataset {
    name: "co1_presentation",
    text: include_str!("data/co1_presentation.txt"),
    sha256: "f46dc035c0e8e5de5cff03aacc67450d494c495599fb40496baa351977841168",
};

/// Nine 24x24 matrices over F2 generating Co1 on the Leech lattice mod 2.
pub const CO1_GENERATORS: Dataset = Dataset {
    name: "co1_generators",
    text: include_str!("data/co1_generators.txt"),
    sha256: "8f5ca352ab654f7a25ba850235312595dfbff3f722136635d6b4fcb0454cec84",
};

pub const S3_PRESENTATION: Dataset = Dataset {
    name: "s3_presentation",
    text: include_str!("data/s3_presentation.txt"),
    sha256: "808d74e5b3580ab2971b8a580e413c24c0132f96381d90a827d6d7d117a8c032",
};

pub const S3_GENERATORS: Dataset = Dataset {
    name: "s3_generators",
    text: include_str!("data/s3_generators.txt"),
    sha256: "22dc859e36e67ad2da302ea97743bb168f5b983dd9997e45f7698c469574fb7f",
};

pub const DATASETS: &[Dataset] = &[CO1_PRESENTATION, CO1_GENERATORS, S3_PRESENTATION, S3_GENERATORS];

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

impl Dataset {
    /// Fails if a pinned digest no longer matches the asset.
    pub fn verify(&self) -> Result<()> {
        let got = sha256_hex(self.text.as_bytes());
        if got != self.sha256 {
            return Err(Error::Inconsistent(format!(
                "dataset `{}` has digest {got}, expected {}",
                self.name, self.sha256
            )));
        }
        Ok(())
    }

    pub fn lookup(name: &str) -> Result<&'static Dataset> {
        DATASETS
            .iter()
            .find(|d| d.name == name)
            .ok_or_else(|| Error::Invalid(format!("no dataset named `{name}`")))
    }
}

fn presentation(d: &Dataset) -> Result<Presentation> {
    d.verify()?;
    Presentation::from_text(d.text)
}

fn generators(d: &Dataset) -> Result<Vec<(String, PackedMatrix)>> {
    d.verify()?;
    parse_generators(d.text)
}

fn rep(p: &Dataset, g: &Dataset) -> Result<MatrixRep> {
    let pres = presentation(p)?;
    let images = images_for(&pres, generators(g)?)?;
    MatrixRep::from_presentation(pres, images.images)
}

pub fn co1_presentation() -> Result<Presentation> {
    presentation(&CO1_PRESENTATION)
}

pub fn co1_generators() -> Result<Vec<(String, PackedMatrix)>> {
    generators(&CO1_GENERATORS)
}

/// The 24-dimensional F2 module `V = Leech / 2 Leech`, relators not yet checked.
pub fn co1_rep() -> Result<MatrixRep> {
    rep(&CO1_PRESENTATION, &CO1_GENERATORS)
}

pub fn s3_presentation() -> Result<Presentation> {
    presentation(&S3_PRESENTATION)
}

pub fn s3_rep() -> Result<MatrixRep> {
    rep(&S3_PRESENTATION, &S3_GENERATORS)
}

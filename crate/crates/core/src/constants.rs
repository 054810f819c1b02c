//! Quoted inputs that are not recomputed here. Every output that depends on one
//! of these carries its `source` string.

use crate::error::{Error, Result};
use crate::exactlin::FiniteAbelianGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstantValue {
    /// A finite abelian group in the `Z2 x Z4` text form.
    Group(&'static str),
    /// A group known only through its exponent.
    Exponent(u64),
    Integer(i64),
    Factorization(&'static [(u64, u32)]),
    Labels(&'static [&'static str]),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Constant {
    pub name: &'static str,
    pub value: ConstantValue,
    pub source: &'static str,
}

impl Constant {
    pub fn group(&self) -> Result<FiniteAbelianGroup> {
        match self.value {
            ConstantValue::Group(s) => s.parse(),
            _ => Err(Error::Invalid(format!("constant `{}` is not a group", self.name))),
        }
    }

    pub fn value_text(&self) -> String {
        match self.value {
            ConstantValue::Group(s) => s.to_string(),
            ConstantValue::Exponent(e) => format!("exponent {e}"),
            ConstantValue::Integer(n) => n.to_string(),
            ConstantValue::Factorization(f) => f
                .iter()
                .map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
                .collect::<Vec<_>>()
                .join(" * "),
            ConstantValue::Labels(l) => l.join(", "),
        }
    }
}

pub const MONSTER_ORDER: &[(u64, u32)] = &[
    (2, 46),
    (3, 20),
    (5, 9),
    (7, 6),
    (11, 2),
    (13, 3),
    (17, 1),
    (19, 1),
    (23, 1),
    (29, 1),
    (31, 1),
    (41, 1),
    (47, 1),
    (59, 1),
    (71, 1),
];

pub const CONSTANTS: &[Constant] = &[
    Constant {
        name: "monster_order",
        value: ConstantValue::Factorization(MONSTER_ORDER),
        source: "order of the Monster group (ATLAS)",
    },
    Constant {
        name: "large_prime_sylow_normalizer",
        value: ConstantValue::Labels(&["p:(p-1)/2 for p >= 17", "(11:5)^2 for p = 11"]),
        source: "Sylow normalizers in the Monster (ATLAS maximal subgroups)",
    },
    Constant {
        name: "co1_h3_u1",
        value: ConstantValue::Group("Z12"),
        source: "H^3(Co1, U(1)), literature value",
    },
    Constant {
        name: "extraspecial_h3_u1_exponent",
        value: ConstantValue::Exponent(4),
        source: "H^3(2^{1+24}, U(1)), literature value",
    },
    Constant {
        name: "extraspecial_h2_u1_exponent",
        value: ConstantValue::Exponent(2),
        source: "H^2(2^{1+24}, U(1)) = 2^{274}.2, literature value",
    },
    Constant {
        name: "extraspecial_h1_u1_exponent",
        value: ConstantValue::Exponent(2),
        source: "H^1(2^{1+24}, U(1)) = 2^24",
    },
    Constant {
        name: "mckay_h4_integral",
        value: ConstantValue::Group("Z16"),
        source: "H^4(G, Z) = Z_|G| for finite subgroups of SU(2), here |G| = 16",
    },
    Constant {
        name: "q16_monster_class_fusion",
        value: ConstantValue::Labels(&["1A", "2B", "4D", "8F"]),
        source: "fusion of the 2D8 classes into Monster classes (via power maps such as (28A)^7 = 4D)",
    },
];

pub fn lookup(name: &str) -> Result<&'static Constant> {
    CONSTANTS
        .iter()
        .find(|c| c.name == name)
        .ok_or_else(|| Error::Invalid(format!("no constant named `{name}`")))
}

/// Prime divisors of `|M|` in increasing order.
pub fn monster_primes() -> Vec<u64> {
    MONSTER_ORDER.iter().map(|&(p, _)| p).collect()
}

//! Exact linear algebra over `F_p` and `Z/p^k`.

mod abelian;
mod echelon;
mod howell;
mod matrix;
mod modulus;
mod smith;
mod system;

pub use abelian::FiniteAbelianGroup;
pub use echelon::{kernel_basis, rank, row_space_basis, rref, Rref};
pub use howell::{cokernel_invariants_mod, howell_form, kernel_mod, local_smith_diagonal, HowellForm};
pub use matrix::PackedMatrix;
pub use modulus::{factorize, gcd, inv_mod, is_prime, pow_mod, Modulus};
pub use smith::{cokernel_invariants, Cokernel, IntMatrix};
pub use system::{stream_kernel, DenseEquations, EquationStream};

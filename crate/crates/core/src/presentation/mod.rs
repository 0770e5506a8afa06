//! Exact integer linear algebra over ℤ and over mixed cyclic moduli.

pub mod arith;
mod congruence;
mod matrix;
mod quotient;
mod smith;
mod subgroup;

pub use congruence::{solve_congruence_system, CongruenceSolution};
pub use matrix::IntMatrix;
pub use quotient::{quotient_presentation, AbelianPresentation, QuotientPresentation};
pub use smith::{smith_decompose, SmithForm};
pub use subgroup::{Subgroup, SubgroupPresentation};

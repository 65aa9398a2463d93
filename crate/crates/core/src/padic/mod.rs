//! Truncated arithmetic in unramified extensions of `Q_p`, the max norm on
//! `K^N`, square roots and Möbius maps.

mod moebius;
mod params;
mod scalar;
mod vector;

pub use moebius::{solve_monic_quadratic, HyperbolicData, MoebiusMap, ProjectivePoint};
pub use params::{is_irreducible, is_prime, Field, FieldParams, NormBase, DEFAULT_PRECISION};
pub use scalar::{padic_arith, residue_integer, AbsValue, ArithOp, PadicScalar};
pub use vector::PadicVector;


//! Exact scalar, polynomial and matrix arithmetic.

pub mod homog;
pub mod matrix;
pub mod multipoly;
pub mod scalar;
pub mod tpoly;

pub use homog::{hp_gcd, hp_mul, HomogPoly};
pub use matrix::{bareiss_det, bareiss_rank, binomial, colex_subsets, laplace_det, Matrix};
pub use multipoly::{Monomial, MultiPoly, PolyRing};
pub use scalar::{parse_rational, q, qi, Field, FieldKind, Fp, Ring, Q};
pub use tpoly::TPoly;

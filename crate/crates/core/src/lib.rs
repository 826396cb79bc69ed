//! Exact computations on spaces of rational maps `P^1 -> P^n`: resultant
//! ranks and torsion, wedge (minor) coordinates and their one-parameter
//! limits, stratum product maps and finite-field censuses, determinantal
//! ideals on the standard chart, and Hodge polynomials of the blowup model.

pub mod error;
pub mod exact;
pub mod format;
pub mod hodge;
pub mod ideals;
pub mod resultant;
pub mod sample;
pub mod selftest;
pub mod strata;
pub mod wedge;

pub use error::{Error, Result};
pub use resultant::{
    build_resultant_matrix, exact_rank, in_stratum, rank_profile, torsion_degree, MapPoint,
    ResultantMatrix, Stratum, StratumReport,
};

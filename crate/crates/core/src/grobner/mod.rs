//! Gröbner bases for ideals and submodules of free modules over k[s,t] and
//! k[s,t,u], with syzygies, graded free resolutions and Hilbert functions.

mod buchberger;
mod ideal;
mod mvec;
mod order;
mod resolution;

pub use buchberger::{
    buchberger, buchberger_tracked, ideal_basis, lift, normal_form, poly_syzygies, syzygy_generators,
    syzygy_generators_graded, GroebnerBasis,
};
pub use ideal::{hilbert_function, height, ideal_quotient, krull_dimension, quotient_hilbert_function};
pub use order::ModuleOrder;
pub use resolution::{
    free_resolution, minimal_generators, resolution_invariants, BettiTable, FreeResolution, ResolutionInvariants,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrobnerError {
    #[error("generators live in different rings")]
    MixedRings,
    #[error("vector of length {found} in a free module of rank {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("empty generator list")]
    EmptyInput,
    #[error("input is not homogeneous")]
    NotHomogeneous,
    #[error("resolution is not exact: {0}")]
    NotExact(String),
}

//! Exact computation of μ-bases for rational surface parametrizations.

pub mod arith;
pub mod grobner;
pub mod quillen_suslin;
pub mod mubasis;
pub mod bounds;
pub mod cli;

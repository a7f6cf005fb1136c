//! Linear canonical transforms on sampled fields, phase-space tomography and
//! wavelet analysis.
//!
//! Units are dimensionless (ħ = ω = m = 1). Fields live on uniform grids and
//! integrals are Riemann sums unless a routine says otherwise.

pub mod error;
pub mod field;
pub mod interp;
pub mod phase_space;
pub mod quad;
pub mod selftest;
pub mod special;
pub mod spectral;
pub mod symplectic;
pub mod transforms;
pub mod wavelets;

pub use error::{Error, Result};
pub use field::{Field1D, Field2D, Grid1D, Grid2D, Tomogram};
pub use symplectic::{compose, BeamQ, RayMatrix, SRParams};

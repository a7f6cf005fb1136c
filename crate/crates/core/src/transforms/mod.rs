//! Integral transforms on sampled fields.
//!
//! Every transform is a direct quadrature of its kernel (see
//! [`operator::Operator1D`]); degenerate parameters switch to local
//! interpolation of the input.

pub mod adaption;
pub mod cfrft;
pub mod fresnel;
pub mod frft;
pub mod hankel;
pub mod harmonics;
pub mod operator;

pub use adaption::{collins_cfrft_factors, collins_via_cfrft, AdaptionFactors};
pub use cfrft::{cfrft, scaled_cfrft};
pub use fresnel::{collins2d, fresnel_apply, fresnel_apply_momentum, fresnel_kernel, fresnel_operator};
pub use frft::{frft, frft_kernel, scaled_frft};
pub use hankel::hankel;
pub use harmonics::{circular_correlation, circular_harmonics, Harmonics};
pub use operator::Operator1D;

/// Edge modulus above which a field counts as not decayed at the boundary.
pub const EDGE_TOL: f64 = 1e-10;

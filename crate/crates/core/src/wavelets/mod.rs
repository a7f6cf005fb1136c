//! Wavelet transforms: the real transform with Hermite-Gaussian mother
//! wavelets, the complex transform with Laguerre-Gaussian ones, and the
//! symplectic-transformed transform.

pub mod complex;
pub mod map;
pub mod real;
pub mod swt;

pub use complex::{c_psi_prime, cwt, cwt_energy, cwt_inverse, cwt_map, cwt_mother_eval, CWTMap, MotherWaveletC};
pub use map::{coverage_warning, read_wtmap, truncation_bound, write_wtmap, ScaleGrid, WTMap};
pub use real::{admissibility_residual, c_psi, wavelet_eval, wt, wt_energy, wt_inverse, wt_map, MotherWavelet1D};
pub use swt::{swt, FnMother, Mother2D};

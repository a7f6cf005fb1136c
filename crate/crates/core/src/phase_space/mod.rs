//! Phase-space distributions: Wigner and Husimi functions, Radon projections
//! and tomographic inversion, the pq-transform and the fractional Radon
//! transform.

pub mod frac_radon;
pub mod husimi;
pub mod pq;
pub mod radon;
pub mod wigner;

pub use radon::{back_project, inverse_radon, project, radon_wigner, tomogram_direct, tomogram_from_angles};
pub use frac_radon::{frac_radon, frac_radon_all, frac_radon_inverse, half_turn, read_projections, write_projections, ComplexProjections};
pub use husimi::{husimi, husimi_via_wt};
pub use pq::{chirplet_to_frft_check, pq_inverse, pq_inverse_grid, pq_transform, pq_transform_grid};
pub use wigner::wigner;

//! Circular harmonic expansion `f(r, θ) = Σ_m g_m(r) e^{-imθ}` and the
//! rotation crosscorrelation built from it.

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::TAU;

use crate::error::{domain, Result};
use crate::field::{Field2D, Grid1D};
use crate::interp;
use crate::quad::half_line_weights;
use crate::spectral::dft;

/// Endpoint-correction order of the radial quadrature.
const RADIAL_ORDER: usize = 10;

/// Coefficients `g_m(r_k)` for `m ∈ [-mmax, mmax]` on a radial grid from 0.
#[derive(Clone, Debug)]
pub struct Harmonics {
    pub radii: Grid1D,
    pub mmax: usize,
    /// `coeffs[m + mmax][k]`.
    pub coeffs: Vec<Vec<Complex64>>,
}

impl Harmonics {
    pub fn order(&self, m: i64) -> &[Complex64] {
        &self.coeffs[(m + self.mmax as i64) as usize]
    }

    /// `2π ∫ |g_m(r)|² r dr` for each order, ascending in `m`.
    pub fn order_energies(&self) -> Vec<f64> {
        let w = half_line_weights(self.radii.n, self.radii.dx, RADIAL_ORDER);
        self.coeffs
            .iter()
            .map(|g| TAU * g.iter().enumerate().map(|(k, v)| w[k] * self.radii.x(k) * v.norm_sqr()).sum::<f64>())
            .collect()
    }
}

/// Angular samples used for a given `mmax`.
pub fn angle_count(mmax: usize) -> usize {
    (8 * mmax).max(256)
}

/// `g_m(r_k) = (1/2π) ∮ f(r_k, θ) e^{imθ} dθ` at `r_k = k·min(dx, dy)`,
/// `k < nr`, with the field interpolated onto polar samples.
pub fn circular_harmonics(f: &Field2D, nr: usize, mmax: usize) -> Result<Harmonics> {
    if nr == 0 {
        return domain("need at least one radius");
    }
    let nt = angle_count(mmax);
    if mmax > nt / 4 {
        return domain(format!("mmax {mmax} aliases with {nt} angles"));
    }
    let h = f.grid.x.dx.min(f.grid.y.dx);
    let radii = Grid1D::new(nr, 0.0, h)?;
    let rows: Vec<Vec<Complex64>> = (0..nr)
        .into_par_iter()
        .map(|k| {
            let r = radii.x(k);
            let mut buf: Vec<Complex64> = (0..nt)
                .map(|t| {
                    let (s, c) = (TAU * t as f64 / nt as f64).sin_cos();
                    interp::eval2d(f, r * c, r * s)
                })
                .collect();
            // Σ_t f_t e^{+2πi m t/nt} is the unnormalized inverse DFT.
            dft(&mut buf, 1);
            (0..=2 * mmax)
                .map(|i| {
                    let m = i as i64 - mmax as i64;
                    buf[m.rem_euclid(nt as i64) as usize] / nt as f64
                })
                .collect()
        })
        .collect();
    let coeffs = (0..=2 * mmax).map(|i| rows.iter().map(|row| row[i]).collect()).collect();
    Ok(Harmonics { radii, mmax, coeffs })
}

/// `R_α = 2π Σ_m e^{-imα} ∫ r |g_m(r)|² dr`, the autocorrelation of the field
/// with its copy rotated by `α`.
pub fn circular_correlation(g: &Harmonics, alpha: f64) -> Complex64 {
    g.order_energies()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let m = i as f64 - g.mmax as f64;
            Complex64::from_polar(*e, -m * alpha)
        })
        .sum()
}

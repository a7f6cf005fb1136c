//! Bundled invariant checks, one or more per module, sized to finish in
//! seconds at default grids.

use num_complex::Complex64;
use std::f64::consts::PI;
use std::time::Instant;

use crate::field::{sample1d, sample2d, Field1D, Field2D, Grid1D, Grid2D};
use crate::phase_space::{frac_radon, husimi, husimi_via_wt, project, radon_wigner, tomogram_direct, wigner};
use crate::special::hermite_gaussian;
use crate::symplectic::{compose, from_sr, q_forward, q_of_matrix, to_sr, BeamQ, RayMatrix};
use crate::transforms::{cfrft, fresnel_apply, frft, hankel};
use crate::wavelets::{self, c_psi, c_psi_prime, MotherWavelet1D, MotherWaveletC, ScaleGrid};
use crate::Result;

/// Outcome of one check.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub residual: f64,
    pub tol: f64,
    pub seconds: f64,
    /// Set when the check could not be evaluated.
    pub error: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.residual.is_finite() && self.residual <= self.tol
    }
}

type Probe = fn() -> Result<f64>;

const CHECKS: &[(&str, f64, Probe)] = &[
    ("symplectic.sr_round_trip", 1e-12, sr_round_trip),
    ("symplectic.q_law", 1e-10, q_law),
    ("fresnel.group_law", 1e-6, fresnel_group_law),
    ("fresnel.unitarity", 1e-8, fresnel_unitarity),
    ("frft.additivity", 1e-6, frft_additivity),
    ("frft.eigenmodes", 1e-8, frft_eigenmodes),
    ("cfrft.additivity", 1e-6, cfrft_additivity),
    ("hankel.involution", 1e-8, hankel_involution),
    ("wigner.marginals", 1e-7, wigner_marginals),
    ("tomogram.identity", 1e-6, tomogram_identity),
    ("husimi.two_routes", 1e-5, husimi_routes),
    ("frac_radon.quarter_turn", 1e-8, frac_radon_quarter_turn),
    ("wavelets.constants", 1e-6, wavelet_constants),
    ("wavelets.round_trip", 1e-2, wavelet_round_trip),
    ("wavelets.cwt_parseval", 2e-2, cwt_parseval),
    ("wavelets.swt_identity", 1e-12, swt_identity),
];

/// Runs every check, in a fixed order.
pub fn run_all() -> Vec<Check> {
    CHECKS
        .iter()
        .map(|&(name, tol, probe)| {
            let t = Instant::now();
            let (residual, error) = match probe() {
                Ok(r) => (r, None),
                Err(e) => (f64::NAN, Some(e.to_string())),
            };
            Check { name, residual, tol, seconds: t.elapsed().as_secs_f64(), error }
        })
        .collect()
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn probe1d(g: Grid1D) -> Field1D {
    sample1d(g, |x| {
        let env = (-0.5 * (x - 0.4).powi(2)).exp();
        Complex64::new(env * (1.0 - 0.3 * x), 0.2 * env * x)
    })
    .expect("finite samples")
}

fn sr_round_trip() -> Result<f64> {
    let ms = [RayMatrix::new(0.8, 1.1, -0.5, 0.5625)?, RayMatrix::rotation(2.3), RayMatrix::thin_lens(0.7)];
    Ok(ms.iter().map(|m| from_sr(&to_sr(m)).map(|b| b.max_diff(m))).collect::<Result<Vec<_>>>()?.into_iter().fold(0.0, f64::max))
}

fn q_law() -> Result<f64> {
    let m1 = RayMatrix::new(0.8, 1.1, -0.5, 0.5625)?;
    let m2 = RayMatrix::rotation(0.9);
    let lhs = q_of_matrix(&compose(&m2, &m1))?.q;
    let rhs = -q_forward(&m2, BeamQ::new(-q_of_matrix(&m1)?.q))?.q;
    Ok((lhs - rhs).norm())
}

/// Relative distance between two fields, allowing an overall sign.
fn up_to_sign(a: &Field1D, b: &Field1D) -> f64 {
    let neg = b.clone().scale(c(-1.0));
    a.relative_l2(b).min(a.relative_l2(&neg))
}

fn fresnel_group_law() -> Result<f64> {
    let g = Grid1D::default();
    let f = probe1d(g);
    let m1 = RayMatrix::new(0.8, 1.1, -0.5, 0.5625)?;
    let m2 = RayMatrix::new(1.2, 0.7, 0.1, 1.07 / 1.2)?;
    let two = fresnel_apply(&m2, &fresnel_apply(&m1, &f, &g)?, &g)?;
    let one = fresnel_apply(&compose(&m2, &m1), &f, &g)?;
    Ok(up_to_sign(&two, &one))
}

fn fresnel_unitarity() -> Result<f64> {
    let g = Grid1D::default();
    let f = probe1d(g);
    let out = fresnel_apply(&RayMatrix::new(0.8, 1.1, -0.5, 0.5625)?, &f, &g)?;
    Ok((out.norm() - f.norm()).abs())
}

fn frft_additivity() -> Result<f64> {
    let g = Grid1D::default();
    let f = probe1d(g);
    let two = frft(0.7, &frft(0.9, &f, &g)?, &g)?;
    Ok(two.relative_l2(&frft(1.6, &f, &g)?))
}

fn frft_eigenmodes() -> Result<f64> {
    let g = Grid1D::default();
    let mut worst: f64 = 0.0;
    for n in [0usize, 3, 10] {
        let f = sample1d(g, |x| c(hermite_gaussian(n, x).expect("degree in range")))?;
        let out = frft(1.0, &f, &g)?;
        let lam = Complex64::from_polar(1.0, n as f64);
        worst = out.values.iter().zip(&f.values).map(|(a, b)| (a - lam * b).norm()).fold(worst, f64::max);
    }
    Ok(worst)
}

fn cfrft_additivity() -> Result<f64> {
    let g = Grid2D::square(Grid1D::centered(64, 0.2));
    let f = sample2d(g, |x, y| c((-0.5 * ((x - 0.3).powi(2) + y * y)).exp()) * Complex64::new(1.0, 0.2 * y))?;
    let two = cfrft(0.5, &cfrft(0.8, &f, &g)?, &g)?;
    Ok(two.max_abs_diff(&cfrft(1.3, &f, &g)?))
}

fn hankel_involution() -> Result<f64> {
    let r = Grid1D::new(160, 0.0, 0.08)?;
    let u = sample1d(r, |x| c((-0.5 * x * x).exp()))?;
    let back = hankel(0, &hankel(0, &u, &r)?, &r)?;
    Ok(back.max_abs_diff(&u))
}

fn wigner_marginals() -> Result<f64> {
    let g = Grid1D::default();
    let f = sample1d(g, |x| c(hermite_gaussian(1, x).expect("degree in range")))?;
    let w = wigner(&f, &g, &g)?;
    let worst = (0..g.n)
        .map(|i| ((0..g.n).map(|j| w.at(i, j).re).sum::<f64>() * g.dx - f.values[i].norm_sqr()).abs())
        .fold(0.0, f64::max);
    Ok(worst)
}

fn tomogram_identity() -> Result<f64> {
    let g = Grid1D::default();
    let f = sample1d(g, |x| c(hermite_gaussian(1, x).expect("degree in range")))?;
    let w = wigner(&f, &g, &g)?;
    let m = RayMatrix::new(0.8, 1.1, -0.5, 0.5625)?;
    let direct = tomogram_direct(&f, &m, &g)?;
    let route = radon_wigner(&w, m.d, m.b, &g)?;
    Ok(direct.iter().zip(&route).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
}

fn husimi_routes() -> Result<f64> {
    let g = Grid1D::default();
    let f = sample1d(g, |x| c(hermite_gaussian(1, x).expect("degree in range")))?;
    let probe = Grid1D::centered(6, 0.7);
    let h = husimi(&f, 1.3, &probe, &probe)?;
    let mut worst: f64 = 0.0;
    for i in 0..probe.n {
        for j in 0..probe.n {
            worst = worst.max((husimi_via_wt(&f, 1.3, probe.x(i), probe.x(j))? - h.at(i, j).re).abs());
        }
    }
    Ok(worst)
}

fn frac_radon_quarter_turn() -> Result<f64> {
    let g = Grid2D::square(Grid1D::centered(64, 0.2));
    let f = sample2d(g, |x, y| Complex64::new((-0.5 * ((x - 0.5).powi(2) + y * y)).exp(), 0.3 * (-(x * x + (y - 0.4).powi(2))).exp()))?;
    let theta: f64 = 0.7;
    let a = frac_radon(&f, PI / 2.0, &g.x, theta)?;
    let b = project(&f, theta.cos(), theta.sin(), &g.x)?;
    Ok(a.iter().zip(&b).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max))
}

fn wavelet_constants() -> Result<f64> {
    let a = (c_psi(&MotherWavelet1D::mexican_hat())? - PI.sqrt()).abs();
    let b = (c_psi_prime(&MotherWaveletC::new(vec![0.5, 0.5])?)? - 0.5).abs();
    Ok(a.max(b))
}

fn band_pass(g: Grid1D) -> Field1D {
    sample1d(g, |x| c((-(x + 0.4).powi(2) / 4.5).exp() * (3.0 * x).cos())).expect("finite samples")
}

fn wavelet_round_trip() -> Result<f64> {
    let g = Grid1D::default();
    let f = band_pass(g);
    let w = MotherWavelet1D::mexican_hat();
    let scales = ScaleGrid::log_spaced(0.01, 100.0, 96)?;
    let map = wavelets::wt_map(&f, &w, &scales, &g)?;
    Ok(wavelets::wt_inverse(&map, &w, &g)?.relative_l2(&f))
}

fn cwt_parseval() -> Result<f64> {
    let g = Grid2D::square(Grid1D::centered(48, 0.25));
    let f = sample2d(g, |x, y| c((-0.5 * ((x - 0.3).powi(2) + y * y)).exp()))?;
    let w = MotherWaveletC::new(vec![0.5, 0.5])?;
    let map = wavelets::cwt_map(&f, &w, &ScaleGrid::log_spaced(0.01, 100.0, 64)?, 8)?;
    Ok((wavelets::cwt_energy(&map) / (c_psi_prime(&w)? * f.energy() / PI) - 1.0).abs())
}

fn swt_identity() -> Result<f64> {
    let g = Grid2D::square(Grid1D::centered(64, 0.15));
    let f = sample2d(g, |x, y| Complex64::new((-0.5 * (x * x + y * y)).exp(), 0.1 * x))?;
    let w = MotherWaveletC::new(vec![1.0, 3.0, 1.0])?;
    let psi: Field2D = sample2d(g, |x, y| c(w.radial(x.hypot(y))))?;
    let plain: Complex64 = f.values.iter().zip(&psi.values).map(|(a, b)| a * b.conj()).sum::<Complex64>() * g.cell() / PI;
    let zero = Complex64::new(0.0, 0.0);
    let got = wavelets::swt(&f, &w, c(1.0), zero, zero)?;
    Ok((got - plain).norm())
}

//! Scale grids and wavelet-transform maps with their text format.

use num_complex::Complex64;
use std::io::{BufRead, Write};

use crate::error::{domain, Result};
use crate::field::{fmt_f, parse_f64, parse_usize, Grid1D, Lines};
use crate::quad::integrate;

use super::real::MotherWavelet1D;

/// Geometric scale grid `μ_k = mu0 · ratioᵏ`, `k = 0..n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaleGrid {
    pub mu0: f64,
    pub ratio: f64,
    pub n: usize,
}

impl ScaleGrid {
    pub fn new(mu0: f64, ratio: f64, n: usize) -> Result<Self> {
        if n == 0 || !mu0.is_finite() || mu0 == 0.0 || !(ratio > 0.0) || !ratio.is_finite() {
            return domain(format!("bad scale grid: mu0={mu0}, ratio={ratio}, n={n}"));
        }
        Ok(Self { mu0, ratio, n })
    }

    /// `n` scales from `lo` to `hi` inclusive.
    pub fn log_spaced(lo: f64, hi: f64, n: usize) -> Result<Self> {
        if !(lo > 0.0 && hi > lo) || n < 2 {
            return domain(format!("need 0 < lo < hi and n ≥ 2, got {lo}, {hi}, {n}"));
        }
        Self::new(lo, (hi / lo).powf(1.0 / (n - 1) as f64), n)
    }

    pub fn mu(&self, k: usize) -> f64 {
        self.mu0 * self.ratio.powi(k as i32)
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.n).map(|k| self.mu(k)).collect()
    }

    pub fn last(&self) -> f64 {
        self.mu(self.n - 1)
    }

    /// Trapezoid weights for `∫ dμ/μ` on the grid.
    pub fn log_trapezoid(&self) -> Vec<f64> {
        let h = self.ratio.ln();
        (0..self.n).map(|k| if self.n > 1 && (k == 0 || k == self.n - 1) { 0.5 * h } else { h }).collect()
    }
}

/// Wavelet transform sampled on scales × shifts, row-major in scale.
#[derive(Clone, Debug, PartialEq)]
pub struct WTMap {
    pub scales: ScaleGrid,
    pub shifts: Grid1D,
    pub values: Vec<Complex64>,
}

impl WTMap {
    pub fn at(&self, k: usize, j: usize) -> Complex64 {
        self.values[k * self.shifts.n + j]
    }

    pub fn zeros(scales: ScaleGrid, shifts: Grid1D) -> Self {
        Self { scales, shifts, values: vec![Complex64::new(0.0, 0.0); scales.n * shifts.n] }
    }
}

/// Reads `WTMAP <nmu> <ns> <mu0> <mu_ratio> <s0> <ds>` and `nmu·ns` rows.
pub fn read_wtmap(r: impl BufRead) -> Result<WTMap> {
    let mut lines = Lines::new(r);
    let h = lines.header("WTMAP", 6)?;
    let nmu = parse_usize(&lines, &h[0])?;
    let ns = parse_usize(&lines, &h[1])?;
    let scales = ScaleGrid::new(parse_f64(&lines, &h[2])?, parse_f64(&lines, &h[3])?, nmu).or_else(|e| lines.err(e.to_string()))?;
    let shifts = Grid1D::new(ns, parse_f64(&lines, &h[4])?, parse_f64(&lines, &h[5])?).or_else(|e| lines.err(e.to_string()))?;
    let values = lines.complex_rows(nmu * ns)?;
    lines.expect_end()?;
    Ok(WTMap { scales, shifts, values })
}

pub fn write_wtmap(w: &mut impl Write, m: &WTMap) -> Result<()> {
    let (s, g) = (m.scales, m.shifts);
    writeln!(w, "WTMAP {} {} {} {} {} {}", s.n, g.n, fmt_f(s.mu0), fmt_f(s.ratio), fmt_f(g.x0), fmt_f(g.dx))?;
    for v in &m.values {
        writeln!(w, "{} {}", fmt_f(v.re), fmt_f(v.im))?;
    }
    Ok(())
}

/// Largest fraction of `C_ψ` missed by the scale range for any frequency in
/// `[kmin, kmax]`: a frequency `k` sees only `p ∈ [k μ_min, k μ_max]` of the
/// integral `∫ |ψ̂(p)|²/p dp`.
pub fn truncation_bound(scales: &ScaleGrid, w: &MotherWavelet1D, kmin: f64, kmax: f64) -> f64 {
    let top = w.band_edge() + 6.0;
    let dens = |p: f64| w.spectrum(p).norm_sqr() / p;
    let total = integrate(dens, 0.0, top, 1e-12);
    let (lo, hi) = (scales.mu0.abs().min(scales.last().abs()), scales.mu0.abs().max(scales.last().abs()));
    let missed = |k: f64| {
        let a = (k * lo).min(top);
        let b = (k * hi).min(top);
        (integrate(dens, 0.0, a, 1e-12) + integrate(dens, b, top, 1e-12)) / total
    };
    let samples = 33;
    (0..samples)
        .map(|j| kmin * (kmax / kmin).powf(j as f64 / (samples - 1) as f64))
        .map(missed)
        .fold(0.0, f64::max)
}

/// Minimum number of scales for an inversion without a warning.
pub const MIN_SCALES: usize = 64;

/// A warning when the scale grid is too short or too coarse to invert a
/// signal sampled on `g` to 1%.
pub fn coverage_warning(scales: &ScaleGrid, w: &MotherWavelet1D, g: &Grid1D) -> Option<String> {
    let kmin = 2.0 * std::f64::consts::PI / (g.n as f64 * g.dx);
    let kmax = std::f64::consts::PI / g.dx;
    let bound = truncation_bound(scales, w, kmin, kmax);
    if scales.n < MIN_SCALES || bound > 1e-2 {
        Some(format!(
            "scale grid [{:e}, {:e}] with {} scales may truncate the inversion by up to {:.1}% of the energy",
            scales.mu0,
            scales.last(),
            scales.n,
            100.0 * bound
        ))
    } else {
        None
    }
}

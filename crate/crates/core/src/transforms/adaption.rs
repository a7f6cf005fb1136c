//! Realizing a 2D Collins transform as a scaled complex FrFT followed by a
//! residual spherical phase.
//!
//! For `A, B, D > 0` and `α ∈ (0, π/2)` put `L² = tan α`,
//! `K = √(sin 2α / (2AD))`. Then with `F(η) = f(μ₁η)`:
//! `g(s σ) = amplitude · e^{i s²|σ|²/R} · cfrft(α, F)(σ)`.

use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

use crate::error::{domain, Result};
use crate::field::{Field2D, Grid1D, Grid2D};
use crate::symplectic::RayMatrix;

use super::cfrft::cfrft;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdaptionFactors {
    pub alpha: f64,
    /// `μ₁ = √(B/A)/L`: the CFrFT input is `f(μ₁η)`.
    pub input_scale: f64,
    /// `s = √(B/D)/K`: output sample `σ` lands at `η' = sσ`.
    pub output_scale: f64,
    /// `(cos α / A) e^{-iα}`.
    pub amplitude: Complex64,
    /// `R = 2AB/(AD - cos²α)`; infinite when no compensation is needed.
    pub residual_radius: f64,
}

impl AdaptionFactors {
    /// `e^{i|η'|²/R}`, the curvature left over after the CFrFT.
    pub fn residual_phase(&self, rho2: f64) -> Complex64 {
        if self.residual_radius.is_infinite() {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::from_polar(1.0, rho2 / self.residual_radius)
        }
    }

    pub fn needs_compensation(&self) -> bool {
        self.residual_radius.is_finite()
    }
}

pub fn collins_cfrft_factors(m: &RayMatrix, alpha: f64) -> Result<AdaptionFactors> {
    for (name, v) in [("A", m.a), ("B", m.b), ("D", m.d)] {
        if !(v > 0.0) {
            return domain(format!("adaption needs {name} > 0, got {v}"));
        }
    }
    if !(alpha > 0.0 && alpha < FRAC_PI_2) {
        return domain(format!("adaption needs 0 < alpha < pi/2, got {alpha}"));
    }
    let l = alpha.tan().sqrt();
    let k = ((2.0 * alpha).sin() / (2.0 * m.a * m.d)).sqrt();
    let cos2 = alpha.cos().powi(2);
    let den = m.a * m.d - cos2;
    let residual_radius = if den.abs() < 1e-12 { f64::INFINITY } else { 2.0 * m.a * m.b / den };
    Ok(AdaptionFactors {
        alpha,
        input_scale: (m.b / m.a).sqrt() / l,
        output_scale: (m.b / m.d).sqrt() / k,
        amplitude: Complex64::from_polar(alpha.cos() / m.a, -alpha),
        residual_radius,
    })
}

/// The Collins transform of `f` computed through the CFrFT route, sampled on
/// `out`. The input is read on its own samples at the rescaled coordinates,
/// so no interpolation is involved.
pub fn collins_via_cfrft(m: &RayMatrix, alpha: f64, f: &Field2D, out: &Grid2D) -> Result<Field2D> {
    let fac = collins_cfrft_factors(m, alpha)?;
    let shrink = |g: &Grid1D, s: f64| Grid1D { n: g.n, x0: g.x0 / s, dx: g.dx / s };
    // F(u) = f(μ₁u): the same samples on the grid divided by μ₁.
    let big_f = Field2D {
        grid: Grid2D::new(shrink(&f.grid.x, fac.input_scale), shrink(&f.grid.y, fac.input_scale)),
        values: f.values.clone(),
    };
    let s = fac.output_scale;
    let sigma = Grid2D::new(shrink(&out.x, s), shrink(&out.y, s));
    let mut g = cfrft(alpha, &big_f, &sigma)?;
    g.grid = *out;
    for i in 0..out.x.n {
        for j in 0..out.y.n {
            let (x, y) = (out.x.x(i), out.y.x(j));
            let idx = out.idx(i, j);
            g.values[idx] *= fac.amplitude * fac.residual_phase(x * x + y * y);
        }
    }
    Ok(g)
}

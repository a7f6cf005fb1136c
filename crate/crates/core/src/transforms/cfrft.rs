//! Complex fractional Fourier transform on functions of `η = x + iy`.
//!
//! The kernel
//! `(e^{i(α-π/2)}/(2 sin α)) exp[i(|η'|²+|η|²)/(2 tan α) - i(η'*η + η*η')/(2 sin α)]`
//! with measure `d²η/π` factors exactly into the one-dimensional FrFT of
//! order `-α` along each axis, which is how it is applied.

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::field::{Field2D, Grid2D};
use crate::special::hermite2v;

use super::frft::frft_operator_scaled;
use super::operator::apply_separable;

/// Complex FrFT of order `alpha`. Eigenmodes [`mode`]`(m, n)` pick up
/// `e^{-i(m+n)α}`.
pub fn cfrft(alpha: f64, f: &Field2D, out: &Grid2D) -> Result<Field2D> {
    scaled(-alpha, 1.0, 1.0, f, out)
}

/// Scaled complex FrFT with kernel
/// `(e^{i(π/2-α)}/(2μν sin α)) exp{-i(|η'|²/ν² + |η|²/μ²)/(2 tan α) + i(η'*η+η*η')/(2μν sin α)}`.
/// At `μ = ν = 1` it equals `cfrft(-alpha)`.
pub fn scaled_cfrft(alpha: f64, mu: f64, nu: f64, f: &Field2D, out: &Grid2D) -> Result<Field2D> {
    for (name, v) in [("mu", mu), ("nu", nu)] {
        if !(v > 0.0) || !v.is_finite() {
            return domain(format!("{name} must be positive, got {v}"));
        }
    }
    scaled(alpha, mu, nu, f, out)
}

fn scaled(alpha: f64, mu: f64, nu: f64, f: &Field2D, out: &Grid2D) -> Result<Field2D> {
    let ox = frft_operator_scaled(alpha, mu, nu, f.grid.x, out.x);
    let oy = if f.grid.y.same_as(&f.grid.x) && out.y.same_as(&out.x) {
        ox.clone()
    } else {
        frft_operator_scaled(alpha, mu, nu, f.grid.y, out.y)
    };
    apply_separable(f, &ox, &oy)
}

/// Eigenmode `H_{m,n}(-iη*, iη) e^{-|η|²/2}` at `η = x + iy`.
pub fn mode(m: usize, n: usize, x: f64, y: f64) -> Result<Complex64> {
    let eta = Complex64::new(x, y);
    let i = Complex64::i();
    Ok(hermite2v(m, n, -i * eta.conj(), i * eta)? * (-0.5 * eta.norm_sqr()).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{sample2d, Grid1D};

    fn grid() -> Grid2D {
        Grid2D::square(Grid1D::centered(96, 0.16))
    }

    fn probe(g: Grid2D) -> Field2D {
        sample2d(g, |x, y| {
            let env = (-0.5 * ((x - 0.4).powi(2) + (y + 0.2).powi(2))).exp();
            Complex64::new(env * (1.0 + 0.3 * x * y), env * 0.2 * y)
        })
        .unwrap()
    }

    #[test]
    fn zero_order_is_identity() {
        let g = grid();
        let f = probe(g);
        assert!(cfrft(0.0, &f, &g).unwrap().max_abs_diff(&f) < 1e-14);
    }

    #[test]
    fn additivity() {
        let g = grid();
        let f = probe(g);
        let two = cfrft(0.5, &cfrft(0.8, &f, &g).unwrap(), &g).unwrap();
        let one = cfrft(1.3, &f, &g).unwrap();
        assert!(two.max_abs_diff(&one) < 1e-6);
    }

    #[test]
    fn eigenmodes() {
        let g = grid();
        let alpha = 0.7;
        for (m, n) in [(0, 0), (1, 0), (2, 1), (1, 3), (2, 2)] {
            let f = sample2d(g, |x, y| mode(m, n, x, y).unwrap()).unwrap();
            let out = cfrft(alpha, &f, &g).unwrap();
            let lam = Complex64::from_polar(1.0, -((m + n) as f64) * alpha);
            for (a, b) in out.values.iter().zip(&f.values) {
                assert!((a.norm() - b.norm()).abs() < 1e-6);
                assert!((a - lam * b).norm() < 1e-6);
            }
        }
    }

    #[test]
    fn direct_kernel_quadrature() {
        // One output point against the kernel written out in complex form.
        let g = Grid2D::square(Grid1D::centered(64, 0.2));
        let f = probe(g);
        let alpha = 1.1;
        let out = cfrft(alpha, &f, &g).unwrap();
        let (i0, j0) = (37, 25);
        let ep = Complex64::new(g.x.x(i0), g.y.x(j0));
        let pre = Complex64::from_polar(1.0, alpha - std::f64::consts::FRAC_PI_2) / (2.0 * alpha.sin());
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..g.x.n {
            for j in 0..g.y.n {
                let e = Complex64::new(g.x.x(i), g.y.x(j));
                let ph = (ep.norm_sqr() + e.norm_sqr()) / (2.0 * alpha.tan()) - (ep.conj() * e + e.conj() * ep).re / (2.0 * alpha.sin());
                acc += Complex64::from_polar(1.0, ph) * f.at(i, j);
            }
        }
        let want = pre * acc * g.cell() / std::f64::consts::PI;
        assert!((out.at(i0, j0) - want).norm() < 1e-12);
    }

    #[test]
    fn scaled_unit_parameters_reverse_order() {
        let g = grid();
        let f = probe(g);
        let s = scaled_cfrft(0.9, 1.0, 1.0, &f, &g).unwrap();
        let r = cfrft(-0.9, &f, &g).unwrap();
        assert!(s.max_abs_diff(&r) < 1e-10);
        assert!(scaled_cfrft(0.9, -1.0, 1.0, &f, &g).is_err());
    }

    #[test]
    fn input_rescale_shifts_mu() {
        let g = Grid2D::square(Grid1D::centered(128, 0.12));
        let cfac = 0.8;
        let f = probe(g);
        let fc = sample2d(g, |x, y| {
            let (x, y) = (x / cfac, y / cfac);
            let env = (-0.5 * ((x - 0.4).powi(2) + (y + 0.2).powi(2))).exp();
            Complex64::new(env * (1.0 + 0.3 * x * y), env * 0.2 * y)
        })
        .unwrap();
        // ∫K(η'; η/μ) f(η/c) d²η = c² ∫K(η'; cξ/μ) f(ξ) d²ξ, i.e. μ → μ/c up to c²·(μ/c)/μ.
        let (mu, nu) = (1.1, 0.8);
        let lhs = scaled_cfrft(0.6, mu, nu, &fc, &g).unwrap();
        let rhs = scaled_cfrft(0.6, mu / cfac, nu, &f, &g).unwrap().values.iter().map(|v| v * cfac).collect::<Vec<_>>();
        let err = lhs.values.iter().zip(&rhs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(err < 1e-8, "{err}");
    }
}

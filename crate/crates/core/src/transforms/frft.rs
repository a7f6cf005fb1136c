//! Fractional Fourier transforms: the angle-parameterized FrFT and the
//! scaled FrFT with focal parameter `fe`.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_4, PI, TAU};

use crate::error::{domain, Result};
use crate::field::{Field1D, Grid1D};
use crate::symplectic::RayMatrix;

use super::fresnel::{fresnel_operator, split_angle};
use super::operator::Operator1D;

/// `|sin α|` below this switches to the identity or parity limit.
pub const EPS_SIN: f64 = 1e-8;

/// Where an order lands after reduction modulo 2π.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Order {
    Identity,
    Parity,
    /// Kernel `K_a(y, x)` with `a ∈ (0, π)`.
    Direct(f64),
    /// Kernel `K_a(y, -x)`: the order `a + π`.
    Reflected(f64),
}

pub fn reduce_order(alpha: f64) -> Order {
    let a = alpha.rem_euclid(TAU);
    if a < EPS_SIN || TAU - a < EPS_SIN {
        Order::Identity
    } else if (a - PI).abs() < EPS_SIN {
        Order::Parity
    } else if a < PI {
        Order::Direct(a)
    } else {
        Order::Reflected(a - PI)
    }
}

/// `e^{i(π/4 - a/2)} (2π sin a)^{-1/2} exp[-i(x²+y²)/(2 tan a) + ixy/sin a]`
/// for `a ∈ (0, π)`.
#[inline]
fn kernel_principal(a: f64, y: f64, x: f64) -> Complex64 {
    let (s, c) = a.sin_cos();
    let pre = Complex64::from_polar((2.0 * PI * s).sqrt().recip(), FRAC_PI_4 - 0.5 * a);
    pre * Complex64::from_polar(1.0, -(x * x + y * y) * c / (2.0 * s) + x * y / s)
}

/// The FrFT kernel at any non-singular order; `None` at the identity and
/// parity orders, where it degenerates to a delta.
pub fn frft_kernel(alpha: f64, y: f64, x: f64) -> Option<Complex64> {
    match reduce_order(alpha) {
        Order::Direct(a) => Some(kernel_principal(a, y, x)),
        Order::Reflected(a) => Some(kernel_principal(a, y, -x)),
        _ => None,
    }
}

/// FrFT with the arguments rescaled: `K_α(y/ν, x/μ)/√(μν)`. With `μ = ν = 1`
/// this is the plain FrFT operator.
pub(crate) fn frft_operator_scaled(alpha: f64, mu: f64, nu: f64, from: Grid1D, to: Grid1D) -> Operator1D {
    let norm = (mu * nu).sqrt().recip();
    let ratio = mu / nu;
    let amp = Complex64::new(ratio.sqrt(), 0.0);
    match reduce_order(alpha) {
        Order::Identity => Operator1D::local(from, to, move |y| ratio * y, move |_| amp),
        Order::Parity => Operator1D::local(from, to, move |y| -ratio * y, move |_| amp),
        Order::Direct(a) => Operator1D::dense(from, to, move |y, x| norm * kernel_principal(a, y / nu, x / mu)),
        Order::Reflected(a) => Operator1D::dense(from, to, move |y, x| norm * kernel_principal(a, y / nu, -x / mu)),
    }
}

pub fn frft_operator(alpha: f64, from: Grid1D, to: Grid1D) -> Operator1D {
    frft_operator_scaled(alpha, 1.0, 1.0, from, to)
}

/// Fractional Fourier transform of order `alpha` (radians), sampled on `out`.
/// Hermite-Gaussians are eigenfunctions with eigenvalue `e^{inα}`.
///
/// Orders whose kernel aliases on the sampling (near 0 or π) are split as
/// `F_{α-θ} F_θ`, with the intermediate held on the input grid.
pub fn frft(alpha: f64, f: &Field1D, out: &Grid1D) -> Result<Field1D> {
    let degenerate = matches!(reduce_order(alpha), Order::Identity | Order::Parity);
    if !degenerate {
        if let Some(theta) = split_angle(&RayMatrix::rotation(alpha), f, out) {
            let mid = frft_operator(theta, f.grid, f.grid).apply(f)?;
            return frft_operator(alpha - theta, f.grid, *out).apply(&mid);
        }
    }
    frft_operator(alpha, f.grid, *out).apply(f)
}

/// Scaled FrFT: the generalized Fresnel transform of
/// `[cos α, fe sin α; -sin α / fe, cos α]`, i.e. the kernel
/// `(2πi fe sin α)^{-1/2} exp[i(x² + x'²)/(2 fe tan α) - i x' x/(fe sin α)]`.
pub fn scaled_frft(alpha: f64, fe: f64, f: &Field1D, out: &Grid1D) -> Result<Field1D> {
    if !(fe > 0.0) || !fe.is_finite() {
        return domain(format!("focal parameter must be positive, got {fe}"));
    }
    let mut m = RayMatrix::scaled_rotation(alpha, fe);
    if m.b.abs() < EPS_SIN * fe {
        // Snap to the exact limit so the local path is taken.
        m = RayMatrix { a: m.a.signum(), b: 0.0, c: 0.0, d: m.a.signum() };
    }
    fresnel_operator(&m, f.grid, *out).apply(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::sample1d;
    use crate::special::hermite_gaussian;
    use crate::transforms::fresnel::fresnel_apply;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn probe(g: Grid1D) -> Field1D {
        sample1d(g, |x| {
            let env = (-0.5 * (x - 0.5).powi(2)).exp();
            c(env * (1.0 - 0.2 * x), env * 0.3 * (1.3 * x).sin())
        })
        .unwrap()
    }

    #[test]
    fn order_reduction() {
        assert_eq!(reduce_order(0.0), Order::Identity);
        assert_eq!(reduce_order(TAU + 1e-10), Order::Identity);
        assert_eq!(reduce_order(-PI), Order::Parity);
        assert!(matches!(reduce_order(-0.5), Order::Reflected(a) if (a - (PI - 0.5)).abs() < 1e-15));
        assert!(frft_kernel(PI, 0.0, 0.0).is_none());
    }

    #[test]
    fn identity_and_parity() {
        let g = Grid1D::default();
        let f = probe(g);
        assert!(frft(0.0, &f, &g).unwrap().max_abs_diff(&f) < 1e-15);
        let p = frft(PI, &f, &g).unwrap();
        // x_k and -x_k are both nodes on the default grid except the first sample.
        for k in 1..g.n {
            assert!((p.values[k] - f.values[g.n - k]).norm() < 1e-14);
        }
    }

    #[test]
    fn quarter_turn_is_fourier_quadrature() {
        let g = Grid1D::default();
        let f = probe(g);
        let out = frft(PI / 2.0, &f, &g).unwrap();
        for k in (0..g.n).step_by(7) {
            let y = g.x(k);
            let mut acc = c(0.0, 0.0);
            for (j, x) in g.coords().enumerate() {
                acc += Complex64::from_polar(1.0, x * y) * f.values[j];
            }
            let want = acc * g.dx / (2.0 * PI).sqrt();
            assert!((out.values[k] - want).norm() < 1e-8);
        }
    }

    #[test]
    fn hermite_gaussian_eigenvalues() {
        let g = Grid1D::default();
        for &alpha in &[1.0, 2.2, 4.0, -0.9] {
            for n in [0usize, 1, 4, 7, 10] {
                let f = sample1d(g, |x| c(hermite_gaussian(n, x).unwrap(), 0.0)).unwrap();
                let out = frft(alpha, &f, &g).unwrap();
                let lam = Complex64::from_polar(1.0, n as f64 * alpha);
                let err = out.values.iter().zip(&f.values).map(|(a, b)| (a - lam * b).norm()).fold(0.0, f64::max);
                assert!(err < 1e-8, "alpha {alpha} n {n}: {err}");
            }
        }
    }

    #[test]
    fn additivity_across_branches() {
        let g = Grid1D::default();
        let f = probe(g);
        for &(a, b) in &[(0.7, 0.9), (2.0, 1.9), (-1.2, 0.4)] {
            let two = frft(a, &frft(b, &f, &g).unwrap(), &g).unwrap();
            let one = frft(a + b, &f, &g).unwrap();
            assert!(two.relative_l2(&one) < 1e-6, "{a} {b}: {}", two.relative_l2(&one));
        }
    }

    #[test]
    fn scaled_frft_is_fresnel_of_scaled_rotation() {
        let g = Grid1D::default();
        let f = probe(g);
        for &(alpha, fe) in &[(0.8, 1.7), (2.4, 0.6), (PI, 1.3)] {
            let s = scaled_frft(alpha, fe, &f, &g).unwrap();
            let m = RayMatrix::scaled_rotation(alpha, fe);
            let m = if m.b.abs() < 1e-8 { RayMatrix { a: -1.0, b: 0.0, c: 0.0, d: -1.0 } } else { m };
            let r = fresnel_apply(&m, &f, &g).unwrap();
            assert!(s.max_abs_diff(&r) < 1e-10);
        }
        assert!(scaled_frft(0.3, 0.0, &f, &g).is_err());
    }

    #[test]
    fn unit_focal_length_is_reversed_frft() {
        let g = Grid1D::default();
        let f = probe(g);
        for &alpha in &[0.6, 1.9] {
            let s = scaled_frft(alpha, 1.0, &f, &g).unwrap();
            let r = frft(-alpha, &f, &g).unwrap().scale(Complex64::from_polar(1.0, -alpha / 2.0));
            assert!(s.max_abs_diff(&r) < 1e-10);
        }
    }

    #[test]
    fn scaled_gaussian_keeps_shape() {
        let g = Grid1D::default();
        let fe = 1.6;
        let f = sample1d(g, |x| c((-x * x / (2.0 * fe)).exp(), 0.0)).unwrap();
        let out = scaled_frft(0.9, fe, &f, &g).unwrap();
        let k0 = g.n / 2;
        let phase = out.values[k0] / f.values[k0];
        assert!((phase.norm() - 1.0).abs() < 1e-6);
        assert!(out.max_abs_diff(&f.clone().scale(phase)) < 1e-6);
    }
}

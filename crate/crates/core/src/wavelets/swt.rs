//! Wavelet transform with a symplectic-transformed, translated mother
//! wavelet `√(s*) ψ[s(z - κ) - r(z* - κ*)]`, `|s|² - |r|² = 1`.

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::field::Field2D;
use crate::interp::eval2d;

use super::complex::MotherWaveletC;

/// Allowed deviation of `|s|² - |r|²` from one.
pub const SYMPLECTIC_TOL: f64 = 1e-10;

/// A mother wavelet on the complex plane.
pub trait Mother2D: Sync {
    fn eval(&self, z: Complex64) -> Complex64;
}

impl Mother2D for MotherWaveletC {
    fn eval(&self, z: Complex64) -> Complex64 {
        Complex64::new(self.radial(z.norm()), 0.0)
    }
}

/// Sampled mother wavelet, interpolated between samples and zero outside.
impl Mother2D for Field2D {
    fn eval(&self, z: Complex64) -> Complex64 {
        eval2d(self, z.re, z.im)
    }
}

/// Mother wavelet given by a closure.
pub struct FnMother<F>(pub F);

impl<F: Fn(Complex64) -> Complex64 + Sync> Mother2D for FnMother<F> {
    fn eval(&self, z: Complex64) -> Complex64 {
        (self.0)(z)
    }
}

/// `∬ (d²z/π) F(z) [√(s*) ψ(s(z - κ) - r(z* - κ*))]*` over the samples of `F`.
pub fn swt(f: &Field2D, psi: &dyn Mother2D, s: Complex64, r: Complex64, kappa: Complex64) -> Result<Complex64> {
    let det = s.norm_sqr() - r.norm_sqr();
    if (det - 1.0).abs() > SYMPLECTIC_TOL || !det.is_finite() {
        return domain(format!("|s|² - |r|² must be 1, got {det}"));
    }
    let g = f.grid;
    let ny = g.y.n;
    let pre = s.conj().sqrt().conj();
    let acc: Complex64 = (0..g.x.n)
        .into_par_iter()
        .map(|i| {
            let x = g.x.x(i);
            f.values[i * ny..(i + 1) * ny]
                .iter()
                .zip(g.y.coords())
                .map(|(v, y)| {
                    let d = Complex64::new(x, y) - kappa;
                    v * psi.eval(s * d - r * d.conj()).conj()
                })
                .sum::<Complex64>()
        })
        .collect::<Vec<Complex64>>()
        .into_iter()
        .sum();
    Ok(acc * pre * g.cell() / PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{sample2d, Grid1D, Grid2D};

    fn grid() -> Grid2D {
        Grid2D::square(Grid1D::centered(96, 0.1))
    }

    fn signal(z: Complex64) -> Complex64 {
        let a = (-0.5 * ((z.re - 0.4).powi(2) + 1.3 * (z.im + 0.2).powi(2))).exp();
        Complex64::new(a, 0.5 * a * z.re)
    }

    fn mother(z: Complex64) -> Complex64 {
        // Anisotropic, so rotations change it.
        Complex64::new(1.0 - z.re * z.re, 0.2 * z.im) * (-0.5 * (z.re * z.re + 2.0 * z.im * z.im)).exp()
    }

    #[test]
    fn identity_is_plain_overlap() {
        let g = grid();
        let f = sample2d(g, |x, y| signal(Complex64::new(x, y))).unwrap();
        let psi = sample2d(g, |x, y| mother(Complex64::new(x, y))).unwrap();
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let want: Complex64 = f.values.iter().zip(&psi.values).map(|(a, b)| a * b.conj()).sum::<Complex64>() * g.cell() / PI;
        let got = swt(&f, &psi, one, zero, zero).unwrap();
        assert!((got - want).norm() < 1e-12);
        assert!((swt(&f, &FnMother(mother), one, zero, zero).unwrap() - want).norm() < 1e-12);
    }

    #[test]
    fn rotation_by_change_of_variables() {
        // With r = 0, s = e^{iθ} the integral equals the overlap of the mother
        // wavelet with F rotated by -θ, times the conjugate prefactor.
        let g = grid();
        let f = sample2d(g, |x, y| signal(Complex64::new(x, y))).unwrap();
        let psi = sample2d(g, |x, y| mother(Complex64::new(x, y))).unwrap();
        for theta in [0.4f64, 1.3, -2.2] {
            let s = Complex64::from_polar(1.0, theta);
            let rot = sample2d(g, |x, y| signal(Complex64::new(x, y) * s.conj())).unwrap();
            let want: Complex64 = rot.values.iter().zip(&psi.values).map(|(a, b)| a * b.conj()).sum::<Complex64>() * g.cell() / PI;
            let want = want * s.conj().sqrt().conj();
            let got = swt(&f, &FnMother(mother), s, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)).unwrap();
            assert!((got - want).norm() < 1e-8, "{theta}");
            let sampled = swt(&f, &psi, s, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)).unwrap();
            assert!((sampled - want).norm() < 1e-6, "{theta}");
        }
    }

    #[test]
    fn linear_and_checked() {
        let g = grid();
        let f = sample2d(g, |x, y| signal(Complex64::new(x, y))).unwrap();
        let h = sample2d(g, |x, y| Complex64::new(0.0, (-(x * x + y * y)).exp())).unwrap();
        let (a, b) = (Complex64::new(0.3, -1.0), Complex64::new(2.0, 0.5));
        let mix = Field2D { grid: g, values: f.values.iter().zip(&h.values).map(|(u, v)| a * u + b * v).collect() };
        let psi = MotherWaveletC::new(vec![0.5, 0.5]).unwrap();
        let s = Complex64::new(1.2, 0.5);
        let r = Complex64::from_polar((s.norm_sqr() - 1.0).sqrt(), 0.7);
        let k = Complex64::new(0.3, -0.1);
        let lhs = swt(&mix, &psi, s, r, k).unwrap();
        let rhs = a * swt(&f, &psi, s, r, k).unwrap() + b * swt(&h, &psi, s, r, k).unwrap();
        assert!((lhs - rhs).norm() < 1e-12);
        assert!(swt(&f, &psi, Complex64::new(1.1, 0.0), Complex64::new(0.0, 0.0), k).is_err());
    }
}

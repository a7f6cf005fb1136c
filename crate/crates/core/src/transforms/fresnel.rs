//! The generalized Fresnel (linear canonical) transform of an ABCD matrix.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_4, PI};

use crate::error::{Error, Result};
use crate::field::{Field1D, Field2D, Grid1D, Grid2D};
use crate::interp;
use crate::symplectic::{compose, BeamQ, RayMatrix};

use super::operator::{apply_separable, Operator1D};

/// Below this `|B|` the kernel is replaced by its scaling-chirp limit.
pub const EPS_B: f64 = 1e-12;

/// `(2πiB)^{-1/2}` on the principal branch.
pub(crate) fn fresnel_prefactor(b: f64) -> Complex64 {
    let phase = if b > 0.0 { -FRAC_PI_4 } else { FRAC_PI_4 };
    Complex64::from_polar((2.0 * PI * b.abs()).sqrt().recip(), phase)
}

/// `K^M(x2, x1) = (2πiB)^{-1/2} exp[i(A x1² - 2 x2 x1 + D x2²)/(2B)]`.
pub fn fresnel_kernel(m: &RayMatrix, x2: f64, x1: f64) -> Result<Complex64> {
    if m.b.abs() < EPS_B {
        return Err(Error::Singular(format!("|B| = {:e} below {EPS_B:e}; use the scaling limit", m.b.abs())));
    }
    Ok(kernel_unchecked(m, x2, x1))
}

#[inline]
fn kernel_unchecked(m: &RayMatrix, x2: f64, x1: f64) -> Complex64 {
    let phase = (m.a * x1 * x1 - 2.0 * x2 * x1 + m.d * x2 * x2) / (2.0 * m.b);
    fresnel_prefactor(m.b) * Complex64::from_polar(1.0, phase)
}

/// Discretized transform from `from` to `to`. Near-zero `B` gives the local
/// operator `g(x) = A^{-1/2} e^{iCx²/(2A)} f(x/A)` (principal root of `A`).
pub fn fresnel_operator(m: &RayMatrix, from: Grid1D, to: Grid1D) -> Operator1D {
    if m.b.abs() < EPS_B {
        let (a, c) = (m.a, m.c);
        let amp = Complex64::new(a, 0.0).sqrt().inv();
        return Operator1D::local(from, to, move |x| x / a, move |x| amp * Complex64::from_polar(1.0, c * x * x / (2.0 * a)));
    }
    let m = *m;
    Operator1D::dense(from, to, move |y, x| kernel_unchecked(&m, y, x))
}

/// Amplitude, relative to the peak, below which samples count as empty.
const EXTENT_FLOOR: f64 = 1e-12;

/// Phase-space box `(|x|, |p|)` holding every sample of `f`, and of its
/// spectrum, above [`EXTENT_FLOOR`] of the peak.
pub fn extent(f: &Field1D) -> (f64, f64) {
    fn reach(f: &Field1D) -> f64 {
        let peak = f.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        f.values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.norm() > EXTENT_FLOOR * peak)
            .map(|(k, _)| f.grid.x(k).abs())
            .fold(0.0, f64::max)
    }
    (reach(f), reach(&crate::spectral::fourier(f)))
}

/// Whether the quadrature of `m` over a field confined to the box `ext` and
/// sampled with spacing `dx` is free of periodic images on `to`. The
/// integrand's local frequency `(A x1 - x2)/B`, widened by the field's own
/// bandwidth, has to stay below `2π/dx`.
pub fn resolved(m: &RayMatrix, ext: (f64, f64), dx: f64, to: &Grid1D) -> bool {
    if m.b.abs() < EPS_B {
        return true;
    }
    let reach = to.x0.abs().max(to.last().abs());
    (m.a.abs() * ext.0 + reach) / m.b.abs() + ext.1 < 2.0 * PI / dx
}

/// Angle `θ` for which `m = (m R(θ)⁻¹) R(θ)` resolves in both stages, with
/// the intermediate held on `f`'s grid, when `m` itself does not resolve.
/// `None` means the direct quadrature is used.
pub fn split_angle(m: &RayMatrix, f: &Field1D, to: &Grid1D) -> Option<f64> {
    let ext = extent(f);
    let (g, dx) = (f.grid, f.grid.dx);
    if resolved(m, ext, dx, to) {
        return None;
    }
    let reach = g.x0.abs().max(g.last().abs());
    [0.5, -0.5, 0.25, -0.25, 0.75, -0.75].into_iter().map(|t| t * PI).find(|&theta| {
        let (c, s) = (theta.cos().abs(), theta.sin().abs());
        let mid = (c * ext.0 + s * ext.1, s * ext.0 + c * ext.1);
        let turn = RayMatrix::rotation(theta);
        let rest = compose(m, &turn.inverse());
        mid.0 < reach && resolved(&turn, ext, dx, &g) && resolved(&rest, mid, dx, to)
    })
}

/// `g(x2) = ∫ K^M(x2, x1) f(x1) dx1` sampled on `out`.
pub fn fresnel_apply(m: &RayMatrix, f: &Field1D, out: &Grid1D) -> Result<Field1D> {
    fresnel_operator(m, f.grid, *out).apply(f)
}

/// The matrix acting on momentum-space wavefunctions, `[D, -C; -B, A]`.
pub fn momentum_matrix(m: &RayMatrix) -> RayMatrix {
    RayMatrix { a: m.d, b: -m.c, c: -m.b, d: m.a }
}

/// Transform of a momentum-space wavefunction: the kernel with `A↔D`, `B→-C`.
pub fn fresnel_apply_momentum(m: &RayMatrix, fp: &Field1D, out: &Grid1D) -> Result<Field1D> {
    fresnel_apply(&momentum_matrix(m), fp, out)
}

/// Separable two-dimensional transform: the same matrix along both axes.
pub fn collins2d(m: &RayMatrix, f: &Field2D, out: &Grid2D) -> Result<Field2D> {
    let ox = fresnel_operator(m, f.grid.x, out.x);
    let oy = if f.grid.y.same_as(&f.grid.x) && out.y.same_as(&out.x) { ox.clone() } else { fresnel_operator(m, f.grid.y, out.y) };
    apply_separable(f, &ox, &oy)
}

/// Recovers `q` from a field `∝ exp(i x²/(2q))` using samples at `±x`
/// around `center` (a handful of offsets, averaged).
pub fn fit_gaussian_q(f: &Field1D, center: f64) -> Result<BeamQ> {
    let g0 = interp::eval1d(f, center);
    if g0.norm() == 0.0 {
        return Err(Error::Integrity("field vanishes at the fit centre".into()));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let offsets = [1.0, 1.5, 2.0, 2.5, 3.0];
    for k in offsets {
        let x = k * f.grid.dx;
        let r = interp::eval1d(f, center + x) * interp::eval1d(f, center - x) / (g0 * g0);
        acc += Complex64::new(0.0, x * x) / r.ln();
    }
    Ok(BeamQ::new(acc / offsets.len() as f64))
}

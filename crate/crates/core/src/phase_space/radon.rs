//! Radon projections of phase-space distributions, tomograms from Fresnel
//! transforms, and filtered back-projection.

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::field::{Field1D, Field2D, Grid1D, Grid2D, Tomogram};
use crate::spectral::dft;
use crate::symplectic::{compose, RayMatrix};
use crate::transforms::fresnel::split_angle;
use crate::transforms::fresnel_apply;

/// Minimum number of directions accepted by the back-projection.
pub const MIN_ANGLES: usize = 8;

/// `P(x) = ∬ F(q, p) δ(x - ux q - uy p) dq dp` on `xgrid`.
///
/// Computed through the projection-slice theorem: the 2D transform of the
/// samples along the ray `k (ux, uy)` (up to the sampling Nyquist limit) is
/// inverted by a Fourier sum whose period exceeds both the support of `P` and
/// the output window.
pub fn project(f: &Field2D, ux: f64, uy: f64, xgrid: &Grid1D) -> Result<Vec<Complex64>> {
    if !(ux.is_finite() && uy.is_finite()) || ux.abs() + uy.abs() < 1e-14 {
        return domain("projection direction must be non-zero");
    }
    let (gq, gp) = (f.grid.x, f.grid.y);
    let mut kmax = f64::INFINITY;
    if ux != 0.0 {
        kmax = kmax.min(PI / (gq.dx * ux.abs()));
    }
    if uy != 0.0 {
        kmax = kmax.min(PI / (gp.dx * uy.abs()));
    }
    let reach = |g: &Grid1D| g.x0.abs().max(g.last().abs());
    let support = ux.abs() * reach(&gq) + uy.abs() * reach(&gp);
    let period = 2.5 * (support + reach(xgrid)) + 1.0;
    let dk = 2.0 * PI / period;
    let nk = (kmax / dk).ceil() as usize;
    let real = f.values.iter().all(|v| v.im == 0.0);
    let ks: Vec<f64> = if real {
        (0..=nk).map(|m| m as f64 * dk).collect()
    } else {
        (0..=2 * nk).map(|m| (m as f64 - nk as f64) * dk).collect()
    };
    let cell = f.grid.cell();
    let np = gp.n;
    let spectrum: Vec<Complex64> = ks
        .par_iter()
        .map(|&k| {
            let ep: Vec<Complex64> = gp.coords().map(|p| Complex64::from_polar(1.0, -k * uy * p)).collect();
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, q) in gq.coords().enumerate() {
                let row = &f.values[i * np..(i + 1) * np];
                let mut inner = Complex64::new(0.0, 0.0);
                for (a, b) in row.iter().zip(&ep) {
                    inner += a * b;
                }
                acc += inner * Complex64::from_polar(1.0, -k * ux * q);
            }
            acc * cell
        })
        .collect();
    let scale = dk / (2.0 * PI);
    let out = xgrid
        .coords()
        .map(|x| {
            if real {
                let mut acc = spectrum[0].re;
                for (k, s) in ks.iter().zip(&spectrum).skip(1) {
                    acc += 2.0 * (s * Complex64::from_polar(1.0, k * x)).re;
                }
                Complex64::new(acc * scale, 0.0)
            } else {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, s) in ks.iter().zip(&spectrum) {
                    acc += s * Complex64::from_polar(1.0, k * x);
                }
                acc * scale
            }
        })
        .collect();
    Ok(out)
}

/// Projection of a Wigner function for the matrix entries `(D, B)`:
/// `∬ W(q, p) δ(x - Dq + Bp) dq dp`.
pub fn radon_wigner(w: &Field2D, d: f64, b: f64, xgrid: &Grid1D) -> Result<Vec<f64>> {
    Ok(project(w, d, -b, xgrid)?.into_iter().map(|v| v.re).collect())
}

/// `|∫ K^{M⁻¹}(x, x') f(x') dx'|²`, the quadrature distribution measured
/// behind the system `m`.
///
/// Near-imaging systems have chirps too fast for the grid; those are split
/// through a rotation, `M⁻¹ = (M⁻¹ R(θ)⁻¹) R(θ)`, which changes the result at
/// most by a sign that the modulus removes.
pub fn tomogram_direct(f: &Field1D, m: &RayMatrix, xgrid: &Grid1D) -> Result<Vec<f64>> {
    let inv = m.inverse();
    let out = match split_angle(&inv, f, xgrid) {
        Some(theta) => {
            let turn = RayMatrix::rotation(theta);
            let mid = fresnel_apply(&turn, f, &f.grid)?;
            fresnel_apply(&compose(&inv, &turn.inverse()), &mid, xgrid)?
        }
        None => fresnel_apply(&inv, f, xgrid)?,
    };
    Ok(out.values.iter().map(|v| v.norm_sqr()).collect())
}

/// Tomogram of `f` at the unit directions `(cos φ, -sin φ)` for the given
/// angles, i.e. behind the rotations `[cos φ, -sin φ; sin φ, cos φ]`.
pub fn tomogram_from_angles(f: &Field1D, angles: &[f64], xgrid: &Grid1D) -> Result<Tomogram> {
    let mut directions = Vec::with_capacity(angles.len());
    let mut values = Vec::with_capacity(angles.len());
    for &phi in angles {
        let m = RayMatrix::rotation(-phi);
        directions.push((m.d, m.b));
        values.push(tomogram_direct(f, &m, xgrid)?);
    }
    Tomogram::new(*xgrid, directions, values)
}

fn taper(k: f64, nyquist: f64) -> f64 {
    let a = k.abs() / nyquist;
    if a <= 0.9 {
        1.0
    } else if a >= 1.0 {
        0.0
    } else {
        0.5 * (1.0 + (PI * (a - 0.9) / 0.1).cos())
    }
}

/// Ramp-filtered projection `h(x) = (1/2π) ∫ |k| P̂(k) e^{ikx} dk`, returned
/// on a grid eight times finer than the input.
///
/// The ramp is the transform of the sampled band-limited kernel
/// `r(0) = π/(2dx²)`, `r(n·dx) = -2/(π n² dx²)` for odd `n`, zero for even.
fn ramp_filter(row: &[f64], g: &Grid1D) -> (Grid1D, Vec<f64>) {
    const UP: usize = 8;
    let n = row.len();
    let big = (4 * n).next_power_of_two();
    let mut buf = vec![Complex64::new(0.0, 0.0); big];
    for (b, v) in buf.iter_mut().zip(row) {
        *b = Complex64::new(*v, 0.0);
    }
    dft(&mut buf, -1);
    let mut kernel = vec![Complex64::new(0.0, 0.0); big];
    for (m, r) in kernel.iter_mut().enumerate() {
        let off = if m < big / 2 { m as isize } else { m as isize - big as isize };
        let v = if off == 0 {
            PI / (2.0 * g.dx * g.dx)
        } else if off % 2 != 0 {
            -2.0 / (PI * (off * off) as f64 * g.dx * g.dx)
        } else {
            0.0
        };
        *r = Complex64::new(v * g.dx, 0.0);
    }
    dft(&mut kernel, -1);
    let nyq = PI / g.dx;
    let fine = big * UP;
    let mut spec = vec![Complex64::new(0.0, 0.0); fine];
    for (m, v) in buf.iter().enumerate() {
        let signed = if m < big / 2 { m as isize } else { m as isize - big as isize };
        let k = 2.0 * PI * signed as f64 / (big as f64 * g.dx);
        let slot = if signed >= 0 { signed as usize } else { (fine as isize + signed) as usize };
        spec[slot] = v * kernel[m].re * taper(k, nyq);
    }
    dft(&mut spec, 1);
    let out = Grid1D { n: fine, x0: g.x0, dx: g.dx / UP as f64 };
    (out, spec.iter().map(|v| v.re / big as f64).collect())
}

/// Linear interpolation on the periodic filtered buffer, whose tail holds
/// the offsets below `x0`.
fn linear(g: &Grid1D, v: &[f64], x: f64) -> f64 {
    let n = g.n as f64;
    let t = g.index_of(x).rem_euclid(n);
    let i = t.floor() as usize % g.n;
    let f = t - t.floor();
    v[i] * (1.0 - f) + v[(i + 1) % g.n] * f
}

/// Integration weights for the angles reduced modulo π: half the gap to
/// each neighbour, wrapping around.
fn angle_weights(angles: &[f64]) -> Vec<f64> {
    let reduced: Vec<f64> = angles.iter().map(|a| a.rem_euclid(PI)).collect();
    let mut order: Vec<usize> = (0..angles.len()).collect();
    order.sort_by(|&a, &b| reduced[a].total_cmp(&reduced[b]));
    let n = order.len();
    let mut w = vec![0.0; n];
    for (pos, &i) in order.iter().enumerate() {
        let prev = reduced[order[(pos + n - 1) % n]] - if pos == 0 { PI } else { 0.0 };
        let next = reduced[order[(pos + 1) % n]] + if pos == n - 1 { PI } else { 0.0 };
        w[i] = 0.5 * (next - prev);
    }
    w
}

/// Filtered back-projection of projections `rows[j]` (sampled on `xgrid`)
/// taken along `(cos φ_j, sin φ_j)`, onto `out`:
/// `F(q, p) = (1/2π) Σ_j Δφ_j h_j(q cos φ_j + p sin φ_j)`.
pub fn back_project(xgrid: &Grid1D, angles: &[f64], rows: &[Vec<f64>], out: &Grid2D) -> Result<Vec<f64>> {
    if angles.len() < MIN_ANGLES {
        return Err(Error::Insufficient(format!("{} projection angles, need at least {MIN_ANGLES}", angles.len())));
    }
    if rows.len() != angles.len() || rows.iter().any(|r| r.len() != xgrid.n) {
        return Err(Error::Shape("projection rows do not match angles and grid".into()));
    }
    let weights = angle_weights(angles);
    let filtered: Vec<(Grid1D, Vec<f64>)> = rows.par_iter().map(|r| ramp_filter(r, xgrid)).collect();
    let trig: Vec<(f64, f64)> = angles.iter().map(|a| a.sin_cos()).collect();
    let ny = out.y.n;
    let values = (0..out.len())
        .into_par_iter()
        .map(|idx| {
            let (q, p) = (out.x.x(idx / ny), out.y.x(idx % ny));
            let mut acc = 0.0;
            for (j, (g, h)) in filtered.iter().enumerate() {
                let (s, c) = trig[j];
                acc += weights[j] * linear(g, h, q * c + p * s);
            }
            acc / (2.0 * PI)
        })
        .collect();
    Ok(values)
}

/// Reconstructs the Wigner function on `xgrid × xgrid` from its tomogram.
/// Direction `(D, B)` projects along `(cos φ, sin φ) = (D, -B)`.
pub fn inverse_radon(t: &Tomogram) -> Result<Field2D> {
    let mut angles = Vec::with_capacity(t.directions.len());
    for &(d, b) in &t.directions {
        let r = d.hypot(b);
        if (r - 1.0).abs() > 1e-6 {
            return domain(format!("direction ({d}, {b}) is not a unit vector"));
        }
        angles.push((-b).atan2(d));
    }
    let out = Grid2D::square(t.xgrid);
    let v = back_project(&t.xgrid, &angles, &t.values, &out)?;
    Field2D::from_real(out, v)
}

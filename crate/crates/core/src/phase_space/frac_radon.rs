//! Fractional Radon transform in the plane:
//! `∬ f(r) e^{i(|r|² - λ²)/(2 tan α)} δ(λ - ê·r) d²r` with `ê = (cos θ, sin θ)`.

use num_complex::Complex64;
use std::f64::consts::PI;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::field::{fmt_f, parse_f64, parse_usize, Field2D, Grid1D, Grid2D, Lines};

use super::radon::{back_project, project};

/// Minimum number of directions for the inversion.
pub const MIN_FRAC_ANGLES: usize = 64;

/// `|sin α|` below this leaves the order undefined.
const EPS_SIN: f64 = 1e-8;

/// Complex projections of a field, one row per angle.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexProjections {
    pub lgrid: Grid1D,
    pub angles: Vec<f64>,
    pub values: Vec<Vec<Complex64>>,
}

fn cot(alpha: f64) -> Result<f64> {
    let (s, c) = alpha.sin_cos();
    if s.abs() < EPS_SIN {
        return Err(Error::Domain(format!("fractional Radon order {alpha} is a multiple of π")));
    }
    Ok(c / s)
}

fn chirped(f: &Field2D, k: f64) -> Field2D {
    let ny = f.grid.y.n;
    let values = f
        .values
        .iter()
        .enumerate()
        .map(|(idx, v)| {
            let (x, y) = (f.grid.x.x(idx / ny), f.grid.y.x(idx % ny));
            v * Complex64::from_polar(1.0, k * (x * x + y * y))
        })
        .collect();
    Field2D { grid: f.grid, values }
}

/// Fractional Radon projection of `f` along `(cos θ, sin θ)` on `lgrid`.
///
/// The chirp is applied to the field, projected spectrally and removed again
/// in `λ`; at `α = π/2` it is the ordinary projection.
pub fn frac_radon(f: &Field2D, alpha: f64, lgrid: &Grid1D, theta: f64) -> Result<Vec<Complex64>> {
    let k = 0.5 * cot(alpha)?;
    let (s, c) = theta.sin_cos();
    let p = project(&chirped(f, k), c, s, lgrid)?;
    Ok(p.into_iter().zip(lgrid.coords()).map(|(v, l)| v * Complex64::from_polar(1.0, -k * l * l)).collect())
}

/// Projections at every angle in `angles`.
pub fn frac_radon_all(f: &Field2D, alpha: f64, lgrid: &Grid1D, angles: &[f64]) -> Result<ComplexProjections> {
    let values = angles.iter().map(|&t| frac_radon(f, alpha, lgrid, t)).collect::<Result<Vec<_>>>()?;
    Ok(ComplexProjections { lgrid: *lgrid, angles: angles.to_vec(), values })
}

/// Inverts [`frac_radon_all`] over `θ ∈ [0, π)`: the λ-chirp is undone,
/// the real and imaginary parts are back-projected with the ramp filter, and
/// the field chirp is removed.
pub fn frac_radon_inverse(proj: &ComplexProjections, alpha: f64, out: &Grid2D) -> Result<Field2D> {
    if proj.angles.len() < MIN_FRAC_ANGLES {
        return Err(Error::Insufficient(format!(
            "{} projection angles, need at least {MIN_FRAC_ANGLES}",
            proj.angles.len()
        )));
    }
    let k = 0.5 * cot(alpha)?;
    let g = proj.lgrid;
    let unchirped: Vec<Vec<Complex64>> =
        proj.values.iter().map(|row| row.iter().zip(g.coords()).map(|(v, l)| v * Complex64::from_polar(1.0, k * l * l)).collect()).collect();
    let part = |pick: fn(&Complex64) -> f64| -> Vec<Vec<f64>> { unchirped.iter().map(|r| r.iter().map(pick).collect()).collect() };
    let re = back_project(&g, &proj.angles, &part(|v| v.re), out)?;
    let im = back_project(&g, &proj.angles, &part(|v| v.im), out)?;
    let plain = Field2D { grid: *out, values: re.into_iter().zip(im).map(|(a, b)| Complex64::new(a, b)).collect() };
    Ok(chirped(&plain, -k))
}

/// `n` equally spaced angles covering `[0, π)`.
pub fn half_turn(n: usize) -> Vec<f64> {
    (0..n).map(|j| j as f64 * PI / n as f64).collect()
}

/// Reads `FRAD <nangles> <n> <l0> <dl>`, then per angle `ANGLE <θ>` and `n`
/// rows `<re> <im>`.
pub fn read_projections(r: impl BufRead) -> Result<ComplexProjections> {
    let mut lines = Lines::new(r);
    let h = lines.header("FRAD", 4)?;
    let na = parse_usize(&lines, &h[0])?;
    let n = parse_usize(&lines, &h[1])?;
    let lgrid = Grid1D::new(n, parse_f64(&lines, &h[2])?, parse_f64(&lines, &h[3])?).or_else(|e| lines.err(e.to_string()))?;
    let mut angles = Vec::with_capacity(na);
    let mut values = Vec::with_capacity(na);
    for _ in 0..na {
        let h = lines.header("ANGLE", 1)?;
        angles.push(parse_f64(&lines, &h[0])?);
        values.push(lines.complex_rows(n)?);
    }
    lines.expect_end()?;
    Ok(ComplexProjections { lgrid, angles, values })
}

pub fn write_projections(w: &mut impl Write, p: &ComplexProjections) -> Result<()> {
    let g = p.lgrid;
    writeln!(w, "FRAD {} {} {} {}", p.angles.len(), g.n, fmt_f(g.x0), fmt_f(g.dx))?;
    for (t, row) in p.angles.iter().zip(&p.values) {
        writeln!(w, "ANGLE {}", fmt_f(*t))?;
        for v in row {
            writeln!(w, "{} {}", fmt_f(v.re), fmt_f(v.im))?;
        }
    }
    Ok(())
}

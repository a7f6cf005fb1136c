//! Wigner function `W(q, p) = (1/2π) ∫ du e^{ipu} f*(q + u/2) f(q - u/2)`.

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::field::{Field1D, Field2D, Grid1D, Grid2D};
use crate::interp;

/// Imaginary parts above this (relative to the peak) mean the quadrature is broken.
pub const RESIDUE_TOL: f64 = 1e-6;

/// Wigner function of `f` on `qgrid × pgrid` (values stored in the real part).
///
/// The lag integral is sampled at `u = 2k·dx`; for `q` off the field grid
/// the half-offset samples come from interpolation.
pub fn wigner(f: &Field1D, qgrid: &Grid1D, pgrid: &Grid1D) -> Result<Field2D> {
    let g = f.grid;
    let n = g.n as isize;
    let rows: Vec<(Vec<f64>, f64)> = (0..qgrid.n)
        .into_par_iter()
        .map(|i| {
            let q = qgrid.x(i);
            let t = g.index_of(q);
            let on_grid = (t - t.round()).abs() < 1e-9;
            let at = |k: isize| -> Complex64 {
                if on_grid {
                    let j = t.round() as isize + k;
                    if j < 0 || j >= n {
                        Complex64::new(0.0, 0.0)
                    } else {
                        f.values[j as usize]
                    }
                } else {
                    interp::eval1d(f, q + k as f64 * g.dx)
                }
            };
            // Lags beyond twice the grid length see only zeros.
            let kmax = n;
            let pairs: Vec<Complex64> = (-kmax..=kmax).map(|k| at(k).conj() * at(-k)).collect();
            let mut worst = 0.0f64;
            let row = pgrid
                .coords()
                .map(|p| {
                    let step = Complex64::from_polar(1.0, 2.0 * p * g.dx);
                    let mut ph = Complex64::from_polar(1.0, -2.0 * p * g.dx * kmax as f64);
                    let mut acc = Complex64::new(0.0, 0.0);
                    for a in &pairs {
                        acc += ph * a;
                        ph *= step;
                    }
                    let w = acc * g.dx / PI;
                    worst = worst.max(w.im.abs());
                    w.re
                })
                .collect();
            (row, worst)
        })
        .collect();
    let peak = rows.iter().flat_map(|(r, _)| r.iter()).fold(0.0f64, |m, v| m.max(v.abs()));
    let residue = rows.iter().fold(0.0f64, |m, (_, w)| m.max(*w));
    if residue > RESIDUE_TOL * peak.max(1e-300) {
        return Err(Error::Integrity(format!("Wigner imaginary residue {residue:e} exceeds tolerance")));
    }
    let values = rows.into_iter().flat_map(|(r, _)| r.into_iter().map(|v| Complex64::new(v, 0.0))).collect();
    Ok(Field2D { grid: Grid2D::new(*qgrid, *pgrid), values })
}

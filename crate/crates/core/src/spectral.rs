//! Continuous Fourier transforms of sampled fields via the FFT.
//!
//! Convention: `F(p) = (2π)^{-1/2} ∫ f(x) e^{-ipx} dx`, sampled on the
//! reciprocal grid `p_k = (k - n/2) 2π/(n dx)`.

use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;

use crate::field::{Field1D, Field2D, Grid1D, Grid2D};

/// Reciprocal grid of `g`: `n` points, spacing `2π/(n dx)`, centred.
pub fn reciprocal(g: &Grid1D) -> Grid1D {
    let dp = 2.0 * PI / (g.n as f64 * g.dx);
    Grid1D { n: g.n, x0: -((g.n / 2) as f64) * dp, dx: dp }
}

/// In-place forward (`sign = -1`) or inverse (`sign = +1`) unnormalized DFT.
pub fn dft(data: &mut [Complex64], sign: i32) {
    let mut planner = FftPlanner::<f64>::new();
    let fft = if sign < 0 { planner.plan_fft_forward(data.len()) } else { planner.plan_fft_inverse(data.len()) };
    fft.process(data);
}

/// Samples of the unitary Fourier transform on [`reciprocal`] of the grid.
pub fn fourier(f: &Field1D) -> Field1D {
    let g = f.grid;
    let pg = reciprocal(&g);
    let half = (g.n / 2) as f64;
    // p_k x_j = (k - n/2) dp (x0 + j dx); the j-dependent part of the shift is
    // the (-1)^j-type twist exp(i π j n_half 2/n).
    let mut buf: Vec<Complex64> = f
        .values
        .iter()
        .enumerate()
        .map(|(j, v)| v * Complex64::from_polar(1.0, 2.0 * PI * half * j as f64 / g.n as f64))
        .collect();
    dft(&mut buf, -1);
    let scale = g.dx / (2.0 * PI).sqrt();
    let values = buf
        .iter()
        .enumerate()
        .map(|(k, v)| v * scale * Complex64::from_polar(1.0, -pg.x(k) * g.x0))
        .collect();
    Field1D { grid: pg, values }
}

/// Inverse of [`fourier`]: samples of `(2π)^{-1/2} ∫ F(p) e^{ipx} dp` on `xg`,
/// where `xg` must be the grid whose reciprocal is `big_f.grid`.
pub fn inverse_fourier(big_f: &Field1D, xg: &Grid1D) -> Field1D {
    let pg = big_f.grid;
    let half = (xg.n / 2) as f64;
    let mut buf: Vec<Complex64> =
        big_f.values.iter().enumerate().map(|(k, v)| v * Complex64::from_polar(1.0, pg.x(k) * xg.x0)).collect();
    dft(&mut buf, 1);
    let scale = pg.dx / (2.0 * PI).sqrt();
    let values = buf
        .iter()
        .enumerate()
        .map(|(j, v)| v * scale * Complex64::from_polar(1.0, -2.0 * PI * half * j as f64 / xg.n as f64))
        .collect();
    Field1D { grid: *xg, values }
}

/// Two-dimensional unitary transform `(2π)^{-1} ∬ f e^{-i(kx x + ky y)}`.
pub fn fourier2d(f: &Field2D) -> Field2D {
    let g = f.grid;
    let (nx, ny) = (g.x.n, g.y.n);
    let mut vals = f.values.clone();
    let mut rows = Field2D { grid: Grid2D::new(g.x, reciprocal(&g.y)), values: vec![Complex64::new(0.0, 0.0); nx * ny] };
    for i in 0..nx {
        let line = Field1D { grid: g.y, values: vals[i * ny..(i + 1) * ny].to_vec() };
        let t = fourier(&line);
        rows.values[i * ny..(i + 1) * ny].copy_from_slice(&t.values);
    }
    let out_grid = Grid2D::new(reciprocal(&g.x), reciprocal(&g.y));
    for j in 0..ny {
        let col = Field1D { grid: g.x, values: (0..nx).map(|i| rows.values[i * ny + j]).collect() };
        let t = fourier(&col);
        for i in 0..nx {
            vals[i * ny + j] = t.values[i];
        }
    }
    Field2D { grid: out_grid, values: vals }
}

/// Inverse of [`fourier2d`] back onto `xg`.
pub fn inverse_fourier2d(big_f: &Field2D, xg: &Grid2D) -> Field2D {
    let g = big_f.grid;
    let (nx, ny) = (g.x.n, g.y.n);
    let mut vals = big_f.values.clone();
    for i in 0..nx {
        let line = Field1D { grid: g.y, values: vals[i * ny..(i + 1) * ny].to_vec() };
        let t = inverse_fourier(&line, &xg.y);
        vals[i * ny..(i + 1) * ny].copy_from_slice(&t.values);
    }
    for j in 0..ny {
        let col = Field1D { grid: g.x, values: (0..nx).map(|i| vals[i * ny + j]).collect() };
        let t = inverse_fourier(&col, &xg.x);
        for i in 0..nx {
            vals[i * ny + j] = t.values[i];
        }
    }
    Field2D { grid: *xg, values: vals }
}

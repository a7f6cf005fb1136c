//! Local Lagrange interpolation on uniform grids.
//!
//! Samples outside the grid are treated as zero, which is the right
//! extension for the edge-decayed fields every transform works on.

use num_complex::Complex64;

use crate::field::{Field1D, Field2D, Grid1D};

/// Stencil width (polynomial degree 7).
pub const ORDER: usize = 8;

/// First stencil index and the `ORDER` Lagrange weights for fractional index `t`.
#[inline]
pub fn weights(t: f64) -> (isize, [f64; ORDER]) {
    let base = t.floor() as isize - (ORDER as isize / 2 - 1);
    let mut w = [0.0; ORDER];
    let near = t.round();
    if (t - near).abs() < 1e-10 {
        w[ORDER / 2 - 1] = 1.0;
        return (near as isize - (ORDER as isize / 2 - 1), w);
    }
    // Nodes at offsets 0..ORDER relative to base; u is t relative to base.
    let u = t - base as f64;
    let mut full = 1.0;
    for m in 0..ORDER {
        full *= u - m as f64;
    }
    for (k, wk) in w.iter_mut().enumerate() {
        let mut den = 1.0;
        for m in 0..ORDER {
            if m != k {
                den *= k as f64 - m as f64;
            }
        }
        *wk = full / ((u - k as f64) * den);
    }
    (base, w)
}

/// Interpolates `fetch(k)` (any integer `k`) at fractional index `t`.
#[inline]
pub fn eval_with(fetch: impl Fn(isize) -> Complex64, t: f64) -> Complex64 {
    let (base, w) = weights(t);
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, wk) in w.iter().enumerate() {
        if *wk != 0.0 {
            acc += *wk * fetch(base + k as isize);
        }
    }
    acc
}

#[inline]
fn fetch1(values: &[Complex64], k: isize) -> Complex64 {
    if k < 0 || k as usize >= values.len() {
        Complex64::new(0.0, 0.0)
    } else {
        values[k as usize]
    }
}

/// Value of the sampled field at coordinate `x`.
pub fn eval1d(f: &Field1D, x: f64) -> Complex64 {
    let t = f.grid.index_of(x);
    if t < -(ORDER as f64) || t > (f.grid.n + ORDER) as f64 {
        return Complex64::new(0.0, 0.0);
    }
    eval_with(|k| fetch1(&f.values, k), t)
}

/// Value of the sampled field at `(x, y)` by tensor-product interpolation.
pub fn eval2d(f: &Field2D, x: f64, y: f64) -> Complex64 {
    let (gx, gy) = (f.grid.x, f.grid.y);
    let (tx, ty) = (gx.index_of(x), gy.index_of(y));
    let zero = Complex64::new(0.0, 0.0);
    if tx < -(ORDER as f64) || tx > (gx.n + ORDER) as f64 || ty < -(ORDER as f64) || ty > (gy.n + ORDER) as f64 {
        return zero;
    }
    let (bx, wx) = weights(tx);
    let (by, wy) = weights(ty);
    let mut acc = zero;
    for (a, wa) in wx.iter().enumerate() {
        let i = bx + a as isize;
        if *wa == 0.0 || i < 0 || i as usize >= gx.n {
            continue;
        }
        let row = &f.values[i as usize * gy.n..(i as usize + 1) * gy.n];
        let mut inner = zero;
        for (b, wb) in wy.iter().enumerate() {
            if *wb != 0.0 {
                inner += *wb * fetch1(row, by + b as isize);
            }
        }
        acc += *wa * inner;
    }
    acc
}

/// Dense resampling weights: row `k` holds the weights that evaluate a field on
/// `from` at `to.x(k)` mapped through `map`.
pub fn resample_rows(from: &Grid1D, to: &Grid1D, map: impl Fn(f64) -> f64) -> Vec<(isize, [f64; ORDER])> {
    to.coords().map(|x| weights(from.index_of(map(x)))).collect()
}

//! Linear maps between uniform 1D grids, applied by fixed-order summation.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Field1D, Field2D, Grid1D, Grid2D};
use crate::interp::{self, ORDER};

#[derive(Clone, Debug)]
enum Repr {
    /// Row-major `to.n × from.n` weights, quadrature step included.
    Dense(Vec<Complex64>),
    /// Each output is `factor · (local interpolation of the input)`.
    Local { rows: Vec<(isize, [f64; ORDER])>, factor: Vec<Complex64> },
}

/// A discretized integral operator from samples on `from` to samples on `to`.
///
/// Each output sample is reduced serially in input order, so results do not
/// depend on how rows are spread over threads.
#[derive(Clone, Debug)]
pub struct Operator1D {
    pub from: Grid1D,
    pub to: Grid1D,
    repr: Repr,
}

impl Operator1D {
    /// Riemann-sum discretization of `g(y) = ∫ kernel(y, x) f(x) dx`.
    pub fn dense(from: Grid1D, to: Grid1D, kernel: impl Fn(f64, f64) -> Complex64 + Sync) -> Self {
        let w: Vec<Complex64> = (0..to.n)
            .into_par_iter()
            .flat_map_iter(|k| {
                let y = to.x(k);
                let kernel = &kernel;
                (0..from.n).map(move |j| kernel(y, from.x(j)) * from.dx)
            })
            .collect();
        Self { from, to, repr: Repr::Dense(w) }
    }

    /// `g(y) = factor(y) · f(map(y))`, with `f` interpolated between samples.
    pub fn local(from: Grid1D, to: Grid1D, map: impl Fn(f64) -> f64, factor: impl Fn(f64) -> Complex64) -> Self {
        let rows = interp::resample_rows(&from, &to, map);
        let factor = to.coords().map(factor).collect();
        Self { from, to, repr: Repr::Local { rows, factor } }
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.repr, Repr::Dense(_))
    }

    fn row(&self, k: usize, v: &[Complex64]) -> Complex64 {
        match &self.repr {
            Repr::Dense(w) => {
                let n = self.from.n;
                let mut acc = Complex64::new(0.0, 0.0);
                for (a, b) in w[k * n..(k + 1) * n].iter().zip(v) {
                    acc += a * b;
                }
                acc
            }
            Repr::Local { rows, factor } => {
                let (base, w) = rows[k];
                let mut acc = Complex64::new(0.0, 0.0);
                for (m, wm) in w.iter().enumerate() {
                    let i = base + m as isize;
                    if *wm != 0.0 && i >= 0 && (i as usize) < v.len() {
                        acc += *wm * v[i as usize];
                    }
                }
                factor[k] * acc
            }
        }
    }

    /// Applies the operator to raw samples, rows in parallel.
    pub fn apply_values(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.to.n).into_par_iter().map(|k| self.row(k, v)).collect()
    }

    fn apply_serial(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.to.n).map(|k| self.row(k, v)).collect()
    }

    pub fn apply(&self, f: &Field1D) -> Result<Field1D> {
        if !f.grid.same_as(&self.from) {
            return Err(Error::Shape(format!("field grid {:?} does not match operator input {:?}", f.grid, self.from)));
        }
        Ok(Field1D { grid: self.to, values: self.apply_values(&f.values) })
    }

    /// Composition `self ∘ first` as a dense operator (the discrete kernel product).
    pub fn after(&self, first: &Operator1D) -> Result<Operator1D> {
        if !first.to.same_as(&self.from) {
            return Err(Error::Shape("operator grids do not chain".into()));
        }
        let (n_in, n_mid) = (first.from.n, first.to.n);
        // Column j of the product is self applied to column j of `first`.
        let cols: Vec<Vec<Complex64>> = (0..n_in)
            .into_par_iter()
            .map(|j| {
                let mut e = vec![Complex64::new(0.0, 0.0); n_in];
                e[j] = Complex64::new(1.0, 0.0);
                let mid = first.apply_serial(&e);
                debug_assert_eq!(mid.len(), n_mid);
                self.apply_serial(&mid)
            })
            .collect();
        let mut w = vec![Complex64::new(0.0, 0.0); self.to.n * n_in];
        for (j, col) in cols.iter().enumerate() {
            for (k, v) in col.iter().enumerate() {
                w[k * n_in + j] = *v;
            }
        }
        Ok(Operator1D { from: first.from, to: self.to, repr: Repr::Dense(w) })
    }
}

/// Applies `ox` along the first axis and `oy` along the second.
pub fn apply_separable(f: &Field2D, ox: &Operator1D, oy: &Operator1D) -> Result<Field2D> {
    if !f.grid.x.same_as(&ox.from) || !f.grid.y.same_as(&oy.from) {
        return Err(Error::Shape("field grid does not match separable operator".into()));
    }
    let (nx, ny) = (f.grid.x.n, f.grid.y.n);
    let (mx, my) = (ox.to.n, oy.to.n);
    // Along y first (contiguous rows), then along x.
    let rows: Vec<Vec<Complex64>> =
        (0..nx).into_par_iter().map(|i| oy.apply_serial(&f.values[i * ny..(i + 1) * ny])).collect();
    let cols: Vec<Vec<Complex64>> = (0..my)
        .into_par_iter()
        .map(|j| {
            let col: Vec<Complex64> = rows.iter().map(|r| r[j]).collect();
            ox.apply_serial(&col)
        })
        .collect();
    let mut values = vec![Complex64::new(0.0, 0.0); mx * my];
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            values[i * my + j] = *v;
        }
    }
    Ok(Field2D { grid: Grid2D::new(ox.to, oy.to), values })
}

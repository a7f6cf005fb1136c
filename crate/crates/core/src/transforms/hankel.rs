//! Hankel transform `u2(r2) = ∫_0^∞ J_m(r1 r2) u(r1) r1 dr1` by product
//! integration: `u` is interpolated between samples and the Bessel factor is
//! evaluated exactly at Gauss-Legendre nodes inside each grid interval.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::field::{Field1D, Grid1D};
use crate::interp;
use crate::quad::gauss_legendre;
use crate::special::bessel_j;

const NODES_PER_CELL: usize = 8;

fn check_radial(g: &Grid1D, what: &str) -> Result<()> {
    if g.x0.abs() > 1e-12 {
        return domain(format!("{what} radial grid must start at r = 0, starts at {}", g.x0));
    }
    Ok(())
}

/// Order-`order` Hankel transform of the radial samples `u` (grid starting at
/// `r = 0`), evaluated on the radial grid `out`.
///
/// Samples at negative radius are taken from the parity `u(-r) = (-1)^m u(r)`
/// and `u` is zero past the last sample.
pub fn hankel(order: usize, u: &Field1D, out: &Grid1D) -> Result<Field1D> {
    check_radial(&u.grid, "input")?;
    check_radial(out, "output")?;
    let g = u.grid;
    let sign = if order % 2 == 0 { 1.0 } else { -1.0 };
    let fetch = |k: isize| -> Complex64 {
        if k < 0 {
            let j = (-k) as usize;
            if j < g.n {
                sign * u.values[j]
            } else {
                Complex64::new(0.0, 0.0)
            }
        } else if (k as usize) < g.n {
            u.values[k as usize]
        } else {
            Complex64::new(0.0, 0.0)
        }
    };
    let (xs, ws) = gauss_legendre(NODES_PER_CELL);
    let half = 0.5 * g.dx;
    // (r, weight·r·u(r)) at every node.
    let mut nodes = Vec::with_capacity((g.n - 1) * NODES_PER_CELL);
    for cell in 0..g.n.saturating_sub(1) {
        let mid = (cell as f64 + 0.5) * g.dx;
        for (x, w) in xs.iter().zip(&ws) {
            let r = mid + half * x;
            let t = cell as f64 + 0.5 + 0.5 * x;
            nodes.push((r, w * half * r * interp::eval_with(fetch, t)));
        }
    }
    let values = (0..out.n)
        .into_par_iter()
        .map(|k| {
            let r2 = out.x(k);
            let mut acc = Complex64::new(0.0, 0.0);
            for &(r, c) in &nodes {
                acc += bessel_j(order, r * r2) * c;
            }
            acc
        })
        .collect();
    Ok(Field1D { grid: *out, values })
}

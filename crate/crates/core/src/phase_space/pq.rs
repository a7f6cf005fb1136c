//! The p-q integration transform `f(x, y) = ∬ (dp dq/π) e^{2i(p-x)(q-y)} h(p, q)`
//! and its inverse.
//!
//! Fields over `(p, q)` store `p` along the first grid axis and `q` along the
//! second; transformed fields store `x` first and `y` second.

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_4, PI};

use crate::error::{domain, Result};
use crate::field::{Field2D, Grid1D, Grid2D};

fn point(h: &Field2D, x: f64, y: f64, sign: f64) -> Complex64 {
    let (gp, gq) = (h.grid.x, h.grid.y);
    let nq = gq.n;
    let eq: Vec<Complex64> = gq.coords().map(|q| Complex64::from_polar(1.0, -2.0 * sign * x * q)).collect();
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, p) in gp.coords().enumerate() {
        let row = &h.values[i * nq..(i + 1) * nq];
        let mut inner = Complex64::new(0.0, 0.0);
        for ((v, e), q) in row.iter().zip(&eq).zip(gq.coords()) {
            inner += v * e * Complex64::from_polar(1.0, 2.0 * sign * p * q);
        }
        acc += inner * Complex64::from_polar(1.0, -2.0 * sign * p * y);
    }
    acc * Complex64::from_polar(1.0, 2.0 * sign * x * y) * h.grid.cell() / PI
}

/// `∬ (dp dq/π) e^{2i(p-x)(q-y)} h(p, q)` at one point.
pub fn pq_transform(h: &Field2D, x: f64, y: f64) -> Complex64 {
    point(h, x, y, 1.0)
}

/// `∬ (dx dy/π) e^{-2i(p-x)(q-y)} f(x, y)` at one point.
pub fn pq_inverse(f: &Field2D, p: f64, q: f64) -> Complex64 {
    point(f, p, q, -1.0)
}

fn on_grid(h: &Field2D, out: &Grid2D, sign: f64) -> Field2D {
    let (ga, gb) = (h.grid.x, h.grid.y);
    let nb = gb.n;
    let cell = h.grid.cell();
    // a_row(a, u) = Σ_b h(a, b) e^{2i s a b} e^{-2i s u b} for every output u.
    let partial: Vec<Vec<Complex64>> = (0..ga.n)
        .into_par_iter()
        .map(|i| {
            let a = ga.x(i);
            let row: Vec<Complex64> =
                h.values[i * nb..(i + 1) * nb].iter().zip(gb.coords()).map(|(v, b)| v * Complex64::from_polar(1.0, 2.0 * sign * a * b)).collect();
            out.x
                .coords()
                .map(|u| row.iter().zip(gb.coords()).map(|(v, b)| v * Complex64::from_polar(1.0, -2.0 * sign * u * b)).sum())
                .collect()
        })
        .collect();
    let ny = out.y.n;
    let values = (0..out.len())
        .into_par_iter()
        .map(|idx| {
            let (k, u, v) = (idx / ny, out.x.x(idx / ny), out.y.x(idx % ny));
            let s: Complex64 = ga.coords().zip(&partial).map(|(a, r)| r[k] * Complex64::from_polar(1.0, -2.0 * sign * a * v)).sum();
            s * Complex64::from_polar(1.0, 2.0 * sign * u * v) * cell / PI
        })
        .collect();
    Field2D { grid: *out, values }
}

/// [`pq_transform`] on every point of `out` (`x` first, `y` second).
pub fn pq_transform_grid(h: &Field2D, out: &Grid2D) -> Field2D {
    on_grid(h, out, 1.0)
}

/// [`pq_inverse`] on every point of `out` (`p` first, `q` second).
pub fn pq_inverse_grid(f: &Field2D, out: &Grid2D) -> Field2D {
    on_grid(f, out, -1.0)
}

/// Tukey window on `[-L, L]`: flat over the inner half, cosine roll-off
/// outside it.
fn tukey(u: f64, half: f64) -> f64 {
    let a = u.abs() / half;
    if a <= 0.5 {
        1.0
    } else if a >= 1.0 {
        0.0
    } else {
        0.5 * (1.0 + (PI * (a - 0.5) / 0.5).cos())
    }
}

/// Probe points for the chirplet check.
pub const CHIRPLET_PROBES: [f64; 5] = [-1.0, -0.5, 0.0, 0.5, 1.0];

/// Sample spacing of the chirplet window.
pub const CHIRPLET_DX: f64 = 0.05;

/// The p-q transform of the windowed chirplet `exp[i t (p² + q²)]`,
/// `t = tan(π/4 - α/2)`, times `2/(ie^{-iα} + 1)`, against the FrFT-kernel
/// form `e^{-i(π/4 - α/2)} (sin α)^{-1/2} exp[i(x² + y²)/(2 tan α) - ixy/sin α] e^{ixy}`.
///
/// The chirplet is sampled with spacing [`CHIRPLET_DX`] on `n × n` points
/// and tapered by a Tukey window; returns the largest residual over the probe
/// points `x, y ∈` [`CHIRPLET_PROBES`].
pub fn chirplet_to_frft_check(alpha: f64, n: usize) -> Result<f64> {
    if !(alpha > 0.2 && alpha < PI - 0.2) {
        return domain(format!("alpha must lie in (0.2, π - 0.2), got {alpha}"));
    }
    let (lhs, rhs) = chirplet_sides(alpha, n, &CHIRPLET_PROBES)?;
    Ok(lhs.iter().zip(&rhs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
}

/// Both sides of the chirplet identity on the probe points (row-major over
/// `x`, then `y`).
pub fn chirplet_sides(alpha: f64, n: usize, probes: &[f64]) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    if n < 16 {
        return domain(format!("window needs at least 16 samples, got {n}"));
    }
    let g = Grid1D::centered(n, CHIRPLET_DX);
    let half = -g.x0;
    let t = (FRAC_PI_4 - 0.5 * alpha).tan();
    let grid = Grid2D::square(g);
    let values = (0..grid.len())
        .map(|idx| {
            let (p, q) = (g.x(idx / n), g.x(idx % n));
            Complex64::from_polar(tukey(p, half) * tukey(q, half), t * (p * p + q * q))
        })
        .collect();
    let h = Field2D { grid, values };
    let i = Complex64::i();
    let pre = 2.0 / (i * Complex64::from_polar(1.0, -alpha) + 1.0);
    let (s, c) = alpha.sin_cos();
    let rpre = Complex64::from_polar(s.sqrt().recip(), -(FRAC_PI_4 - 0.5 * alpha));
    let mut lhs = Vec::with_capacity(probes.len() * probes.len());
    let mut rhs = Vec::with_capacity(lhs.capacity());
    for &x in probes {
        for &y in probes {
            lhs.push(pre * pq_transform(&h, x, y));
            rhs.push(rpre * Complex64::from_polar(1.0, (x * x + y * y) * c / (2.0 * s) - x * y / s + x * y));
        }
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::sample2d;

    fn gaussian(g: Grid2D, lam: f64) -> Field2D {
        sample2d(g, |p, q| Complex64::new((-lam * (p * p + q * q)).exp(), 0.0)).unwrap()
    }

    fn closed_form(lam: f64, x: f64, y: f64) -> Complex64 {
        let d = lam * lam + 1.0;
        Complex64::new(-lam * (x * x + y * y) / d, 2.0 * lam * lam * x * y / d).exp() / d.sqrt()
    }

    #[test]
    fn gaussian_closed_form() {
        let g = Grid2D::square(Grid1D::centered(96, 0.15));
        for lam in [0.5, 1.0, 2.0] {
            let h = gaussian(g, lam);
            for &(x, y) in &[(0.0, 0.0), (0.7, -0.3), (-1.2, 1.5)] {
                assert!((pq_transform(&h, x, y) - closed_form(lam, x, y)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn grid_matches_pointwise() {
        let g = Grid2D::new(Grid1D::centered(40, 0.25), Grid1D::centered(36, 0.3));
        let h = sample2d(g, |p, q| Complex64::new((-0.5 * (p * p + q * q)).exp() * (1.0 + 0.3 * p), 0.2 * q * (-(p * p + q * q)).exp())).unwrap();
        let out = Grid2D::new(Grid1D::centered(12, 0.4), Grid1D::centered(10, 0.35));
        let f = pq_transform_grid(&h, &out);
        let b = pq_inverse_grid(&h, &out);
        for i in 0..out.x.n {
            for j in 0..out.y.n {
                let (x, y) = (out.x.x(i), out.y.x(j));
                assert!((f.at(i, j) - pq_transform(&h, x, y)).norm() < 1e-12);
                assert!((b.at(i, j) - pq_inverse(&h, x, y)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn round_trip_and_parseval() {
        let g = Grid2D::square(Grid1D::centered(128, 0.1));
        let h = sample2d(g, |p, q| {
            let e = (-0.5 * ((p - 0.3).powi(2) + (q + 0.2).powi(2))).exp();
            Complex64::new(e * (1.0 + 0.2 * p * q), 0.3 * e * q)
        })
        .unwrap();
        let f = pq_transform_grid(&h, &g);
        let back = pq_inverse_grid(&f, &g);
        for i in (40..88).step_by(3) {
            for j in (40..88).step_by(3) {
                assert!((back.at(i, j) - h.at(i, j)).norm() < 1e-5);
            }
        }
        let ph = h.energy() / PI;
        let pf = f.energy() / PI;
        assert!((ph - pf).abs() < 1e-5, "{ph} {pf}");
    }

    #[test]
    fn windowed_unit_is_delta_basis() {
        // At α = π/2 the chirplet is the constant 1 and the prefactor is 1.
        let (lhs, _) = chirplet_sides(PI / 2.0, 256, &[0.0, 0.5]).unwrap();
        for v in lhs {
            assert!((v - 1.0).norm() < 1e-3, "{v}");
        }
    }

    #[test]
    fn chirplet_identity() {
        let r = chirplet_to_frft_check(PI / 2.0, 256).unwrap();
        assert!(r <= 5e-3, "{r}");
        for alpha in [0.6, 1.1, 2.3] {
            let small = chirplet_to_frft_check(alpha, 256).unwrap();
            let big = chirplet_to_frft_check(alpha, 512).unwrap();
            assert!(big < small, "{alpha}: {small} -> {big}");
        }
        let (lhs, rhs) = chirplet_sides(1.1, 256, &[0.0]).unwrap();
        assert!((lhs[0] - rhs[0]).norm() < 5e-3);
        assert!(chirplet_to_frft_check(0.1, 256).is_err());
        assert!(chirplet_to_frft_check(PI - 0.1, 256).is_err());
    }
}

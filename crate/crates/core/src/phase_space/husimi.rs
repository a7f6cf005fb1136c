//! Husimi distributions: Gaussian smoothing of the Wigner function, and the
//! same quantity as a squared wavelet transform with a Gaussian.

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::field::{Field1D, Field2D, Grid1D, Grid2D};
use crate::special::{hermite_gaussians, hermite_gaussians_complex};

use super::wigner::wigner;

/// Highest Hermite-Gaussian degree used to continue `f` off the real axis.
pub const EXPANSION_DEGREE: usize = 24;
/// Largest acceptable `‖f - Σ c_n ψ_n‖` for that continuation.
pub const EXPANSION_TOL: f64 = 1e-8;

fn check_kappa(kappa: f64) -> Result<()> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return domain(format!("kappa must be positive, got {kappa}"));
    }
    Ok(())
}

/// `F_h(q, p) = ∬ W(q', p') exp[-κ(q' - q)² - (p' - p)²/κ] dq' dp'`.
///
/// `W` is sampled on the field grid in `q'` and over one full period of the
/// discrete Wigner sum in `p'`, so both smoothing sums are Riemann sums of
/// the continuum integral.
pub fn husimi(f: &Field1D, kappa: f64, qgrid: &Grid1D, pgrid: &Grid1D) -> Result<Field2D> {
    check_kappa(kappa)?;
    let g = f.grid;
    let dp = PI / (g.n as f64 * g.dx);
    let pw = Grid1D::centered(g.n, dp);
    let w = wigner(f, &g, &pw)?;
    let np = pgrid.n;
    // Smooth along p' for every q' row.
    let rows: Vec<Vec<f64>> = (0..g.n)
        .into_par_iter()
        .map(|i| {
            let row = &w.values[i * pw.n..(i + 1) * pw.n];
            pgrid
                .coords()
                .map(|p| row.iter().zip(pw.coords()).map(|(v, pp)| v.re * (-(pp - p).powi(2) / kappa).exp()).sum::<f64>() * dp)
                .collect()
        })
        .collect();
    let values = (0..qgrid.n * np)
        .into_par_iter()
        .map(|idx| {
            let (q, j) = (qgrid.x(idx / np), idx % np);
            let s: f64 = g.coords().zip(&rows).map(|(qq, r)| (-kappa * (qq - q).powi(2)).exp() * r[j]).sum();
            Complex64::new(s * g.dx, 0.0)
        })
        .collect();
    Ok(Field2D { grid: Grid2D::new(*qgrid, *pgrid), values })
}

/// Hermite-Gaussian coefficients `c_n = ∫ ψ_n f dx` up to the expansion
/// degree, after checking that they reproduce `f`.
fn expansion(f: &Field1D) -> Result<Vec<Complex64>> {
    let g = f.grid;
    let basis: Vec<Vec<f64>> = g.coords().map(|x| hermite_gaussians(EXPANSION_DEGREE, x)).collect();
    let mut c = vec![Complex64::new(0.0, 0.0); EXPANSION_DEGREE + 1];
    for (b, v) in basis.iter().zip(&f.values) {
        for (cn, psi) in c.iter_mut().zip(b) {
            *cn += v * psi;
        }
    }
    for cn in &mut c {
        *cn *= g.dx;
    }
    let mut resid = 0.0;
    for (b, v) in basis.iter().zip(&f.values) {
        let approx: Complex64 = c.iter().zip(b).map(|(cn, psi)| cn * psi).sum();
        resid += (v - approx).norm_sqr();
    }
    let resid = (resid * g.dx).sqrt();
    if resid > EXPANSION_TOL {
        return Err(Error::Integrity(format!(
            "degree-{EXPANSION_DEGREE} Hermite-Gaussian expansion leaves residual {resid:e}"
        )));
    }
    Ok(c)
}

/// Husimi value at `(q, p)` as `½ (e^{-p²/κ}/√(πκ)) |∫ f*((x - s)/μ) e^{-x²/2} dx|²`
/// with `s = -(κq + ip)/√κ` and `μ = √κ`.
///
/// The shift is complex, so `f*` is continued through its Hermite-Gaussian
/// expansion. The leading ½ makes the value agree with [`husimi`].
pub fn husimi_via_wt(f: &Field1D, kappa: f64, q: f64, p: f64) -> Result<f64> {
    check_kappa(kappa)?;
    let c = expansion(f)?;
    let mu = kappa.sqrt();
    let s = Complex64::new(-kappa * q, -p) / mu;
    // The integrand is a Gaussian in x centred near Re(s)/(1 + μ²); the
    // trapezoid rule on a wide window is spectrally accurate for it.
    let centre = s.re / (1.0 + mu * mu);
    let half = 14.0 * mu.max(1.0);
    let n = 4096;
    let h = 2.0 * half / n as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..=n {
        let x = centre - half + k as f64 * h;
        let psi = hermite_gaussians_complex(EXPANSION_DEGREE, (Complex64::new(x, 0.0) - s) / mu);
        let fstar: Complex64 = c.iter().zip(&psi).map(|(cn, v)| cn.conj() * v).sum();
        let w = if k == 0 || k == n { 0.5 } else { 1.0 };
        acc += fstar * (w * (-0.5 * x * x).exp());
    }
    acc *= h;
    Ok(0.5 * (-p * p / kappa).exp() / (PI * kappa).sqrt() * acc.norm_sqr())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::sample1d;
    use crate::special::hermite_gaussian;

    fn state(g: Grid1D, c: &[f64]) -> Field1D {
        sample1d(g, |x| {
            let v: f64 = c.iter().enumerate().map(|(n, a)| a * hermite_gaussian(n, x).unwrap()).sum();
            Complex64::new(v, 0.0)
        })
        .unwrap()
    }

    #[test]
    fn vacuum_closed_form() {
        let g = Grid1D::default();
        let probe = Grid1D::centered(24, 0.4);
        let h = husimi(&state(g, &[1.0]), 1.0, &probe, &probe).unwrap();
        for i in 0..probe.n {
            for j in 0..probe.n {
                let (q, p) = (probe.x(i), probe.x(j));
                assert!((h.at(i, j).re - 0.5 * (-(q * q + p * p) / 2.0).exp()).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn nonnegative_for_fock_states() {
        let g = Grid1D::default();
        let probe = Grid1D::centered(32, 0.3);
        for n in 0..4 {
            let mut c = vec![0.0; n + 1];
            c[n] = 1.0;
            let h = husimi(&state(g, &c), 0.7, &probe, &probe).unwrap();
            assert!(h.values.iter().all(|v| v.re >= -1e-9));
        }
    }

    #[test]
    fn variance_growth_law() {
        // Normalized by its total π, the Husimi q-variance is σ_W² + 1/(2κ).
        let g = Grid1D::default();
        let f = state(g, &[0.6, 0.8]);
        let q0: f64 = g.coords().zip(&f.values).map(|(x, v)| x * v.norm_sqr()).sum::<f64>() * g.dx;
        let var_w: f64 = g.coords().zip(&f.values).map(|(x, v)| (x - q0).powi(2) * v.norm_sqr()).sum::<f64>() * g.dx;
        let probe = Grid1D::centered(160, 0.1);
        for kappa in [0.5, 1.0, 3.0] {
            let h = husimi(&f, kappa, &probe, &probe).unwrap();
            let cell = probe.dx * probe.dx;
            let total: f64 = h.values.iter().map(|v| v.re).sum::<f64>() * cell;
            assert!((total - PI).abs() < 1e-6, "{total}");
            let mut mean = 0.0;
            let mut second = 0.0;
            for i in 0..probe.n {
                let row: f64 = (0..probe.n).map(|j| h.at(i, j).re).sum::<f64>() * cell / total;
                mean += probe.x(i) * row;
                second += probe.x(i).powi(2) * row;
            }
            let var = second - mean * mean;
            assert!((var - var_w - 0.5 / kappa).abs() < 1e-6, "{kappa}: {var} vs {}", var_w + 0.5 / kappa);
        }
    }

    #[test]
    fn wavelet_route_matches_smoothing() {
        let g = Grid1D::default();
        let probe = Grid1D::centered(16, 0.5);
        let r = 0.5f64.sqrt();
        for c in [vec![1.0], vec![0.0, 1.0], vec![r, r]] {
            let f = state(g, &c);
            for kappa in [1.0, 2.0] {
                let h = husimi(&f, kappa, &probe, &probe).unwrap();
                for i in 0..probe.n {
                    for j in 0..probe.n {
                        let v = husimi_via_wt(&f, kappa, probe.x(i), probe.x(j)).unwrap();
                        assert!((v - h.at(i, j).re).abs() < 1e-5, "{c:?} {kappa}");
                    }
                }
            }
        }
    }

    #[test]
    fn vacuum_origin_is_half() {
        let g = Grid1D::default();
        let v = husimi_via_wt(&state(g, &[1.0]), 1.0, 0.0, 0.0).unwrap();
        assert!((v - 0.5).abs() < 1e-10);
    }

    #[test]
    fn rejects_bad_input() {
        let g = Grid1D::default();
        let f = state(g, &[1.0]);
        assert!(husimi(&f, 0.0, &g, &g).is_err());
        assert!(husimi_via_wt(&f, -1.0, 0.0, 0.0).is_err());
        let rough = sample1d(g, |x| Complex64::new(if x.abs() < 1.0 { 1.0 } else { 0.0 }, 0.0)).unwrap();
        assert!(matches!(husimi_via_wt(&rough, 1.0, 0.0, 0.0), Err(Error::Integrity(_))));
    }
}

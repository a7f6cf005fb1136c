//! Real wavelet transform with mother wavelets built from Fock coefficients:
//! `ψ(x) = Σ g_n √(n!) ψ_n(x)` for the state `Σ g_n a†ⁿ|0⟩`.

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::field::{Field1D, Grid1D};
use crate::quad::{gauss_legendre, integrate};
use crate::spectral::dft;
use crate::special::{hermite_gaussians, MAX_DEGREE};

use super::map::{ScaleGrid, WTMap};

/// Relative size of the admissibility sum accepted as zero.
pub const ADMISSIBILITY_TOL: f64 = 1e-12;

/// Mother wavelet given by its Fock coefficients `g_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct MotherWavelet1D {
    g: Vec<f64>,
    /// `g_n √(n!)`, the Hermite-Gaussian weights.
    weights: Vec<f64>,
}

fn sqrt_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n);
    let mut acc = 1.0f64;
    for k in 0..n {
        if k > 0 {
            acc *= (k as f64).sqrt();
        }
        out.push(acc);
    }
    out
}

impl MotherWavelet1D {
    /// Checks admissibility `Σ_m g_{2m} (2m-1)!! = 0`.
    pub fn new(g: Vec<f64>) -> Result<Self> {
        let w = Self::unchecked(g)?;
        let (alg, scale) = w.admissibility_sum();
        if alg.abs() > ADMISSIBILITY_TOL * scale.max(1.0) {
            return domain(format!("coefficients are not admissible: Σ g_2m (2m-1)!! = {alg:e}"));
        }
        Ok(w)
    }

    /// Builds the wavelet without the admissibility check, for inspecting
    /// candidate coefficient sets.
    pub fn unchecked(g: Vec<f64>) -> Result<Self> {
        if g.is_empty() || g.len() > MAX_DEGREE + 1 {
            return domain(format!("need 1..={} coefficients, got {}", MAX_DEGREE + 1, g.len()));
        }
        if g.iter().any(|v| !v.is_finite()) {
            return domain("coefficients must be finite");
        }
        let weights = g.iter().zip(sqrt_factorials(g.len())).map(|(a, s)| a * s).collect();
        Ok(Self { g, weights })
    }

    /// The Mexican hat `π^{-1/4} e^{-x²/2}(1 - x²)`, coefficients `(½, 0, -½)`.
    pub fn mexican_hat() -> Self {
        Self::new(vec![0.5, 0.0, -0.5]).expect("admissible")
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.g
    }

    pub fn degree(&self) -> usize {
        self.g.len() - 1
    }

    /// `Σ g_{2m}(2m-1)!!` and the sum of the magnitudes of its terms.
    fn admissibility_sum(&self) -> (f64, f64) {
        let mut df = 1.0;
        let (mut sum, mut scale) = (0.0, 0.0);
        for (m, g) in self.g.iter().step_by(2).enumerate() {
            if m > 0 {
                df *= (2 * m - 1) as f64;
            }
            sum += g * df;
            scale += (g * df).abs();
        }
        (sum, scale)
    }

    pub fn is_admissible(&self) -> bool {
        let (a, s) = self.admissibility_sum();
        a.abs() <= ADMISSIBILITY_TOL * s.max(1.0)
    }

    /// `‖ψ‖₂ = (Σ g_n² n!)^{1/2}`.
    pub fn norm(&self) -> f64 {
        self.weights.iter().map(|w| w * w).sum::<f64>().sqrt()
    }

    /// Unitary Fourier transform `ψ̂(p) = Σ g_n √(n!) (-i)ⁿ ψ_n(p)`.
    pub fn spectrum(&self, p: f64) -> Complex64 {
        let modes = hermite_gaussians(self.degree(), p);
        let mut re = 0.0;
        let mut im = 0.0;
        for (n, (w, m)) in self.weights.iter().zip(&modes).enumerate() {
            match n % 4 {
                0 => re += w * m,
                1 => im -= w * m,
                2 => re -= w * m,
                _ => im += w * m,
            }
        }
        Complex64::new(re, im)
    }

    /// Beyond this `|p|` the spectrum is below `e^{-18}` of its scale.
    pub fn band_edge(&self) -> f64 {
        (2.0 * self.degree() as f64 + 1.0).sqrt() + 6.0
    }

    /// Half-width in `x` outside which the wavelet is negligible.
    pub fn support(&self) -> f64 {
        self.band_edge() + 2.0
    }
}

pub fn wavelet_eval(w: &MotherWavelet1D, x: f64) -> f64 {
    hermite_gaussians(w.degree(), x).iter().zip(&w.weights).map(|(m, c)| m * c).sum()
}

/// `(Σ g_{2m}(2m-1)!!, ∫ψ dx)`; the integral is a Riemann sum on the default grid.
pub fn admissibility_residual(w: &MotherWavelet1D) -> (f64, f64) {
    let g = Grid1D::default();
    let numeric = g.coords().map(|x| wavelet_eval(w, x)).sum::<f64>() * g.dx;
    (w.admissibility_sum().0, numeric)
}

/// `C_ψ = 2π ∫_0^∞ |ψ̂(p)|²/p dp`.
pub fn c_psi(w: &MotherWavelet1D) -> Result<f64> {
    if !w.is_admissible() {
        return domain("C_psi diverges: wavelet is not admissible");
    }
    Ok(2.0 * PI * integrate(|p| w.spectrum(p).norm_sqr() / p, 0.0, w.band_edge() + 6.0, 1e-14))
}

fn check_mu(mu: f64) -> Result<()> {
    if mu == 0.0 || !mu.is_finite() {
        return domain(format!("scale must be non-zero and finite, got {mu}"));
    }
    Ok(())
}

/// Whether a Riemann sum over the field samples resolves the dilated wavelet.
fn resolved(w: &MotherWavelet1D, mu: f64, dx: f64) -> bool {
    mu.abs() * PI / dx >= w.band_edge()
}

/// `|μ|^{-1/2} ∫ f(x) ψ*((x - s)/μ) dx`.
///
/// Scales too small for the sampling are evaluated from the band-limited
/// spectrum of the samples instead of the Riemann sum.
pub fn wt(f: &Field1D, w: &MotherWavelet1D, mu: f64, s: f64) -> Result<Complex64> {
    check_mu(mu)?;
    let g = f.grid;
    if resolved(w, mu, g.dx) {
        let acc: Complex64 = g.coords().zip(&f.values).map(|(x, v)| v * wavelet_eval(w, (x - s) / mu)).sum();
        return Ok(acc * g.dx / mu.abs().sqrt());
    }
    Ok(wt_spectral(f, w, mu, s))
}

/// `√|μ| ∫_{-π/dx}^{π/dx} f̂(p) ψ̂*(μp) e^{ips} dp` with the sample spectrum
/// `f̂(p) = (dx/√2π) Σ f_j e^{-ipx_j}`.
fn wt_spectral(f: &Field1D, w: &MotherWavelet1D, mu: f64, s: f64) -> Complex64 {
    let g = f.grid;
    let (xs, ws) = gauss_legendre(8);
    let edge = PI / g.dx;
    let panels = 2 * g.n;
    let h = 2.0 * edge / panels as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..panels {
        let mid = -edge + (k as f64 + 0.5) * h;
        for (x, wt) in xs.iter().zip(&ws) {
            let p = mid + 0.5 * h * x;
            let step = Complex64::from_polar(1.0, -p * g.dx);
            let mut e = Complex64::from_polar(1.0, -p * g.x0);
            let mut fh = Complex64::new(0.0, 0.0);
            for v in &f.values {
                fh += v * e;
                e *= step;
            }
            acc += fh * w.spectrum(mu * p).conj() * Complex64::from_polar(0.5 * h * wt, p * s);
        }
    }
    acc * g.dx / (2.0 * PI).sqrt() * mu.abs().sqrt()
}

/// `IDFT(DFT(v) · filt(p))/big` of `v` zero-padded to `big`, with `p` the
/// signed angular frequency of each bin; the Nyquist bin takes the even part.
fn periodic_filter(v: &[Complex64], dx: f64, big: usize, filt: impl Fn(f64) -> Complex64) -> Vec<Complex64> {
    let mut buf = vec![Complex64::new(0.0, 0.0); big];
    buf[..v.len()].copy_from_slice(v);
    dft(&mut buf, -1);
    let dp = 2.0 * PI / (big as f64 * dx);
    for (m, b) in buf.iter_mut().enumerate() {
        let h = if m == big / 2 {
            let p = m as f64 * dp;
            0.5 * (filt(p) + filt(-p))
        } else {
            let signed = if m < big / 2 { m as f64 } else { m as f64 - big as f64 };
            filt(signed * dp)
        };
        *b *= h / big as f64;
    }
    dft(&mut buf, 1);
    buf
}

/// `W(μ, x0 + j dx)` for every `j` of a periodic length-`big` sequence,
/// through the sample spectrum.
fn wt_row_fft(f: &Field1D, w: &MotherWavelet1D, mu: f64, big: usize) -> Vec<Complex64> {
    let scale = mu.abs().sqrt() * (2.0 * PI).sqrt();
    periodic_filter(&f.values, f.grid.dx, big, |p| w.spectrum(mu * p).conj() * scale)
}

/// `Σ_k` of shifts expressed as whole field samples, if they line up.
fn aligned_offsets(f: &Grid1D, shifts: &Grid1D) -> Option<(isize, isize)> {
    let ratio = shifts.dx / f.dx;
    let start = (shifts.x0 - f.x0) / f.dx;
    let (r, s) = (ratio.round(), start.round());
    ((ratio - r).abs() < 1e-9 && r >= 1.0 && (start - s).abs() < 1e-9).then_some((s as isize, r as isize))
}

/// The wavelet transform on every `(μ, s)` of the scale and shift grids,
/// divided by `‖ψ‖₂` so that differently scaled mother wavelets compare
/// directly. Shifts that line up with the samples take one FFT per scale.
pub fn wt_map(f: &Field1D, w: &MotherWavelet1D, scales: &ScaleGrid, shifts: &Grid1D) -> Result<WTMap> {
    let g = f.grid;
    let inv_norm = 1.0 / w.norm();
    let aligned = aligned_offsets(&g, shifts);
    let rows: Vec<Result<Vec<Complex64>>> = scales
        .values()
        .into_par_iter()
        .map(|mu| -> Result<Vec<Complex64>> {
            check_mu(mu)?;
            match aligned {
                Some((start, step)) => {
                    let reach = (mu.abs() * w.support() / g.dx).ceil() as usize;
                    let span = g.n.max((start + step * shifts.n as isize).unsigned_abs()) + start.unsigned_abs();
                    let big = (span + 2 * reach + g.n + 16).next_power_of_two();
                    let row = wt_row_fft(f, w, mu, big);
                    Ok((0..shifts.n)
                        .map(|k| {
                            let j = (start + step * k as isize).rem_euclid(big as isize) as usize;
                            row[j] * inv_norm
                        })
                        .collect())
                }
                _ => shifts.coords().map(|s| wt(f, w, mu, s).map(|v| v * inv_norm)).collect(),
            }
        })
        .collect();
    let mut values = Vec::with_capacity(scales.n * shifts.n);
    for r in rows {
        values.extend(r?);
    }
    Ok(WTMap { scales: *scales, shifts: *shifts, values })
}

/// Reconstruction `f(x) = (1/C_ψ) ∫_0^∞ dμ/μ^{5/2} ∫ ds ψ((x - s)/μ) W(μ, s)`
/// from a map made by [`wt_map`] (whose `1/‖ψ‖₂` is undone here).
///
/// For a real mother wavelet the negative-scale half of the integral equals
/// the positive half, so only `μ > 0` is needed. The `μ` integral is the
/// trapezoid rule in `ln μ` over the map's scales.
pub fn wt_inverse(map: &WTMap, w: &MotherWavelet1D, out: &Grid1D) -> Result<Field1D> {
    let c = c_psi(w)?;
    if map.scales.values().iter().any(|&m| m <= 0.0) {
        return domain("inversion needs positive scales");
    }
    let weights = map.scales.log_trapezoid();
    let mus = map.scales.values();
    let ns = map.shifts.n;
    let scale = w.norm() / c;
    let Some((start, step)) = aligned_offsets(&map.shifts, out) else {
        let values = out
            .coords()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|x| {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, (&mu, &lw)) in mus.iter().zip(&weights).enumerate() {
                    let row = &map.values[k * ns..(k + 1) * ns];
                    let inner: Complex64 = map.shifts.coords().zip(row).map(|(s, v)| v * wavelet_eval(w, (x - s) / mu)).sum();
                    acc += inner * (lw * map.shifts.dx / mu.powf(1.5));
                }
                acc * scale
            })
            .collect();
        return Ok(Field1D { grid: *out, values });
    };
    // ∫ ds ψ((x - s)/μ) W(s) as a band-limited convolution on the shift grid.
    let ds = map.shifts.dx;
    let reach = start.unsigned_abs() + step.unsigned_abs() * out.n;
    let rows: Vec<Vec<Complex64>> = mus
        .par_iter()
        .zip(&weights)
        .enumerate()
        .map(|(k, (&mu, &lw))| {
            let tail = (mu * w.support() / ds).ceil() as usize;
            let big = (ns + reach + 2 * tail + 16).next_power_of_two();
            let factor = (2.0 * PI).sqrt() * mu * lw / mu.powf(1.5);
            let conv = periodic_filter(&map.values[k * ns..(k + 1) * ns], ds, big, |p| w.spectrum(mu * p) * factor);
            (0..out.n).map(|m| conv[(start + step * m as isize).rem_euclid(big as isize) as usize]).collect()
        })
        .collect();
    let values = (0..out.n).map(|m| rows.iter().map(|r| r[m]).sum::<Complex64>() * scale).collect();
    Ok(Field1D { grid: *out, values })
}

/// `∫_{-∞}^{∞} dμ/μ² ∫ ds |W|²` from a positive-scale map; for a real mother
/// wavelet the negative half doubles the positive one. Parseval makes this
/// `2 C_ψ ‖f‖²`.
pub fn wt_energy(map: &WTMap, w: &MotherWavelet1D) -> f64 {
    let ns = map.shifts.n;
    let n2 = w.norm().powi(2);
    let sum: f64 = map
        .scales
        .values()
        .iter()
        .zip(map.scales.log_trapezoid())
        .enumerate()
        .map(|(k, (mu, lw))| lw / mu * map.values[k * ns..(k + 1) * ns].iter().map(|v| v.norm_sqr()).sum::<f64>())
        .sum();
    2.0 * sum * map.shifts.dx * n2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::sample1d;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn closed_forms() {
        let mh = MotherWavelet1D::mexican_hat();
        assert!((wavelet_eval(&mh, 0.0) - PI.powf(-0.25)).abs() < 1e-15);
        assert!(wavelet_eval(&mh, 1.0).abs() < 1e-15 && wavelet_eval(&mh, -1.0).abs() < 1e-15);
        let w2 = MotherWavelet1D::new(vec![-2.0, 0.0, -1.0, 0.0, 1.0]).unwrap();
        let w3 = MotherWavelet1D::new(vec![1.0, 0.0, 2.0, 0.0, 4.0, 0.0, -1.0]).unwrap();
        for k in -40..=40 {
            let x = k as f64 * 0.1;
            let env = PI.powf(-0.25) * (-0.5 * x * x).exp();
            assert!((wavelet_eval(&mh, x) - env * (1.0 - x * x)).abs() < 1e-12);
            assert!((wavelet_eval(&w2, x) - 2.0 * env * (2.0 * x.powi(4) - 7.0 * x * x + 1.0)).abs() < 1e-10);
            let p3 = -8.0 * x.powi(6) + 76.0 * x.powi(4) - 134.0 * x * x + 26.0;
            assert!((wavelet_eval(&w3, x) - env * p3).abs() < 1e-10);
        }
    }

    #[test]
    fn admissibility() {
        let (a, n) = admissibility_residual(&MotherWavelet1D::mexican_hat());
        assert_eq!(a, 0.0);
        assert!(n.abs() < 1e-10);
        let w3 = MotherWavelet1D::new(vec![1.0, 0.0, 2.0, 0.0, 4.0, 0.0, -1.0]).unwrap();
        assert_eq!(admissibility_residual(&w3).0, 0.0);
        let one = MotherWavelet1D::unchecked(vec![1.0]).unwrap();
        assert_eq!(admissibility_residual(&one).0, 1.0);
        assert!(MotherWavelet1D::new(vec![1.0]).is_err());
        assert!(c_psi(&one).is_err());
    }

    #[test]
    fn spectrum_of_mexican_hat() {
        let mh = MotherWavelet1D::mexican_hat();
        for k in 0..30 {
            let p = k as f64 * 0.2;
            let want = PI.powf(-0.25) * p * p * (-0.5 * p * p).exp();
            assert!((mh.spectrum(p) - c(want)).norm() < 1e-14);
        }
    }

    #[test]
    fn c_psi_values() {
        let mh = MotherWavelet1D::mexican_hat();
        let c1 = c_psi(&mh).unwrap();
        assert!((c1 - PI.sqrt()).abs() < 1e-6);
        let doubled = MotherWavelet1D::new(vec![1.0, 0.0, -1.0]).unwrap();
        assert!((c_psi(&doubled).unwrap() - 4.0 * c1).abs() < 1e-10);
        // Log-scale parameterization of the same integral.
        let w2 = MotherWavelet1D::new(vec![-2.0, 0.0, -1.0, 0.0, 1.0]).unwrap();
        let log_form = 2.0 * PI * integrate(|u| w2.spectrum(u.exp()).norm_sqr(), -20.0, (w2.band_edge() + 6.0).ln(), 1e-14);
        assert!((c_psi(&w2).unwrap() - log_form).abs() < 1e-8);
    }

    #[test]
    fn c_psi_against_dense_quadrature() {
        // Spectrum from a direct Riemann-sum Fourier transform of the samples.
        let w2 = MotherWavelet1D::new(vec![-2.0, 0.0, -1.0, 0.0, 1.0]).unwrap();
        let g = Grid1D::centered(1024, 0.03);
        let psi: Vec<f64> = g.coords().map(|x| wavelet_eval(&w2, x)).collect();
        let dp = 0.002;
        let mut acc = 0.0;
        for k in 1..6000 {
            let p = k as f64 * dp;
            let ft: Complex64 = g.coords().zip(&psi).map(|(x, v)| v * Complex64::from_polar(1.0, -p * x)).sum::<Complex64>() * g.dx / (2.0 * PI).sqrt();
            acc += ft.norm_sqr() / p;
        }
        let dense = 2.0 * PI * acc * dp;
        assert!((c_psi(&w2).unwrap() - dense).abs() < 1e-6, "{dense}");
    }

    #[test]
    fn matched_filter_and_zero_mean() {
        let g = Grid1D::default();
        let mh = MotherWavelet1D::mexican_hat();
        let s0 = 1.3;
        let f = sample1d(g, |x| c(wavelet_eval(&mh, x - s0))).unwrap();
        let (best, _) = g.coords().map(|s| (s, wt(&f, &mh, 1.0, s).unwrap().norm())).fold((0.0, 0.0), |a, b| if b.1 > a.1 { b } else { a });
        assert!((best - s0).abs() <= g.dx);
        let flat = sample1d(g, |_| c(1.0)).unwrap();
        assert!(wt(&flat, &mh, 0.7, 0.0).unwrap().norm() < 1e-6);
        assert!(wt(&f, &mh, 0.0, 0.0).is_err());
    }

    #[test]
    fn linear() {
        let g = Grid1D::default();
        let mh = MotherWavelet1D::mexican_hat();
        let f = sample1d(g, |x| c((-x * x).exp())).unwrap();
        let h = sample1d(g, |x| Complex64::new(0.0, (-(x - 1.0).powi(2)).exp())).unwrap();
        let (a, b) = (Complex64::new(0.5, 2.0), Complex64::new(-1.5, 0.25));
        let mix = Field1D { grid: g, values: f.values.iter().zip(&h.values).map(|(u, v)| a * u + b * v).collect() };
        for (mu, s) in [(0.8, 0.2), (0.05, 0.0), (3.0, -1.0)] {
            let lhs = wt(&mix, &mh, mu, s).unwrap();
            let rhs = a * wt(&f, &mh, mu, s).unwrap() + b * wt(&h, &mh, mu, s).unwrap();
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn small_scales_agree_across_paths() {
        let g = Grid1D::default();
        let mh = MotherWavelet1D::mexican_hat();
        let f = sample1d(g, |x| c((-0.5 * x * x).exp() * (2.0 * x).cos())).unwrap();
        let mu = 1.01 * mh.band_edge() * g.dx / PI;
        for s in [-0.5, 0.0, 0.35] {
            let direct = wt(&f, &mh, mu, s).unwrap();
            let spectral = wt_spectral(&f, &mh, mu, s);
            assert!((direct - spectral).norm() < 1e-7, "{}", (direct - spectral).norm());
        }
    }

    #[test]
    fn map_matches_pointwise() {
        let g = Grid1D::default();
        let mh = MotherWavelet1D::mexican_hat();
        let f = sample1d(g, |x| Complex64::new((-0.3 * x * x).exp() * (1.5 * x).cos(), 0.1 * (-x * x).exp())).unwrap();
        let scales = ScaleGrid::log_spaced(0.02, 20.0, 9).unwrap();
        for shifts in [Grid1D::new(40, -4.0, 0.2).unwrap(), Grid1D::new(7, -1.03, 0.37).unwrap()] {
            let m = wt_map(&f, &mh, &scales, &shifts).unwrap();
            for (k, mu) in scales.values().into_iter().enumerate() {
                for (j, s) in shifts.coords().enumerate() {
                    let want = wt(&f, &mh, mu, s).unwrap() / mh.norm();
                    assert!((m.at(k, j) - want).norm() < 1e-9, "{mu} {s}");
                }
            }
        }
        let z = wt_map(&Field1D::zeros(g), &mh, &scales, &g).unwrap();
        assert!(z.values.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn quoted_normalizations_are_inverse_norms() {
        let mh = MotherWavelet1D::mexican_hat();
        let w2 = MotherWavelet1D::new(vec![-2.0, 0.0, -1.0, 0.0, 1.0]).unwrap();
        assert!((1.0 / mh.norm() - 2.0 / 3f64.sqrt()).abs() < 1e-14);
        assert!((1.0 / w2.norm() - 1.0 / 30f64.sqrt()).abs() < 1e-14);
    }

    fn maxima_along_scale(w: &MotherWavelet1D) -> usize {
        let g = Grid1D::centered(1024, 0.05);
        let f = sample1d(g, |x| c((PI * x).cos())).unwrap();
        let scales = ScaleGrid::log_spaced(0.15, 3.0, 120).unwrap();
        let at_zero = Grid1D::new(2, 0.0, 0.05).unwrap();
        let m = wt_map(&f, w, &scales, &at_zero).unwrap();
        let col: Vec<f64> = (0..scales.n).map(|k| m.at(k, 0).norm()).collect();
        (1..col.len() - 1).filter(|&k| col[k] > col[k - 1] && col[k] > col[k + 1]).count()
    }

    #[test]
    fn cosine_ridges() {
        assert_eq!(maxima_along_scale(&MotherWavelet1D::mexican_hat()), 1);
        assert_eq!(maxima_along_scale(&MotherWavelet1D::new(vec![-2.0, 0.0, -1.0, 0.0, 1.0]).unwrap()), 2);
    }

    fn band_pass(g: Grid1D, k0: f64, x0: f64) -> Field1D {
        sample1d(g, |x| c((-(x - x0).powi(2) / (2.0 * 1.5 * 1.5)).exp() * (k0 * x).cos())).unwrap()
    }

    fn energy_error(range: (f64, f64)) -> f64 {
        let g = Grid1D::default();
        let mh = MotherWavelet1D::mexican_hat();
        let f = band_pass(g, 3.0, 0.5);
        let scales = ScaleGrid::log_spaced(range.0, range.1, 160).unwrap();
        let m = wt_map(&f, &mh, &scales, &g).unwrap();
        let want = 2.0 * c_psi(&mh).unwrap() * f.norm().powi(2);
        (wt_energy(&m, &mh) / want - 1.0).abs()
    }

    #[test]
    fn parseval_and_truncation_order() {
        let e1 = energy_error((0.1, 10.0));
        let e2 = energy_error((0.01, 100.0));
        assert!(e2 < 1e-2, "{e2}");
        assert!(e2 <= 0.5 * e1, "{e1} {e2}");
    }

    #[test]
    fn inverse_round_trip() {
        let g = Grid1D::default();
        let f = band_pass(g, 3.0, -0.4);
        let scales = ScaleGrid::log_spaced(0.01, 100.0, 96).unwrap();
        for w in [MotherWavelet1D::mexican_hat(), MotherWavelet1D::new(vec![-2.0, 0.0, -1.0, 0.0, 1.0]).unwrap()] {
            let m = wt_map(&f, &w, &scales, &g).unwrap();
            let back = wt_inverse(&m, &w, &g).unwrap();
            assert!(back.relative_l2(&f) < 1e-2, "{}", back.relative_l2(&f));
        }
        let zero = WTMap::zeros(scales, g);
        let mh = MotherWavelet1D::mexican_hat();
        assert!(wt_inverse(&zero, &mh, &g).unwrap().values.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn off_diagonal_resolution_vanishes() {
        // ∫ dμ/μ³ ∫ ds ψ((x - s)/μ) ψ((x' - s)/μ) over μ ∈ [1e-2, 1e2].
        let mh = MotherWavelet1D::mexican_hat();
        let kernel = |x: f64, xp: f64| {
            integrate(
                |u| {
                    let mu = u.exp();
                    let half = mu * mh.support();
                    let inner = integrate(|s| wavelet_eval(&mh, (x - s) / mu) * wavelet_eval(&mh, (xp - s) / mu), x.min(xp) - half, x.max(xp) + half, 1e-12);
                    inner / (mu * mu)
                },
                0.01f64.ln(),
                100f64.ln(),
                1e-10,
            )
        };
        let diag = kernel(0.3, 0.3);
        for d in [1.0, 2.5, 4.0] {
            let off = kernel(0.3, 0.3 + d);
            assert!(off.abs() <= 1e-3 * diag, "{d}: {off} vs {diag}");
        }
    }

    #[test]
    fn inverse_paths_agree() {
        let g = Grid1D::default();
        let mh = MotherWavelet1D::mexican_hat();
        let f = band_pass(g, 1.0, 0.0);
        let scales = ScaleGrid::log_spaced(0.5, 5.0, 12).unwrap();
        let m = wt_map(&f, &mh, &scales, &g).unwrap();
        let aligned = Grid1D::new(20, -2.0, 0.2).unwrap();
        let fast = wt_inverse(&m, &mh, &aligned).unwrap();
        // Offsetting by a tiny fraction of a sample forces the direct sums.
        let off = Grid1D::new(20, -2.0 + 1e-7, 0.2).unwrap();
        let slow = wt_inverse(&m, &mh, &off).unwrap();
        assert!(fast.max_abs_diff(&slow) < 1e-6, "{}", fast.max_abs_diff(&slow));
    }
}

//! Complex wavelet transform in the plane with circular Laguerre-Gaussian
//! mother wavelets `ψ(η) = e^{-|η|²/2} Σ n! K_n L_n(|η|²)`.
//!
//! A point `η = x + iy` of the plane is the sample `(x, y)` of a [`Field2D`];
//! the measure is `d²η/π`.

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;
use std::io::Write;

use crate::error::{domain, Result};
use crate::field::{fmt_f, Field2D, Grid1D, Grid2D};
use crate::quad::integrate;
use crate::spectral::dft;
use crate::special::{factorial, laguerre, MAX_DEGREE};

use super::map::ScaleGrid;
use super::real::ADMISSIBILITY_TOL;

/// Diagonal coefficients `K_{n,n}` of a circular mother wavelet.
#[derive(Clone, Debug, PartialEq)]
pub struct MotherWaveletC {
    k: Vec<f64>,
}

impl MotherWaveletC {
    /// Checks admissibility `Σ n! K_n (-1)ⁿ = 0`.
    pub fn new(k: Vec<f64>) -> Result<Self> {
        let w = Self::unchecked(k)?;
        let (sum, scale) = w.admissibility_sum();
        if sum.abs() > ADMISSIBILITY_TOL * scale.max(1.0) {
            return domain(format!("coefficients are not admissible: Σ n! K_n (-1)^n = {sum:e}"));
        }
        Ok(w)
    }

    pub fn unchecked(k: Vec<f64>) -> Result<Self> {
        if k.is_empty() || k.len() > MAX_DEGREE + 1 {
            return domain(format!("need 1..={} coefficients, got {}", MAX_DEGREE + 1, k.len()));
        }
        if k.iter().any(|v| !v.is_finite()) {
            return domain("coefficients must be finite");
        }
        Ok(Self { k })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.k
    }

    fn admissibility_sum(&self) -> (f64, f64) {
        self.k.iter().enumerate().fold((0.0, 0.0), |(s, a), (n, k)| {
            let t = factorial(n) * k * if n % 2 == 0 { 1.0 } else { -1.0 };
            (s + t, a + t.abs())
        })
    }

    pub fn is_admissible(&self) -> bool {
        let (s, a) = self.admissibility_sum();
        s.abs() <= ADMISSIBILITY_TOL * a.max(1.0)
    }

    /// Radial profile `ψ(r)`.
    pub fn radial(&self, r: f64) -> f64 {
        let r2 = r * r;
        let s: f64 = self.k.iter().enumerate().map(|(n, k)| factorial(n) * k * laguerre(n, r2).expect("degree checked")).sum();
        (-0.5 * r2).exp() * s
    }

    /// Radial spectrum `ψ(ξ) = ∫_0^∞ r ψ(r) J_0(|ξ| r) dr
    /// = e^{-ρ²/2} Σ (-1)ⁿ n! K_n L_n(ρ²)`.
    pub fn spectrum(&self, rho: f64) -> f64 {
        let r2 = rho * rho;
        let s: f64 = self
            .k
            .iter()
            .enumerate()
            .map(|(n, k)| factorial(n) * k * laguerre(n, r2).expect("degree checked") * if n % 2 == 0 { 1.0 } else { -1.0 })
            .sum();
        (-0.5 * r2).exp() * s
    }

    /// Radius beyond which the wavelet and its spectrum are negligible.
    pub fn support(&self) -> f64 {
        2.0 * ((self.k.len() - 1) as f64).sqrt() + 9.0
    }
}

pub fn cwt_mother_eval(w: &MotherWaveletC, eta: Complex64) -> Complex64 {
    Complex64::new(w.radial(eta.norm()), 0.0)
}

/// `C'_ψ = 4 ∫_0^∞ |ψ(ξ)|²/|ξ| d|ξ|`.
pub fn c_psi_prime(w: &MotherWaveletC) -> Result<f64> {
    if !w.is_admissible() {
        return domain("C'_psi diverges: wavelet is not admissible");
    }
    Ok(4.0 * integrate(|p| w.spectrum(p).powi(2) / p, 0.0, w.support(), 1e-14))
}

fn check_mu(mu: f64) -> Result<()> {
    if !(mu > 0.0) || !mu.is_finite() {
        return domain(format!("scale must be positive, got {mu}"));
    }
    Ok(())
}

/// `(1/μ) ∬ (d²η/π) F(η) ψ*((η - κ)/μ)` as a Riemann sum over the samples.
pub fn cwt(f: &Field2D, w: &MotherWaveletC, mu: f64, kappa: Complex64) -> Result<Complex64> {
    check_mu(mu)?;
    let g = f.grid;
    let ny = g.y.n;
    let reach = w.support() * mu;
    let acc: Complex64 = (0..g.x.n)
        .into_par_iter()
        .map(|i| {
            let x = g.x.x(i);
            if (x - kappa.re).abs() > reach {
                return Complex64::new(0.0, 0.0);
            }
            let row = &f.values[i * ny..(i + 1) * ny];
            row.iter()
                .zip(g.y.coords())
                .map(|(v, y)| {
                    let d = Complex64::new(x - kappa.re, y - kappa.im) / mu;
                    v * w.radial(d.norm())
                })
                .sum()
        })
        .collect::<Vec<Complex64>>()
        .into_iter()
        .sum();
    Ok(acc * g.cell() / (PI * mu))
}

/// The transform on every sample of a zero-padded periodic grid, one plane
/// per scale.
#[derive(Clone, Debug, PartialEq)]
pub struct CWTMap {
    pub scales: ScaleGrid,
    /// The padded grid; it contains the input grid at whole-sample offsets.
    pub grid: Grid2D,
    pub planes: Vec<Field2D>,
}

impl CWTMap {
    /// Plane `k` cut back to `g`, which must line up with the map grid.
    pub fn plane_on(&self, k: usize, g: &Grid2D) -> Result<Field2D> {
        crop(&self.planes[k], g)
    }

    /// Writes `CWTMAP <nmu> <nx> <ny> <mu0> <mu_ratio> <x0> <y0> <dx> <dy>`
    /// and the planes cut to `g`, scale by scale, row-major.
    pub fn write_on(&self, w: &mut impl Write, g: &Grid2D) -> Result<()> {
        let s = self.scales;
        writeln!(
            w,
            "CWTMAP {} {} {} {} {} {} {} {} {}",
            s.n,
            g.x.n,
            g.y.n,
            fmt_f(s.mu0),
            fmt_f(s.ratio),
            fmt_f(g.x.x0),
            fmt_f(g.y.x0),
            fmt_f(g.x.dx),
            fmt_f(g.y.dx)
        )?;
        for k in 0..s.n {
            for v in &self.plane_on(k, g)?.values {
                writeln!(w, "{} {}", fmt_f(v.re), fmt_f(v.im))?;
            }
        }
        Ok(())
    }
}

fn padded_axis(g: &Grid1D, pad: usize) -> Grid1D {
    let big = (pad.max(1) * g.n).next_power_of_two();
    let lead = (big - g.n) / 2;
    Grid1D { n: big, x0: g.x0 - lead as f64 * g.dx, dx: g.dx }
}

fn offset(inner: &Grid1D, outer: &Grid1D) -> Option<usize> {
    let s = (inner.x0 - outer.x0) / outer.dx;
    let r = s.round();
    let fits = (s - r).abs() < 1e-9 && r >= 0.0 && (inner.dx - outer.dx).abs() <= 1e-12 * outer.dx.abs() && r as usize + inner.n <= outer.n;
    fits.then_some(r as usize)
}

fn crop(f: &Field2D, g: &Grid2D) -> Result<Field2D> {
    let (Some(ox), Some(oy)) = (offset(&g.x, &f.grid.x), offset(&g.y, &f.grid.y)) else {
        return domain("output grid does not line up with the map grid");
    };
    let ny = f.grid.y.n;
    let values = (0..g.len()).map(|idx| f.values[(idx / g.y.n + ox) * ny + idx % g.y.n + oy]).collect();
    Ok(Field2D { grid: *g, values })
}

fn embed(f: &Field2D, big: Grid2D) -> Vec<Complex64> {
    let ox = offset(&f.grid.x, &big.x).expect("padded grid contains the input");
    let oy = offset(&f.grid.y, &big.y).expect("padded grid contains the input");
    let mut out = vec![Complex64::new(0.0, 0.0); big.len()];
    for i in 0..f.grid.x.n {
        let src = &f.values[i * f.grid.y.n..(i + 1) * f.grid.y.n];
        let start = (i + ox) * big.y.n + oy;
        out[start..start + src.len()].copy_from_slice(src);
    }
    out
}

fn fft2(data: &mut [Complex64], nx: usize, ny: usize, sign: i32) {
    data.par_chunks_mut(ny).for_each(|row| dft(row, sign));
    let mut cols: Vec<Vec<Complex64>> = (0..ny).map(|j| (0..nx).map(|i| data[i * ny + j]).collect()).collect();
    cols.par_iter_mut().for_each(|c| dft(c, sign));
    for (j, c) in cols.iter().enumerate() {
        for (i, v) in c.iter().enumerate() {
            data[i * ny + j] = *v;
        }
    }
}

fn angular(n: usize, d: f64) -> Vec<f64> {
    let dk = 2.0 * PI / (n as f64 * d);
    (0..n).map(|m| if m <= n / 2 { m as f64 * dk } else { (m as f64 - n as f64) * dk }).collect()
}

/// `2μ/N · IFFT(spec · ψ(μ|k|))` on the periodic grid: the circular
/// correlation with the dilated wavelet, scaled as the transform.
fn filter(spec: &[Complex64], g: &Grid2D, w: &MotherWaveletC, mu: f64) -> Vec<Complex64> {
    let (kx, ky) = (angular(g.x.n, g.x.dx), angular(g.y.n, g.y.dx));
    let ny = g.y.n;
    let mut buf: Vec<Complex64> = spec
        .par_iter()
        .enumerate()
        .map(|(idx, v)| v * w.spectrum(mu * kx[idx / ny].hypot(ky[idx % ny])))
        .collect();
    fft2(&mut buf, g.x.n, ny, 1);
    let scale = 2.0 * mu / g.len() as f64;
    buf.iter_mut().for_each(|v| *v *= scale);
    buf
}

/// [`cwt`] at every scale and every sample of the input grid zero-padded by
/// `pad` (rounded up to a power of two per axis).
///
/// The padded grid is treated as periodic, so Parseval and the inversion
/// hold on it up to its lowest nonzero frequency; `pad = 8` keeps the lost
/// mean below 1% for compact inputs.
pub fn cwt_map(f: &Field2D, w: &MotherWaveletC, scales: &ScaleGrid, pad: usize) -> Result<CWTMap> {
    if scales.values().iter().any(|&m| m <= 0.0) {
        return domain("complex wavelet scales must be positive");
    }
    let big = Grid2D::new(padded_axis(&f.grid.x, pad), padded_axis(&f.grid.y, pad));
    let mut spec = embed(f, big);
    fft2(&mut spec, big.x.n, big.y.n, -1);
    let planes = scales.values().into_iter().map(|mu| Field2D { grid: big, values: filter(&spec, &big, w, mu) }).collect();
    Ok(CWTMap { scales: *scales, grid: big, planes })
}

/// `F(η) = (1/C'_ψ) ∫_0^∞ dμ/μ⁴ ∬ (d²κ/π) W(μ, κ) ψ((η - κ)/μ)`, trapezoid in
/// `ln μ` over the map's scales, sampled on `out` (which must line up with
/// the map grid).
pub fn cwt_inverse(map: &CWTMap, w: &MotherWaveletC, out: &Grid2D) -> Result<Field2D> {
    let c = c_psi_prime(w)?;
    let g = map.grid;
    let mut acc = vec![Complex64::new(0.0, 0.0); g.len()];
    for ((mu, lw), plane) in map.scales.values().into_iter().zip(map.scales.log_trapezoid()).zip(&map.planes) {
        let mut spec = plane.values.clone();
        fft2(&mut spec, g.x.n, g.y.n, -1);
        // The convolution with ψ(·/μ) carries μ² where the transform carries 1/μ.
        let inner = filter(&spec, &g, w, mu);
        let wgt = lw / (mu * mu) / c;
        acc.iter_mut().zip(inner).for_each(|(a, v)| *a += v * wgt);
    }
    crop(&Field2D { grid: g, values: acc }, out)
}

/// `∫_0^∞ dμ/μ³ ∬ (d²κ/π) |W|²`, which Parseval makes `C'_ψ ∬ |F|² d²η/π`.
pub fn cwt_energy(map: &CWTMap) -> f64 {
    let cell = map.grid.cell() / PI;
    map.scales
        .values()
        .into_iter()
        .zip(map.scales.log_trapezoid())
        .zip(&map.planes)
        .map(|((mu, lw), p)| lw / (mu * mu) * p.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * cell)
        .sum()
}

//! Hermite, two-variable Hermite, Laguerre and Bessel functions, plus the
//! normalized Hermite-Gaussian modes.
//!
//! Hermite polynomials use the physicists' convention throughout.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{domain, Result};

/// Highest degree accepted by the one-variable polynomial families.
pub const MAX_DEGREE: usize = 60;
/// Highest degree accepted by [`hermite2v`].
pub const MAX_DEGREE_2V: usize = 40;

fn check_degree(n: usize, ceiling: usize) -> Result<()> {
    if n > ceiling {
        return domain(format!("degree {n} above ceiling {ceiling}"));
    }
    Ok(())
}

/// Physicists' Hermite polynomial `H_n(x)` by the three-term recurrence.
pub fn hermite(n: usize, x: f64) -> Result<f64> {
    check_degree(n, MAX_DEGREE)?;
    let (mut h0, mut h1) = (1.0, 2.0 * x);
    if n == 0 {
        return Ok(h0);
    }
    for k in 1..n {
        let h2 = 2.0 * x * h1 - 2.0 * k as f64 * h0;
        h0 = h1;
        h1 = h2;
    }
    Ok(h1)
}

/// Two-variable Hermite polynomial
/// `H_{m,n}(a,b) = Σ_l m! n! (-1)^l a^{m-l} b^{n-l} / (l! (m-l)! (n-l)!)`.
pub fn hermite2v(m: usize, n: usize, a: Complex64, b: Complex64) -> Result<Complex64> {
    check_degree(m.max(n), MAX_DEGREE_2V)?;
    let mut sum = Complex64::new(0.0, 0.0);
    // c_l = C(m,l) C(n,l) l! (-1)^l, updated incrementally.
    let mut c = 1.0;
    for l in 0..=m.min(n) {
        sum += c * (a.powu((m - l) as u32) * b.powu((n - l) as u32));
        c *= -((m - l) as f64) * ((n - l) as f64) / (l as f64 + 1.0);
    }
    Ok(sum)
}

/// Laguerre polynomial `L_n(x)`.
pub fn laguerre(n: usize, x: f64) -> Result<f64> {
    check_degree(n, MAX_DEGREE)?;
    let (mut l0, mut l1) = (1.0, 1.0 - x);
    if n == 0 {
        return Ok(l0);
    }
    for k in 1..n {
        let kf = k as f64;
        let l2 = ((2.0 * kf + 1.0 - x) * l1 - kf * l0) / (kf + 1.0);
        l0 = l1;
        l1 = l2;
    }
    Ok(l1)
}

/// Normalized Hermite-Gaussian `(2^n n! √π)^{-1/2} e^{-x²/2} H_n(x)`.
///
/// Evaluated with the normalized recurrence, so no factorials or powers of
/// two are ever formed.
pub fn hermite_gaussian(n: usize, x: f64) -> Result<f64> {
    check_degree(n, MAX_DEGREE)?;
    Ok(*hermite_gaussians(n, x).last().unwrap())
}

/// All modes `ψ_0(x) .. ψ_nmax(x)` at one point.
pub fn hermite_gaussians(nmax: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(nmax + 1);
    let p0 = PI.powf(-0.25) * (-0.5 * x * x).exp();
    out.push(p0);
    if nmax >= 1 {
        out.push(2f64.sqrt() * x * p0);
    }
    for k in 1..nmax {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        out.push(next);
    }
    out
}

/// Hermite-Gaussian modes at a complex argument (the entire continuation).
pub fn hermite_gaussians_complex(nmax: usize, z: Complex64) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(nmax + 1);
    let p0 = PI.powf(-0.25) * (-0.5 * z * z).exp();
    out.push(p0);
    if nmax >= 1 {
        out.push(2f64.sqrt() * z * p0);
    }
    for k in 1..nmax {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * z * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        out.push(next);
    }
    out
}

/// Bessel function of the first kind `J_m(x)` for integer order.
///
/// Ascending series below |x| = 12, Miller's backward recurrence with the
/// `J_0 + 2ΣJ_{2k} = 1` normalization above, and Hankel's asymptotic
/// expansion once `x` is large against `m²`.
pub fn bessel_j(m: usize, x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let sign = if x < 0.0 && m % 2 == 1 { -1.0 } else { 1.0 };
    let ax = x.abs();
    let v = if ax < 12.0 {
        bessel_series(m, ax)
    } else if ax >= 35.0f64.max(2.0 * (m * m) as f64) {
        bessel_asymptotic(m, ax)
    } else {
        bessel_miller(m, ax)
    };
    sign * v
}

fn bessel_series(m: usize, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut term = 1.0;
    for k in 1..=m {
        term *= half / k as f64;
    }
    let mut sum = term;
    let q = -half * half;
    for k in 1..200 {
        term *= q / (k as f64 * (k + m) as f64);
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

fn bessel_miller(m: usize, x: f64) -> f64 {
    let top = m.max(x as usize);
    let mut start = top + 20 + (40.0 * top as f64).sqrt() as usize;
    start += start % 2;
    let (mut jp, mut j) = (0.0f64, 1e-30f64);
    let mut norm = 2.0 * j;
    let mut want = 0.0;
    for k in (1..=start).rev() {
        let jm = 2.0 * k as f64 / x * j - jp;
        jp = j;
        j = jm;
        if j.abs() > 1e250 {
            jp *= 1e-250;
            j *= 1e-250;
            norm *= 1e-250;
            want *= 1e-250;
        }
        if k - 1 == m {
            want = j;
        }
        if (k - 1) % 2 == 0 && k - 1 > 0 {
            norm += 2.0 * j;
        }
    }
    norm += j;
    want / norm
}

fn bessel_asymptotic(m: usize, x: f64) -> f64 {
    let mu = 4.0 * (m * m) as f64;
    let (mut p, mut q) = (0.0, 0.0);
    let mut a = 1.0f64;
    let mut last = f64::INFINITY;
    for k in 0..60 {
        let t = a.abs();
        if t > last || t < 1e-17 {
            break;
        }
        last = t;
        match k % 4 {
            0 => p += a,
            1 => q += a,
            2 => p -= a,
            _ => q -= a,
        }
        let odd = (2 * k + 1) as f64;
        a *= (mu - odd * odd) / ((k + 1) as f64 * 8.0 * x);
    }
    let chi = x - (0.5 * m as f64 + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// `(2m-1)!!` with the convention `(-1)!! = 1`.
pub fn double_factorial_odd(m: usize) -> f64 {
    (1..=m).map(|k| (2 * k - 1) as f64).product()
}

/// `n!` as a float.
pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Grid1D;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hermite_low_orders() {
        assert_eq!(hermite(0, 3.7).unwrap(), 1.0);
        assert_eq!(hermite(2, 0.0).unwrap(), -2.0);
        assert_eq!(hermite(1, 2.5).unwrap(), 5.0);
        assert!(hermite(61, 0.1).is_err());
    }

    #[test]
    fn hermite_recurrence_holds() {
        for n in 1..30 {
            for &x in &[-10.0, -3.3, 0.0, 0.7, 4.1, 10.0] {
                let (a, b, c) = (hermite(n + 1, x).unwrap(), hermite(n, x).unwrap(), hermite(n - 1, x).unwrap());
                let scale = a.abs().max((2.0 * x * b).abs()).max(1.0);
                assert!((a - 2.0 * x * b + 2.0 * n as f64 * c).abs() / scale < 1e-9);
            }
        }
    }

    #[test]
    fn hermite2v_small_cases() {
        let xi = c(0.3, -1.2);
        assert_eq!(hermite2v(0, 0, xi, xi.conj()).unwrap(), c(1.0, 0.0));
        let v = hermite2v(1, 1, xi, xi.conj()).unwrap();
        assert!((v - (xi * xi.conj() - 1.0)).norm() < 1e-15);
        assert!(hermite2v(41, 0, xi, xi).is_err());
    }

    #[test]
    fn hermite2v_symmetric_for_equal_real_args() {
        let r = c(1.7, 0.0);
        for m in 0..8 {
            for n in 0..8 {
                assert_eq!(hermite2v(m, n, r, r).unwrap(), hermite2v(n, m, r, r).unwrap());
            }
        }
    }

    #[test]
    fn hermite2v_matches_generating_function() {
        // Taylor coefficients of exp(-tt' + ta + t'b) extracted by a
        // trapezoid rule on circles |t| = |t'| = 0.5.
        let (a, b) = (c(0.4, 0.9), c(-1.1, 0.2));
        let k = 48;
        let rad = 0.5;
        for m in 0..5 {
            for n in 0..5 {
                let mut acc = c(0.0, 0.0);
                for i in 0..k {
                    let t = Complex64::from_polar(rad, 2.0 * PI * i as f64 / k as f64);
                    for j in 0..k {
                        let tp = Complex64::from_polar(rad, 2.0 * PI * j as f64 / k as f64);
                        let g = (-t * tp + t * a + tp * b).exp();
                        acc += g / (t.powu(m as u32) * tp.powu(n as u32));
                    }
                }
                let coeff = acc / (k * k) as f64 * factorial(m) * factorial(n);
                let h = hermite2v(m, n, a, b).unwrap();
                assert!((coeff - h).norm() < 1e-8, "{m} {n}: {coeff} vs {h}");
            }
        }
    }

    #[test]
    fn laguerre_low_orders() {
        assert_eq!(laguerre(0, 1.3).unwrap(), 1.0);
        assert_eq!(laguerre(1, 1.0).unwrap(), 0.0);
        assert!((laguerre(2, 2.0).unwrap() + 1.0).abs() < 1e-15);
        let x = 0.37;
        let l3 = 1.0 - 3.0 * x + 1.5 * x * x - x * x * x / 6.0;
        assert!((laguerre(3, x).unwrap() - l3).abs() < 1e-15);
    }

    #[test]
    fn bessel_reference_values() {
        // Reference values from a 30-digit evaluation.
        let table = [
            (0, 1.0, 0.765_197_686_557_966_6),
            (0, 5.5, -0.006_843_869_417_819_197),
            (1, 11.9, -0.228_983_249_661_924_05),
            (2, 12.5, -0.173_361_463_438_782_66),
            (3, 30.0, 0.129_211_228_759_724_98),
            (0, 49.0, -0.052_900_033_322_273_515),
            (5, 50.0, -0.081_400_247_696_569_64),
            (0, 200.0, -0.015_437_439_930_565_092),
            (1, 655.0, 0.021_565_796_530_797_565),
            (10, 20.0, 0.186_482_558_023_945_08),
            (7, 3.0, 0.002_547_294_451_804_693_8),
            (20, 15.0, 0.007_360_234_079_223_485),
        ];
        for (m, x, want) in table {
            let got = bessel_j(m, x);
            assert!((got - want).abs() < 1e-12 * want.abs().max(0.05), "J_{m}({x}) = {got}, want {want}");
        }
        assert_eq!(bessel_j(0, 0.0), 1.0);
        assert_eq!(bessel_j(1, 0.0), 0.0);
        assert!(bessel_j(0, 2.404_825_557_695_773).abs() < 1e-10);
        assert!((bessel_j(3, -2.0) + bessel_j(3, 2.0)).abs() < 1e-16);
    }

    #[test]
    fn bessel_generating_function() {
        for &x in &[0.3, 2.0, 4.9, -3.1] {
            for &t in &[0.0, 0.8, 2.5, -1.9] {
                let mut sum = c(bessel_j(0, x), 0.0);
                for l in 1..=40usize {
                    let jl = bessel_j(l, x);
                    let jml = if l % 2 == 0 { jl } else { -jl };
                    sum += jl * Complex64::from_polar(1.0, l as f64 * t) + jml * Complex64::from_polar(1.0, -(l as f64) * t);
                }
                let want = Complex64::from_polar(1.0, x * t.sin());
                assert!((sum - want).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn hermite_gaussian_orthonormal_on_default_grid() {
        let g = Grid1D::default();
        let modes: Vec<Vec<f64>> = (0..=10)
            .map(|n| g.coords().map(|x| hermite_gaussian(n, x).unwrap()).collect())
            .collect();
        for m in 0..=10 {
            for n in 0..=10 {
                let s: f64 = modes[m].iter().zip(&modes[n]).map(|(a, b)| a * b).sum::<f64>() * g.dx;
                let want = if m == n { 1.0 } else { 0.0 };
                assert!((s - want).abs() < 1e-10, "{m} {n} {s}");
            }
        }
        assert!((hermite_gaussian(0, 0.0).unwrap() - PI.powf(-0.25)).abs() < 1e-16);
        assert_eq!(hermite_gaussian(1, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn hermite_gaussian_matches_polynomial_form() {
        for n in 0..=12 {
            for &x in &[-2.3f64, 0.4, 1.9] {
                let norm = (2f64.powi(n as i32) * factorial(n) * PI.sqrt()).sqrt();
                let want = (-0.5 * x * x).exp() * hermite(n, x).unwrap() / norm;
                assert!((hermite_gaussian(n, x).unwrap() - want).abs() < 1e-13);
            }
        }
    }
}

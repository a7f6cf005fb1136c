//! ABCD ray-transfer matrices, the complex `(s, r)` parametrization, Gaussian
//! beam q-parameters and the standard matrix factorizations.
//!
//! Units are dimensionless: the wavelength and propagation constants are
//! absorbed so the canonical kernel has no `k/λ` prefactors.

use num_complex::Complex64;
use std::fmt;

use crate::error::{domain, Error, Result};

/// Unimodularity tolerance accepted on construction.
pub const UNIMODULAR_TOL: f64 = 1e-10;
/// Determinant drift below this is renormalized away; above it is rejected.
pub const RENORMALIZE_TOL: f64 = 1e-8;

/// Real 2×2 unimodular ray-transfer matrix `[a, b; c, d]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RayMatrix {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl RayMatrix {
    /// Builds a matrix, renormalizing a small determinant drift.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        if ![a, b, c, d].iter().all(|v| v.is_finite()) {
            return domain("non-finite matrix entry");
        }
        let det = a * d - b * c;
        if (det - 1.0).abs() <= UNIMODULAR_TOL {
            return Ok(Self { a, b, c, d });
        }
        if (det - 1.0).abs() <= RENORMALIZE_TOL && det > 0.0 {
            let s = det.sqrt().recip();
            return Ok(Self { a: a * s, b: b * s, c: c * s, d: d * s });
        }
        domain(format!("matrix not unimodular: det = {det}"))
    }

    pub const fn identity() -> Self {
        Self { a: 1.0, b: 0.0, c: 0.0, d: 1.0 }
    }

    /// Free-space propagation over distance `d`.
    pub const fn free_space(d: f64) -> Self {
        Self { a: 1.0, b: d, c: 0.0, d: 1.0 }
    }

    /// Thin lens of focal length `f`.
    pub fn thin_lens(f: f64) -> Self {
        Self { a: 1.0, b: 0.0, c: -1.0 / f, d: 1.0 }
    }

    /// The Fourier-transform matrix `[0, 1; -1, 0]`.
    pub const fn fourier() -> Self {
        Self { a: 0.0, b: 1.0, c: -1.0, d: 0.0 }
    }

    /// Rotation `[cos φ, sin φ; -sin φ, cos φ]`, the fractional Fourier family.
    pub fn rotation(phi: f64) -> Self {
        let (s, c) = phi.sin_cos();
        Self { a: c, b: s, c: -s, d: c }
    }

    /// Scaled rotation `[cos φ, fe sin φ; -sin φ / fe, cos φ]`.
    pub fn scaled_rotation(phi: f64, fe: f64) -> Self {
        let (s, c) = phi.sin_cos();
        Self { a: c, b: fe * s, c: -s / fe, d: c }
    }

    /// Magnifier `[m, 0; 0, 1/m]`.
    pub fn magnifier(m: f64) -> Self {
        Self { a: m, b: 0.0, c: 0.0, d: 1.0 / m }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    /// Inverse `[d, -b; -c, a]`.
    pub fn inverse(&self) -> Self {
        Self { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// Largest entry-wise difference to another matrix.
    pub fn max_diff(&self, o: &RayMatrix) -> f64 {
        [self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d]
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Parses `ABCD a b c d` or the bare `a b c d`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut it = text.split_whitespace().peekable();
        if it.peek() == Some(&"ABCD") {
            it.next();
        }
        let vals: Vec<f64> = it
            .map(|t| t.parse::<f64>().map_err(|_| Error::Parse { line: 1, msg: format!("bad number '{t}'") }))
            .collect::<Result<_>>()?;
        if vals.len() != 4 {
            return Err(Error::Parse { line: 1, msg: format!("expected 4 matrix entries, got {}", vals.len()) });
        }
        Self::new(vals[0], vals[1], vals[2], vals[3])
    }
}

impl fmt::Display for RayMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ABCD {:.16e} {:.16e} {:.16e} {:.16e}", self.a, self.b, self.c, self.d)
    }
}

/// `second · first`: the system `first` followed by `second`.
pub fn compose(second: &RayMatrix, first: &RayMatrix) -> RayMatrix {
    let (m2, m1) = (second, first);
    RayMatrix {
        a: m2.a * m1.a + m2.b * m1.c,
        b: m2.a * m1.b + m2.b * m1.d,
        c: m2.c * m1.a + m2.d * m1.c,
        d: m2.c * m1.b + m2.d * m1.d,
    }
}

/// Complex pair `(s, r)` with `|s|² - |r|² = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SRParams {
    pub s: Complex64,
    pub r: Complex64,
}

impl SRParams {
    pub fn new(s: Complex64, r: Complex64) -> Result<Self> {
        let inv = s.norm_sqr() - r.norm_sqr();
        if (inv - 1.0).abs() > RENORMALIZE_TOL {
            return domain(format!("|s|^2 - |r|^2 = {inv}, expected 1"));
        }
        Ok(Self { s, r })
    }

    pub fn identity() -> Self {
        Self { s: Complex64::new(1.0, 0.0), r: Complex64::new(0.0, 0.0) }
    }

    pub fn invariant(&self) -> f64 {
        self.s.norm_sqr() - self.r.norm_sqr()
    }
}

/// `s = [A + D - i(B - C)]/2`, `r = -[A - D + i(B + C)]/2`.
pub fn to_sr(m: &RayMatrix) -> SRParams {
    SRParams {
        s: Complex64::new(0.5 * (m.a + m.d), -0.5 * (m.b - m.c)),
        r: Complex64::new(-0.5 * (m.a - m.d), -0.5 * (m.b + m.c)),
    }
}

/// Inverse of [`to_sr`].
pub fn from_sr(p: &SRParams) -> Result<RayMatrix> {
    let inv = p.invariant();
    if (inv - 1.0).abs() > RENORMALIZE_TOL {
        return domain(format!("|s|^2 - |r|^2 = {inv}, expected 1"));
    }
    RayMatrix::new(p.s.re - p.r.re, -p.s.im - p.r.im, p.s.im - p.r.im, p.s.re + p.r.re)
}

/// Product rule `s'' = s s' + r r'*`, `r'' = r' s + r s'*`.
///
/// Matches `to_sr(compose(from_sr(p), from_sr(p2)))`.
pub fn sr_compose(p: &SRParams, p2: &SRParams) -> SRParams {
    SRParams { s: p.s * p2.s + p.r * p2.r.conj(), r: p2.r * p.s + p.r * p2.s.conj() }
}

/// Gaussian-beam complex parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BeamQ {
    pub q: Complex64,
}

impl BeamQ {
    pub fn new(q: Complex64) -> Self {
        Self { q }
    }

    /// Whether the beam `exp(i x²/(2q))` decays (needs `Im q < 0`).
    pub fn is_normalizable(&self) -> bool {
        self.q.im < 0.0
    }
}

const SINGULAR_Q: f64 = 1e-14;

/// Möbius law `q2 = (A q1 + B)/(C q1 + D)`.
pub fn q_forward(m: &RayMatrix, q1: BeamQ) -> Result<BeamQ> {
    let den = m.c * q1.q + m.d;
    if den.norm() < SINGULAR_Q {
        return Err(Error::Singular(format!("C q + D = {den}")));
    }
    Ok(BeamQ::new((m.a * q1.q + m.b) / den))
}

/// `q = -(A + iB)/(C + iD)`, the parameter of the squeezed vacuum made by `m`.
///
/// This q is the negative of the beam parameter of `exp(i x²/(2q))`: it is
/// `-q` that follows the Möbius law, so
/// `q_of_matrix(compose(m2, m)) = -q_forward(m2, -q_of_matrix(m))`.
pub fn q_of_matrix(m: &RayMatrix) -> Result<BeamQ> {
    let den = Complex64::new(m.c, m.d);
    if den.norm() < SINGULAR_Q {
        return Err(Error::Singular(format!("C + iD = {den}")));
    }
    Ok(BeamQ::new(-Complex64::new(m.a, m.b) / den))
}

/// Factors `m = [1,0;C/A,1] · [A,0;0,1/A] · [1,B/A;0,1]`.
///
/// Returns `(C/A, A, B/A)`.
pub fn decompose_chirp_scale_chirp(m: &RayMatrix) -> Result<(f64, f64, f64)> {
    if m.a.abs() <= 1e-12 {
        return Err(Error::Singular("A = 0, chirp-scale-chirp factorization unavailable".into()));
    }
    Ok((m.c / m.a, m.a, m.b / m.a))
}

/// A chirp/scale factorization of a ray matrix, whichever one is available.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Decomposition {
    /// `[1,0;C/A,1] [A,0;0,1/A] [1,B/A;0,1]`.
    ChirpScaleChirp { c_over_a: f64, scale: f64, b_over_a: f64 },
    /// `[1,0;D/B,1] [B,0;0,1/B] F [1,0;A/B,1]`, F the Fourier matrix.
    ViaFourierB { d_over_b: f64, scale: f64, a_over_b: f64 },
    /// `[1,A/C;0,1] [-1/C,0;0,-C] F [1,D/C;0,1]`.
    ViaFourierC { a_over_c: f64, c: f64, d_over_c: f64 },
}

impl Decomposition {
    pub fn reassemble(&self) -> RayMatrix {
        let f = RayMatrix::fourier();
        match *self {
            Decomposition::ChirpScaleChirp { c_over_a, scale, b_over_a } => compose(
                &RayMatrix { a: 1.0, b: 0.0, c: c_over_a, d: 1.0 },
                &compose(&RayMatrix::magnifier(scale), &RayMatrix::free_space(b_over_a)),
            ),
            Decomposition::ViaFourierB { d_over_b, scale, a_over_b } => {
                let tail = compose(&f, &RayMatrix { a: 1.0, b: 0.0, c: a_over_b, d: 1.0 });
                let mid = compose(&RayMatrix::magnifier(scale), &tail);
                compose(&RayMatrix { a: 1.0, b: 0.0, c: d_over_b, d: 1.0 }, &mid)
            }
            Decomposition::ViaFourierC { a_over_c, c, d_over_c } => {
                let tail = compose(&f, &RayMatrix::free_space(d_over_c));
                let mid = compose(&RayMatrix::magnifier(-1.0 / c), &tail);
                compose(&RayMatrix::free_space(a_over_c), &mid)
            }
        }
    }
}

/// Chirp-scale-chirp when `A ≠ 0`, otherwise the Fourier-based forms.
pub fn decompose(m: &RayMatrix) -> Decomposition {
    if let Ok((c_over_a, scale, b_over_a)) = decompose_chirp_scale_chirp(m) {
        Decomposition::ChirpScaleChirp { c_over_a, scale, b_over_a }
    } else if m.b.abs() > 1e-12 {
        Decomposition::ViaFourierB { d_over_b: m.d / m.b, scale: m.b, a_over_b: m.a / m.b }
    } else {
        // A = B = 0 cannot be unimodular, so C ≠ 0 here.
        Decomposition::ViaFourierC { a_over_c: m.a / m.c, c: m.c, d_over_c: m.d / m.c }
    }
}

/// `m = [1,0;-P,1] [m,0;0,1/m] [cos φ, fe sin φ; -sin φ/fe, cos φ]`.
///
/// Returns `(P, m, φ)` with `m > 0` and `φ ∈ (-π, π]`.
pub fn decompose_frft_form(m: &RayMatrix, fe: f64) -> Result<(f64, f64, f64)> {
    if !(fe > 0.0) {
        return domain("fe must be positive");
    }
    let bf = m.b / fe;
    let m2 = m.a * m.a + bf * bf;
    let p = -(m.a * m.c + m.d * m.b / (fe * fe)) / m2;
    Ok((p, m2.sqrt(), bf.atan2(m.a)))
}

/// Reassembles the output of [`decompose_frft_form`].
pub fn frft_form_matrix(p: f64, mscale: f64, phi: f64, fe: f64) -> RayMatrix {
    let chirp = RayMatrix { a: 1.0, b: 0.0, c: -p, d: 1.0 };
    compose(&chirp, &compose(&RayMatrix::magnifier(mscale), &RayMatrix::scaled_rotation(phi, fe)))
}

/// Thick lens of index `n`, thickness `l` and surface radii `r1`, `r2`
/// (both positive for a biconvex lens).
pub fn thick_lens_matrix(n: f64, l: f64, r1: f64, r2: f64) -> Result<RayMatrix> {
    if !(n > 1.0) || !(l > 0.0) {
        return domain("thick lens needs n > 1 and l > 0");
    }
    if r1 == 0.0 || r2 == 0.0 {
        return domain("zero curvature radius");
    }
    let k = (1.0 - 1.0 / n) * l;
    let a = 1.0 - k / r1;
    let d = 1.0 - k / r2;
    let c = -((n - 1.0) * (r1 + r2) / (r1 * r2) - l * (n - 1.0) * (n - 1.0) / (n * r1 * r2));
    Ok(RayMatrix { a, b: l / n, c, d })
}

//! Uniformly sampled complex fields in one and two dimensions, tomograms, and
//! their text formats.
//!
//! All integrals over sampled data are left-point Riemann sums.

use num_complex::Complex64;
use std::io::{BufRead, Write};

use crate::error::{domain, Error, Result};

/// Uniform grid `x_k = x0 + k dx`, `k = 0..n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid1D {
    pub n: usize,
    pub x0: f64,
    pub dx: f64,
}

impl Default for Grid1D {
    /// 256 samples on `[-12.8, 12.8)`.
    fn default() -> Self {
        Self { n: 256, x0: -12.8, dx: 0.1 }
    }
}

impl Grid1D {
    pub fn new(n: usize, x0: f64, dx: f64) -> Result<Self> {
        if n < 2 || !(dx > 0.0) || !x0.is_finite() || !dx.is_finite() {
            return domain(format!("invalid grid n={n} x0={x0} dx={dx}"));
        }
        Ok(Self { n, x0, dx })
    }

    /// `n` samples centred on zero: `x0 = -n dx / 2`.
    pub fn centered(n: usize, dx: f64) -> Self {
        Self { n, x0: -(n as f64) * dx / 2.0, dx }
    }

    #[inline]
    pub fn x(&self, k: usize) -> f64 {
        self.x0 + k as f64 * self.dx
    }

    pub fn coords(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |k| self.x(k))
    }

    pub fn last(&self) -> f64 {
        self.x(self.n - 1)
    }

    /// Fractional sample index of coordinate `x`.
    #[inline]
    pub fn index_of(&self, x: f64) -> f64 {
        (x - self.x0) / self.dx
    }

    /// Same samples up to rounding noise in the coordinates.
    pub fn same_as(&self, o: &Grid1D) -> bool {
        self.n == o.n && (self.x0 - o.x0).abs() <= 1e-12 * (1.0 + self.x0.abs()) && (self.dx - o.dx).abs() <= 1e-12 * self.dx
    }
}

/// Complex samples on a [`Grid1D`].
#[derive(Clone, Debug, PartialEq)]
pub struct Field1D {
    pub grid: Grid1D,
    pub values: Vec<Complex64>,
}

impl Field1D {
    pub fn new(grid: Grid1D, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n {
            return Err(Error::Shape(format!("{} values for a grid of {}", values.len(), grid.n)));
        }
        if let Some(k) = values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return domain(format!("non-finite value at x = {}", grid.x(k)));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Grid1D) -> Self {
        Self { grid, values: vec![Complex64::new(0.0, 0.0); grid.n] }
    }

    /// `(∫|f|² dx)^{1/2}`.
    pub fn norm(&self) -> f64 {
        (self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.dx).sqrt()
    }

    /// Largest modulus among the two outermost samples at each end.
    pub fn edge_magnitude(&self) -> f64 {
        let n = self.values.len();
        [0, 1, n - 2, n - 1].iter().map(|&k| self.values[k].norm()).fold(0.0, f64::max)
    }

    /// `sqrt(Σ|f - g|² dx) / norm(g)` over identical grids.
    pub fn relative_l2(&self, reference: &Field1D) -> f64 {
        let num: f64 = self.values.iter().zip(&reference.values).map(|(a, b)| (a - b).norm_sqr()).sum();
        (num * self.grid.dx).sqrt() / reference.norm()
    }

    pub fn max_abs_diff(&self, o: &Field1D) -> f64 {
        self.values.iter().zip(&o.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn scale(mut self, c: Complex64) -> Self {
        self.values.iter_mut().for_each(|v| *v *= c);
        self
    }
}

/// `Σ f_k conj(g_k) dx`.
pub fn inner_product(f: &Field1D, g: &Field1D) -> Result<Complex64> {
    if !f.grid.same_as(&g.grid) {
        return Err(Error::Shape("inner product over different grids".into()));
    }
    Ok(f.values.iter().zip(&g.values).map(|(a, b)| a * b.conj()).sum::<Complex64>() * f.grid.dx)
}

/// Samples `func` on `grid`, rejecting non-finite values.
pub fn sample1d(grid: Grid1D, func: impl Fn(f64) -> Complex64) -> Result<Field1D> {
    let values: Vec<Complex64> = grid.coords().map(&func).collect();
    Field1D::new(grid, values)
}

/// Two-dimensional grid, row-major with x slow and y fast.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid2D {
    pub x: Grid1D,
    pub y: Grid1D,
}

impl Grid2D {
    pub fn new(x: Grid1D, y: Grid1D) -> Self {
        Self { x, y }
    }

    pub fn square(g: Grid1D) -> Self {
        Self { x: g, y: g }
    }

    pub fn len(&self) -> usize {
        self.x.n * self.y.n
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        i * self.y.n + j
    }

    pub fn same_as(&self, o: &Grid2D) -> bool {
        self.x.same_as(&o.x) && self.y.same_as(&o.y)
    }

    pub fn cell(&self) -> f64 {
        self.x.dx * self.y.dx
    }
}

/// Complex samples on a [`Grid2D`]; `values[i * ny + j]` sits at `(x_i, y_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Field2D {
    pub grid: Grid2D,
    pub values: Vec<Complex64>,
}

impl Field2D {
    pub fn new(grid: Grid2D, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Shape(format!("{} values for a {}x{} grid", values.len(), grid.x.n, grid.y.n)));
        }
        if let Some(k) = values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
            let (i, j) = (k / grid.y.n, k % grid.y.n);
            return domain(format!("non-finite value at (x, y) = ({}, {})", grid.x.x(i), grid.y.x(j)));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Grid2D) -> Self {
        Self { grid, values: vec![Complex64::new(0.0, 0.0); grid.len()] }
    }

    pub fn from_real(grid: Grid2D, values: Vec<f64>) -> Result<Self> {
        Self::new(grid, values.into_iter().map(|v| Complex64::new(v, 0.0)).collect())
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.values[self.grid.idx(i, j)]
    }

    /// `∬|f|² dx dy`.
    pub fn energy(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.cell()
    }

    pub fn edge_magnitude(&self) -> f64 {
        let (nx, ny) = (self.grid.x.n, self.grid.y.n);
        let mut m = 0.0f64;
        for i in 0..nx {
            for j in 0..ny {
                if i < 2 || j < 2 || i + 2 >= nx || j + 2 >= ny {
                    m = m.max(self.at(i, j).norm());
                }
            }
        }
        m
    }

    pub fn relative_l2(&self, reference: &Field2D) -> f64 {
        let num: f64 = self.values.iter().zip(&reference.values).map(|(a, b)| (a - b).norm_sqr()).sum();
        (num / reference.values.iter().map(|v| v.norm_sqr()).sum::<f64>()).sqrt()
    }

    pub fn max_abs_diff(&self, o: &Field2D) -> f64 {
        self.values.iter().zip(&o.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }
}

/// Samples `func(x, y)` on `grid`.
pub fn sample2d(grid: Grid2D, func: impl Fn(f64, f64) -> Complex64) -> Result<Field2D> {
    let mut values = Vec::with_capacity(grid.len());
    for i in 0..grid.x.n {
        let x = grid.x.x(i);
        for j in 0..grid.y.n {
            values.push(func(x, grid.y.x(j)));
        }
    }
    Field2D::new(grid, values)
}

/// Quadrature distributions: one row of `xgrid.n` values per direction `(D, B)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tomogram {
    pub xgrid: Grid1D,
    pub directions: Vec<(f64, f64)>,
    pub values: Vec<Vec<f64>>,
}

impl Tomogram {
    pub fn new(xgrid: Grid1D, directions: Vec<(f64, f64)>, values: Vec<Vec<f64>>) -> Result<Self> {
        if directions.len() != values.len() || values.iter().any(|r| r.len() != xgrid.n) {
            return Err(Error::Shape("tomogram rows do not match grid and directions".into()));
        }
        if let Some(v) = values.iter().flatten().find(|v| !v.is_finite() || **v < -1e-12) {
            return domain(format!("tomogram value {v} is negative or non-finite"));
        }
        Ok(Self { xgrid, directions, values })
    }

    /// `∫ row dx` per direction.
    pub fn row_integrals(&self) -> Vec<f64> {
        self.values.iter().map(|r| r.iter().sum::<f64>() * self.xgrid.dx).collect()
    }
}

pub(crate) fn fmt_f(v: f64) -> String {
    format!("{v:.16e}")
}

pub(crate) struct Lines<R: BufRead> {
    inner: std::io::Lines<R>,
    line: usize,
}

impl<R: BufRead> Lines<R> {
    pub(crate) fn new(r: R) -> Self {
        Self { inner: r.lines(), line: 0 }
    }

    pub(crate) fn next_line(&mut self, what: &str) -> Result<String> {
        self.line += 1;
        match self.inner.next() {
            Some(Ok(s)) => Ok(s),
            Some(Err(e)) => Err(Error::Io(e)),
            None => Err(Error::Parse { line: self.line, msg: format!("unexpected end of input, {what}") }),
        }
    }

    pub(crate) fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: self.line, msg: msg.into() })
    }

    pub(crate) fn numbers(&mut self, count: usize, what: &str) -> Result<Vec<f64>> {
        let s = self.next_line(what)?;
        let vals: Vec<&str> = s.split_whitespace().collect();
        if vals.len() != count {
            return self.err(format!("expected {count} numbers, got {}", vals.len()));
        }
        let mut out = Vec::with_capacity(count);
        for t in vals {
            match t.parse::<f64>() {
                Ok(v) if v.is_finite() => out.push(v),
                _ => return self.err(format!("bad or non-finite number '{t}'")),
            }
        }
        Ok(out)
    }

    pub(crate) fn header(&mut self, tag: &str, count: usize) -> Result<Vec<String>> {
        let s = self.next_line("missing header")?;
        let toks: Vec<String> = s.split_whitespace().map(String::from).collect();
        if toks.first().map(String::as_str) != Some(tag) {
            return self.err(format!("expected header starting with {tag}"));
        }
        if toks.len() != count + 1 {
            return self.err(format!("{tag} header needs {count} fields"));
        }
        Ok(toks[1..].to_vec())
    }

    pub(crate) fn complex_rows(&mut self, rows: usize) -> Result<Vec<Complex64>> {
        let mut out = Vec::with_capacity(rows);
        for k in 0..rows {
            self.line += 1;
            let s = match self.inner.next() {
                Some(Ok(s)) => s,
                Some(Err(e)) => return Err(Error::Io(e)),
                None => return self.err(format!("expected {rows} rows, found {k}")),
            };
            let toks: Vec<&str> = s.split_whitespace().collect();
            if toks.len() != 2 {
                return self.err("expected '<re> <im>'");
            }
            let re = toks[0].parse::<f64>();
            let im = toks[1].parse::<f64>();
            match (re, im) {
                (Ok(re), Ok(im)) if re.is_finite() && im.is_finite() => out.push(Complex64::new(re, im)),
                _ => return self.err("bad or non-finite complex value"),
            }
        }
        Ok(out)
    }

    pub(crate) fn expect_end(&mut self) -> Result<()> {
        for l in self.inner.by_ref() {
            self.line += 1;
            if !l?.trim().is_empty() {
                return Err(Error::Parse { line: self.line, msg: "unexpected trailing data".into() });
            }
        }
        Ok(())
    }
}

pub(crate) fn parse_usize(lines: &Lines<impl BufRead>, s: &str) -> Result<usize> {
    s.parse::<usize>().or_else(|_| lines.err(format!("bad count '{s}'")))
}

pub(crate) fn parse_f64(lines: &Lines<impl BufRead>, s: &str) -> Result<f64> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => lines.err(format!("bad number '{s}'")),
    }
}

/// Reads `CFLD1 <n> <x0> <dx>` followed by `n` rows `<re> <im>`.
pub fn read_field1d(r: impl BufRead) -> Result<Field1D> {
    let mut lines = Lines::new(r);
    let h = lines.header("CFLD1", 3)?;
    let n = parse_usize(&lines, &h[0])?;
    let grid = Grid1D::new(n, parse_f64(&lines, &h[1])?, parse_f64(&lines, &h[2])?)
        .or_else(|e| lines.err(e.to_string()))?;
    let values = lines.complex_rows(n)?;
    lines.expect_end()?;
    Field1D::new(grid, values)
}

pub fn write_field1d(w: &mut impl Write, f: &Field1D) -> Result<()> {
    let g = f.grid;
    writeln!(w, "CFLD1 {} {} {}", g.n, fmt_f(g.x0), fmt_f(g.dx))?;
    for v in &f.values {
        writeln!(w, "{} {}", fmt_f(v.re), fmt_f(v.im))?;
    }
    Ok(())
}

/// Reads `CFLD2 <nx> <ny> <x0> <y0> <dx> <dy>` followed by `nx·ny` rows.
pub fn read_field2d(r: impl BufRead) -> Result<Field2D> {
    let mut lines = Lines::new(r);
    let h = lines.header("CFLD2", 6)?;
    let nx = parse_usize(&lines, &h[0])?;
    let ny = parse_usize(&lines, &h[1])?;
    let (x0, y0) = (parse_f64(&lines, &h[2])?, parse_f64(&lines, &h[3])?);
    let (dx, dy) = (parse_f64(&lines, &h[4])?, parse_f64(&lines, &h[5])?);
    let gx = Grid1D::new(nx, x0, dx).or_else(|e| lines.err(e.to_string()))?;
    let gy = Grid1D::new(ny, y0, dy).or_else(|e| lines.err(e.to_string()))?;
    let values = lines.complex_rows(nx * ny)?;
    lines.expect_end()?;
    Field2D::new(Grid2D::new(gx, gy), values)
}

pub fn write_field2d(w: &mut impl Write, f: &Field2D) -> Result<()> {
    let (gx, gy) = (f.grid.x, f.grid.y);
    writeln!(
        w,
        "CFLD2 {} {} {} {} {} {}",
        gx.n,
        gy.n,
        fmt_f(gx.x0),
        fmt_f(gy.x0),
        fmt_f(gx.dx),
        fmt_f(gy.dx)
    )?;
    for v in &f.values {
        writeln!(w, "{} {}", fmt_f(v.re), fmt_f(v.im))?;
    }
    Ok(())
}

/// Reads `TOMO <n> <ndir> <x0> <dx>`, then per direction `DIR <D> <B>` and `n` values.
pub fn read_tomogram(r: impl BufRead) -> Result<Tomogram> {
    let mut lines = Lines::new(r);
    let h = lines.header("TOMO", 4)?;
    let n = parse_usize(&lines, &h[0])?;
    let ndir = parse_usize(&lines, &h[1])?;
    let xgrid = Grid1D::new(n, parse_f64(&lines, &h[2])?, parse_f64(&lines, &h[3])?)
        .or_else(|e| lines.err(e.to_string()))?;
    let mut directions = Vec::with_capacity(ndir);
    let mut values = Vec::with_capacity(ndir);
    for _ in 0..ndir {
        let h = lines.header("DIR", 2)?;
        directions.push((parse_f64(&lines, &h[0])?, parse_f64(&lines, &h[1])?));
        let mut row = Vec::with_capacity(n);
        for k in 0..n {
            let v = lines.numbers(1, &format!("expected {n} rows, found {k}"))?;
            row.push(v[0]);
        }
        values.push(row);
    }
    lines.expect_end()?;
    Tomogram::new(xgrid, directions, values)
}

pub fn write_tomogram(w: &mut impl Write, t: &Tomogram) -> Result<()> {
    writeln!(w, "TOMO {} {} {} {}", t.xgrid.n, t.directions.len(), fmt_f(t.xgrid.x0), fmt_f(t.xgrid.dx))?;
    for ((d, b), row) in t.directions.iter().zip(&t.values) {
        writeln!(w, "DIR {} {}", fmt_f(*d), fmt_f(*b))?;
        for v in row {
            writeln!(w, "{}", fmt_f(*v))?;
        }
    }
    Ok(())
}

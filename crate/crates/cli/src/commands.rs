use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use symopt::field::{read_field1d, read_field2d, read_tomogram, write_field1d, write_field2d, write_tomogram};
use symopt::phase_space::{
    frac_radon_all, frac_radon_inverse, half_turn, husimi, husimi_via_wt, inverse_radon, pq_inverse_grid, pq_transform_grid, radon_wigner, read_projections,
    tomogram_direct, tomogram_from_angles, wigner, write_projections,
};
use symopt::selftest;
use symopt::symplectic::{compose, q_of_matrix};
use symopt::transforms::{
    cfrft, circular_harmonics, collins2d, collins_via_cfrft, fresnel_apply, fresnel_apply_momentum, frft, hankel, scaled_cfrft, scaled_frft, EDGE_TOL,
};
use symopt::wavelets::{
    c_psi, c_psi_prime, coverage_warning, cwt_energy, cwt_inverse, cwt_map, swt, write_wtmap, wt_energy, wt_inverse, wt_map, Mother2D, MotherWavelet1D,
    MotherWaveletC, ScaleGrid,
};
use symopt::{Field1D, Field2D, Grid1D, Grid2D, RayMatrix, Tomogram};

use crate::args::{Command, GridArgs, ScaleArgs};
use crate::{Failure, Outcome};

/// Largest deviation of `‖ψ‖` from one accepted by `tomogram`.
const NORM_TOL: f64 = 1e-6;

pub fn run(cmd: Command) -> Outcome {
    let mut s = Summary::default();
    match cmd {
        Command::Fresnel { io, matrix, momentum, grid } => {
            let m = RayMatrix::parse(&matrix)?;
            let f = load1(&io.input)?;
            s.edge1("input", &f);
            let out = grid.apply(f.grid)?;
            let g = if momentum { fresnel_apply_momentum(&m, &f, &out)? } else { fresnel_apply(&m, &f, &out)? };
            s.edge1("output", &g);
            s.set("norm_ratio", g.norm() / f.norm());
            save1(&io.out, &g)?;
        }
        Command::Frft { io, order, grid } => {
            let f = load1(&io.input)?;
            s.edge1("input", &f);
            let g = frft(order, &f, &grid.apply(f.grid)?)?;
            s.edge1("output", &g);
            s.set("norm_ratio", g.norm() / f.norm());
            save1(&io.out, &g)?;
        }
        Command::Sfrft { io, order, fe, grid } => {
            let f = load1(&io.input)?;
            s.edge1("input", &f);
            let g = scaled_frft(order, fe, &f, &grid.apply(f.grid)?)?;
            s.edge1("output", &g);
            s.set("norm_ratio", g.norm() / f.norm());
            save1(&io.out, &g)?;
        }
        Command::Cfrft { io, order, mu, nu, grid } => {
            let f = load2(&io.input)?;
            s.edge2("input", &f);
            let out = grid.apply2(f.grid)?;
            let g = match (mu, nu) {
                (None, None) => cfrft(order, &f, &out)?,
                (mu, nu) => scaled_cfrft(order, mu.unwrap_or(1.0), nu.unwrap_or(1.0), &f, &out)?,
            };
            s.edge2("output", &g);
            s.set("energy_ratio", g.energy() / f.energy());
            save2(&io.out, &g)?;
        }
        Command::Collins { io, matrix, via_cfrft, grid } => {
            let m = RayMatrix::parse(&matrix)?;
            let f = load2(&io.input)?;
            s.edge2("input", &f);
            let out = grid.apply2(f.grid)?;
            let g = match via_cfrft {
                Some(alpha) => collins_via_cfrft(&m, alpha, &f, &out)?,
                None => collins2d(&m, &f, &out)?,
            };
            s.edge2("output", &g);
            s.set("energy_ratio", g.energy() / f.energy());
            save2(&io.out, &g)?;
        }
        Command::Hankel { io, order, grid } => {
            let u = load1(&io.input)?;
            // The profile starts at r = 0, so only the far end has to decay.
            s.edge_value("input", u.values.last().map_or(0.0, |v| v.norm()));
            let v = hankel(order, &u, &grid.apply(u.grid)?)?;
            save1(&io.out, &v)?;
        }
        Command::Charmonics { io, nr, mmax } => {
            let f = load2(&io.input)?;
            s.edge2("input", &f);
            let h = circular_harmonics(&f, nr, mmax)?;
            let mut w = create(&io.out)?;
            writeln!(w, "# m r re im").map_err(io_err)?;
            for (k, row) in h.coeffs.iter().enumerate() {
                let m = k as i64 - h.mmax as i64;
                for (r, v) in h.radii.coords().zip(row) {
                    writeln!(w, "{m} {} {} {}", fmt(r), fmt(v.re), fmt(v.im)).map_err(io_err)?;
                }
            }
            w.flush().map_err(io_err)?;
            s.set("orders", 2 * mmax + 1);
        }
        Command::Wigner { io, grid } => {
            let f = load1(&io.input)?;
            s.edge1("input", &f);
            let g = grid.apply(f.grid)?;
            let w = wigner(&f, &g, &g)?;
            s.set("integral", w.values.iter().map(|v| v.re).sum::<f64>() * w.grid.cell());
            save2(&io.out, &w)?;
        }
        Command::Tomogram { state, out, matrix, angles, crosscheck } => {
            let path = state.ok_or_else(|| Failure::Usage("--state is required".into()))?;
            let f = load1(&path)?;
            let norm = f.norm();
            if (norm - 1.0).abs() > NORM_TOL {
                return Err(Failure::Integrity(format!("state is not normalized: norm {norm}")));
            }
            s.edge1("input", &f);
            let x = f.grid;
            let t = match (matrix, angles) {
                (Some(text), None) => {
                    let m = RayMatrix::parse(&text)?;
                    Tomogram::new(x, vec![(m.d, m.b)], vec![tomogram_direct(&f, &m, &x)?])?
                }
                (None, Some(n)) if n > 0 => tomogram_from_angles(&f, &half_turn(n), &x)?,
                _ => return Err(Failure::Usage("give either --matrix or --angles <n> with n > 0".into())),
            };
            if crosscheck {
                let w = wigner(&f, &x, &x)?;
                let mut worst: f64 = 0.0;
                for (&(d, b), row) in t.directions.iter().zip(&t.values) {
                    let route = radon_wigner(&w, d, b, &x)?;
                    worst = row.iter().zip(&route).map(|(a, b)| (a - b).abs()).fold(worst, f64::max);
                }
                s.set("crosscheck_residual", worst);
            }
            s.set("rows", t.values.len());
            let mut w = create(&out)?;
            write_tomogram(&mut w, &t)?;
            w.flush().map_err(io_err)?;
        }
        Command::Invradon { io } => {
            let t = read_tomogram(BufReader::new(open(&io.input)?))?;
            let w = inverse_radon(&t)?;
            s.set("integral", w.values.iter().map(|v| v.re).sum::<f64>() * w.grid.cell());
            save2(&io.out, &w)?;
        }
        Command::Husimi { io, kappa, crosscheck, grid } => {
            let f = load1(&io.input)?;
            s.edge1("input", &f);
            let g = grid.apply(f.grid)?;
            let h = husimi(&f, kappa, &g, &g)?;
            if crosscheck {
                let mut worst: f64 = 0.0;
                for i in probe_indices(g.n) {
                    for j in probe_indices(g.n) {
                        worst = worst.max((husimi_via_wt(&f, kappa, g.x(i), g.x(j))? - h.at(i, j).re).abs());
                    }
                }
                s.set("crosscheck_residual", worst);
            }
            save2(&io.out, &h)?;
        }
        Command::Pqxform { io, inverse, grid } => {
            let f = load2(&io.input)?;
            s.edge2("input", &f);
            let out = grid.apply2(f.grid)?;
            let g = if inverse { pq_inverse_grid(&f, &out) } else { pq_transform_grid(&f, &out) };
            s.set("energy_ratio", g.energy() / f.energy());
            save2(&io.out, &g)?;
        }
        Command::Fradon { io, order, angles, inverse } => {
            if inverse {
                let p = read_projections(BufReader::new(open(&io.input)?))?;
                let out = Grid2D::square(p.lgrid);
                let g = frac_radon_inverse(&p, order, &out)?;
                save2(&io.out, &g)?;
            } else {
                let f = load2(&io.input)?;
                s.edge2("input", &f);
                let p = frac_radon_all(&f, order, &f.grid.x, &half_turn(angles))?;
                let mut w = create(&io.out)?;
                write_projections(&mut w, &p)?;
                w.flush().map_err(io_err)?;
                s.set("angles", angles);
            }
        }
        Command::Wt { io, wavelet, scales, reconstruct } => {
            let f = load1(&io.input)?;
            s.edge1("input", &f);
            let w = MotherWavelet1D::new(floats(&wavelet)?)?;
            let sg = scales.grid()?;
            if let Some(msg) = coverage_warning(&sg, &w, &f.grid) {
                s.warn(msg);
            }
            let map = wt_map(&f, &w, &sg, &f.grid)?;
            let want = 2.0 * c_psi(&w)? * f.norm().powi(2);
            s.set("parseval_residual", (wt_energy(&map, &w) / want - 1.0).abs());
            let mut out = create(&io.out)?;
            write_wtmap(&mut out, &map)?;
            out.flush().map_err(io_err)?;
            if let Some(path) = reconstruct {
                let back = wt_inverse(&map, &w, &f.grid)?;
                s.set("reconstruction_error", back.relative_l2(&f));
                save1(&path, &back)?;
            }
        }
        Command::Cwt { io, k, scales, pad, reconstruct } => {
            let f = load2(&io.input)?;
            s.edge2("input", &f);
            let w = MotherWaveletC::new(floats(&k)?)?;
            let map = cwt_map(&f, &w, &scales.grid()?, pad)?;
            let want = c_psi_prime(&w)? * f.energy() / std::f64::consts::PI;
            s.set("parseval_residual", (cwt_energy(&map) / want - 1.0).abs());
            let mut out = create(&io.out)?;
            map.write_on(&mut out, &f.grid)?;
            out.flush().map_err(io_err)?;
            if let Some(path) = reconstruct {
                let back = cwt_inverse(&map, &w, &f.grid)?;
                s.set("reconstruction_error", back.relative_l2(&f));
                save2(&path, &back)?;
            }
        }
        Command::Swt { input, mother, k, s: sv, r, kappa } => {
            let f = load2(&input)?;
            s.edge2("input", &f);
            let (sc, rc, kc) = (complex(&sv)?, complex(&r)?, complex(&kappa)?);
            let value = match (mother, k) {
                (Some(path), _) => {
                    let psi = load2(&path)?;
                    swt(&f, &psi as &dyn Mother2D, sc, rc, kc)?
                }
                (None, k) => {
                    let psi = MotherWaveletC::new(floats(k.as_deref().unwrap_or("0.5 0.5"))?)?;
                    swt(&f, &psi, sc, rc, kc)?
                }
            };
            s.set("re", value.re);
            s.set("im", value.im);
        }
        Command::Abcd { compose: list, q } => {
            if list.is_empty() {
                return Err(Failure::Usage("--compose needs at least one matrix".into()));
            }
            let mut m = RayMatrix::parse(&list[0])?;
            for text in &list[1..] {
                m = compose(&m, &RayMatrix::parse(text)?);
            }
            println!("{m}");
            s.set("matrix", vec![m.a, m.b, m.c, m.d]);
            s.set("det", m.det());
            if q {
                let beam = q_of_matrix(&m)?;
                s.set("q", vec![beam.q.re, beam.q.im]);
            }
        }
        Command::Selftest => {
            let checks = selftest::run_all();
            let mut failed = Vec::new();
            for c in &checks {
                let status = if c.passed() { "PASS" } else { "FAIL" };
                let detail = c.error.as_deref().map(|e| format!(" ({e})")).unwrap_or_default();
                eprintln!("{status} {} residual {:.3e} tol {:.1e} in {:.2}s{detail}", c.name, c.residual, c.tol, c.seconds);
                if !c.passed() {
                    failed.push(c.name);
                }
            }
            if !failed.is_empty() {
                return Err(Failure::Integrity(format!("selftest failed: {}", failed.join(", "))));
            }
            s.set("checks", checks.len());
        }
    }
    Ok(s.finish())
}

#[derive(Default)]
struct Summary {
    fields: Map<String, Value>,
    warnings: Vec<String>,
}

impl Summary {
    fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.fields.insert(key.into(), v.into());
    }

    fn warn(&mut self, msg: String) {
        eprintln!("warning: {msg}");
        self.warnings.push(msg);
    }

    fn edge_value(&mut self, what: &str, e: f64) {
        if e > EDGE_TOL {
            self.warn(format!("{what} does not decay at the grid edge (|f| = {e:.3e})"));
        }
    }

    fn edge1(&mut self, what: &str, f: &Field1D) {
        self.edge_value(what, f.edge_magnitude());
    }

    fn edge2(&mut self, what: &str, f: &Field2D) {
        self.edge_value(what, f.edge_magnitude());
    }

    fn finish(mut self) -> Map<String, Value> {
        if !self.warnings.is_empty() {
            self.fields.insert("warnings".into(), json!(self.warnings));
        }
        self.fields
    }
}

impl GridArgs {
    fn apply(&self, g: Grid1D) -> Result<Grid1D, Failure> {
        Ok(Grid1D::new(self.n.unwrap_or(g.n), self.x0.unwrap_or(g.x0), self.dx.unwrap_or(g.dx))?)
    }

    /// Overrides both axes alike.
    fn apply2(&self, g: Grid2D) -> Result<Grid2D, Failure> {
        Ok(Grid2D::new(self.apply(g.x)?, self.apply(g.y)?))
    }
}

impl ScaleArgs {
    fn grid(&self) -> Result<ScaleGrid, Failure> {
        Ok(ScaleGrid::log_spaced(self.mu_min, self.mu_max, self.nmu)?)
    }
}

/// Five indices spread over `0..n`.
fn probe_indices(n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (1..=5).map(|k| k * n / 6).collect();
    v.dedup();
    v
}

fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

fn floats(text: &str) -> Result<Vec<f64>, Failure> {
    text.split_whitespace()
        .map(|t| t.parse::<f64>().map_err(|_| Failure::Usage(format!("'{t}' is not a number"))))
        .collect()
}

fn complex(text: &str) -> Result<Complex64, Failure> {
    match floats(text)?.as_slice() {
        [re, im] => Ok(Complex64::new(*re, *im)),
        [re] => Ok(Complex64::new(*re, 0.0)),
        _ => Err(Failure::Usage(format!("expected \"re im\", got '{text}'"))),
    }
}

fn io_err(e: std::io::Error) -> Failure {
    Failure::Usage(e.to_string())
}

fn open(path: &Path) -> Result<File, Failure> {
    File::open(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path).map(BufWriter::new).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load1(path: &Path) -> Result<Field1D, Failure> {
    Ok(read_field1d(BufReader::new(open(path)?))?)
}

fn load2(path: &Path) -> Result<Field2D, Failure> {
    Ok(read_field2d(BufReader::new(open(path)?))?)
}

fn save1(path: &Path, f: &Field1D) -> Result<(), Failure> {
    let mut w = create(path)?;
    write_field1d(&mut w, f)?;
    w.flush().map_err(io_err)
}

fn save2(path: &Path, f: &Field2D) -> Result<(), Failure> {
    let mut w = create(path)?;
    write_field2d(&mut w, f)?;
    w.flush().map_err(io_err)
}

//! Command-line front end.
//!
//! ```text
//! skewcirc verify
//! skewcirc classify --subspace beta2 --phi pi/3 --a 1
//! skewcirc table --grid 200 --out table.csv
//! skewcirc sample --subspace hyper --phi pi/2 --a 0 --n 1000 --seed 7 --format json
//! ```
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or domain error.

use std::f64::consts::PI;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::quadrics::{
    circle_form_closed, classify, curve_table, degenerate_geometry, hyper_sphere_diagonal,
    hyper_sphere_form, is_right_angle, sample_points, sphere_form_closed, table_phi_grid,
    CircleVariant, Hyperplane, QuadraticForm, QuadricClass, SphereVariant, ZERO_TOL,
};
use crate::structure::check_phi;
use crate::verify::{run_all, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "skewcirc",
    version,
    about = "Spheres of the associated metric of a skew-circulant structure, classified as quadrics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the fixed-seed invariant suites.
    Verify {
        /// Replace sampled metrics by incompatible ones (negative control).
        #[arg(long, hide = true)]
        inject_corrupt_metric: bool,
    },
    /// Classify the locus g~(v, v) = a in a subspace.
    Classify {
        #[arg(long)]
        subspace: Subspace,
        /// Angle in radians; accepts forms like `pi/3`, `2pi/3`, `1.2`.
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        phi: f64,
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
    },
    /// Tabulate the beta2 and beta3 curve types over a grid of angles.
    Table {
        #[arg(long)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Write points of a locus. `hyper` points are in the diagonalizing
    /// coordinates; at `a = 0` they are scaled onto the unit sphere.
    Sample {
        #[arg(long)]
        subspace: Subspace,
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        phi: f64,
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Subspace {
    /// The whole tangent space.
    Hyper,
    Alpha1,
    Alpha2,
    Beta1,
    Beta2,
    Beta3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// Parses radians, also accepting `[-][k][*]pi[/d]`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t: String = s
        .trim()
        .to_ascii_lowercase()
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect();
    let bad = || format!("invalid angle `{s}`");
    let value = if let Ok(v) = t.parse::<f64>() {
        v
    } else {
        let (sign, rest) = match t.strip_prefix('-') {
            Some(r) => (-1.0, r),
            None => (1.0, t.strip_prefix('+').unwrap_or(&t)),
        };
        let idx = rest.find("pi").ok_or_else(bad)?;
        let coeff = rest[..idx].trim_end_matches('*');
        let coeff = if coeff.is_empty() {
            1.0
        } else {
            coeff.parse::<f64>().map_err(|_| bad())?
        };
        let after = &rest[idx + 2..];
        let value = coeff * PI;
        if after.is_empty() {
            sign * value
        } else {
            let d = after.strip_prefix('/').ok_or_else(bad)?;
            let d = d.parse::<f64>().map_err(|_| bad())?;
            if d == 0.0 {
                return Err(bad());
            }
            sign * value / d
        }
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::usage(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Verify {
            inject_corrupt_metric,
        } => cmd_verify(inject_corrupt_metric, out),
        Command::Classify { subspace, phi, a } => cmd_classify(subspace, phi, a, out),
        Command::Table {
            grid,
            out: path,
            format,
        } => cmd_table(grid, path, format, out),
        Command::Sample {
            subspace,
            phi,
            a,
            n,
            seed,
            out: path,
            format,
        } => cmd_sample(subspace, phi, a, n, seed, path, format, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn io_failure(e: impl std::fmt::Display) -> Failure {
    Failure::usage(format!("i/o: {e}"))
}

fn emit(bytes: &[u8], path: Option<PathBuf>, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(&p, bytes).map_err(|e| io_failure(format!("{}: {e}", p.display()))),
        None => out.write_all(bytes).map_err(io_failure),
    }
}

fn cmd_verify(corrupt: bool, out: &mut dyn Write) -> Outcome {
    let outcomes = run_all(VerifyOptions {
        corrupt_metric: corrupt,
    });
    let passed = outcomes.iter().filter(|o| o.passed).count();
    for o in &outcomes {
        writeln!(out, "{o}").map_err(io_failure)?;
    }
    writeln!(out, "{passed}/{} suites passed", outcomes.len()).map_err(io_failure)?;
    Ok(if passed == outcomes.len() {
        EXIT_OK
    } else {
        EXIT_FAILURE
    })
}

/// The form of `g~(v, v) = a` on `subspace`, in the coordinates of its
/// orthonormal frame (the S-basis coordinates for `hyper`).
fn subspace_form(subspace: Subspace, phi: f64, a: f64) -> Result<QuadraticForm, Failure> {
    check_phi(phi)?;
    let form = match subspace {
        Subspace::Hyper => hyper_sphere_form(a)?,
        Subspace::Alpha1 => sphere_form_closed(phi, SphereVariant::Alpha1, a)?,
        Subspace::Alpha2 => sphere_form_closed(phi, SphereVariant::Alpha2, a)?,
        Subspace::Beta1 => {
            if is_right_angle(phi) {
                return Err(Failure::usage(
                    "form is identically zero: phi != pi/2 required",
                ));
            }
            circle_form_closed(phi, CircleVariant::Beta1, a)?
        }
        Subspace::Beta2 => circle_form_closed(phi, CircleVariant::Beta2, a)?,
        Subspace::Beta3 => circle_form_closed(phi, CircleVariant::Beta3, a)?,
    };
    Ok(form)
}

#[derive(Serialize)]
struct Line {
    normal: Vec<f64>,
    offset: f64,
    equation: String,
}

impl From<&Hyperplane> for Line {
    fn from(h: &Hyperplane) -> Self {
        Self {
            normal: h.normal.clone(),
            offset: h.offset,
            equation: h.equation(),
        }
    }
}

#[derive(Serialize)]
struct ClassifyRecord {
    subspace: Subspace,
    phi: f64,
    a: f64,
    coefficients: Vec<Vec<f64>>,
    class: QuadricClass,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    degenerate_geometry: Vec<Line>,
}

fn cmd_classify(subspace: Subspace, phi: f64, a: f64, out: &mut dyn Write) -> Outcome {
    let form = subspace_form(subspace, phi, a)?;
    let record = ClassifyRecord {
        subspace,
        phi,
        a,
        coefficients: form.coefficients(),
        class: classify(&form, ZERO_TOL),
        degenerate_geometry: degenerate_geometry(&form, ZERO_TOL)
            .iter()
            .map(Line::from)
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&record).map_err(io_failure)?;
    text.push('\n');
    emit(text.as_bytes(), None, out)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct TableRow {
    phi: f64,
    a: f64,
    class_k2: String,
    class_k3: String,
    agrees_with_closed_form: bool,
}

fn float_field(x: f64) -> String {
    format!("{x:.16e}")
}

fn cmd_table(grid: usize, path: Option<PathBuf>, format: Format, out: &mut dyn Write) -> Outcome {
    if grid < 2 {
        return Err(Failure::usage(format!(
            "--grid must be at least 2, got {grid}"
        )));
    }
    let mut rows = Vec::new();
    for phi in table_phi_grid(grid) {
        for a in [-1.0, 0.0, 1.0] {
            let k2 = classify(&circle_form_closed(phi, CircleVariant::Beta2, a)?, ZERO_TOL);
            let k3 = classify(&circle_form_closed(phi, CircleVariant::Beta3, a)?, ZERO_TOL);
            let want = curve_table(phi, a)?;
            rows.push(TableRow {
                phi,
                a,
                class_k2: k2.to_string(),
                class_k3: k3.to_string(),
                agrees_with_closed_form: k2 == want && k3 == want,
            });
        }
    }
    let bytes = match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "phi",
                "a",
                "class_k2",
                "class_k3",
                "agrees_with_closed_form",
            ])
            .map_err(io_failure)?;
            for r in &rows {
                w.write_record([
                    float_field(r.phi),
                    float_field(r.a),
                    r.class_k2.clone(),
                    r.class_k3.clone(),
                    r.agrees_with_closed_form.to_string(),
                ])
                .map_err(io_failure)?;
            }
            w.into_inner().map_err(io_failure)?
        }
        Format::Json => {
            let mut v = serde_json::to_vec_pretty(&rows).map_err(io_failure)?;
            v.push(b'\n');
            v
        }
    };
    emit(&bytes, path, out)?;
    Ok(if rows.iter().all(|r| r.agrees_with_closed_form) {
        EXIT_OK
    } else {
        EXIT_FAILURE
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_sample(
    subspace: Subspace,
    phi: f64,
    a: f64,
    n: usize,
    seed: u64,
    path: Option<PathBuf>,
    format: Format,
    out: &mut dyn Write,
) -> Outcome {
    if n == 0 {
        return Err(Failure::usage("--n must be positive"));
    }
    let points = if subspace == Subspace::Hyper {
        check_phi(phi)?;
        let form = hyper_sphere_diagonal(a)?;
        let mut points = sample_points(&form, n, seed)?;
        if a == 0.0 {
            for p in points.iter_mut() {
                let len = p.iter().map(|x| x * x).sum::<f64>().sqrt();
                p.iter_mut().for_each(|x| *x /= len);
            }
        }
        points
    } else {
        sample_points(&subspace_form(subspace, phi, a)?, n, seed)?
    };
    let dim = points[0].len();
    let bytes = match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&["x", "y", "z", "t"][..dim])
                .map_err(io_failure)?;
            for p in &points {
                w.write_record(p.iter().map(|&x| float_field(x)))
                    .map_err(io_failure)?;
            }
            w.into_inner().map_err(io_failure)?
        }
        Format::Json => {
            let mut v = serde_json::to_vec(&points).map_err(io_failure)?;
            v.push(b'\n');
            v
        }
    };
    emit(&bytes, path, out)?;
    Ok(EXIT_OK)
}

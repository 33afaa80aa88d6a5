//! Convergence experiments, condition-number histograms and CSV I/O.

use std::fmt;
use std::io::{Read, Write};
use std::path::Path;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use statrs::function::gamma::{digamma, gamma};

use crate::assembly::{assemble, EdgeScheme, InteriorRule};
use crate::driver::{fit, least_squares_slope, Method};
use crate::error::{Error, Result};
use crate::mesh::Mesh;

/// Probes per subinterval used when measuring errors between nodes.
pub const PROBES_PER_PIECE: usize = 10;

/// Errors below `ROUNDING_FLOOR · eps · scale` are excluded from slope fits.
pub const ROUNDING_FLOOR: f64 = 100.0;

/// Slopes are fitted over this many of the finest rows above the floor, so
/// that pre-asymptotic coarse meshes do not bias the estimate.
pub const TAIL_ROWS: usize = 3;

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A function with a known derivative on a fixed interval.
#[derive(Clone)]
pub enum TestFunction {
    /// `1/(1 + 25x²)` on `[−1, 1]`.
    Runge,
    /// `1/Γ(x)` on `[1, 3]`.
    RecipGamma,
    /// `sign(x)` on `[−1, 1]`; errors are measured only where `|x| > h`.
    Signum,
    /// A constant on `[−1, 1]`.
    Constant(f64),
    Custom {
        name: String,
        domain: (f64, f64),
        value: RealFn,
        derivative: RealFn,
    },
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TestFunction({})", self.name())
    }
}

impl TestFunction {
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "runge" => Ok(TestFunction::Runge),
            "recip_gamma" | "recip-gamma" => Ok(TestFunction::RecipGamma),
            "signum" => Ok(TestFunction::Signum),
            "constant" => Ok(TestFunction::Constant(1.0)),
            other => Err(Error::UnknownFunction(other.to_string())),
        }
    }

    pub fn custom(
        name: impl Into<String>,
        domain: (f64, f64),
        value: impl Fn(f64) -> f64 + Send + Sync + 'static,
        derivative: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        TestFunction::Custom {
            name: name.into(),
            domain,
            value: Arc::new(value),
            derivative: Arc::new(derivative),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            TestFunction::Runge => "runge",
            TestFunction::RecipGamma => "recip_gamma",
            TestFunction::Signum => "signum",
            TestFunction::Constant(_) => "constant",
            TestFunction::Custom { name, .. } => name,
        }
    }

    pub fn domain(&self) -> (f64, f64) {
        match self {
            TestFunction::RecipGamma => (1.0, 3.0),
            TestFunction::Custom { domain, .. } => *domain,
            _ => (-1.0, 1.0),
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        match self {
            TestFunction::Runge => 1.0 / (1.0 + 25.0 * x * x),
            TestFunction::RecipGamma => 1.0 / gamma(x),
            TestFunction::Signum => {
                if x > 0.0 {
                    1.0
                } else if x < 0.0 {
                    -1.0
                } else {
                    0.0
                }
            }
            TestFunction::Constant(c) => *c,
            TestFunction::Custom { value, .. } => value(x),
        }
    }

    pub fn derivative(&self, x: f64) -> f64 {
        match self {
            TestFunction::Runge => {
                let q = 1.0 + 25.0 * x * x;
                -50.0 * x / (q * q)
            }
            TestFunction::RecipGamma => -digamma(x) / gamma(x),
            TestFunction::Signum | TestFunction::Constant(_) => 0.0,
            TestFunction::Custom { derivative, .. } => derivative(x),
        }
    }
}

/// How the nodes of each experiment are placed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshKind {
    Uniform,
    Chebyshev,
    /// Cumulative sums of uniform `(0, 1)` widths, mapped onto the domain.
    Random(u64),
}

impl MeshKind {
    pub fn label(&self) -> String {
        match self {
            MeshKind::Uniform => "uniform".into(),
            MeshKind::Chebyshev => "chebyshev".into(),
            MeshKind::Random(seed) => format!("random:{seed}"),
        }
    }

    /// Builds the mesh with `n` subintervals; random meshes draw from a
    /// stream keyed on `n` so every row is reproducible on its own.
    pub fn build(&self, a: f64, b: f64, n: usize) -> Result<Mesh> {
        match *self {
            MeshKind::Uniform => Mesh::uniform(a, b, n),
            MeshKind::Chebyshev => Mesh::chebyshev(a, b, n),
            MeshKind::Random(seed) => Mesh::from_widths(&random_widths(seed, n as u64, n), a, b),
        }
    }
}

/// `n` widths drawn uniformly from `(0, 1)`.
pub fn random_widths(seed: u64, stream: u64, n: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    (0..n)
        .map(|_| rng.sample(rand::distributions::Open01))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub mesh_kind: String,
    pub err_value: f64,
    pub err_deriv_nodes: f64,
    pub err_deriv_between: f64,
    pub cond: f64,
}

/// Fitted `−d log(error)/d log(n)` per error column over the [`TAIL_ROWS`]
/// finest rows above the rounding floor; `None` when fewer than two rows
/// qualify.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct ConvergenceSlopes {
    pub value: Option<f64>,
    pub deriv_nodes: Option<f64>,
    pub deriv_between: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub function: String,
    pub method: &'static str,
    pub rows: Vec<ConvergenceRow>,
    pub slopes: ConvergenceSlopes,
    /// Set for signum runs, where the errors exclude `[−h, h]`.
    pub note: Option<String>,
}

impl ConvergenceReport {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().from_writer(out);
        for row in &self.rows {
            w.serialize(row).map_err(csv_error)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Runs `method` on `function` for every `n` in `n_list`.
pub fn run_convergence(
    function: &TestFunction,
    mesh_kind: MeshKind,
    method: Method,
    n_list: &[usize],
) -> Result<ConvergenceReport> {
    if let Some(w) = n_list.windows(2).find(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(format!(
            "n list must be strictly increasing, got {} then {}",
            w[0], w[1]
        )));
    }
    let needed = method.edges().min_subintervals();
    if let Some(&n) = n_list.iter().find(|&&n| n < needed) {
        return Err(Error::TooFewNodes {
            needed: needed + 1,
            got: n + 1,
        });
    }
    let rows = n_list
        .par_iter()
        .map(|&n| convergence_row(function, mesh_kind, method, n))
        .collect::<Result<Vec<_>>>()?;

    let (a, b) = function.domain();
    let grid: Vec<f64> = (0..=200).map(|i| a + (b - a) * i as f64 / 200.0).collect();
    let value_scale = grid
        .iter()
        .map(|&x| function.value(x).abs())
        .fold(0.0, f64::max);
    let deriv_scale = grid
        .iter()
        .map(|&x| function.derivative(x).abs())
        .fold(0.0, f64::max)
        .max(value_scale);
    let slopes = ConvergenceSlopes {
        value: fitted_order(&rows, |r| r.err_value, value_scale),
        deriv_nodes: fitted_order(&rows, |r| r.err_deriv_nodes, deriv_scale),
        deriv_between: fitted_order(&rows, |r| r.err_deriv_between, deriv_scale),
    };
    let note = matches!(function, TestFunction::Signum)
        .then(|| "errors measured only outside [-h, h] around the jump".to_string());
    Ok(ConvergenceReport {
        function: function.name().to_string(),
        method: method.name(),
        rows,
        slopes,
        note,
    })
}

fn convergence_row(
    function: &TestFunction,
    mesh_kind: MeshKind,
    method: Method,
    n: usize,
) -> Result<ConvergenceRow> {
    let (a, b) = function.domain();
    let mesh = mesh_kind.build(a, b, n)?;
    let values: Vec<f64> = mesh.nodes().iter().map(|&x| function.value(x)).collect();
    let fitted = fit(&mesh, &values, method)?;
    let cubic = &fitted.cubic;

    let exclude = match function {
        TestFunction::Signum => mesh.widths().iter().fold(0.0f64, |m, w| m.max(w.abs())),
        _ => -1.0,
    };
    let keep = |x: f64| x.abs() > exclude;

    let mut err_deriv_nodes = 0.0f64;
    let mut err_value = 0.0f64;
    for (k, &x) in mesh.nodes().iter().enumerate() {
        if keep(x) {
            err_deriv_nodes =
                err_deriv_nodes.max((cubic.slopes()[k] - function.derivative(x)).abs());
        }
    }
    let mut err_deriv_between = 0.0f64;
    for k in 0..n {
        let (lo, h) = (mesh.node(k), mesh.width(k + 1));
        for j in 0..PROBES_PER_PIECE {
            let x = lo + h * (j as f64 + 0.5) / PROBES_PER_PIECE as f64;
            if !keep(x) {
                continue;
            }
            err_value = err_value.max((cubic.evaluate(x)? - function.value(x)).abs());
            err_deriv_between = err_deriv_between
                .max((cubic.evaluate_derivative(x)? - function.derivative(x)).abs());
        }
    }
    Ok(ConvergenceRow {
        n,
        mesh_kind: mesh_kind.label(),
        err_value,
        err_deriv_nodes,
        err_deriv_between,
        cond: fitted.derivatives.condition,
    })
}

fn fitted_order(
    rows: &[ConvergenceRow],
    column: impl Fn(&ConvergenceRow) -> f64,
    scale: f64,
) -> Option<f64> {
    let floor = ROUNDING_FLOOR * f64::EPSILON * scale;
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| column(r) > floor)
        .map(|r| ((r.n as f64).ln(), column(r).ln()))
        .collect();
    let tail = &pts[pts.len().saturating_sub(TAIL_ROWS)..];
    (tail.len() >= 2).then(|| -least_squares_slope(tail))
}

/// Distribution of `log10` condition numbers over random meshes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CondHistogram {
    pub n: usize,
    pub seed: u64,
    pub samples: usize,
    /// `bins + 1` increasing edges in `log10(condition)`.
    pub bin_edges: Vec<f64>,
    pub counts: Vec<usize>,
    /// Per-trial `log10(condition)` in trial order.
    pub log10_conditions: Vec<f64>,
}

impl CondHistogram {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().from_writer(out);
        w.write_record(["bin_lo", "bin_hi", "count"])
            .map_err(csv_error)?;
        for (i, c) in self.counts.iter().enumerate() {
            w.write_record([
                self.bin_edges[i].to_string(),
                self.bin_edges[i + 1].to_string(),
                c.to_string(),
            ])
            .map_err(csv_error)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// 1-norm condition number of the assembled compact matrix (Compact4 edges)
/// on the mesh with the given widths.
pub fn compact_condition_from_widths(widths: &[f64]) -> Result<f64> {
    let mesh = Mesh::from_widths(widths, -1.0, 1.0)?;
    let zeros = vec![0.0; mesh.len()];
    assemble(&mesh, &zeros, InteriorRule::Compact, EdgeScheme::Compact4)?
        .matrix
        .one_norm_condition()
}

/// Condition numbers of `trials` random meshes with `n` subintervals.
/// Trial `i` draws from stream `i` of the seeded generator.
pub fn run_cond_histogram(
    n: usize,
    trials: usize,
    seed: u64,
    bins: usize,
) -> Result<CondHistogram> {
    if n < 4 {
        return Err(Error::TooFewNodes {
            needed: 5,
            got: n + 1,
        });
    }
    if trials == 0 || bins == 0 {
        return Err(Error::InvalidArgument(
            "trials and bins must be positive".into(),
        ));
    }
    let log10_conditions = (0..trials as u64)
        .into_par_iter()
        .map(|i| compact_condition_from_widths(&random_widths(seed, i, n)).map(f64::log10))
        .collect::<Result<Vec<_>>>()?;

    let lo = log10_conditions
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let hi = log10_conditions
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let (lo, hi) = if hi > lo {
        (lo, hi)
    } else {
        (lo - 0.5, hi + 0.5)
    };
    let width = (hi - lo) / bins as f64;
    let mut bin_edges: Vec<f64> = (0..=bins).map(|i| lo + width * i as f64).collect();
    bin_edges[bins] = hi;
    let mut counts = vec![0usize; bins];
    for &c in &log10_conditions {
        let i = (((c - lo) / width) as usize).min(bins - 1);
        counts[i] += 1;
    }
    Ok(CondHistogram {
        n,
        seed,
        samples: trials,
        bin_edges,
        counts,
        log10_conditions,
    })
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map(|p| p.line()).unwrap_or(0);
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::from(io),
        other => Error::Parse {
            line,
            message: format!("{other:?}"),
        },
    }
}

fn parse_field(field: &str, line: u64, column: &str) -> Result<f64> {
    let v: f64 = field.trim().parse().map_err(|_| Error::Parse {
        line,
        message: format!("{column}: cannot parse {field:?} as a number"),
    })?;
    if !v.is_finite() {
        return Err(Error::Parse {
            line,
            message: format!("{column}: non-finite value {field:?}"),
        });
    }
    Ok(v)
}

fn read_columns<R: Read>(input: R, header: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(input);
    let found: Vec<String> = reader
        .headers()
        .map_err(csv_error)?
        .iter()
        .map(|s| s.trim().to_string())
        .collect();
    if found.len() < header.len() || found.iter().zip(header).any(|(a, b)| a != b) {
        return Err(Error::Parse {
            line: 1,
            message: format!(
                "expected header {:?}, found {:?}",
                header.join(","),
                found.join(",")
            ),
        });
    }
    let mut columns = vec![Vec::new(); header.len()];
    for record in reader.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        for (j, name) in header.iter().enumerate() {
            let field = record.get(j).ok_or_else(|| Error::Parse {
                line,
                message: format!("missing column {name}"),
            })?;
            columns[j].push(parse_field(field, line, name)?);
        }
    }
    Ok(columns)
}

/// Reads an `x,y` sample file.
pub fn read_samples<R: Read>(input: R) -> Result<(Mesh, Vec<f64>)> {
    let mut cols = read_columns(input, &["x", "y"])?;
    let y = cols.pop().unwrap_or_default();
    let x = cols.pop().unwrap_or_default();
    Ok((Mesh::from_nodes(x)?, y))
}

/// Reads a mesh file with a single `x` column. Files with extra columns,
/// such as `x,y`, are accepted and the extra columns ignored.
pub fn read_mesh<R: Read>(input: R) -> Result<Mesh> {
    let mut cols = read_columns(input, &["x"])?;
    Mesh::from_nodes(cols.pop().unwrap_or_default())
}

pub fn read_samples_file(path: &Path) -> Result<(Mesh, Vec<f64>)> {
    read_samples(std::fs::File::open(path).map_err(|e| io_at(path, e))?)
}

pub fn read_mesh_file(path: &Path) -> Result<Mesh> {
    read_mesh(std::fs::File::open(path).map_err(|e| io_at(path, e))?)
}

fn io_at(path: &Path, e: std::io::Error) -> Error {
    Error::Io(format!("{}: {e}", path.display()))
}

/// Writes named columns with a header row; floats use the shortest
/// representation that reads back to the same value.
pub fn write_columns<W: Write>(out: W, header: &[&str], columns: &[&[f64]]) -> Result<()> {
    let rows = columns.first().map_or(0, |c| c.len());
    if let Some(c) = columns.iter().find(|c| c.len() != rows) {
        return Err(Error::LengthMismatch {
            expected: rows,
            got: c.len(),
        });
    }
    let mut w = csv::WriterBuilder::new().from_writer(out);
    w.write_record(header).map_err(csv_error)?;
    for i in 0..rows {
        w.write_record(columns.iter().map(|c| c[i].to_string()))
            .map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

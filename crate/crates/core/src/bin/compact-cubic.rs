use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use compact_cubic::assembly::{assemble, EdgeScheme, InteriorRule};
use compact_cubic::harness::{
    read_mesh_file, read_samples_file, run_cond_histogram, run_convergence, write_columns,
    MeshKind, TestFunction,
};
use compact_cubic::{fit, Error, Method, Result};

#[derive(Parser)]
#[command(
    name = "compact-cubic",
    version,
    about = "Cubic splines and compact cubic interpolants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit an interpolant and write its ppform as JSON.
    Interp {
        #[command(flatten)]
        method: MethodArgs,
        #[arg(long)]
        input: PathBuf,
        /// Evaluate on this many equispaced points.
        #[arg(long)]
        eval_grid: Option<usize>,
        /// CSV for the grid evaluations (default: stdout after the JSON).
        #[arg(long)]
        eval_out: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Nodal first derivatives as x,y,dydx.
    Deriv {
        #[command(flatten)]
        method: MethodArgs,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Leading minors, total-nonnegativity verdict and condition number of
    /// the compact matrix on a mesh.
    MatrixProps {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Edges::Compact4)]
        edges: Edges,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Error table for a test function over doubling n.
    Convergence {
        #[command(flatten)]
        method: MethodArgs,
        #[arg(long, default_value = "runge")]
        function: String,
        #[arg(long, value_enum, default_value_t = Kind::Uniform)]
        mesh: Kind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        n_min: usize,
        #[arg(long, default_value_t = 512)]
        n_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Histogram of log10 condition numbers over random meshes.
    CondHist {
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        bins: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct MethodArgs {
    #[arg(long, default_value = "compact4")]
    method: String,
    #[arg(long, allow_hyphen_values = true)]
    dleft: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    dright: Option<f64>,
}

impl MethodArgs {
    fn parse(&self) -> Result<Method> {
        Method::parse(&self.method, self.dleft, self.dright)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Uniform,
    Chebyshev,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum Edges {
    Compact4,
    Compactc,
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Interp {
            method,
            input,
            eval_grid,
            eval_out,
            out,
        } => {
            let (mesh, y) = read_samples_file(&input)?;
            let fitted = fit(&mesh, &y, method.parse()?)?;
            let mut w = output(out.as_deref())?;
            writeln!(w, "{}", fitted.cubic.to_ppform().to_json())?;
            w.flush()?;
            if let Some(m) = eval_grid {
                if m < 2 {
                    return Err(Error::InvalidArgument(
                        "--eval-grid needs at least 2 points".into(),
                    ));
                }
                let (a, b) = (mesh.first(), mesh.last());
                let xs: Vec<f64> = (0..m)
                    .map(|i| {
                        if i + 1 == m {
                            b
                        } else {
                            a + (b - a) * i as f64 / (m - 1) as f64
                        }
                    })
                    .collect();
                let ys = xs
                    .iter()
                    .map(|&x| fitted.cubic.evaluate(x))
                    .collect::<Result<Vec<_>>>()?;
                write_columns(output(eval_out.as_deref())?, &["x", "y"], &[&xs, &ys])?;
            }
        }
        Command::Deriv { method, input, out } => {
            let (mesh, y) = read_samples_file(&input)?;
            let fitted = fit(&mesh, &y, method.parse()?)?;
            write_columns(
                output(out.as_deref())?,
                &["x", "y", "dydx"],
                &[mesh.nodes(), &y, fitted.cubic.slopes()],
            )?;
        }
        Command::MatrixProps { input, edges, out } => {
            let mesh = read_mesh_file(&input)?;
            let edges = match edges {
                Edges::Compact4 => EdgeScheme::Compact4,
                Edges::Compactc => EdgeScheme::CompactC,
            };
            let zeros = vec![0.0; mesh.len()];
            let matrix = assemble(&mesh, &zeros, InteriorRule::Compact, edges)?.matrix;
            let minors = matrix.leading_minors();
            let tn = match matrix.is_totally_nonnegative(1e-12) {
                Ok(cert) => json!({
                    "totally_nonnegative": cert.totally_nonnegative,
                    "violation": cert.violation.map(|v| format!("{v:?}")),
                }),
                Err(Error::Reducible { row }) => json!({
                    "totally_nonnegative": null,
                    "violation": format!("reducible at row {row}"),
                }),
                Err(e) => return Err(e),
            };
            let report = json!({
                "n": mesh.n(),
                "edges": edges.name(),
                "leading_minors": minors.values,
                "all_minors_positive": minors.all_positive(),
                "tn": tn,
                "condition_1norm": matrix.one_norm_condition()?,
            });
            let mut w = output(out.as_deref())?;
            writeln!(
                w,
                "{}",
                serde_json::to_string_pretty(&report).expect("json values serialize")
            )?;
            w.flush()?;
        }
        Command::Convergence {
            method,
            function,
            mesh,
            seed,
            n_min,
            n_max,
            out,
        } => {
            let f = TestFunction::from_name(&function)?;
            let kind = match mesh {
                Kind::Uniform => MeshKind::Uniform,
                Kind::Chebyshev => MeshKind::Chebyshev,
                Kind::Random => MeshKind::Random(seed),
            };
            if n_min == 0 || n_max < n_min {
                return Err(Error::InvalidArgument("need 0 < n-min <= n-max".into()));
            }
            let ns: Vec<usize> = std::iter::successors(Some(n_min), |&n| Some(n * 2))
                .take_while(|&n| n <= n_max)
                .collect();
            let report = run_convergence(&f, kind, method.parse()?, &ns)?;
            report.write_csv(output(out.as_deref())?)?;
            let s = report.slopes;
            eprintln!(
                "fitted orders: value {:?}, nodal derivative {:?}, derivative between nodes {:?}",
                s.value, s.deriv_nodes, s.deriv_between
            );
            if let Some(note) = &report.note {
                eprintln!("note: {note}");
            }
        }
        Command::CondHist {
            n,
            trials,
            seed,
            bins,
            out,
        } => {
            let hist = run_cond_histogram(n, trials, seed, bins)?;
            hist.write_csv(output(out.as_deref())?)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_io() { 1 } else { 2 })
        }
    }
}

//! Command-line front end. [`run`] is the whole program; the binary only
//! forwards `argv` and the process streams.

use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::curvature::{graph_curvature, Dimension};
use crate::error::{Error, Result};
use crate::generators;
use crate::graph::Graph;
use crate::spectra::{eigen_residual, harmonic_eigenpairs, DEFAULT_EIGEN_TOL};
use crate::verify::{full_report, CheckResult, ReportOptions, VerificationReport, DEFAULT_SAMPLES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "becurv", version, about = "Bakry-Emery curvature and Harnack-inequality checks for weighted graphs")]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated graph as an edge list.
    Gen(GenArgs),
    /// Eigenvalues of the normalized Laplacian.
    Spectrum(SpectrumArgs),
    /// Curvature lower bounds κ(G, m).
    Curvature(CurvatureArgs),
    /// Run every inequality check and report.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenFamily {
    Complete,
    Cycle,
    Hypercube,
    Bridge,
    /// Cartesian product of cycles C_n × C_n2.
    Product,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: GenFamily,
    /// Size: vertices for complete/cycle, dimension for hypercube, clique size for bridge.
    #[arg(long)]
    pub n: usize,
    /// Second factor size for `product` (defaults to `--n`).
    #[arg(long)]
    pub n2: Option<usize>,
    /// Write here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// Edge-list file.
    #[arg(long)]
    pub graph: PathBuf,
    /// Output as JSON.
    #[arg(long)]
    pub json: bool,
    /// Write here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CurvatureArgs {
    /// Edge-list file.
    #[arg(long)]
    pub graph: PathBuf,
    /// Comma-separated dimension values, each > 1 or `inf`.
    #[arg(long, value_parser = parse_dimensions)]
    pub m: DimensionList,
    /// Also print κ(x, m) for every vertex.
    #[arg(long)]
    pub per_vertex: bool,
    /// Output as JSON.
    #[arg(long)]
    pub json: bool,
    /// Write here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Edge-list file.
    #[arg(long)]
    pub graph: PathBuf,
    /// Comma-separated dimension values, each > 1 or `inf`.
    #[arg(long, value_parser = parse_dimensions)]
    pub m: DimensionList,
    /// Comma-separated Harnack parameters, tried in addition to 4 − 2κ/λ.
    #[arg(long, value_parser = parse_alphas)]
    pub alpha: Option<AlphaList>,
    /// Seed for the random test functions.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random functions for the second-difference check.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    /// Full report as JSON.
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    /// One CSV row per check.
    #[arg(long)]
    pub csv: bool,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Write here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DimensionList(pub Vec<Dimension>);

#[derive(Debug, Clone, PartialEq)]
pub struct AlphaList(pub Vec<f64>);

fn parse_dimensions(s: &str) -> std::result::Result<DimensionList, String> {
    s.split(',')
        .map(|t| t.parse::<Dimension>().map_err(|e| e.to_string()))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(DimensionList)
}

fn parse_alphas(s: &str) -> std::result::Result<AlphaList, String> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            match t.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(format!("invalid alpha `{t}`")),
            }
        })
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(AlphaList)
}

/// Runs the program on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match CliConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cfg, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(cfg: CliConfig, stdout: &mut dyn Write) -> Result<i32> {
    match cfg.command {
        Command::Gen(args) => {
            let g = generate(&args)?;
            emit(args.out.as_deref(), stdout, g.to_edge_list().as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Spectrum(args) => {
            let g = load_graph(&args.graph)?;
            let spectrum = harmonic_eigenpairs(&g, DEFAULT_EIGEN_TOL)?;
            let text = if args.json {
                to_json(&spectrum.summary())?
            } else {
                let mut s = String::from("index eigenvalue residual\n");
                for (i, p) in spectrum.pairs.iter().enumerate() {
                    s.push_str(&format!("{i} {} {:.3e}\n", fmt_f64(p.lambda), eigen_residual(&g, p)));
                }
                s
            };
            emit(args.out.as_deref(), stdout, text.as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Curvature(args) => {
            let g = load_graph(&args.graph)?;
            let results = args
                .m
                .0
                .iter()
                .map(|&m| graph_curvature(&g, m))
                .collect::<Result<Vec<_>>>()?;
            let text = if args.json {
                #[derive(Serialize)]
                struct Row<'a> {
                    m: Dimension,
                    kappa: f64,
                    argmin: usize,
                    argmin_label: &'a str,
                    #[serde(skip_serializing_if = "Option::is_none")]
                    per_vertex: Option<&'a [f64]>,
                }
                let rows: Vec<Row> = results
                    .iter()
                    .map(|r| Row {
                        m: r.m,
                        kappa: r.kappa,
                        argmin: r.argmin,
                        argmin_label: g.label(r.argmin),
                        per_vertex: args.per_vertex.then_some(&r.per_vertex[..]),
                    })
                    .collect();
                #[derive(Serialize)]
                struct Output<'a> {
                    curvature: Vec<Row<'a>>,
                }
                to_json(&Output { curvature: rows })?
            } else {
                let mut s = String::new();
                for r in &results {
                    s.push_str(&format!(
                        "m={} kappa={} argmin={}\n",
                        r.m,
                        fmt_f64(r.kappa),
                        g.label(r.argmin)
                    ));
                    if args.per_vertex {
                        for (x, k) in r.per_vertex.iter().enumerate() {
                            s.push_str(&format!("  {} {}\n", g.label(x), fmt_f64(*k)));
                        }
                    }
                }
                s
            };
            emit(args.out.as_deref(), stdout, text.as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Verify(args) => {
            let g = load_graph(&args.graph)?;
            let alphas = args.alpha.as_ref().map(|a| a.0.clone()).unwrap_or_default();
            let opts = ReportOptions {
                seed: args.seed,
                samples: args.samples,
            };
            let report = match args.threads {
                Some(threads) => rayon::ThreadPoolBuilder::new()
                    .num_threads(threads.max(1))
                    .build()
                    .map_err(|e| Error::Io(e.to_string()))?
                    .install(|| full_report(&g, &args.m.0, &alphas, opts))?,
                None => full_report(&g, &args.m.0, &alphas, opts)?,
            };
            let text = if args.json {
                to_json(&report)?
            } else if args.csv {
                checks_csv(&report.checks)
            } else {
                report_text(&report)
            };
            emit(args.out.as_deref(), stdout, text.as_bytes())?;
            Ok(if report.all_passed() { EXIT_OK } else { EXIT_VIOLATION })
        }
    }
}

fn generate(args: &GenArgs) -> Result<Graph> {
    match args.family {
        GenFamily::Complete => generators::complete(args.n),
        GenFamily::Cycle => generators::cycle(args.n),
        GenFamily::Hypercube => generators::hypercube(args.n),
        GenFamily::Bridge => generators::bridge_cliques(args.n),
        GenFamily::Product => {
            let a = generators::cycle(args.n)?;
            let b = generators::cycle(args.n2.unwrap_or(args.n))?;
            generators::product(&a, &b)
        }
    }
}

pub fn load_graph(path: &Path) -> Result<Graph> {
    let file = File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Graph::read_edge_list(BufReader::new(file))
}

fn emit(path: Option<&Path>, stdout: &mut dyn Write, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => stdout.write_all(bytes).map_err(Error::from),
    }
}

/// Seventeen significant digits: round-trips every `f64` exactly.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "nan".to_string()
    } else if v > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

/// Pretty JSON with every float printed to seventeen significant digits.
struct PreciseFormatter(PrettyFormatter<'static>);

impl Formatter for PreciseFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(fmt_f64(value).as_bytes())
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, PreciseFormatter(PrettyFormatter::new()));
    value.serialize(&mut ser).map_err(|e| Error::Io(e.to_string()))?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

pub fn checks_csv(checks: &[CheckResult]) -> String {
    let mut s = String::from("name,passed,worst_slack,worst_vertex,m,kappa,alpha,lambda,eigen_index\n");
    for c in checks {
        let p = &c.params;
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            c.name,
            c.passed,
            fmt_f64(c.worst_slack),
            opt(c.worst_vertex),
            opt(p.m),
            opt(p.kappa.map(fmt_f64)),
            opt(p.alpha.map(fmt_f64)),
            opt(p.lambda.map(fmt_f64)),
            opt(p.eigen_index),
        ));
    }
    s
}

fn report_text(r: &VerificationReport) -> String {
    let mut s = format!(
        "graph: n={} edges={} d_max={} diameter={}\n",
        r.graph.n, r.graph.edges, r.graph.d_max, r.graph.diameter
    );
    for c in &r.curvature {
        s.push_str(&format!("curvature m={} kappa={:.12} argmin={}\n", c.m, c.kappa, c.argmin));
    }
    if let Some(gap) = r.spectrum.eigenvalues.get(1) {
        s.push_str(&format!("lambda_1={gap:.12}\n"));
    }
    for c in &r.checks {
        let p = &c.params;
        s.push_str(&format!(
            "{} {} m={} lambda={} alpha={} slack={:.3e}\n",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            opt(p.m),
            opt(p.lambda.map(|l| format!("{l:.6e}"))),
            opt(p.alpha.map(|a| format!("{a:.6}"))),
            c.worst_slack
        ));
    }
    for i in &r.info {
        s.push_str(&format!("INFO {} {} {}\n", i.name, i.status, i.detail));
    }
    let failed = r.failures().count();
    s.push_str(&format!(
        "{} of {} mandatory checks passed (seed {})\n",
        r.checks.len() - failed,
        r.checks.len(),
        r.seed
    ));
    s
}

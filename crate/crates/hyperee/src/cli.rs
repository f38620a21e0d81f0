//! Command-line front end.
//!
//! Exit codes: 0 success, 1 bad input (parse or usage), 2 refused as
//! infeasible or not computable, 3 table rows failed or were skipped.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperee_core::{
    bounds_refined, estrada_index, gen_empty, gen_hyperpath, gen_hyperstar, spectrum,
    AdjacencyTensor, EstradaOptions, MethodChoice, PowerIterationConfig, SpectrumBudget,
    TraceBudget, TraceEngine, UniformHypergraph,
};

use crate::format::{read_hypergraph, serialize_hypergraph};
use crate::report::{BoundsJson, EstradaJson, SpectrumJson, TracesJson};
use crate::table1::{table1, RowStatus, Table1Row, Tolerance};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_TABLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "hyperee",
    version,
    about = "Estrada index of uniform hypergraphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a hypergraph in `.uhg` form.
    Gen {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Estrada index.
    Ee {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Exact traces Tr_0 ..= Tr_D.
    Traces {
        #[command(flatten)]
        input: InputArgs,
        /// Highest order; defaults to m.
        #[arg(long = "max-d")]
        max_d: Option<usize>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Full eigenvalue multiset.
    Spectrum {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Lower and upper bounds on the Estrada index.
    Bounds {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Recompute the published table.
    Table1 {
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct InputArgs {
    /// `.uhg` file.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Hyperstar with uniformity M and Q edges.
    #[arg(long, num_args = 2, value_names = ["M", "Q"])]
    pub star: Option<Vec<usize>>,
    /// Loose hyperpath with uniformity M and P edges.
    #[arg(long, num_args = 2, value_names = ["M", "P"])]
    pub path: Option<Vec<usize>>,
    /// Edgeless M-uniform hypergraph on N vertices.
    #[arg(long, num_args = 2, value_names = ["M", "N"])]
    pub empty: Option<Vec<usize>>,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Largest eigenvalue count for the full-spectrum route.
    #[arg(long = "budget-degree", default_value_t = 128)]
    pub budget_degree: usize,
    /// Largest predicted enumeration size per trace order.
    #[arg(long = "budget-selections", default_value_t = 1e9)]
    pub budget_selections: f64,
    #[arg(long, value_enum, default_value = "human")]
    pub format: Format,
    /// Worker threads; falls back to HYPEREE_THREADS, then all cores.
    #[arg(long, env = "HYPEREE_THREADS")]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Spectrum,
    Series,
    Symmetric,
    Star,
}

impl From<MethodArg> for MethodChoice {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => MethodChoice::Auto,
            MethodArg::Spectrum => MethodChoice::Spectrum,
            MethodArg::Series => MethodChoice::Series,
            MethodArg::Symmetric => MethodChoice::Symmetric,
            MethodArg::Star => MethodChoice::Star,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Read(#[from] crate::format::ReadError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] hyperee_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use hyperee_core::Error as E;
        match self {
            CliError::Read(_) | CliError::Usage(_) => EXIT_INPUT,
            CliError::Core(
                E::InvalidUniformity(_)
                | E::NoVertices
                | E::EdgeArity { .. }
                | E::VertexOutOfRange { .. }
                | E::RepeatedVertex { .. }
                | E::DuplicateEdge { .. }
                | E::InvalidParameter(_),
            ) => EXIT_INPUT,
            CliError::Core(_) => EXIT_INFEASIBLE,
            CliError::Io(_) | CliError::Json(_) | CliError::Csv(_) => EXIT_INFEASIBLE,
        }
    }
}

impl CommonArgs {
    fn validate(&self) -> Result<(), CliError> {
        if !(self.tol > 0.0) {
            return Err(CliError::Usage("--tol must be positive".into()));
        }
        if self.budget_degree == 0 || !(self.budget_selections > 0.0) {
            return Err(CliError::Usage("budgets must be positive".into()));
        }
        if self.threads == Some(0) {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        Ok(())
    }

    fn spectrum_budget(&self) -> SpectrumBudget {
        SpectrumBudget {
            max_degree: self.budget_degree,
            trace: self.trace_budget(),
            ..Default::default()
        }
    }

    fn trace_budget(&self) -> TraceBudget {
        TraceBudget {
            max_selections: self.budget_selections,
        }
    }

    fn estrada_options(&self, method: MethodChoice) -> EstradaOptions {
        EstradaOptions {
            method,
            tol: self.tol,
            spectrum: self.spectrum_budget(),
            radius: PowerIterationConfig::default(),
        }
    }
}

impl InputArgs {
    pub fn resolve(&self) -> Result<UniformHypergraph, CliError> {
        let pair = |v: &Vec<usize>| (v[0], v[1]);
        if let Some(path) = &self.input {
            return Ok(read_hypergraph(path)?);
        }
        if let Some(v) = &self.star {
            let (m, q) = pair(v);
            return Ok(gen_hyperstar(m, q)?);
        }
        if let Some(v) = &self.path {
            let (m, p) = pair(v);
            return Ok(gen_hyperpath(m, p)?);
        }
        if let Some(v) = &self.empty {
            let (m, n) = pair(v);
            return Ok(gen_empty(m, n)?);
        }
        Err(CliError::Usage("no input given".into()))
    }
}

/// Parse `args` (including the program name) and run, writing results to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn common(cmd: &Command) -> &CommonArgs {
    match cmd {
        Command::Gen { common, .. }
        | Command::Ee { common, .. }
        | Command::Traces { common, .. }
        | Command::Spectrum { common, .. }
        | Command::Bounds { common, .. }
        | Command::Table1 { common } => common,
    }
}

fn configure_threads(threads: Option<usize>) {
    if let Some(t) = threads {
        // A second call in the same process (tests) keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
}

pub fn execute(cmd: &Command, out: &mut dyn Write) -> Result<i32, CliError> {
    let c = common(cmd);
    c.validate()?;
    configure_threads(c.threads);
    match cmd {
        Command::Gen { input, .. } => {
            let h = input.resolve()?;
            write!(out, "{}", serialize_hypergraph(&h))?;
            Ok(EXIT_OK)
        }
        Command::Ee { input, method, .. } => {
            let h = input.resolve()?;
            let r = estrada_index(&h, c.estrada_options((*method).into()))?;
            let report = EstradaJson::from(&r);
            match c.format {
                Format::Human => {
                    writeln!(out, "EE = {}", report.value)?;
                    writeln!(out, "method: {}", report.method)?;
                    writeln!(out, "error bound: {:e}", report.error_bound)?;
                    if let Some(t) = report.terms_used {
                        writeln!(out, "terms used: {t}")?;
                    }
                    if !report.converged {
                        writeln!(out, "warning: series stopped at the trace budget")?;
                    }
                }
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
                Format::Csv => write_csv(out, &[report])?,
            }
            Ok(if r.converged {
                EXIT_OK
            } else {
                EXIT_INFEASIBLE
            })
        }
        Command::Traces { input, max_d, .. } => {
            let h = input.resolve()?;
            let max_d = max_d.unwrap_or(h.uniformity());
            let seq = TraceEngine::new(&h, c.trace_budget()).sequence(max_d)?;
            let report = TracesJson::from(&seq);
            match c.format {
                Format::Human => {
                    let exact: Vec<&str> = report.traces.iter().map(|t| t.exact.as_str()).collect();
                    writeln!(out, "{}", exact.join(","))?;
                }
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
                Format::Csv => write_csv(out, &report.traces)?,
            }
            Ok(EXIT_OK)
        }
        Command::Spectrum { input, .. } => {
            let h = input.resolve()?;
            let s = spectrum(&h, c.spectrum_budget())?;
            let report = SpectrumJson::from(&s);
            match c.format {
                Format::Human => {
                    writeln!(
                        out,
                        "k = {} ({}, residual {:e})",
                        report.k, report.provenance, report.residual
                    )?;
                    for e in &report.entries {
                        writeln!(out, "  {} x {}", complex_text(e.re, e.im), e.mult)?;
                    }
                }
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
                Format::Csv => write_csv(out, &report.entries)?,
            }
            Ok(EXIT_OK)
        }
        Command::Bounds { input, .. } => {
            let h = input.resolve()?;
            let rho = AdjacencyTensor::new(&h).spectral_radius(PowerIterationConfig::default())?;
            let s = match spectrum(&h, c.spectrum_budget()) {
                Ok(s) => Some(s),
                Err(hyperee_core::Error::SpectrumTooLarge { .. })
                | Err(hyperee_core::Error::InstanceTooLarge { .. })
                | Err(hyperee_core::Error::RootsDidNotConverge { .. }) => None,
                Err(e) => return Err(e.into()),
            };
            let b = bounds_refined(s.as_ref(), &h, &rho)?;
            let report = BoundsJson::from(&b);
            match c.format {
                Format::Human => {
                    let opt = |v: Option<f64>| {
                        v.map_or("n/a (no spectrum)".to_string(), |x| x.to_string())
                    };
                    writeln!(out, "rho in [{}, {}]", report.rho.lower, report.rho.upper)?;
                    writeln!(out, "lower                       {}", report.lower)?;
                    writeln!(out, "upper (k e^rho)             {}", report.upper_radius)?;
                    writeln!(
                        out,
                        "upper (moduli)              {}",
                        opt(report.upper_moduli)
                    )?;
                    writeln!(
                        out,
                        "upper (moduli, refined)     {}",
                        opt(report.upper_moduli_refined)
                    )?;
                    writeln!(
                        out,
                        "upper (radius, count)       {}",
                        report.upper_radius_count
                    )?;
                    writeln!(
                        out,
                        "upper (radius, count, ref.) {}",
                        report.upper_radius_count_refined
                    )?;
                }
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(out);
                    w.write_record(["bound", "value"])?;
                    let rows = [
                        ("lower", Some(report.lower)),
                        ("upper_radius", Some(report.upper_radius)),
                        ("upper_moduli", report.upper_moduli),
                        ("upper_moduli_refined", report.upper_moduli_refined),
                        ("upper_radius_count", Some(report.upper_radius_count)),
                        (
                            "upper_radius_count_refined",
                            Some(report.upper_radius_count_refined),
                        ),
                    ];
                    for (name, v) in rows {
                        w.write_record([
                            name.to_string(),
                            v.map_or(String::new(), |x| x.to_string()),
                        ])?;
                    }
                    w.flush()?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Table1 { .. } => {
            let rows = table1(c.estrada_options(MethodChoice::Auto));
            match c.format {
                Format::Human => write_table_human(out, &rows)?,
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(out);
                    w.write_record([
                        "instance",
                        "published",
                        "computed",
                        "method",
                        "abs_dev",
                        "rel_dev",
                        "status",
                        "reason",
                    ])?;
                    for r in &rows {
                        let num = |v: Option<f64>| v.map_or(String::new(), |x| x.to_string());
                        w.write_record([
                            r.instance.clone(),
                            r.published.to_string(),
                            num(r.computed),
                            r.method.clone().unwrap_or_default(),
                            num(r.abs_dev),
                            num(r.rel_dev),
                            status_text(r.status).to_string(),
                            r.reason.clone().unwrap_or_default(),
                        ])?;
                    }
                    w.flush()?;
                }
            }
            let all_pass = rows.iter().all(|r| r.status == RowStatus::Pass);
            Ok(if all_pass { EXIT_OK } else { EXIT_TABLE })
        }
    }
}

fn write_csv<S: serde::Serialize>(out: &mut dyn Write, rows: &[S]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn complex_text(re: f64, im: f64) -> String {
    if im == 0.0 {
        format!("{re}")
    } else if im > 0.0 {
        format!("{re}+{im}i")
    } else {
        format!("{re}{im}i")
    }
}

fn status_text(s: RowStatus) -> &'static str {
    match s {
        RowStatus::Pass => "PASS",
        RowStatus::Fail => "FAIL",
        RowStatus::Skipped => "SKIPPED",
    }
}

fn write_table_human(out: &mut dyn Write, rows: &[Table1Row]) -> std::io::Result<()> {
    writeln!(
        out,
        "{:<34} {:>10} {:>14} {:<22} {:>10} {:>10}  {:<10} status",
        "instance", "published", "computed", "method", "abs dev", "rel dev", "tolerance"
    )?;
    for r in rows {
        let tol = match r.tolerance {
            Tolerance::Relative(t) => format!("rel {t:e}"),
            Tolerance::Absolute(t) => format!("abs {t}"),
        };
        match r.computed {
            Some(v) => writeln!(
                out,
                "{:<34} {:>10} {:>14.6} {:<22} {:>10.3e} {:>10.3e}  {:<10} {}",
                r.instance,
                r.published,
                v,
                r.method.as_deref().unwrap_or(""),
                r.abs_dev.unwrap_or(f64::NAN),
                r.rel_dev.unwrap_or(f64::NAN),
                tol,
                status_text(r.status)
            )?,
            None => writeln!(
                out,
                "{:<34} {:>10} {:>14} {:<22} {:>10} {:>10}  {:<10} SKIPPED ({})",
                r.instance,
                r.published,
                "-",
                "-",
                "-",
                "-",
                tol,
                r.reason.as_deref().unwrap_or("")
            )?,
        }
    }
    Ok(())
}

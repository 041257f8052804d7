//! `aetrans` command-line driver.

mod config;
mod run;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use config::{parse_float, FieldChoice, Format, RunConfig, ZeroChoice};
use run::Report;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Numerical(String),
}

impl From<aetrans::Error> for CliError {
    fn from(e: aetrans::Error) -> Self {
        use aetrans::Error::*;
        match e {
            Domain(_) | Validation(_) | Precondition(_) | Parse(_) | Assembly(_) => CliError::Validation(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "aetrans", version, about = "Acoustic-elastic transmission eigenvalues and boundary localization")]
struct Cli {
    /// JSON run configuration; its keys override the flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads for sweeps and assembly.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Option<Cmd>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Zeros of J_nu or J'_nu.
    Zeros(ZerosArgs),
    /// Radial transmission eigenvalues on the unit disk or ball.
    Eig(ModeArgs),
    /// Localization ratios of the radial eigenfunctions.
    Localize(LocalizeArgs),
    /// Radial eigenfunction samples on a grid.
    Field(FieldArgs),
    /// Boundary-integral computations on smooth curves.
    Bie {
        #[command(subcommand)]
        command: BieCmd,
    },
}

#[derive(Subcommand, Debug)]
enum BieCmd {
    /// Smallest-singular-value scan of the block operator.
    Scan(ScanArgs),
    /// Fields of the near-null mode at one wavenumber.
    Field(BieFieldArgs),
}

#[derive(Args, Debug, Default)]
struct ParamArgs {
    #[arg(long, value_parser = parse_float)]
    delta: Option<f64>,
    #[arg(long, value_parser = parse_float)]
    tau: Option<f64>,
    #[arg(long, value_parser = parse_float)]
    mu: Option<f64>,
    #[arg(long, value_parser = parse_float)]
    rho_b: Option<f64>,
    #[arg(long, value_parser = parse_float)]
    rho_e: Option<f64>,
    #[arg(long, value_parser = parse_float)]
    kappa: Option<f64>,
    #[arg(long, value_parser = parse_float)]
    lambda_t: Option<f64>,
    #[arg(long, value_parser = parse_float)]
    mu_t: Option<f64>,
    #[arg(long, value_parser = parse_float)]
    l_omega: Option<f64>,
}

#[derive(Args, Debug, Default)]
struct OutArgs {
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
    /// Output file (standard output when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ZerosArgs {
    #[arg(long, value_parser = parse_float)]
    nu: Option<f64>,
    #[arg(long)]
    count: Option<usize>,
    #[arg(long, value_enum)]
    kind: Option<ZeroChoice>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct ModeArgs {
    #[arg(long)]
    dim: Option<u32>,
    /// Mode orders a:b:step.
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    s: Option<u32>,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct LocalizeArgs {
    #[command(flatten)]
    mode: ModeArgs,
    /// Comma-separated radii in (0, 1).
    #[arg(long, value_delimiter = ',', value_parser = parse_float)]
    eps: Option<Vec<f64>>,
    #[arg(long, value_enum)]
    field: Option<FieldChoice>,
}

#[derive(Args, Debug)]
struct FieldArgs {
    #[command(flatten)]
    mode: ModeArgs,
    /// Grid points per axis.
    #[arg(long)]
    grid: Option<usize>,
}

#[derive(Args, Debug)]
struct CurveArgs {
    /// circle[:r], ellipse:a,b, kite or file:PATH
    #[arg(long)]
    curve: Option<String>,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[command(flatten)]
    curve: CurveArgs,
    #[arg(long, value_parser = parse_float)]
    k_min: Option<f64>,
    #[arg(long, value_parser = parse_float)]
    k_max: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// Also report localization ratios at each minimum for these radii.
    #[arg(long, value_delimiter = ',', value_parser = parse_float)]
    eps: Option<Vec<f64>>,
    /// Emit the sampled sigma_min curve instead of the minima.
    #[arg(long)]
    samples: bool,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct BieFieldArgs {
    #[command(flatten)]
    curve: CurveArgs,
    #[arg(long, value_parser = parse_float)]
    k: Option<f64>,
    #[arg(long)]
    grid: Option<usize>,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    out: OutArgs,
}

fn put<T: serde::Serialize>(m: &mut Map<String, Value>, key: &str, v: Option<T>) {
    if let Some(v) = v {
        m.insert(key.into(), serde_json::to_value(v).expect("flag value"));
    }
}

impl ParamArgs {
    fn fill(&self, m: &mut Map<String, Value>) {
        if self.delta.is_some() || self.tau.is_some() || self.mu.is_some() {
            m.insert("nondim".into(), json!({"delta": self.delta, "tau": self.tau, "mu": self.mu}));
        }
        if [self.rho_b, self.rho_e, self.kappa, self.lambda_t, self.mu_t].iter().any(Option::is_some) {
            let mut phys = json!({
                "rho_b": self.rho_b, "rho_e": self.rho_e, "kappa": self.kappa,
                "lambda_t": self.lambda_t, "mu_t": self.mu_t,
            });
            if let Some(l) = self.l_omega {
                phys["l_omega"] = json!(l);
            }
            m.insert("physical".into(), phys);
        }
    }
}

impl OutArgs {
    fn fill(&self, m: &mut Map<String, Value>) {
        if self.json {
            m.insert("format".into(), json!("json"));
        } else if self.csv {
            m.insert("format".into(), json!("csv"));
        }
        put(m, "out", self.out.as_ref());
    }
}

impl ModeArgs {
    fn fill(&self, m: &mut Map<String, Value>) {
        put(m, "dim", self.dim);
        put(m, "m", self.m.as_ref());
        put(m, "s", self.s);
        self.params.fill(m);
        self.out.fill(m);
    }
}

impl CurveArgs {
    fn fill(&self, m: &mut Map<String, Value>) {
        put(m, "curve", self.curve.as_ref());
        put(m, "n", self.n);
    }
}

/// The flags as a partial RunConfig object.
fn flags_to_value(cli: &Cli) -> Value {
    let mut m = Map::new();
    put(&mut m, "threads", cli.threads);
    let command = match &cli.command {
        None => None,
        Some(Cmd::Zeros(a)) => {
            put(&mut m, "nu", a.nu);
            put(&mut m, "count", a.count);
            put(&mut m, "kind", a.kind);
            a.out.fill(&mut m);
            Some("zeros")
        }
        Some(Cmd::Eig(a)) => {
            a.fill(&mut m);
            Some("eig")
        }
        Some(Cmd::Localize(a)) => {
            a.mode.fill(&mut m);
            put(&mut m, "eps", a.eps.as_ref());
            put(&mut m, "field", a.field);
            Some("localize")
        }
        Some(Cmd::Field(a)) => {
            a.mode.fill(&mut m);
            put(&mut m, "grid", a.grid);
            Some("field")
        }
        Some(Cmd::Bie { command: BieCmd::Scan(a) }) => {
            a.curve.fill(&mut m);
            put(&mut m, "k_min", a.k_min);
            put(&mut m, "k_max", a.k_max);
            put(&mut m, "steps", a.steps);
            put(&mut m, "eps", a.eps.as_ref());
            if a.samples {
                m.insert("samples".into(), json!(true));
            }
            a.params.fill(&mut m);
            a.out.fill(&mut m);
            Some("bie_scan")
        }
        Some(Cmd::Bie { command: BieCmd::Field(a) }) => {
            a.curve.fill(&mut m);
            put(&mut m, "k", a.k);
            put(&mut m, "grid", a.grid);
            a.params.fill(&mut m);
            a.out.fill(&mut m);
            Some("bie_field")
        }
    };
    put(&mut m, "command", command);
    Value::Object(m)
}

fn load_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let file = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
            Some(
                serde_json::from_str(&text)
                    .map_err(|e| CliError::Validation(format!("{} is not valid JSON: {e}", path.display())))?,
            )
        }
        None => None,
    };
    RunConfig::merge(flags_to_value(cli), file)
}

fn render(cfg: &RunConfig, report: &Report) -> Result<Vec<u8>, CliError> {
    let io = |e: std::io::Error| CliError::Validation(format!("cannot write output: {e}"));
    match cfg.format() {
        Format::Json => {
            let doc = json!({
                "tool": "aetrans",
                "version": VERSION,
                "config": cfg,
                "params": report.params,
                "results": report.results,
                "failures": report.failures,
            });
            let mut buf = serde_json::to_vec_pretty(&doc).expect("serializable output");
            buf.push(b'\n');
            Ok(buf)
        }
        Format::Csv => {
            let mut buf = Vec::new();
            let params = report.params.map_or_else(String::new, |p| {
                format!(" delta={} tau={} lambda={} mu={}", p.delta, p.tau, p.lambda, p.mu)
            });
            writeln!(buf, "# aetrans {VERSION} command={}{params}", serde_json::to_string(&cfg.command).unwrap().trim_matches('"'))
                .map_err(io)?;
            for note in &report.notes {
                writeln!(buf, "# {note}").map_err(io)?;
            }
            let mut w = csv::Writer::from_writer(buf);
            let wr = |e: csv::Error| CliError::Validation(format!("cannot write output: {e}"));
            w.write_record(&report.header).map_err(wr)?;
            for row in &report.rows {
                w.write_record(row).map_err(wr)?;
            }
            w.into_inner().map_err(|e| CliError::Validation(format!("cannot write output: {e}")))
        }
    }
}

fn run(cli: &Cli) -> Result<usize, CliError> {
    let cfg = load_config(cli)?;
    if let Some(t) = cfg.threads {
        if t == 0 {
            return Err(CliError::Validation("threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Validation(format!("cannot configure threads: {e}")))?;
    }
    let report = run::execute(&cfg)?;
    let bytes = render(&cfg, &report)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", path.display())))?,
        None => std::io::stdout()
            .write_all(&bytes)
            .map_err(|e| CliError::Validation(format!("cannot write output: {e}")))?,
    }
    for f in &report.failures {
        eprintln!("numerical failure at {}: {}", f.item, f.error);
    }
    Ok(report.failures.len())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(n) => {
            eprintln!("{n} item(s) failed");
            ExitCode::from(2)
        }
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(2)
        }
    }
}

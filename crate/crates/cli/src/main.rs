use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use ybelab_core::catalog::{default_presets, find_model, list_models, model_ids, parse_complex, ModelSpec, Presets};
use ybelab_core::cmat::CMat;
use ybelab_core::error::YbeError;
use ybelab_core::transforms::{closure_suite, parse_transform, Expectation};
use ybelab_core::verify::{run_checks, run_suite, CheckName, CheckResult, Status, SuiteConfig, VerificationReport};

/// println! that exits quietly when stdout is closed (e.g. piped into `head`).
macro_rules! out {
    ($($arg:tt)*) => {{
        if let Err(e) = writeln!(io::stdout().lock(), $($arg)*) {
            if e.kind() == io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            panic!("writing to stdout: {e}");
        }
    }};
}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;

/// Yang-Baxter, regularity and integrability checks for nearest-neighbour spin chains.
#[derive(Parser)]
#[command(name = "ybelab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Function and constant presets (key = value per line).
    #[arg(long, global = true, value_name = "FILE")]
    presets: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// List catalog models.
    List,
    /// Print R(u,v) or H(θ) of a model.
    Eval {
        kind: EvalKind,
        id: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        u: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        v: String,
    },
    /// Run one check on one model.
    Check {
        name: String,
        id: String,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Run every check on a model, or on all models.
    Suite {
        /// Model id or "all".
        target: String,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Apply a transform from a spec file and run the closure checks.
    Transform {
        spec: PathBuf,
        id: String,
        #[command(flatten)]
        run: RunOpts,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EvalKind {
    Rmat,
    Hamil,
}

#[derive(Args)]
struct RunOpts {
    /// Samples per check (overrides the per-check defaults).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Tolerance override, e.g. --tol ybe=1e-10 (repeatable). Names: ybe,
    /// regularity, braiding, hamiltonian, sutherland, boost, boost-stencil,
    /// transfer, hermiticity, normality, expansion (curvature factor).
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    tol: Vec<String>,
}

struct Usage(String);

impl RunOpts {
    fn config(&self) -> Result<SuiteConfig, Usage> {
        let mut cfg = SuiteConfig::with_seed(self.seed);
        cfg.samples = self.samples.map(|n| n as usize);
        for item in &self.tol {
            let (k, v) = item.split_once('=').ok_or_else(|| Usage(format!("--tol expects NAME=VALUE, got '{item}'")))?;
            let v: f64 = v.trim().parse().map_err(|_| Usage(format!("--tol {k}: '{v}' is not a number")))?;
            cfg.tolerances.set(k.trim(), v).map_err(Usage)?;
        }
        Ok(cfg)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn load_presets(path: Option<&Path>) -> Result<Presets, Usage> {
    let mut p = default_presets();
    if let Some(path) = path {
        let text = fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
        p.apply_config(&text).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    }
    Ok(p)
}

fn model(p: &Presets, id: &str) -> Result<ModelSpec, Usage> {
    find_model(p, id).map_err(|e| Usage(format!("{e}; run `ybelab list` for the catalog")))
}

fn run(cli: Cli) -> Result<u8, Usage> {
    let presets = load_presets(cli.presets.as_deref())?;
    match cli.command {
        Command::List => {
            out!("{:<14} {:>2}  {:<16} {:<3} {:<4} preset", "id", "n", "form", "R", "dH");
            for s in list_models() {
                let yes = |b: bool| if b { "yes" } else { "-" };
                out!("{:<14} {:>2}  {:<16} {:<3} {:<4} {}", s.id, s.local_dim, s.form.to_string(), yes(s.has_r), yes(s.analytic_dh), s.preset);
            }
            Ok(0)
        }
        Command::Eval { kind, id, u, v } => {
            let m = model(&presets, &id)?;
            let parse = |s: &str| parse_complex(s).map_err(|e| Usage(e.to_string()));
            let (u, v) = (parse(&u)?, parse(&v)?);
            let out = match kind {
                EvalKind::Rmat if !m.has_r() => return Err(Usage(YbeError::MissingR(id).to_string())),
                EvalKind::Rmat => m.eval_r(u, v),
                EvalKind::Hamil => m.eval_h(u),
            };
            match out {
                Ok(mat) => {
                    print_matrix(&mat);
                    Ok(0)
                }
                Err(e) => Ok(report_error(&e)),
            }
        }
        Command::Check { name, id, run } => {
            let check: CheckName = name.parse().map_err(Usage)?;
            let m = model(&presets, &id)?;
            let cfg = run.config()?;
            let report = run_checks(&m, &cfg, &[check]);
            print_report(&report);
            write_json(run.json.as_deref(), &report)?;
            Ok(exit_code(std::slice::from_ref(&report)))
        }
        Command::Suite { target, run } => {
            let cfg = run.config()?;
            let models: Vec<ModelSpec> = if target == "all" {
                model_ids().iter().map(|id| model(&presets, id)).collect::<Result<_, _>>()?
            } else {
                vec![model(&presets, &target)?]
            };
            let reports: Vec<VerificationReport> = models.iter().map(|m| run_suite(m, &cfg)).collect();
            for r in &reports {
                print_report(r);
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            out!("{} model(s), {} passed, {} not passed", reports.len(), reports.len() - failed, failed);
            if target == "all" {
                write_json(run.json.as_deref(), &reports)?;
            } else {
                write_json(run.json.as_deref(), &reports[0])?;
            }
            Ok(exit_code(&reports))
        }
        Command::Transform { spec, id, run } => {
            let text = fs::read_to_string(&spec).map_err(|e| Usage(format!("{}: {e}", spec.display())))?;
            let t = parse_transform(&text).map_err(|e| Usage(format!("{}: {e}", spec.display())))?;
            let m = model(&presets, &id)?;
            let cfg = run.config()?;
            let closure = match closure_suite(&t, &m, &cfg) {
                Ok(c) => c,
                Err(e @ YbeError::Tensor(_)) => return Err(Usage(e.to_string())),
                Err(e) => return Ok(report_error(&e)),
            };
            if let Some(tc) = closure.twist_condition {
                out!("twist condition residual {tc:.3e}");
            }
            print_report(&closure.report);
            for (c, e) in &closure.expectations {
                if *e != Expectation::Asserted {
                    out!("  {:<12} {}", c.as_str(), serde_json::to_value(e).unwrap().as_str().unwrap_or_default());
                }
            }
            out!("closure {}", if closure.passed { "holds" } else { "does not hold" });
            write_json(run.json.as_deref(), &closure)?;
            let code = if closure.report.has_domain_error() {
                EXIT_DOMAIN
            } else if closure.passed {
                0
            } else {
                EXIT_FAIL
            };
            Ok(code)
        }
    }
}

fn report_error(e: &YbeError) -> u8 {
    eprintln!("error: {e}");
    if e.is_domain() {
        EXIT_DOMAIN
    } else {
        EXIT_FAIL
    }
}

/// Domain errors win over plain failures: the run did not complete.
fn exit_code(reports: &[VerificationReport]) -> u8 {
    if reports.iter().any(|r| r.has_domain_error()) {
        EXIT_DOMAIN
    } else if reports.iter().all(|r| r.passed()) {
        0
    } else {
        EXIT_FAIL
    }
}

fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<(), Usage> {
    let Some(path) = path else { return Ok(()) };
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    fs::write(path, text + "\n").map_err(|e| Usage(format!("{}: {e}", path.display())))
}

fn fmt_entry(z: num_complex::Complex64) -> String {
    // Avoid printing "-0.000000000000".
    let clean = |x: f64| if x.abs() < 5e-13 { 0.0 } else { x };
    format!("{:.12}{:+.12}i", clean(z.re), clean(z.im))
}

fn print_matrix(m: &CMat) {
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| fmt_entry(m[(i, j)])).collect();
        out!("{}", row.join("  "));
    }
}

fn print_check(c: &CheckResult) {
    let status = match c.status {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Skipped => "skip",
        Status::Error => "ERROR",
    };
    let residual = c.residual.map_or("-".to_string(), |r| format!("{r:.3e}"));
    out!("  {:<12} {:<5} residual {:<10} tol {:.0e}  samples {}", c.name.as_str(), status, residual, c.tol, c.samples.len());
    if let Some(e) = &c.error {
        out!("    {e}");
    }
    if c.status == Status::Skipped {
        for n in &c.notes {
            out!("    {n}");
        }
    }
}

fn print_report(r: &VerificationReport) {
    out!("{} (seed {}, {} ms)", r.model, r.seed, r.elapsed_ms);
    for c in &r.checks {
        print_check(c);
    }
}

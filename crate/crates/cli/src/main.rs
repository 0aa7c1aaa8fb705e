//! `invsemi`: validate semigroup tables, build test subjects, decide
//! positivity of functions, factor them, and run the verification suite.
//!
//! Exit codes: 0 pass, 1 mathematical failure, 2 operational failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{Context as _, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use invsemi::io::{
    function_to_json, read_function, read_semigroup, semigroup_to_json, write_string,
};
use invsemi::{
    chain_semilattice, cyclic_group, direct_product, godement_factorize, is_extendible_rpd, is_pd,
    is_rpd, random_rpd, resolve, run_suite, symmetric_group, symmetric_inverse_monoid, Error,
    FileError, InverseSemigroup, SuiteConfig, Tolerance, CORPUS_DIR_ENV,
};

#[derive(Parser)]
#[command(
    name = "invsemi",
    version,
    about = "Positive definite functions on finite inverse semigroups"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the primary output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Pd,
    Rpd,
    Extendible,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a semigroup file.
    Validate { file: PathBuf },
    /// Write the table of a generated semigroup.
    Build {
        #[command(subcommand)]
        kind: BuildKind,
    },
    /// Decide whether a function is positive definite, restricted positive
    /// definite, or extendible restricted positive definite.
    Check {
        which: Which,
        /// Semigroup file or builtin name.
        semigroup: String,
        function: PathBuf,
        #[command(flatten)]
        tolerance: ToleranceArgs,
    },
    /// Factor a restricted positive definite φ as ξ • ξ~; `--out` receives ξ.
    Factorize {
        semigroup: String,
        function: PathBuf,
        #[command(flatten)]
        tolerance: ToleranceArgs,
    },
    /// Emit a seeded random ξ • ξ~.
    Random {
        semigroup: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run every registered property against a corpus.
    Suite {
        /// Builtin names or semigroup files; defaults to the corpus directory
        /// or the builtin corpus.
        corpus: Vec<String>,
        #[arg(long, env = CORPUS_DIR_ENV)]
        corpus_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        residual_tolerance: f64,
        /// Run only properties whose id starts with this prefix (repeatable).
        #[arg(long)]
        only: Vec<String>,
        #[command(flatten)]
        tolerance: ToleranceArgs,
    },
}

#[derive(Subcommand)]
enum BuildKind {
    /// `{0, .., k-1}` under `xy = max(x, y)`.
    Chain { k: usize },
    /// The cyclic group of order k.
    Cyclic { k: usize },
    /// Partial bijections of a k-set, k <= 4.
    InverseMonoid { k: usize },
    /// Permutations of a k-set, k <= 5.
    Symmetric { k: usize },
    /// Direct product of two semigroups (files or builtin names).
    Product { left: String, right: String },
    /// `S_r` of a semigroup.
    Restricted { semigroup: String },
}

#[derive(clap::Args)]
struct ToleranceArgs {
    /// Eigenvalue tolerance factor, scaled by max(1, spectral radius).
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    /// Use `--tolerance` as an absolute bound.
    #[arg(long)]
    absolute: bool,
}

impl ToleranceArgs {
    fn get(&self) -> Tolerance {
        if self.absolute {
            Tolerance::Absolute(self.tolerance)
        } else {
            Tolerance::Relative(self.tolerance)
        }
    }
}

enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Validate { file } => validate(cli, file),
        Command::Build { kind } => {
            let s = build(kind)?;
            emit_raw(cli, &semigroup_to_json(&s))?;
            Ok(Outcome::Pass)
        }
        Command::Check {
            which,
            semigroup,
            function,
            tolerance,
        } => {
            let (_, u) = load_function(semigroup, function)?;
            let tol = tolerance.get();
            let report = match which {
                Which::Pd => is_pd(&u, tol),
                Which::Rpd => is_rpd(&u, tol),
                Which::Extendible => is_extendible_rpd(&u, tol),
            };
            emit(cli, &serde_json::to_value(&report)?)?;
            Ok(if report.verdict {
                Outcome::Pass
            } else {
                Outcome::Fail
            })
        }
        Command::Factorize {
            semigroup,
            function,
            tolerance,
        } => factorize(cli, semigroup, function, tolerance),
        Command::Random { semigroup, seed } => {
            let s = Arc::new(load_semigroup(semigroup)?);
            emit_raw(cli, &function_to_json(&random_rpd(&s, *seed)))?;
            Ok(Outcome::Pass)
        }
        Command::Suite {
            corpus,
            corpus_dir,
            trials,
            seed,
            residual_tolerance,
            only,
            tolerance,
        } => {
            let config = SuiteConfig {
                corpus: corpus.clone(),
                corpus_dir: corpus_dir.clone(),
                trials: *trials as usize,
                seed: *seed,
                residual_tolerance: *residual_tolerance,
                psd_tolerance: tolerance.get(),
                only: only.clone(),
            };
            let report = run_suite(&config)?;
            let text = match cli.format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            emit_raw(cli, &text)?;
            Ok(if report.all_passed() {
                Outcome::Pass
            } else {
                Outcome::Fail
            })
        }
    }
}

fn validate(cli: &Cli, file: &Path) -> Result<Outcome> {
    match read_semigroup(file) {
        Ok(s) => {
            let report = json!({
                "valid": true,
                "size": s.len(),
                "identity": s.identity(),
                "zero": s.zero(),
                "idempotents": s.idempotent_list(),
                "star": s.star_map(),
            });
            emit(cli, &report)?;
            Ok(Outcome::Pass)
        }
        Err(e) if e.is_validation_failure() => {
            emit(cli, &json!({ "valid": false, "error": e.to_string() }))?;
            Ok(Outcome::Fail)
        }
        Err(e) => Err(e).with_context(|| format!("cannot read {}", file.display())),
    }
}

fn build(kind: &BuildKind) -> Result<InverseSemigroup> {
    Ok(match kind {
        BuildKind::Chain { k } => chain_semilattice(*k)?,
        BuildKind::Cyclic { k } => cyclic_group(*k)?,
        BuildKind::InverseMonoid { k } => symmetric_inverse_monoid(*k)?,
        BuildKind::Symmetric { k } => symmetric_group(*k)?,
        BuildKind::Product { left, right } => {
            direct_product(&load_semigroup(left)?, &load_semigroup(right)?)
        }
        BuildKind::Restricted { semigroup } => load_semigroup(semigroup)?.restricted_semigroup(),
    })
}

fn factorize(
    cli: &Cli,
    semigroup: &str,
    function: &Path,
    tolerance: &ToleranceArgs,
) -> Result<Outcome> {
    let (_, phi) = load_function(semigroup, function)?;
    match godement_factorize(&phi, tolerance.get()) {
        Ok(g) => {
            let xi = function_to_json(&g.xi);
            let mut report = json!({ "reconstruction_error": g.reconstruction_error });
            match &cli.out {
                Some(path) => write_string(path, &xi)?,
                None => report["xi"] = serde_json::from_str(&xi)?,
            }
            print(cli.format, &report);
            Ok(Outcome::Pass)
        }
        Err(Error::NotRpd {
            min_eigenvalue,
            tolerance,
            witness,
        }) => {
            let report = json!({
                "error": "NotRPD",
                "min_eigenvalue": min_eigenvalue,
                "tolerance": tolerance,
                "witness": witness,
            });
            print(cli.format, &report);
            Ok(Outcome::Fail)
        }
        Err(e @ Error::ReconstructionFailed { .. }) => {
            print(cli.format, &json!({ "error": e.to_string() }));
            Ok(Outcome::Fail)
        }
        Err(e) => Err(e.into()),
    }
}

fn load_semigroup(selector: &str) -> Result<InverseSemigroup> {
    let (name, s) = resolve(selector);
    s.with_context(|| format!("cannot load semigroup {name:?}"))
}

fn load_function(
    semigroup: &str,
    function: &Path,
) -> Result<(Arc<InverseSemigroup>, invsemi::SFunction)> {
    let s = Arc::new(load_semigroup(semigroup)?);
    let u = read_function(function, &s).map_err(|e| match e {
        FileError::Content(Error::BaseMismatch) => {
            anyhow::anyhow!(
                "BaseMismatch: {} does not live on {}",
                function.display(),
                semigroup
            )
        }
        e => anyhow::Error::new(e).context(format!("cannot read {}", function.display())),
    })?;
    Ok((s, u))
}

fn emit(cli: &Cli, value: &Value) -> Result<()> {
    emit_raw(cli, &render(cli.format, value))
}

fn emit_raw(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => Ok(write_string(path, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print(format: Format, value: &Value) {
    print!("{}", render(format, value));
}

fn render(format: Format, value: &Value) -> String {
    match format {
        Format::Json => {
            let mut out = serde_json::to_string_pretty(value).expect("value serializes");
            out.push('\n');
            out
        }
        Format::Text => {
            let mut out = String::new();
            if let Value::Object(map) = value {
                for (key, v) in map {
                    let shown = match v {
                        Value::String(s) => s.clone(),
                        Value::Null => "none".to_string(),
                        other => other.to_string(),
                    };
                    out.push_str(&format!("{key}: {shown}\n"));
                }
            }
            out
        }
    }
}

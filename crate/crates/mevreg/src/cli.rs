//! Command-line front end.

use crate::output::{self, Format, MevReport, QDump, RegulatorOut, VerifyReport, SCHEMA};
use crate::parse;
use crate::suites::{self, Options, Suite};
use anyhow::{bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use mevreg_core::eisenstein::{EisensteinSpec, EllipticParam, Family};
use mevreg_core::mev::{lambda_mev, lambda_signed};
use mevreg_core::regulator::regulator_report;
use mevreg_core::{Rational, C64};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "mevreg", version, about = "Multiple Eisenstein values and regulators on modular curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// q-expansion cutoff (largest exponent kept), a rational >= 4
    #[arg(long, global = true, default_value = "12")]
    pub cutoff: String,
    /// residual tolerance for `verify`, >= 1e-12; defaults per suite
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// write the report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Multiple Eisenstein value Λ(x₁, …, x_n), optionally a signed component
    Mev {
        /// parameters x = p/q,r/s; repeat the flag or separate with ';'
        #[arg(long, required = true)]
        params: Vec<String>,
        /// one of + or - per parameter, e.g. +-
        #[arg(long)]
        signs: Option<String>,
    },
    /// Goncharov and Beilinson regulators of the pair (a, b)
    Regulator {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        level: Option<i64>,
    },
    /// Dump a q-expansion as CSV
    Qdump {
        #[arg(long, value_enum)]
        family: QFamily,
        #[arg(long, default_value_t = 2)]
        weight: u32,
        #[arg(long, required = true)]
        params: Vec<String>,
    },
    /// Run verification suites
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// restrict generated instances to this level
        #[arg(long)]
        level: Option<i64>,
        #[arg(long, default_value_t = suites::DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QFamily {
    E,
    G,
    H,
    Logg,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Job {
    Mev { signs: Option<String> },
    Regulator,
    Qdump { family: QFamily, weight: u32 },
    Verify { suite: Suite, seed: u64 },
}

/// A validated run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub job: Job,
    pub params: Vec<EllipticParam>,
    pub level: Option<i64>,
    pub cutoff: Rational,
    pub tolerance: Option<f64>,
    pub output_format: Format,
    pub output_path: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let cutoff = parse::rational(&cli.cutoff)?;
        if cutoff < Rational::from_integer(4) {
            bail!("--cutoff must be at least 4, got {cutoff}");
        }
        if let Some(t) = cli.tol {
            if !(t >= 1e-12) {
                bail!("--tol must be at least 1e-12, got {t}");
            }
        }
        let (job, params, level, default_format) = match cli.command {
            Command::Mev { params, signs } => (Job::Mev { signs }, parse::param_list(&params)?, None, Format::Json),
            Command::Regulator { a, b, level } => (Job::Regulator, vec![parse::param(&a)?, parse::param(&b)?], level, Format::Json),
            Command::Qdump { family, weight, params } => {
                let ps = parse::param_list(&params)?;
                if ps.len() != 1 {
                    bail!("qdump takes exactly one parameter");
                }
                (Job::Qdump { family, weight }, ps, None, Format::Csv)
            }
            Command::Verify { suite, level, seed } => (Job::Verify { suite, seed }, Vec::new(), level, Format::Json),
        };
        if let Some(n) = level {
            if n < 2 {
                bail!("--level must be at least 2, got {n}");
            }
        }
        Ok(RunConfig {
            job,
            params,
            level,
            cutoff,
            tolerance: cli.tol,
            output_format: cli.format.unwrap_or(default_format),
            output_path: cli.out,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: String,
    /// False iff a verification residual exceeded its tolerance.
    pub success: bool,
}

/// Reads MEVREG_PRECISION. Only double precision is implemented; asking for
/// extended precision prints a warning and continues.
pub fn precision_from_env() -> Result<Option<String>> {
    match std::env::var("MEVREG_PRECISION") {
        Err(_) => Ok(None),
        Ok(v) => match v.as_str() {
            "" | "double" => Ok(None),
            "extended" => Ok(Some("MEVREG_PRECISION=extended is not available; computing in double precision".into())),
            other => bail!("MEVREG_PRECISION must be double or extended, got {other:?}"),
        },
    }
}

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    let f = cfg.output_format;
    let ok = |report| Ok(Outcome { report, success: true });
    match &cfg.job {
        Job::Mev { signs } => {
            let word = format!("Lambda({})", cfg.params.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "));
            let params = cfg.params.iter().map(|x| x.to_string()).collect();
            let r = match signs {
                None => {
                    let m = lambda_mev(&cfg.params, cfg.cutoff)?;
                    MevReport { schema: SCHEMA, command: "mev", params, signs: None, cutoff: cfg.cutoff.to_string(), word, value: m.value.into(), truncation_bound: Some(m.truncation_bound) }
                }
                Some(s) => {
                    let sg = parse::signs(s)?;
                    let v = lambda_signed(&cfg.params, &sg, cfg.cutoff)?;
                    let echo: String = sg.iter().map(|x| if *x == mevreg_core::mev::Sign::Plus { '+' } else { '-' }).collect();
                    MevReport { schema: SCHEMA, command: "mev", params, signs: Some(echo), cutoff: cfg.cutoff.to_string(), word, value: C64::new(v, 0.0).into(), truncation_bound: None }
                }
            };
            ok(output::mev(&r, f)?)
        }
        Job::Regulator => {
            let r = regulator_report(cfg.params[0], cfg.params[1], cfg.level, cfg.cutoff)?;
            ok(output::regulator(&RegulatorOut::from(&r), f)?)
        }
        Job::Qdump { family, weight } => {
            let fam = match family {
                QFamily::E => Family::E,
                QFamily::G => Family::G,
                QFamily::H => Family::H,
                QFamily::Logg => Family::LogSiegel,
            };
            let spec = EisensteinSpec::new(fam, *weight, cfg.params[0])?;
            let series = spec.series(cfg.cutoff);
            let d = QDump::new(format!("{} cutoff={}", spec.label(), cfg.cutoff), &series);
            ok(output::qdump(&d, f)?)
        }
        Job::Verify { suite, seed } => {
            let o = Options { cutoff: cfg.cutoff, tol: cfg.tolerance, level: cfg.level, seed: *seed };
            let verdicts = suites::run_suite(*suite, &o)?;
            let failed = verdicts.iter().filter(|v| !v.pass).count();
            let r = VerifyReport {
                schema: SCHEMA,
                command: "verify",
                suite: suite.name().into(),
                cutoff: cfg.cutoff.to_string(),
                seed: *seed,
                level: cfg.level,
                passed: verdicts.len() - failed,
                failed,
                all_pass: failed == 0,
                verdicts,
            };
            Ok(Outcome { report: output::verify(&r, f)?, success: failed == 0 })
        }
    }
}

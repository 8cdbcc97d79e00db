//! Command-line front end.
//!
//! Three subcommands drive the pipeline:
//!
//! ```text
//! linform best-approx --alpha1 <desc> --alpha2 <desc> --height N
//! linform witness     --alpha1 <desc> --alpha2 <desc> --height N
//! linform verify      --alpha1 <desc> --alpha2 <desc> --height N --gamma Q [--big-gamma Q]
//! ```
//!
//! Exit codes: `0` success, `2` usage error, `3` certified degenerate input
//! (precision exhausted), `4` no index with a nonzero determinant minor in
//! range, `1` any other failure. Errors are also written to standard error
//! as one-line JSON diagnostics.

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;

use crate::best_approx::enumerate_best_approximations;
use crate::error::Error;
use crate::interval::Rat;
use crate::real::{parse_rational_or_decimal, CertifiedReal, Precision, DEFAULT_PRECISION_CAP};
use crate::spectrum::run_verification;
use crate::witness::{construct_witness, witness_record, NuContext};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;
pub const EXIT_NO_APPLICABLE: i32 = 4;

pub const PRECISION_CAP_ENV: &str = "LINFORM_PRECISION_CAP";

#[derive(Parser, Debug)]
#[command(
    name = "linform",
    version,
    about = "Best approximations of two-variable linear forms and certified positive witness points"
)]
struct CliParser {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand, Debug)]
enum CliCommand {
    /// Enumerate the best-approximation sequence (JSON lines or CSV)
    BestApprox(CommonArgs),
    /// Construct a certified witness point at every applicable index
    Witness(CommonArgs),
    /// Full verification run: hypothesis estimate, witnesses, exponent bound
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// First input real: rat:p/q, alg:c0,...,cn@[lo,hi], or dec:<digits>e<exp>
    #[arg(long)]
    alpha1: String,
    /// Second input real, same grammar
    #[arg(long)]
    alpha2: String,
    /// Enumeration height bound (>= 1)
    #[arg(long)]
    height: u64,
    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Output path; standard output when omitted
    #[arg(long)]
    output: Option<PathBuf>,
    /// Refinement cap in bits (overrides LINFORM_PRECISION_CAP; default 65536)
    #[arg(long)]
    precision_cap: Option<u32>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Hypothesis exponent gamma >= 2, as p/q or a decimal
    #[arg(long)]
    gamma: String,
    /// Hypothesis constant Gamma in (0,1); empirical cutoff mode when omitted
    #[arg(long)]
    big_gamma: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl OutputFormat {
    fn as_str(self) -> &'static str {
        match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubcommandKind {
    BestApprox,
    Witness,
    Verify,
}

impl SubcommandKind {
    fn as_str(self) -> &'static str {
        match self {
            SubcommandKind::BestApprox => "best-approx",
            SubcommandKind::Witness => "witness",
            SubcommandKind::Verify => "verify",
        }
    }
}

/// Validated configuration; `parse_args(render())` is the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct CliConfig {
    pub subcommand: SubcommandKind,
    pub alpha1: String,
    pub alpha2: String,
    pub height: u64,
    pub gamma: Option<Rat>,
    pub big_gamma: Option<Rat>,
    pub precision_cap: u32,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
}

impl CliConfig {
    /// Canonical argv (without the program name) reproducing this config.
    pub fn render(&self) -> Vec<String> {
        let mut args = vec![
            self.subcommand.as_str().to_string(),
            "--alpha1".into(),
            self.alpha1.clone(),
            "--alpha2".into(),
            self.alpha2.clone(),
            "--height".into(),
            self.height.to_string(),
        ];
        if let Some(g) = &self.gamma {
            args.push("--gamma".into());
            args.push(format!("{}/{}", g.numer(), g.denom()));
        }
        if let Some(g) = &self.big_gamma {
            args.push("--big-gamma".into());
            args.push(format!("{}/{}", g.numer(), g.denom()));
        }
        args.push("--format".into());
        args.push(self.format.as_str().into());
        if let Some(path) = &self.output {
            args.push("--output".into());
            args.push(path.display().to_string());
        }
        args.push("--precision-cap".into());
        args.push(self.precision_cap.to_string());
        args
    }

    pub fn precision(&self) -> Precision {
        Precision::with_cap(self.precision_cap)
    }
}

fn usage_error(message: String) -> clap::Error {
    CliParser::command().error(ErrorKind::ValueValidation, message)
}

fn resolve_precision_cap(flag: Option<u32>) -> Result<u32, clap::Error> {
    let cap = match flag {
        Some(c) => c,
        None => match std::env::var(PRECISION_CAP_ENV) {
            Ok(v) => v.parse::<u32>().map_err(|_| {
                usage_error(format!("{PRECISION_CAP_ENV} must be a positive integer"))
            })?,
            Err(_) => DEFAULT_PRECISION_CAP,
        },
    };
    if cap < 64 {
        return Err(usage_error(
            "--precision-cap must be at least 64 bits".into(),
        ));
    }
    Ok(cap)
}

fn validate_common(
    sub: SubcommandKind,
    common: &CommonArgs,
    gamma: Option<&str>,
    big_gamma: Option<&str>,
) -> Result<CliConfig, clap::Error> {
    CertifiedReal::parse(&common.alpha1).map_err(|e| usage_error(format!("--alpha1: {e}")))?;
    CertifiedReal::parse(&common.alpha2).map_err(|e| usage_error(format!("--alpha2: {e}")))?;
    if common.height < 1 {
        return Err(usage_error("--height must be at least 1".into()));
    }
    let gamma = match gamma {
        Some(s) => {
            let g = parse_rational_or_decimal(s)
                .ok_or_else(|| usage_error(format!("--gamma: malformed rational `{s}`")))?;
            if g < Rat::from_integer(2.into()) {
                return Err(usage_error("--gamma must be at least 2".into()));
            }
            Some(g)
        }
        None => None,
    };
    let big_gamma = match big_gamma {
        Some(s) => {
            let g = parse_rational_or_decimal(s)
                .ok_or_else(|| usage_error(format!("--big-gamma: malformed rational `{s}`")))?;
            if g <= Rat::from_integer(0.into()) || g >= Rat::from_integer(1.into()) {
                return Err(usage_error(
                    "--big-gamma must lie strictly between 0 and 1".into(),
                ));
            }
            Some(g)
        }
        None => None,
    };
    Ok(CliConfig {
        subcommand: sub,
        alpha1: common.alpha1.clone(),
        alpha2: common.alpha2.clone(),
        height: common.height,
        gamma,
        big_gamma,
        precision_cap: resolve_precision_cap(common.precision_cap)?,
        format: common.format,
        output: common.output.clone(),
    })
}

/// Parses and validates argv (program name excluded).
pub fn parse_args<I, S>(argv: I) -> Result<CliConfig, clap::Error>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let full = std::iter::once("linform".to_string()).chain(argv.into_iter().map(Into::into));
    let parsed = CliParser::try_parse_from(full)?;
    match &parsed.command {
        CliCommand::BestApprox(c) => validate_common(SubcommandKind::BestApprox, c, None, None),
        CliCommand::Witness(c) => validate_common(SubcommandKind::Witness, c, None, None),
        CliCommand::Verify(v) => validate_common(
            SubcommandKind::Verify,
            &v.common,
            Some(v.gamma.as_str()),
            v.big_gamma.as_deref(),
        ),
    }
}

#[derive(Serialize)]
struct Diagnostic<'a> {
    error: DiagnosticBody<'a>,
}

#[derive(Serialize)]
struct DiagnosticBody<'a> {
    kind: &'a str,
    message: String,
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::PrecisionExhausted { .. } => "precision-exhausted",
        Error::NoApplicableNu => "no-applicable-nu",
        Error::HypothesisViolated(_) => "hypothesis-violated",
        Error::SearchFailed(_) => "search-failed",
        Error::Inapplicable { .. } => "inapplicable",
        Error::PreconditionNotCertified(_) => "precondition-not-certified",
        Error::DetConditionFailed { .. } => "det-condition-failed",
        Error::IntervalTooWide => "interval-too-wide",
        Error::InvalidInterval => "invalid-interval",
        Error::Descriptor(..) => "descriptor",
        Error::InvalidParameter(_) => "invalid-parameter",
        Error::Io(_) => "io",
    }
}

fn emit_diagnostic(e: &Error) {
    let d = Diagnostic {
        error: DiagnosticBody {
            kind: error_kind(e),
            message: e.to_string(),
        },
    };
    eprintln!("{}", serde_json::to_string(&d).expect("serializable"));
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::PrecisionExhausted { .. } => EXIT_DEGENERATE,
        Error::NoApplicableNu => EXIT_NO_APPLICABLE,
        _ => EXIT_FAILURE,
    }
}

/// Runs a validated config; returns the process exit status. All artifacts
/// are built in memory and written in one piece, so identical inputs yield
/// byte-identical files.
pub fn run(config: &CliConfig) -> i32 {
    match execute(config) {
        Ok(artifact) => {
            let result = match &config.output {
                Some(path) => std::fs::write(path, &artifact).map_err(Error::from),
                None => std::io::stdout().write_all(&artifact).map_err(Error::from),
            };
            match result {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    emit_diagnostic(&e);
                    EXIT_FAILURE
                }
            }
        }
        Err(e) => {
            emit_diagnostic(&e);
            exit_code_for(&e)
        }
    }
}

fn execute(config: &CliConfig) -> Result<Vec<u8>, Error> {
    let a1 = CertifiedReal::parse(&config.alpha1)?;
    let a2 = CertifiedReal::parse(&config.alpha2)?;
    let prec = config.precision();
    match config.subcommand {
        SubcommandKind::BestApprox => {
            let seq = enumerate_best_approximations(&a1, &a2, config.height, &prec)?;
            let mut buf = Vec::new();
            match config.format {
                OutputFormat::Json => seq.export_jsonl(&mut buf)?,
                OutputFormat::Csv => {
                    writeln!(buf, "nu,m0,m1,m2,M,zeta_lo,zeta_hi")?;
                    for item in seq.items() {
                        let r = crate::best_approx::sequence_record(item)?;
                        writeln!(
                            buf,
                            "{},{},{},{},{},{},{}",
                            r.nu, r.m[0], r.m[1], r.m[2], r.height, r.zeta_lo, r.zeta_hi
                        )?;
                    }
                }
            }
            Ok(buf)
        }
        SubcommandKind::Witness => {
            let seq = enumerate_best_approximations(&a1, &a2, config.height, &prec)?;
            let mut records = Vec::new();
            let mut any_det = false;
            let last = seq.len().saturating_sub(2);
            for nu in 2..=last {
                let ctx = NuContext::new(&seq, nu)?;
                match construct_witness(&ctx, &prec) {
                    Ok(w) => {
                        any_det = true;
                        records.push(witness_record(&w, nu)?);
                    }
                    Err(Error::DetConditionFailed { .. }) => {}
                    Err(Error::Inapplicable { .. }) => {
                        any_det = true;
                    }
                    Err(e) => return Err(e),
                }
            }
            if !any_det {
                return Err(Error::NoApplicableNu);
            }
            let mut buf = Vec::new();
            match config.format {
                OutputFormat::Json => {
                    for r in &records {
                        writeln!(buf, "{}", serde_json::to_string(r).expect("serializable"))?;
                    }
                }
                OutputFormat::Csv => {
                    writeln!(buf, "nu,case,source,x1,x2,value_hi,bound_rhs,holds")?;
                    for r in &records {
                        writeln!(
                            buf,
                            "{},{},{},{},{},{},{},{}",
                            r.nu,
                            serde_plain(&r.case),
                            serde_plain(&r.source),
                            r.x[0],
                            r.x[1],
                            r.value_hi,
                            r.bound_rhs,
                            r.holds
                        )?;
                    }
                }
            }
            Ok(buf)
        }
        SubcommandKind::Verify => {
            let gamma = config
                .gamma
                .clone()
                .ok_or_else(|| Error::InvalidParameter("verify requires --gamma".into()))?;
            let report = run_verification(
                &a1,
                &a2,
                config.big_gamma.as_ref(),
                &gamma,
                config.height,
                &prec,
            )?;
            let mut buf = Vec::new();
            match config.format {
                OutputFormat::Json => {
                    writeln!(
                        buf,
                        "{}",
                        serde_json::to_string_pretty(&report).expect("serializable")
                    )?;
                }
                OutputFormat::Csv => {
                    writeln!(buf, "nu,case,x1,x2,value_hi,lhs_hi,C_lo,holds")?;
                    for w in &report.witnesses {
                        writeln!(
                            buf,
                            "{},{},{},{},{},{},{},{}",
                            w.nu,
                            serde_plain(&w.case),
                            w.x[0],
                            w.x[1],
                            w.value_hi,
                            w.lhs_hi,
                            w.c_lo,
                            w.holds
                        )?;
                    }
                }
            }
            Ok(buf)
        }
    }
}

/// Renders a serde unit-variant enum as its plain wire string.
fn serde_plain<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .expect("serializable")
        .as_str()
        .expect("unit variant")
        .to_string()
}

/// Entry point used by the binary.
pub fn main_entry() -> i32 {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    match parse_args(argv) {
        Ok(config) => run(&config),
        Err(e) => {
            // clap handles --help/--version with status 0 and usage errors
            // with status 2.
            e.exit()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_verify_example() {
        let config = parse_args([
            "verify",
            "--alpha1",
            "alg:-2,0,0,1@[1,2]",
            "--alpha2",
            "alg:-4,0,0,1@[1,2]",
            "--gamma",
            "2",
            "--height",
            "1000",
        ])
        .unwrap();
        assert_eq!(config.subcommand, SubcommandKind::Verify);
        assert_eq!(config.height, 1000);
        assert_eq!(config.gamma, Some(Rat::from_integer(2.into())));
        assert_eq!(config.big_gamma, None);
        assert_eq!(config.precision_cap, DEFAULT_PRECISION_CAP);
    }

    #[test]
    fn missing_alpha2_is_usage_error() {
        let r = parse_args(["best-approx", "--alpha1", "rat:1/3", "--height", "5"]);
        assert!(r.is_err());
    }

    #[test]
    fn malformed_descriptor_is_usage_error() {
        let r = parse_args([
            "best-approx",
            "--alpha1",
            "alg:-2,0,1@[2,3]",
            "--alpha2",
            "rat:1/2",
            "--height",
            "5",
        ]);
        assert!(r.is_err());
    }

    #[test]
    fn gamma_below_two_rejected() {
        let r = parse_args([
            "verify", "--alpha1", "rat:1/2", "--alpha2", "rat:1/3", "--gamma", "1.5", "--height",
            "5",
        ]);
        assert!(r.is_err());
    }

    #[test]
    fn render_parse_round_trip() {
        let config = parse_args([
            "verify",
            "--alpha1",
            "alg:-2,0,1@[1,2]",
            "--alpha2",
            "alg:-3,0,1@[1,2]",
            "--height",
            "123",
            "--gamma",
            "5/2",
            "--big-gamma",
            "1/4",
            "--format",
            "csv",
            "--precision-cap",
            "8192",
        ])
        .unwrap();
        let again = parse_args(config.render()).unwrap();
        assert_eq!(config, again);

        let config = parse_args([
            "best-approx",
            "--alpha1",
            "rat:2/7",
            "--alpha2",
            "dec:1.41e-4",
            "--height",
            "17",
        ])
        .unwrap();
        let again = parse_args(config.render()).unwrap();
        assert_eq!(config, again);
    }
}

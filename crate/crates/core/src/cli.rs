//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verified claim failed, 2 invalid input,
//! 3 I/O error, 4 numerical error.
//!
//! Every flag may also come from a `--config FILE` of `key = value` lines
//! (`#` starts a comment). Keys are flag names without the dashes; flags on
//! the command line take precedence.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::entanglement::{all_pairwise, concurrence, partial_trace_pair};
use crate::error::{Error, Result};
use crate::experiments::claims::{run_claim, Claim, ClaimReport, VerifyOptions};
use crate::experiments::optimize::{maximize_concurrence_with, SearchOptions, TemperatureSearch};
use crate::experiments::scenario::{linspace, Scenario, SCENARIO_NAMES};
use crate::experiments::sweep::{fmt_num, run_sweep};
use crate::thermal::Temperature;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CLAIM_FAILED: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

const SUBCOMMANDS: [&str; 4] = ["concurrence", "sweep", "verify", "optimize"];

#[derive(Parser, Debug)]
#[command(
    name = "xxchain",
    version,
    about = "Pairwise thermal entanglement in XX open chains with bond impurities"
)]
#[command(args_override_self = true)]
struct Cli {
    /// key = value file mirroring the flags
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Concurrence of every requested pair at one (chain, temperature) point
    Concurrence(ConcurrenceArgs),
    /// Scan a scenario over J and T grids and write CSV
    Sweep(SweepArgs),
    /// Run claim suites and report pass/fail
    Verify(VerifyArgs),
    /// Maximize one pair concurrence over the impurity parameter
    Optimize(OptimizeArgs),
}

#[derive(Args, Debug, Clone)]
struct ChainArgs {
    /// Qubit count
    #[arg(long)]
    n: Option<usize>,
    /// Explicit site factors J1,...,Jn
    #[arg(long)]
    couplings: Option<String>,
    /// Site carrying the impurity parameter (1-based, default 1)
    #[arg(long)]
    impurity_site: Option<usize>,
    /// Impurity on both boundary sites (J1 = Jn = J)
    #[arg(long)]
    boundary: bool,
}

#[derive(Args, Debug)]
struct ConcurrenceArgs {
    #[command(flatten)]
    chain: ChainArgs,
    /// Impurity parameter used with --impurity-site or --boundary
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    j: f64,
    /// Temperature; 0 is the ground-multiplet limit
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    temperature: f64,
    /// Pairs as "i,j;k,l" (default: all)
    #[arg(long)]
    pairs: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Built-in scenario: fig1, fig2, fig4, fig5, six-qubit
    #[arg(long)]
    scenario: Option<String>,
    #[command(flatten)]
    chain: ChainArgs,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    j_min: f64,
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    j_max: f64,
    #[arg(long, default_value_t = 61)]
    j_steps: usize,
    /// Comma-separated temperatures (default: the scenario's grid)
    #[arg(long, allow_negative_numbers = true)]
    t: Option<String>,
    /// Pairs as "i,j;k,l" (default: the scenario's pairs)
    #[arg(long)]
    pairs: Option<String>,
    /// Output CSV (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the temperature at which each concurrence falls to 0.01
    #[arg(long)]
    decay_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// "all" or a comma-separated list of claim ids
    #[arg(long, default_value = "all")]
    claims: String,
    /// Chain size for the parity and monotone-profile suites
    #[arg(long)]
    n: Option<usize>,
    /// Tolerance for C14 <= min(C12, C23, C34) + epsilon
    #[arg(long, allow_negative_numbers = true)]
    epsilon: Option<f64>,
    /// Write the reports as JSON
    #[arg(long)]
    report: Option<PathBuf>,
    /// Print JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct OptimizeArgs {
    #[command(flatten)]
    chain: ChainArgs,
    /// Pair as "i,j"
    #[arg(long)]
    pair: String,
    /// Fixed temperature (ignored when --t-max is given)
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    t: f64,
    #[arg(long, allow_negative_numbers = true)]
    t_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    t_max: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    j_min: f64,
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    j_max: f64,
    #[arg(long, default_value_t = 61)]
    grid_points: usize,
}

#[derive(Debug)]
enum Failure {
    Claims,
    Error(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Error(Error::Io(e))
    }
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_) => EXIT_INVALID_INPUT,
        Error::Io(_) => EXIT_IO,
        Error::Csv(e) if e.is_io_error() => EXIT_IO,
        Error::Csv(_) => EXIT_INVALID_INPUT,
        Error::GridPoint { source, .. } => exit_code(source),
        Error::NoConvergence { .. } | Error::InvalidState(_) => EXIT_NUMERICAL,
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Results go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match merge_config(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    return EXIT_OK;
                }
                _ => EXIT_INVALID_INPUT,
            };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    let result = match cli.command {
        Command::Concurrence(a) => cmd_concurrence(a, out),
        Command::Sweep(a) => cmd_sweep(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Optimize(a) => cmd_optimize(a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Claims) => EXIT_CLAIM_FAILED,
        Err(Failure::Error(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Inserts `--key value` pairs from the config file right after the
/// subcommand, so that later command-line flags override them.
fn merge_config(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let mut path = None;
    for (k, a) in args.iter().enumerate() {
        let s = a.to_string_lossy();
        if s == "--config" {
            path = args.get(k + 1).map(PathBuf::from);
        } else if let Some(p) = s.strip_prefix("--config=") {
            path = Some(PathBuf::from(p));
        }
    }
    let Some(path) = path else { return Ok(args) };
    let text = std::fs::read_to_string(&path)?;
    let extra = parse_config(&text)?;
    let Some(pos) = args
        .iter()
        .position(|a| SUBCOMMANDS.contains(&a.to_string_lossy().as_ref()))
    else {
        return Ok(args);
    };
    let mut merged = args[..=pos].to_vec();
    merged.extend(extra.into_iter().map(OsString::from));
    merged.extend_from_slice(&args[pos + 1..]);
    Ok(merged)
}

fn parse_config(text: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .or_else(|| line.split_once(':'))
            .ok_or_else(|| {
                Error::input(format!("config line {}: expected key = value", lineno + 1))
            })?;
        let key = key.trim().replace('_', "-");
        let value = value.trim().trim_matches('"');
        if key == "config" {
            continue;
        }
        match value {
            "true" => out.push(format!("--{key}")),
            "false" => {}
            v => {
                out.push(format!("--{key}"));
                out.push(v.to_string());
            }
        }
    }
    Ok(out)
}

fn parse_list(field: &str, s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| Error::input(format!("--{field}: '{x}' is not a number")))
        })
        .collect()
}

fn parse_pair(field: &str, s: &str) -> Result<(usize, usize)> {
    let bad = || Error::input(format!("--{field}: '{s}' is not a pair i,j"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn parse_pairs(field: &str, s: &str) -> Result<Vec<(usize, usize)>> {
    s.split(';').map(|p| parse_pair(field, p)).collect()
}

/// Resolves `ChainArgs` into a scenario whose scan parameter is the impurity strength.
fn chain_scenario(a: &ChainArgs) -> Result<Scenario> {
    if let Some(c) = &a.couplings {
        let factors = parse_list("couplings", c)?;
        if let Some(n) = a.n {
            if n != factors.len() {
                return Err(Error::input(format!(
                    "--couplings: {} values given but --n is {n}",
                    factors.len()
                )));
            }
        }
        return Scenario::fixed("custom", factors).map_err(|e| field_error("couplings", e));
    }
    let n =
        a.n.ok_or_else(|| Error::input("--n: required unless --couplings is given"))?;
    let s = if a.boundary {
        Scenario::boundary(n).map_err(|e| field_error("n", e))?
    } else if let Some(site) = a.impurity_site {
        Scenario::single_impurity(n, site).map_err(|e| field_error("impurity-site", e))?
    } else {
        Scenario::single_impurity(n, 1).map_err(|e| field_error("n", e))?
    };
    Ok(Scenario {
        name: "custom".into(),
        ..s
    })
}

fn field_error(field: &str, e: Error) -> Error {
    match e {
        Error::InvalidInput(m) => Error::input(format!("--{field}: {m}")),
        other => other,
    }
}

fn open_out<'a>(path: &Option<PathBuf>, stdout: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(create(p)?)),
        None => Box::new(stdout),
    })
}

fn create(p: &Path) -> Result<File> {
    Ok(File::create(p)?)
}

fn cmd_concurrence(a: ConcurrenceArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let scenario = chain_scenario(&a.chain)?;
    let chain = scenario.chain(a.j).map_err(|e| field_error("j", e))?;
    let t = Temperature::new(a.temperature).map_err(|e| field_error("temperature", e))?;
    let rho = chain.thermal_state(t)?;
    let results: Vec<_> = match &a.pairs {
        None => all_pairwise(&rho)?.into_iter().collect(),
        Some(p) => {
            let mut v = Vec::new();
            for (i, j) in parse_pairs("pairs", p)? {
                let r = partial_trace_pair(&rho, i, j).map_err(|e| field_error("pairs", e))?;
                v.push(((i, j), concurrence(&r)?));
            }
            v
        }
    };
    let mut w = open_out(&a.out, stdout)?;
    writeln!(
        w,
        "pair_i,pair_j,concurrence,lambda1,lambda2,lambda3,lambda4"
    )?;
    for ((i, j), c) in results {
        let l: Vec<String> = c.lambdas.iter().map(|x| fmt_num(*x)).collect();
        writeln!(w, "{i},{j},{},{}", fmt_num(c.value), l.join(","))?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_sweep(a: SweepArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let mut scenario = match &a.scenario {
        Some(name) => {
            Scenario::named(name, a.chain.impurity_site).map_err(|e| field_error("scenario", e))?
        }
        None if a.chain.n.is_some() || a.chain.couplings.is_some() => chain_scenario(&a.chain)?,
        None => {
            return Err(Error::input(format!(
                "--scenario: required unless --n or --couplings is given; valid scenarios: {}",
                SCENARIO_NAMES.join(", ")
            ))
            .into())
        }
    };
    if let Some(p) = &a.pairs {
        scenario = scenario
            .with_pairs(parse_pairs("pairs", p)?)
            .map_err(|e| field_error("pairs", e))?;
    }
    let j_grid = linspace(a.j_min, a.j_max, a.j_steps).map_err(|e| field_error("j-steps", e))?;
    let t_grid = match &a.t {
        Some(t) => parse_list("t", t)?,
        None => scenario.temperatures.clone(),
    };
    let result = run_sweep(&scenario, &j_grid, &t_grid)?;
    {
        let w = open_out(&a.out, stdout)?;
        result.write_csv(w)?;
    }
    if let Some(p) = &a.decay_out {
        result.write_decay_csv(BufWriter::new(create(p)?), 0.01)?;
    }
    Ok(())
}

fn cmd_verify(a: VerifyArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let claims = Claim::parse_list(&a.claims).map_err(|e| field_error("claims", e))?;
    let mut opts = VerifyOptions::default();
    if let Some(n) = a.n {
        if !(3..=8).contains(&n) {
            return Err(Error::input(format!("--n: {n} outside 3..=8")).into());
        }
        opts.parity_sizes = vec![n];
        opts.profile_sizes = if n % 2 == 0 && n >= 4 {
            vec![n]
        } else {
            vec![]
        };
    }
    if let Some(eps) = a.epsilon {
        if !(eps >= 0.0) {
            return Err(Error::input("--epsilon: must be >= 0").into());
        }
        opts.transfer_epsilon = eps;
    }
    let mut reports: Vec<ClaimReport> = Vec::new();
    for c in claims {
        reports.extend(run_claim(c, &opts)?);
    }
    if a.json {
        writeln!(
            stdout,
            "{}",
            serde_json::to_string_pretty(&reports).expect("serializable")
        )?;
    } else {
        for r in &reports {
            write!(stdout, "{r}")?;
        }
        let failed = reports.iter().filter(|r| !r.passed).count();
        writeln!(
            stdout,
            "{} claims, {} passed, {failed} failed",
            reports.len(),
            reports.len() - failed
        )?;
    }
    if let Some(p) = &a.report {
        let mut w = BufWriter::new(create(p)?);
        serde_json::to_writer_pretty(&mut w, &reports).map_err(io::Error::from)?;
        w.flush()?;
    }
    if reports.iter().all(|r| r.passed) {
        Ok(())
    } else {
        Err(Failure::Claims)
    }
}

fn cmd_optimize(a: OptimizeArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let scenario = chain_scenario(&a.chain)?;
    let pair = parse_pair("pair", &a.pair)?;
    let scenario = scenario
        .with_pairs(vec![pair])
        .map_err(|e| field_error("pair", e))?;
    let t = match (a.t_min, a.t_max) {
        (lo, Some(hi)) => TemperatureSearch::Range(lo.unwrap_or(0.0), hi),
        (Some(_), None) => return Err(Error::input("--t-min: requires --t-max").into()),
        (None, None) => TemperatureSearch::Fixed(a.t),
    };
    let opts = SearchOptions {
        grid_points: a.grid_points,
        ..Default::default()
    };
    let opt = maximize_concurrence_with(&scenario, pair, (a.j_min, a.j_max), t, opts)
        .map_err(|e| field_error("j-max", e))?;
    writeln!(stdout, "pair: {},{}", pair.0, pair.1)?;
    writeln!(stdout, "J*: {}", fmt_num(opt.j))?;
    writeln!(stdout, "T*: {}", fmt_num(opt.temperature))?;
    writeln!(stdout, "C*: {}", fmt_num(opt.concurrence))?;
    writeln!(
        stdout,
        "grid best: J = {}, T = {}, C = {}",
        fmt_num(opt.grid_best.j),
        fmt_num(opt.grid_best.temperature),
        fmt_num(opt.grid_best.concurrence)
    )?;
    writeln!(
        stdout,
        "evaluations: {} ({} grid)",
        opt.evaluations,
        opt.scan.len()
    )?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("xxchain").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn config_lines() {
        let args =
            parse_config("n = 3\n# comment\ncouplings: 1,1,1\nboundary = true\njson = false\n")
                .unwrap();
        assert_eq!(args, vec!["--n", "3", "--couplings", "1,1,1", "--boundary"]);
        assert!(parse_config("garbage").is_err());
    }

    #[test]
    fn mismatched_couplings_name_the_field() {
        let (code, _, err) = run_str(&["concurrence", "--n", "4", "--couplings", "1,1,1"]);
        assert_eq!(code, EXIT_INVALID_INPUT);
        assert!(err.contains("--couplings"), "{err}");
    }

    #[test]
    fn bad_temperature_names_the_field() {
        let (code, _, err) = run_str(&["concurrence", "--couplings", "1,1", "--temperature", "-1"]);
        assert_eq!(code, EXIT_INVALID_INPUT);
        assert!(err.contains("--temperature"), "{err}");
    }

    #[test]
    fn unknown_flag_is_invalid_input() {
        let (code, _, _) = run_str(&["sweep", "--bogus"]);
        assert_eq!(code, EXIT_INVALID_INPUT);
    }

    #[test]
    fn help_exits_cleanly() {
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("sweep"));
    }

    #[test]
    fn error_codes() {
        assert_eq!(exit_code(&Error::input("x")), EXIT_INVALID_INPUT);
        assert_eq!(exit_code(&Error::InvalidState(-1.0)), EXIT_NUMERICAL);
        assert_eq!(
            exit_code(&Error::NoConvergence {
                sweeps: 1,
                residual: 1.0
            }),
            EXIT_NUMERICAL
        );
        assert_eq!(exit_code(&Error::Io(io::Error::other("x"))), EXIT_IO);
        let nested = Error::GridPoint {
            j: 1.0,
            temperature: None,
            source: Box::new(Error::InvalidState(-1.0)),
        };
        assert_eq!(exit_code(&nested), EXIT_NUMERICAL);
    }
}

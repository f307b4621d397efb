//! Command-line front end. [`run_command`] does all the work and returns
//! the rendered output, so the binary is a thin wrapper around it.

use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exact_arith::Rational;
use crate::identities::{run_suite, IdentityReport, Suite, SuiteRanges};
use crate::pfd_engine::{
    build_family_spec, decompose_family, oracle_decompose, verify_equal, Certificate,
    ErratumMode, Family, FamilyParams, PfdResult, RationalFunctionSpec,
};
use crate::sweep::{run_sweep, worker_count};
use crate::symbolic::tables::{emit_table, TableFormat};
use crate::symbolic::TableKind;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "pfrac", version, about = "Exact partial fractions and harmonic number identities")]
struct Cli {
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decompose a family instance (checked against the oracle) or a JSON spec.
    Decompose(DecomposeArgs),
    /// Evaluate an identity suite over parameter ranges.
    Identities(IdentitiesArgs),
    /// Emit Omega, varpi or omega coefficient tables.
    Tables(TablesArgs),
    /// Run the full acceptance sweep.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Debug, Args)]
struct DecomposeArgs {
    #[arg(long, default_value = "theorem")]
    family: Family,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, default_value_t = 1)]
    lambda: u32,
    #[arg(long, default_value_t = 0)]
    mu: u32,
    #[arg(long, default_value_t = 0)]
    theta: u32,
    #[arg(long, default_value = "corrected")]
    mode: ErratumMode,
    /// Path to a JSON rational-function spec; decomposed by the oracle.
    #[arg(long, conflicts_with_all = ["family", "n"])]
    spec: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    no_verify: bool,
}

#[derive(Debug, Args)]
struct IdentitiesArgs {
    #[arg(long)]
    suite: Suite,
    /// `a` or `a..b` (inclusive).
    #[arg(long, value_parser = parse_range)]
    n: RangeInclusive<u32>,
    #[arg(long, value_parser = parse_range, default_value = "1..5")]
    lambda: RangeInclusive<u32>,
    #[arg(long, value_parser = parse_range)]
    mu: Option<RangeInclusive<u32>>,
    #[arg(long, value_parser = parse_range)]
    theta: Option<RangeInclusive<u32>>,
    #[arg(long, default_value = "corrected")]
    mode: ErratumMode,
    /// Restrict the mixed suite to one family.
    #[arg(long)]
    family: Option<Family>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Args)]
struct TablesArgs {
    #[arg(long)]
    kind: TableKind,
    #[arg(long, default_value_t = 5)]
    ell_max: u32,
    #[arg(long, value_enum, default_value = "latex")]
    format: Format,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

/// `a` or `a..b`, both ends inclusive.
fn parse_range(s: &str) -> Result<RangeInclusive<u32>> {
    let num = |t: &str| {
        t.trim()
            .parse::<u32>()
            .map_err(|_| Error::usage(format!("bad range bound {t:?}")))
    };
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if a > b {
        return Err(Error::usage(format!("empty range {s:?}")));
    }
    Ok(a..=b)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and runs the subcommand.
/// Exit status is 0 when every check passes, 1 on a failed check and 2 on
/// a usage error.
pub fn run_command<I, T>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            return if status == EXIT_PASS {
                CommandOutput { status, stdout: text, stderr: String::new() }
            } else {
                CommandOutput { status, stdout: String::new(), stderr: text }
            };
        }
    };
    let result = match &cli.command {
        Command::Decompose(a) => decompose(a),
        Command::Identities(a) => identities(a),
        Command::Tables(a) => tables(a),
        Command::Sweep(a) => sweep(a),
    };
    let (status, body) = match result {
        Ok(v) => v,
        Err(e) => {
            let status = match e {
                Error::Usage(_) | Error::Domain(_) | Error::Parse(_) => EXIT_USAGE,
                Error::DivisionByZero | Error::Internal(_) => EXIT_FAIL,
            };
            return CommandOutput {
                status,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            };
        }
    };
    match &cli.output {
        None => CommandOutput { status, stdout: body, stderr: String::new() },
        Some(path) => match std::fs::write(path, body) {
            Ok(()) => CommandOutput { status, stdout: String::new(), stderr: String::new() },
            Err(e) => CommandOutput {
                status: EXIT_USAGE,
                stdout: String::new(),
                stderr: format!("error: cannot write {}: {e}\n", path.display()),
            },
        },
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Error::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn status_of(passed: bool) -> i32 {
    if passed {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

#[derive(Serialize)]
struct Verification {
    matches_oracle: bool,
    certificate: Certificate,
}

fn decompose(a: &DecomposeArgs) -> Result<(i32, String)> {
    let (label, spec, pfd) = match &a.spec {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::usage(format!("cannot read {}: {e}", path.display())))?;
            let spec: RationalFunctionSpec =
                serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            let pfd = oracle_decompose(&spec)?;
            (json!({"source": "spec"}), spec, pfd)
        }
        None => {
            let n = a.n.ok_or_else(|| Error::usage("decompose needs --n or --spec"))?;
            let params = FamilyParams {
                family: a.family,
                n,
                lambda: a.lambda,
                mu: a.mu,
                theta: a.theta,
                mode: a.mode,
            };
            let spec = build_family_spec(&params)?;
            let pfd = decompose_family(&params)?;
            (serde_json::to_value(params).map_err(|e| Error::Internal(e.to_string()))?, spec, pfd)
        }
    };
    let verification = if a.no_verify {
        None
    } else {
        Some(Verification {
            matches_oracle: oracle_decompose(&spec)? == pfd,
            certificate: verify_equal(&spec, &pfd),
        })
    };
    let passed = verification
        .as_ref()
        .is_none_or(|v| v.matches_oracle && v.certificate.is_equal());
    let body = match a.format {
        Format::Json => to_json(&json!({
            "params": label,
            "spec": spec,
            "decomposition": pfd,
            "verification": verification,
        }))?,
        Format::Text => {
            let mut s = render_text(&pfd);
            if let Some(v) = &verification {
                s.push_str(&format!(
                    "oracle: {}\ncertificate: {}\n",
                    if v.matches_oracle { "match" } else { "mismatch" },
                    match &v.certificate {
                        Certificate::Equal { points } => format!("equal at {points} points"),
                        Certificate::Counterexample { x0, spec_value, pfd_value } => format!(
                            "counterexample at x = {x0}: function {spec_value}, decomposition {pfd_value}"
                        ),
                    }
                ));
            }
            s
        }
        Format::Latex => format!("{}\n", render_latex(&pfd)),
    };
    Ok((status_of(passed), body))
}

fn render_text(pfd: &PfdResult) -> String {
    let mut s = format!("polynomial part: {}\n", pfd.polynomial_part);
    for (root, coeffs) in &pfd.terms {
        let list: Vec<String> = coeffs.iter().map(Rational::to_string).collect();
        s.push_str(&format!("pole {root}: [{}]\n", list.join(", ")));
    }
    s
}

fn latex_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
    }
}

fn latex_linear(root: &Rational) -> String {
    if root.is_zero() {
        "x".into()
    } else if root.is_negative() {
        format!("x+{}", latex_rational(&root.abs()))
    } else {
        format!("x-{}", latex_rational(root))
    }
}

fn render_latex(pfd: &PfdResult) -> String {
    let mut terms: Vec<(bool, String)> = Vec::new();
    for (i, c) in pfd.polynomial_part.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let x = match i {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{{{i}}}"),
        };
        let a = c.abs();
        let body = if i > 0 && a.is_one() { x } else { format!("{}{x}", latex_rational(&a)) };
        terms.push((c.is_negative(), body));
    }
    for (root, coeffs) in &pfd.terms {
        let lin = latex_linear(root);
        for (t, c) in coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let den = if t == 0 { lin.clone() } else { format!("({lin})^{{{}}}", t + 1) };
            let a = c.abs();
            let body = if a.is_integer() {
                format!("\\frac{{{}}}{{{den}}}", a.numer())
            } else {
                format!("\\frac{{{}}}{{{}{den}}}", a.numer(), a.denom())
            };
            terms.push((c.is_negative(), body));
        }
    }
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (neg, body)) in terms.into_iter().enumerate() {
        match (i, neg) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    out
}

fn identities(a: &IdentitiesArgs) -> Result<(i32, String)> {
    let mut ranges = SuiteRanges::new(a.n.clone());
    ranges.lambda = a.lambda.clone();
    ranges.mu = a.mu.clone();
    ranges.theta = a.theta.clone();
    ranges.mode = a.mode;
    if let Some(f) = a.family {
        if a.suite != Suite::Mixed {
            return Err(Error::usage("--family applies only to the mixed suite"));
        }
        ranges.families = vec![f];
    }
    let reports = run_suite(a.suite, &ranges)?;
    let passed = reports.iter().all(IdentityReport::passed);
    let body = match a.format {
        Format::Json => to_json(&json!({
            "suite": a.suite.name(),
            "passed": passed,
            "reports": reports,
        }))?,
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&format!(
                    "{} {} {}: computed {}, expected {}\n",
                    if r.passed() { "PASS" } else { "FAIL" },
                    r.id,
                    r.params,
                    r.computed,
                    r.expected
                ));
            }
            s
        }
        Format::Latex => return Err(Error::usage("identities supports json and text output")),
    };
    Ok((status_of(passed), body))
}

fn tables(a: &TablesArgs) -> Result<(i32, String)> {
    let format = match a.format {
        Format::Json => TableFormat::Json,
        Format::Latex => TableFormat::Latex,
        Format::Text => return Err(Error::usage("tables supports json and latex output")),
    };
    Ok((EXIT_PASS, emit_table(a.kind, a.ell_max, format)?))
}

fn sweep(a: &SweepArgs) -> Result<(i32, String)> {
    let report = run_sweep(worker_count()?)?;
    let body = match a.format {
        Format::Json => report.to_json()?,
        Format::Text => {
            let mut s = String::new();
            for c in &report.criteria {
                s.push_str(&format!(
                    "{} {:>2} {} ({} checks, {} failed)\n",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.id,
                    c.name,
                    c.checks,
                    c.failed
                ));
                for f in &c.failures {
                    s.push_str(&format!("     {f}\n"));
                }
            }
            s
        }
        Format::Latex => return Err(Error::usage("sweep supports json and text output")),
    };
    Ok((status_of(report.passed), body))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> CommandOutput {
        run_command(std::iter::once("pfrac").chain(args.iter().copied()))
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3").unwrap(), 3..=3);
        assert_eq!(parse_range("1..5").unwrap(), 1..=5);
        assert_eq!(parse_range("1..=5").unwrap(), 1..=5);
        assert!(parse_range("5..1").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn theorem_decompose_json() {
        let out = run(&["decompose", "--family", "theorem", "--n", "2", "--lambda", "2", "--mu", "0"]);
        assert_eq!(out.status, EXIT_PASS, "{}", out.stderr);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(
            v["decomposition"]["terms"],
            json!([
                {"root": "-2", "coeffs": ["3", "1"]},
                {"root": "-1", "coeffs": ["0", "4"]},
                {"root": "0", "coeffs": ["-3", "1"]}
            ])
        );
        assert_eq!(v["verification"]["matches_oracle"], json!(true));
    }

    #[test]
    fn latex_and_text_rendering() {
        let out = run(&["decompose", "--n", "1", "--format", "latex"]);
        assert_eq!(out.stdout, "-\\frac{1}{x+1} + \\frac{1}{x}\n");
        let out = run(&["decompose", "--family", "ex7", "--n", "1", "--format", "text"]);
        assert!(out.stdout.starts_with("polynomial part: 1\npole -1: [-4, 4]\n"), "{}", out.stdout);
    }

    #[test]
    fn printed_beukers_fails() {
        let out = run(&["identities", "--suite", "beukers", "--mode", "printed", "--n", "2"]);
        assert_eq!(out.status, EXIT_FAIL);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["reports"][0]["computed"], json!("216"));
        assert_eq!(v["reports"][0]["verdict"], json!("fail"));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(&["decompose", "--n", "x"]).status, EXIT_USAGE);
        assert_eq!(run(&["bogus"]).status, EXIT_USAGE);
        assert_eq!(run(&["identities", "--suite", "nope", "--n", "1"]).status, EXIT_USAGE);
        assert_eq!(run(&["decompose", "--family", "theta", "--n", "0", "--theta", "4"]).status, EXIT_USAGE);
        assert_eq!(run(&["tables", "--kind", "omega", "--format", "text"]).status, EXIT_USAGE);
        assert_eq!(run(&["decompose"]).status, EXIT_USAGE);
    }
}

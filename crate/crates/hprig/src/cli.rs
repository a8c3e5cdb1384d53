//! The `hprig` command-line front end.
//!
//! One subcommand per library operation; no business logic lives here. Exit
//! codes: 0 success, 1 domain error, 2 usage error, 3 verification failure
//! (any report with failures). `--json` switches every subcommand to JSON
//! output; `--out FILE` redirects it.

use crate::polycore::{parse_rat, Poly, Rat, SignPattern};
use crate::realizer::{self, WitnessPair};
use crate::rigidity::{self, Report, Verdict, VerdictStatus};
use crate::{isolator, Error, ModuliOrder, Result, Theorem2Case};
use clap::{Parser, Subcommand};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "hprig",
    version,
    about = "Sign patterns and moduli orders of hyperbolic polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Write output to FILE instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Sign pattern of a polynomial (e.g. "x^3+0.9x^2-5.2x+3.3")
    Sp {
        poly: String,
        /// Allow zero coefficients (pattern admitting zeros)
        #[arg(long)]
        allow_zero: bool,
    },
    /// Moduli order of a hyperbolic polynomial, equalities included
    Mo { poly: String },
    /// Sign changes and preservations of a sign pattern (e.g. "+ + - +")
    Descartes { sp: String },
    /// Build a polynomial realizing a strict moduli order (e.g. "P<N")
    RealizeMo { mo: String },
    /// Build a polynomial realizing a sign pattern by its canonical order
    RealizeSp { sp: String },
    /// Canonical moduli order of a strict sign pattern
    CanonicalMo { sp: String },
    /// Witness pair certifying a non-alternating order is not rigid
    Witness { mo: String },
    /// Rigidity verdict for a moduli order
    Classify {
        mo: String,
        /// Recompute all witness invariants
        #[arg(long)]
        validate: bool,
    },
    /// Even/mixed dichotomy for an even-degree polynomial with weakly
    /// alternating moduli
    ClassifyT2 { poly: String },
    /// Monic product of (x^2 - a^2) over positive moduli (e.g. "1, 2")
    EvenHp { moduli: String },
    /// Verification harnesses
    Verify {
        #[command(subcommand)]
        harness: VerifyCommand,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Rigid-order correspondence: sampled patterns plus the eight-row table
    Theorem1 {
        #[arg(long, default_value_t = 12)]
        max_degree: usize,
        #[arg(long, default_value_t = 200)]
        samples: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Weak-order statements: odd-degree products and the even-degree
    /// dichotomy
    Theorem2 {
        #[arg(long, default_value_t = 9)]
        max_degree: usize,
        #[arg(long, default_value_t = 100)]
        samples: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Exhaustive witness pairs for all qualifying orders up to a length
    Witnesses {
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
    },
    /// Random homotopy-step instances on an exact grid
    Homotopy {
        #[arg(long, default_value_t = 100)]
        samples: u32,
        #[arg(long, default_value_t = 16)]
        grid: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Canonicity necessary-condition sweep over all strict patterns
    CanonicalNecessary {
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
    },
}

/// Rendering style for reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableStyle {
    Text,
    Json,
}

/// Deterministic rendering of a report: a summary line, then failures and
/// notes; the JSON form is byte-stable for identical reports.
pub fn render_table(report: &Report, style: TableStyle) -> String {
    match style {
        TableStyle::Json => serde_json::to_string_pretty(report).expect("report serializes"),
        TableStyle::Text => {
            let mut out = format!(
                "{}/{} cases passed ({:.2}s)\n",
                report.cases_passed,
                report.cases_run,
                report.elapsed.as_secs_f64()
            );
            for f in &report.failures {
                out.push_str(&format!(
                    "FAIL {}\n  expected: {}\n  observed: {}\n",
                    f.input, f.expected, f.observed
                ));
            }
            for n in &report.notes {
                out.push_str(&format!("note: {n}\n"));
            }
            out
        }
    }
}

struct Outcome {
    text: String,
    verification_failed: bool,
}

fn ok(text: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        text: text.into(),
        verification_failed: false,
    })
}

fn witness_json(w: &WitnessPair) -> Result<serde_json::Value> {
    Ok(serde_json::json!({
        "mo": w.mo,
        "first": w.first,
        "second": w.second,
        "first_sp": w.first.sign_pattern(false)?,
        "second_sp": w.second.sign_pattern(false)?,
    }))
}

fn witness_text(w: &WitnessPair) -> Result<String> {
    Ok(format!(
        "mo: {}\nfirst: {}\nsecond: {}\nfirst_sp: {}\nsecond_sp: {}",
        w.mo,
        w.first,
        w.second,
        w.first.sign_pattern(false)?,
        w.second.sign_pattern(false)?
    ))
}

fn status_name(s: VerdictStatus) -> &'static str {
    match s {
        VerdictStatus::RigidByTheorem => "RIGID_BY_THEOREM",
        VerdictStatus::NonrigidWitnessed => "NONRIGID_WITNESSED",
        VerdictStatus::TrivialSingleSign => "TRIVIAL_SINGLE_SIGN",
    }
}

fn verdict_output(v: &Verdict, json: bool) -> Result<Outcome> {
    if json {
        let witness = match &v.witness {
            Some(w) => witness_json(w)?,
            None => serde_json::Value::Null,
        };
        let value = serde_json::json!({
            "status": status_name(v.status),
            "predicted_sp": v.predicted_sp,
            "witness": witness,
        });
        ok(serde_json::to_string_pretty(&value).expect("serializes"))
    } else {
        let mut text = status_name(v.status).to_string();
        if let Some(sp) = &v.predicted_sp {
            text.push_str(&format!("\npredicted_sp: {sp}"));
        }
        if let Some(w) = &v.witness {
            text.push('\n');
            text.push_str(&witness_text(w)?);
        }
        ok(text)
    }
}

fn parse_moduli_list(text: &str) -> Result<Vec<Rat>> {
    let trimmed = text.trim();
    let inner = trimmed
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .unwrap_or(trimmed);
    if inner.trim().is_empty() {
        return Err(Error::EmptyInput);
    }
    inner
        .split(',')
        .map(|part| parse_rat(part.trim()))
        .collect()
}

fn report_outcome(report: Report, json: bool, preamble: Option<String>) -> Result<Outcome> {
    let style = if json {
        TableStyle::Json
    } else {
        TableStyle::Text
    };
    let mut text = String::new();
    if !json {
        if let Some(p) = preamble {
            text.push_str(&p);
            if !text.ends_with('\n') {
                text.push('\n');
            }
        }
    }
    text.push_str(&render_table(&report, style));
    Ok(Outcome {
        verification_failed: !report.passed(),
        text,
    })
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let json = cli.json;
    match &cli.command {
        Command::Sp { poly, allow_zero } => {
            let p = Poly::parse(poly)?;
            let sp = p.sign_pattern(*allow_zero)?;
            if json {
                ok(
                    serde_json::to_string_pretty(&serde_json::json!({ "sp": sp }))
                        .expect("serializes"),
                )
            } else {
                ok(sp.to_string())
            }
        }
        Command::Mo { poly } => {
            let p = Poly::parse(poly)?;
            if p.degree() == 0 {
                return Err(Error::Precondition(
                    "a constant polynomial has no roots to order".into(),
                ));
            }
            let mo = isolator::moduli_order(&p)?;
            if json {
                ok(
                    serde_json::to_string_pretty(&serde_json::json!({ "mo": mo }))
                        .expect("serializes"),
                )
            } else {
                ok(mo.to_string())
            }
        }
        Command::Descartes { sp } => {
            let pattern: SignPattern = sp.parse()?;
            let (c, p) = pattern.descartes_counts();
            if json {
                ok(
                    serde_json::to_string_pretty(&serde_json::json!({ "c": c, "p": p }))
                        .expect("serializes"),
                )
            } else {
                ok(format!("c={c} p={p}"))
            }
        }
        Command::RealizeMo { mo } => {
            let order: ModuliOrder = mo.parse()?;
            let p = realizer::realize_mo(&order)?;
            if json {
                ok(serde_json::to_string_pretty(&p).expect("serializes"))
            } else {
                ok(p.to_string())
            }
        }
        Command::RealizeSp { sp } => {
            let pattern: SignPattern = sp.parse()?;
            let p = realizer::realize_sp(&pattern)?;
            if json {
                ok(serde_json::to_string_pretty(&p).expect("serializes"))
            } else {
                ok(p.to_string())
            }
        }
        Command::CanonicalMo { sp } => {
            let pattern: SignPattern = sp.parse()?;
            let mo = realizer::canonical_mo(&pattern)?;
            if json {
                ok(
                    serde_json::to_string_pretty(&serde_json::json!({ "mo": mo }))
                        .expect("serializes"),
                )
            } else {
                ok(mo.to_string())
            }
        }
        Command::Witness { mo } => {
            let order: ModuliOrder = mo.parse()?;
            let w = realizer::witness_pair(&order)?;
            if json {
                ok(serde_json::to_string_pretty(&witness_json(&w)?).expect("serializes"))
            } else {
                ok(witness_text(&w)?)
            }
        }
        Command::Classify { mo, validate } => {
            let order: ModuliOrder = mo.parse()?;
            let v = rigidity::classify(&order, *validate)?;
            verdict_output(&v, json)
        }
        Command::ClassifyT2 { poly } => {
            let p = Poly::parse(poly)?;
            let case = rigidity::classify_theorem2(&p)?;
            let name = match case {
                Theorem2Case::EvenCase => "EVEN_CASE",
                Theorem2Case::FullSpCase => "FULL_SP_CASE",
            };
            if json {
                ok(
                    serde_json::to_string_pretty(&serde_json::json!({ "case": name }))
                        .expect("serializes"),
                )
            } else {
                ok(name)
            }
        }
        Command::EvenHp { moduli } => {
            let values = parse_moduli_list(moduli)?;
            let p = realizer::even_hp(&values)?;
            if json {
                ok(serde_json::to_string_pretty(&p).expect("serializes"))
            } else {
                ok(p.to_string())
            }
        }
        Command::Verify { harness } => match harness {
            VerifyCommand::Theorem1 {
                max_degree,
                samples,
                seed,
            } => {
                let report = rigidity::verify_theorem1(*max_degree, *samples, *seed);
                report_outcome(report, json, Some(rigidity::theorem1_table_text()))
            }
            VerifyCommand::Theorem2 {
                max_degree,
                samples,
                seed,
            } => {
                let report = rigidity::verify_theorem2(*max_degree, *samples, *seed);
                report_outcome(report, json, None)
            }
            VerifyCommand::Witnesses { max_degree } => {
                let report = rigidity::verify_witnesses(*max_degree);
                report_outcome(report, json, None)
            }
            VerifyCommand::Homotopy {
                samples,
                grid,
                seed,
            } => {
                let report = rigidity::verify_homotopy_random(*samples, *grid, *seed);
                report_outcome(report, json, None)
            }
            VerifyCommand::CanonicalNecessary { max_degree } => {
                let report = rigidity::verify_canonical_necessary(*max_degree);
                report_outcome(report, json, None)
            }
        },
    }
}

/// Parse `argv`, run the mapped operation, and write its output. Returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            let mut text = outcome.text;
            if !text.ends_with('\n') {
                text.push('\n');
            }
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &text).map_err(Error::from),
                None => std::io::stdout()
                    .write_all(text.as_bytes())
                    .map_err(Error::from),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return 1;
            }
            if outcome.verification_failed {
                3
            } else {
                0
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

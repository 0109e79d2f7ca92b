//! `condmon` — exact factorization invariants of conductor submonoids.
//!
//! Subcommands: `validate`, `invariants`, `survey`, `verify`, `construct`,
//! `davenport`. All machine-readable output goes to stdout and is
//! byte-deterministic for a fixed (spec, budgets, version); progress and
//! timing go to stderr only.
//!
//! Exit codes: `0` pass, `1` assertion failure, `2` invalid spec,
//! `3` I/O or malformed JSON, `4` budget exhausted.
//!
//! The environment variable `CONDMON_BUDGET_SCALE` multiplies every budget
//! cap (floats accepted; caps never drop below 1).

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use condmon::conductor::{IdealExtensionMonoid, IdealOracle};
use condmon::factor::element_invariants;
use condmon::freemon::{ExponentVector, Window};
use condmon::parse::{
    parse_group, parse_group_element, parse_monoid_element, parse_prime_multiset, parse_sequence,
};
use condmon::report::{survey_csv, ElementReport, InvariantBody, Report, SurveyRow};
use condmon::spec::{ConstructionOutput, FamilyParams, SpecFile, SpecKind};
use condmon::suites::{SuiteRunner, SUITE_NAMES};
use condmon::zerosum::{FIotaOracle, FPhiOracle, ZeroSumContext};
use condmon::{Budget, Error};

#[derive(Parser)]
#[command(
    name = "condmon",
    version,
    about = "Exact factorization invariants of conductor submonoids",
    long_about = "Constructs conductor submonoids of free abelian monoids and zero-sum \
                  monoids over finite abelian groups, computes exact factorization \
                  invariants (length sets, distances, catenary degrees, unions of \
                  lengths, Davenport constants, class semigroups), and runs the \
                  machine-checked verification suites."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Schema-validate a spec file and its algebraic invariants
    Validate {
        /// Path to a JSON spec file
        spec: PathBuf,
    },
    /// Invariants of one element: Z_count, L, delta, c, c_eq, c_adj, c_mon
    Invariants {
        /// Path to a JSON spec file
        spec: PathBuf,
        /// Element literal in the spec's syntax; defaults to the spec's `element`
        #[arg(long)]
        element: Option<String>,
    },
    /// Per-element invariants for every member of a window, with a summary
    Survey {
        /// Path to a JSON spec file describing a monoid
        spec: PathBuf,
        /// Window upper corner, e.g. `5,5`; defaults to the spec's `budgets.window`
        #[arg(long, value_delimiter = ',')]
        window: Option<Vec<u32>>,
        /// Output format (CSV is a projection of the JSON rows)
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run named verification suites and report their verdicts
    Verify {
        /// Suite names (see --list)
        suites: Vec<String>,
        /// Run every suite, in order
        #[arg(long, conflicts_with = "suites")]
        all: bool,
        /// Print the available suite names and exit
        #[arg(long)]
        list: bool,
    },
    /// Build a named monoid/sequence family and print its spec JSON
    Construct {
        /// Family: deep_hole, power_primary, cycle, interval, equal_catenary
        family: String,
        /// Ambient dimension (deep_hole)
        #[arg(long)]
        s: Option<usize>,
        /// Conductor exponent (deep_hole)
        #[arg(long)]
        alpha: Option<u32>,
        /// Generator exponents, e.g. `2,2` (power_primary)
        #[arg(long, value_delimiter = ',')]
        alphas: Option<Vec<u32>>,
        /// Unit group literal, e.g. `C2` (power_primary)
        #[arg(long)]
        unit_group: Option<String>,
        /// Cycle length (cycle)
        #[arg(long)]
        m: Option<usize>,
        /// Group literal, e.g. `C5` (interval)
        #[arg(long)]
        group: Option<String>,
        /// Smallest target length (interval)
        #[arg(long)]
        k: Option<u64>,
        /// Largest target length (interval)
        #[arg(long)]
        ell: Option<u64>,
        /// Layer parameter (equal_catenary)
        #[arg(long)]
        n: Option<u64>,
        /// `large_order` or `bounded_exponent` (equal_catenary)
        #[arg(long)]
        mode: Option<String>,
        /// Exponent prime (equal_catenary, bounded_exponent mode)
        #[arg(long)]
        p: Option<u64>,
    },
    /// Davenport constant of a group, cross-checked two independent ways
    Davenport {
        /// Group literal, e.g. `C8` or `C2xC2`
        group: String,
        /// Restrict the support to these elements (repeatable); defaults to the whole group
        #[arg(long)]
        support: Vec<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = run(cli.command);
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

/// Exit-code contract: budget-category errors are 4, I/O (including
/// malformed JSON) is 3, everything else about the input is 2.
fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Io(_) => 3,
        Error::BudgetExceeded { .. }
        | Error::CapExceeded { .. }
        | Error::BoundAttained(_)
        | Error::WindowTooLarge(_) => 4,
        _ => 2,
    }
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Validate { spec } => cmd_validate(&spec),
        Command::Invariants { spec, element } => cmd_invariants(&spec, element),
        Command::Survey {
            spec,
            window,
            format,
        } => cmd_survey(&spec, window, format),
        Command::Verify { suites, all, list } => cmd_verify(suites, all, list),
        Command::Construct {
            family,
            s,
            alpha,
            alphas,
            unit_group,
            m,
            group,
            k,
            ell,
            n,
            mode,
            p,
        } => {
            let params = FamilyParams {
                s,
                alpha,
                alphas,
                unit_group,
                m,
                group,
                k,
                ell,
                n,
                mode,
                p,
            };
            cmd_construct(family, params)
        }
        Command::Davenport { group, support } => cmd_davenport(&group, &support),
    }
}

/// Reads and parses a spec file, returning it with the hex digest of the raw
/// input bytes. Unreadable files and malformed JSON are I/O-category errors;
/// schema violations on well-formed JSON are spec errors.
fn read_spec(path: &Path) -> Result<(SpecFile, String), Error> {
    let bytes = std::fs::read(path)?;
    let digest = format!("{:x}", Sha256::digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|e| {
        Error::Io(std::io::Error::new(
            std::io::ErrorKind::InvalidData,
            format!("spec is not UTF-8: {e}"),
        ))
    })?;
    if let Err(e) = serde_json::from_str::<serde_json::Value>(&text) {
        return Err(Error::Io(std::io::Error::new(
            std::io::ErrorKind::InvalidData,
            format!("malformed JSON: {e}"),
        )));
    }
    Ok((SpecFile::parse(&text)?, digest))
}

/// The effective budget: spec overrides scaled by `CONDMON_BUDGET_SCALE`.
fn scaled_budget(base: Budget) -> Result<Budget, Error> {
    match std::env::var("CONDMON_BUDGET_SCALE") {
        Err(_) => Ok(base),
        Ok(text) => {
            let factor: f64 = text.trim().parse().map_err(|_| {
                Error::InvalidSpec(format!(
                    "CONDMON_BUDGET_SCALE must be a positive number, got '{text}'"
                ))
            })?;
            if !(factor.is_finite() && factor > 0.0) {
                return Err(Error::InvalidSpec(format!(
                    "CONDMON_BUDGET_SCALE must be a positive number, got '{text}'"
                )));
            }
            Ok(base.scaled(factor))
        }
    }
}

fn kind_name(kind: SpecKind) -> &'static str {
    match kind {
        SpecKind::IdealExtension => "ideal-extension",
        SpecKind::ZeroSum => "zero-sum",
        SpecKind::LabeledPrimes => "labeled-primes",
        SpecKind::Construction => "construction",
    }
}

fn cmd_validate(path: &Path) -> Result<u8, Error> {
    let (spec, digest) = read_spec(path)?;
    let kind = spec.kind()?;
    match kind {
        SpecKind::IdealExtension => {
            spec.build_monoid()?;
        }
        SpecKind::ZeroSum => {
            let (ctx, support) = spec.build_zero_sum()?;
            if let Some(support) = support {
                ctx.validate_support(&support)?;
            }
            spec.default_sequence(&ctx)?;
        }
        SpecKind::LabeledPrimes => {
            spec.build_labeled_primes()?;
        }
        SpecKind::Construction => {
            spec.build_construction()?;
        }
    }
    println!(
        "{}",
        serde_json::json!({
            "valid": true,
            "kind": kind_name(kind),
            "input_digest": digest,
        })
    );
    Ok(0)
}

/// The element literal to analyze: the flag wins, then the spec's `element`.
fn element_literal(flag: Option<String>, spec: &SpecFile) -> Option<String> {
    flag.or_else(|| spec.element.clone())
}

fn cmd_invariants(path: &Path, element: Option<String>) -> Result<u8, Error> {
    let (spec, digest) = read_spec(path)?;
    let budget = scaled_budget(spec.budget())?;
    let need_literal = || -> Result<String, Error> {
        element_literal(element.clone(), &spec).ok_or_else(|| {
            Error::InvalidSpec("no element: pass --element or set \"element\" in the spec".into())
        })
    };
    let report_monoid = |h: &IdealExtensionMonoid, literal: &str| -> Result<ElementReport, Error> {
        let x = parse_monoid_element(h, literal)?;
        let oracle = IdealOracle::new(h, &budget);
        let (inv, _) = element_invariants(&oracle, &x, &budget)?;
        Ok(ElementReport {
            element: h.format_element(&x),
            body: InvariantBody::from(&inv),
        })
    };
    let report_sequence = |ctx: &ZeroSumContext, literal: &str| -> Result<ElementReport, Error> {
        let sequence = parse_sequence(ctx.group(), literal)?;
        let oracle = FIotaOracle::new(ctx, &budget);
        let (inv, _) = element_invariants(&oracle, &sequence, &budget)?;
        Ok(ElementReport {
            element: sequence.to_string(),
            body: InvariantBody::from(&inv),
        })
    };

    let element_report = match spec.kind()? {
        SpecKind::IdealExtension => report_monoid(&spec.build_monoid()?, &need_literal()?)?,
        SpecKind::ZeroSum => {
            let (ctx, _) = spec.build_zero_sum()?;
            report_sequence(&ctx, &need_literal()?)?
        }
        SpecKind::LabeledPrimes => {
            let labeled = spec.build_labeled_primes()?;
            let ctx = ZeroSumContext::new(labeled.group().clone());
            let p = parse_prime_multiset(&need_literal()?)?;
            let oracle = FPhiOracle::new(&labeled, &ctx, &budget);
            let (inv, _) = element_invariants(&oracle, &p, &budget)?;
            ElementReport {
                element: p.to_string(),
                body: InvariantBody::from(&inv),
            }
        }
        SpecKind::Construction => match spec.build_construction()? {
            ConstructionOutput::Monoid(h) => report_monoid(&h, &need_literal()?)?,
            ConstructionOutput::Interval(instance) => {
                let ctx = ZeroSumContext::new(instance.group.clone());
                let literal = element_literal(element.clone(), &spec)
                    .unwrap_or_else(|| instance.sequence.to_string());
                report_sequence(&ctx, &literal)?
            }
            ConstructionOutput::EqualCatenary(instance) => {
                let ctx = ZeroSumContext::new(instance.group.clone());
                let literal = element_literal(element.clone(), &spec)
                    .unwrap_or_else(|| instance.sequence.to_string());
                report_sequence(&ctx, &literal)?
            }
        },
    };

    let mut report = Report::new(digest);
    report.elements.push(element_report);
    print!("{}", report.to_json());
    Ok(0)
}

fn cmd_survey(path: &Path, window: Option<Vec<u32>>, format: Format) -> Result<u8, Error> {
    let (spec, digest) = read_spec(path)?;
    let budget = scaled_budget(spec.budget())?;
    let monoid = match spec.kind()? {
        SpecKind::IdealExtension => spec.build_monoid()?,
        SpecKind::Construction => match spec.build_construction()? {
            ConstructionOutput::Monoid(h) => h,
            _ => {
                return Err(Error::InvalidSpec(
                    "survey needs a monoid; this construction builds a sequence".into(),
                ))
            }
        },
        _ => {
            return Err(Error::InvalidSpec(
                "survey needs an ideal-extension or monoid-construction spec".into(),
            ))
        }
    };
    let window = match window {
        Some(coords) => Window::new(ExponentVector::new(coords)),
        None => spec.window().ok_or_else(|| {
            Error::InvalidSpec("no window: pass --window or set budgets.window".into())
        })?,
    };
    let oracle = IdealOracle::new(&monoid, &budget);
    let mut report = Report::new(digest);
    for a in monoid.members_in_window(&window, &budget)? {
        let element = monoid.format_element(&a);
        match element_invariants(&oracle, &a, &budget) {
            Ok((inv, _)) => report.rows.push(SurveyRow {
                element,
                invariants: Some(InvariantBody::from(&inv)),
                error: None,
            }),
            // Budget exhaustion is recorded on the row; the survey goes on.
            Err(e @ (Error::BudgetExceeded { .. } | Error::CapExceeded { .. })) => {
                report.rows.push(SurveyRow {
                    element,
                    invariants: None,
                    error: Some(e.to_string()),
                })
            }
            Err(e) => return Err(e),
        }
    }
    report.summarize_rows();
    match format {
        Format::Json => print!("{}", report.to_json()),
        Format::Csv => print!("{}", survey_csv(&report.rows)),
    }
    Ok(0)
}

fn cmd_verify(suites: Vec<String>, all: bool, list: bool) -> Result<u8, Error> {
    if list {
        for name in SUITE_NAMES {
            println!("{name}");
        }
        return Ok(0);
    }
    let names: Vec<String> = if all {
        SUITE_NAMES.iter().map(|s| s.to_string()).collect()
    } else {
        suites
    };
    if names.is_empty() {
        return Err(Error::InvalidSpec(
            "no suites named; pass suite names, --all, or --list".into(),
        ));
    }
    let budget = scaled_budget(Budget::default())?;
    let mut runner = SuiteRunner::new(&budget);
    let mut report = Report::new(String::new());
    let mut all_pass = true;
    for name in &names {
        let start = Instant::now();
        let verdict = runner.run(name)?;
        eprintln!(
            "suite {name}: {} ({} assertions, {:.2}s)",
            if verdict.is_conclusive_pass() {
                "pass"
            } else {
                "FAIL"
            },
            verdict.assertions,
            start.elapsed().as_secs_f64()
        );
        all_pass &= verdict.is_conclusive_pass();
        report.verdicts.push(verdict);
    }
    print!("{}", report.to_json());
    Ok(if all_pass { 0 } else { 1 })
}

fn cmd_construct(family: String, params: FamilyParams) -> Result<u8, Error> {
    let request = SpecFile {
        family: Some(family),
        params: Some(params),
        ..SpecFile::default()
    };
    let emitted = match request.build_construction()? {
        ConstructionOutput::Monoid(h) => SpecFile::from_monoid(&h),
        ConstructionOutput::Interval(instance) => SpecFile::from_sequence(
            &ZeroSumContext::new(instance.group.clone()),
            &instance.sequence,
        ),
        ConstructionOutput::EqualCatenary(instance) => SpecFile::from_sequence(
            &ZeroSumContext::new(instance.group.clone()),
            &instance.sequence,
        ),
    };
    print!("{}", emitted.to_json());
    Ok(0)
}

fn cmd_davenport(group: &str, support: &[String]) -> Result<u8, Error> {
    let group = parse_group(group)?;
    let budget = scaled_budget(Budget::default())?;
    let ctx = ZeroSumContext::new(group);
    let support = if support.is_empty() {
        ctx.group().enumerate_elements(budget.enumeration_cap)?
    } else {
        let mut elements = Vec::with_capacity(support.len());
        for text in support {
            elements.push(parse_group_element(ctx.group(), text)?);
        }
        ctx.validate_support(&elements)?
    };
    let via_minimal = ctx.davenport(&support, &budget)?;
    let via_zero_sum_free = 1 + ctx.max_zero_sum_free_length(&support, &budget)?;
    let agree = via_minimal == via_zero_sum_free;
    println!(
        "{}",
        serde_json::json!({
            "group": ctx.group().to_string(),
            "support_size": support.len(),
            "davenport": via_minimal,
            "via_zero_sum_free": via_zero_sum_free,
            "agree": agree,
        })
    );
    Ok(if agree { 0 } else { 1 })
}

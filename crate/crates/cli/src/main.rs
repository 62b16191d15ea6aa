//! Command-line front end: certified enclosures, decay tables, chord
//! sequences, and the verification suites, in text, CSV, or JSON.
//!
//! Exit codes: 0 on success, 1 when a verification check fails or a bound
//! chain stays open, 2 on bad arguments or angles outside (0, pi/2).

mod format;
mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use halfangle::{parse_rational, pi_enclosure, FixedPoint, Rational, Rounding};
use num_bigint::BigInt;
use num_traits::Zero;
use report::{
    build_chord, build_decay, build_eval, build_verify, ChordReport, DecayReport, EvalReport,
    SuiteKind, VerifyReport,
};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "halfangle",
    version,
    about = "Certified sin/cos enclosures from half-angle doubling, plus verification suites"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Unit {
    Rad,
    Deg,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Identities,
    Exact,
    Recursion,
    All,
}

#[derive(Args)]
struct Precision {
    /// Target precision of the enclosures, in bits
    #[arg(long, default_value_t = 128, value_parser = clap::value_parser!(u32).range(8..=4096))]
    bits: u32,
    /// Significant digits for printed interval endpoints
    #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u32).range(1..=120))]
    digits: u32,
}

#[derive(Args)]
struct EvalArgs {
    /// Angle as an exact rational: "1", "3/7", "0.25", "1.5e-2"
    #[arg(long)]
    theta: String,
    /// Interpret theta as radians (exact) or degrees (evaluated at a dyadic
    /// approximation of the radian value)
    #[arg(long, value_enum, default_value_t = Unit::Rad)]
    unit: Unit,
    #[command(flatten)]
    precision: Precision,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Args)]
struct DecayArgs {
    /// Angle in radians, as an exact rational
    #[arg(long)]
    theta: String,
    /// Number of halving levels to tabulate
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=64))]
    n: u32,
    #[command(flatten)]
    precision: Precision,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Args)]
struct ChordArgs {
    /// Angle in radians, as an exact rational
    #[arg(long)]
    theta: String,
    /// Deepest halving level
    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=128))]
    n: u32,
    #[command(flatten)]
    precision: Precision,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which checks to run
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    /// Angle for the numeric identity checks, in radians
    #[arg(long, default_value = "1")]
    theta: String,
    /// Bound-chain depth for the numeric identity checks
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..=64))]
    n: u32,
    /// Seed for the randomized recursion checks
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    precision: Precision,
    #[arg(long, value_enum, default_value_t = VerifyFormat::Text)]
    format: VerifyFormat,
}

#[derive(Subcommand)]
enum Command {
    /// Enclose sin, cos, and the Pythagorean defect at one angle
    Eval(EvalArgs),
    /// Tabulate the defect products against their closed-form bounds
    DecayTable(DecayArgs),
    /// Follow the scaled chords 2^n sin(theta/2^n) up toward the arc length
    Chord(ChordArgs),
    /// Run the verification suites
    Verify(VerifyArgs),
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Eval(args) => run_eval(args),
        Command::DecayTable(args) => run_decay(args),
        Command::Chord(args) => run_chord(args),
        Command::Verify(args) => run_verify(args),
    }
}

/// Resolves the angle the kernel will actually evaluate. Radians pass
/// through exactly; degrees are mapped through an enclosure of pi onto a
/// dyadic rational within 2^-(bits+10) of the true radian value, which is
/// echoed back in the report metadata.
fn resolve_angle(
    theta: &str,
    unit: Unit,
    bits: u32,
) -> Result<(Rational, Option<FixedPoint>), String> {
    let raw = parse_rational(theta)?;
    match unit {
        Unit::Rad => Ok((raw, None)),
        Unit::Deg => {
            let ninety = Rational::from_integer(BigInt::from(90));
            if raw <= Rational::zero() || raw >= ninety {
                return Err(format!("degrees must lie strictly between 0 and 90, got {raw}"));
            }
            let pi = pi_enclosure(bits + 16);
            let midpoint = (pi.lo().to_rational() + pi.hi().to_rational())
                / Rational::from_integer(BigInt::from(2));
            let radians = midpoint * &raw / Rational::from_integer(BigInt::from(180));
            let dyadic = FixedPoint::from_rational(&radians, bits + 16, Rounding::Down);
            Ok((dyadic.to_rational(), Some(dyadic)))
        }
    }
}

fn run_eval(args: EvalArgs) -> Result<bool, String> {
    let (effective, dyadic) = resolve_angle(&args.theta, args.unit, args.precision.bits)?;
    let unit = match args.unit {
        Unit::Rad => "rad",
        Unit::Deg => "deg",
    };
    let report = build_eval(
        &args.theta,
        unit,
        &effective,
        dyadic.as_ref(),
        args.precision.bits,
        args.precision.digits,
    )
    .map_err(|e| e.to_string())?;
    match args.format {
        OutputFormat::Text => emit(&render_eval_text(&report)),
        OutputFormat::Csv => emit(&render_eval_csv(&report)),
        OutputFormat::Json => emit(&render_json(&report)),
    }
    Ok(true)
}

fn run_decay(args: DecayArgs) -> Result<bool, String> {
    let theta = parse_rational(&args.theta)?;
    let report = build_decay(
        &args.theta,
        &theta,
        args.n,
        args.precision.bits,
        args.precision.digits,
    )
    .map_err(|e| e.to_string())?;
    match args.format {
        OutputFormat::Text => emit(&render_decay_text(&report)),
        OutputFormat::Csv => emit(&render_decay_csv(&report)),
        OutputFormat::Json => emit(&render_json(&report)),
    }
    Ok(report.rows.iter().all(|row| row.chain_holds))
}

fn run_chord(args: ChordArgs) -> Result<bool, String> {
    let theta = parse_rational(&args.theta)?;
    let report = build_chord(
        &args.theta,
        &theta,
        args.n,
        args.precision.bits,
        args.precision.digits,
    )
    .map_err(|e| e.to_string())?;
    match args.format {
        OutputFormat::Text => emit(&render_chord_text(&report)),
        OutputFormat::Csv => emit(&render_chord_csv(&report)),
        OutputFormat::Json => emit(&render_json(&report)),
    }
    let monotone = report
        .rows
        .iter()
        .all(|row| row.below_arc && row.increased.unwrap_or(true));
    Ok(monotone)
}

fn run_verify(args: VerifyArgs) -> Result<bool, String> {
    let theta = parse_rational(&args.theta)?;
    let (kind, label) = match args.suite {
        Suite::Identities => (SuiteKind::Identities, "identities"),
        Suite::Exact => (SuiteKind::Exact, "exact"),
        Suite::Recursion => (SuiteKind::Recursion, "recursion"),
        Suite::All => (SuiteKind::All, "all"),
    };
    let report = build_verify(
        kind,
        label,
        &args.theta,
        &theta,
        args.precision.bits,
        args.n,
        args.seed,
    )
    .map_err(|e| e.to_string())?;
    match args.format {
        VerifyFormat::Text => emit(&render_verify_text(&report)),
        VerifyFormat::Json => emit(&render_json(&report)),
    }
    Ok(report.pass)
}

fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write output: {e}");
        std::process::exit(2);
    }
}

fn render_json<T: serde::Serialize>(report: &T) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    text
}

fn render_eval_text(report: &EvalReport) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    writeln!(out, "theta  = {} ({})", report.angle.input, report.angle.unit).unwrap();
    if let Some(dyadic) = &report.metadata.dyadic_theta {
        writeln!(
            out,
            "evaluated at dyadic radians {} / 2^{}",
            dyadic.mantissa, dyadic.frac_bits
        )
        .unwrap();
    }
    writeln!(
        out,
        "plan   = {} bits, depth {}, working grid 2^-{}",
        report.metadata.bits, report.metadata.depth, report.metadata.working_bits
    )
    .unwrap();
    writeln!(
        out,
        "sin    in [{}, {}]  (width <= {})",
        report.enclosures.sin.lo, report.enclosures.sin.hi, report.enclosures.sin.width
    )
    .unwrap();
    writeln!(
        out,
        "cos    in [{}, {}]  (width <= {})",
        report.enclosures.cos.lo, report.enclosures.cos.hi, report.enclosures.cos.width
    )
    .unwrap();
    writeln!(
        out,
        "defect in [{}, {}]  (width <= {})",
        report.defect.lo, report.defect.hi, report.defect.width
    )
    .unwrap();
    out
}

fn render_eval_csv(report: &EvalReport) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    writeln!(out, "quantity,lo,hi,width").unwrap();
    writeln!(
        out,
        "sin,{},{},{}",
        report.enclosures.sin.lo, report.enclosures.sin.hi, report.enclosures.sin.width
    )
    .unwrap();
    writeln!(
        out,
        "cos,{},{},{}",
        report.enclosures.cos.lo, report.enclosures.cos.hi, report.enclosures.cos.width
    )
    .unwrap();
    writeln!(
        out,
        "defect,{},{},{}",
        report.defect.lo, report.defect.hi, report.defect.width
    )
    .unwrap();
    out
}

fn render_decay_text(report: &DecayReport) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    writeln!(
        out,
        "defect products for theta = {} at {} bits",
        report.theta, report.bits
    )
    .unwrap();
    for row in &report.rows {
        let chain = if row.chain_holds { "holds" } else { "OPEN" };
        writeln!(
            out,
            "n={:<2} half_angle={} product=[{}, {}] intermediate={} final={} chain={}",
            row.n,
            row.half_angle,
            row.product_lo,
            row.product_hi,
            row.intermediate_bound,
            row.final_bound,
            chain
        )
        .unwrap();
    }
    out
}

fn render_decay_csv(report: &DecayReport) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    writeln!(
        out,
        "n,half_angle,sin_lo,sin_hi,product_lo,product_hi,intermediate_bound,final_bound,chain_holds"
    )
    .unwrap();
    for row in &report.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            row.n,
            row.half_angle,
            row.sin_lo,
            row.sin_hi,
            row.product_lo,
            row.product_hi,
            row.intermediate_bound,
            row.final_bound,
            row.chain_holds
        )
        .unwrap();
    }
    out
}

fn render_chord_text(report: &ChordReport) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    writeln!(
        out,
        "scaled chords for theta = {} at {} bits",
        report.theta, report.bits
    )
    .unwrap();
    for row in &report.rows {
        let grew = match row.increased {
            None => "-",
            Some(true) => "yes",
            Some(false) => "NO",
        };
        let arc = if row.below_arc { "yes" } else { "NO" };
        writeln!(
            out,
            "n={:<3} half_angle={} scaled=[{}, {}] below_arc={} increased={}",
            row.n, row.half_angle, row.scaled_lo, row.scaled_hi, arc, grew
        )
        .unwrap();
    }
    out
}

fn render_chord_csv(report: &ChordReport) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    writeln!(out, "n,half_angle,scaled_lo,scaled_hi,below_arc,increased").unwrap();
    for row in &report.rows {
        let grew = match row.increased {
            None => String::new(),
            Some(flag) => flag.to_string(),
        };
        writeln!(
            out,
            "{},{},{},{},{},{}",
            row.n, row.half_angle, row.scaled_lo, row.scaled_hi, row.below_arc, grew
        )
        .unwrap();
    }
    out
}

fn render_verify_text(report: &VerifyReport) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    for check in &report.checks {
        let tag = if check.pass { "PASS" } else { "FAIL" };
        writeln!(out, "{tag} {}", check.name).unwrap();
    }
    let failed = report.checks.iter().filter(|c| !c.pass).count();
    if report.pass {
        writeln!(
            out,
            "suite {}: {} checks, all passed",
            report.suite,
            report.checks.len()
        )
        .unwrap();
    } else {
        writeln!(
            out,
            "suite {}: {} of {} checks FAILED",
            report.suite,
            failed,
            report.checks.len()
        )
        .unwrap();
    }
    out
}

//! Report structs shared by the text, CSV, and JSON renderers, and the
//! builders that fill them from the library. All numeric fields are strings
//! produced by the formatters in `format`, so every renderer shows the same
//! digits and a JSON report round-trips losslessly.

use crate::format::{directed_decimal, exact_bound};
use halfangle::kernel::DoublingPlan;
use halfangle::qfield::exact_identity_suite;
use halfangle::verify::{
    decay_table, defect, defect_after_doubling, defect_recursion_residual,
    half_angle_sq_diff_residual, pair_defect, subtraction_residuals,
};
use halfangle::{
    cos_addition_residual, isosceles_split_residuals, sin_cos, Error, FixedPoint, Interval,
    Rational,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
pub struct Span {
    pub lo: String,
    pub hi: String,
    pub width: String,
}

impl Span {
    pub fn from_interval(enc: &Interval, digits: u32) -> Span {
        Span {
            lo: directed_decimal(&enc.lo().to_rational(), digits, false),
            hi: directed_decimal(&enc.hi().to_rational(), digits, true),
            width: directed_decimal(&enc.width().to_rational(), 3, true),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AngleInfo {
    pub input: String,
    pub unit: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct DyadicTheta {
    pub mantissa: String,
    pub frac_bits: u32,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Metadata {
    pub bits: u32,
    pub depth: u32,
    pub working_bits: u32,
    pub dyadic_theta: Option<DyadicTheta>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Enclosures {
    pub sin: Span,
    pub cos: Span,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct EvalReport {
    pub angle: AngleInfo,
    pub enclosures: Enclosures,
    pub defect: Span,
    pub metadata: Metadata,
}

pub fn build_eval(
    input: &str,
    unit: &str,
    effective: &Rational,
    dyadic: Option<&FixedPoint>,
    bits: u32,
    digits: u32,
) -> Result<EvalReport, Error> {
    let plan = DoublingPlan::new(effective, bits)?;
    let pair = sin_cos(effective, bits)?;
    let defect_enc = pair_defect(&pair);
    Ok(EvalReport {
        angle: AngleInfo {
            input: input.to_string(),
            unit: unit.to_string(),
        },
        enclosures: Enclosures {
            sin: Span::from_interval(&pair.sin_enc, digits),
            cos: Span::from_interval(&pair.cos_enc, digits),
        },
        defect: Span::from_interval(&defect_enc, digits),
        metadata: Metadata {
            bits,
            depth: plan.depth,
            working_bits: plan.working_frac_bits,
            dyadic_theta: dyadic.map(|fp| DyadicTheta {
                mantissa: fp.mantissa().to_string(),
                frac_bits: fp.frac_bits(),
            }),
        },
    })
}

#[derive(Debug, Serialize, Deserialize)]
pub struct DecayRowOut {
    pub n: u32,
    pub half_angle: String,
    pub sin_lo: String,
    pub sin_hi: String,
    pub product_lo: String,
    pub product_hi: String,
    pub intermediate_bound: String,
    pub final_bound: String,
    pub chain_holds: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct DecayReport {
    pub theta: String,
    pub bits: u32,
    pub rows: Vec<DecayRowOut>,
}

pub fn build_decay(
    input: &str,
    theta: &Rational,
    n_max: u32,
    bits: u32,
    digits: u32,
) -> Result<DecayReport, Error> {
    let rows = decay_table(theta, n_max, bits)?
        .into_iter()
        .map(|row| DecayRowOut {
            n: row.n,
            half_angle: row.half_angle.to_string(),
            sin_lo: directed_decimal(&row.sin_enc.lo().to_rational(), digits, false),
            sin_hi: directed_decimal(&row.sin_enc.hi().to_rational(), digits, true),
            product_lo: directed_decimal(&row.product.lo().to_rational(), digits, false),
            product_hi: directed_decimal(&row.product.hi().to_rational(), digits, true),
            intermediate_bound: exact_bound(&row.intermediate_bound),
            final_bound: exact_bound(&row.final_bound),
            chain_holds: row.chain_holds,
        })
        .collect();
    Ok(DecayReport {
        theta: input.to_string(),
        bits,
        rows,
    })
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ChordRowOut {
    pub n: u32,
    pub half_angle: String,
    pub scaled_lo: String,
    pub scaled_hi: String,
    pub below_arc: bool,
    pub increased: Option<bool>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ChordReport {
    pub theta: String,
    pub bits: u32,
    pub rows: Vec<ChordRowOut>,
}

/// Scaled chords 2^n sin(theta/2^n) for n = 0..=n_max: each row certifies
/// that the scaled chord still sits below the arc length and that it grew
/// over the previous level.
pub fn build_chord(
    input: &str,
    theta: &Rational,
    n_max: u32,
    bits: u32,
    digits: u32,
) -> Result<ChordReport, Error> {
    let mut rows = Vec::with_capacity(n_max as usize + 1);
    let mut previous: Option<Interval> = None;
    for n in 0..=n_max {
        let half_angle = theta / Rational::from_integer(BigInt::one() << n as usize);
        let scaled = sin_cos(&half_angle, bits)?.sin_enc.scale2(n as i64);
        let below_arc = scaled.hi().to_rational() < *theta;
        let increased = previous
            .as_ref()
            .map(|prev| scaled.lo().to_rational() > prev.hi().to_rational());
        rows.push(ChordRowOut {
            n,
            half_angle: half_angle.to_string(),
            scaled_lo: directed_decimal(&scaled.lo().to_rational(), digits, false),
            scaled_hi: directed_decimal(&scaled.hi().to_rational(), digits, true),
            below_arc,
            increased,
        });
        previous = Some(scaled);
    }
    Ok(ChordReport {
        theta: input.to_string(),
        bits,
        rows,
    })
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CheckOut {
    pub name: String,
    pub pass: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub theta: String,
    pub bits: u32,
    pub seed: u64,
    pub checks: Vec<CheckOut>,
    pub pass: bool,
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.gen_range(-1_000_000i64..=1_000_000);
    let den = rng.gen_range(1i64..=1_000_000);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn exact_checks() -> Vec<CheckOut> {
    exact_identity_suite()
        .checks
        .into_iter()
        .map(|c| CheckOut {
            name: format!("exact_{}", c.name),
            pass: c.pass,
        })
        .collect()
}

fn recursion_checks(seed: u64) -> Vec<CheckOut> {
    let mut checks = Vec::new();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let third = Rational::new(BigInt::one(), BigInt::from(3));
    let worked = Rational::new(BigInt::from(-23), BigInt::from(36));
    checks.push(CheckOut {
        name: "recursion_worked_example".to_string(),
        pass: defect_after_doubling(&half, &third) == worked
            && defect_recursion_residual(&half, &third).is_zero(),
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let residuals_vanish = (0..1000).all(|_| {
        let s = random_rational(&mut rng);
        let c = random_rational(&mut rng);
        defect_recursion_residual(&s, &c).is_zero()
    });
    checks.push(CheckOut {
        name: "recursion_residual_zero_1000_samples".to_string(),
        pass: residuals_vanish,
    });
    let contraction_matches = (0..100).all(|_| {
        let s = random_rational(&mut rng);
        let c = random_rational(&mut rng);
        let two = Rational::from_integer(BigInt::from(2));
        let four = Rational::from_integer(BigInt::from(4));
        let doubled = defect(&(&two * (&s * &c)), &(Rational::one() - &two * (&s * &s)));
        doubled == four * (&s * &s) * defect(&s, &c)
    });
    checks.push(CheckOut {
        name: "recursion_contraction_factor_100_samples".to_string(),
        pass: contraction_matches,
    });
    checks
}

fn identity_checks(theta: &Rational, bits: u32, n_max: u32) -> Result<Vec<CheckOut>, Error> {
    let mut checks = Vec::new();
    let mut push = |name: &str, pass: bool| {
        checks.push(CheckOut {
            name: name.to_string(),
            pass,
        })
    };

    let pair = sin_cos(theta, bits)?;
    let defect_enc = pair_defect(&pair);
    push("pythagoras_defect_encloses_zero", defect_enc.contains_zero());
    let budget = FixedPoint::power_of_two(-(bits as i64) + 8, defect_enc.frac_bits()).to_rational();
    push(
        "pythagoras_defect_width_within_budget",
        defect_enc.width().to_rational() <= budget,
    );

    let half_residual = half_angle_sq_diff_residual(theta, bits)?;
    push("half_angle_square_difference", half_residual.contains_zero());

    let (versine, sine) = isosceles_split_residuals(theta, bits)?;
    push("isosceles_split_versine", versine.contains_zero());
    push("isosceles_split_sine", sine.contains_zero());

    let third = theta / Rational::from_integer(BigInt::from(3));
    let rest = theta - &third;
    let addition = cos_addition_residual(&rest, &third, bits)?;
    push("cos_addition", addition.contains_zero());
    let (cos_sub, sin_sub) = subtraction_residuals(theta, &third, bits)?;
    push("cos_subtraction", cos_sub.contains_zero());
    push("sin_subtraction", sin_sub.contains_zero());

    let rows = decay_table(theta, n_max, bits)?;
    push(
        "bound_chain_all_levels",
        rows.iter().all(|row| row.chain_holds),
    );
    Ok(checks)
}

pub enum SuiteKind {
    Identities,
    Exact,
    Recursion,
    All,
}

pub fn build_verify(
    kind: SuiteKind,
    suite_label: &str,
    input: &str,
    theta: &Rational,
    bits: u32,
    n_max: u32,
    seed: u64,
) -> Result<VerifyReport, Error> {
    let mut checks = Vec::new();
    match kind {
        SuiteKind::Exact => checks.extend(exact_checks()),
        SuiteKind::Recursion => checks.extend(recursion_checks(seed)),
        SuiteKind::Identities => checks.extend(identity_checks(theta, bits, n_max)?),
        SuiteKind::All => {
            checks.extend(exact_checks());
            checks.extend(recursion_checks(seed));
            checks.extend(identity_checks(theta, bits, n_max)?);
        }
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(VerifyReport {
        suite: suite_label.to_string(),
        theta: input.to_string(),
        bits,
        seed,
        checks,
        pass,
    })
}

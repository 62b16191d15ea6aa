//! Independent reference enclosures for sin, cos and pi.
//!
//! Everything here is deliberately disjoint from the kernel's machinery: the
//! enclosures come from alternating Taylor series evaluated in exact rational
//! arithmetic, with the true value bracketed between two consecutive partial
//! sums (the classic alternating-series remainder bound, valid because the
//! term magnitudes decrease on the whole domain). The kernel is tested
//! against this module; its production code path touches it only for the pi
//! enclosure used in domain checks and degree conversion.

use crate::error::Error;
use crate::fixed::Rational;
use crate::interval::Interval;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Term budget for the series evaluations.
#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    pub precision_bits: u32,
    /// Hard cap on series terms; generous for the supported domain, present
    /// so a miscalled series fails loudly instead of spinning.
    pub max_terms: u32,
}

impl OracleConfig {
    pub fn with_precision(precision_bits: u32) -> OracleConfig {
        OracleConfig {
            precision_bits,
            max_terms: 128 + precision_bits / 2,
        }
    }
}

fn pow2_inv(bits: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << (bits as usize))
}

fn check_domain(x: &Rational) -> Result<(), Error> {
    if x <= &Rational::zero() || x >= &Rational::from_integer(BigInt::from(2)) {
        return Err(Error::AngleOutOfDomain {
            angle: x.to_string(),
            domain: "(0, 2)",
        });
    }
    Ok(())
}

/// Sums the alternating series with initial term `t0` and term ratio
/// t_{k+1} = t_k * -x^2 / ((base+2k+1)(base+2k+2)), bracketing the limit
/// between consecutive partial sums once the next term is below the
/// threshold. `base` is 1 for sin (terms x, x^3/3!, ...) and 0 for cos.
fn alternating_trig_sum(
    x_sq: &Rational,
    t0: Rational,
    base: u64,
    cfg: &OracleConfig,
) -> Result<(Rational, Rational), Error> {
    let threshold = pow2_inv(cfg.precision_bits + 2);
    let mut sum = t0.clone();
    let mut term = t0;
    let mut k: u64 = 0;
    loop {
        let d1 = BigInt::from(base + 2 * k + 1);
        let d2 = BigInt::from(base + 2 * k + 2);
        term = -term * x_sq / (Rational::from_integer(d1 * d2));
        k += 1;
        if k >= 2 && term.abs() < threshold {
            let with_tail = &sum + &term;
            return Ok(if with_tail < sum { (with_tail, sum) } else { (sum, with_tail) });
        }
        if k as u32 >= cfg.max_terms {
            return Err(Error::OracleBudgetExceeded {
                max_terms: cfg.max_terms,
                precision_bits: cfg.precision_bits,
            });
        }
        sum += &term;
    }
}

/// Enclosure of sin x for rational x in (0, 2), width at most
/// 2^-precision_bits.
pub fn oracle_sin(x: &Rational, precision_bits: u32) -> Result<Interval, Error> {
    oracle_sin_with(x, &OracleConfig::with_precision(precision_bits))
}

pub fn oracle_sin_with(x: &Rational, cfg: &OracleConfig) -> Result<Interval, Error> {
    check_domain(x)?;
    let x_sq = x * x;
    let (lo, hi) = alternating_trig_sum(&x_sq, x.clone(), 1, cfg)?;
    Ok(Interval::from_rational_bounds(&lo, &hi, cfg.precision_bits + 2))
}

/// Enclosure of cos x for rational x in (0, 2), width at most
/// 2^-precision_bits.
pub fn oracle_cos(x: &Rational, precision_bits: u32) -> Result<Interval, Error> {
    oracle_cos_with(x, &OracleConfig::with_precision(precision_bits))
}

pub fn oracle_cos_with(x: &Rational, cfg: &OracleConfig) -> Result<Interval, Error> {
    check_domain(x)?;
    let x_sq = x * x;
    let (lo, hi) = alternating_trig_sum(&x_sq, Rational::one(), 0, cfg)?;
    Ok(Interval::from_rational_bounds(&lo, &hi, cfg.precision_bits + 2))
}

/// Brackets arctan(1/m) between consecutive partial sums of its Gregory
/// series; every term magnitude shrinks by more than m^2, so the remainder
/// bound applies from the first term on.
fn arctan_inv_bracket(m: u64, threshold: &Rational) -> (Rational, Rational) {
    let m_sq = BigInt::from(m * m);
    let mut power = BigInt::from(m);
    let mut sum = Rational::new(BigInt::one(), power.clone());
    let mut k: u64 = 0;
    loop {
        power *= &m_sq;
        k += 1;
        let mag = Rational::new(BigInt::one(), BigInt::from(2 * k + 1) * &power);
        let term = if k % 2 == 1 { -mag.clone() } else { mag.clone() };
        if mag < *threshold {
            let with_tail = &sum + &term;
            return if with_tail < sum { (with_tail, sum) } else { (sum, with_tail) };
        }
        sum += term;
    }
}

/// Certified enclosure of pi, width at most 2^-precision_bits, from
/// 16 arctan(1/5) - 4 arctan(1/239). Enclosures at higher precision nest
/// inside those at lower precision.
pub fn pi_enclosure(precision_bits: u32) -> Interval {
    let threshold = pow2_inv(precision_bits + 8);
    let (a_lo, a_hi) = arctan_inv_bracket(5, &threshold);
    let (b_lo, b_hi) = arctan_inv_bracket(239, &threshold);
    let sixteen = Rational::from_integer(BigInt::from(16));
    let four = Rational::from_integer(BigInt::from(4));
    let lo = &sixteen * &a_lo - &four * &b_hi;
    let hi = &sixteen * &a_hi - &four * &b_lo;
    Interval::from_rational_bounds(&lo, &hi, precision_bits + 2)
}

//! Deterministic decimal rendering of exact rationals.
//!
//! Interval endpoints are printed with directed rounding so a printed
//! interval still encloses the certified one; exact bounds are printed in
//! full when their decimal expansion terminates, and as a fraction when it
//! does not. Everything round-trips through `parse_rational`.

use halfangle::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

fn pow10(k: u32) -> BigInt {
    BigInt::from(10u32).pow(k)
}

/// Compares |v| with 10^e.
fn cmp_magnitude_pow10(mag: &Rational, e: i64) -> Ordering {
    let lhs = if e < 0 {
        mag.numer() * pow10((-e) as u32)
    } else {
        mag.numer().clone()
    };
    let rhs = if e > 0 {
        mag.denom() * pow10(e as u32)
    } else {
        mag.denom().clone()
    };
    lhs.cmp(&rhs)
}

/// floor(log10(|v|)) for nonzero v.
fn floor_log10(mag: &Rational) -> i64 {
    let spread = mag.numer().bits() as i64 - mag.denom().bits() as i64;
    let mut e = (spread as f64 * std::f64::consts::LOG10_2) as i64 - 2;
    while cmp_magnitude_pow10(mag, e + 1) != Ordering::Less {
        e += 1;
    }
    while cmp_magnitude_pow10(mag, e) == Ordering::Less {
        e -= 1;
    }
    e
}

fn format_scientific(negative: bool, digit_str: &str, e10: i64) -> String {
    let trimmed = digit_str.trim_end_matches('0');
    let trimmed = if trimmed.is_empty() { "0" } else { trimmed };
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(&trimmed[..1]);
    if trimmed.len() > 1 {
        out.push('.');
        out.push_str(&trimmed[1..]);
    }
    out.push('e');
    out.push_str(&e10.to_string());
    out
}

/// Scientific decimal with `digits` significant digits, rounded toward
/// minus infinity (`round_up = false`) or plus infinity (`round_up = true`),
/// so the printed number brackets the true one from the requested side.
pub fn directed_decimal(v: &Rational, digits: u32, round_up: bool) -> String {
    assert!(digits >= 1, "need at least one significant digit");
    if v.is_zero() {
        return "0".to_string();
    }
    let negative = v.is_negative();
    let mag = v.abs();
    let mut e10 = floor_log10(&mag);
    let shift = digits as i64 - 1 - e10;
    let (num, den) = if shift >= 0 {
        (mag.numer() * pow10(shift as u32), mag.denom().clone())
    } else {
        (mag.numer().clone(), mag.denom() * pow10((-shift) as u32))
    };
    let ceil_magnitude = round_up != negative;
    let mut n = if ceil_magnitude {
        num.div_ceil(&den)
    } else {
        num.div_floor(&den)
    };
    if n == pow10(digits) {
        n /= BigInt::from(10u32);
        e10 += 1;
    }
    format_scientific(negative, &n.to_string(), e10)
}

/// Exact scientific form of a rational whose decimal expansion terminates
/// in at most `max_digits` significant digits; None otherwise.
pub fn exact_decimal(v: &Rational, max_digits: u32) -> Option<String> {
    if v.is_zero() {
        return Some("0".to_string());
    }
    let negative = v.is_negative();
    let mag = v.abs();
    let mut den = mag.denom().clone();
    let two = BigInt::from(2u32);
    let five = BigInt::from(5u32);
    let mut twos = 0u32;
    let mut fives = 0u32;
    while den.is_multiple_of(&two) {
        den /= &two;
        twos += 1;
    }
    while den.is_multiple_of(&five) {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return None;
    }
    let k = twos.max(fives);
    let n = mag.numer() * two.pow(k - twos) * five.pow(k - fives);
    let digit_str = n.to_string();
    let significant = digit_str.trim_end_matches('0').len().max(1);
    if significant as u32 > max_digits {
        return None;
    }
    let e10 = digit_str.len() as i64 - 1 - k as i64;
    Some(format_scientific(negative, &digit_str, e10))
}

/// Exact rendering of a bound: terminating decimal when reasonably short,
/// otherwise the fraction itself. Either form parses back to the same
/// rational.
pub fn exact_bound(v: &Rational) -> String {
    exact_decimal(v, 120).unwrap_or_else(|| v.to_string())
}

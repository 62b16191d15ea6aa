//! Arbitrary-precision binary fixed-point with directed rounding.
//!
//! A `FixedPoint` is a `BigInt` mantissa scaled by 2^-frac_bits. Addition and
//! subtraction are exact after rescaling both operands to the larger
//! frac_bits; rounding happens only when a rational is converted in or when a
//! product is brought back to a target width, and then only in the direction
//! the caller asked for. That discipline is what lets the interval layer
//! guarantee containment instead of merely estimating error.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Exact rational scalar used throughout the exact layer.
pub type Rational = BigRational;

/// Direction of the rounding performed when a value leaves the exact layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    /// Toward negative infinity.
    Down,
    /// Toward positive infinity.
    Up,
}

impl Rounding {
    /// The opposite direction, used when a negation flips an endpoint's role.
    pub fn flip(self) -> Rounding {
        match self {
            Rounding::Down => Rounding::Up,
            Rounding::Up => Rounding::Down,
        }
    }
}

/// A dyadic number mantissa * 2^-frac_bits.
#[derive(Debug, Clone)]
pub struct FixedPoint {
    mantissa: BigInt,
    frac_bits: u32,
}

/// Floor division of `x` by 2^k.
fn shr_floor(x: &BigInt, k: u32) -> BigInt {
    x >> (k as usize)
}

/// Ceiling division of `x` by 2^k.
fn shr_ceil(x: &BigInt, k: u32) -> BigInt {
    -((-x) >> (k as usize))
}

fn shr_directed(x: &BigInt, k: u32, mode: Rounding) -> BigInt {
    match mode {
        Rounding::Down => shr_floor(x, k),
        Rounding::Up => shr_ceil(x, k),
    }
}

impl FixedPoint {
    pub fn new(mantissa: BigInt, frac_bits: u32) -> FixedPoint {
        FixedPoint { mantissa, frac_bits }
    }

    pub fn zero(frac_bits: u32) -> FixedPoint {
        FixedPoint::new(BigInt::zero(), frac_bits)
    }

    pub fn one(frac_bits: u32) -> FixedPoint {
        FixedPoint::new(BigInt::one() << (frac_bits as usize), frac_bits)
    }

    /// 2^-frac_bits, the grid spacing at this width.
    pub fn ulp(frac_bits: u32) -> FixedPoint {
        FixedPoint::new(BigInt::one(), frac_bits)
    }

    /// 2^k at the given width. `k` may be negative as long as the grid can
    /// express it exactly (k >= -frac_bits).
    pub fn power_of_two(k: i64, frac_bits: u32) -> FixedPoint {
        let shift = k + frac_bits as i64;
        assert!(shift >= 0, "2^{k} is not representable with {frac_bits} fractional bits");
        FixedPoint::new(BigInt::one() << (shift as usize), frac_bits)
    }

    pub fn from_integer(n: i64, frac_bits: u32) -> FixedPoint {
        FixedPoint::new(BigInt::from(n) << (frac_bits as usize), frac_bits)
    }

    /// Nearest grid point in the requested direction. This is the only place a
    /// rational enters the dyadic world, so the rounding direction is explicit.
    pub fn from_rational(r: &Rational, frac_bits: u32, mode: Rounding) -> FixedPoint {
        let scaled_num = r.numer() << (frac_bits as usize);
        let mantissa = match mode {
            Rounding::Down => scaled_num.div_floor(r.denom()),
            Rounding::Up => scaled_num.div_ceil(r.denom()),
        };
        FixedPoint::new(mantissa, frac_bits)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn frac_bits(&self) -> u32 {
        self.frac_bits
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.mantissa.clone(), BigInt::one() << (self.frac_bits as usize))
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    /// Exact sum. The result carries the larger of the two widths.
    pub fn add(&self, other: &FixedPoint) -> FixedPoint {
        let f = self.frac_bits.max(other.frac_bits);
        let a = &self.mantissa << ((f - self.frac_bits) as usize);
        let b = &other.mantissa << ((f - other.frac_bits) as usize);
        FixedPoint::new(a + b, f)
    }

    /// Exact difference. The result carries the larger of the two widths.
    pub fn sub(&self, other: &FixedPoint) -> FixedPoint {
        let f = self.frac_bits.max(other.frac_bits);
        let a = &self.mantissa << ((f - self.frac_bits) as usize);
        let b = &other.mantissa << ((f - other.frac_bits) as usize);
        FixedPoint::new(a - b, f)
    }

    pub fn neg(&self) -> FixedPoint {
        FixedPoint::new(-&self.mantissa, self.frac_bits)
    }

    /// Product rounded in the given direction onto the `frac_bits` grid.
    pub fn mul(&self, other: &FixedPoint, frac_bits: u32, mode: Rounding) -> FixedPoint {
        let prod = &self.mantissa * &other.mantissa;
        let have = self.frac_bits as u64 + other.frac_bits as u64;
        let want = frac_bits as u64;
        let mantissa = if want >= have {
            prod << ((want - have) as usize)
        } else {
            shr_directed(&prod, (have - want) as u32, mode)
        };
        FixedPoint::new(mantissa, frac_bits)
    }

    /// Exact product, keeping the sum of the operand widths.
    pub fn mul_exact(&self, other: &FixedPoint) -> FixedPoint {
        FixedPoint::new(&self.mantissa * &other.mantissa, self.frac_bits + other.frac_bits)
    }

    /// Exact multiplication by 2^k. Negative `k` widens the grid so no bit is
    /// dropped.
    pub fn scale2(&self, k: i64) -> FixedPoint {
        if k >= 0 {
            FixedPoint::new(&self.mantissa << (k as usize), self.frac_bits)
        } else {
            FixedPoint::new(self.mantissa.clone(), self.frac_bits + (-k) as u32)
        }
    }

    /// Re-grid to `frac_bits`, rounding in the given direction when bits are
    /// dropped; exact when the grid gets finer.
    pub fn rescale(&self, frac_bits: u32, mode: Rounding) -> FixedPoint {
        if frac_bits >= self.frac_bits {
            FixedPoint::new(&self.mantissa << ((frac_bits - self.frac_bits) as usize), frac_bits)
        } else {
            FixedPoint::new(
                shr_directed(&self.mantissa, self.frac_bits - frac_bits, mode),
                frac_bits,
            )
        }
    }
}

impl PartialEq for FixedPoint {
    fn eq(&self, other: &FixedPoint) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for FixedPoint {}

impl PartialOrd for FixedPoint {
    fn partial_cmp(&self, other: &FixedPoint) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FixedPoint {
    /// Value comparison; the widths need not match.
    fn cmp(&self, other: &FixedPoint) -> Ordering {
        let f = self.frac_bits.max(other.frac_bits);
        let a = &self.mantissa << ((f - self.frac_bits) as usize);
        let b = &other.mantissa << ((f - other.frac_bits) as usize);
        a.cmp(&b)
    }
}

/// Parses "a/b", "12", "0.5" or "2.5e-3" into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty number".to_string());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let d: BigInt = den.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(Rational::new(n, d));
    }
    let (body, exp) = match s.split_once(['e', 'E']) {
        Some((b, e)) => {
            let exp: i32 = e.parse().map_err(|_| format!("bad exponent in {s:?}"))?;
            (b, exp)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if frac_part.contains(['+', '-']) {
        return Err(format!("malformed number {s:?}"));
    }
    let digits = format!("{int_part}{frac_part}");
    if digits.is_empty() || digits == "-" || digits == "+" {
        return Err(format!("malformed number {s:?}"));
    }
    let n: BigInt = digits.parse().map_err(|_| format!("malformed number {s:?}"))?;
    let scale = frac_part.len() as i32 - exp;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        Rational::new(n, ten.pow(scale as u32))
    } else {
        Rational::from_integer(n * ten.pow((-scale) as u32))
    })
}

//! The half-angle doubling kernel.
//!
//! `sin_cos` never touches a series for the target angle. It divides the
//! angle by 2^n until the remainder is at most 1/8, encloses sin and cos
//! there with two-sided cubic/quartic bounds, and then climbs back up with
//! the doubling step cos 2x = 1 - 2 sin^2 x, sin 2x = 2 sin x cos x in
//! outward-rounded interval arithmetic. Squaring roughly doubles an
//! interval's relative error, so each doubling level can double the width;
//! the depth and guard-bit policy in `DoublingPlan` spends enough extra
//! depth (which shrinks the base truncation error by 8x per level) and
//! enough extra working bits to absorb that amplification with margin.
//!
//! Angles are exact rationals in radians. A complemented pair keeps its
//! angle as pi/2 - theta symbolically; nothing numeric happens to the angle
//! until someone asks for an enclosure of it.

use crate::error::Error;
use crate::fixed::{FixedPoint, Rational};
use crate::interval::Interval;
use crate::oracle;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[cfg(test)]
fn rational_pow2_inv(bits: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << (bits as usize))
}

/// An exact angle of the form half_pi_units * (pi/2) + offset, closed under
/// doubling and complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Angle {
    half_pi_units: BigInt,
    offset: Rational,
}

impl Angle {
    pub fn from_radians(offset: Rational) -> Angle {
        Angle {
            half_pi_units: BigInt::zero(),
            offset,
        }
    }

    /// pi/2 - self.
    pub fn complement(&self) -> Angle {
        Angle {
            half_pi_units: BigInt::one() - &self.half_pi_units,
            offset: -self.offset.clone(),
        }
    }

    pub fn double(&self) -> Angle {
        Angle {
            half_pi_units: &self.half_pi_units * 2,
            offset: &self.offset * Rational::from_integer(BigInt::from(2)),
        }
    }

    /// The exact rational value, when no pi/2 term is present.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.half_pi_units.is_zero() {
            Some(&self.offset)
        } else {
            None
        }
    }

    /// Certified enclosure of the angle's radian value.
    pub fn enclosure(&self, frac_bits: u32) -> Interval {
        if self.half_pi_units.is_zero() {
            return Interval::from_rational(&self.offset, frac_bits);
        }
        let half_pi = oracle::pi_enclosure(frac_bits + 4).scale2(-1);
        let units = Interval::point(FixedPoint::new(self.half_pi_units.clone(), 0));
        let offset = Interval::from_rational(&self.offset, frac_bits + 4);
        units.mul_exact(&half_pi).add(&offset).rescale(frac_bits)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.half_pi_units.is_zero() {
            write!(f, "{}", self.offset)
        } else if self.half_pi_units.is_one() && self.offset.is_negative() {
            write!(f, "pi/2 - {}", -self.offset.clone())
        } else {
            write!(f, "{}*pi/2 + {}", self.half_pi_units, self.offset)
        }
    }
}

/// Certified enclosures of sin and cos at one angle, all on one grid.
#[derive(Debug, Clone)]
pub struct AnglePair {
    pub theta: Angle,
    pub sin_enc: Interval,
    pub cos_enc: Interval,
}

/// Depth and working width for one `sin_cos` evaluation.
///
/// depth n is the larger of (a) the levels needed to drag theta below 1/8
/// and (b) ceil(precision_bits/2) + 2, so the base truncation error
/// O((theta/2^n)^3) lands below the target even after the doubling chain
/// amplifies it by about 2^n. working_frac_bits adds 2n + 8 guard bits to
/// absorb per-level outward rounding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DoublingPlan {
    pub precision_bits: u32,
    pub depth: u32,
    pub working_frac_bits: u32,
}

impl DoublingPlan {
    pub fn new(theta: &Rational, precision_bits: u32) -> Result<DoublingPlan, Error> {
        if theta <= &Rational::zero() {
            return Err(Error::AngleOutOfDomain {
                angle: theta.to_string(),
                domain: "(0, pi/2)",
            });
        }
        let eighth = Rational::new(BigInt::one(), BigInt::from(8));
        let mut shrink = 0u32;
        let mut t = theta.clone();
        while t > eighth {
            t /= Rational::from_integer(BigInt::from(2));
            shrink += 1;
        }
        let depth = shrink.max(precision_bits.div_ceil(2) + 2);
        Ok(DoublingPlan {
            precision_bits,
            depth,
            working_frac_bits: precision_bits + 2 * depth + 8,
        })
    }
}

/// Certifies 0 < theta < pi/2 against the oracle's pi enclosure, widening
/// the enclosure until the comparison is unambiguous.
fn check_open_quadrant(theta: &Rational) -> Result<(), Error> {
    let reject = || Error::AngleOutOfDomain {
        angle: theta.to_string(),
        domain: "(0, pi/2)",
    };
    if theta <= &Rational::zero() {
        return Err(reject());
    }
    let mut bits = 64u32;
    loop {
        let half_pi = oracle::pi_enclosure(bits).scale2(-1);
        if *theta < half_pi.lo().to_rational() {
            return Ok(());
        }
        if *theta >= half_pi.hi().to_rational() {
            return Err(reject());
        }
        if bits >= 1 << 16 {
            // a rational this close to pi/2 has astronomically large terms;
            // refuse it rather than search for more pi digits
            return Err(reject());
        }
        bits *= 2;
    }
}

/// Two-sided polynomial enclosures at the bottom of the doubling chain:
/// sin x in [x - x^3/6, x] and cos x in [1 - x^2/2, 1 - x^2/2 + x^4/24],
/// valid for 0 < x <= 1/8 because both series alternate with decreasing
/// terms there.
pub fn base_enclosure(x: &Rational, frac_bits: u32) -> Result<AnglePair, Error> {
    let eighth = Rational::new(BigInt::one(), BigInt::from(8));
    if x <= &Rational::zero() || x > &eighth {
        return Err(Error::AngleOutOfDomain {
            angle: x.to_string(),
            domain: "(0, 1/8]",
        });
    }
    let x_sq = x * x;
    let x_cubed = &x_sq * x;
    let sin_lo = x - &x_cubed / Rational::from_integer(BigInt::from(6));
    let cos_lo = Rational::one() - &x_sq / Rational::from_integer(BigInt::from(2));
    let cos_hi = &cos_lo + &x_sq * &x_sq / Rational::from_integer(BigInt::from(24));
    Ok(AnglePair {
        theta: Angle::from_radians(x.clone()),
        sin_enc: Interval::from_rational_bounds(&sin_lo, x, frac_bits),
        cos_enc: Interval::from_rational_bounds(&cos_lo, &cos_hi, frac_bits),
    })
}

/// One doubling level: cos 2x = 1 - 2 sin^2 x, sin 2x = 2 sin x cos x.
/// Works on any sound pair; the angle is doubled symbolically.
pub fn double_step(p: &AnglePair) -> AnglePair {
    let cos_enc = p.sin_enc.sqr().scale2(1).one_minus();
    let sin_enc = p.sin_enc.mul(&p.cos_enc).scale2(1);
    AnglePair {
        theta: p.theta.double(),
        sin_enc,
        cos_enc,
    }
}

/// Certified enclosures of sin theta and cos theta for rational theta in the
/// open interval (0, pi/2), each of width at most 2^-precision_bits.
pub fn sin_cos(theta: &Rational, precision_bits: u32) -> Result<AnglePair, Error> {
    check_open_quadrant(theta)?;
    let plan = DoublingPlan::new(theta, precision_bits)?;
    let base_angle = theta / Rational::from_integer(BigInt::one() << (plan.depth as usize));
    let mut pair = base_enclosure(&base_angle, plan.working_frac_bits)?;
    for _ in 0..plan.depth {
        pair = double_step(&pair);
    }
    // sin and cos both lie in (0, 1) on the open quadrant (a right triangle's
    // leg is shorter than its hypotenuse), so the unit clamp only tightens
    let pair = AnglePair {
        theta: pair.theta,
        sin_enc: pair.sin_enc.clamp_unit(),
        cos_enc: pair.cos_enc.clamp_unit(),
    };
    let budget = FixedPoint::power_of_two(-(precision_bits as i64), plan.working_frac_bits);
    if pair.sin_enc.width() > budget || pair.cos_enc.width() > budget {
        return Err(Error::PrecisionNotReached {
            precision_bits,
            depth: plan.depth,
            working_frac_bits: plan.working_frac_bits,
        });
    }
    Ok(pair)
}

/// The complementary pair: sin(pi/2 - theta) = cos theta and vice versa.
/// Enclosures are swapped bit for bit; the angle stays symbolic.
pub fn complement(p: &AnglePair) -> AnglePair {
    AnglePair {
        theta: p.theta.complement(),
        sin_enc: p.cos_enc.clone(),
        cos_enc: p.sin_enc.clone(),
    }
}

/// Enclosure of the base of the isosceles triangle with unit legs and apex
/// angle theta: 2 sin(theta/2).
pub fn chord_length(theta: &Rational, precision_bits: u32) -> Result<Interval, Error> {
    check_open_quadrant(theta)?;
    let half = theta / Rational::from_integer(BigInt::from(2));
    Ok(sin_cos(&half, precision_bits)?.sin_enc.scale2(1))
}

/// Residuals of the two relations read off the isosceles triangle split by
/// its apex altitude, with the base angle written as the complement of
/// theta/2:
///
///   1 - cos theta - 2 sin(theta/2) cos(pi/2 - theta/2)
///   sin theta     - 2 sin(theta/2) sin(pi/2 - theta/2)
///
/// Both must enclose zero for every theta in the domain.
pub fn isosceles_split_residuals(
    theta: &Rational,
    precision_bits: u32,
) -> Result<(Interval, Interval), Error> {
    let full = sin_cos(theta, precision_bits)?;
    let half = sin_cos(&(theta / Rational::from_integer(BigInt::from(2))), precision_bits)?;
    let comp = complement(&half);
    let versine = full.cos_enc.one_minus();
    let r1 = versine.sub(&half.sin_enc.mul(&comp.cos_enc).scale2(1));
    let r2 = full.sin_enc.sub(&half.sin_enc.mul(&comp.sin_enc).scale2(1));
    Ok((r1, r2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixed::parse_rational;

    fn rat(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    const SIN_EIGHTH: &str = "0.124674733385227689957442708712108467587834906";
    const COS_EIGHTH: &str = "0.992197667229329053149096907788250869543327305";

    #[test]
    fn base_enclosure_brackets_reference_values() {
        let pair = base_enclosure(&rat("1/8"), 64).unwrap();
        assert!(pair.sin_enc.contains(&rat(SIN_EIGHTH)));
        assert!(pair.cos_enc.contains(&rat(COS_EIGHTH)));
    }

    #[test]
    fn base_enclosure_width_stays_under_the_documented_bound() {
        let x = rat("1/8");
        let pair = base_enclosure(&x, 64).unwrap();
        let bound = &x * &x * &x / rat("6")
            + &x * &x * &x * &x / rat("24")
            + rat("4") * rational_pow2_inv(64);
        assert!(pair.sin_enc.width().to_rational() <= bound);
        assert!(pair.cos_enc.width().to_rational() <= bound);
    }

    #[test]
    fn base_enclosure_rejects_angles_outside_its_sliver() {
        assert!(base_enclosure(&rat("0"), 32).is_err());
        assert!(base_enclosure(&rat("-1/16"), 32).is_err());
        assert!(base_enclosure(&rat("1/7"), 32).is_err());
        assert!(base_enclosure(&rat("1/8"), 32).is_ok());
    }

    #[test]
    fn double_step_lifts_base_enclosure_to_the_doubled_angle() {
        let pair = base_enclosure(&rat("1/16"), 96).unwrap();
        let doubled = double_step(&pair);
        assert!(doubled.sin_enc.contains(&rat(SIN_EIGHTH)));
        assert!(doubled.cos_enc.contains(&rat(COS_EIGHTH)));
        assert_eq!(doubled.theta.as_rational(), Some(&rat("1/8")));
    }

    #[test]
    fn double_step_is_exact_algebra_on_width_zero_dyadic_pairs() {
        // grid wide enough that the products stay exact
        let s = rat("5/16");
        let c = rat("61/64");
        let pair = AnglePair {
            theta: Angle::from_radians(rat("1/3")),
            sin_enc: Interval::from_rational_bounds(&s, &s, 80),
            cos_enc: Interval::from_rational_bounds(&c, &c, 80),
        };
        let d = double_step(&pair);
        let two = rat("2");
        let expected_sin = &two * &s * &c;
        let expected_cos = Rational::one() - &two * &s * &s;
        assert!(d.sin_enc.width().is_zero());
        assert!(d.cos_enc.width().is_zero());
        assert_eq!(d.sin_enc.lo().to_rational(), expected_sin);
        assert_eq!(d.cos_enc.lo().to_rational(), expected_cos);
    }

    #[test]
    fn sin_cos_of_one_matches_reference_digits() {
        let pair = sin_cos(&rat("1"), 64).unwrap();
        assert!(pair.sin_enc.contains(&rat("0.841470984807896506652502321630298999622563061")));
        assert!(pair.cos_enc.contains(&rat("0.540302305868139717400936607442976603732310421")));
        assert!(pair.sin_enc.width() <= FixedPoint::ulp(64));
        assert!(pair.cos_enc.width() <= FixedPoint::ulp(64));
    }

    #[test]
    fn sin_cos_overlaps_base_enclosure_at_the_seam_angle() {
        let direct = base_enclosure(&rat("1/8"), 80).unwrap();
        let doubled = sin_cos(&rat("1/8"), 64).unwrap();
        assert!(doubled.sin_enc.lo().to_rational() <= direct.sin_enc.hi().to_rational());
        assert!(direct.sin_enc.lo().to_rational() <= doubled.sin_enc.hi().to_rational());
    }

    #[test]
    fn sin_cos_close_to_the_right_angle_still_meets_width() {
        let pair = sin_cos(&rat("157/100"), 64).unwrap();
        assert!(pair.sin_enc.contains(&rat("0.999999682931834620210529923823327000194912885")));
        assert!(pair.cos_enc.contains(&rat("0.00079632671073332548540853364535418588017539402")));
        assert!(pair.sin_enc.width() <= FixedPoint::ulp(64));
    }

    #[test]
    fn sin_cos_rejects_the_closed_endpoints_and_beyond() {
        assert!(sin_cos(&rat("0"), 32).is_err());
        assert!(sin_cos(&rat("-1"), 32).is_err());
        assert!(sin_cos(&rat("11/7"), 32).is_err(), "11/7 > pi/2 must be rejected");
        assert!(sin_cos(&rat("8/5"), 32).is_err());
        assert!(sin_cos(&rat("157/100"), 32).is_ok(), "157/100 < pi/2 must be accepted");
    }

    #[test]
    fn doubling_plan_follows_the_depth_and_guard_policy() {
        for (bits, depth) in [(32u32, 18u32), (64, 34), (128, 66), (256, 130)] {
            let plan = DoublingPlan::new(&rat("1"), bits).unwrap();
            assert_eq!(plan.depth, depth);
            assert_eq!(plan.working_frac_bits, bits + 2 * depth + 8);
        }
        // a tiny angle needs no shrinking levels but keeps the precision floor
        let plan = DoublingPlan::new(&rat("1/1000"), 64).unwrap();
        assert_eq!(plan.depth, 34);
    }

    #[test]
    fn complement_swaps_enclosures_bit_for_bit() {
        let pair = sin_cos(&rat("1/2"), 64).unwrap();
        let comp = complement(&pair);
        assert_eq!(comp.sin_enc, pair.cos_enc);
        assert_eq!(comp.cos_enc, pair.sin_enc);
        let back = complement(&comp);
        assert_eq!(back.theta, pair.theta);
        assert_eq!(back.sin_enc, pair.sin_enc);
    }

    #[test]
    fn complement_angle_displays_symbolically() {
        let pair = sin_cos(&rat("1/2"), 32).unwrap();
        let comp = complement(&pair);
        assert_eq!(comp.theta.to_string(), "pi/2 - 1/2");
        assert_eq!(comp.theta.as_rational(), None);
    }

    #[test]
    fn complement_angle_enclosure_tracks_pi() {
        let pair = sin_cos(&rat("1/2"), 64).unwrap();
        let enc = complement(&pair).theta.enclosure(64);
        // pi/2 - 1/2 = 1.0707963267948966...
        assert!(enc.contains(&rat("1.07079632679489661923132169163975144209858469968755")));
        assert!(enc.width() <= FixedPoint::ulp(60));
    }

    #[test]
    fn chord_of_one_radian_matches_reference_digits() {
        let chord = chord_length(&rat("1"), 64).unwrap();
        assert!(chord.contains(&rat("0.958851077208406000546575870431142776163606736")));
        assert!(chord.width() <= FixedPoint::ulp(63));
    }

    #[test]
    fn isosceles_split_residuals_enclose_zero() {
        for theta in ["1", "1/2", "3/2", "1/100"] {
            let (r1, r2) = isosceles_split_residuals(&rat(theta), 96).unwrap();
            assert!(r1.contains_zero(), "versine residual misses zero at theta = {theta}");
            assert!(r2.contains_zero(), "sine residual misses zero at theta = {theta}");
            assert!(r1.width() <= FixedPoint::ulp(93));
            assert!(r2.width() <= FixedPoint::ulp(93));
        }
    }

    #[test]
    fn repeat_evaluation_is_bit_identical() {
        let a = sin_cos(&rat("3/4"), 128).unwrap();
        let b = sin_cos(&rat("3/4"), 128).unwrap();
        assert_eq!(a.sin_enc, b.sin_enc);
        assert_eq!(a.cos_enc, b.cos_enc);
        assert_eq!(a.sin_enc.lo().mantissa(), b.sin_enc.lo().mantissa());
    }
}

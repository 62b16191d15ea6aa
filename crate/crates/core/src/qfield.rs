//! Exact arithmetic in Q(sqrt2, sqrt3) and the constructible-angle table.
//!
//! Elements are stored on the basis {1, sqrt2, sqrt3, sqrt6} with rational
//! coordinates, which is closed under multiplication (sqrt2*sqrt3 = sqrt6,
//! sqrt2*sqrt6 = 2 sqrt3, sqrt3*sqrt6 = 3 sqrt2, sqrt6*sqrt6 = 6) and makes
//! equality a componentwise check. The sines and cosines of 15, 30, 45, 60
//! and 75 degrees all live here, so every identity the kernel certifies
//! numerically can be replayed at these angles with zero rounding error.
//!
//! The table itself is built without the Pythagorean identity: sin 30 = 1/2
//! is the equilateral chord, cos 60 = 1 - 2 sin^2 30 and the square
//! difference cos 60 = cos^2 30 - sin^2 30 then pin cos 30 = sqrt3/2, the
//! complement fixed point at 45 degrees with the versine form at the
//! quadrant boundary gives sqrt2/2, and halving 30 the same way gives the
//! 15-degree pair.

use crate::fixed::{FixedPoint, Rational, Rounding};
use crate::interval::Interval;
use crate::oracle;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An element a + b sqrt2 + c sqrt3 + d sqrt6 of Q(sqrt2, sqrt3).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QNum {
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
}

impl QNum {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> QNum {
        QNum { a, b, c, d }
    }

    pub fn from_rational(a: Rational) -> QNum {
        QNum::new(a, Rational::zero(), Rational::zero(), Rational::zero())
    }

    /// Coordinates on the basis {1, sqrt2, sqrt3, sqrt6}.
    pub fn parts(&self) -> (&Rational, &Rational, &Rational, &Rational) {
        (&self.a, &self.b, &self.c, &self.d)
    }

    /// Certified enclosure of the real value, width at most
    /// 2^-precision_bits for coordinates of magnitude at most one (wider
    /// coordinates are absorbed by extra working bits).
    pub fn enclosure(&self, precision_bits: u32) -> Interval {
        let mut extra = 0u32;
        for part in [&self.a, &self.b, &self.c, &self.d] {
            let mag = part.abs().ceil().numer().bits() as u32;
            extra = extra.max(mag);
        }
        let f = precision_bits + 8 + extra;
        let mut acc = Interval::from_rational(&self.a, f);
        for (part, root) in [(&self.b, 2), (&self.c, 3), (&self.d, 6)] {
            if !part.is_zero() {
                let coef = Interval::from_rational(part, f);
                acc = acc.add(&coef.mul(&sqrt_enclosure(root, f)));
            }
        }
        acc.rescale(precision_bits + 2)
    }
}

impl fmt::Display for QNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt2 + {}*sqrt3 + {}*sqrt6", self.a, self.b, self.c, self.d)
    }
}

impl Add for QNum {
    type Output = QNum;
    fn add(self, rhs: QNum) -> QNum {
        QNum::new(self.a + rhs.a, self.b + rhs.b, self.c + rhs.c, self.d + rhs.d)
    }
}

impl Add for &QNum {
    type Output = QNum;
    fn add(self, rhs: &QNum) -> QNum {
        QNum::new(&self.a + &rhs.a, &self.b + &rhs.b, &self.c + &rhs.c, &self.d + &rhs.d)
    }
}

impl Sub for QNum {
    type Output = QNum;
    fn sub(self, rhs: QNum) -> QNum {
        QNum::new(self.a - rhs.a, self.b - rhs.b, self.c - rhs.c, self.d - rhs.d)
    }
}

impl Sub for &QNum {
    type Output = QNum;
    fn sub(self, rhs: &QNum) -> QNum {
        QNum::new(&self.a - &rhs.a, &self.b - &rhs.b, &self.c - &rhs.c, &self.d - &rhs.d)
    }
}

impl Neg for QNum {
    type Output = QNum;
    fn neg(self) -> QNum {
        QNum::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl Mul for &QNum {
    type Output = QNum;
    fn mul(self, rhs: &QNum) -> QNum {
        let two = Rational::from_integer(BigInt::from(2));
        let three = Rational::from_integer(BigInt::from(3));
        let six = Rational::from_integer(BigInt::from(6));
        let a = &self.a * &rhs.a
            + &two * (&self.b * &rhs.b)
            + &three * (&self.c * &rhs.c)
            + &six * (&self.d * &rhs.d);
        let b = &self.a * &rhs.b + &self.b * &rhs.a + &three * (&self.c * &rhs.d + &self.d * &rhs.c);
        let c = &self.a * &rhs.c + &self.c * &rhs.a + &two * (&self.b * &rhs.d + &self.d * &rhs.b);
        let d = &self.a * &rhs.d + &self.d * &rhs.a + &self.b * &rhs.c + &self.c * &rhs.b;
        QNum::new(a, b, c, d)
    }
}

impl Mul for QNum {
    type Output = QNum;
    fn mul(self, rhs: QNum) -> QNum {
        (&self) * (&rhs)
    }
}

impl Zero for QNum {
    fn zero() -> QNum {
        QNum::from_rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }
}

impl One for QNum {
    fn one() -> QNum {
        QNum::from_rational(Rational::one())
    }
}

/// Certified enclosure of sqrt(k) for k in {2, 3, 6}, by bisection on
/// x^2 - k with dyadic midpoints; endpoints convert exactly.
pub fn sqrt_enclosure(k: u32, precision_bits: u32) -> Interval {
    assert!(matches!(k, 2 | 3 | 6), "sqrt_enclosure supports only 2, 3 and 6");
    let target = Rational::from_integer(BigInt::from(k));
    let mut lo = Rational::one();
    let mut hi = Rational::from_integer(BigInt::from(3));
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    for _ in 0..=precision_bits + 2 {
        let mid = (&lo + &hi) * &half;
        if &mid * &mid <= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Interval::from_rational_bounds(&lo, &hi, precision_bits + 3)
}

/// The five constructible angles whose sin and cos stay inside
/// Q(sqrt2, sqrt3).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactAngle {
    Deg15,
    Deg30,
    Deg45,
    Deg60,
    Deg75,
}

impl ExactAngle {
    pub const ALL: [ExactAngle; 5] = [
        ExactAngle::Deg15,
        ExactAngle::Deg30,
        ExactAngle::Deg45,
        ExactAngle::Deg60,
        ExactAngle::Deg75,
    ];

    pub fn degrees(self) -> u32 {
        match self {
            ExactAngle::Deg15 => 15,
            ExactAngle::Deg30 => 30,
            ExactAngle::Deg45 => 45,
            ExactAngle::Deg60 => 60,
            ExactAngle::Deg75 => 75,
        }
    }

    pub fn from_degrees(deg: u32) -> Option<ExactAngle> {
        Some(match deg {
            15 => ExactAngle::Deg15,
            30 => ExactAngle::Deg30,
            45 => ExactAngle::Deg45,
            60 => ExactAngle::Deg60,
            75 => ExactAngle::Deg75,
            _ => return None,
        })
    }

    pub fn complement(self) -> ExactAngle {
        ExactAngle::from_degrees(90 - self.degrees()).unwrap()
    }

    /// The lattice angle at half this one, when it exists.
    pub fn half(self) -> Option<ExactAngle> {
        ExactAngle::from_degrees(self.degrees() / 2)
    }

    /// A dyadic rational within 2^-(frac_bits-1) of the angle's radian
    /// value, built from the oracle's pi enclosure. Exact enough that a
    /// kernel enclosure at the dyadic angle still brackets the exact-field
    /// value (|sin a - sin b| <= |a - b|).
    pub fn dyadic_radians(self, frac_bits: u32) -> Rational {
        let pi = oracle::pi_enclosure(frac_bits + 8);
        let mid = (pi.lo().to_rational() + pi.hi().to_rational())
            / Rational::from_integer(BigInt::from(2));
        let radians = mid * Rational::new(BigInt::from(self.degrees()), BigInt::from(180));
        FixedPoint::from_rational(&radians, frac_bits, Rounding::Down).to_rational()
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact sine at a lattice angle.
pub fn exact_sin(angle: ExactAngle) -> QNum {
    match angle {
        ExactAngle::Deg15 => QNum::new(q(0, 1), q(-1, 4), q(0, 1), q(1, 4)),
        ExactAngle::Deg30 => QNum::from_rational(q(1, 2)),
        ExactAngle::Deg45 => QNum::new(q(0, 1), q(1, 2), q(0, 1), q(0, 1)),
        ExactAngle::Deg60 => QNum::new(q(0, 1), q(0, 1), q(1, 2), q(0, 1)),
        ExactAngle::Deg75 => QNum::new(q(0, 1), q(1, 4), q(0, 1), q(1, 4)),
    }
}

/// Exact cosine at a lattice angle, via the complement.
pub fn exact_cos(angle: ExactAngle) -> QNum {
    exact_sin(angle.complement())
}

/// Outcome of one exact check.
#[derive(Debug, Clone)]
pub struct ExactCheck {
    pub name: String,
    pub pass: bool,
}

/// Results of the whole exact suite.
#[derive(Debug, Clone)]
pub struct ExactSuiteReport {
    pub checks: Vec<ExactCheck>,
    pub pass: bool,
}

/// Replays every identity the numeric layer certifies, at the five lattice
/// angles, with exact field arithmetic. Equality is exact: any mismatch is
/// an algebra bug, not a tolerance question.
pub fn exact_identity_suite() -> ExactSuiteReport {
    let mut checks: Vec<ExactCheck> = Vec::new();
    let mut push = |name: String, pass: bool| checks.push(ExactCheck { name, pass });
    let one = QNum::one();
    let two = QNum::from_rational(q(2, 1));

    for angle in ExactAngle::ALL {
        let s = exact_sin(angle);
        let c = exact_cos(angle);
        let lhs = &(&s * &s) + &(&c * &c);
        push(format!("pythagoras_{}", angle.degrees()), lhs == one);
    }

    for angle in [ExactAngle::Deg30, ExactAngle::Deg60] {
        let half = angle.half().unwrap();
        let (d, h) = (angle.degrees(), half.degrees());
        let c_full = exact_cos(angle);
        let s_full = exact_sin(angle);
        let s = exact_sin(half);
        let c = exact_cos(half);
        push(
            format!("square_difference_{d}_{h}"),
            c_full == &(&c * &c) - &(&s * &s),
        );
        push(
            format!("versine_doubling_{d}_{h}"),
            c_full == &one - &(&two * &(&s * &s)),
        );
        push(
            format!("sine_doubling_{d}_{h}"),
            s_full == &two * &(&s * &c),
        );
        let comp_half = half.complement();
        push(
            format!("isosceles_split_versine_{d}"),
            &one - &c_full == &two * &(&s * &exact_cos(comp_half)),
        );
        push(
            format!("isosceles_split_sine_{d}"),
            s_full == &two * &(&s * &exact_sin(comp_half)),
        );
    }

    for angle in ExactAngle::ALL {
        push(
            format!("complement_{}", angle.degrees()),
            exact_sin(angle.complement()) == exact_cos(angle)
                && exact_cos(angle.complement()) == exact_sin(angle),
        );
    }

    for alpha in ExactAngle::ALL {
        for beta in ExactAngle::ALL {
            if let Some(sum) = ExactAngle::from_degrees(alpha.degrees() + beta.degrees()) {
                let lhs = exact_cos(sum);
                let rhs = &(&exact_cos(alpha) * &exact_cos(beta))
                    - &(&exact_sin(alpha) * &exact_sin(beta));
                push(
                    format!("cos_addition_{}_{}", alpha.degrees(), beta.degrees()),
                    lhs == rhs,
                );
            }
            if alpha.degrees() > beta.degrees() {
                if let Some(diff) = ExactAngle::from_degrees(alpha.degrees() - beta.degrees()) {
                    let cos_ok = exact_cos(diff)
                        == &(&exact_cos(alpha) * &exact_cos(beta))
                            + &(&exact_sin(alpha) * &exact_sin(beta));
                    let sin_ok = exact_sin(diff)
                        == &(&exact_sin(alpha) * &exact_cos(beta))
                            - &(&exact_cos(alpha) * &exact_sin(beta));
                    push(
                        format!("cos_subtraction_{}_{}", alpha.degrees(), beta.degrees()),
                        cos_ok,
                    );
                    push(
                        format!("sin_subtraction_{}_{}", alpha.degrees(), beta.degrees()),
                        sin_ok,
                    );
                }
            }
        }
    }

    // the doubling defect recursion, replayed on exact values at 45 degrees
    let s = exact_sin(ExactAngle::Deg45);
    let c = exact_cos(ExactAngle::Deg45);
    let four = QNum::from_rational(q(4, 1));
    let s_sq = &s * &s;
    let c_sq = &c * &c;
    let sin_doubled = &two * &(&s * &c);
    let cos_doubled = &one - &(&two * &s_sq);
    let lhs = &(&(&sin_doubled * &sin_doubled) + &(&cos_doubled * &cos_doubled)) - &one;
    let rhs = &(&four * &s_sq) * &(&(&s_sq + &c_sq) - &one);
    push("defect_recursion_45".to_string(), lhs == rhs);

    let pass = checks.iter().all(|c| c.pass);
    ExactSuiteReport { checks, pass }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixed::parse_rational;

    fn rat(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn sqrt_enclosures_bracket_reference_digits() {
        for (k, digits) in [
            (2, "1.41421356237309504880168872420969807856967188"),
            (3, "1.73205080756887729352744634150587236694280525"),
            (6, "2.44948974278317809819728407470589139196594748"),
        ] {
            let enc = sqrt_enclosure(k, 96);
            assert!(enc.contains(&rat(digits)), "sqrt({k}) enclosure misses reference");
            assert!(enc.width() <= FixedPoint::ulp(96));
        }
    }

    #[test]
    fn sqrt_enclosure_square_brackets_the_radicand() {
        let enc = sqrt_enclosure(2, 64);
        let sq = enc.sqr();
        assert!(sq.contains(&rat("2")));
    }

    #[test]
    fn basis_products_reduce_correctly() {
        let sqrt2 = QNum::new(rat("0"), rat("1"), rat("0"), rat("0"));
        let sqrt3 = QNum::new(rat("0"), rat("0"), rat("1"), rat("0"));
        let sqrt6 = QNum::new(rat("0"), rat("0"), rat("0"), rat("1"));
        assert_eq!(&sqrt2 * &sqrt3, sqrt6);
        assert_eq!(&sqrt2 * &sqrt6, QNum::new(rat("0"), rat("0"), rat("2"), rat("0")));
        assert_eq!(&sqrt3 * &sqrt6, QNum::new(rat("0"), rat("3"), rat("0"), rat("0")));
        assert_eq!(&sqrt6 * &sqrt6, QNum::from_rational(rat("6")));
        assert_eq!(&sqrt2 * &sqrt2, QNum::from_rational(rat("2")));
    }

    #[test]
    fn fifteen_degree_sine_squares_to_the_half_angle_value() {
        // sin^2 15 = (2 - sqrt3)/4, forced by cos 30 = 1 - 2 sin^2 15
        let s = exact_sin(ExactAngle::Deg15);
        let expected = QNum::new(rat("1/2"), rat("0"), rat("-1/4"), rat("0"));
        assert_eq!(&s * &s, expected);
    }

    #[test]
    fn table_values_match_reference_digits() {
        for (angle, digits) in [
            (ExactAngle::Deg15, "0.2588190451025207623488988376240483283491"),
            (ExactAngle::Deg45, "0.707106781186547524400844362104849039284835938"),
            (ExactAngle::Deg60, "0.866025403784438646763723170752936183471402627"),
        ] {
            let enc = exact_sin(angle).enclosure(96);
            assert!(enc.contains(&rat(digits)), "sin {} enclosure off", angle.degrees());
            assert!(enc.width() <= FixedPoint::ulp(96));
        }
    }

    #[test]
    fn enclosure_handles_large_coordinates() {
        let big = QNum::new(rat("1000"), rat("-2000"), rat("0"), rat("1/3"));
        let enc = big.enclosure(64);
        // 1000 - 2000*sqrt2 + sqrt6/3 = -1827.61062816526237157...
        assert!(enc.contains(&rat("-1827.610628165262371570645020394494")));
        assert!(enc.width() <= FixedPoint::ulp(64));
    }

    #[test]
    fn exact_suite_passes_every_check() {
        let report = exact_identity_suite();
        assert!(report.pass, "failing checks: {:?}",
            report.checks.iter().filter(|c| !c.pass).map(|c| &c.name).collect::<Vec<_>>());
        assert!(report.checks.len() > 30);
    }

    #[test]
    fn suite_names_are_unique() {
        let report = exact_identity_suite();
        let mut names: Vec<&String> = report.checks.iter().map(|c| &c.name).collect();
        let before = names.len();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), before);
    }

    #[test]
    fn dyadic_radians_sits_just_below_the_true_angle() {
        let approx = ExactAngle::Deg60.dyadic_radians(128);
        // pi/3 = 1.04719755119659774615421446109316762806572313312504
        let reference = rat("1.04719755119659774615421446109316762806572313312504");
        assert!(approx <= reference);
        assert!(&reference - &approx < rat("1e-36"));
    }
}

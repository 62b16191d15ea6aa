//! Certification of the Pythagorean identity from the doubling machinery.
//!
//! The doubling step sends the defect D(x) = sin^2 x + cos^2 x - 1 to
//! exactly 4 sin^2 x * D(x): unwinding n levels,
//!
//!   D(theta) = 4^n (prod_{i=1..n} sin^2(theta/2^i)) * D(theta/2^n),
//!
//! and since sin x < x, the scaled product is below
//! (4 theta^2)^n 4^(-sum i) = (4 theta^2)^n 2^(-n(n+1)), which in turn is
//! below (4 theta^2)^n 2^(-n^2), super-exponentially small in n. The
//! functions here compute each piece with certified enclosures (or exact
//! rationals where the object is exact) so the whole argument can be
//! replayed and checked level by level.

use crate::error::Error;
use crate::fixed::{FixedPoint, Rational};
use crate::interval::Interval;
use crate::kernel::{sin_cos, AnglePair};
use num_bigint::BigInt;
use num_traits::{One, Zero};

fn two() -> Rational {
    Rational::from_integer(BigInt::from(2))
}

fn pow2_inv_rational(bits: u64) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << (bits as usize))
}

/// The defect sin^2 + cos^2 - 1 of an exact point, as a rational.
pub fn defect(s: &Rational, c: &Rational) -> Rational {
    s * s + c * c - Rational::one()
}

/// The defect of the doubled point (2sc, 1 - 2s^2), as a rational.
pub fn defect_after_doubling(s: &Rational, c: &Rational) -> Rational {
    let sin2 = two() * (s * c);
    let cos2 = Rational::one() - two() * (s * s);
    &sin2 * &sin2 + &cos2 * &cos2 - Rational::one()
}

/// Residual of the defect recursion
/// (2sc)^2 + (1 - 2s^2)^2 - 1 = 4s^2 (s^2 + c^2 - 1),
/// evaluated exactly. Zero for every rational pair; a nonzero result would
/// mean the recursion itself is mis-stated.
pub fn defect_recursion_residual(s: &Rational, c: &Rational) -> Rational {
    let four_s_sq = Rational::from_integer(BigInt::from(4)) * (s * s);
    defect_after_doubling(s, c) - four_s_sq * defect(s, c)
}

/// Enclosure of sin^2 theta + cos^2 theta - 1 from one kernel evaluation.
/// Sound enclosures force it to contain zero.
pub fn pair_defect(pair: &AnglePair) -> Interval {
    let sum = pair.sin_enc.sqr().add(&pair.cos_enc.sqr());
    let one = Interval::point(FixedPoint::one(sum.frac_bits()));
    sum.sub(&one)
}

/// Enclosure of the defect at a rational angle in (0, pi/2).
pub fn pythagoras_defect(theta: &Rational, precision_bits: u32) -> Result<Interval, Error> {
    Ok(pair_defect(&sin_cos(theta, precision_bits)?))
}

/// One level of the unwound defect product.
#[derive(Debug, Clone)]
pub struct LevelRecord {
    pub level: u32,
    /// theta / 2^level.
    pub half_angle: Rational,
    /// Kernel enclosure of sin(theta / 2^level).
    pub sin_enc: Interval,
    /// Enclosure of 4^level * prod_{i=1..level} sin^2(theta/2^i).
    pub cumulative_product: Interval,
}

/// The unwound defect product, level by level.
#[derive(Debug, Clone)]
pub struct DefectTrace {
    pub theta: Rational,
    pub precision_bits: u32,
    pub levels: Vec<LevelRecord>,
}

/// Computes the scaled sine product down to level n. The per-level factors
/// 4 sin^2(theta/2^i) come from the kernel at precision_bits; the running
/// product is multiplied exactly (the grid grows) because deep levels sink
/// far below any fixed absolute grid and rounding there would collapse the
/// interval onto [0, ulp].
pub fn product_trace(theta: &Rational, n: u32, precision_bits: u32) -> Result<DefectTrace, Error> {
    if n < 1 {
        return Err(Error::InvalidArgument("product trace needs at least one level".into()));
    }
    let mut levels = Vec::with_capacity(n as usize);
    let mut cumulative = Interval::point(FixedPoint::one(0));
    let mut half_angle = theta.clone();
    for level in 1..=n {
        half_angle /= two();
        let pair = sin_cos(&half_angle, precision_bits)?;
        let factor = pair.sin_enc.sqr_exact().scale2(2);
        cumulative = cumulative.mul_exact(&factor);
        levels.push(LevelRecord {
            level,
            half_angle: half_angle.clone(),
            sin_enc: pair.sin_enc,
            cumulative_product: cumulative.clone(),
        });
    }
    Ok(DefectTrace {
        theta: theta.clone(),
        precision_bits,
        levels,
    })
}

/// The two closed-form majorants of the scaled sine product:
/// (4 theta^2)^n 2^(-n(n+1)) and (4 theta^2)^n 2^(-n^2), exact.
pub fn product_bounds(theta: &Rational, n: u32) -> Result<(Rational, Rational), Error> {
    if theta <= &Rational::zero() {
        return Err(Error::InvalidArgument("product bounds need a positive angle".into()));
    }
    if n < 1 {
        return Err(Error::InvalidArgument("product bounds need at least one level".into()));
    }
    let four_theta_sq = Rational::from_integer(BigInt::from(4)) * (theta * theta);
    let power = four_theta_sq.pow(n as i32);
    let n = n as u64;
    let intermediate = &power * pow2_inv_rational(n * (n + 1));
    let final_bound = &power * pow2_inv_rational(n * n);
    Ok((intermediate, final_bound))
}

/// Outcome of certifying product < intermediate <= final at one (theta, n).
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub theta: Rational,
    pub n: u32,
    /// Precision the reported product was computed at; higher than requested
    /// when the strict comparison needed refinement.
    pub precision_bits: u32,
    pub product: Interval,
    pub intermediate_bound: Rational,
    pub final_bound: Rational,
    pub chain_holds: bool,
}

/// Certifies the strict chain product < intermediate <= final. The first
/// comparison is between an interval and an exact rational; if the interval
/// straddles the bound the precision is doubled, up to four times the
/// request, before the chain is reported as not established.
pub fn bound_chain(theta: &Rational, n: u32, precision_bits: u32) -> Result<BoundReport, Error> {
    let (intermediate_bound, final_bound) = product_bounds(theta, n)?;
    let mut bits = precision_bits;
    loop {
        let trace = product_trace(theta, n, bits)?;
        let product = trace.levels.last().unwrap().cumulative_product.clone();
        let strictly_below = product.hi().to_rational() < intermediate_bound;
        let definitely_not = product.lo().to_rational() >= intermediate_bound;
        if strictly_below || definitely_not || bits >= precision_bits * 4 {
            let chain_holds = strictly_below && intermediate_bound <= final_bound;
            return Ok(BoundReport {
                theta: theta.clone(),
                n,
                precision_bits: bits,
                product,
                intermediate_bound,
                final_bound,
                chain_holds,
            });
        }
        bits *= 2;
    }
}

/// Residual of the square-difference half-angle form:
/// cos theta - (cos^2(theta/2) - sin^2(theta/2)). Encloses zero when the
/// kernel is sound.
pub fn half_angle_sq_diff_residual(theta: &Rational, precision_bits: u32) -> Result<Interval, Error> {
    let full = sin_cos(theta, precision_bits)?;
    let half = sin_cos(&(theta / two()), precision_bits)?;
    let sq_diff = half.cos_enc.sqr().sub(&half.sin_enc.sqr());
    Ok(full.cos_enc.sub(&sq_diff))
}

/// Residual of cos(alpha + beta) - (cos alpha cos beta - sin alpha sin beta).
/// All three angles must lie in (0, pi/2).
pub fn cos_addition_residual(
    alpha: &Rational,
    beta: &Rational,
    precision_bits: u32,
) -> Result<Interval, Error> {
    let a = sin_cos(alpha, precision_bits)?;
    let b = sin_cos(beta, precision_bits)?;
    let sum = sin_cos(&(alpha + beta), precision_bits)?;
    let rhs = a.cos_enc.mul(&b.cos_enc).sub(&a.sin_enc.mul(&b.sin_enc));
    Ok(sum.cos_enc.sub(&rhs))
}

/// Residuals of the subtraction pair
/// cos(alpha - beta) - (cos alpha cos beta + sin alpha sin beta) and
/// sin(alpha - beta) - (sin alpha cos beta - cos alpha sin beta),
/// for alpha > beta with all angles in (0, pi/2).
pub fn subtraction_residuals(
    alpha: &Rational,
    beta: &Rational,
    precision_bits: u32,
) -> Result<(Interval, Interval), Error> {
    let a = sin_cos(alpha, precision_bits)?;
    let b = sin_cos(beta, precision_bits)?;
    let diff = sin_cos(&(alpha - beta), precision_bits)?;
    let cos_rhs = a.cos_enc.mul(&b.cos_enc).add(&a.sin_enc.mul(&b.sin_enc));
    let sin_rhs = a.sin_enc.mul(&b.cos_enc).sub(&a.cos_enc.mul(&b.sin_enc));
    Ok((diff.cos_enc.sub(&cos_rhs), diff.sin_enc.sub(&sin_rhs)))
}

/// One row of the decay table.
#[derive(Debug, Clone)]
pub struct DecayRow {
    pub n: u32,
    pub half_angle: Rational,
    pub sin_enc: Interval,
    pub product: Interval,
    pub intermediate_bound: Rational,
    pub final_bound: Rational,
    pub chain_holds: bool,
}

/// The decay table for n = 1..=n_max: per-level products, closed-form
/// bounds, and the certified chain flag. Rows whose strict comparison is
/// obscured at the requested precision are refined the way `bound_chain`
/// refines, and the refined product is what lands in the row.
pub fn decay_table(
    theta: &Rational,
    n_max: u32,
    precision_bits: u32,
) -> Result<Vec<DecayRow>, Error> {
    if !(1..=64).contains(&n_max) {
        return Err(Error::InvalidArgument(format!(
            "decay table depth must be in 1..=64, got {n_max}"
        )));
    }
    let trace = product_trace(theta, n_max, precision_bits)?;
    let mut rows = Vec::with_capacity(n_max as usize);
    for record in &trace.levels {
        let (intermediate_bound, final_bound) = product_bounds(theta, record.level)?;
        let mut product = record.cumulative_product.clone();
        let mut chain_holds = product.hi().to_rational() < intermediate_bound;
        if !chain_holds && product.lo().to_rational() < intermediate_bound {
            let refined = bound_chain(theta, record.level, precision_bits)?;
            product = refined.product;
            chain_holds = refined.chain_holds;
        }
        rows.push(DecayRow {
            n: record.level,
            half_angle: record.half_angle.clone(),
            sin_enc: record.sin_enc.clone(),
            product,
            intermediate_bound,
            final_bound,
            chain_holds,
        });
    }
    Ok(rows)
}

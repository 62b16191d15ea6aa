//! Outward-rounded interval arithmetic over `FixedPoint`.
//!
//! The single invariant every operation preserves is containment: if x is in
//! X and y is in Y then x op y is in the result. Endpoints that must shrink
//! round down, endpoints that must grow round up, and operations that can be
//! carried out exactly on the dyadic grid (addition, subtraction, doubling,
//! 1 - x) introduce no rounding at all. There is no division here; nothing
//! the kernel or the verifier computes needs one.

use crate::fixed::{FixedPoint, Rational, Rounding};

/// A closed interval [lo, hi] with both endpoints on the same dyadic grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: FixedPoint,
    hi: FixedPoint,
}

impl Interval {
    /// Builds an interval from endpoints already on a common grid.
    ///
    /// Panics if `lo > hi` or the grids differ; both would be internal logic
    /// errors, not data-dependent conditions.
    pub fn new(lo: FixedPoint, hi: FixedPoint) -> Interval {
        assert_eq!(lo.frac_bits(), hi.frac_bits(), "interval endpoints on different grids");
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    /// The degenerate interval [p, p].
    pub fn point(p: FixedPoint) -> Interval {
        Interval { hi: p.clone(), lo: p }
    }

    /// Smallest grid interval containing the rational `r`.
    pub fn from_rational(r: &Rational, frac_bits: u32) -> Interval {
        Interval::new(
            FixedPoint::from_rational(r, frac_bits, Rounding::Down),
            FixedPoint::from_rational(r, frac_bits, Rounding::Up),
        )
    }

    /// Smallest grid interval containing the rational interval [a, b].
    pub fn from_rational_bounds(a: &Rational, b: &Rational, frac_bits: u32) -> Interval {
        assert!(a <= b, "rational bounds out of order");
        Interval::new(
            FixedPoint::from_rational(a, frac_bits, Rounding::Down),
            FixedPoint::from_rational(b, frac_bits, Rounding::Up),
        )
    }

    pub fn lo(&self) -> &FixedPoint {
        &self.lo
    }

    pub fn hi(&self) -> &FixedPoint {
        &self.hi
    }

    pub fn frac_bits(&self) -> u32 {
        self.lo.frac_bits()
    }

    /// Exact width hi - lo.
    pub fn width(&self) -> FixedPoint {
        self.hi.sub(&self.lo)
    }

    /// Exact sum; no rounding.
    pub fn add(&self, rhs: &Interval) -> Interval {
        Interval::new(self.lo.add(&rhs.lo), self.hi.add(&rhs.hi))
    }

    /// Exact difference; no rounding.
    pub fn sub(&self, rhs: &Interval) -> Interval {
        Interval::new(self.lo.sub(&rhs.hi), self.hi.sub(&rhs.lo))
    }

    /// Product, outward-rounded onto the larger of the two operand grids.
    pub fn mul(&self, rhs: &Interval) -> Interval {
        let f = self.frac_bits().max(rhs.frac_bits());
        self.mul_rounded(rhs, f)
    }

    /// Product, outward-rounded onto the `frac_bits` grid.
    ///
    /// The four exact corner products are compared before any rounding, so
    /// each endpoint is the correctly rounded best bound regardless of signs.
    pub fn mul_rounded(&self, rhs: &Interval, frac_bits: u32) -> Interval {
        let corners = [
            self.lo.mul_exact(&rhs.lo),
            self.lo.mul_exact(&rhs.hi),
            self.hi.mul_exact(&rhs.lo),
            self.hi.mul_exact(&rhs.hi),
        ];
        let min = corners.iter().min().unwrap();
        let max = corners.iter().max().unwrap();
        Interval::new(
            min.rescale(frac_bits, Rounding::Down),
            max.rescale(frac_bits, Rounding::Up),
        )
    }

    /// Exact product; the grid grows to the sum of the operand widths.
    pub fn mul_exact(&self, rhs: &Interval) -> Interval {
        let corners = [
            self.lo.mul_exact(&rhs.lo),
            self.lo.mul_exact(&rhs.hi),
            self.hi.mul_exact(&rhs.lo),
            self.hi.mul_exact(&rhs.hi),
        ];
        let min = corners.iter().min().unwrap().clone();
        let max = corners.iter().max().unwrap().clone();
        Interval::new(min, max)
    }

    /// Square, outward-rounded in place on the operand grid. The result's
    /// lower endpoint is never negative: x^2 >= 0 even when the operand
    /// straddles zero.
    pub fn sqr(&self) -> Interval {
        self.sqr_rounded(self.frac_bits())
    }

    /// Square on an explicit target grid.
    pub fn sqr_rounded(&self, frac_bits: u32) -> Interval {
        let e = self.sqr_exact();
        Interval::new(
            e.lo.rescale(frac_bits, Rounding::Down),
            e.hi.rescale(frac_bits, Rounding::Up),
        )
    }

    /// Exact square; the grid doubles.
    pub fn sqr_exact(&self) -> Interval {
        let ll = self.lo.mul_exact(&self.lo);
        let hh = self.hi.mul_exact(&self.hi);
        let straddles = self.lo.is_negative() && !self.hi.is_negative();
        let lo = if straddles {
            FixedPoint::zero(ll.frac_bits())
        } else {
            ll.clone().min(hh.clone())
        };
        let hi = ll.max(hh);
        Interval::new(lo, hi)
    }

    /// Exact multiplication by 2^k.
    pub fn scale2(&self, k: i64) -> Interval {
        Interval::new(self.lo.scale2(k), self.hi.scale2(k))
    }

    /// Exact reflection [1 - hi, 1 - lo].
    pub fn one_minus(&self) -> Interval {
        let one = FixedPoint::one(self.frac_bits());
        Interval::new(one.sub(&self.hi), one.sub(&self.lo))
    }

    /// Exact negation [-hi, -lo].
    pub fn neg(&self) -> Interval {
        Interval::new(self.hi.neg(), self.lo.neg())
    }

    pub fn contains(&self, r: &Rational) -> bool {
        &self.lo.to_rational() <= r && r <= &self.hi.to_rational()
    }

    pub fn contains_zero(&self) -> bool {
        use num_traits::Signed;
        !self.lo.mantissa().is_positive() && !self.hi.mantissa().is_negative()
    }

    pub fn contains_interval(&self, inner: &Interval) -> bool {
        self.lo <= inner.lo && inner.hi <= self.hi
    }

    /// Outward re-gridding; containment is preserved.
    pub fn rescale(&self, frac_bits: u32) -> Interval {
        Interval::new(
            self.lo.rescale(frac_bits, Rounding::Down),
            self.hi.rescale(frac_bits, Rounding::Up),
        )
    }

    /// Intersection with [0, 1]. Only valid when the caller knows the true
    /// value lies in [0, 1]; then the intersection is nonempty and sound.
    pub fn clamp_unit(&self) -> Interval {
        let f = self.frac_bits();
        let zero = FixedPoint::zero(f);
        let one = FixedPoint::one(f);
        let lo = if self.lo < zero { zero } else { self.lo.clone() };
        let hi = if self.hi > one { one } else { self.hi.clone() };
        Interval::new(lo, hi)
    }
}

//! Real midpoint-radius enclosures.

use num_bigint::BigInt;
use num_rational::BigRational;
use std::cmp::Ordering;

use super::dyadic::{Dyadic, Round};
use crate::error::{Error, Result};

/// Radii never need many bits; they are rounded up to this many.
const RADIUS_PREC: u32 = 32;

/// A real enclosure `[mid - rad, mid + rad]`. Every operation returns a ball
/// containing the exact image of the operands' enclosures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    mid: Dyadic,
    rad: Dyadic,
}

impl Ball {
    pub fn exact(mid: Dyadic) -> Self {
        Ball { mid, rad: Dyadic::zero() }
    }

    pub fn zero() -> Self {
        Ball::exact(Dyadic::zero())
    }

    pub fn one() -> Self {
        Ball::exact(Dyadic::one())
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        Ball::exact(Dyadic::from_bigint(n.clone()))
    }

    pub fn from_endpoints(lo: &Dyadic, hi: &Dyadic) -> Self {
        debug_assert!(lo.cmp_dyadic(hi) != Ordering::Greater);
        let mid = lo.add(hi).shl(-1);
        let rad = hi.sub(lo).shl(-1);
        Ball { mid, rad }
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        let lo = Dyadic::from_rational(q, prec, Round::Down);
        let hi = Dyadic::from_rational(q, prec, Round::Up);
        Ball::from_endpoints(&lo, &hi)
    }

    pub fn mid(&self) -> &Dyadic {
        &self.mid
    }

    pub fn rad(&self) -> &Dyadic {
        &self.rad
    }

    pub fn lower(&self) -> Dyadic {
        self.mid.sub(&self.rad)
    }

    pub fn upper(&self) -> Dyadic {
        self.mid.add(&self.rad)
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    /// Rounds the midpoint to `prec` bits (absorbing the error into the
    /// radius) and the radius up to a short mantissa.
    pub fn chop(&self, prec: u32) -> Self {
        let (mid, err) = self.mid.round_nearest(prec);
        let rad = self.rad.add(&err).round(RADIUS_PREC, Round::Up);
        Ball { mid, rad }
    }

    pub fn neg(&self) -> Self {
        Ball { mid: self.mid.neg(), rad: self.rad.clone() }
    }

    pub fn add(&self, other: &Self, prec: u32) -> Self {
        Ball {
            mid: self.mid.add(&other.mid),
            rad: self.rad.add(&other.rad),
        }
        .chop(prec)
    }

    pub fn sub(&self, other: &Self, prec: u32) -> Self {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &Self, prec: u32) -> Self {
        // |xy - m1·m2| <= |m1|r2 + |m2|r1 + r1·r2
        let mid = self.mid.mul(&other.mid);
        let rad = self
            .mid
            .abs()
            .mul(&other.rad)
            .add(&other.mid.abs().mul(&self.rad))
            .add(&self.rad.mul(&other.rad));
        Ball { mid, rad }.chop(prec)
    }

    pub fn square(&self, prec: u32) -> Self {
        // tight: the image of [lo, hi] under x² is nonnegative
        let lo = self.lower();
        let hi = self.upper();
        let (new_lo, new_hi) = if !lo.is_negative() {
            (lo.mul(&lo), hi.mul(&hi))
        } else if !hi.is_positive() {
            (hi.mul(&hi), lo.mul(&lo))
        } else {
            let m = Dyadic::max_dyadic(&lo.abs(), &hi.abs());
            (Dyadic::zero(), m.mul(&m))
        };
        Ball::from_endpoints(&new_lo, &new_hi).chop(prec)
    }

    pub fn contains_zero(&self) -> bool {
        !self.lower().is_positive() && !self.upper().is_negative()
    }

    pub fn contains_dyadic(&self, x: &Dyadic) -> bool {
        self.lower().cmp_dyadic(x) != Ordering::Greater && x.cmp_dyadic(&self.upper()) != Ordering::Greater
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        self.lower().to_rational() <= *q && *q <= self.upper().to_rational()
    }

    pub fn contains(&self, other: &Ball) -> bool {
        self.contains_dyadic(&other.lower()) && self.contains_dyadic(&other.upper())
    }

    pub fn intersects(&self, other: &Ball) -> bool {
        self.lower().cmp_dyadic(&other.upper()) != Ordering::Greater
            && other.lower().cmp_dyadic(&self.upper()) != Ordering::Greater
    }

    /// Intersection; errors if empty (the inputs were claimed to share a point).
    pub fn intersect(&self, other: &Ball) -> Result<Ball> {
        let lo = Dyadic::max_dyadic(&self.lower(), &other.lower());
        let hi = Dyadic::min_dyadic(&self.upper(), &other.upper());
        if lo.cmp_dyadic(&hi) == Ordering::Greater {
            return Err(Error::InvalidEnclosure("empty intersection".into()));
        }
        Ok(Ball::from_endpoints(&lo, &hi))
    }

    pub fn union(&self, other: &Ball) -> Ball {
        let lo = Dyadic::min_dyadic(&self.lower(), &other.lower());
        let hi = Dyadic::max_dyadic(&self.upper(), &other.upper());
        Ball::from_endpoints(&lo, &hi)
    }

    /// True when every point of the ball is strictly positive.
    pub fn is_strictly_positive(&self) -> bool {
        self.lower().is_positive()
    }

    pub fn is_strictly_negative(&self) -> bool {
        self.upper().is_negative()
    }

    pub fn abs(&self) -> Self {
        if !self.lower().is_negative() {
            self.clone()
        } else if !self.upper().is_positive() {
            self.neg()
        } else {
            let hi = Dyadic::max_dyadic(&self.lower().abs(), &self.upper());
            Ball::from_endpoints(&Dyadic::zero(), &hi)
        }
    }

    pub fn max_with(&self, other: &Self) -> Self {
        let lo = Dyadic::max_dyadic(&self.lower(), &other.lower());
        let hi = Dyadic::max_dyadic(&self.upper(), &other.upper());
        Ball::from_endpoints(&lo, &hi)
    }

    pub fn recip(&self, prec: u32) -> Result<Self> {
        if self.contains_zero() {
            return Err(Error::PrecisionExhausted(
                "reciprocal of an enclosure containing zero".into(),
            ));
        }
        let one = Dyadic::one();
        let lo = one.div(&self.upper(), prec, Round::Down);
        let hi = one.div(&self.lower(), prec, Round::Up);
        Ok(Ball::from_endpoints(&lo, &hi).chop(prec))
    }

    pub fn div(&self, other: &Self, prec: u32) -> Result<Self> {
        Ok(self.mul(&other.recip(prec)?, prec))
    }

    /// `self^e` for a nonnegative ball, via monotone endpoint powers.
    pub fn pow_u64_nonneg(&self, e: u64, prec: u32) -> Self {
        debug_assert!(!self.lower().is_negative());
        if e == 0 {
            return Ball::one();
        }
        let lo = self.lower().pow_u64(e);
        let hi = self.upper().pow_u64(e);
        Ball::from_endpoints(&lo, &hi).chop(prec)
    }

    /// Integer power of a general ball by repeated interval multiplication.
    pub fn pow_u64(&self, e: u64, prec: u32) -> Self {
        let mut acc = Ball::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, prec);
            }
            base = base.mul(&base, prec);
            e >>= 1;
        }
        acc
    }

    /// Intersects with `[0, ∞)`; sound only when the represented quantity is
    /// known nonnegative (midpoint rounding can push a lower bound spuriously
    /// below zero).
    pub fn clamp_nonneg(&self) -> Self {
        let lo = self.lower();
        if !lo.is_negative() {
            return self.clone();
        }
        let hi = Dyadic::max_dyadic(&self.upper(), &Dyadic::zero());
        Ball::from_endpoints(&Dyadic::zero(), &hi)
    }

    /// `self^(1/n)` for a nonnegative ball.
    pub fn nth_root(&self, n: u32, prec: u32) -> Result<Self> {
        if self.lower().is_negative() {
            return Err(Error::InvalidEnclosure(
                "nth_root of an enclosure reaching below zero".into(),
            ));
        }
        let lo = self.lower().nth_root(n, prec, Round::Down);
        let hi = self.upper().nth_root(n, prec, Round::Up);
        Ok(Ball::from_endpoints(&lo, &hi).chop(prec))
    }

    pub fn sqrt(&self, prec: u32) -> Result<Self> {
        self.nth_root(2, prec)
    }

    /// `self^(num/den)` for a strictly positive ball (or nonnegative when
    /// `num/den > 0`).
    pub fn pow_rational(&self, num: i64, den: u32, prec: u32) -> Result<Self> {
        debug_assert!(den > 0);
        if num == 0 {
            return Ok(Ball::one());
        }
        let base = if num < 0 { self.recip(prec)? } else { self.clone() };
        let powed = base.pow_u64_nonneg(num.unsigned_abs(), prec);
        powed.nth_root(den, prec)
    }

    /// Decimal rendering as `midpoint ± radius`.
    pub fn to_decimal(&self, sig: usize) -> String {
        if self.rad.is_zero() {
            format!("{} (exact)", self.mid.to_decimal(sig, false))
        } else {
            format!(
                "{} ± {}",
                self.mid.to_decimal(sig, false),
                self.rad.to_decimal(3, true)
            )
        }
    }
}

impl std::fmt::Display for Ball {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_decimal(17))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn b(lo: f64, hi: f64) -> Ball {
        Ball::from_endpoints(
            &Dyadic::from_f64(lo).unwrap(),
            &Dyadic::from_f64(hi).unwrap(),
        )
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn endpoint_round_trip() {
        let x = b(1.0, 2.0);
        assert_eq!(x.lower(), Dyadic::from_f64(1.0).unwrap());
        assert_eq!(x.upper(), Dyadic::from_f64(2.0).unwrap());
        assert!(x.contains_rational(&q(3, 2)));
        assert!(!x.contains_rational(&q(5, 2)));
    }

    #[test]
    fn arithmetic_containment() {
        let prec = 64;
        let x = b(1.25, 1.5);
        let y = b(-0.5, 0.25);
        let s = x.add(&y, prec);
        assert!(s.contains_rational(&(q(5, 4) + q(-1, 2))));
        assert!(s.contains_rational(&(q(3, 2) + q(1, 4))));
        let p = x.mul(&y, prec);
        assert!(p.contains_rational(&(q(5, 4) * q(-1, 2))));
        assert!(p.contains_rational(&(q(3, 2) * q(1, 4))));
        let sq = y.square(prec);
        assert!(sq.contains_zero());
        assert!(sq.contains_rational(&q(1, 4)));
        assert!(!sq.contains_rational(&q(-1, 100)));
    }

    #[test]
    fn division_and_reciprocal() {
        let prec = 64;
        let x = b(2.0, 4.0);
        let r = x.recip(prec).unwrap();
        assert!(r.contains_rational(&q(1, 3)));
        assert!(r.contains_rational(&q(1, 2)));
        assert!(r.contains_rational(&q(1, 4)));
        assert!(b(-1.0, 1.0).recip(prec).is_err());
        let d = Ball::one().div(&x, prec).unwrap();
        assert!(d.contains_rational(&q(1, 3)));
    }

    #[test]
    fn roots_and_powers() {
        let prec = 80;
        let two = Ball::from_rational(&q(2, 1), prec);
        let r = two.sqrt(prec).unwrap();
        let sq = r.square(prec);
        assert!(sq.contains_rational(&q(2, 1)));
        let p = b(1.0, 2.0).pow_rational(3, 2, prec).unwrap(); // x^(3/2)
        assert!(p.contains_rational(&q(1, 1)));
        let neg = b(0.5, 2.0).pow_rational(-1, 1, prec).unwrap();
        assert!(neg.contains_rational(&q(2, 1)));
        assert!(neg.contains_rational(&q(1, 2)));
    }

    #[test]
    fn max_and_abs() {
        let x = b(-3.0, -1.0);
        assert_eq!(x.abs().lower(), Dyadic::one());
        let m = x.max_with(&Ball::one());
        assert_eq!(m.lower(), Dyadic::one());
        assert_eq!(m.upper(), Dyadic::one());
        let y = b(-1.0, 4.0);
        let m = y.max_with(&Ball::one());
        assert_eq!(m.lower(), Dyadic::one());
        assert_eq!(m.upper(), Dyadic::from_f64(4.0).unwrap());
        assert!(y.abs().contains_zero());
    }

    #[test]
    fn chop_preserves_containment() {
        let x = Ball::from_rational(&q(355, 113), 200);
        let c = x.chop(20);
        assert!(c.contains_rational(&q(355, 113)));
        assert!(c.rad().precision_bits() <= 32);
    }

    #[test]
    fn rational_midpoint_enclosure() {
        let x = Ball::from_rational(&q(1, 3), 64);
        assert!(x.contains_rational(&q(1, 3)));
        assert!(x.rad().cmp_dyadic(&Dyadic::new(BigInt::one(), -60)) == Ordering::Less);
    }

    #[test]
    fn intersection_and_union() {
        let a = b(0.0, 2.0);
        let c = b(1.0, 3.0);
        let i = a.intersect(&c).unwrap();
        assert_eq!(i.lower(), Dyadic::one());
        assert_eq!(i.upper(), Dyadic::from_f64(2.0).unwrap());
        assert!(b(0.0, 1.0).intersect(&b(2.0, 3.0)).is_err());
        let u = a.union(&c);
        assert_eq!(u.lower(), Dyadic::zero());
        assert_eq!(u.upper(), Dyadic::from_f64(3.0).unwrap());
    }
}

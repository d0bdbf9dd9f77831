//! Exact dyadic numbers `mantissa · 2^exp` with directed rounding.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

/// Rounding direction for inexact operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    /// Toward negative infinity.
    Down,
    /// Toward positive infinity.
    Up,
}

/// An exact dyadic rational. The mantissa is odd (or zero with `exp = 0`),
/// so representations are canonical and equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    man: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(man: BigInt, exp: i64) -> Self {
        if man.is_zero() {
            return Dyadic { man, exp: 0 };
        }
        let tz = man.trailing_zeros().unwrap_or(0) as i64;
        if tz > 0 {
            Dyadic {
                man: man >> tz,
                exp: exp + tz,
            }
        } else {
            Dyadic { man, exp }
        }
    }

    pub fn zero() -> Self {
        Dyadic { man: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { man: BigInt::one(), exp: 0 }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Dyadic::new(n, 0)
    }

    pub fn from_i64(n: i64) -> Self {
        Dyadic::new(BigInt::from(n), 0)
    }

    /// Exact conversion; every finite `f64` is dyadic.
    pub fn from_f64(x: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        if x == 0.0 {
            return Some(Dyadic::zero());
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (man, exp) = if raw_exp == 0 {
            (frac, -1074) // subnormal
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Some(Dyadic::new(BigInt::from(sign) * BigInt::from(man), exp))
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.man.is_positive()
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    /// Bit length of the mantissa.
    pub fn precision_bits(&self) -> u64 {
        self.man.bits()
    }

    /// `floor(log2 |x|)` for nonzero `x`.
    pub fn log2_floor(&self) -> i64 {
        debug_assert!(!self.is_zero());
        self.exp + self.man.bits() as i64 - 1
    }

    pub fn neg(&self) -> Self {
        Dyadic { man: -&self.man, exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        Dyadic { man: self.man.abs(), exp: self.exp }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.exp >= other.exp {
            let shift = (self.exp - other.exp) as u64;
            Dyadic::new((&self.man << shift) + &other.man, other.exp)
        } else {
            let shift = (other.exp - self.exp) as u64;
            Dyadic::new(&self.man + (&other.man << shift), self.exp)
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Dyadic::zero();
        }
        Dyadic::new(&self.man * &other.man, self.exp + other.exp)
    }

    /// Multiplies by `2^k`.
    pub fn shl(&self, k: i64) -> Self {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { man: self.man.clone(), exp: self.exp + k }
    }

    pub fn cmp_dyadic(&self, other: &Self) -> Ordering {
        let sa = self.man.sign();
        let sb = other.man.sign();
        match (sa, sb) {
            (Sign::Minus, Sign::NoSign) | (Sign::Minus, Sign::Plus) | (Sign::NoSign, Sign::Plus) => {
                return Ordering::Less
            }
            (Sign::Plus, Sign::NoSign) | (Sign::Plus, Sign::Minus) | (Sign::NoSign, Sign::Minus) => {
                return Ordering::Greater
            }
            (Sign::NoSign, Sign::NoSign) => return Ordering::Equal,
            _ => {}
        }
        if self.exp >= other.exp {
            (&self.man << (self.exp - other.exp) as u64).cmp(&other.man)
        } else {
            self.man.cmp(&(&other.man << (other.exp - self.exp) as u64))
        }
    }

    pub fn min_dyadic(a: &Self, b: &Self) -> Self {
        if a.cmp_dyadic(b) == Ordering::Greater { b.clone() } else { a.clone() }
    }

    pub fn max_dyadic(a: &Self, b: &Self) -> Self {
        if a.cmp_dyadic(b) == Ordering::Less { b.clone() } else { a.clone() }
    }

    /// Directed rounding to at most `prec` mantissa bits.
    pub fn round(&self, prec: u32, dir: Round) -> Self {
        let bits = self.man.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let drop = (bits - prec as u64) as i64;
        let floor_shifted = self.man.div_floor(&(BigInt::one() << drop as u64));
        let exact = (&floor_shifted << drop as u64) == self.man;
        let m = match dir {
            Round::Down => floor_shifted,
            Round::Up => {
                if exact {
                    floor_shifted
                } else {
                    floor_shifted + 1
                }
            }
        };
        Dyadic::new(m, self.exp + drop)
    }

    /// Round-to-nearest with an upper bound on the absolute error committed.
    pub fn round_nearest(&self, prec: u32) -> (Self, Self) {
        let bits = self.man.bits();
        if bits <= prec as u64 {
            return (self.clone(), Dyadic::zero());
        }
        let drop = (bits - prec as u64) as i64;
        let half = BigInt::one() << (drop - 1) as u64;
        let m = (&self.man + &half).div_floor(&(BigInt::one() << drop as u64));
        let rounded = Dyadic::new(m, self.exp + drop);
        let err = Dyadic::new(BigInt::one(), self.exp + drop - 1);
        (rounded, err)
    }

    /// `self / other` rounded in the given direction with `prec` result bits.
    pub fn div(&self, other: &Self, prec: u32, dir: Round) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let bits_a = self.man.bits() as i64;
        let bits_b = other.man.bits() as i64;
        let k = (prec as i64 + 2 + bits_b - bits_a).max(0) as u64;
        let num = &self.man << k;
        let (q, r) = num.div_rem(&other.man);
        // div_rem truncates toward zero; fix up for the directed result
        let exact = r.is_zero();
        let negative = self.man.is_negative() != other.man.is_negative();
        let q = match dir {
            Round::Down => {
                if !exact && negative {
                    q - 1
                } else {
                    q
                }
            }
            Round::Up => {
                if !exact && !negative {
                    q + 1
                } else {
                    q
                }
            }
        };
        Dyadic::new(q, self.exp - other.exp - k as i64).round(prec + 4, dir)
    }

    /// `self^(1/n)` for `self >= 0`, rounded in the given direction.
    pub fn nth_root(&self, n: u32, prec: u32, dir: Round) -> Self {
        assert!(!self.is_negative(), "nth_root of a negative dyadic");
        assert!(n >= 1);
        if self.is_zero() {
            return Dyadic::zero();
        }
        if n == 1 {
            return self.round(prec, dir);
        }
        let n64 = n as i64;
        let bits = self.man.bits() as i64;
        let want = (n as i64) * (prec as i64 + 2);
        let mut s = (want - bits).max(0);
        // make exp - s divisible by n
        let rem = (self.exp - s).rem_euclid(n64);
        s += rem;
        let scaled = &self.man << s as u64;
        let root = scaled.nth_root(n);
        let out_exp = (self.exp - s) / n64;
        let exact = num_traits::Pow::pow(&root, n) == scaled;
        let m = match dir {
            Round::Down => root,
            Round::Up => {
                if exact {
                    root
                } else {
                    root + 1
                }
            }
        };
        Dyadic::new(m, out_exp).round(prec + 4, dir)
    }

    /// Integer power, exact.
    pub fn pow_u64(&self, e: u64) -> Self {
        let mut acc = Dyadic::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.man << self.exp as u64)
        } else {
            BigRational::new(self.man.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    pub fn from_rational(q: &BigRational, prec: u32, dir: Round) -> Self {
        let num = Dyadic::from_bigint(q.numer().clone());
        let den = Dyadic::from_bigint(q.denom().clone());
        num.div(&den, prec, dir)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.man.bits();
        let drop = bits as i64 - 53;
        let top = self.man.div_floor(&(BigInt::one() << drop.max(0) as u64));
        let e = self.exp + drop.max(0);
        let t = top.to_f64().unwrap_or(f64::NAN);
        if e > 1100 {
            if t > 0.0 { f64::INFINITY } else { f64::NEG_INFINITY }
        } else if e < -1130 {
            0.0
        } else {
            // split the scaling so no single power of two overflows
            let a = e.clamp(-600, 600);
            let b = e - a;
            t * 2f64.powi(a as i32) * 2f64.powi(b as i32)
        }
    }

    /// Decimal string with `sig` significant digits, rounding away from zero
    /// when `outward` (so magnitudes never shrink; used for radii).
    pub fn to_decimal(&self, sig: usize, outward: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let sig = sig.max(1);
        let neg = self.man.is_negative();
        let man = self.man.abs();
        // value = man · 2^exp; find dec_exp = floor(log10 |x|)
        let log2 = self.log2_floor();
        let mut dec_exp = ((log2 as f64) * std::f64::consts::LOG10_2).floor() as i64;
        // digits = round(|x| / 10^(dec_exp - sig + 1))
        let digits_of = |dec_exp: i64| -> BigInt {
            let k = dec_exp - sig as i64 + 1;
            // |x| · 10^(-k) = man · 2^exp · 10^(-k)
            let mut num = man.clone();
            let mut den = BigInt::one();
            if self.exp >= 0 {
                num <<= self.exp as u64;
            } else {
                den <<= (-self.exp) as u64;
            }
            if k <= 0 {
                num *= BigInt::from(10u32).pow((-k) as u32);
            } else {
                den *= BigInt::from(10u32).pow(k as u32);
            }
            let (q, r) = num.div_rem(&den);
            if outward {
                if r.is_zero() {
                    q
                } else {
                    q + 1
                }
            } else {
                // round to nearest
                if &r * 2 >= den {
                    q + 1
                } else {
                    q
                }
            }
        };
        let mut digits = digits_of(dec_exp);
        let ten_sig = BigInt::from(10u32).pow(sig as u32);
        if digits >= ten_sig {
            dec_exp += 1;
            digits = digits_of(dec_exp);
        }
        let ds = digits.to_string();
        let ds = if ds.len() < sig {
            // leading zeros lost (value just below a power of ten)
            format!("{}{}", "0".repeat(sig - ds.len()), ds)
        } else {
            ds
        };
        let sign = if neg { "-" } else { "" };
        // plain notation for moderate exponents, scientific otherwise
        if (-6..=20).contains(&dec_exp) {
            let e = dec_exp;
            if e >= 0 {
                let ei = e as usize;
                if ei + 1 >= ds.len() {
                    let zeros = ei + 1 - ds.len();
                    format!("{}{}{}", sign, ds, "0".repeat(zeros))
                } else {
                    format!("{}{}.{}", sign, &ds[..ei + 1], &ds[ei + 1..])
                }
            } else {
                format!("{}0.{}{}", sign, "0".repeat((-e - 1) as usize), ds)
            }
        } else {
            let head = &ds[..1];
            let tail = ds[1..].trim_end_matches('0');
            if tail.is_empty() {
                format!("{}{}e{}", sign, head, dec_exp)
            } else {
                format!("{}{}.{}e{}", sign, head, tail, dec_exp)
            }
        }
    }
}

impl std::fmt::Display for Dyadic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_decimal(17, false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    #[test]
    fn normalization() {
        assert_eq!(d(8, 0), d(1, 3));
        assert_eq!(d(0, 5), Dyadic::zero());
        assert_eq!(d(12, -2), d(3, 0));
    }

    #[test]
    fn arithmetic() {
        assert_eq!(d(1, -1).add(&d(1, -2)), d(3, -2)); // 1/2 + 1/4 = 3/4
        assert_eq!(d(3, 0).mul(&d(5, -4)), d(15, -4));
        assert_eq!(d(1, 0).sub(&d(1, -3)), d(7, -3));
        assert_eq!(d(5, 2).shl(-2), d(5, 0));
    }

    #[test]
    fn comparison() {
        assert_eq!(d(1, -1).cmp_dyadic(&d(3, -2)), Ordering::Less);
        assert_eq!(d(-1, 10).cmp_dyadic(&d(1, -10)), Ordering::Less);
        assert_eq!(d(7, -3).cmp_dyadic(&d(7, -3)), Ordering::Equal);
    }

    #[test]
    fn rounding_directions() {
        let x = d(0b10110111, 0); // 183
        let down = x.round(4, Round::Down);
        let up = x.round(4, Round::Up);
        assert!(down.cmp_dyadic(&x) != Ordering::Greater);
        assert!(up.cmp_dyadic(&x) != Ordering::Less);
        assert!(down.precision_bits() <= 4);
        // negative values round symmetrically
        let y = x.neg();
        let down_n = y.round(4, Round::Down);
        let up_n = y.round(4, Round::Up);
        assert_eq!(down_n, up.neg());
        assert_eq!(up_n, down.neg());
    }

    #[test]
    fn nearest_rounding_error_bound() {
        let x = d(1000003, -7);
        let (r, err) = x.round_nearest(10);
        let diff = r.sub(&x).abs();
        assert!(diff.cmp_dyadic(&err) != Ordering::Greater);
    }

    #[test]
    fn division_brackets_quotient() {
        let a = d(1, 0);
        let b = d(3, 0);
        let lo = a.div(&b, 30, Round::Down);
        let hi = a.div(&b, 30, Round::Up);
        assert_eq!(lo.cmp_dyadic(&hi), Ordering::Less);
        let third = BigRational::new(1.into(), 3.into());
        assert!(lo.to_rational() < third && third < hi.to_rational());
        let gap = hi.sub(&lo);
        assert!(gap.cmp_dyadic(&d(1, -28)) == Ordering::Less);
        // negative numerator
        let lo = a.neg().div(&b, 30, Round::Down);
        let hi = a.neg().div(&b, 30, Round::Up);
        assert!(lo.to_rational() < -third.clone() && -third < hi.to_rational());
    }

    #[test]
    fn roots_bracket() {
        let two = d(2, 0);
        let lo = two.nth_root(2, 60, Round::Down);
        let hi = two.nth_root(2, 60, Round::Up);
        assert!(lo.mul(&lo).cmp_dyadic(&two) != Ordering::Greater);
        assert!(hi.mul(&hi).cmp_dyadic(&two) != Ordering::Less);
        let gap = hi.sub(&lo);
        assert!(gap.cmp_dyadic(&d(1, -55)) == Ordering::Less);
        // exact cube root
        let x = d(27, 0).nth_root(3, 20, Round::Down);
        assert_eq!(x, d(3, 0));
        // root of a tiny number with negative exponent
        let t = d(1, -200);
        let r = t.nth_root(2, 40, Round::Up);
        assert!(r.mul(&r).cmp_dyadic(&t) != Ordering::Less);
    }

    #[test]
    fn f64_round_trips() {
        for x in [0.0, 1.5, -3.75, 1e-300, 123456789.0e10] {
            let dy = Dyadic::from_f64(x).unwrap();
            assert_eq!(dy.to_f64(), x);
        }
        assert!(Dyadic::from_f64(f64::INFINITY).is_none());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(d(1, -1).to_decimal(3, false), "0.500");
        assert_eq!(d(3, 0).to_decimal(1, false), "3");
        assert_eq!(d(-5, -2).to_decimal(2, false), "-1.3"); // -1.25 rounds to -1.3? nearest: -1.2 or -1.3; away on tie gives -1.3
        let tiny = d(1, -100);
        let s = tiny.to_decimal(4, true);
        assert!(s.contains('e'));
        assert_eq!(Dyadic::zero().to_decimal(5, false), "0");
    }

    #[test]
    fn rational_conversion() {
        let q = BigRational::new(22.into(), 7.into());
        let lo = Dyadic::from_rational(&q, 40, Round::Down);
        let hi = Dyadic::from_rational(&q, 40, Round::Up);
        assert!(lo.to_rational() <= q && q <= hi.to_rational());
    }
}

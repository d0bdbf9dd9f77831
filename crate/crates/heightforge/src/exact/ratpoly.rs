//! Rational polynomials: gcds, exact division, squarefree decomposition.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::intpoly::IntPolynomial;
use crate::error::{Error, Result};

/// A polynomial over `Q`, trimmed so the leading coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPolynomial {
    coeffs: Vec<BigRational>,
}

impl RatPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        RatPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        RatPolynomial { coeffs: vec![] }
    }

    pub fn constant(c: BigRational) -> Self {
        RatPolynomial::new(vec![c])
    }

    pub fn from_int(f: &IntPolynomial) -> Self {
        RatPolynomial::new(
            f.coeffs()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPolynomial::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPolynomial::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RatPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPolynomial::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RatPolynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return RatPolynomial::zero();
        }
        RatPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return RatPolynomial::zero();
        }
        let lc = self.leading_coeff();
        self.scale(&lc.recip())
    }

    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree().unwrap();
        let lc = divisor.leading_coeff();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (RatPolynomial::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = std::mem::replace(&mut rem[i], BigRational::zero()) / &lc;
            if q.is_zero() {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().take(dd).enumerate() {
                let t = &q * c;
                rem[i - dd + j] -= t;
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        (RatPolynomial::new(quot), RatPolynomial::new(rem))
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::ZeroInput("inexact polynomial division".into()))
        }
    }

    /// Clears denominators: returns `(den, den·self as IntPolynomial)` with
    /// the smallest positive common denominator.
    pub fn clear_denominators(&self) -> (BigInt, IntPolynomial) {
        use num_integer::Integer;
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let scaled = IntPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
                .collect(),
        );
        (den, scaled)
    }

    /// Primitive integer model: content in Q pulled out so the result is a
    /// primitive integer polynomial with positive leading coefficient.
    pub fn primitive_int_model(&self) -> Result<(BigRational, IntPolynomial)> {
        if self.is_zero() {
            return Err(Error::ZeroInput("primitive part of zero".into()));
        }
        let (den, scaled) = self.clear_denominators();
        let (content, mut prim) = scaled.content_primitive()?;
        let mut c = BigRational::new(content, den);
        if prim.leading_coeff().is_negative() {
            prim = prim.neg();
            c = -c;
        }
        Ok((c, prim))
    }
}

/// Monic gcd over `Q` by the Euclidean algorithm. Returns the monic gcd,
/// or zero when both inputs are zero.
pub fn poly_gcd(f: &RatPolynomial, g: &RatPolynomial) -> RatPolynomial {
    let mut a = f.clone();
    let mut b = g.clone();
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b);
        a = b;
        b = r;
    }
    a.monic()
}

/// Extended Euclid over `Q`: returns `(g, s, t)` with `s·f + t·g_in = g`,
/// `g` the monic gcd.
pub fn poly_xgcd(f: &RatPolynomial, g: &RatPolynomial) -> (RatPolynomial, RatPolynomial, RatPolynomial) {
    let mut r0 = f.clone();
    let mut r1 = g.clone();
    let mut s0 = RatPolynomial::constant(BigRational::one());
    let mut s1 = RatPolynomial::zero();
    let mut t0 = RatPolynomial::zero();
    let mut t1 = RatPolynomial::constant(BigRational::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s2 = s0.sub(&q.mul(&s1));
        let t2 = t0.sub(&q.mul(&t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    if r0.is_zero() {
        return (r0, s0, t0);
    }
    let lc = r0.leading_coeff().recip();
    let c = RatPolynomial::constant(lc);
    (r0.mul(&c), s0.mul(&c), t0.mul(&c))
}

/// Yun's squarefree decomposition in characteristic zero:
/// `f = lc · prod a_i^i` with the `a_i` monic, squarefree, pairwise coprime.
/// Returns `(lc, [(a_i, i)])` with constant `a_i` entries dropped.
pub fn squarefree_decomposition(f: &RatPolynomial) -> Result<(BigRational, Vec<(RatPolynomial, usize)>)> {
    if f.is_zero() {
        return Err(Error::ZeroInput("squarefree decomposition of zero".into()));
    }
    let lc = f.leading_coeff();
    let f = f.monic();
    if f.degree() == Some(0) {
        return Ok((lc, vec![]));
    }
    let df = f.derivative();
    let a = poly_gcd(&f, &df);
    let mut b = f.div_exact(&a)?;
    let mut c = df.div_exact(&a)?.sub(&b.derivative());
    let mut out = Vec::new();
    let mut i = 1usize;
    while b.degree().map_or(false, |d| d > 0) {
        let ai = poly_gcd(&b, &c);
        if ai.degree().map_or(false, |d| d > 0) {
            out.push((ai.clone(), i));
        }
        b = b.div_exact(&ai)?;
        c = c.div_exact(&ai)?.sub(&b.derivative());
        i += 1;
    }
    Ok((lc, out))
}

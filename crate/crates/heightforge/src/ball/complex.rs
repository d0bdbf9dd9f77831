//! Complex rectangular enclosures.

use num_bigint::BigInt;

use super::dyadic::Dyadic;
use super::real::Ball;
use crate::error::Result;
use crate::exact::IntPolynomial;

/// A complex enclosure: the rectangle `re × im`. Operations return
/// rectangles containing the exact image of the operands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexBall {
    pub re: Ball,
    pub im: Ball,
}

impl ComplexBall {
    pub fn new(re: Ball, im: Ball) -> Self {
        ComplexBall { re, im }
    }

    pub fn from_real(re: Ball) -> Self {
        ComplexBall { re, im: Ball::zero() }
    }

    pub fn exact(re: Dyadic, im: Dyadic) -> Self {
        ComplexBall {
            re: Ball::exact(re),
            im: Ball::exact(im),
        }
    }

    pub fn zero() -> Self {
        ComplexBall::from_real(Ball::zero())
    }

    pub fn one() -> Self {
        ComplexBall::from_real(Ball::one())
    }

    /// True when the imaginary part is identically zero (not merely an
    /// enclosure of zero).
    pub fn is_exactly_real(&self) -> bool {
        self.im.is_exact() && self.im.mid().is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexBall {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn neg(&self) -> Self {
        ComplexBall {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn add(&self, other: &Self, prec: u32) -> Self {
        ComplexBall {
            re: self.re.add(&other.re, prec),
            im: self.im.add(&other.im, prec),
        }
    }

    pub fn sub(&self, other: &Self, prec: u32) -> Self {
        ComplexBall {
            re: self.re.sub(&other.re, prec),
            im: self.im.sub(&other.im, prec),
        }
    }

    pub fn mul(&self, other: &Self, prec: u32) -> Self {
        let ac = self.re.mul(&other.re, prec);
        let bd = self.im.mul(&other.im, prec);
        let ad = self.re.mul(&other.im, prec);
        let bc = self.im.mul(&other.re, prec);
        ComplexBall {
            re: ac.sub(&bd, prec),
            im: ad.add(&bc, prec),
        }
    }

    pub fn mul_real(&self, other: &Ball, prec: u32) -> Self {
        ComplexBall {
            re: self.re.mul(other, prec),
            im: self.im.mul(other, prec),
        }
    }

    /// Squared modulus as a tight nonnegative ball.
    pub fn norm_sq(&self, prec: u32) -> Ball {
        self.re.square(prec).add(&self.im.square(prec), prec)
    }

    /// Modulus `|z|` as a nonnegative ball.
    pub fn modulus(&self, prec: u32) -> Ball {
        self.norm_sq(prec)
            .clamp_nonneg()
            .sqrt(prec)
            .expect("clamped enclosure is nonnegative")
    }

    pub fn div(&self, other: &Self, prec: u32) -> Result<Self> {
        let n = other.norm_sq(prec);
        let inv_n = n.recip(prec)?;
        let num = self.mul(&other.conj(), prec);
        Ok(num.mul_real(&inv_n, prec))
    }

    pub fn recip(&self, prec: u32) -> Result<Self> {
        ComplexBall::one().div(self, prec)
    }

    pub fn contains(&self, other: &ComplexBall) -> bool {
        self.re.contains(&other.re) && self.im.contains(&other.im)
    }

    pub fn intersects(&self, other: &ComplexBall) -> bool {
        self.re.intersects(&other.re) && self.im.intersects(&other.im)
    }

    pub fn intersect(&self, other: &ComplexBall) -> Result<ComplexBall> {
        Ok(ComplexBall {
            re: self.re.intersect(&other.re)?,
            im: self.im.intersect(&other.im)?,
        })
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    /// The larger of the two half-widths; a box is "smaller than r" when
    /// this is.
    pub fn half_width(&self) -> Dyadic {
        Dyadic::max_dyadic(self.re.rad(), self.im.rad())
    }

    /// Evaluates an integer polynomial by Horner's rule.
    pub fn eval_int_poly(&self, f: &IntPolynomial, prec: u32) -> ComplexBall {
        let mut acc = ComplexBall::zero();
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(self, prec);
            acc.re = acc.re.add(&Ball::from_bigint(c), prec);
        }
        acc
    }

    /// Evaluates with coefficients given low-to-high as complex balls.
    pub fn eval_poly(&self, coeffs: &[ComplexBall], prec: u32) -> ComplexBall {
        let mut acc = ComplexBall::zero();
        for c in coeffs.iter().rev() {
            acc = acc.mul(self, prec).add(c, prec);
        }
        acc
    }
}

impl std::fmt::Display for ComplexBall {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}) + ({})i", self.re, self.im)
    }
}

/// Coefficient balls of `prod (x - z_k)` expanded in complex ball
/// arithmetic, low-to-high; used to cross-check root isolation.
pub fn expand_from_roots(roots: &[ComplexBall], prec: u32) -> Vec<ComplexBall> {
    let mut coeffs = vec![ComplexBall::one()];
    for z in roots {
        let mut next = vec![ComplexBall::zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c, prec);
            next[i] = next[i].sub(&c.mul(z, prec), prec);
        }
        coeffs = next;
    }
    coeffs
}

/// Helper for tests and diagnostics: an exact complex ball from integers.
pub fn from_ints(re: &BigInt, im: &BigInt) -> ComplexBall {
    ComplexBall::exact(
        Dyadic::from_bigint(re.clone()),
        Dyadic::from_bigint(im.clone()),
    )
}

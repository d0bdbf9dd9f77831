//! Elements of a presented number field, stored as integer polynomials in
//! the generator over a positive denominator.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::NumberField;
use crate::error::{Error, Result};
use crate::exact::intpoly::resultant;
use crate::exact::ratpoly::poly_xgcd;
use crate::exact::{IntPolynomial, RatPolynomial};

/// An element `num(θ)/den` of a number field.
///
/// Invariants: `deg num < [K:Q]`, `den > 0`, and `gcd(content(num), den) = 1`
/// (zero is stored as `0/1`). Arithmetic between elements of structurally
/// different fields panics; the CLI layer rejects such inputs up front.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    num: IntPolynomial,
    den: BigInt,
}

impl FieldElement {
    fn normalized(field: Arc<NumberField>, num: IntPolynomial, den: BigInt) -> Self {
        debug_assert!(!den.is_zero(), "denominator must be nonzero");
        let (_, mut num) = num.div_rem_monic(field.defining_polynomial());
        let mut den = den;
        if num.is_zero() {
            return FieldElement {
                field,
                num,
                den: BigInt::one(),
            };
        }
        if den.is_negative() {
            num = num.neg();
            den = -den;
        }
        let content = num
            .coeffs()
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let g = content.gcd(&den);
        if !g.is_one() {
            num = IntPolynomial::new(num.coeffs().iter().map(|c| c / &g).collect());
            den /= &g;
        }
        FieldElement { field, num, den }
    }

    pub fn zero(field: Arc<NumberField>) -> Self {
        FieldElement::normalized(field, IntPolynomial::zero(), BigInt::one())
    }

    pub fn one(field: Arc<NumberField>) -> Self {
        FieldElement::normalized(field, IntPolynomial::one(), BigInt::one())
    }

    /// The class of `x`: the distinguished generator θ. For a linear
    /// presentation `x - a` this is the rational number `a`.
    pub fn generator(field: Arc<NumberField>) -> Self {
        FieldElement::normalized(field, IntPolynomial::monomial(BigInt::one(), 1), BigInt::one())
    }

    pub fn from_integer(field: Arc<NumberField>, n: BigInt) -> Self {
        FieldElement::normalized(field, IntPolynomial::constant(n), BigInt::one())
    }

    pub fn from_i64(field: Arc<NumberField>, n: i64) -> Self {
        FieldElement::from_integer(field, BigInt::from(n))
    }

    pub fn from_rational(field: Arc<NumberField>, q: BigRational) -> Self {
        let numer = q.numer().clone();
        let denom = q.denom().clone();
        FieldElement::normalized(field, IntPolynomial::constant(numer), denom)
    }

    /// `g(θ)` for an integer polynomial `g` of any degree.
    pub fn from_integer_poly(field: Arc<NumberField>, g: IntPolynomial) -> Self {
        FieldElement::normalized(field, g, BigInt::one())
    }

    /// `g(θ)` for a rational polynomial `g` of any degree.
    pub fn from_rational_poly(field: Arc<NumberField>, g: &RatPolynomial) -> Self {
        let (den, num) = g.clear_denominators();
        FieldElement::normalized(field, num, den)
    }

    /// Builds `sum c_i θ^i` from rational coordinates.
    pub fn from_coordinates(field: Arc<NumberField>, coords: &[BigRational]) -> Self {
        FieldElement::from_rational_poly(field, &RatPolynomial::new(coords.to_vec()))
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn numerator(&self) -> &IntPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Coordinates over `Q` in the power basis `1, θ, ..., θ^(d-1)`.
    pub fn coordinates(&self) -> Vec<BigRational> {
        (0..self.field.degree())
            .map(|i| BigRational::new(self.num.coeff(i), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num == IntPolynomial::one()
    }

    /// The element as a rational number, when it lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.degree().map_or(true, |d| d == 0) {
            Some(BigRational::new(self.num.coeff(0), self.den.clone()))
        } else {
            None
        }
    }

    fn check_field(&self, other: &Self) {
        assert!(
            *self.field == *other.field,
            "elements live in different field presentations"
        );
    }

    pub fn neg(&self) -> Self {
        FieldElement {
            field: self.field.clone(),
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_field(other);
        let num = self
            .num
            .scale(&other.den)
            .add(&other.num.scale(&self.den));
        FieldElement::normalized(self.field.clone(), num, &self.den * &other.den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_field(other);
        let num = self.num.mul(&other.num);
        FieldElement::normalized(self.field.clone(), num, &self.den * &other.den)
    }

    pub fn mul_rational(&self, q: &BigRational) -> Self {
        FieldElement::normalized(
            self.field.clone(),
            self.num.scale(q.numer()),
            &self.den * q.denom(),
        )
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = FieldElement::one(self.field.clone());
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `1, α, α², ..., α^n`.
    pub fn powers(&self, n: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(FieldElement::one(self.field.clone()));
        for i in 1..=n {
            let prev = &out[i - 1];
            out.push(prev.mul(self));
        }
        out
    }

    /// Multiplicative inverse via the extended Euclidean algorithm:
    /// `s·num + t·f = 1` over `Q` gives `num(θ)^(-1) = s(θ)`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInput("inverse of zero".into()));
        }
        let num_rat = RatPolynomial::from_int(&self.num);
        let f_rat = RatPolynomial::from_int(self.field.defining_polynomial());
        let (g, s, _) = poly_xgcd(&num_rat, &f_rat);
        debug_assert_eq!(
            g.degree(),
            Some(0),
            "num has degree < deg f and f is irreducible, so they are coprime"
        );
        let scaled = s.scale(&BigRational::from_integer(self.den.clone()));
        Ok(FieldElement::from_rational_poly(self.field.clone(), &scaled))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// The field norm `N(α) = prod of the conjugates`, computed exactly as
    /// `Res(f, num) / den^d`.
    pub fn norm(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let d = self.field.degree();
        let res = resultant(self.field.defining_polynomial(), &self.num)
            .expect("both polynomials are nonzero");
        let mut den_pow = BigInt::one();
        for _ in 0..d {
            den_pow *= &self.den;
        }
        BigRational::new(res, den_pow)
    }

    /// Monic minimal polynomial of the element over `Q`, found as the first
    /// linear dependence among its powers in the power basis.
    pub fn minimal_polynomial(&self) -> RatPolynomial {
        let d = self.field.degree();
        let mut rows: Vec<(usize, Vec<BigRational>, Vec<BigRational>)> = Vec::new();
        let mut power = FieldElement::one(self.field.clone());
        for k in 0..=d {
            let mut v = power.coordinates();
            let mut combo = vec![BigRational::zero(); k + 1];
            combo[k] = BigRational::one();
            for (piv, rv, rc) in &rows {
                if !v[*piv].is_zero() {
                    let factor = &v[*piv] / &rv[*piv];
                    for i in 0..d {
                        let delta = &factor * &rv[i];
                        v[i] -= delta;
                    }
                    for (i, c) in rc.iter().enumerate() {
                        let delta = &factor * c;
                        combo[i] -= delta;
                    }
                }
            }
            if v.iter().all(|x| x.is_zero()) {
                // reductions only touch indices below k, so the result stays monic
                return RatPolynomial::new(combo);
            }
            let piv = v.iter().position(|x| !x.is_zero()).expect("nonzero vector");
            rows.push((piv, v, combo));
            power = power.mul(self);
        }
        unreachable!("powers 1..=d of an element of a degree-d field are dependent")
    }

    /// Degree of `Q(α)` over `Q`.
    pub fn degree_over_q(&self) -> usize {
        self.minimal_polynomial().degree().expect("minimal polynomial is nonconstant")
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.num == other.num && self.den == other.den
    }
}

impl Eq for FieldElement {}

impl std::fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FieldElement(({})/{})", self.num, self.den)
    }
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{}", q);
        }
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

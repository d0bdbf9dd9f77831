//! Local absolute values and the global product formula.
//!
//! Archimedean values come back as certified balls; finite values are exact
//! rational powers of `p`, read off resultants against the place's local
//! factor at a p-adic depth that is escalated until the observed valuation
//! is provably the true one.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ball::{refine, tighten_enclosure, Ball, Dyadic, Precision};
use crate::error::{Error, Result};
use crate::exact::hensel::lift_pair;
use crate::exact::integers::{pow_u64, valuation};
use crate::exact::intpoly::resultant;
use crate::exact::modp::ModPoly;
use crate::exact::IntPolynomial;
use crate::field::FieldElement;

use super::{
    archimedean_places, finite_places_above, nonunit_primes, Place, PlaceKind, LIFT_CAP,
    TRUST_MARGIN,
};

/// Whether `|·|_v` restricts to the classical value on `Q` (`Unnormalized`)
/// or carries the exponent `d_v/d` that makes the product formula
/// exponent-free (`Normalized`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    Unnormalized,
    Normalized,
}

/// An exact finite-place value: zero, or `p` raised to a rational exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdicValue {
    p: BigInt,
    // None encodes the value 0
    exp: Option<BigRational>,
}

impl PAdicValue {
    pub fn zero(p: BigInt) -> Self {
        PAdicValue { p, exp: None }
    }

    pub fn one(p: BigInt) -> Self {
        PAdicValue {
            p,
            exp: Some(BigRational::zero()),
        }
    }

    pub fn power(p: BigInt, exp: BigRational) -> Self {
        PAdicValue { p, exp: Some(exp) }
    }

    pub fn prime(&self) -> &BigInt {
        &self.p
    }

    pub fn is_zero(&self) -> bool {
        self.exp.is_none()
    }

    /// The exponent `e` with value `p^e`; `None` for the value zero.
    pub fn exponent(&self) -> Option<&BigRational> {
        self.exp.as_ref()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "values at different primes");
        match (&self.exp, &other.exp) {
            (Some(a), Some(b)) => PAdicValue::power(self.p.clone(), a + b),
            _ => PAdicValue::zero(self.p.clone()),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        match &self.exp {
            Some(e) => Ok(PAdicValue::power(self.p.clone(), -e)),
            None => Err(Error::ZeroInput("reciprocal of the zero value".into())),
        }
    }

    /// Raises to a positive rational power (zero stays zero).
    pub fn pow(&self, r: &BigRational) -> Self {
        assert!(r.is_positive(), "powers of values must be positive");
        match &self.exp {
            Some(e) => PAdicValue::power(self.p.clone(), e * r),
            None => PAdicValue::zero(self.p.clone()),
        }
    }

    /// Compares the value against 1. Zero compares as less.
    pub fn cmp_one(&self) -> Ordering {
        match &self.exp {
            Some(e) => e.cmp(&BigRational::zero()),
            None => Ordering::Less,
        }
    }

    pub fn max_with(&self, other: &Self) -> Self {
        if self.cmp_value(other) == Ordering::Less {
            other.clone()
        } else {
            self.clone()
        }
    }

    /// Compares two values at the same prime; zero is smallest.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        assert_eq!(self.p, other.p, "values at different primes");
        match (&self.exp, &other.exp) {
            (Some(a), Some(b)) => a.cmp(b),
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (None, None) => Ordering::Equal,
        }
    }

    /// The exact rational value when the exponent is integral; `None` for
    /// genuinely fractional powers.
    pub fn to_rational(&self) -> Option<BigRational> {
        let e = match &self.exp {
            None => return Some(BigRational::zero()),
            Some(e) => e,
        };
        if !e.is_integer() {
            return None;
        }
        Some(rational_prime_power(&self.p, &e.to_integer()))
    }

    /// A certified enclosure of the value at the given working precision.
    pub fn to_ball(&self, prec: u32) -> Result<Ball> {
        let e = match &self.exp {
            None => return Ok(Ball::zero()),
            Some(e) => e,
        };
        let num = e.numer().to_i64().ok_or_else(|| {
            Error::PrecisionExhausted("p-adic exponent too large to evaluate".into())
        })?;
        let den = e.denom().to_u32().ok_or_else(|| {
            Error::PrecisionExhausted("p-adic exponent denominator too large".into())
        })?;
        Ball::from_bigint(&self.p).pow_rational(num, den, prec)
    }
}

impl fmt::Display for PAdicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exp {
            None => write!(f, "0"),
            Some(e) if e.is_zero() => write!(f, "1"),
            Some(e) => write!(f, "{}^({})", self.p, e),
        }
    }
}

/// An exact positive product of rational prime powers `∏ p^{e_p}`, the
/// shape every finite-side height and norm product takes.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PPowerProduct {
    factors: BTreeMap<BigInt, BigRational>,
}

impl PPowerProduct {
    pub fn one() -> Self {
        PPowerProduct::default()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mul_power(&mut self, p: &BigInt, e: &BigRational) {
        if e.is_zero() {
            return;
        }
        let entry = self
            .factors
            .entry(p.clone())
            .or_insert_with(BigRational::zero);
        *entry = &*entry + e;
        if entry.is_zero() {
            self.factors.remove(p);
        }
    }

    /// Multiplies in a nonzero finite-place value.
    pub fn mul_value(&mut self, v: &PAdicValue) {
        let e = v.exponent().expect("zero cannot enter a power product");
        self.mul_power(&v.p, e);
    }

    pub fn mul(&mut self, other: &Self) {
        for (p, e) in &other.factors {
            self.mul_power(p, e);
        }
    }

    pub fn pow(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return PPowerProduct::one();
        }
        PPowerProduct {
            factors: self
                .factors
                .iter()
                .map(|(p, e)| (p.clone(), e * r))
                .collect(),
        }
    }

    /// The factors `(p, e_p)` with nonzero exponent, ascending in `p`.
    pub fn factors(&self) -> impl Iterator<Item = (&BigInt, &BigRational)> {
        self.factors.iter()
    }

    /// Exact rational value when every exponent is integral.
    pub fn to_rational(&self) -> Option<BigRational> {
        let mut out = BigRational::one();
        for (p, e) in &self.factors {
            if !e.is_integer() {
                return None;
            }
            out *= rational_prime_power(p, &e.to_integer());
        }
        Some(out)
    }

    pub fn to_ball(&self, prec: u32) -> Result<Ball> {
        let mut out = Ball::one();
        for (p, e) in &self.factors {
            let b = PAdicValue::power(p.clone(), e.clone()).to_ball(prec)?;
            out = out.mul(&b, prec);
        }
        Ok(out)
    }
}

/// The value of `|β|_v`: a ball at an archimedean place, an exact power of
/// `p` at a finite one.
#[derive(Clone, Debug)]
pub enum LocalValue {
    Archimedean(Ball),
    Finite(PAdicValue),
}

impl LocalValue {
    pub fn to_ball(&self, prec: u32) -> Result<Ball> {
        match self {
            LocalValue::Archimedean(b) => Ok(b.clone()),
            LocalValue::Finite(v) => v.to_ball(prec),
        }
    }

    pub fn as_finite(&self) -> Option<&PAdicValue> {
        match self {
            LocalValue::Finite(v) => Some(v),
            LocalValue::Archimedean(_) => None,
        }
    }

    pub fn as_archimedean(&self) -> Option<&Ball> {
        match self {
            LocalValue::Archimedean(b) => Some(b),
            LocalValue::Finite(_) => None,
        }
    }
}

/// `|β|_v` at `place`. Finite values are exact; archimedean values are
/// refined until the enclosure radius is at most `target`. Zero input gives
/// the zero value, not an error.
pub fn abs_value(
    beta: &FieldElement,
    place: &Place,
    normalization: Normalization,
    target: &Dyadic,
    precision: &Precision,
) -> Result<LocalValue> {
    if !place.matches_element(beta) {
        return Err(Error::FieldMismatch);
    }
    match &place.kind {
        PlaceKind::Archimedean { root } => {
            if beta.is_zero() {
                return Ok(LocalValue::Archimedean(Ball::zero()));
            }
            let b = refine(
                precision,
                |b: &Ball| b.rad().cmp_dyadic(target) != Ordering::Greater,
                |w| arch_value(beta, place, root, normalization, w, precision),
            )?;
            Ok(LocalValue::Archimedean(b))
        }
        PlaceKind::Finite { p, .. } => {
            if beta.is_zero() {
                return Ok(LocalValue::Finite(PAdicValue::zero(p.clone())));
            }
            let mut exp = finite_exponent(beta, place)?;
            if normalization == Normalization::Normalized {
                exp *= BigRational::new(
                    BigInt::from(place.local_degree()),
                    BigInt::from(place.field_degree()),
                );
            }
            Ok(LocalValue::Finite(PAdicValue::power(p.clone(), exp)))
        }
    }
}

fn arch_value(
    beta: &FieldElement,
    place: &Place,
    root: &crate::ball::RootEnclosure,
    normalization: Normalization,
    w: u32,
    precision: &Precision,
) -> Result<Ball> {
    let t = Dyadic::new(BigInt::one(), -(w as i64));
    let enc = tighten_enclosure(place.defining(), root, &t, precision)?;
    let num = enc.z.eval_int_poly(beta.numerator(), w).modulus(w);
    let den = Ball::from_bigint(beta.denominator());
    let val = num.div(&den, w)?.clamp_nonneg();
    match normalization {
        Normalization::Unnormalized => Ok(val),
        Normalization::Normalized => val.pow_rational(
            place.local_degree() as i64,
            place.field_degree() as u32,
            w,
        ),
    }
}

/// Unnormalized exponent `e` with `‖β‖_v = p^e`, for nonzero `β`.
///
/// For a numerator `g` of degree ≥ 1 this is read off `v_p(Res(F_v, g))`,
/// where `F_v` is the local factor lifted mod `p^k`: the resultant over the
/// true local factor is a product of `d_v` conjugate values, and truncating
/// the lift mod `p^k` cannot change `v_p` while it stays safely under `k`.
/// The stored lift is deepened (and memoized on the place) until that
/// certificate holds.
fn finite_exponent(beta: &FieldElement, place: &Place) -> Result<BigRational> {
    let (p, block, cofactor, lift) = match &place.kind {
        PlaceKind::Finite {
            p,
            block,
            cofactor,
            lift,
            ..
        } => (p, block, cofactor, lift),
        PlaceKind::Archimedean { .. } => unreachable!("finite exponent of an archimedean place"),
    };
    let num = beta.numerator();
    let v_den = BigInt::from(valuation(beta.denominator(), p)?);
    if num.degree() == Some(0) {
        // rational values restrict to Q at every place above p
        let v_num = BigInt::from(valuation(&num.coeff(0), p)?);
        return Ok(BigRational::from_integer(v_den - v_num));
    }
    let d_v = BigInt::from(place.local_degree());
    let mut state = lift.lock().expect("local factor lift poisoned");
    loop {
        let r = resultant(&state.factor, num)?;
        if !r.is_zero() {
            let v = valuation(&r, p)?;
            if v + TRUST_MARGIN <= state.depth {
                return Ok(BigRational::new(&v_den * &d_v - BigInt::from(v), d_v));
            }
        }
        if state.depth >= LIFT_CAP {
            return Err(Error::PrecisionExhausted(format!(
                "valuation at p = {} did not stabilize below the p^{} lift cap",
                p, LIFT_CAP
            )));
        }
        let depth = (state.depth * 2).min(LIFT_CAP);
        state.factor = relift_block(place.defining(), block, cofactor, p, depth)?;
        state.depth = depth;
    }
}

/// Re-lifts one block of `f` to depth `p^depth`.
fn relift_block(
    f: &IntPolynomial,
    block: &IntPolynomial,
    cofactor: &IntPolynomial,
    p: &BigInt,
    depth: u64,
) -> Result<IntPolynomial> {
    if cofactor.degree() == Some(0) {
        // the block is the whole polynomial
        let m = pow_u64(p, depth);
        return Ok(ModPoly::new(&m, f.coeffs().to_vec()).lift());
    }
    let g0 = ModPoly::from_int(block, p);
    let h0 = ModPoly::from_int(cofactor, p);
    Ok(lift_pair(f, &g0, &h0, p, depth)?.0)
}

/// Outcome of the global product formula check for one nonzero element:
/// the finite side is an exact rational identity, the archimedean side a
/// containment test against a certified enclosure.
#[derive(Clone, Debug)]
pub struct ProductFormulaReport {
    pub norm: BigRational,
    /// `∏ ‖β‖_v^{d_v}` over the finite places carrying a nontrivial value
    pub finite_product: BigRational,
    /// whether the finite product equals `1/|N(β)|` exactly
    pub finite_pass: bool,
    /// enclosure of `∏_{v|∞} ‖β‖_v^{d_v}`
    pub arch_product: Ball,
    /// whether the archimedean enclosure contains `|N(β)|`
    pub arch_pass: bool,
    /// unnormalized `‖β‖_v` per place id (the `d_v` exponents are applied in
    /// the products, not here)
    pub contributions: Vec<(String, LocalValue)>,
}

impl ProductFormulaReport {
    pub fn pass(&self) -> bool {
        self.finite_pass && self.arch_pass
    }
}

/// Checks the product formula `∏_v ‖β‖_v^{d_v} = 1` for a nonzero `β`,
/// split as an exact finite identity against `1/|N(β)|` and a certified
/// archimedean enclosure of `|N(β)|`.
///
/// Only primes dividing a denominator or the norm numerator are visited: at
/// any other prime `β` is integral at every `v` above it and the local
/// values multiply to `p^{-v_p(N(β))} = 1`, forcing each factor to be 1, so
/// skipping them loses nothing and keeps the check available at primes
/// whose decomposition this presentation cannot certify.
pub fn product_formula_check(
    beta: &FieldElement,
    target: &Dyadic,
    precision: &Precision,
) -> Result<ProductFormulaReport> {
    if beta.is_zero() {
        return Err(Error::ZeroInput(
            "the product formula concerns nonzero elements".into(),
        ));
    }
    let field = beta.field();
    let norm = beta.norm();
    let norm_abs = norm.abs();
    let mut contributions = Vec::new();
    let mut finite_product = BigRational::one();
    for p in nonunit_primes(std::slice::from_ref(beta))? {
        for place in finite_places_above(field, &p)? {
            let value = abs_value(beta, &place, Normalization::Unnormalized, target, precision)?;
            if let LocalValue::Finite(v) = &value {
                let e = v.exponent().expect("nonzero element");
                let scaled = e * BigRational::from_integer(BigInt::from(place.local_degree()));
                debug_assert!(scaled.is_integer(), "d_v times the exponent is integral");
                finite_product *= rational_prime_power(&p, &scaled.to_integer());
            }
            contributions.push((place.id().to_string(), value));
        }
    }
    let finite_pass = finite_product == norm_abs.recip();

    let arch_places = archimedean_places(field, precision)?;
    let arch_product = refine(
        precision,
        |b: &Ball| b.rad().cmp_dyadic(target) != Ordering::Greater,
        |w| {
            let t = Dyadic::new(BigInt::one(), -(w as i64));
            let mut prod = Ball::one();
            for place in &arch_places {
                let v = abs_value(beta, place, Normalization::Unnormalized, &t, precision)?;
                let b = v.as_archimedean().expect("archimedean place");
                prod = prod.mul(&b.pow_u64_nonneg(place.local_degree() as u64, w), w);
            }
            Ok(prod)
        },
    )?;
    let arch_pass = arch_product.contains_rational(&norm_abs);
    for place in &arch_places {
        let v = abs_value(beta, place, Normalization::Unnormalized, target, precision)?;
        contributions.push((place.id().to_string(), v));
    }
    Ok(ProductFormulaReport {
        norm,
        finite_product,
        finite_pass,
        arch_product,
        arch_pass,
        contributions,
    })
}

/// `p^n` as an exact rational, for any sign of `n`.
fn rational_prime_power(p: &BigInt, n: &BigInt) -> BigRational {
    let k = n.abs().to_u64().expect("prime exponent fits in u64");
    let pw = pow_u64(p, k);
    if n.is_negative() {
        BigRational::new(BigInt::one(), pw)
    } else {
        BigRational::from_integer(pw)
    }
}

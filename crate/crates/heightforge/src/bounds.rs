//! Congruence-driven height lower bounds. When two integer forms of the
//! same degree satisfy `T ≡ F (mod m)` coefficient by coefficient, every
//! algebraic zero of `F` that avoids the zero set of `T` obeys
//! `H(a)^{deg F} ≥ m / L¹∞(T)`: modulo `m` the value `T(a)` inherits the
//! vanishing of `F(a)`, which caps `U(a,T)` at every finite place by the
//! `m`-divisibility and leaves the Archimedean sup norm, itself at most the
//! coefficient sum, to absorb the rest of the global identity.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ball::{refine, Ball, Dyadic, Precision};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::functionals::HomogeneousPoly;
use crate::heights::{projective_height, ProjectiveVector};

/// Two integer forms of the same shape whose difference is divisible by the
/// modulus, the data feeding a height lower bound. `F` carries the variety,
/// `T` the auxiliary functional.
#[derive(Clone, Debug)]
pub struct CongruencePair {
    f: HomogeneousPoly,
    t: HomogeneousPoly,
    modulus: BigInt,
}

impl CongruencePair {
    pub fn new(f: HomogeneousPoly, t: HomogeneousPoly, modulus: BigInt) -> Result<Self> {
        if t.is_zero() {
            return Err(Error::ZeroInput(
                "the auxiliary form of a congruence pair is zero".into(),
            ));
        }
        check_congruence(&f, &t, &modulus)?;
        Ok(CongruencePair { f, t, modulus })
    }

    pub fn variety_form(&self) -> &HomogeneousPoly {
        &self.f
    }

    pub fn auxiliary_form(&self) -> &HomogeneousPoly {
        &self.t
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn degree(&self) -> u32 {
        self.f.degree()
    }
}

fn integer_coefficient(exps: &[u32], c: &FieldElement) -> Result<BigInt> {
    let q = c.as_rational().ok_or_else(|| {
        Error::CongruenceFailed("congruence forms must have rational coefficients".into())
    })?;
    if !q.is_integer() {
        return Err(Error::CongruenceFailed(format!(
            "coefficient {} of the term with exponents {:?} is not an integer",
            q, exps
        )));
    }
    Ok(q.to_integer())
}

/// Verifies that `f` and `t` are integer forms of the same shape with
/// `t − f ≡ 0 (mod m)`, every term counted whether it appears in one form
/// or both.
pub fn check_congruence(f: &HomogeneousPoly, t: &HomogeneousPoly, m: &BigInt) -> Result<()> {
    if f.num_vars() != t.num_vars() || f.degree() != t.degree() {
        return Err(Error::DimensionMismatch(format!(
            "congruence forms have shapes ({}, {}) and ({}, {})",
            f.num_vars(),
            f.degree(),
            t.num_vars(),
            t.degree()
        )));
    }
    if !f.field().is_rationals() || !t.field().is_rationals() {
        return Err(Error::DimensionMismatch(
            "congruence bounds are stated over the rationals".into(),
        ));
    }
    if !m.is_positive() {
        return Err(Error::ZeroInput("the congruence modulus must be positive".into()));
    }
    let exponents: std::collections::BTreeSet<&Vec<u32>> =
        f.terms().keys().chain(t.terms().keys()).collect();
    for exps in exponents {
        let cf = match f.terms().get(exps) {
            Some(c) => integer_coefficient(exps, c)?,
            None => BigInt::zero(),
        };
        let ct = match t.terms().get(exps) {
            Some(c) => integer_coefficient(exps, c)?,
            None => BigInt::zero(),
        };
        let diff = &ct - &cf;
        if !(&diff % m).is_zero() {
            return Err(Error::CongruenceFailed(format!(
                "term with exponents {:?} differs by {}, not divisible by {}",
                exps, diff, m
            )));
        }
    }
    Ok(())
}

/// `L¹∞(T)`: the sum of the absolute values of the coefficients, which
/// bounds the Archimedean sup norm on the unit polydisc. Errors on the zero
/// polynomial, whose bound would be vacuous.
pub fn l1_infty(t: &HomogeneousPoly) -> Result<BigRational> {
    if t.is_zero() {
        return Err(Error::ZeroInput(
            "the coefficient-sum norm of the zero polynomial".into(),
        ));
    }
    let mut sum = BigRational::zero();
    for c in t.terms().values() {
        let q = c.as_rational().ok_or_else(|| {
            Error::CongruenceFailed("coefficient-sum norms are computed over the rationals".into())
        })?;
        sum += q.abs();
    }
    Ok(sum)
}

/// A rational lower bound for `H(a)^{deg F}` over the zeros of the variety
/// form, with a flag for bounds no stronger than the trivial `H ≥ 1`.
#[derive(Clone, Debug)]
pub struct HeightBound {
    pub bound: BigRational,
    /// `true` when the bound is at most 1 and therefore says nothing beyond
    /// `H(a) ≥ 1`; a modulus of 1 always lands here.
    pub trivial: bool,
}

/// `m / L¹∞(T)`, the congruence height bound for the pair.
pub fn height_lower_bound(pair: &CongruencePair) -> Result<HeightBound> {
    let l1 = l1_infty(pair.auxiliary_form())?;
    let bound = BigRational::from_integer(pair.modulus().clone()) / l1;
    let trivial = bound <= BigRational::one();
    Ok(HeightBound { bound, trivial })
}

/// The outcome of checking a point against a pair's bound.
#[derive(Clone, Debug)]
pub struct PointCheck {
    pub bound: BigRational,
    pub trivial: bool,
    /// Enclosure of `H(a)^{deg F}`.
    pub height_power: Ball,
    pub degree: u32,
    /// The enclosure does not contradict the bound: its upper end reaches
    /// `bound − tolerance`.
    pub pass: bool,
    /// The enclosure contains the bound itself, so the bound is attained up
    /// to the working width.
    pub tight: bool,
}

fn eval_rational_form(
    form: &HomogeneousPoly,
    coords: &[FieldElement],
) -> Result<FieldElement> {
    let field = coords[0].field().clone();
    if coords.len() != form.num_vars() {
        return Err(Error::DimensionMismatch(format!(
            "point has {} coordinates, form has {} variables",
            coords.len(),
            form.num_vars()
        )));
    }
    let mut sum = FieldElement::zero(field.clone());
    for (exps, c) in form.terms() {
        let q = c.as_rational().ok_or_else(|| {
            Error::CongruenceFailed("congruence forms must have rational coefficients".into())
        })?;
        let mut term = FieldElement::from_rational(field.clone(), q);
        for (j, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                term = term.mul(&coords[j]);
            }
        }
        sum = sum.add(&term);
    }
    Ok(sum)
}

/// Checks a point of any number field against the pair's bound: the point
/// must lie on the variety (`F(a) = 0` exactly, else `PointNotOnVariety`)
/// and off the auxiliary zero set (`T(a) ≠ 0`, else
/// `PointOnAuxiliaryVariety`). Returns the enclosure of `H(a)^{deg F}`
/// together with the pass and tightness verdicts at the given tolerance.
pub fn verify_point(
    pair: &CongruencePair,
    a: &ProjectiveVector,
    tolerance: &Dyadic,
    precision: &Precision,
) -> Result<PointCheck> {
    if !tolerance.is_positive() {
        return Err(Error::InvalidEnclosure("tolerance must be positive".into()));
    }
    if !eval_rational_form(pair.variety_form(), a.coords())?.is_zero() {
        return Err(Error::PointNotOnVariety);
    }
    if eval_rational_form(pair.auxiliary_form(), a.coords())?.is_zero() {
        return Err(Error::PointOnAuxiliaryVariety);
    }
    let HeightBound { bound, trivial } = height_lower_bound(pair)?;
    let deg = pair.degree() as u64;
    let height_power = refine(
        precision,
        |b: &Ball| b.rad().shl(1).cmp_dyadic(tolerance) != std::cmp::Ordering::Greater,
        |w| {
            let t = Dyadic::new(BigInt::one(), -(w as i64));
            let h = projective_height(a, &t, precision)?;
            Ok(h.pow_u64_nonneg(deg, w))
        },
    )?;
    let pass = height_power.upper().to_rational() >= &bound - tolerance.to_rational();
    let tight = height_power.contains_rational(&bound);
    Ok(PointCheck {
        bound,
        trivial,
        height_power,
        degree: pair.degree(),
        pass,
        tight,
    })
}

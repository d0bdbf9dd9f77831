//! Auxiliary-functional machinery: sup norms of homogeneous polynomials,
//! quotient-norm values `U_v` and their global products, the induced map on
//! exterior powers, and verifiers for the global identities
//! `1 = H(a)^M · U(a,T)` and `1 = H(W) · U(W,Ψ)`.
//!
//! `U_v(a,T)` is the quotient norm `inf{ν_v(T−f) : f(a) = 0}`; the local
//! identity `|T(a)|_v = H_v(a)^M · U_v(a,T)` pins it to the closed form
//! `|T(a)|_v / H_v(a)^M`, which is what gets computed. The infimum side is
//! kept honest by the witness oracles (the infimum is attained at
//! `f* = T − T(a)·(z_n/a_n)^M` for a coordinate `a_n` of maximal value, and
//! `ν_v(T − f*)` is the value of a single monomial) and by property tests
//! that try random vanishing competitors.

mod supnorm;

pub use supnorm::{dual_norm, sup_norm, sup_norm_arch, sup_norm_finite};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::ball::{refine, Ball, Dyadic, Precision};
use crate::error::{Error, Result};
use crate::exact::RatPolynomial;
use crate::field::{FieldElement, NumberField};
use crate::heights::{determinant, m_subsets, weil_height, ProjectiveVector};
use crate::places::{
    abs_value, archimedean_places, finite_places_above, nonunit_primes, LocalValue, Normalization,
    PAdicValue, PPowerProduct, Place,
};

/// A homogeneous polynomial of degree `M` in `N` variables over a presented
/// field, stored as a map from exponent vectors to nonzero coefficients.
/// The zero polynomial is the empty map (its shape fields stay meaningful).
#[derive(Clone, Debug)]
pub struct HomogeneousPoly {
    field: Arc<NumberField>,
    num_vars: usize,
    degree: u32,
    terms: BTreeMap<Vec<u32>, FieldElement>,
}

impl HomogeneousPoly {
    pub fn new(
        field: Arc<NumberField>,
        num_vars: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Vec<u32>, FieldElement)>,
    ) -> Result<Self> {
        if num_vars == 0 {
            return Err(Error::DimensionMismatch(
                "a polynomial needs at least one variable".into(),
            ));
        }
        let mut map: BTreeMap<Vec<u32>, FieldElement> = BTreeMap::new();
        for (exps, c) in terms {
            if exps.len() != num_vars {
                return Err(Error::DimensionMismatch(format!(
                    "exponent vector {:?} does not have {} entries",
                    exps, num_vars
                )));
            }
            if exps.iter().map(|&e| e as u64).sum::<u64>() != degree as u64 {
                return Err(Error::DimensionMismatch(format!(
                    "term {:?} is not homogeneous of degree {}",
                    exps, degree
                )));
            }
            if c.field().as_ref() != field.as_ref() {
                return Err(Error::FieldMismatch);
            }
            let entry = map
                .entry(exps)
                .or_insert_with(|| FieldElement::zero(field.clone()));
            *entry = entry.add(&c);
        }
        map.retain(|_, c| !c.is_zero());
        Ok(HomogeneousPoly {
            field,
            num_vars,
            degree,
            terms: map,
        })
    }

    /// `c · x^exps`, a single term.
    pub fn monomial(
        field: Arc<NumberField>,
        num_vars: usize,
        exps: Vec<u32>,
        coeff: FieldElement,
    ) -> Result<Self> {
        let degree: u64 = exps.iter().map(|&e| e as u64).sum();
        HomogeneousPoly::new(field, num_vars, degree as u32, [(exps, coeff)])
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, FieldElement> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, coords: &[FieldElement]) -> Result<FieldElement> {
        if coords.len() != self.num_vars {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, polynomial has {} variables",
                coords.len(),
                self.num_vars
            )));
        }
        let mut sum = FieldElement::zero(self.field.clone());
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (j, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&coords[j]);
                }
            }
            sum = sum.add(&term);
        }
        Ok(sum)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.shape_check(other)?;
        let terms = self
            .terms
            .iter()
            .chain(other.terms.iter())
            .map(|(e, c)| (e.clone(), c.clone()));
        HomogeneousPoly::new(self.field.clone(), self.num_vars, self.degree, terms)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        HomogeneousPoly {
            field: self.field.clone(),
            num_vars: self.num_vars,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        let mut out = HomogeneousPoly {
            field: self.field.clone(),
            num_vars: self.num_vars,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k.mul(c)))
                .collect(),
        };
        if c.is_zero() {
            out.terms.clear();
        }
        out
    }

    /// Product of two homogeneous polynomials in the same variables; the
    /// degrees add.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.num_vars != other.num_vars {
            return Err(Error::DimensionMismatch(
                "products need matching variable counts".into(),
            ));
        }
        if self.field.as_ref() != other.field.as_ref() {
            return Err(Error::FieldMismatch);
        }
        let degree = self.degree + other.degree;
        let mut terms: Vec<(Vec<u32>, FieldElement)> = Vec::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                terms.push((exps, ca.mul(cb)));
            }
        }
        HomogeneousPoly::new(self.field.clone(), self.num_vars, degree, terms)
    }

    fn shape_check(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars || self.degree != other.degree {
            return Err(Error::DimensionMismatch(format!(
                "shapes ({}, {}) and ({}, {}) differ",
                self.num_vars, self.degree, other.num_vars, other.degree
            )));
        }
        if self.field.as_ref() != other.field.as_ref() {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }
}

impl fmt::Display for HomogeneousPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for (j, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{}", j + 1)?,
                    _ => write!(f, "*x{}^{}", j + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

/// A linear functional given by its coefficient vector: `x ↦ Σ c_i x_i`.
/// The domain may be `K^N` or a wedge space of dimension `C(N, M)`.
#[derive(Clone, Debug)]
pub struct LinearFunctional {
    field: Arc<NumberField>,
    coefficients: Vec<FieldElement>,
}

impl LinearFunctional {
    pub fn new(coefficients: Vec<FieldElement>) -> Result<Self> {
        let first = coefficients
            .first()
            .ok_or_else(|| Error::DimensionMismatch("a functional needs coefficients".into()))?;
        let field = first.field().clone();
        for c in &coefficients {
            if c.field().as_ref() != field.as_ref() {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(LinearFunctional {
            field,
            coefficients,
        })
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[FieldElement] {
        &self.coefficients
    }

    pub fn apply(&self, coords: &[FieldElement]) -> Result<FieldElement> {
        if coords.len() != self.coefficients.len() {
            return Err(Error::DimensionMismatch(format!(
                "functional on {} coordinates applied to {}",
                self.coefficients.len(),
                coords.len()
            )));
        }
        let mut sum = FieldElement::zero(self.field.clone());
        for (c, x) in self.coefficients.iter().zip(coords) {
            sum = sum.add(&c.mul(x));
        }
        Ok(sum)
    }

    /// The functional as a degree-1 homogeneous polynomial.
    pub fn to_homogeneous(&self) -> HomogeneousPoly {
        let n = self.coefficients.len();
        let terms = self.coefficients.iter().enumerate().map(|(i, c)| {
            let mut exps = vec![0u32; n];
            exps[i] = 1;
            (exps, c.clone())
        });
        HomogeneousPoly::new(self.field.clone(), n, 1, terms).expect("valid by construction")
    }
}

/// An `M×N` matrix over a presented field, the data of a linear map
/// `K^N → K^M` acting on column vectors by the given rows.
#[derive(Clone, Debug)]
pub struct LinearMap {
    field: Arc<NumberField>,
    rows: Vec<Vec<FieldElement>>,
}

impl LinearMap {
    pub fn new(rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let first = rows
            .first()
            .and_then(|r| r.first())
            .ok_or_else(|| Error::DimensionMismatch("a linear map needs entries".into()))?;
        let field = first.field().clone();
        let n = rows[0].len();
        for r in &rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch("ragged matrix rows".into()));
            }
            for c in r {
                if c.field().as_ref() != field.as_ref() {
                    return Err(Error::FieldMismatch);
                }
            }
        }
        Ok(LinearMap { field, rows })
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    pub fn apply(&self, coords: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if coords.len() != self.num_cols() {
            return Err(Error::DimensionMismatch(format!(
                "map on {} coordinates applied to {}",
                self.num_cols(),
                coords.len()
            )));
        }
        Ok(self
            .rows
            .iter()
            .map(|r| {
                let mut sum = FieldElement::zero(self.field.clone());
                for (c, x) in r.iter().zip(coords) {
                    sum = sum.add(&c.mul(x));
                }
                sum
            })
            .collect())
    }
}

/// The induced functional `∧^M(Ψ)` on the wedge space: its coordinate at the
/// column subset `I` (ascending, lexicographic order over subsets) is the
/// `M×M` minor of `Ψ` with those columns, rows in their given order. Applied
/// to `wedge_coordinates(w_1…w_M)` it returns `det(Ψ(w_i))` stacked, exactly
/// (Laplace expansion of the determinant of the product, shared sign
/// convention with `WedgeVector`).
pub fn exterior_power_map(psi: &LinearMap) -> Result<LinearFunctional> {
    let m = psi.num_rows();
    let n = psi.num_cols();
    if m > n {
        return Err(Error::DimensionMismatch(format!(
            "exterior power needs M ≤ N, got {}×{}",
            m, n
        )));
    }
    let mut coefficients = Vec::new();
    for subset in m_subsets(n, m) {
        let sub: Vec<Vec<FieldElement>> = psi
            .rows()
            .iter()
            .map(|r| subset.iter().map(|&j| r[j].clone()).collect())
            .collect();
        coefficients.push(determinant(sub, psi.field())?);
    }
    LinearFunctional::new(coefficients)
}

fn fe_pow(x: &FieldElement, e: u64) -> FieldElement {
    let mut out = FieldElement::one(x.field().clone());
    for _ in 0..e {
        out = out.mul(x);
    }
    out
}

/// `|top|_v / H_v(coords)^m`: the closed form shared by the projective and
/// dual quotient norms. Exact at finite places; a ball of radius at most
/// `target` at Archimedean places. `top = 0` gives the zero value.
fn quotient_value(
    top: &FieldElement,
    coords: &[FieldElement],
    m: u64,
    v: &Place,
    target: &Dyadic,
    precision: &Precision,
) -> Result<LocalValue> {
    match v.prime() {
        Some(p) => {
            let top_v = abs_value(top, v, Normalization::Normalized, target, precision)?;
            let top_v = top_v.as_finite().expect("finite place");
            if top_v.is_zero() {
                return Ok(LocalValue::Finite(PAdicValue::zero(p.clone())));
            }
            let mut h = PAdicValue::zero(p.clone());
            for c in coords {
                let val = abs_value(c, v, Normalization::Normalized, target, precision)?;
                h = h.max_with(val.as_finite().expect("finite place"));
            }
            let hm = h.pow(&BigRational::from_integer(m.into()));
            Ok(LocalValue::Finite(top_v.mul(&hm.recip()?)))
        }
        None => {
            let b = refine(
                precision,
                |b: &Ball| b.rad().cmp_dyadic(target) != Ordering::Greater,
                |w| arch_quotient(top, coords, m, v, w, precision),
            )?;
            Ok(LocalValue::Archimedean(b))
        }
    }
}

/// One working-precision pass of the Archimedean quotient.
fn arch_quotient(
    top: &FieldElement,
    coords: &[FieldElement],
    m: u64,
    v: &Place,
    w: u32,
    precision: &Precision,
) -> Result<Ball> {
    let t = Dyadic::new(BigInt::one(), -(w as i64));
    let top_b = abs_value(top, v, Normalization::Normalized, &t, precision)?;
    let top_b = top_b.as_archimedean().expect("archimedean place").clone();
    let mut h = Ball::zero();
    for c in coords {
        let val = abs_value(c, v, Normalization::Normalized, &t, precision)?;
        h = h.max_with(val.as_archimedean().expect("archimedean place"));
    }
    let hm = h.pow_u64_nonneg(m, w);
    if hm.contains_zero() {
        // the point is nonzero, so this is a precision artifact
        return Err(Error::PrecisionExhausted(
            "local height enclosure touches zero".into(),
        ));
    }
    top_b.div(&hm, w)
}

/// `U_v(a, T) = |T(a)|_v / H_v(a)^M` (the closed form the local identity
/// proves equal to the quotient norm `inf{ν_v(T−f) : f(a) = 0}`). A zero
/// `T(a)` gives the zero value; global ops reject it instead.
pub fn u_local_projective(
    a: &ProjectiveVector,
    t: &HomogeneousPoly,
    v: &Place,
    target: &Dyadic,
    precision: &Precision,
) -> Result<LocalValue> {
    check_poly_point(a, t)?;
    let top = t.eval(a.coords())?;
    quotient_value(&top, a.coords(), t.degree() as u64, v, target, precision)
}

/// `U_v(w, ψ) = |ψ(w)|_v / H_v(w)`, the linear-functional case.
pub fn u_local_dual(
    w: &ProjectiveVector,
    psi: &LinearFunctional,
    v: &Place,
    target: &Dyadic,
    precision: &Precision,
) -> Result<LocalValue> {
    if psi.field().as_ref() != w.field().as_ref() {
        return Err(Error::FieldMismatch);
    }
    let top = psi.apply(w.coords())?;
    quotient_value(&top, w.coords(), 1, v, target, precision)
}

/// The infimum witness: for `f* = T − T(a)·(z_n/a_n)^M` with `a_n` a
/// coordinate of maximal value, `T − f*` is a single monomial whose sup norm
/// is `|T(a)·a_n^{−M}|_v`. Computed through that one field element, it is an
/// arithmetic path independent of `u_local_projective` and must agree with
/// it. Errors with `TVanishesAtPoint` when `T(a) = 0` (no witness exists).
pub fn u_witness_oracle_projective(
    a: &ProjectiveVector,
    t: &HomogeneousPoly,
    v: &Place,
    target: &Dyadic,
    precision: &Precision,
) -> Result<LocalValue> {
    check_poly_point(a, t)?;
    let top = t.eval(a.coords())?;
    witness_value(&top, a.coords(), t.degree() as u64, v, target, precision)
}

/// The dual-side witness: `ν_v` of the functional `x ↦ ψ(w)·x_n/w_n`, which
/// is `|ψ(w)·w_n^{−1}|_v`.
pub fn u_witness_oracle_dual(
    w: &ProjectiveVector,
    psi: &LinearFunctional,
    v: &Place,
    target: &Dyadic,
    precision: &Precision,
) -> Result<LocalValue> {
    if psi.field().as_ref() != w.field().as_ref() {
        return Err(Error::FieldMismatch);
    }
    let top = psi.apply(w.coords())?;
    witness_value(&top, w.coords(), 1, v, target, precision)
}

fn witness_value(
    top: &FieldElement,
    coords: &[FieldElement],
    m: u64,
    v: &Place,
    target: &Dyadic,
    precision: &Precision,
) -> Result<LocalValue> {
    if top.is_zero() {
        return Err(Error::TVanishesAtPoint);
    }
    match v.prime() {
        Some(_) => {
            // exact argmax of the coordinate values
            let mut best: Option<(usize, PAdicValue)> = None;
            for (i, c) in coords.iter().enumerate() {
                let val = abs_value(c, v, Normalization::Normalized, target, precision)?;
                let val = val.as_finite().expect("finite place").clone();
                match &best {
                    Some((_, b)) if b.cmp_value(&val) != Ordering::Less => {}
                    _ => best = Some((i, val)),
                }
            }
            let (n, _) = best.expect("projective points are nonempty");
            let c = top.mul(&fe_pow(&coords[n].inverse()?, m));
            let val = abs_value(&c, v, Normalization::Normalized, target, precision)?;
            Ok(LocalValue::Finite(val.as_finite().expect("finite place").clone()))
        }
        None => {
            let b = refine(
                precision,
                |b: &Ball| b.rad().cmp_dyadic(target) != Ordering::Greater,
                |w| {
                    let t = Dyadic::new(BigInt::one(), -(w as i64));
                    let moduli: Vec<Option<Ball>> = coords
                        .iter()
                        .map(|c| {
                            if c.is_zero() {
                                Ok(None)
                            } else {
                                abs_value(c, v, Normalization::Normalized, &t, precision).map(|x| {
                                    Some(x.as_archimedean().expect("archimedean place").clone())
                                })
                            }
                        })
                        .collect::<Result<_>>()?;
                    // a zero coordinate is never the maximum of a nonzero
                    // point; any other coordinate is still a candidate
                    // argmax while its upper bound reaches the best lower
                    // bound, and the union over candidates encloses the
                    // witness value for the true argmax
                    let lo_star = moduli
                        .iter()
                        .flatten()
                        .map(|b| b.lower())
                        .max_by(|x, y| x.cmp_dyadic(y))
                        .expect("nonzero coordinate exists");
                    let mut out: Option<Ball> = None;
                    for (i, mb) in moduli.iter().enumerate() {
                        let mb = match mb {
                            Some(b) => b,
                            None => continue,
                        };
                        if mb.upper().cmp_dyadic(&lo_star) == Ordering::Less {
                            continue;
                        }
                        let c = top.mul(&fe_pow(&coords[i].inverse()?, m));
                        let val = abs_value(&c, v, Normalization::Normalized, &t, precision)?;
                        let val = val.as_archimedean().expect("archimedean place").clone();
                        out = Some(match out {
                            None => val,
                            Some(acc) => acc.union(&val),
                        });
                    }
                    Ok(out.expect("candidate set is nonempty"))
                },
            )?;
            Ok(LocalValue::Archimedean(b))
        }
    }
}

fn check_poly_point(a: &ProjectiveVector, t: &HomogeneousPoly) -> Result<()> {
    if t.field().as_ref() != a.field().as_ref() {
        return Err(Error::FieldMismatch);
    }
    if t.num_vars() != a.len() {
        return Err(Error::DimensionMismatch(format!(
            "polynomial in {} variables evaluated at {} coordinates",
            t.num_vars(),
            a.len()
        )));
    }
    Ok(())
}

/// Finite places that can carry a nontrivial factor of `∏ U_v`: `U_v ≠ 1`
/// forces `|top|_v ≠ 1` or `H_v ≠ 1`. The coordinate support covers the
/// second condition; `top`'s own denominator and norm primes cover the
/// first, and must not be pooled into the coordinate gcd (a unit coordinate
/// would mask them).
fn u_support(coords: &[FieldElement], top: &FieldElement) -> Result<Vec<BigInt>> {
    let mut set: std::collections::BTreeSet<BigInt> =
        nonunit_primes(coords)?.into_iter().collect();
    for p in nonunit_primes(std::slice::from_ref(top))? {
        set.insert(p);
    }
    Ok(set.into_iter().collect())
}

/// The exact finite part of `∏_v U_v` together with per-place rows
/// `(place, H_v, U_v, |top|_v)`.
fn finite_u_rows(
    field: &Arc<NumberField>,
    coords: &[FieldElement],
    top: &FieldElement,
    m: u64,
    target: &Dyadic,
    precision: &Precision,
) -> Result<(PPowerProduct, PPowerProduct, Vec<PlaceRow>)> {
    let mut u_fin = PPowerProduct::one();
    let mut h_fin = PPowerProduct::one();
    let mut rows = Vec::new();
    for p in u_support(coords, top)? {
        for v in finite_places_above(field, &p)? {
            let u = quotient_value(top, coords, m, &v, target, precision)?;
            let u = u.as_finite().expect("finite place").clone();
            let mut h = PAdicValue::zero(p.clone());
            for c in coords {
                let val = abs_value(c, &v, Normalization::Normalized, target, precision)?;
                h = h.max_with(val.as_finite().expect("finite place"));
            }
            let local = abs_value(top, &v, Normalization::Normalized, target, precision)?;
            u_fin.mul_value(&u);
            h_fin.mul_value(&h);
            rows.push(PlaceRow {
                place: v.id().to_string(),
                local_degree: v.local_degree(),
                height: LocalValue::Finite(h),
                u: LocalValue::Finite(u.clone()),
                local_product: local,
            });
        }
    }
    Ok((u_fin, h_fin, rows))
}

/// The global `U(a,T) = ∏_v U_v(a,T)`. The finite part is an exact product
/// of rational prime powers; the Archimedean factors are refined until the
/// product's radius is at most `target`.
pub fn u_global_projective(
    a: &ProjectiveVector,
    t: &HomogeneousPoly,
    target: &Dyadic,
    precision: &Precision,
) -> Result<Ball> {
    check_poly_point(a, t)?;
    let top = t.eval(a.coords())?;
    if top.is_zero() {
        return Err(Error::TVanishesAtPoint);
    }
    u_global_core(a.field(), a.coords(), &top, t.degree() as u64, target, precision)
}

fn u_global_core(
    field: &Arc<NumberField>,
    coords: &[FieldElement],
    top: &FieldElement,
    m: u64,
    target: &Dyadic,
    precision: &Precision,
) -> Result<Ball> {
    let (u_fin, _, _) = finite_u_rows(field, coords, top, m, target, precision)?;
    let arch = archimedean_places(field, precision)?;
    refine(
        precision,
        |b: &Ball| b.rad().cmp_dyadic(target) != Ordering::Greater,
        |w| {
            let mut prod = u_fin.to_ball(w)?;
            for v in &arch {
                prod = prod.mul(&arch_quotient(top, coords, m, v, w, precision)?, w);
            }
            Ok(prod)
        },
    )
}

/// One place's line in an identity report.
#[derive(Clone, Debug)]
pub struct PlaceRow {
    pub place: String,
    pub local_degree: usize,
    /// `H_v` of the point (or wedge vector).
    pub height: LocalValue,
    /// `U_v` at this place.
    pub u: LocalValue,
    /// `|T(a)|_v` (resp. `|∧Ψ(w)|_v`), which the identity says is the
    /// product of the other two columns (with the height power).
    pub local_product: LocalValue,
}

/// The outcome of checking a global identity `1 = H^m · U`.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub rows: Vec<PlaceRow>,
    /// Enclosure of `∏_v H_v^m · U_v`.
    pub product: Ball,
    /// The height exponent `m` in the identity (the polynomial degree, or 1
    /// for the subspace case).
    pub exponent: u64,
    pub tolerance: Dyadic,
    pub pass: bool,
}

fn verify_identity_core(
    field: &Arc<NumberField>,
    coords: &[FieldElement],
    top: &FieldElement,
    m: u64,
    tolerance: &Dyadic,
    precision: &Precision,
) -> Result<IdentityReport> {
    if !tolerance.is_positive() {
        return Err(Error::InvalidEnclosure("tolerance must be positive".into()));
    }
    let row_target = tolerance.shl(-2);
    let (u_fin, h_fin, mut rows) = finite_u_rows(field, coords, top, m, &row_target, precision)?;
    // exact finite part of ∏ H_v^m · U_v
    let mut finite = h_fin.pow(&BigRational::from_integer(m.into()));
    finite.mul(&u_fin);
    let arch = archimedean_places(field, precision)?;
    let product = refine(
        precision,
        |b: &Ball| b.rad().shl(1).cmp_dyadic(tolerance) != Ordering::Greater,
        |w| {
            let mut prod = finite.to_ball(w)?;
            for v in &arch {
                let t = Dyadic::new(BigInt::one(), -(w as i64));
                let mut h = Ball::zero();
                for c in coords {
                    let val = abs_value(c, v, Normalization::Normalized, &t, precision)?;
                    h = h.max_with(val.as_archimedean().expect("archimedean place"));
                }
                let u = arch_quotient(top, coords, m, v, w, precision)?;
                prod = prod.mul(&h.pow_u64_nonneg(m, w), w).mul(&u, w);
            }
            Ok(prod)
        },
    )?;
    for v in &arch {
        let t = row_target.clone();
        let mut h = Ball::zero();
        for c in coords {
            let val = abs_value(c, v, Normalization::Normalized, &t, precision)?;
            h = h.max_with(val.as_archimedean().expect("archimedean place"));
        }
        let u = quotient_value(top, coords, m, v, &t, precision)?;
        let local = abs_value(top, v, Normalization::Normalized, &t, precision)?;
        rows.push(PlaceRow {
            place: v.id().to_string(),
            local_degree: v.local_degree(),
            height: LocalValue::Archimedean(h),
            u: u.clone(),
            local_product: local,
        });
    }
    let pass = product.contains_rational(&BigRational::one())
        && product.rad().shl(1).cmp_dyadic(tolerance) != Ordering::Greater;
    Ok(IdentityReport {
        rows,
        product,
        exponent: m,
        tolerance: tolerance.clone(),
        pass,
    })
}

/// Checks the global identity `1 = H(a)^M · U(a,T)` by multiplying the
/// closed-form local values over every contributing place. Passes when the
/// enclosure contains 1 and its width is at most `tolerance`.
pub fn verify_identity_projective(
    a: &ProjectiveVector,
    t: &HomogeneousPoly,
    tolerance: &Dyadic,
    precision: &Precision,
) -> Result<IdentityReport> {
    check_poly_point(a, t)?;
    let top = t.eval(a.coords())?;
    if top.is_zero() {
        return Err(Error::TVanishesAtPoint);
    }
    verify_identity_core(a.field(), a.coords(), &top, t.degree() as u64, tolerance, precision)
}

/// Shared setup for the subspace ops: wedge the basis, build `∧^M(Ψ)`,
/// apply it. Errors: `DependentBasis` for a dependent family,
/// `DimensionMismatch` for shape conflicts, `KernelMeetsSubspace` when the
/// determinant of the stacked images vanishes.
fn subspace_setup(
    basis: &[ProjectiveVector],
    psi: &LinearMap,
) -> Result<(ProjectiveVector, FieldElement)> {
    let wedge = crate::heights::wedge_coordinates(basis)?;
    if psi.num_rows() != wedge.grade() || psi.num_cols() != wedge.source_dimension() {
        return Err(Error::DimensionMismatch(format!(
            "map is {}×{}, basis spans an {}-dimensional subspace of dimension-{} space",
            psi.num_rows(),
            psi.num_cols(),
            wedge.grade(),
            wedge.source_dimension()
        )));
    }
    if psi.field().as_ref() != wedge.field().as_ref() {
        return Err(Error::FieldMismatch);
    }
    if wedge.is_zero() {
        return Err(Error::DependentBasis);
    }
    let point = wedge.to_projective()?;
    let lam = exterior_power_map(psi)?;
    let top = lam.apply(point.coords())?;
    if top.is_zero() {
        return Err(Error::KernelMeetsSubspace);
    }
    Ok((point, top))
}

/// `U(W, Ψ) = ∏_v U_v(w_1∧…∧w_M, ∧^M(Ψ))` for the subspace spanned by the
/// basis. Requires `W ∩ ker Ψ = {0}`.
pub fn u_subspace(
    basis: &[ProjectiveVector],
    psi: &LinearMap,
    target: &Dyadic,
    precision: &Precision,
) -> Result<Ball> {
    let (point, top) = subspace_setup(basis, psi)?;
    u_global_core(point.field(), point.coords(), &top, 1, target, precision)
}

/// Checks the subspace identity `1 = H(W) · U(W,Ψ)` place by place.
pub fn verify_identity_subspace(
    basis: &[ProjectiveVector],
    psi: &LinearMap,
    tolerance: &Dyadic,
    precision: &Precision,
) -> Result<IdentityReport> {
    let (point, top) = subspace_setup(basis, psi)?;
    verify_identity_core(point.field(), point.coords(), &top, 1, tolerance, precision)
}

/// The univariate machinery: local values and global products for an
/// algebraic `α` and an auxiliary `T ∈ Q[x]` against the competitor space of
/// polynomials of degree below `n`.
#[derive(Clone, Debug)]
pub struct UnivariateReport {
    /// `U_v(α, T)` per contributing place.
    pub rows: Vec<(String, LocalValue)>,
    /// Enclosure of `∏_v U_v`.
    pub u_global: Ball,
    /// Enclosure of `h(α)`.
    pub weil: Ball,
    /// Enclosure of `h(α)^n · ∏ U_v`, the product of the local identities.
    pub product_power: Ball,
    /// Enclosure of `h(α) · ∏ U_v`, the first-power form.
    pub product_first: Ball,
    /// The exponent `n` the report was computed at.
    pub exponent: u32,
}

/// Local values `U_v(α,T) = |T(α)|_v / max{1,|α|_v}^n` and their global
/// product. The per-place identity multiplies out to
/// `1 = h(α)^n · ∏_v U_v`; the report also carries `h(α)^1 · ∏_v U_v`
/// because the two conventions circulate and they disagree except when
/// `n = 1` or `h(α) = 1`. Both products are returned unnormalized so the
/// caller can see which one its source means.
pub fn univariate_u(
    alpha: &FieldElement,
    t: &RatPolynomial,
    n: u32,
    target: &Dyadic,
    precision: &Precision,
) -> Result<UnivariateReport> {
    if n == 0 {
        return Err(Error::DimensionMismatch(
            "the competitor space needs n ≥ 1".into(),
        ));
    }
    match t.degree() {
        Some(d) if d as u64 > n as u64 => {
            return Err(Error::DimensionMismatch(format!(
                "deg T = {} exceeds the witness degree {}",
                d, n
            )));
        }
        _ => {}
    }
    let field = alpha.field().clone();
    let top = eval_rat_poly(alpha, t);
    if top.is_zero() {
        return Err(Error::TVanishesAtPoint);
    }
    // max{1, |α|_v} is the local height of (1, α)
    let coords = vec![FieldElement::one(field.clone()), alpha.clone()];
    let m = n as u64;

    let (u_fin, _, fin_rows) = finite_u_rows(&field, &coords, &top, m, target, precision)?;
    let arch = archimedean_places(&field, precision)?;
    let u_global = refine(
        precision,
        |b: &Ball| b.rad().cmp_dyadic(target) != Ordering::Greater,
        |w| {
            let mut prod = u_fin.to_ball(w)?;
            for v in &arch {
                prod = prod.mul(&arch_quotient(&top, &coords, m, v, w, precision)?, w);
            }
            Ok(prod)
        },
    )?;
    let mut rows: Vec<(String, LocalValue)> = fin_rows
        .into_iter()
        .map(|r| (r.place, r.u))
        .collect();
    for v in &arch {
        let u = quotient_value(&top, &coords, m, v, target, precision)?;
        rows.push((v.id().to_string(), u));
    }
    let weil = weil_height(alpha, target, precision)?;
    let w = 192;
    let product_power = weil.pow_u64_nonneg(m, w).mul(&u_global, w);
    let product_first = weil.mul(&u_global, w);
    Ok(UnivariateReport {
        rows,
        u_global,
        weil,
        product_power,
        product_first,
        exponent: n,
    })
}

fn eval_rat_poly(alpha: &FieldElement, t: &RatPolynomial) -> FieldElement {
    let field = alpha.field().clone();
    let d = match t.degree() {
        None => return FieldElement::zero(field),
        Some(d) => d,
    };
    let pows = alpha.powers(d);
    let mut sum = FieldElement::zero(field.clone());
    for (i, p) in pows.iter().enumerate() {
        let c = FieldElement::from_rational(field.clone(), t.coeff(i));
        sum = sum.add(&c.mul(p));
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::IntPolynomial;
    use num_traits::Zero;

    fn q() -> Arc<NumberField> {
        NumberField::rationals()
    }

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_i64(q(), n)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn tol() -> Dyadic {
        Dyadic::new(BigInt::one(), -40)
    }

    fn prec() -> Precision {
        Precision::default()
    }

    fn poly(n: usize, m: u32, terms: &[(&[u32], i64)]) -> HomogeneousPoly {
        HomogeneousPoly::new(q(), n, m, terms.iter().map(|(e, c)| (e.to_vec(), fe(*c))))
            .unwrap()
    }

    fn point(cs: &[i64]) -> ProjectiveVector {
        ProjectiveVector::new(cs.iter().map(|&c| fe(c)).collect()).unwrap()
    }

    fn inf() -> Place {
        archimedean_places(&q(), &prec()).unwrap()[0].clone()
    }

    fn at(p: i64) -> Place {
        finite_places_above(&q(), &BigInt::from(p)).unwrap()[0].clone()
    }

    #[test]
    fn homogeneous_poly_validation() {
        let err = HomogeneousPoly::new(q(), 2, 2, [(vec![1u32, 0], fe(1))]).unwrap_err();
        assert_eq!(err.code(), "DIMENSION_MISMATCH");
        let err = HomogeneousPoly::new(q(), 2, 2, [(vec![1u32, 1, 0], fe(1))]).unwrap_err();
        assert_eq!(err.code(), "DIMENSION_MISMATCH");
        // duplicate exponents accumulate, cancellation drops the term
        let t = HomogeneousPoly::new(
            q(),
            2,
            2,
            [(vec![1u32, 1], fe(3)), (vec![1u32, 1], fe(-3)), (vec![2u32, 0], fe(1))],
        )
        .unwrap();
        assert_eq!(t.terms().len(), 1);
    }

    #[test]
    fn evaluation_and_arithmetic() {
        let t = poly(2, 2, &[(&[1, 1], 1)]);
        let val = t.eval(&[fe(1), fe(2)]).unwrap();
        assert_eq!(val.as_rational().unwrap(), rat(2, 1));

        let s = poly(2, 2, &[(&[2, 0], 1)]);
        let both = t.add(&s).unwrap();
        assert_eq!(both.eval(&[fe(3), fe(5)]).unwrap().as_rational().unwrap(), rat(24, 1));
        let prod = t.mul(&s).unwrap();
        assert_eq!(prod.degree(), 4);
        assert_eq!(
            prod.eval(&[fe(2), fe(3)]).unwrap().as_rational().unwrap(),
            rat(24, 1)
        );
        let shifted = t.sub(&t).unwrap();
        assert!(shifted.is_zero());
    }

    #[test]
    fn local_u_values_for_the_worked_pair() {
        // a = (1,2), T = x1 x2: |T(a)| = 2, H = 2, M = 2
        let a = point(&[1, 2]);
        let t = poly(2, 2, &[(&[1, 1], 1)]);
        let u = u_local_projective(&a, &t, &inf(), &tol(), &prec()).unwrap();
        assert!(u.as_archimedean().unwrap().contains_rational(&rat(1, 2)));
        let u = u_local_projective(&a, &t, &at(2), &tol(), &prec()).unwrap();
        assert_eq!(u.as_finite().unwrap().to_rational().unwrap(), rat(1, 2));
        let u = u_local_projective(&a, &t, &at(3), &tol(), &prec()).unwrap();
        assert_eq!(u.as_finite().unwrap().to_rational().unwrap(), rat(1, 1));
    }

    #[test]
    fn vanishing_t_gives_the_zero_local_value() {
        let a = point(&[1, 2]);
        // T = x2^2 - 2 x1 x2 vanishes at (1,2)
        let t = poly(2, 2, &[(&[0, 2], 1), (&[1, 1], -2)]);
        let u = u_local_projective(&a, &t, &at(2), &tol(), &prec()).unwrap();
        assert!(u.as_finite().unwrap().is_zero());
        let u = u_local_projective(&a, &t, &inf(), &tol(), &prec()).unwrap();
        assert!(u.as_archimedean().unwrap().contains_zero());
    }

    #[test]
    fn witness_oracle_matches_the_closed_form() {
        let a = point(&[1, 2]);
        let t = poly(2, 2, &[(&[1, 1], 1)]);
        let w = u_witness_oracle_projective(&a, &t, &inf(), &tol(), &prec()).unwrap();
        assert!(w.as_archimedean().unwrap().contains_rational(&rat(1, 2)));
        let w = u_witness_oracle_projective(&a, &t, &at(2), &tol(), &prec()).unwrap();
        assert_eq!(w.as_finite().unwrap().to_rational().unwrap(), rat(1, 2));

        // a = (1,1): H_v = 1 everywhere, T = x1^2 has |T(a)| = 1
        let a = point(&[1, 1]);
        let t = poly(2, 2, &[(&[2, 0], 1)]);
        for v in [inf(), at(2), at(5)] {
            let w = u_witness_oracle_projective(&a, &t, &v, &tol(), &prec()).unwrap();
            let u = u_local_projective(&a, &t, &v, &tol(), &prec()).unwrap();
            match (w, u) {
                (LocalValue::Finite(w), LocalValue::Finite(u)) => assert_eq!(w, u),
                (LocalValue::Archimedean(w), LocalValue::Archimedean(u)) => {
                    assert!(w.intersects(&u));
                    assert!(w.contains_rational(&rat(1, 1)));
                }
                _ => panic!("mismatched local value kinds"),
            }
        }

        // T(a) = 1 with an argmax tie between coordinates of equal modulus
        let a = point(&[1, -1]);
        let t = poly(2, 2, &[(&[2, 0], 1)]);
        let w = u_witness_oracle_projective(&a, &t, &inf(), &tol(), &prec()).unwrap();
        assert!(w.as_archimedean().unwrap().contains_rational(&rat(1, 1)));
    }

    #[test]
    fn witness_oracle_rejects_vanishing_t() {
        let a = point(&[1, 2]);
        let t = poly(2, 2, &[(&[0, 2], 1), (&[1, 1], -2)]);
        let err = u_witness_oracle_projective(&a, &t, &inf(), &tol(), &prec()).unwrap_err();
        assert_eq!(err.code(), "T_VANISHES");
    }

    #[test]
    fn scaling_t_scales_u_exactly_at_finite_places() {
        let a = point(&[1, 2]);
        let t = poly(2, 2, &[(&[1, 1], 1), (&[2, 0], 3)]);
        let c = fe(6);
        let scaled = t.scale(&c);
        for p in [2i64, 3, 5] {
            let u = u_local_projective(&a, &t, &at(p), &tol(), &prec()).unwrap();
            let us = u_local_projective(&a, &scaled, &at(p), &tol(), &prec()).unwrap();
            let cv = abs_value(&c, &at(p), Normalization::Normalized, &tol(), &prec()).unwrap();
            let expected = u.as_finite().unwrap().mul(cv.as_finite().unwrap());
            assert_eq!(us.as_finite().unwrap(), &expected);
        }
    }

    #[test]
    fn global_u_for_the_worked_pair() {
        let a = point(&[1, 2]);
        let t = poly(2, 2, &[(&[1, 1], 1)]);
        let u = u_global_projective(&a, &t, &tol(), &prec()).unwrap();
        assert!(u.contains_rational(&rat(1, 4)), "got {}", u);
    }

    #[test]
    fn global_u_rejects_vanishing_t() {
        let a = point(&[1, 2]);
        let t = poly(2, 2, &[(&[0, 2], 1), (&[1, 1], -2)]);
        let err = u_global_projective(&a, &t, &tol(), &prec()).unwrap_err();
        assert_eq!(err.code(), "T_VANISHES");
        let err = verify_identity_projective(&a, &t, &tol(), &prec()).unwrap_err();
        assert_eq!(err.code(), "T_VANISHES");
    }

    #[test]
    fn projective_identity_for_the_worked_pair() {
        let a = point(&[1, 2]);
        let t = poly(2, 2, &[(&[1, 1], 1)]);
        let report = verify_identity_projective(&a, &t, &tol(), &prec()).unwrap();
        assert!(report.pass, "identity product missed 1: {:?}", report.product);
        assert!(report.product.contains_rational(&rat(1, 1)));
        // the report carries the finite rows at 2 and the real place
        assert!(report.rows.iter().any(|r| r.place == "2_0"));
        assert!(report.rows.iter().any(|r| r.place.starts_with("inf")));
    }

    #[test]
    fn projective_identity_for_monomials_and_zero_coordinates() {
        // a = (1,0), T = x1^2: every local value is 1
        let a = point(&[1, 0]);
        let t = poly(2, 2, &[(&[2, 0], 1)]);
        let report = verify_identity_projective(&a, &t, &tol(), &prec()).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn projective_identity_in_a_quadratic_field() {
        // a = (1, α, α²) for α = √2, T = x1 x3: U = h(α)^{-4} = 1/4
        let k = NumberField::new(IntPolynomial::from_i64_slice(&[-2, 0, 1])).unwrap();
        let alpha = FieldElement::generator(k.clone());
        let a = ProjectiveVector::powers(&alpha, 2);
        let t = HomogeneousPoly::new(
            k.clone(),
            3,
            2,
            [(vec![1u32, 0, 1], FieldElement::one(k.clone()))],
        )
        .unwrap();
        let u = u_global_projective(&a, &t, &tol(), &prec()).unwrap();
        assert!(u.contains_rational(&rat(1, 4)));
        let report = verify_identity_projective(&a, &t, &tol(), &prec()).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn exterior_power_map_minors() {
        let psi = LinearMap::new(vec![
            vec![fe(1), fe(0), fe(1)],
            vec![fe(0), fe(1), fe(1)],
        ])
        .unwrap();
        let lam = exterior_power_map(&psi).unwrap();
        let coeffs: Vec<BigRational> = lam
            .coefficients()
            .iter()
            .map(|c| c.as_rational().unwrap())
            .collect();
        assert_eq!(coeffs, vec![rat(1, 1), rat(1, 1), rat(-1, 1)]);

        // identity block: the functional is the indicator of the first subset
        let psi = LinearMap::new(vec![
            vec![fe(1), fe(0), fe(0)],
            vec![fe(0), fe(1), fe(0)],
        ])
        .unwrap();
        let lam = exterior_power_map(&psi).unwrap();
        let coeffs: Vec<BigRational> = lam
            .coefficients()
            .iter()
            .map(|c| c.as_rational().unwrap())
            .collect();
        assert_eq!(coeffs, vec![rat(1, 1), rat(0, 1), rat(0, 1)]);

        // M = 1: the functional is the row itself
        let psi = LinearMap::new(vec![vec![fe(3), fe(4)]]).unwrap();
        let lam = exterior_power_map(&psi).unwrap();
        assert_eq!(lam.coefficients()[0].as_rational().unwrap(), rat(3, 1));
        assert_eq!(lam.coefficients()[1].as_rational().unwrap(), rat(4, 1));

        let wide = LinearMap::new(vec![
            vec![fe(1), fe(0)],
            vec![fe(0), fe(1)],
            vec![fe(1), fe(1)],
        ])
        .unwrap();
        assert_eq!(
            exterior_power_map(&wide).unwrap_err().code(),
            "DIMENSION_MISMATCH"
        );
    }

    #[test]
    fn exterior_functional_equals_stacked_determinant() {
        let psi = LinearMap::new(vec![
            vec![fe(1), fe(0), fe(1)],
            vec![fe(0), fe(1), fe(1)],
        ])
        .unwrap();
        let basis = [point(&[1, 2, 3]), point(&[0, 1, 1])];
        let wedge = crate::heights::wedge_coordinates(&basis).unwrap();
        let lam = exterior_power_map(&psi).unwrap();
        let lhs = lam
            .apply(&wedge.coords().values().cloned().collect::<Vec<_>>())
            .unwrap();
        // det of the stacked images Ψ(w_i)
        let images: Vec<Vec<FieldElement>> = basis
            .iter()
            .map(|b| psi.apply(b.coords()).unwrap())
            .collect();
        let rhs = determinant(images, &q()).unwrap();
        assert_eq!(lhs.as_rational().unwrap(), rhs.as_rational().unwrap());
        // by hand: Ψ(1,2,3) = (4,5), Ψ(0,1,1) = (1,2), det = 3
        assert_eq!(lhs.as_rational().unwrap(), rat(3, 1));
    }

    #[test]
    fn dual_u_values() {
        // w = (3,4), ψ = (1,0): at ∞ the value is 3/4, at 3 it is 1/3
        let w = point(&[3, 4]);
        let psi = LinearFunctional::new(vec![fe(1), fe(0)]).unwrap();
        let u = u_local_dual(&w, &psi, &inf(), &tol(), &prec()).unwrap();
        assert!(u.as_archimedean().unwrap().contains_rational(&rat(3, 4)));
        let u = u_local_dual(&w, &psi, &at(3), &tol(), &prec()).unwrap();
        assert_eq!(u.as_finite().unwrap().to_rational().unwrap(), rat(1, 3));

        // the dual witness agrees
        let witness = u_witness_oracle_dual(&w, &psi, &at(3), &tol(), &prec()).unwrap();
        assert_eq!(witness.as_finite().unwrap().to_rational().unwrap(), rat(1, 3));

        // w = (1,1), ψ = (1,1): ψ(w) = 2 with H = 1
        let w = point(&[1, 1]);
        let psi = LinearFunctional::new(vec![fe(1), fe(1)]).unwrap();
        let u = u_local_dual(&w, &psi, &inf(), &tol(), &prec()).unwrap();
        assert!(u.as_archimedean().unwrap().contains_rational(&rat(2, 1)));

        // ψ(w) = 0 gives the zero value locally
        let psi = LinearFunctional::new(vec![fe(1), fe(-1)]).unwrap();
        let u = u_local_dual(&w, &psi, &at(2), &tol(), &prec()).unwrap();
        assert!(u.as_finite().unwrap().is_zero());
    }

    #[test]
    fn subspace_u_for_a_line() {
        // span{(3,4)}, Ψ = (1,0): ∏ U_v = (3/4)·(1/3) = 1/4
        let basis = [point(&[3, 4])];
        let psi = LinearMap::new(vec![vec![fe(1), fe(0)]]).unwrap();
        let u = u_subspace(&basis, &psi, &tol(), &prec()).unwrap();
        assert!(u.contains_rational(&rat(1, 4)));

        // scaling the basis leaves the product alone
        let basis = [point(&[6, 8])];
        let u = u_subspace(&basis, &psi, &tol(), &prec()).unwrap();
        assert!(u.contains_rational(&rat(1, 4)));
    }

    #[test]
    fn subspace_identity_reports() {
        let basis = [point(&[3, 4])];
        let psi = LinearMap::new(vec![vec![fe(1), fe(0)]]).unwrap();
        let report = verify_identity_subspace(&basis, &psi, &tol(), &prec()).unwrap();
        assert!(report.pass);
        assert!(report.product.contains_rational(&rat(1, 1)));

        // plane in Q^3 against the coordinate projection
        let basis = [point(&[1, 2, 3]), point(&[0, 1, 1])];
        let psi = LinearMap::new(vec![
            vec![fe(1), fe(0), fe(0)],
            vec![fe(0), fe(1), fe(0)],
        ])
        .unwrap();
        let report = verify_identity_subspace(&basis, &psi, &tol(), &prec()).unwrap();
        assert!(report.pass);

        // standard basis with the matching projection: everything is 1
        let basis = [point(&[1, 0]), point(&[0, 1])];
        let psi = LinearMap::new(vec![vec![fe(1), fe(0)], vec![fe(0), fe(1)]]).unwrap();
        let report = verify_identity_subspace(&basis, &psi, &tol(), &prec()).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn kernel_meeting_the_subspace_is_rejected() {
        // W = span{(1,0)}, Ψ = projection onto the second coordinate
        let basis = [point(&[1, 0])];
        let psi = LinearMap::new(vec![vec![fe(0), fe(1)]]).unwrap();
        let err = u_subspace(&basis, &psi, &tol(), &prec()).unwrap_err();
        assert_eq!(err.code(), "KERNEL_MEETS_SUBSPACE");
        let err = verify_identity_subspace(&basis, &psi, &tol(), &prec()).unwrap_err();
        assert_eq!(err.code(), "KERNEL_MEETS_SUBSPACE");
    }

    #[test]
    fn dependent_basis_is_rejected_before_the_kernel_check() {
        let basis = [point(&[1, 2]), point(&[2, 4])];
        let psi = LinearMap::new(vec![vec![fe(1), fe(0)], vec![fe(0), fe(1)]]).unwrap();
        let err = u_subspace(&basis, &psi, &tol(), &prec()).unwrap_err();
        assert_eq!(err.code(), "DEPENDENT_BASIS");
    }

    #[test]
    fn univariate_values_and_both_product_conventions() {
        // α = 2, T = x, n = 1: U_∞ = 1, U_2 = 1/2, ∏ U = 1/2
        let alpha = fe(2);
        let t = RatPolynomial::new(vec![BigRational::zero(), BigRational::one()]);
        let report = univariate_u(&alpha, &t, 1, &tol(), &prec()).unwrap();
        assert!(report.u_global.contains_rational(&rat(1, 2)));
        assert!(report.product_power.contains_rational(&rat(1, 1)));
        assert!(report.product_first.contains_rational(&rat(1, 1)));

        // same α and T against n = 2: ∏ U = 1/4 and only h^2 closes the loop
        let report = univariate_u(&alpha, &t, 2, &tol(), &prec()).unwrap();
        assert!(report.u_global.contains_rational(&rat(1, 4)));
        assert!(report.product_power.contains_rational(&rat(1, 1)));
        assert!(!report.product_first.contains_rational(&rat(1, 1)));

        // constant T = 1, n = 1: U_v = max{1,|α|_v}^{-1}, product 1/h(α)
        let alpha = FieldElement::from_rational(q(), rat(1, 2));
        let t = RatPolynomial::constant(BigRational::one());
        let report = univariate_u(&alpha, &t, 1, &tol(), &prec()).unwrap();
        assert!(report.u_global.contains_rational(&rat(1, 2)));
        assert!(report.product_power.contains_rational(&rat(1, 1)));
    }

    #[test]
    fn univariate_u_on_a_root_of_unity() {
        let k = NumberField::new(IntPolynomial::from_i64_slice(&[1, 0, 1])).unwrap();
        let i = FieldElement::generator(k);
        let t = RatPolynomial::new(vec![BigRational::zero(), BigRational::one()]);
        let report = univariate_u(&i, &t, 1, &tol(), &prec()).unwrap();
        // h = 1 so the global U product is 1
        assert!(report.u_global.contains_rational(&rat(1, 1)));
        assert!(report.product_first.contains_rational(&rat(1, 1)));
    }

    #[test]
    fn univariate_u_shape_errors() {
        let alpha = fe(2);
        let t = RatPolynomial::new(vec![
            BigRational::zero(),
            BigRational::zero(),
            BigRational::one(),
        ]);
        let err = univariate_u(&alpha, &t, 1, &tol(), &prec()).unwrap_err();
        assert_eq!(err.code(), "DIMENSION_MISMATCH");
        // T = x - 2 vanishes at 2
        let t = RatPolynomial::new(vec![rat(-2, 1), BigRational::one()]);
        let err = univariate_u(&alpha, &t, 1, &tol(), &prec()).unwrap_err();
        assert_eq!(err.code(), "T_VANISHES");
    }

    #[test]
    fn infimum_is_never_beaten_by_vanishing_competitors() {
        // T - f for f ∈ Z(a) can only have a larger sup norm than the
        // witness; try structured competitors g·(a_n z_j - a_j z_n)
        let a = point(&[1, 2]);
        let t = poly(2, 2, &[(&[1, 1], 1)]);
        let vanish = |g: &HomogeneousPoly| {
            // (a_2 z_1 - a_1 z_2) = 2 z_1 - z_2 vanishes at (1,2)
            let lin = poly(2, 1, &[(&[1, 0], 2), (&[0, 1], -1)]);
            g.mul(&lin).unwrap()
        };
        let loose = Dyadic::new(BigInt::one(), -12);
        for gc in [(1i64, 0i64), (0, 1), (3, -2), (-1, 4), (7, 7)] {
            let g = poly(2, 1, &[(&[1, 0], gc.0), (&[0, 1], gc.1)]);
            let f = vanish(&g);
            assert!(f.eval(a.coords()).unwrap().is_zero());
            let diff = t.sub(&f).unwrap();
            for p in [2i64, 3, 5, 7] {
                let u = u_local_projective(&a, &t, &at(p), &tol(), &prec()).unwrap();
                let nu = sup_norm_finite(&diff, &at(p)).unwrap();
                assert!(
                    u.as_finite().unwrap().cmp_value(&nu) != Ordering::Greater,
                    "finite infimum beaten at p = {}",
                    p
                );
            }
            let u = u_local_projective(&a, &t, &inf(), &loose, &prec()).unwrap();
            let nu = sup_norm_arch(&diff, &inf(), &loose, &prec()).unwrap();
            let slack = loose.shl(2);
            assert!(
                u.as_archimedean()
                    .unwrap()
                    .lower()
                    .cmp_dyadic(&nu.upper().add(&slack))
                    != Ordering::Greater,
                "archimedean infimum beaten for g = {:?}",
                gc
            );
        }
    }
}

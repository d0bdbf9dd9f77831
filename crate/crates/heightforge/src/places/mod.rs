//! Places of a number field.
//!
//! An archimedean place is a real root or a conjugate pair of complex roots
//! of the defining polynomial, carried as a certified enclosure. A finite
//! place above a rational prime `p` is one block of the factorization of the
//! defining polynomial mod `p`, carried with a Hensel lift of that block
//! that is deepened on demand when a valuation needs more p-adic precision.
//!
//! Finite decompositions are offered only where they are provably complete:
//! `Z[θ]` must be maximal at `p` (Dedekind's criterion), and every ramified
//! block must additionally pass a one-segment Newton polygon certificate in
//! its residual factor. A prime where either certificate fails is rejected
//! as unsupported rather than guessed at; presenting the same field by a
//! different polynomial usually restores support.

mod value;

pub use value::{
    abs_value, product_formula_check, LocalValue, Normalization, PAdicValue, PPowerProduct,
    ProductFormulaReport,
};

use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::ball::{tighten_enclosure, Dyadic, Precision, RootEnclosure};
use crate::error::{Error, Result};
use crate::exact::hensel::lift_factorization;
use crate::exact::integers::{prime_divisors, valuation};
use crate::exact::modp::{factor_mod_p, ModPoly};
use crate::exact::IntPolynomial;
use crate::field::{FieldElement, NumberField};

/// p-adic depth of the local factors at construction.
const INITIAL_LIFT: u64 = 20;
/// Hard ceiling on the lift depth during valuation escalation.
pub(crate) const LIFT_CAP: u64 = 5120;
/// A valuation read off a lift mod `p^k` is trusted only when it clears the
/// top of the window by this margin.
pub(crate) const TRUST_MARGIN: u64 = 10;
/// Radius exponent of the root enclosures attached to archimedean places.
const ROOT_BITS: i64 = 64;

/// Mutable p-adic depth state of a finite place's local factor.
#[derive(Debug)]
pub(crate) struct BlockLift {
    pub(crate) depth: u64,
    pub(crate) factor: IntPolynomial,
}

#[derive(Clone, Debug)]
pub(crate) enum PlaceKind {
    /// A real embedding, or a conjugate pair of complex embeddings
    /// represented by its upper half plane root.
    Archimedean { root: RootEnclosure },
    /// A place above `p`: one block of the defining polynomial mod `p`.
    Finite {
        p: BigInt,
        /// monic irreducible residual factor, canonical lift with
        /// coefficients in `[0, p)`
        residual: IntPolynomial,
        /// the block `residual^e` mod `p`
        block: IntPolynomial,
        /// product of the other blocks mod `p`; constant when the block is
        /// the whole polynomial
        cofactor: IntPolynomial,
        ramification: u64,
        residue_degree: usize,
        /// Hensel lift of the block mod `p^depth`, deepened on demand
        lift: Arc<Mutex<BlockLift>>,
    },
}

/// A place of a number field, with a stable id: `inf_0`, `inf_1`, … for
/// archimedean places in root order and `p_0`, `p_1`, … for the places
/// above `p` in block order.
#[derive(Clone, Debug)]
pub struct Place {
    id: String,
    local_degree: usize,
    field_degree: usize,
    // snapshot of the owning field's presentation, so values can verify an
    // element really lives where the place does
    defining: IntPolynomial,
    pub(crate) kind: PlaceKind,
}

impl Place {
    pub fn id(&self) -> &str {
        &self.id
    }

    /// `d_v`: 1 for a real embedding, 2 for a complex pair, `e·f` at a
    /// finite place.
    pub fn local_degree(&self) -> usize {
        self.local_degree
    }

    /// Degree of the field the place belongs to.
    pub fn field_degree(&self) -> usize {
        self.field_degree
    }

    pub fn is_archimedean(&self) -> bool {
        matches!(self.kind, PlaceKind::Archimedean { .. })
    }

    /// `Some(true)` for a real embedding, `Some(false)` for a complex pair,
    /// `None` at finite places.
    pub fn is_real(&self) -> Option<bool> {
        match &self.kind {
            PlaceKind::Archimedean { root } => Some(root.is_real),
            PlaceKind::Finite { .. } => None,
        }
    }

    /// The rational prime under a finite place.
    pub fn prime(&self) -> Option<&BigInt> {
        match &self.kind {
            PlaceKind::Finite { p, .. } => Some(p),
            PlaceKind::Archimedean { .. } => None,
        }
    }

    /// The root enclosure representing an archimedean place.
    pub fn root(&self) -> Option<&RootEnclosure> {
        match &self.kind {
            PlaceKind::Archimedean { root } => Some(root),
            PlaceKind::Finite { .. } => None,
        }
    }

    pub fn ramification(&self) -> Option<u64> {
        match &self.kind {
            PlaceKind::Finite { ramification, .. } => Some(*ramification),
            PlaceKind::Archimedean { .. } => None,
        }
    }

    pub fn residue_degree(&self) -> Option<usize> {
        match &self.kind {
            PlaceKind::Finite { residue_degree, .. } => Some(*residue_degree),
            PlaceKind::Archimedean { .. } => None,
        }
    }

    /// The monic irreducible factor of the defining polynomial mod `p`
    /// whose block this finite place is.
    pub fn residual_factor(&self) -> Option<&IntPolynomial> {
        match &self.kind {
            PlaceKind::Finite { residual, .. } => Some(residual),
            PlaceKind::Archimedean { .. } => None,
        }
    }

    pub(crate) fn defining(&self) -> &IntPolynomial {
        &self.defining
    }

    pub(crate) fn matches_element(&self, a: &FieldElement) -> bool {
        self.defining == *a.field().defining_polynomial()
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            PlaceKind::Archimedean { root } if root.is_real => {
                write!(f, "{} (real embedding)", self.id)
            }
            PlaceKind::Archimedean { .. } => write!(f, "{} (complex pair)", self.id),
            PlaceKind::Finite {
                p,
                ramification,
                residue_degree,
                ..
            } => write!(
                f,
                "{} (p = {}, e = {}, f = {})",
                self.id, p, ramification, residue_degree
            ),
        }
    }
}

/// The archimedean places: one per real root, one per conjugate pair, in
/// root midpoint order (real part, then imaginary part). The local degrees
/// add up to the field degree. Results are memoized on the field.
pub fn archimedean_places(field: &Arc<NumberField>, precision: &Precision) -> Result<Vec<Place>> {
    if let Some(cached) = field
        .arch_place_cache
        .lock()
        .expect("place cache poisoned")
        .as_ref()
    {
        return Ok(cached.clone());
    }
    let target = Dyadic::new(BigInt::one(), -ROOT_BITS);
    let roots = field.roots(&target, precision)?;
    let f = field.defining_polynomial();
    let mut places = Vec::new();
    for enc in &roots {
        let mut enc = enc.clone();
        if !enc.is_real {
            // conjugate roots come in mirror pairs; make the imaginary sign
            // definite so exactly one of each pair represents the place
            let mut t = enc.half_width();
            while !enc.z.im.is_strictly_positive() && !enc.z.im.is_strictly_negative() {
                t = t.shl(-1);
                enc = tighten_enclosure(f, &enc, &t, precision)?;
            }
            if enc.z.im.is_strictly_negative() {
                continue;
            }
        }
        places.push(Place {
            id: format!("inf_{}", places.len()),
            local_degree: if enc.is_real { 1 } else { 2 },
            field_degree: field.degree(),
            defining: f.clone(),
            kind: PlaceKind::Archimedean { root: enc },
        });
    }
    let total: usize = places.iter().map(|q| q.local_degree).sum();
    assert_eq!(total, field.degree(), "embedding degrees must add up");
    *field
        .arch_place_cache
        .lock()
        .expect("place cache poisoned") = Some(places.clone());
    Ok(places)
}

/// The places above the rational prime `p`, when the decomposition is
/// certifiable from this presentation: `e` and `f` are read off the blocks
/// of the reduction mod `p`, and each block's Hensel lift is the local
/// factor used for valuations. The `e·f` add up to the field degree.
/// Results are memoized on the field.
///
/// Fails with `UnsupportedPrime` when `p` is composite, when `Z[θ]` is not
/// p-maximal, or when a ramified block lacks a one-segment Newton polygon.
pub fn finite_places_above(field: &Arc<NumberField>, p: &BigInt) -> Result<Vec<Place>> {
    if let Some(cached) = field
        .finite_place_cache
        .lock()
        .expect("place cache poisoned")
        .get(p)
    {
        return Ok(cached.clone());
    }
    if !field.is_maximal_at(p)? {
        return Err(Error::UnsupportedPrime {
            p: p.clone(),
            reason: "Z[theta] is not maximal at p in this presentation; pick a defining \
                     polynomial whose order is p-maximal"
                .into(),
        });
    }
    let f = field.defining_polynomial();
    let factors = factor_mod_p(f, p)?;
    let mut rows = Vec::new();
    for (residual, e) in &factors {
        if *e > 1 {
            certify_block(f, residual, *e, p)?;
        }
        let g = ModPoly::from_int(residual, p);
        let mut block = ModPoly::one(p);
        for _ in 0..*e {
            block = block.mul(&g);
        }
        rows.push((block.lift(), block, residual.clone(), *e));
    }
    rows.sort_by(|a, b| {
        (a.0.degree(), a.0.coeffs()).cmp(&(b.0.degree(), b.0.coeffs()))
    });
    let blocks: Vec<ModPoly> = rows.iter().map(|r| r.1.clone()).collect();
    let lifted = lift_factorization(f, &blocks, p, INITIAL_LIFT)?;
    let mut places = Vec::new();
    for (i, ((block_int, _, residual, e), deep)) in rows.iter().zip(lifted).enumerate() {
        let mut cofactor = ModPoly::one(p);
        for (j, other) in blocks.iter().enumerate() {
            if j != i {
                cofactor = cofactor.mul(other);
            }
        }
        let residue_degree = residual.degree().expect("mod-p factors are nonconstant");
        places.push(Place {
            id: format!("{}_{}", p, i),
            local_degree: e * residue_degree,
            field_degree: field.degree(),
            defining: f.clone(),
            kind: PlaceKind::Finite {
                p: p.clone(),
                residual: residual.clone(),
                block: block_int.clone(),
                cofactor: cofactor.lift(),
                ramification: *e as u64,
                residue_degree,
                lift: Arc::new(Mutex::new(BlockLift {
                    depth: INITIAL_LIFT,
                    factor: deep,
                })),
            },
        });
    }
    let total: usize = places.iter().map(|q| q.local_degree).sum();
    assert_eq!(total, field.degree(), "local degrees must add up");
    field
        .finite_place_cache
        .lock()
        .expect("place cache poisoned")
        .insert(p.clone(), places.clone());
    Ok(places)
}

/// One-segment Newton polygon certificate for a ramified block. In the
/// development `f = Σ_j a_j·ĝ^j` by the residual's monic lift `ĝ`, the
/// points `(j, min_coeff v_p(a_j))` for `j ≤ e` must form the single lower
/// segment from `(0, w_0)` to `(e, 0)` with `gcd(w_0, e) = 1`; that pins
/// exactly one place with ramification `e` over the residual.
fn certify_block(f: &IntPolynomial, residual: &IntPolynomial, e: usize, p: &BigInt) -> Result<()> {
    let fail = |why: &str| Error::UnsupportedPrime {
        p: p.clone(),
        reason: format!("repeated factor {} of the reduction: {}", residual, why),
    };
    let mut rest = f.clone();
    let mut w = Vec::with_capacity(e + 1);
    for _ in 0..=e {
        let (q, r) = rest.div_rem_monic(residual);
        w.push(coefficient_valuation(&r, p)?);
        rest = q;
    }
    let w0 = match w[0] {
        Some(v) if v >= 1 => v,
        Some(_) => return Err(fail("development has a unit constant term")),
        None => return Err(fail("development is degenerate")),
    };
    if w[e] != Some(0) {
        return Err(fail("the block is wider than its multiplicity"));
    }
    for (j, wj) in w.iter().enumerate().take(e).skip(1) {
        if let Some(v) = wj {
            // a point under the segment splits the polygon
            if v * (e as u64) < w0 * ((e - j) as u64) {
                return Err(fail("Newton polygon has more than one segment"));
            }
        }
    }
    if w0.gcd(&(e as u64)) != 1 {
        return Err(fail("polygon slope does not certify a single place"));
    }
    Ok(())
}

/// Minimum `v_p` over the nonzero coefficients; `None` for the zero
/// polynomial.
fn coefficient_valuation(r: &IntPolynomial, p: &BigInt) -> Result<Option<u64>> {
    let mut min: Option<u64> = None;
    for c in r.coeffs() {
        if c.is_zero() {
            continue;
        }
        let v = valuation(c, p)?;
        min = Some(match min {
            Some(m) if m <= v => m,
            _ => v,
        });
    }
    Ok(min)
}

/// Primes that can carry a nontrivial finite value for any of the elements:
/// divisors of a denominator, of the gcd of the norm numerators, or of the
/// discriminant of the presentation. At every other prime, all places `v`
/// give `‖a_i‖_v = 1` for every element.
pub fn candidate_finite_places(elements: &[FieldElement]) -> Result<Vec<BigInt>> {
    let mut primes = relevant_primes(elements)?;
    for q in prime_divisors(elements[0].field().discriminant())? {
        primes.insert(q);
    }
    Ok(primes.into_iter().collect())
}

/// `candidate_finite_places` without the discriminant primes. Enough for
/// sup-style heights: at a prime dividing neither a denominator nor the
/// norm-numerator gcd, every coordinate is integral at every `v` above it
/// and some coordinate is a unit there, so the local max is exactly 1
/// whether or not the decomposition at that prime is even supported.
pub(crate) fn nonunit_primes(elements: &[FieldElement]) -> Result<Vec<BigInt>> {
    Ok(relevant_primes(elements)?.into_iter().collect())
}

fn relevant_primes(elements: &[FieldElement]) -> Result<BTreeSet<BigInt>> {
    let first = elements
        .first()
        .ok_or_else(|| Error::ZeroInput("no elements given".into()))?;
    let field = first.field();
    let mut set = BTreeSet::new();
    let mut norm_gcd = BigInt::zero();
    for a in elements {
        if a.field().as_ref() != field.as_ref() {
            return Err(Error::FieldMismatch);
        }
        for q in prime_divisors(a.denominator())? {
            set.insert(q);
        }
        if !a.is_zero() {
            norm_gcd = norm_gcd.gcd(a.norm().numer());
        }
    }
    if norm_gcd.is_zero() {
        return Err(Error::ZeroInput("all elements are zero".into()));
    }
    if !norm_gcd.is_one() {
        for q in prime_divisors(&norm_gcd)? {
            set.insert(q);
        }
    }
    Ok(set)
}

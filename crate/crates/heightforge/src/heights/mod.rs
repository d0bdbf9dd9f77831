//! Height functions: the Weil height of an algebraic number, the Mahler
//! measure of an integer polynomial, and projective and subspace heights.
//!
//! Every height splits into an exact finite part (a product of rational
//! prime powers collected over the primes that can matter) and an
//! archimedean part evaluated as a certified ball, refined until the product
//! meets the requested radius.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ball::{isolate_roots, refine, Ball, Dyadic, Precision};
use crate::error::{Error, Result};
use crate::exact::factor::factor_over_z;
use crate::exact::ratpoly::squarefree_decomposition;
use crate::exact::{IntPolynomial, RatPolynomial};
use crate::field::{FieldElement, NumberField};
use crate::places::{
    abs_value, archimedean_places, finite_places_above, nonunit_primes, LocalValue, Normalization,
    PAdicValue, PPowerProduct, Place,
};

/// A point of projective space: at least one coordinate nonzero, all in the
/// same presented field. Zero coordinates are allowed.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveVector {
    field: Arc<NumberField>,
    coords: Vec<FieldElement>,
}

impl ProjectiveVector {
    pub fn new(coords: Vec<FieldElement>) -> Result<Self> {
        let first = coords
            .first()
            .ok_or_else(|| Error::ZeroInput("a projective point needs coordinates".into()))?;
        let field = first.field().clone();
        for c in &coords {
            if c.field().as_ref() != field.as_ref() {
                return Err(Error::FieldMismatch);
            }
        }
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroInput(
                "a projective point needs a nonzero coordinate".into(),
            ));
        }
        Ok(ProjectiveVector { field, coords })
    }

    /// The monomial point `(1, α, α², …, α^n)`, with `n + 1` coordinates.
    pub fn powers(alpha: &FieldElement, n: usize) -> Self {
        ProjectiveVector {
            field: alpha.field().clone(),
            coords: alpha.powers(n),
        }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// The same point scaled by a nonzero λ.
    pub fn scale(&self, lambda: &FieldElement) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::ZeroInput("scaling by zero collapses the point".into()));
        }
        ProjectiveVector::new(self.coords.iter().map(|c| c.mul(lambda)).collect())
    }
}

/// An element of the M-th wedge power of `K^N`, with one coordinate per
/// ascending M-subset of `{0, …, N-1}` in lexicographic order.
#[derive(Clone, Debug)]
pub struct WedgeVector {
    field: Arc<NumberField>,
    source_dimension: usize,
    grade: usize,
    coords: BTreeMap<Vec<usize>, FieldElement>,
}

impl WedgeVector {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// `N`, the dimension of the underlying space.
    pub fn source_dimension(&self) -> usize {
        self.source_dimension
    }

    /// `M`, the number of wedged vectors.
    pub fn grade(&self) -> usize {
        self.grade
    }

    /// Coordinates keyed by ascending index subset, in lexicographic order.
    pub fn coords(&self) -> &BTreeMap<Vec<usize>, FieldElement> {
        &self.coords
    }

    pub fn coord(&self, subset: &[usize]) -> Option<&FieldElement> {
        self.coords.get(subset)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.values().all(|c| c.is_zero())
    }

    /// The coordinates as a projective point (lexicographic subset order).
    /// Fails on the zero wedge, which names no subspace.
    pub fn to_projective(&self) -> Result<ProjectiveVector> {
        if self.is_zero() {
            return Err(Error::DependentBasis);
        }
        ProjectiveVector::new(self.coords.values().cloned().collect())
    }
}

/// Ascending M-subsets of `{0, …, n-1}` in lexicographic order.
pub(crate) fn m_subsets(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        let needed = m - cur.len();
        for i in start..=n.saturating_sub(needed) {
            cur.push(i);
            rec(i + 1, n, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if m <= n {
        rec(0, n, m, &mut Vec::new(), &mut out);
    }
    out
}

/// The Weil height `h(α) = ∏_v max{1, |α|_v}` as a ball of radius at most
/// `target`. The finite part is exact; only the archimedean factors carry
/// enclosure error. `h(0) = 1` by the convention `max{1, 0}`.
pub fn weil_height(alpha: &FieldElement, target: &Dyadic, precision: &Precision) -> Result<Ball> {
    let finite = weil_finite_part(alpha)?;
    if alpha.is_zero() {
        return Ok(Ball::one());
    }
    let arch = archimedean_places(alpha.field(), precision)?;
    refine(
        precision,
        |b: &Ball| b.rad().cmp_dyadic(target) != std::cmp::Ordering::Greater,
        |w| {
            let t = Dyadic::new(BigInt::one(), -(w as i64));
            let mut prod = finite.to_ball(w)?;
            for v in &arch {
                let val = abs_value(alpha, v, Normalization::Normalized, &t, precision)?;
                let b = val.as_archimedean().expect("archimedean place");
                prod = prod.mul(&b.max_with(&Ball::one()), w);
            }
            Ok(prod)
        },
    )
}

/// The exact finite part `∏_{v finite} max{1, |α|_v}` of the Weil height.
pub fn weil_finite_part(alpha: &FieldElement) -> Result<PPowerProduct> {
    let mut finite = PPowerProduct::one();
    if alpha.is_zero() {
        return Ok(finite);
    }
    for p in nonunit_primes(std::slice::from_ref(alpha))? {
        for v in finite_places_above(alpha.field(), &p)? {
            let val = abs_value(
                alpha,
                &v,
                Normalization::Normalized,
                &Dyadic::one(),
                &Precision::default(),
            )?;
            let pv = val.as_finite().expect("finite place");
            if pv.cmp_one() == std::cmp::Ordering::Greater {
                finite.mul_value(pv);
            }
        }
    }
    Ok(finite)
}

/// Degenerate-input checks shared by both Mahler measure paths, returning
/// the primitive part.
fn mahler_input(f: &IntPolynomial) -> Result<IntPolynomial> {
    match f.degree() {
        None => Err(Error::ZeroInput("Mahler measure of the zero polynomial".into())),
        Some(0) => Err(Error::ZeroInput(
            "Mahler measure needs a nonconstant polynomial".into(),
        )),
        Some(_) => {
            let (_, prim) = f.content_primitive()?;
            Ok(prim)
        }
    }
}

/// The Mahler measure of the primitive part of `f`, in classical form:
/// `|lc| · ∏ max{1, |root|}` with multiplicities from the squarefree
/// decomposition. Roots never need to be matched across precisions because
/// the product runs over all of them.
pub fn mahler_measure(f: &IntPolynomial, target: &Dyadic, precision: &Precision) -> Result<Ball> {
    let prim = mahler_input(f)?;
    let lc = prim.leading_coeff().abs();
    let (_, sq) = squarefree_decomposition(&RatPolynomial::from_int(&prim))?;
    let mut parts = Vec::new();
    for (g, mult) in sq {
        let (_, gi) = g.primitive_int_model()?;
        parts.push((gi, mult as u64));
    }
    refine(
        precision,
        |b: &Ball| b.rad().cmp_dyadic(target) != std::cmp::Ordering::Greater,
        |w| {
            let t = Dyadic::new(BigInt::one(), -(w as i64));
            let mut acc = Ball::from_bigint(&lc);
            for (g, mult) in &parts {
                let mut prod = Ball::one();
                for root in isolate_roots(g, &t, precision)? {
                    prod = prod.mul(&root.z.modulus(w).max_with(&Ball::one()), w);
                }
                acc = acc.mul(&prod.pow_u64_nonneg(*mult, w), w);
            }
            Ok(acc)
        },
    )
}

/// The Mahler measure computed the other way round: as the product of the
/// Weil heights of the roots, `∏_k h(α_k)`, through the places of the field
/// each irreducible factor generates. An independent path that the classical
/// form is checked against.
///
/// A non-monic factor `g` is handled in the field of `G(x) = lc^{d-1} g(x/lc)`
/// with root `θ/lc`, so this path can fail with `UnsupportedPrime` when that
/// presentation is not certifiably maximal at a prime dividing the leading
/// coefficient. The classical form has no such restriction.
pub fn mahler_measure_from_heights(
    f: &IntPolynomial,
    target: &Dyadic,
    precision: &Precision,
) -> Result<Ball> {
    let prim = mahler_input(f)?;
    let (_, factors) = factor_over_z(&prim)?;
    // each irreducible factor g contributes h(α)^{deg g} for any root α of
    // g, presented in Q[x]/(G) with G the monicization of g and α = θ/lc
    let mut items: Vec<(FieldElement, u64)> = Vec::new();
    for (g, mult) in &factors {
        let degree = g.degree().expect("factors are nonconstant") as u64;
        let (lead, monic) = monicize(g);
        let field = NumberField::new(monic)?;
        let alpha = FieldElement::from_rational_poly(
            field,
            &RatPolynomial::new(vec![
                BigRational::zero(),
                BigRational::new(BigInt::one(), lead),
            ]),
        );
        items.push((alpha, degree * (*mult as u64)));
    }
    refine(
        precision,
        |b: &Ball| b.rad().cmp_dyadic(target) != std::cmp::Ordering::Greater,
        |w| {
            let t = Dyadic::new(BigInt::one(), -(w as i64));
            let mut acc = Ball::one();
            for (alpha, power) in &items {
                let h = weil_height(alpha, &t, precision)?;
                acc = acc.mul(&h.pow_u64_nonneg(*power, w), w);
            }
            Ok(acc)
        },
    )
}

/// `G(x) = lc^{deg-1}·g(x/lc)`: the monic integer polynomial whose roots
/// are `lc` times the roots of `g`.
fn monicize(g: &IntPolynomial) -> (BigInt, IntPolynomial) {
    let d = g.degree().expect("monicize needs positive degree");
    let lead = g.leading_coeff();
    let mut coeffs = vec![BigInt::one(); d + 1];
    let mut pw = BigInt::one();
    for i in (0..d).rev() {
        coeffs[i] = g.coeff(i) * &pw;
        pw *= &lead;
    }
    (lead, IntPolynomial::new(coeffs))
}

/// `H_v(a) = max_i |a_i|_v` with normalized values: exact at finite places,
/// a ball of radius at most `target` at archimedean ones.
pub fn local_projective_height(
    a: &ProjectiveVector,
    v: &Place,
    target: &Dyadic,
    precision: &Precision,
) -> Result<LocalValue> {
    match v.prime() {
        Some(p) => {
            let mut best = PAdicValue::zero(p.clone());
            for c in a.coords() {
                let val = abs_value(c, v, Normalization::Normalized, target, precision)?;
                best = best.max_with(val.as_finite().expect("finite place"));
            }
            Ok(LocalValue::Finite(best))
        }
        None => {
            let b = refine(
                precision,
                |b: &Ball| b.rad().cmp_dyadic(target) != std::cmp::Ordering::Greater,
                |w| {
                    let t = Dyadic::new(BigInt::one(), -(w as i64));
                    let mut best = Ball::zero();
                    for c in a.coords() {
                        let val = abs_value(c, v, Normalization::Normalized, &t, precision)?;
                        best = best.max_with(val.as_archimedean().expect("archimedean place"));
                    }
                    Ok(best)
                },
            )?;
            Ok(LocalValue::Archimedean(b))
        }
    }
}

/// The exact finite part `∏_{v finite} H_v(a)` of the projective height.
pub fn projective_finite_part(a: &ProjectiveVector) -> Result<PPowerProduct> {
    let mut finite = PPowerProduct::one();
    for p in nonunit_primes(a.coords())? {
        for v in finite_places_above(a.field(), &p)? {
            let val = local_projective_height(a, &v, &Dyadic::one(), &Precision::default())?;
            finite.mul_value(val.as_finite().expect("finite place"));
        }
    }
    Ok(finite)
}

/// The global projective height `H(a) = ∏_v H_v(a)`, scale-invariant by the
/// product formula. Exact finite part times certified archimedean factors.
pub fn projective_height(
    a: &ProjectiveVector,
    target: &Dyadic,
    precision: &Precision,
) -> Result<Ball> {
    let finite = projective_finite_part(a)?;
    let arch = archimedean_places(a.field(), precision)?;
    refine(
        precision,
        |b: &Ball| b.rad().cmp_dyadic(target) != std::cmp::Ordering::Greater,
        |w| {
            let t = Dyadic::new(BigInt::one(), -(w as i64));
            let mut prod = finite.to_ball(w)?;
            for v in &arch {
                let hv = local_projective_height(a, v, &t, precision)?;
                prod = prod.mul(hv.as_archimedean().expect("archimedean place"), w);
            }
            Ok(prod)
        },
    )
}

/// The wedge `w_1 ∧ … ∧ w_M` of the rows: the coordinate at subset `I` is
/// the M×M minor with the rows in the given order and the columns of `I`
/// ascending. A dependent family wedges to zero (it is not an error here).
pub fn wedge_coordinates(basis: &[ProjectiveVector]) -> Result<WedgeVector> {
    let first = basis
        .first()
        .ok_or_else(|| Error::ZeroInput("empty basis".into()))?;
    let field = first.field().clone();
    let n = first.len();
    let m = basis.len();
    for b in basis {
        if b.field().as_ref() != field.as_ref() {
            return Err(Error::FieldMismatch);
        }
        if b.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "basis vectors of mixed lengths {} and {}",
                n,
                b.len()
            )));
        }
    }
    if m > n {
        return Err(Error::DimensionMismatch(format!(
            "{} vectors cannot be independent in dimension {}",
            m, n
        )));
    }
    let mut coords = BTreeMap::new();
    for subset in m_subsets(n, m) {
        let rows: Vec<Vec<FieldElement>> = basis
            .iter()
            .map(|b| subset.iter().map(|&j| b.coords()[j].clone()).collect())
            .collect();
        coords.insert(subset, determinant(rows, &field)?);
    }
    Ok(WedgeVector {
        field,
        source_dimension: n,
        grade: m,
        coords,
    })
}

/// Determinant by Gaussian elimination over the field.
pub(crate) fn determinant(
    mut m: Vec<Vec<FieldElement>>,
    field: &Arc<NumberField>,
) -> Result<FieldElement> {
    let n = m.len();
    let mut det = FieldElement::one(field.clone());
    let mut negate = false;
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !m[r][col].is_zero()) {
            Some(r) => r,
            None => return Ok(FieldElement::zero(field.clone())),
        };
        if pivot != col {
            m.swap(pivot, col);
            negate = !negate;
        }
        let pv = m[col][col].clone();
        det = det.mul(&pv);
        let inv = pv.inverse()?;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].mul(&inv);
            for c in col..n {
                let s = factor.mul(&m[col][c]);
                m[r][c] = m[r][c].sub(&s);
            }
        }
    }
    Ok(if negate { det.neg() } else { det })
}

/// The height of the subspace spanned by the basis: the projective height
/// of its wedge. Errors with `DependentBasis` when the family is dependent.
pub fn subspace_height(
    basis: &[ProjectiveVector],
    target: &Dyadic,
    precision: &Precision,
) -> Result<Ball> {
    let wedge = wedge_coordinates(basis)?;
    if wedge.is_zero() {
        return Err(Error::DependentBasis);
    }
    projective_height(&wedge.to_projective()?, target, precision)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::cyclotomic;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn field(cs: &[i64]) -> Arc<NumberField> {
        NumberField::new(IntPolynomial::from_i64_slice(cs)).unwrap()
    }

    fn tol() -> Dyadic {
        Dyadic::new(BigInt::one(), -40)
    }

    fn prec() -> Precision {
        Precision::default()
    }

    fn close_to(b: &Ball, x: f64, eps: f64) -> bool {
        (b.mid().to_f64() - x).abs() < eps
    }

    #[test]
    fn weil_heights_of_rationals() {
        let q = NumberField::rationals();
        let h = |n: i64, d: i64| {
            weil_height(
                &FieldElement::from_rational(q.clone(), rat(n, d)),
                &tol(),
                &prec(),
            )
            .unwrap()
        };
        assert!(h(2, 1).contains_rational(&rat(2, 1)));
        assert!(h(1, 2).contains_rational(&rat(2, 1)));
        assert!(h(-15, 28).contains_rational(&rat(28, 1)));
        assert!(h(0, 1).contains_rational(&rat(1, 1)));
        assert!(h(1, 1).contains_rational(&rat(1, 1)));
    }

    #[test]
    fn weil_height_of_the_golden_ratio() {
        // h(φ) = √φ: the finite part is trivial and only the φ-embedding
        // exceeds 1, normalized by d_v/d = 1/2
        let k = field(&[-1, -1, 1]);
        let h = weil_height(&FieldElement::generator(k), &tol(), &prec()).unwrap();
        assert!(close_to(&h, 1.272019649514069, 1e-9));
        // h² = φ satisfies x² = x + 1
        let sq = h.square(128);
        let lhs = sq.square(128);
        let rhs = sq.add(&Ball::one(), 128);
        assert!(lhs.intersects(&rhs));
    }

    #[test]
    fn weil_height_is_one_on_roots_of_unity() {
        let k = field(&[1, 0, 1]);
        let i = FieldElement::generator(k.clone());
        let h = weil_height(&i, &tol(), &prec()).unwrap();
        assert!(h.contains_rational(&rat(1, 1)));
        let minus_i = i.neg();
        let h = weil_height(&minus_i, &tol(), &prec()).unwrap();
        assert!(h.contains_rational(&rat(1, 1)));
    }

    #[test]
    fn weil_height_finite_part_is_exact() {
        let q = NumberField::rationals();
        let x = FieldElement::from_rational(q, rat(9, 10));
        let finite = weil_finite_part(&x).unwrap();
        assert_eq!(finite.to_rational().unwrap(), rat(10, 1));
    }

    #[test]
    fn lehmer_polynomial_measure() {
        let f = IntPolynomial::from_i64_slice(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let target = Dyadic::new(BigInt::one(), -44);
        let mu = mahler_measure(&f, &target, &prec()).unwrap();
        assert!(close_to(&mu, 1.1762808182599175, 1e-12));
    }

    #[test]
    fn cyclotomic_measures_are_one() {
        for n in [1u32, 2, 3, 4, 6, 8, 12] {
            let mu = mahler_measure(&cyclotomic(n), &tol(), &prec()).unwrap();
            assert!(
                mu.contains_rational(&rat(1, 1)),
                "Mahler measure of the {}th cyclotomic polynomial missed 1",
                n
            );
        }
        // products of cyclotomics and x stay at measure 1
        let f = cyclotomic(6)
            .mul(&cyclotomic(4))
            .mul(&IntPolynomial::monomial(BigInt::one(), 1));
        let mu = mahler_measure(&f, &tol(), &prec()).unwrap();
        assert!(mu.contains_rational(&rat(1, 1)));
    }

    #[test]
    fn trinomial_measure_is_its_real_root() {
        let f = IntPolynomial::from_i64_slice(&[-1, -1, 0, 1]);
        let mu = mahler_measure(&f, &tol(), &prec()).unwrap();
        assert!(close_to(&mu, 1.3247179572447460, 1e-11));
    }

    #[test]
    fn measure_uses_the_primitive_part_and_multiplicities() {
        // 4(x-2)² has primitive part (x-2)², measure 2² = 4
        let f = IntPolynomial::from_i64_slice(&[16, -16, 4]);
        let mu = mahler_measure(&f, &tol(), &prec()).unwrap();
        assert!(mu.contains_rational(&rat(4, 1)));
    }

    #[test]
    fn measure_is_multiplicative() {
        let f = IntPolynomial::from_i64_slice(&[-2, 0, 1]);
        let g = IntPolynomial::from_i64_slice(&[2, 3]);
        let mu_f = mahler_measure(&f, &tol(), &prec()).unwrap();
        let mu_g = mahler_measure(&g, &tol(), &prec()).unwrap();
        let mu_fg = mahler_measure(&f.mul(&g), &tol(), &prec()).unwrap();
        assert!(mu_fg.intersects(&mu_f.mul(&mu_g, 128)));
    }

    #[test]
    fn both_measure_paths_agree() {
        // 6x² - 7x + 2 = (2x-1)(3x-2): measure 6·1·1, and the height path
        // sees h(1/2)·h(2/3) = 2·3
        let f = IntPolynomial::from_i64_slice(&[2, -7, 6]);
        let classical = mahler_measure(&f, &tol(), &prec()).unwrap();
        let via_heights = mahler_measure_from_heights(&f, &tol(), &prec()).unwrap();
        assert!(classical.contains_rational(&rat(6, 1)));
        assert!(via_heights.contains_rational(&rat(6, 1)));

        for cs in [
            vec![-1i64, -1, 0, 1],
            vec![1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1],
            vec![3, 3, 2],
            vec![1, -1, -3, 2],
            vec![-3, 1, 1],
        ] {
            let f = IntPolynomial::from_i64_slice(&cs);
            let a = mahler_measure(&f, &tol(), &prec()).unwrap();
            let b = mahler_measure_from_heights(&f, &tol(), &prec()).unwrap();
            assert!(a.intersects(&b), "measure paths disagree for {}", f);
        }
    }

    #[test]
    fn height_path_refuses_uncertifiable_presentations() {
        // monicizing 5x^5 + 2x^4 - 4x^2 + 2 gives a presentation whose
        // order cannot be certified maximal at 5 (the polygon over the
        // repeated factor is one segment of slope -1 with gcd(4, 4) > 1),
        // so the heights path declines while the classical path answers
        let f = IntPolynomial::from_i64_slice(&[2, 0, -4, 0, 2, 5]);
        assert!(mahler_measure(&f, &tol(), &prec()).is_ok());
        let err = mahler_measure_from_heights(&f, &tol(), &prec()).unwrap_err();
        assert_eq!(err.code(), "UNSUPPORTED_PRIME");
    }

    #[test]
    fn measure_rejects_degenerate_input() {
        let zero = IntPolynomial::zero();
        assert_eq!(
            mahler_measure(&zero, &tol(), &prec()).unwrap_err().code(),
            "ZERO_INPUT"
        );
        let constant = IntPolynomial::constant(BigInt::from(7));
        assert_eq!(
            mahler_measure(&constant, &tol(), &prec()).unwrap_err().code(),
            "ZERO_INPUT"
        );
    }

    #[test]
    fn local_projective_heights_over_q() {
        let q = NumberField::rationals();
        let point = ProjectiveVector::new(vec![
            FieldElement::from_i64(q.clone(), 3),
            FieldElement::from_i64(q.clone(), 4),
        ])
        .unwrap();
        let arch = &archimedean_places(&q, &prec()).unwrap()[0];
        let hv = local_projective_height(&point, arch, &tol(), &prec()).unwrap();
        assert!(hv.as_archimedean().unwrap().contains_rational(&rat(4, 1)));
        let v2 = &finite_places_above(&q, &BigInt::from(2)).unwrap()[0];
        let hv = local_projective_height(&point, v2, &tol(), &prec()).unwrap();
        assert_eq!(hv.as_finite().unwrap().to_rational().unwrap(), rat(1, 1));

        let fractions = ProjectiveVector::new(vec![
            FieldElement::from_rational(q.clone(), rat(1, 2)),
            FieldElement::from_rational(q.clone(), rat(1, 3)),
        ])
        .unwrap();
        let v3 = &finite_places_above(&q, &BigInt::from(3)).unwrap()[0];
        let hv = local_projective_height(&fractions, v3, &tol(), &prec()).unwrap();
        assert_eq!(hv.as_finite().unwrap().to_rational().unwrap(), rat(3, 1));
    }

    #[test]
    fn global_projective_heights_over_q() {
        let q = NumberField::rationals();
        let from_ints = |cs: &[i64]| {
            ProjectiveVector::new(
                cs.iter()
                    .map(|&c| FieldElement::from_i64(q.clone(), c))
                    .collect(),
            )
            .unwrap()
        };
        let h = projective_height(&from_ints(&[3, 4]), &tol(), &prec()).unwrap();
        assert!(h.contains_rational(&rat(4, 1)));
        // the monomial identity with α = 2, N = 3
        let h = projective_height(&from_ints(&[1, 2, 4, 8]), &tol(), &prec()).unwrap();
        assert!(h.contains_rational(&rat(8, 1)));
        // common factors wash out: (6, 8) ~ (3, 4)
        let h = projective_height(&from_ints(&[6, 8]), &tol(), &prec()).unwrap();
        assert!(h.contains_rational(&rat(4, 1)));
    }

    #[test]
    fn monomial_points_power_the_weil_height() {
        let k = field(&[-1, -1, 1]);
        let phi = FieldElement::generator(k.clone());
        for n in 1..=3usize {
            let point = ProjectiveVector::powers(&phi, n);
            let hp = projective_height(&point, &tol(), &prec()).unwrap();
            let h = weil_height(&phi, &tol(), &prec()).unwrap();
            assert!(
                hp.intersects(&h.pow_u64_nonneg(n as u64, 128)),
                "H((1, φ, …, φ^{})) disagrees with h(φ)^{}",
                n,
                n
            );
        }
    }

    #[test]
    fn projective_height_is_scale_and_permutation_invariant() {
        let k = field(&[1, 0, 1]);
        let i = FieldElement::generator(k.clone());
        let a = ProjectiveVector::new(vec![
            FieldElement::from_rational(k.clone(), rat(3, 2)),
            i.add(&FieldElement::one(k.clone())),
            FieldElement::zero(k.clone()),
        ])
        .unwrap();
        let h = projective_height(&a, &tol(), &prec()).unwrap();

        let lambda = i.add(&FieldElement::from_i64(k.clone(), 2));
        let scaled = a.scale(&lambda).unwrap();
        let hs = projective_height(&scaled, &tol(), &prec()).unwrap();
        assert!(h.intersects(&hs), "scaling by λ moved the height");

        let permuted = ProjectiveVector::new(vec![
            a.coords()[2].clone(),
            a.coords()[0].clone(),
            a.coords()[1].clone(),
        ])
        .unwrap();
        let hp = projective_height(&permuted, &tol(), &prec()).unwrap();
        assert!(h.intersects(&hp), "permutation moved the height");
    }

    #[test]
    fn wedge_coordinate_minors() {
        let q = NumberField::rationals();
        let vec_of = |cs: &[i64]| {
            ProjectiveVector::new(
                cs.iter()
                    .map(|&c| FieldElement::from_i64(q.clone(), c))
                    .collect(),
            )
            .unwrap()
        };
        let w = wedge_coordinates(&[vec_of(&[1, 0]), vec_of(&[0, 1])]).unwrap();
        assert_eq!(
            w.coord(&[0, 1]).unwrap().as_rational().unwrap(),
            rat(1, 1)
        );

        let w = wedge_coordinates(&[vec_of(&[1, 2, 3]), vec_of(&[0, 1, 1])]).unwrap();
        assert_eq!(w.coords().len(), 3);
        assert_eq!(w.coord(&[0, 1]).unwrap().as_rational().unwrap(), rat(1, 1));
        assert_eq!(w.coord(&[0, 2]).unwrap().as_rational().unwrap(), rat(1, 1));
        assert_eq!(
            w.coord(&[1, 2]).unwrap().as_rational().unwrap(),
            rat(-1, 1)
        );

        let dependent = wedge_coordinates(&[vec_of(&[1, 2, 3]), vec_of(&[2, 4, 6])]).unwrap();
        assert!(dependent.is_zero());
    }

    #[test]
    fn subspace_heights() {
        let q = NumberField::rationals();
        let vec_of = |cs: &[i64]| {
            ProjectiveVector::new(
                cs.iter()
                    .map(|&c| FieldElement::from_i64(q.clone(), c))
                    .collect(),
            )
            .unwrap()
        };
        // the whole space has height 1
        let h = subspace_height(&[vec_of(&[1, 0]), vec_of(&[0, 1])], &tol(), &prec()).unwrap();
        assert!(h.contains_rational(&rat(1, 1)));
        // a line's height is the height of its point
        let h = subspace_height(&[vec_of(&[3, 4])], &tol(), &prec()).unwrap();
        assert!(h.contains_rational(&rat(4, 1)));
        // dependent bases are refused
        let err = subspace_height(&[vec_of(&[1, 2, 3]), vec_of(&[2, 4, 6])], &tol(), &prec())
            .unwrap_err();
        assert_eq!(err.code(), "DEPENDENT_BASIS");
    }

    #[test]
    fn subspace_height_survives_basis_change() {
        let q = NumberField::rationals();
        let vec_of = |cs: &[i64]| {
            ProjectiveVector::new(
                cs.iter()
                    .map(|&c| FieldElement::from_i64(q.clone(), c))
                    .collect(),
            )
            .unwrap()
        };
        let b1 = vec_of(&[1, 0, 1]);
        let b2 = vec_of(&[0, 1, 1]);
        let h = subspace_height(&[b1.clone(), b2.clone()], &tol(), &prec()).unwrap();
        // change basis by [[2, 1], [1, 1]]
        let c1 = ProjectiveVector::new(
            b1.coords()
                .iter()
                .zip(b2.coords())
                .map(|(x, y)| x.mul(&FieldElement::from_i64(q.clone(), 2)).add(y))
                .collect(),
        )
        .unwrap();
        let c2 = ProjectiveVector::new(
            b1.coords()
                .iter()
                .zip(b2.coords())
                .map(|(x, y)| x.add(y))
                .collect(),
        )
        .unwrap();
        let hc = subspace_height(&[c1, c2], &tol(), &prec()).unwrap();
        assert!(h.intersects(&hc), "rational basis change moved the height");
    }

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(
            m_subsets(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(m_subsets(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(m_subsets(2, 0), vec![Vec::<usize>::new()]);
        assert!(m_subsets(2, 3).is_empty());
    }

    #[test]
    fn degenerate_vectors_are_rejected() {
        let q = NumberField::rationals();
        let err = ProjectiveVector::new(vec![]).unwrap_err();
        assert_eq!(err.code(), "ZERO_INPUT");
        let err = ProjectiveVector::new(vec![
            FieldElement::zero(q.clone()),
            FieldElement::zero(q.clone()),
        ])
        .unwrap_err();
        assert_eq!(err.code(), "ZERO_INPUT");
        let k = field(&[1, 0, 1]);
        let err = ProjectiveVector::new(vec![FieldElement::one(q), FieldElement::one(k)])
            .unwrap_err();
        assert_eq!(err.code(), "FIELD_MISMATCH");
    }
}

//! Number fields presented as `Q[x]/(f)` with `f` monic, integral, and
//! certified irreducible.
//!
//! The presentation is part of the field's identity here: places, valuations
//! and archimedean embeddings are all computed relative to the generator θ
//! (the class of `x`), and two fields compare equal exactly when their
//! defining polynomials do. The rationals are the degree-1 field defined by
//! `x` itself, so θ = 0 and every element is its constant coefficient.

mod element;

pub use element::FieldElement;

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::ball::{isolate_roots, Dyadic, Precision, RootEnclosure};
use crate::error::{Error, Result};
use crate::exact::factor::is_irreducible_over_z;
use crate::exact::integers::is_prime;
use crate::exact::intpoly::discriminant;
use crate::exact::modp::{factor_mod_p, ModPoly};
use crate::exact::IntPolynomial;
use crate::places::Place;

/// A number field `Q(θ)` with `θ` a root of the stored monic integral
/// irreducible polynomial.
pub struct NumberField {
    defining: IntPolynomial,
    degree: usize,
    disc: BigInt,
    // best root enclosures computed so far, reused and refined on demand
    roots_cache: Mutex<Option<Vec<RootEnclosure>>>,
    // memoized place decompositions; duplicated work under contention is fine
    pub(crate) arch_place_cache: Mutex<Option<Vec<Place>>>,
    pub(crate) finite_place_cache: Mutex<BTreeMap<BigInt, Vec<Place>>>,
}

impl NumberField {
    /// Builds a field from a monic integral polynomial, certifying
    /// irreducibility by exact factorization over `Z`.
    pub fn new(defining: IntPolynomial) -> Result<Arc<Self>> {
        let degree = match defining.degree() {
            None | Some(0) => {
                return Err(Error::InvalidDefiningPolynomial(
                    "defining polynomial must have positive degree".into(),
                ))
            }
            Some(d) => d,
        };
        if !defining.is_monic() {
            return Err(Error::InvalidDefiningPolynomial(
                "defining polynomial must be monic".into(),
            ));
        }
        let disc = discriminant(&defining)?;
        if degree > 1 {
            if disc.is_zero() {
                return Err(Error::InvalidDefiningPolynomial(
                    "defining polynomial has a repeated factor".into(),
                ));
            }
            if !is_irreducible_over_z(&defining)? {
                return Err(Error::InvalidDefiningPolynomial(
                    "defining polynomial is reducible over Q".into(),
                ));
            }
        }
        Ok(Arc::new(NumberField {
            defining,
            degree,
            disc,
            roots_cache: Mutex::new(None),
            arch_place_cache: Mutex::new(None),
            finite_place_cache: Mutex::new(BTreeMap::new()),
        }))
    }

    /// The rationals, presented by the polynomial `x` (so θ = 0).
    pub fn rationals() -> Arc<Self> {
        NumberField::new(IntPolynomial::monomial(BigInt::one(), 1))
            .expect("x is monic and irreducible")
    }

    pub fn defining_polynomial(&self) -> &IntPolynomial {
        &self.defining
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    pub fn is_rationals(&self) -> bool {
        self.degree == 1
    }

    /// Certified enclosures of all complex roots of the defining polynomial,
    /// each of radius at most `target`, sorted by (real part, imaginary
    /// part) of the midpoints. Results are cached and only recomputed when a
    /// smaller radius is requested.
    pub fn roots(&self, target: &Dyadic, precision: &Precision) -> Result<Vec<RootEnclosure>> {
        if self.degree == 0 {
            return Ok(Vec::new());
        }
        let mut cache = self.roots_cache.lock().expect("roots cache poisoned");
        if let Some(cached) = cache.as_ref() {
            let widest = cached
                .iter()
                .map(|r| r.half_width())
                .fold(Dyadic::zero(), |a, b| Dyadic::max_dyadic(&a, &b));
            if widest.cmp_dyadic(target) != std::cmp::Ordering::Greater {
                return Ok(cached.clone());
            }
        }
        let roots = isolate_roots(&self.defining, target, precision)?;
        *cache = Some(roots.clone());
        Ok(roots)
    }

    /// Number of real embeddings and of conjugate pairs of complex
    /// embeddings, `(r, s)` with `r + 2s = degree`.
    pub fn signature(&self, precision: &Precision) -> Result<(usize, usize)> {
        let target = Dyadic::one();
        let roots = self.roots(&target, precision)?;
        let r = roots.iter().filter(|e| e.is_real).count();
        debug_assert!((self.degree - r) % 2 == 0);
        Ok((r, (self.degree - r) / 2))
    }

    /// Dedekind's criterion: is `Z[θ]` maximal at `p`?
    ///
    /// Writes `f ≡ prod g_i^{e_i} mod p`, lifts `g = prod g_i` and
    /// `h = prod g_i^{e_i - 1}`, and forms `F = (g·h - f)/p`. The order is
    /// `p`-maximal exactly when `gcd(F, g, h) = 1 mod p`.
    pub fn is_maximal_at(&self, p: &BigInt) -> Result<bool> {
        if !is_prime(p) {
            return Err(Error::UnsupportedPrime {
                p: p.clone(),
                reason: "modulus is not prime".into(),
            });
        }
        let factors = factor_mod_p(&self.defining, p)?;
        let mut radical = ModPoly::one(p);
        let mut cofactor = ModPoly::one(p);
        for (g, e) in &factors {
            let gm = ModPoly::from_int(g, p);
            radical = radical.mul(&gm);
            for _ in 1..*e {
                cofactor = cofactor.mul(&gm);
            }
        }
        let product = radical.lift().mul(&cofactor.lift());
        let diff = product.sub(&self.defining);
        let quotient: Vec<BigInt> = diff
            .coeffs()
            .iter()
            .map(|c| {
                debug_assert!((c % p).is_zero(), "g·h ≡ f mod p by construction");
                c / p
            })
            .collect();
        let f_bar = ModPoly::new(p, quotient);
        let t = f_bar.gcd(&radical).gcd(&cofactor);
        Ok(t.degree() == Some(0))
    }
}

/// Structural equality: same presentation, same field.
impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.defining == other.defining
    }
}

impl Eq for NumberField {}

impl std::fmt::Debug for NumberField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "NumberField(Q[x]/({}))", self.defining)
    }
}

impl std::fmt::Display for NumberField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_rationals() && self.defining.coeff(0).is_zero() {
            write!(f, "Q")
        } else {
            write!(f, "Q[x]/({})", self.defining)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(cs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64_slice(cs)
    }

    #[test]
    fn accepts_classic_fields() {
        for cs in [
            vec![1i64, 0, 1],        // Q(i)
            vec![-2, 0, 1],          // Q(sqrt 2)
            vec![-1, -1, 1],         // golden ratio
            vec![-1, -1, 0, 1],      // plastic number
            vec![1, 0, 0, 0, 1],     // Q(zeta_8), needs recombination to certify
        ] {
            let f = IntPolynomial::from_i64_slice(&cs);
            let k = NumberField::new(f.clone()).unwrap();
            assert_eq!(k.degree(), cs.len() - 1);
            assert_eq!(k.defining_polynomial(), &f);
        }
    }

    #[test]
    fn rejects_bad_presentations() {
        // not monic
        let e = NumberField::new(ip(&[1, 0, 2])).unwrap_err();
        assert_eq!(e.code(), "INVALID_DEFINING_POLYNOMIAL");
        // reducible
        let e = NumberField::new(ip(&[-1, 0, 1])).unwrap_err();
        assert_eq!(e.code(), "INVALID_DEFINING_POLYNOMIAL");
        // repeated factor
        let e = NumberField::new(ip(&[1, 2, 1])).unwrap_err();
        assert_eq!(e.code(), "INVALID_DEFINING_POLYNOMIAL");
        // constant
        let e = NumberField::new(ip(&[3])).unwrap_err();
        assert_eq!(e.code(), "INVALID_DEFINING_POLYNOMIAL");
    }

    #[test]
    fn rationals_presentation() {
        let q = NumberField::rationals();
        assert!(q.is_rationals());
        assert_eq!(q.degree(), 1);
        assert_eq!(q.to_string(), "Q");
        // any monic linear polynomial defines Q with a shifted generator
        let shifted = NumberField::new(ip(&[-5, 1])).unwrap();
        assert!(shifted.is_rationals());
        assert_ne!(*q, *shifted, "different presentations are distinct");
    }

    #[test]
    fn signatures() {
        let prec = Precision::default();
        // Q(i): 0 real, 1 pair
        assert_eq!(NumberField::new(ip(&[1, 0, 1])).unwrap().signature(&prec).unwrap(), (0, 1));
        // Q(sqrt 2): 2 real
        assert_eq!(NumberField::new(ip(&[-2, 0, 1])).unwrap().signature(&prec).unwrap(), (2, 0));
        // plastic number: 1 real, 1 pair
        assert_eq!(
            NumberField::new(ip(&[-1, -1, 0, 1])).unwrap().signature(&prec).unwrap(),
            (1, 1)
        );
    }

    #[test]
    fn root_cache_refines() {
        use std::cmp::Ordering;
        let k = NumberField::new(ip(&[-2, 0, 1])).unwrap();
        let prec = Precision::default();
        let coarse = Dyadic::new(BigInt::one(), -10);
        let fine = Dyadic::new(BigInt::one(), -40);
        let within = |r: &RootEnclosure, t: &Dyadic| {
            r.half_width().cmp_dyadic(t) != Ordering::Greater
        };
        let r1 = k.roots(&coarse, &prec).unwrap();
        let r2 = k.roots(&fine, &prec).unwrap();
        assert_eq!(r1.len(), 2);
        assert!(r2.iter().all(|e| within(e, &fine)));
        // cached fine answer now serves coarse requests
        let r3 = k.roots(&coarse, &prec).unwrap();
        assert!(r3.iter().all(|e| within(e, &fine)));
    }

    #[test]
    fn dedekind_maximality() {
        let two = BigInt::from(2);
        let five = BigInt::from(5);
        // Z[sqrt 5] is not maximal at 2 (the ring of integers needs (1+sqrt5)/2)
        let k = NumberField::new(ip(&[-5, 0, 1])).unwrap();
        assert!(!k.is_maximal_at(&two).unwrap());
        assert!(k.is_maximal_at(&five).unwrap());
        // Z[sqrt 2] is maximal everywhere
        let k = NumberField::new(ip(&[-2, 0, 1])).unwrap();
        assert!(k.is_maximal_at(&two).unwrap());
        // Z[i] is maximal at the ramified prime 2
        let k = NumberField::new(ip(&[1, 0, 1])).unwrap();
        assert!(k.is_maximal_at(&two).unwrap());
        // composite modulus is rejected
        let e = k.is_maximal_at(&BigInt::from(6)).unwrap_err();
        assert_eq!(e.code(), "UNSUPPORTED_PRIME");
    }

    #[test]
    fn golden_ratio_ring_is_maximal_at_5() {
        // x^2 - x - 1 ramifies at 5; Z[φ] is the full ring of integers
        let k = NumberField::new(ip(&[-1, -1, 1])).unwrap();
        assert!(k.is_maximal_at(&BigInt::from(5)).unwrap());
    }
}

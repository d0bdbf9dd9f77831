//! Factorization of integer polynomials into irreducibles.
//!
//! The route is classical: strip content, split off squarefree parts with
//! Yun's algorithm, factor each part modulo a prime that keeps it squarefree,
//! lift the modular factors past the Landau-Mignotte coefficient bound, and
//! recombine subsets. Subset recombination is exponential in the number of
//! modular factors, which is fine at the degrees this crate works with.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::hensel::lift_factorization;
use super::integers::primes_up_to;
use super::intpoly::{discriminant, IntPolynomial};
use super::modp::{factor_mod_p, ModPoly};
use super::ratpoly::{squarefree_decomposition, RatPolynomial};
use crate::error::{Error, Result};

/// Prime-search ceilings. The first bound that yields enough usable primes
/// wins; later bounds only matter when the discriminant kills every small
/// prime.
const PRIME_BOUNDS: [u64; 3] = [200, 5_000, 1_000_000];

/// How many usable primes to compare before settling on the one with the
/// fewest modular factors.
const CANDIDATE_PRIMES: usize = 7;

/// Factors `f` over `Z` as `unit * prod(g_i^{e_i})` with each `g_i` primitive,
/// irreducible, and with positive leading coefficient. The factor list is
/// sorted by `(degree, coefficients)`. Errors on the zero polynomial.
pub fn factor_over_z(f: &IntPolynomial) -> Result<(BigInt, Vec<(IntPolynomial, usize)>)> {
    if f.is_zero() {
        return Err(Error::ZeroInput("cannot factor the zero polynomial".into()));
    }
    let (content, primitive) = f.content_primitive()?;
    let (unit, primitive) = if primitive.leading_coeff().is_negative() {
        (-content, primitive.neg())
    } else {
        (content, primitive)
    };
    if primitive.degree() == Some(0) {
        return Ok((unit, Vec::new()));
    }

    let rat = RatPolynomial::from_int(&primitive);
    let (_, parts) = squarefree_decomposition(&rat)?;
    let mut out: Vec<(IntPolynomial, usize)> = Vec::new();
    for (part, mult) in &parts {
        let (_, model) = part.primitive_int_model()?;
        for g in factor_squarefree_primitive(&model)? {
            out.push((g, *mult));
        }
    }
    out.sort_by(|a, b| {
        (a.0.degree(), a.0.coeffs(), a.1).cmp(&(b.0.degree(), b.0.coeffs(), b.1))
    });

    // invariant: the factorization reproduces the input exactly
    let mut check = IntPolynomial::constant(unit.clone());
    for (g, e) in &out {
        for _ in 0..*e {
            check = check.mul(g);
        }
    }
    debug_assert_eq!(&check, f, "factorization must reproduce the input");
    Ok((unit, out))
}

/// True when `f` is irreducible over `Q` (equivalently, over `Z` once
/// content is stripped). Requires positive degree.
pub fn is_irreducible_over_z(f: &IntPolynomial) -> Result<bool> {
    match f.degree() {
        None | Some(0) => Ok(false),
        Some(1) => Ok(true),
        _ => {
            let (_, factors) = factor_over_z(f)?;
            Ok(factors.len() == 1 && factors[0].1 == 1)
        }
    }
}

/// Factors a primitive squarefree polynomial with positive leading
/// coefficient into primitive irreducibles with positive leading
/// coefficients whose product is the input.
fn factor_squarefree_primitive(g: &IntPolynomial) -> Result<Vec<IntPolynomial>> {
    let d = g.degree().expect("squarefree part is nonzero");
    if d == 0 {
        return Ok(Vec::new());
    }
    if d == 1 {
        return Ok(vec![g.clone()]);
    }
    let lead = g.leading_coeff();
    if lead.is_one() {
        return factor_squarefree_monic(g);
    }

    // Monicize: G(x) = l^(d-1) g(x/l) is monic and integral; a factor h of G
    // pulls back to the primitive part of h(l x).
    let mut coeffs = vec![BigInt::zero(); d + 1];
    coeffs[d] = BigInt::one();
    let mut pw = BigInt::one();
    for i in (0..d).rev() {
        coeffs[i] = g.coeff(i) * &pw;
        pw *= &lead;
    }
    let monic = IntPolynomial::new(coeffs);
    debug_assert!(monic.is_monic());
    let mut out = Vec::new();
    for h in factor_squarefree_monic(&monic)? {
        let m = h.degree().expect("factors have positive degree");
        let mut cs = Vec::with_capacity(m + 1);
        let mut pw = BigInt::one();
        for i in 0..=m {
            cs.push(h.coeff(i) * &pw);
            pw *= &lead;
        }
        let scaled = IntPolynomial::new(cs);
        let (_, mut prim) = scaled.content_primitive()?;
        if prim.leading_coeff().is_negative() {
            prim = prim.neg();
        }
        out.push(prim);
    }
    let mut check = IntPolynomial::one();
    for h in &out {
        check = check.mul(h);
    }
    debug_assert_eq!(&check, g, "pullback must reproduce the input");
    Ok(out)
}

fn factor_squarefree_monic(g: &IntPolynomial) -> Result<Vec<IntPolynomial>> {
    let d = g.degree().expect("input is nonzero");
    debug_assert!(g.is_monic());
    if d == 1 {
        return Ok(vec![g.clone()]);
    }
    let disc = discriminant(g)?;
    debug_assert!(!disc.is_zero(), "squarefree input has nonzero discriminant");

    // Pick the usable prime with the fewest modular factors; a single
    // modular factor proves irreducibility outright.
    let mut best: Option<(BigInt, Vec<IntPolynomial>)> = None;
    'search: for bound in PRIME_BOUNDS {
        let mut seen = 0usize;
        for p in primes_up_to(bound) {
            let pb = BigInt::from(p);
            if (&disc % &pb).is_zero() {
                continue;
            }
            let factors = factor_mod_p(g, &pb)?;
            debug_assert!(
                factors.iter().all(|(_, e)| *e == 1),
                "p does not divide the discriminant, so f stays squarefree mod p"
            );
            if factors.len() == 1 {
                return Ok(vec![g.clone()]);
            }
            let lifted: Vec<IntPolynomial> = factors.into_iter().map(|(h, _)| h).collect();
            if best.as_ref().map_or(true, |(_, b)| lifted.len() < b.len()) {
                best = Some((pb, lifted));
            }
            seen += 1;
            if seen >= CANDIDATE_PRIMES {
                break 'search;
            }
        }
        if best.is_some() {
            break;
        }
    }
    let (p, modular) = best.ok_or_else(|| {
        Error::PrecisionExhausted("no usable prime found for modular factorization".into())
    })?;

    // Landau-Mignotte: any monic factor of g has sup norm at most
    // 2^d * ||g||_2, so lifting past twice that pins signed coefficients.
    let mut sq = BigInt::zero();
    for c in g.coeffs() {
        sq += c * c;
    }
    let bound = (BigInt::one() << d) * (sq.sqrt() + 1);
    let two_b: BigInt = bound * 2;
    let mut modulus = p.clone();
    let mut k = 1u64;
    while modulus <= two_b {
        modulus *= &p;
        k += 1;
    }

    let mods: Vec<ModPoly> = modular.iter().map(|h| ModPoly::from_int(h, &p)).collect();
    let lifted = lift_factorization(g, &mods, &p, k)?;
    debug_assert!(lifted.iter().all(|h| h.is_monic()));
    Ok(recombine(g, lifted, &modulus))
}

/// Zassenhaus recombination: try subset products of the lifted factors in
/// order of subset size. The first dividing subset at each size is a true
/// irreducible factor, because every rational factor corresponds to exactly
/// one subset and all smaller subsets have already failed.
fn recombine(g: &IntPolynomial, lifted: Vec<IntPolynomial>, modulus: &BigInt) -> Vec<IntPolynomial> {
    let mut remaining = g.clone();
    let mut active = lifted;
    let mut out = Vec::new();
    let mut size = 1usize;
    while size <= active.len() {
        let mut found = None;
        for combo in index_combinations(active.len(), size) {
            let mut prod = IntPolynomial::one();
            for &i in &combo {
                prod = prod.mul(&active[i]);
                prod = IntPolynomial::new(prod.reduce_mod(modulus));
            }
            let cand = balanced(&prod, modulus);
            debug_assert!(cand.is_monic());
            let (q, r) = remaining.div_rem_monic(&cand);
            if r.is_zero() {
                found = Some((combo, cand, q));
                break;
            }
        }
        match found {
            Some((combo, cand, q)) => {
                out.push(cand);
                remaining = q;
                let keep: Vec<IntPolynomial> = active
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, h)| h)
                    .collect();
                active = keep;
                // stay at the same size: smaller subsets are already exhausted
            }
            None => size += 1,
        }
    }
    debug_assert_eq!(remaining.degree(), Some(0), "all factors recovered");
    out
}

/// Maps coefficients from `[0, m)` to the balanced range `(-m/2, m/2]`.
fn balanced(f: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    let cs = f
        .coeffs()
        .iter()
        .map(|c| {
            let mut c = c.mod_floor(m);
            if &c * 2 > *m {
                c -= m;
            }
            c
        })
        .collect();
    IntPolynomial::new(cs)
}

fn index_combinations(n: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(s);
    fn rec(start: usize, n: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < s - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, s, cur, out);
            cur.pop();
        }
    }
    rec(0, n, s, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(cs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64_slice(cs)
    }

    fn reassemble(unit: &BigInt, factors: &[(IntPolynomial, usize)]) -> IntPolynomial {
        let mut acc = IntPolynomial::constant(unit.clone());
        for (g, e) in factors {
            for _ in 0..*e {
                acc = acc.mul(g);
            }
        }
        acc
    }

    #[test]
    fn x4_plus_1_is_irreducible() {
        // splits into at least two factors mod every prime, so subset
        // recombination has to do real work here
        let f = ip(&[1, 0, 0, 0, 1]);
        assert!(is_irreducible_over_z(&f).unwrap());
    }

    #[test]
    fn swinnerton_dyer_quartic_is_irreducible() {
        // minimal polynomial of sqrt(2) + sqrt(3); also splits mod every prime
        let f = ip(&[1, 0, -10, 0, 1]);
        assert!(is_irreducible_over_z(&f).unwrap());
    }

    #[test]
    fn quartic_splits_into_quadratics() {
        let f = ip(&[1, 0, 1]).mul(&ip(&[-2, 0, 1]));
        let (unit, factors) = factor_over_z(&f).unwrap();
        assert!(unit.is_one());
        assert_eq!(factors.len(), 2);
        assert_eq!(factors[0].0, ip(&[-2, 0, 1]));
        assert_eq!(factors[1].0, ip(&[1, 0, 1]));
        assert_eq!(reassemble(&unit, &factors), f);
    }

    #[test]
    fn sixth_roots_of_unity() {
        let f = ip(&[-1, 0, 0, 0, 0, 0, 1]);
        let (unit, factors) = factor_over_z(&f).unwrap();
        assert!(unit.is_one());
        let degs: Vec<usize> = factors.iter().map(|(g, _)| g.degree().unwrap()).collect();
        assert_eq!(degs, vec![1, 1, 2, 2]);
        assert!(factors.iter().all(|(_, e)| *e == 1));
        assert_eq!(reassemble(&unit, &factors), f);
    }

    #[test]
    fn non_monic_product_of_linears() {
        // (2x+1)(3x+2)
        let f = ip(&[2, 7, 6]);
        let (unit, factors) = factor_over_z(&f).unwrap();
        assert!(unit.is_one());
        assert_eq!(factors.len(), 2);
        assert_eq!(reassemble(&unit, &factors), f);
        assert!(factors.iter().all(|(g, _)| g.degree() == Some(1)));
    }

    #[test]
    fn content_and_multiplicity() {
        // 12 (x-1)^2 (x^2+1)
        let sq = ip(&[-1, 1]).mul(&ip(&[-1, 1]));
        let f = sq.mul(&ip(&[1, 0, 1])).scale(&BigInt::from(12));
        let (unit, factors) = factor_over_z(&f).unwrap();
        assert_eq!(unit, BigInt::from(12));
        assert_eq!(factors.len(), 2);
        assert_eq!(factors[0], (ip(&[-1, 1]), 2));
        assert_eq!(factors[1], (ip(&[1, 0, 1]), 1));
        assert_eq!(reassemble(&unit, &factors), f);
    }

    #[test]
    fn negative_unit() {
        // 20 - 5x^2 = -5 (x-2)(x+2)
        let f = ip(&[20, 0, -5]);
        let (unit, factors) = factor_over_z(&f).unwrap();
        assert_eq!(unit, BigInt::from(-5));
        assert_eq!(factors[0].0, ip(&[-2, 1]));
        assert_eq!(factors[1].0, ip(&[2, 1]));
        assert_eq!(reassemble(&unit, &factors), f);
    }

    #[test]
    fn constants_and_zero() {
        assert!(factor_over_z(&IntPolynomial::zero()).is_err());
        let (unit, factors) = factor_over_z(&ip(&[7])).unwrap();
        assert_eq!(unit, BigInt::from(7));
        assert!(factors.is_empty());
        assert!(!is_irreducible_over_z(&ip(&[7])).unwrap());
    }

    #[test]
    fn mixed_product_recovers_both_factors() {
        // (x^3 - x - 1)(x^4 + 1)
        let f = ip(&[-1, -1, 0, 1]).mul(&ip(&[1, 0, 0, 0, 1]));
        let (unit, factors) = factor_over_z(&f).unwrap();
        assert!(unit.is_one());
        assert_eq!(factors.len(), 2);
        assert_eq!(factors[0].0, ip(&[-1, -1, 0, 1]));
        assert_eq!(factors[1].0, ip(&[1, 0, 0, 0, 1]));
    }

    #[test]
    fn irreducible_quadratic_fast_path() {
        assert!(is_irreducible_over_z(&ip(&[-2, 0, 1])).unwrap());
        assert!(is_irreducible_over_z(&ip(&[-1, 3])).unwrap());
    }
}

//! Hensel lifting of mod-p factorizations to mod p^k.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::intpoly::IntPolynomial;
use super::modp::ModPoly;
use crate::error::{Error, Result};

/// Reduces every coefficient into `[0, m)`.
fn reduce(f: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    IntPolynomial::new(f.reduce_mod(m))
}

fn mod_sub(a: &IntPolynomial, b: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    reduce(&a.sub(b), m)
}

/// Division with remainder mod `m` by a monic divisor.
fn mod_div_rem_monic(a: &IntPolynomial, divisor: &IntPolynomial, m: &BigInt) -> (IntPolynomial, IntPolynomial) {
    let dd = divisor.degree().expect("monic divisor");
    let mut rem: Vec<BigInt> = a.reduce_mod(m);
    while rem.last().map_or(false, |c| c.is_zero()) {
        rem.pop();
    }
    if rem.len() <= dd {
        return (IntPolynomial::zero(), IntPolynomial::new(rem));
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let q = std::mem::replace(&mut rem[i], BigInt::zero());
        if q.is_zero() {
            continue;
        }
        for j in 0..dd {
            let t = (&q * &divisor.coeff(j)).mod_floor(m);
            rem[i - dd + j] = (&rem[i - dd + j] - t).mod_floor(m);
        }
        quot[i - dd] = q;
    }
    rem.truncate(dd);
    (IntPolynomial::new(quot), IntPolynomial::new(rem))
}

/// One quadratic step: from `f = g·h (mod m)`, `s·g + t·h = 1 (mod m)` with
/// `h` monic, to the same congruences mod `m^2`. Returns `(g, h, s, t)`.
fn hensel_step(
    f: &IntPolynomial,
    g: &IntPolynomial,
    h: &IntPolynomial,
    s: &IntPolynomial,
    t: &IntPolynomial,
    m: &BigInt,
) -> (IntPolynomial, IntPolynomial, IntPolynomial, IntPolynomial) {
    let m2 = m * m;
    let e = mod_sub(f, &g.mul(h), &m2);
    let (q, r) = mod_div_rem_monic(&s.mul(&e), h, &m2);
    let g_new = reduce(&g.add(&t.mul(&e)).add(&q.mul(g)), &m2);
    let h_new = reduce(&h.add(&r), &m2);
    // keep g at its original degree: coefficients above it vanish mod m^2
    let dg = g.degree().unwrap();
    let g_new = IntPolynomial::new(g_new.coeffs().iter().take(dg + 1).cloned().collect());

    let b = mod_sub(&s.mul(&g_new).add(&t.mul(&h_new)), &IntPolynomial::one(), &m2);
    let (c, d) = mod_div_rem_monic(&s.mul(&b), &h_new, &m2);
    let s_new = mod_sub(s, &d, &m2);
    let t_new = mod_sub(t, &t.mul(&b).add(&c.mul(&g_new)), &m2);
    (g_new, h_new, s_new, t_new)
}

/// Lifts a coprime pair `f = g0·h0 (mod p)` (both monic) to `f = g·h (mod p^k)`.
pub(crate) fn lift_pair(
    f: &IntPolynomial,
    g0: &ModPoly,
    h0: &ModPoly,
    p: &BigInt,
    k: u64,
) -> Result<(IntPolynomial, IntPolynomial)> {
    let (one, s0, t0) = g0.extended_gcd(h0);
    if !one.is_one() {
        return Err(Error::UnsupportedPrime {
            p: p.clone(),
            reason: "mod-p factors are not coprime".into(),
        });
    }
    let mut g = g0.lift();
    let mut h = h0.lift();
    let mut s = s0.lift();
    let mut t = t0.lift();
    let mut m = p.clone();
    let target = super::integers::pow_u64(p, k);
    while m < target {
        let (g2, h2, s2, t2) = hensel_step(f, &g, &h, &s, &t, &m);
        g = g2;
        h = h2;
        s = s2;
        t = t2;
        m = &m * &m;
    }
    Ok((reduce(&g, &target), reduce(&h, &target)))
}

/// Lifts a complete mod-p factorization of a monic `f` to mod `p^k`.
///
/// `factors` must be monic and pairwise coprime mod `p` with product
/// congruent to `f`. Multiplicities are carried by repetition being absent:
/// each entry lifts to one factor of the same degree, in the same order.
/// The lifted factors are monic with coefficients in `[0, p^k)` and their
/// product is congruent to `f` mod `p^k`.
pub fn lift_factorization(
    f: &IntPolynomial,
    factors: &[ModPoly],
    p: &BigInt,
    k: u64,
) -> Result<Vec<IntPolynomial>> {
    assert!(f.is_monic(), "Hensel lifting requires a monic polynomial");
    let target = super::integers::pow_u64(p, k);
    if factors.len() == 1 {
        return Ok(vec![reduce(f, &target)]);
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let prod = |fs: &[ModPoly]| -> ModPoly {
        let mut acc = ModPoly::one(p);
        for g in fs {
            acc = acc.mul(g);
        }
        acc
    };
    let (gf, hf) = lift_pair(f, &prod(left), &prod(right), p, k)?;
    let mut out = lift_factorization(&gf, left, p, k)?;
    out.extend(lift_factorization(&hf, right, p, k)?);
    // invariant: the lifted product reproduces f mod p^k
    let mut check = IntPolynomial::one();
    for g in &out {
        check = reduce(&check.mul(g), &target);
    }
    if check != reduce(f, &target) {
        return Err(Error::PrecisionExhausted(
            "Hensel lift failed to reproduce the input".into(),
        ));
    }
    Ok(out)
}

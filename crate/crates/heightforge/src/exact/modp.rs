//! Polynomial arithmetic and factorization over the prime field `F_p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::intpoly::IntPolynomial;
use crate::error::{Error, Result};

/// A polynomial over `F_p`, coefficients canonical in `[0, p)`, trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPoly {
    p: BigInt,
    coeffs: Vec<BigInt>,
}

impl ModPoly {
    pub fn new(p: &BigInt, coeffs: Vec<BigInt>) -> Self {
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().map(|c| c.mod_floor(p)).collect();
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        ModPoly { p: p.clone(), coeffs }
    }

    pub fn from_int(f: &IntPolynomial, p: &BigInt) -> Self {
        ModPoly::new(p, f.coeffs().to_vec())
    }

    pub fn zero(p: &BigInt) -> Self {
        ModPoly { p: p.clone(), coeffs: vec![] }
    }

    pub fn one(p: &BigInt) -> Self {
        ModPoly::new(p, vec![BigInt::one()])
    }

    pub fn x(p: &BigInt) -> Self {
        ModPoly::new(p, vec![BigInt::zero(), BigInt::one()])
    }

    pub fn modulus(&self) -> &BigInt {
        &self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    /// Canonical lift to `Z[x]` with coefficients in `[0, p)`.
    pub fn lift(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        ModPoly::new(&self.p, (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        ModPoly::new(&self.p, (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return ModPoly::zero(&self.p);
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ModPoly::new(&self.p, out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        ModPoly::new(&self.p, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return ModPoly::zero(&self.p);
        }
        ModPoly::new(
            &self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    fn inv_scalar(&self, c: &BigInt) -> BigInt {
        // p prime, c nonzero mod p
        c.modpow(&(&self.p - 2), &self.p)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.inv_scalar(&self.leading_coeff());
        self.scale(&inv)
    }

    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "mod-p division by zero polynomial");
        let dd = divisor.degree().unwrap();
        let inv_lc = self.inv_scalar(&divisor.leading_coeff());
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (ModPoly::zero(&self.p), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = (std::mem::replace(&mut rem[i], BigInt::zero()) * &inv_lc).mod_floor(&self.p);
            if q.is_zero() {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().take(dd).enumerate() {
                let t = (&q * c).mod_floor(&self.p);
                rem[i - dd + j] = (&rem[i - dd + j] - t).mod_floor(&self.p);
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        (ModPoly::new(&self.p, quot), ModPoly::new(&self.p, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s·self + t·other = g`,
    /// `g` monic. For coprime inputs `deg s < deg other`, `deg t < deg self`.
    pub fn extended_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let p = &self.p;
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = ModPoly::one(p);
        let mut s1 = ModPoly::zero(p);
        let mut t0 = ModPoly::zero(p);
        let mut t1 = ModPoly::one(p);
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = self.inv_scalar(&r0.leading_coeff());
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// `self^e mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, e: &BigInt, modulus: &Self) -> Self {
        assert!(!e.is_negative());
        let mut acc = ModPoly::one(&self.p);
        let mut base = self.rem(modulus);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = acc.mul(&base).rem(modulus);
            }
            if i + 1 < bits {
                base = base.mul(&base).rem(modulus);
            }
        }
        acc
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = (acc * x + c).mod_floor(&self.p);
        }
        acc
    }
}

/// Deterministic 64-bit stream for equal-degree splitting.
struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    fn next(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
}

fn random_poly(rng: &mut SplitMix64, p: &BigInt, max_deg: usize) -> ModPoly {
    let mut coeffs = Vec::with_capacity(max_deg + 1);
    let limbs = (p.bits() as usize / 64) + 1;
    for _ in 0..=max_deg {
        let mut c = BigInt::zero();
        for _ in 0..limbs {
            c = (c << 64) + BigInt::from(rng.next());
        }
        coeffs.push(c.mod_floor(p));
    }
    ModPoly::new(p, coeffs)
}

/// Squarefree decomposition over `F_p`: `f = prod a_i^i` with the `a_i`
/// monic squarefree and pairwise coprime. Input must be monic.
fn squarefree_mod_p(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    let p = f.modulus().clone();
    let mut out: Vec<(ModPoly, usize)> = Vec::new();
    // stack of (polynomial, multiplicity scale) handling p-th power descent
    let mut stack = vec![(f.clone(), 1usize)];
    while let Some((f, scale)) = stack.pop() {
        if f.degree().map_or(true, |d| d == 0) {
            continue;
        }
        let df = f.derivative();
        if df.is_zero() {
            // f is a polynomial in x^p: take the p-th root coefficientwise
            // (Frobenius fixes F_p, so coefficients carry over directly)
            let pu = num_traits::ToPrimitive::to_usize(&p).expect("p-th power descent needs small p");
            let mut root = Vec::new();
            let mut i = 0;
            while let Some(d) = f.degree() {
                if i > d {
                    break;
                }
                root.push(f.coeff(i));
                i += pu;
            }
            stack.push((ModPoly::new(&p, root), scale * pu));
            continue;
        }
        let c = f.gcd(&df);
        let mut w = f.div_rem(&c).0;
        let mut c = c;
        let mut i = 1usize;
        while w.degree().map_or(false, |d| d > 0) {
            let y = w.gcd(&c);
            let fac = w.div_rem(&y).0;
            if fac.degree().map_or(false, |d| d > 0) {
                out.push((fac.monic(), i * scale));
            }
            w = y;
            c = c.div_rem(&w).0;
            i += 1;
        }
        if c.degree().map_or(false, |d| d > 0) {
            stack.push((c.monic(), scale));
        }
    }
    out
}

/// Distinct-degree decomposition of a monic squarefree polynomial:
/// pairs `(product of irreducibles of degree d, d)`.
fn distinct_degree(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    let p = f.modulus().clone();
    let mut out = Vec::new();
    let mut f = f.clone();
    let mut h = ModPoly::x(&p); // x^(p^d) mod f, iterated
    let mut d = 0usize;
    while f.degree().map_or(false, |deg| deg > 0) {
        d += 1;
        if f.degree().unwrap() < 2 * d {
            // remainder is irreducible of its own degree
            out.push((f.clone(), f.degree().unwrap()));
            break;
        }
        h = h.pow_mod(&p, &f);
        let x = ModPoly::x(&p);
        let g = h.sub(&x).gcd(&f);
        if g.degree().map_or(false, |deg| deg > 0) {
            out.push((g.clone(), d));
            f = f.div_rem(&g).0;
            h = h.rem(&f);
        }
    }
    out
}

/// Equal-degree splitting (Cantor-Zassenhaus for odd `p`, trace maps for
/// `p = 2`) of a monic squarefree product of degree-`d` irreducibles.
fn equal_degree(f: &ModPoly, d: usize, rng: &mut SplitMix64) -> Vec<ModPoly> {
    let deg = f.degree().unwrap();
    if deg == d {
        return vec![f.monic()];
    }
    let p = f.modulus().clone();
    let two = BigInt::from(2);
    loop {
        let a = random_poly(rng, &p, deg - 1);
        if a.degree().is_none() {
            continue;
        }
        let g1 = a.gcd(f);
        if g1.degree().map_or(false, |dg| dg > 0 && dg < deg) {
            let rest = f.div_rem(&g1).0;
            let mut out = equal_degree(&g1, d, rng);
            out.extend(equal_degree(&rest, d, rng));
            return out;
        }
        let b = if p == two {
            // trace map: a + a^2 + a^4 + ... + a^(2^(d-1)) mod f
            let mut acc = a.clone();
            let mut t = a.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            // a^((p^d - 1)/2) - 1 mod f
            let e = (super::intpoly::pow_bigint(&p, d as u64) - 1) / &two;
            let pw = a.pow_mod(&e, f);
            pw.sub(&ModPoly::one(&p))
        };
        let g = b.gcd(f);
        if g.degree().map_or(false, |dg| dg > 0 && dg < deg) {
            let rest = f.div_rem(&g).0;
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&rest, d, rng));
            return out;
        }
    }
}

/// Factors `f mod p` into monic irreducibles with multiplicities.
///
/// Factors are returned as canonical lifts (coefficients in `[0, p)`),
/// sorted by degree then by coefficient vector, so the output is a pure
/// function of the input despite the randomized splitting inside.
/// The product of `lift^mult` times `lc(f)` is congruent to `f mod p`.
pub fn factor_mod_p(f: &IntPolynomial, p: &BigInt) -> Result<Vec<(IntPolynomial, usize)>> {
    if !super::integers::is_prime(p) {
        return Err(Error::UnsupportedPrime {
            p: p.clone(),
            reason: "modulus is not prime".into(),
        });
    }
    let fp = ModPoly::from_int(f, p);
    if fp.is_zero() {
        return Err(Error::ZeroInput(format!(
            "polynomial vanishes identically mod {}",
            p
        )));
    }
    if fp.degree() == Some(0) {
        return Ok(vec![]);
    }
    let fp = fp.monic();
    let mut rng = SplitMix64::new(0x6865_6967_6874_5f70); // fixed seed
    let mut out: Vec<(IntPolynomial, usize)> = Vec::new();
    for (sq, mult) in squarefree_mod_p(&fp) {
        for (prod, d) in distinct_degree(&sq) {
            for irr in equal_degree(&prod, d, &mut rng) {
                out.push((irr.lift(), mult));
            }
        }
    }
    out.sort_by(|a, b| {
        let da = a.0.degree();
        let db = b.0.degree();
        da.cmp(&db).then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
    });
    Ok(out)
}

/// True if `f mod p` is irreducible (over `F_p`) of the same degree as `f`.
pub fn is_irreducible_mod_p(f: &IntPolynomial, p: &BigInt) -> Result<bool> {
    let d = f.degree().ok_or_else(|| Error::ZeroInput("irreducibility of zero".into()))?;
    if (f.leading_coeff().mod_floor(p)).is_zero() {
        return Ok(false); // degree drops mod p
    }
    let factors = factor_mod_p(f, p)?;
    Ok(factors.len() == 1 && factors[0].1 == 1 && factors[0].0.degree() == Some(d))
}

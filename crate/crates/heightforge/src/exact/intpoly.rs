//! Integer polynomials with exact resultants and discriminants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A polynomial over `Z`. `coeffs[i]` is the coefficient of `x^i`; the
/// leading coefficient is nonzero unless the polynomial is zero (empty vec).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Builds from low-to-high coefficients, trimming leading zeros.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPolynomial::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPolynomial::new(vec![c])
    }

    /// The monomial `c·x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        IntPolynomial::new(v)
    }

    pub fn from_i64_slice(cs: &[i64]) -> Self {
        IntPolynomial::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
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

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    pub fn neg(&self) -> Self {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        IntPolynomial::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        IntPolynomial::new(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
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
        IntPolynomial::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntPolynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs: v }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return IntPolynomial::zero();
        }
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval_bigint(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Division with remainder by a monic divisor; exact over `Z`.
    pub fn div_rem_monic(&self, divisor: &Self) -> (Self, Self) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (IntPolynomial::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = std::mem::replace(&mut rem[i], BigInt::zero());
            if q.is_zero() {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().take(dd).enumerate() {
                let t = &q * c;
                rem[i - dd + j] -= t;
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        (IntPolynomial::new(quot), IntPolynomial::new(rem))
    }

    /// Content (gcd of coefficients, always positive) and primitive part.
    /// The sign of the polynomial lives in the primitive part.
    pub fn content_primitive(&self) -> Result<(BigInt, IntPolynomial)> {
        if self.is_zero() {
            return Err(Error::ZeroInput("content of the zero polynomial".into()));
        }
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        let prim = IntPolynomial::new(self.coeffs.iter().map(|c| c / &g).collect());
        Ok((g, prim))
    }

    /// Reduces coefficients into `[0, m)`.
    pub fn reduce_mod(&self, m: &BigInt) -> Vec<BigInt> {
        self.coeffs.iter().map(|c| c.mod_floor(m)).collect()
    }
}

/// The n-th cyclotomic polynomial, built from `x^n - 1` by dividing out
/// `Phi_d` for every proper divisor `d` of `n`.
pub fn cyclotomic(n: u32) -> IntPolynomial {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut num = IntPolynomial::monomial(BigInt::one(), n as usize)
        .sub(&IntPolynomial::one());
    for d in 1..n {
        if n % d == 0 {
            let (q, r) = num.div_rem_monic(&cyclotomic(d));
            debug_assert!(r.is_zero());
            num = q;
        }
    }
    num
}

impl std::fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if i == 0 || !mag.is_one() {
                write!(f, "{}", mag)?;
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            if i == 1 {
                write!(f, "x")?;
            } else if i > 1 {
                write!(f, "x^{}", i)?;
            }
        }
        Ok(())
    }
}

/// Pseudo-remainder: returns `lc(b)^(deg a - deg b + 1) · a  mod  b`.
fn pseudo_rem(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let db = b.degree().expect("pseudo_rem: zero divisor");
    let lc_b = b.leading_coeff();
    let mut r = a.clone();
    let mut e: i64 = a.degree().map_or(0, |da| da as i64 - db as i64 + 1);
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let lead = r.leading_coeff();
        r = r.scale(&lc_b).sub(&b.scale(&lead).shift_up(dr - db));
        e -= 1;
    }
    let mut scale = BigInt::one();
    for _ in 0..e.max(0) {
        scale *= &lc_b;
    }
    r.scale(&scale)
}

/// Resultant of two nonzero integer polynomials, exact, via the
/// subresultant polynomial remainder sequence.
pub fn resultant(f: &IntPolynomial, g: &IntPolynomial) -> Result<BigInt> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroInput("resultant of the zero polynomial".into()));
    }
    let df = f.degree().unwrap();
    let dg = g.degree().unwrap();
    if df == 0 {
        return Ok(pow_bigint(&f.coeff(0), dg as u64));
    }
    if dg == 0 {
        return Ok(pow_bigint(&g.coeff(0), df as u64));
    }
    if df < dg {
        let r = resultant(g, f)?;
        return Ok(if (df * dg) % 2 == 1 { -r } else { r });
    }

    // Subresultant PRS on the primitive parts; contents contribute
    // cont(f)^deg(g) · cont(g)^deg(f).
    let (cf, mut a) = f.content_primitive()?;
    let (cg, mut b) = g.content_primitive()?;
    let t = pow_bigint(&cf, dg as u64) * pow_bigint(&cg, df as u64);

    let mut sign = BigInt::one();
    let mut g_coef = BigInt::one();
    let mut h_coef = BigInt::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = (da - db) as u64;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        let divisor = &g_coef * pow_bigint(&h_coef, delta);
        b = IntPolynomial::new(r.coeffs.iter().map(|c| c / &divisor).collect());
        g_coef = a.leading_coeff();
        // h <- g^delta · h^(1-delta), exact in Z
        h_coef = if delta == 0 {
            h_coef
        } else {
            let num = pow_bigint(&g_coef, delta);
            let den = pow_bigint(&h_coef, delta - 1);
            num / den
        };
        if b.is_zero() {
            return Ok(BigInt::zero());
        }
        if b.degree() == Some(0) {
            let da = a.degree().unwrap() as u64;
            // h <- lc(B)^deg(A) · h^(1-deg(A))
            let final_h = pow_bigint(&b.coeff(0), da) / pow_bigint(&h_coef, da.saturating_sub(1));
            return Ok(sign * t * final_h);
        }
    }
}

/// `disc(f) = (-1)^(d(d-1)/2) · Res(f, f') / lc(f)`, exact: the quotient is
/// always an integer for integer polynomials.
pub fn discriminant(f: &IntPolynomial) -> Result<BigInt> {
    let d = match f.degree() {
        None | Some(0) => {
            return Err(Error::ZeroInput(
                "discriminant of a constant polynomial".into(),
            ))
        }
        Some(d) => d,
    };
    if d == 1 {
        return Ok(BigInt::one());
    }
    let fp = f.derivative();
    let res = if fp.is_zero() {
        BigInt::zero()
    } else {
        resultant(f, &fp)?
    };
    let lc = f.leading_coeff();
    let q = res / lc;
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -q } else { q })
}

pub(crate) fn pow_bigint(b: &BigInt, e: u64) -> BigInt {
    let mut acc = BigInt::one();
    let mut base = b.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = &acc * &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64_slice(cs)
    }

    /// Sylvester-determinant oracle via fraction-free Bareiss elimination.
    /// Independent of the PRS path above.
    pub(crate) fn sylvester_resultant(f: &IntPolynomial, g: &IntPolynomial) -> BigInt {
        let m = f.degree().unwrap();
        let n = g.degree().unwrap();
        if m + n == 0 {
            return BigInt::one();
        }
        let size = m + n;
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        for row in 0..n {
            for (k, c) in f.coeffs().iter().enumerate() {
                mat[row][row + m - k] = c.clone();
            }
        }
        for row in 0..m {
            for (k, c) in g.coeffs().iter().enumerate() {
                mat[n + row][row + n - k] = c.clone();
            }
        }
        // Bareiss
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..size {
            if mat[k][k].is_zero() {
                let swap = (k + 1..size).find(|&r| !mat[r][k].is_zero());
                match swap {
                    Some(r) => {
                        mat.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..size {
                for j in k + 1..size {
                    let num = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                    mat[i][j] = num / &prev;
                }
                mat[i][k] = BigInt::zero();
            }
            prev = mat[k][k].clone();
        }
        let det = mat[size - 1][size - 1].clone();
        if sign < 0 {
            -det
        } else {
            det
        }
    }

    #[test]
    fn resultant_worked_examples() {
        // Res(x-3, x^2+1) = g(3) = 10
        assert_eq!(resultant(&p(&[-3, 1]), &p(&[1, 0, 1])).unwrap(), BigInt::from(10));
        // Res(x^2+1, x^2-2): oracle gives the 4x4 Sylvester determinant
        let f = p(&[1, 0, 1]);
        let g = p(&[-2, 0, 1]);
        assert_eq!(sylvester_resultant(&f, &g), BigInt::from(9));
        assert_eq!(resultant(&f, &g).unwrap(), BigInt::from(9));
        // Res(f, f) = 0 once deg f >= 1
        assert_eq!(resultant(&f, &f).unwrap(), BigInt::zero());
    }

    #[test]
    fn resultant_matches_sylvester_on_gap_sequences() {
        // sparse inputs force degree gaps > 1 in the remainder sequence
        let cases = vec![
            (p(&[1, 0, 0, 0, 0, 1]), p(&[-2, 0, 1])),
            (p(&[3, 0, 0, 0, 0, 0, 2]), p(&[1, 1])),
            (p(&[1, 0, 0, 0, 1, 0, 0, 1]), p(&[5, 0, 0, 1])),
            (p(&[-7, 2, 0, 0, 0, 0, 0, 0, 3]), p(&[1, 0, 0, 0, 0, 2])),
        ];
        for (f, g) in cases {
            assert_eq!(
                resultant(&f, &g).unwrap(),
                sylvester_resultant(&f, &g),
                "f={} g={}",
                f,
                g
            );
        }
    }

    #[test]
    fn discriminant_examples() {
        // x^2 + bx + c -> b^2 - 4c
        assert_eq!(discriminant(&p(&[3, 5, 1])).unwrap(), BigInt::from(25 - 12));
        // x^3 - x - 1 -> -4p^3 - 27q^2 with p = q = -1
        assert_eq!(discriminant(&p(&[-1, -1, 0, 1])).unwrap(), BigInt::from(-23));
        // x^2 - 2 -> 8
        assert_eq!(discriminant(&p(&[-2, 0, 1])).unwrap(), BigInt::from(8));
        assert!(discriminant(&p(&[4])).is_err());
    }

    #[test]
    fn content_and_primitive() {
        let (c, prim) = p(&[4, 0, 6]).content_primitive().unwrap();
        assert_eq!(c, BigInt::from(2));
        assert_eq!(prim, p(&[2, 0, 3]));
        // content positive, sign stays in the primitive part
        let (c, prim) = p(&[0, -4]).content_primitive().unwrap();
        assert_eq!(c, BigInt::from(4));
        assert_eq!(prim, p(&[0, -1]));
        let (c, prim) = p(&[-2, 0, 1]).content_primitive().unwrap();
        assert_eq!(c, BigInt::from(1));
        assert_eq!(prim, p(&[-2, 0, 1]));
        assert!(IntPolynomial::zero().content_primitive().is_err());
    }

    #[test]
    fn monic_division() {
        let f = p(&[1, 2, 3, 4]);
        let d = p(&[1, 1]); // x + 1
        let (q, r) = f.div_rem_monic(&d);
        assert_eq!(q.mul(&d).add(&r), f);
        assert!(r.degree().map_or(true, |dr| dr < 1));
    }

    #[test]
    fn display_round_trip_shapes() {
        assert_eq!(p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]).to_string().is_empty(), false);
        assert_eq!(p(&[]).to_string(), "0");
        assert_eq!(p(&[-3, 0, 1]).to_string(), "x^2 - 3");
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(2), p(&[1, 1]));
        assert_eq!(cyclotomic(4), p(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), p(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
        // prod over d | n reassembles x^n - 1
        let mut prod = IntPolynomial::one();
        for d in 1..=20u32 {
            if 20 % d == 0 {
                prod = prod.mul(&cyclotomic(d));
            }
        }
        let xn_minus_1 = IntPolynomial::monomial(BigInt::one(), 20).sub(&IntPolynomial::one());
        assert_eq!(prod, xn_minus_1);
    }
}

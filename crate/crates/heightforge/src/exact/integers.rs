//! Integer factorization and p-adic valuations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Sieve of Eratosthenes; primes `<= n` ascending.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return vec![];
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| if b { Some(i as u64) } else { None })
        .collect()
}

fn mod_pow(base: &BigInt, exp: &BigInt, m: &BigInt) -> BigInt {
    base.modpow(exp, m)
}

/// Deterministic Miller-Rabin. The base set is sufficient for all inputs
/// below 3.3e24, which covers every 64-bit input exactly; larger inputs get
/// a fixed set of 30 bases, which is overwhelming for the composite sizes
/// reachable here (resultant factors of moderate bit length).
pub fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let p = BigInt::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_1: BigInt = n - BigInt::one();
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let small_bases: &[u64] = &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    let extra_bases: &[u64] = &[
        41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113,
    ];
    let use_extra = n.bits() > 82;
    let bases = small_bases
        .iter()
        .chain(if use_extra { extra_bases.iter() } else { [].iter() });
    'outer: for &b in bases {
        let b = BigInt::from(b);
        let mut x = mod_pow(&b, &d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// One Brent cycle search with increment `c`; returns a divisor of `n`
/// (possibly `n` itself, meaning the attempt failed).
fn brent_attempt(n: &BigInt, c: &BigInt) -> BigInt {
    let f = |x: &BigInt| (x * x + c) % n;
    let mut x = BigInt::from(2);
    let mut y = x.clone();
    let mut r = 1u64;
    loop {
        let saved_x = x.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0u64;
        while k < r {
            let block = 128.min(r - k);
            let mut q = BigInt::one();
            let block_start = y.clone();
            for _ in 0..block {
                y = f(&y);
                q = (&q * (&saved_x - &y).abs()) % n;
            }
            let d = q.gcd(n);
            if !d.is_one() {
                if &d < n {
                    return d;
                }
                // overshot: replay the block one step at a time
                let mut yy = block_start;
                loop {
                    yy = f(&yy);
                    let g = (&saved_x - &yy).abs().gcd(n);
                    if !g.is_one() {
                        return g;
                    }
                }
            }
            k += block;
        }
        x = y.clone();
        r *= 2;
    }
}

/// Brent's cycle variant of Pollard rho. Returns a nontrivial factor of a
/// composite odd `n`. The constant-increment sequence is deterministic;
/// distinct increments are tried until one succeeds.
fn pollard_brent(n: &BigInt) -> BigInt {
    for c in 1u64.. {
        let d = brent_attempt(n, &BigInt::from(c));
        if !d.is_one() && &d != n {
            return d;
        }
    }
    unreachable!()
}

/// Prime factorization of `|n|` as a sorted multiset. Errors on `n = 0`;
/// `|n| = 1` gives the empty list. Deterministic.
pub fn factor_integer(n: &BigInt) -> Result<Vec<BigInt>> {
    if n.is_zero() {
        return Err(Error::ZeroInput("factorization of zero".into()));
    }
    let mut n = n.abs();
    let mut out: Vec<BigInt> = Vec::new();
    for p in primes_up_to(10_000) {
        let p = BigInt::from(p);
        if &p * &p > n {
            break;
        }
        while (&n % &p).is_zero() {
            n = &n / &p;
            out.push(p.clone());
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            out.push(m);
            continue;
        }
        let d = pollard_brent(&m);
        let q = &m / &d;
        stack.push(d);
        stack.push(q);
    }
    out.sort();
    Ok(out)
}

/// Distinct prime divisors of `|n|`, ascending.
pub fn prime_divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut fs = factor_integer(n)?;
    fs.dedup();
    Ok(fs)
}

/// `v_p(n)` for nonzero integer `n`: the exponent of `p` in `n`.
pub fn valuation(n: &BigInt, p: &BigInt) -> Result<u64> {
    if n.is_zero() {
        return Err(Error::ZeroInput("valuation of zero".into()));
    }
    let mut n = n.abs();
    let mut v = 0u64;
    while (&n % p).is_zero() {
        n = &n / p;
        v += 1;
    }
    Ok(v)
}

/// `v_p` of a nonzero rational, as a signed integer.
pub fn valuation_rational(x: &num_rational::BigRational, p: &BigInt) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroInput("valuation of zero".into()));
    }
    let vn = valuation(x.numer(), p)? as i64;
    let vd = valuation(x.denom(), p)? as i64;
    Ok(vn - vd)
}

/// `p^k` for `k >= 0`.
pub fn pow_u64(p: &BigInt, k: u64) -> BigInt {
    super::intpoly::pow_bigint(p, k)
}

/// Integer square root check helper: `Some(r)` if `n = r^2` with `r >= 0`.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Small-prime check used by sieving paths; exact for any size.
pub fn to_small_prime(p: &BigInt) -> Option<u64> {
    p.to_u64()
}

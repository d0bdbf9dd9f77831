//! Certified complex root isolation for squarefree integer polynomials.
//!
//! Pipeline: simultaneous-iteration approximation (Aberth-Ehrlich) in
//! rounded dyadic arithmetic, then certification by disjoint capture boxes
//! (a disc of radius `deg·|f(z)/f'(z)|` around any point contains a root, so
//! `deg` pairwise-disjoint such boxes each hold exactly one), then interval
//! Newton contraction down to the requested radius. Real roots are certified
//! by exact sign changes and carry an identically-zero imaginary part.

use num_traits::Zero;
use std::cmp::Ordering;

use super::complex::ComplexBall;
use super::dyadic::{Dyadic, Round};
use super::real::Ball;
use super::Precision;
use crate::error::{Error, Result};
use crate::exact::ratpoly::RatPolynomial;
use crate::exact::{poly_gcd, IntPolynomial};

/// One isolated root: a certified enclosure and whether the root is real.
#[derive(Debug, Clone)]
pub struct RootEnclosure {
    pub z: ComplexBall,
    pub is_real: bool,
}

impl RootEnclosure {
    pub fn half_width(&self) -> Dyadic {
        self.z.half_width()
    }
}

/// Shrinks a certified enclosure toward its root.
///
/// Interval Newton only ever intersects with the current box, so the result
/// still contains the same unique root; this lets callers refine one root
/// without re-isolating and re-matching the full set.
pub fn tighten_enclosure(
    f: &IntPolynomial,
    enc: &RootEnclosure,
    target: &Dyadic,
    precision: &Precision,
) -> Result<RootEnclosure> {
    if enc.half_width().cmp_dyadic(target) != Ordering::Greater {
        return Ok(enc.clone());
    }
    let fp = f.derivative();
    for prec in precision.steps() {
        if enc.is_real {
            if let Some(b) = refine_real(f, &fp, &enc.z.re, target, prec) {
                return Ok(RootEnclosure {
                    z: ComplexBall::from_real(b),
                    is_real: true,
                });
            }
        } else if let Some(z) = refine_complex(f, &fp, &enc.z, target, prec) {
            return Ok(RootEnclosure { z, is_real: false });
        }
    }
    Err(Error::PrecisionExhausted(
        "could not tighten the root enclosure to the requested radius".into(),
    ))
}

/// Exact Horner evaluation at a dyadic point (no rounding).
pub fn eval_dyadic_exact(f: &IntPolynomial, x: &Dyadic) -> Dyadic {
    let mut acc = Dyadic::zero();
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(x).add(&Dyadic::from_bigint(c.clone()));
    }
    acc
}

/// Interval Horner evaluation over a real ball.
pub fn eval_real_ball(f: &IntPolynomial, x: &Ball, prec: u32) -> Ball {
    let mut acc = Ball::zero();
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(x, prec).add(&Ball::from_bigint(c), prec);
    }
    acc
}

// ---------------------------------------------------------------------------
// Approximation stage: rounded (non-certified) dyadic complex arithmetic.

#[derive(Clone, Debug)]
struct ACplx {
    re: Dyadic,
    im: Dyadic,
}

impl ACplx {
    fn from_f64(re: f64, im: f64) -> Self {
        ACplx {
            re: Dyadic::from_f64(re).unwrap_or_else(Dyadic::zero),
            im: Dyadic::from_f64(im).unwrap_or_else(Dyadic::zero),
        }
    }

    fn round(self, prec: u32) -> Self {
        ACplx {
            re: self.re.round_nearest(prec).0,
            im: self.im.round_nearest(prec).0,
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn add(&self, o: &Self, prec: u32) -> Self {
        ACplx {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
        .round(prec)
    }

    fn sub(&self, o: &Self, prec: u32) -> Self {
        ACplx {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
        .round(prec)
    }

    fn mul(&self, o: &Self, prec: u32) -> Self {
        ACplx {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
        .round(prec)
    }

    fn div(&self, o: &Self, prec: u32) -> Option<Self> {
        let den = o.re.mul(&o.re).add(&o.im.mul(&o.im));
        if den.is_zero() {
            return None;
        }
        let num = self.mul(&ACplx { re: o.re.clone(), im: o.im.neg() }, prec + 8);
        Some(ACplx {
            re: num.re.div(&den, prec, Round::Down),
            im: num.im.div(&den, prec, Round::Down),
        })
    }

    fn max_abs(&self) -> Dyadic {
        Dyadic::max_dyadic(&self.re.abs(), &self.im.abs())
    }
}

fn acplx_horner(coeffs: &[Dyadic], z: &ACplx, prec: u32) -> ACplx {
    let mut acc = ACplx { re: Dyadic::zero(), im: Dyadic::zero() };
    for c in coeffs.iter().rev() {
        acc = acc.mul(z, prec);
        acc.re = acc.re.add(c).round_nearest(prec).0;
    }
    acc
}

/// Seed radius exponent: `2^k` bounds every root modulus (Fujiwara-style,
/// via coefficient bit lengths).
fn seed_radius_exponent(f: &IntPolynomial) -> i64 {
    let d = f.degree().unwrap();
    let bits_lead = f.leading_coeff().bits() as i64;
    let mut k: i64 = 0;
    for i in 0..d {
        let c = f.coeff(i);
        if c.is_zero() {
            continue;
        }
        let num = c.bits() as i64 + 2 - bits_lead;
        let gap = (d - i) as i64;
        let e = (num + gap - 1).div_euclid(gap);
        k = k.max(e);
    }
    k + 1
}

/// Aberth-Ehrlich simultaneous iteration. Best-effort approximations; the
/// certification stage decides whether they were good enough.
fn aberth(f: &IntPolynomial, prec: u32, tol_bits: u32, salt: u64) -> Vec<ACplx> {
    let d = f.degree().unwrap();
    let coeffs: Vec<Dyadic> = f.coeffs().iter().map(|c| Dyadic::from_bigint(c.clone())).collect();
    let deriv = f.derivative();
    let dcoeffs: Vec<Dyadic> = deriv.coeffs().iter().map(|c| Dyadic::from_bigint(c.clone())).collect();

    let k = seed_radius_exponent(f).clamp(-500, 500);
    let r = 2f64.powi(k as i32);
    let phase = 0.401 + 0.077 * (salt as f64);
    let mut z: Vec<ACplx> = (0..d)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / (d as f64) + phase;
            ACplx::from_f64(r * theta.cos(), r * theta.sin())
        })
        .collect();

    let scale_bump = Dyadic::new(1.into(), k);
    for round in 0..500u32 {
        let mut all_small = true;
        for j in 0..d {
            let p = acplx_horner(&coeffs, &z[j], prec);
            if p.is_zero() {
                continue; // landed exactly on a root
            }
            let pp = acplx_horner(&dcoeffs, &z[j], prec);
            let newton = match p.div(&pp, prec) {
                Some(n) => n,
                None => {
                    // derivative vanished here; nudge and retry next round
                    let bump = ACplx::from_f64(0.001 * (j as f64 + 1.0), 0.002);
                    z[j] = z[j].add(&bump.mul(&ACplx { re: scale_bump.clone(), im: Dyadic::zero() }, prec), prec);
                    all_small = false;
                    continue;
                }
            };
            let mut s = ACplx { re: Dyadic::zero(), im: Dyadic::zero() };
            let mut collision = false;
            for l in 0..d {
                if l == j {
                    continue;
                }
                let diff = z[j].sub(&z[l], prec);
                let one = ACplx { re: Dyadic::one(), im: Dyadic::zero() };
                match one.div(&diff, prec) {
                    Some(inv) => s = s.add(&inv, prec),
                    None => {
                        collision = true;
                        break;
                    }
                }
            }
            if collision {
                let bump = ACplx::from_f64(0.003 * (j as f64 + 1.0), -0.001 * (round as f64 + 1.0));
                z[j] = z[j].add(&bump.mul(&ACplx { re: scale_bump.clone(), im: Dyadic::zero() }, prec), prec);
                all_small = false;
                continue;
            }
            let one = ACplx { re: Dyadic::one(), im: Dyadic::zero() };
            let denom = one.sub(&newton.mul(&s, prec), prec);
            let w = match newton.div(&denom, prec) {
                Some(w) => w,
                None => newton.clone(),
            };
            z[j] = z[j].sub(&w, prec);
            // relative step size vs. tolerance
            let scale = z[j].max_abs().add(&Dyadic::one());
            let thresh = scale.mul(&Dyadic::new(1.into(), -(tol_bits as i64)));
            if w.max_abs().cmp_dyadic(&thresh) == Ordering::Greater {
                all_small = false;
            }
        }
        if all_small {
            break;
        }
    }
    z
}

// ---------------------------------------------------------------------------
// Certification stage.

struct Candidate {
    enclosure: RootEnclosure,
}

/// Capture radius at an approximation: `deg · |f(z)/f'(z)|` (upper bound).
/// The open disc of that radius around `z` contains at least one root.
fn capture_radius(f: &IntPolynomial, fp: &IntPolynomial, z: &ComplexBall, prec: u32) -> Option<Dyadic> {
    let d = f.degree().unwrap() as i64;
    let fz = z.eval_int_poly(f, prec);
    let fpz = z.eval_int_poly(fp, prec);
    let q = fz.div(&fpz, prec).ok()?;
    let m = q.modulus(prec).upper();
    Some(m.mul(&Dyadic::from_i64(d)).round(32, Round::Up))
}

/// Boxes are treated as closed; disjointness must be strict.
fn boxes_disjoint(a: &ComplexBall, b: &ComplexBall) -> bool {
    let re_apart = a.re.upper().cmp_dyadic(&b.re.lower()) == Ordering::Less
        || b.re.upper().cmp_dyadic(&a.re.lower()) == Ordering::Less;
    let im_apart = a.im.upper().cmp_dyadic(&b.im.lower()) == Ordering::Less
        || b.im.upper().cmp_dyadic(&a.im.lower()) == Ordering::Less;
    re_apart || im_apart
}

/// Attempts to certify the approximations as `deg f` disjoint enclosures,
/// each containing exactly one root, conjugate-closed, with real roots
/// recognized exactly. Returns `None` when the evidence is insufficient at
/// this precision.
fn certify(
    f: &IntPolynomial,
    approx: &[ACplx],
    prec: u32,
    snap_bits: u32,
) -> Option<Vec<Candidate>> {
    let d = f.degree().unwrap();
    let fp = f.derivative();

    // canonicalize: snap near-axis approximations to the axis, keep the
    // upper half plane, mirror it onto the lower
    let mut reals: Vec<Dyadic> = Vec::new();
    let mut uppers: Vec<(Dyadic, Dyadic)> = Vec::new();
    let mut lower_count = 0usize;
    for z in approx {
        let scale = z.max_abs().add(&Dyadic::one());
        let thresh = scale.mul(&Dyadic::new(1.into(), -(snap_bits as i64)));
        if z.im.abs().cmp_dyadic(&thresh) != Ordering::Greater {
            reals.push(z.re.clone());
        } else if z.im.is_positive() {
            uppers.push((z.re.clone(), z.im.clone()));
        } else {
            lower_count += 1;
        }
    }
    if reals.len() + uppers.len() + lower_count != d || uppers.len() != lower_count {
        return None;
    }

    let mut out: Vec<Candidate> = Vec::new();

    for r in &reals {
        let z = ComplexBall::exact(r.clone(), Dyadic::zero());
        let cap = capture_radius(f, &fp, &z, prec)?;
        if cap.is_zero() {
            // f(r) = 0 exactly: the approximation is the root
            out.push(Candidate {
                enclosure: RootEnclosure { z, is_real: true },
            });
            continue;
        }
        let lo = r.sub(&cap);
        let hi = r.add(&cap);
        let flo = eval_dyadic_exact(f, &lo);
        let fhi = eval_dyadic_exact(f, &hi);
        let (point, ok) = if flo.is_zero() {
            (Some(lo.clone()), true)
        } else if fhi.is_zero() {
            (Some(hi.clone()), true)
        } else {
            (None, flo.is_negative() != fhi.is_negative())
        };
        if !ok {
            return None; // no certified real root here at this precision
        }
        let enclosure = match point {
            Some(p) => RootEnclosure {
                z: ComplexBall::exact(p, Dyadic::zero()),
                is_real: true,
            },
            None => RootEnclosure {
                z: ComplexBall::new(Ball::from_endpoints(&lo, &hi), Ball::zero()),
                is_real: true,
            },
        };
        out.push(Candidate { enclosure });
    }

    for (x, y) in &uppers {
        let z = ComplexBall::exact(x.clone(), y.clone());
        let cap = capture_radius(f, &fp, &z, prec)?;
        let im_lo = y.sub(&cap);
        if !im_lo.is_positive() {
            return None; // box would touch the real axis
        }
        let bx = ComplexBall::new(
            Ball::from_endpoints(&x.sub(&cap), &x.add(&cap)),
            Ball::from_endpoints(&im_lo, &y.add(&cap)),
        );
        out.push(Candidate {
            enclosure: RootEnclosure { z: bx.clone(), is_real: false },
        });
        out.push(Candidate {
            enclosure: RootEnclosure { z: bx.conj(), is_real: false },
        });
    }

    // pairwise disjoint boxes + one root captured per box + deg f boxes
    // altogether pin exactly one root in each
    for i in 0..out.len() {
        for j in i + 1..out.len() {
            if !boxes_disjoint(&out[i].enclosure.z, &out[j].enclosure.z) {
                return None;
            }
        }
    }
    Some(out)
}

// ---------------------------------------------------------------------------
// Refinement stage: interval Newton contraction.

fn refine_real(f: &IntPolynomial, fp: &IntPolynomial, x: &Ball, target: &Dyadic, prec: u32) -> Option<Ball> {
    let mut x = x.clone();
    let mut stall = 0u32;
    for _ in 0..(prec as usize + 64) {
        if x.rad().cmp_dyadic(target) != Ordering::Greater {
            return Some(x);
        }
        let m = x.mid().clone();
        let fm = eval_dyadic_exact(f, &m);
        let fpx = eval_real_ball(fp, &x, prec);
        let quotient = match Ball::exact(fm).div(&fpx, prec) {
            Ok(q) => q,
            Err(_) => return None, // derivative enclosure straddles zero
        };
        let step = Ball::exact(m).sub(&quotient, prec);
        let new_x = match step.intersect(&x) {
            Ok(v) => v.chop(prec),
            Err(_) => return None,
        };
        // demand geometric progress
        let shrank = new_x
            .rad()
            .cmp_dyadic(&x.rad().mul(&Dyadic::new(3.into(), -2)))
            == Ordering::Less;
        if !shrank {
            stall += 1;
            if stall >= 3 {
                return None;
            }
        } else {
            stall = 0;
        }
        x = new_x;
    }
    None
}

fn refine_complex(
    f: &IntPolynomial,
    fp: &IntPolynomial,
    z: &ComplexBall,
    target: &Dyadic,
    prec: u32,
) -> Option<ComplexBall> {
    let mut z = z.clone();
    let mut stall = 0u32;
    for _ in 0..(prec as usize + 64) {
        if z.half_width().cmp_dyadic(target) != Ordering::Greater {
            return Some(z);
        }
        let m = ComplexBall::exact(z.re.mid().clone(), z.im.mid().clone());
        let fm = m.eval_int_poly(f, prec);
        let fpz = z.eval_int_poly(fp, prec);
        let quotient = match fm.div(&fpz, prec) {
            Ok(q) => q,
            Err(_) => return None,
        };
        let step = m.sub(&quotient, prec);
        let new_z = match step.intersect(&z) {
            Ok(v) => ComplexBall::new(v.re.chop(prec), v.im.chop(prec)),
            Err(_) => return None,
        };
        let shrank = new_z
            .half_width()
            .cmp_dyadic(&z.half_width().mul(&Dyadic::new(3.into(), -2)))
            == Ordering::Less;
        if !shrank {
            stall += 1;
            if stall >= 3 {
                return None;
            }
        } else {
            stall = 0;
        }
        z = new_z;
    }
    None
}

// ---------------------------------------------------------------------------

/// Isolates all complex roots of a squarefree integer polynomial.
///
/// Returns exactly `deg f` pairwise-disjoint enclosures, each of half-width
/// at most `target_radius` and certified to contain exactly one root.
/// Non-real roots come in conjugate pairs; `is_real` is decided exactly.
/// Output is sorted by (real part, imaginary part) of the midpoints.
pub fn isolate_roots(
    f: &IntPolynomial,
    target_radius: &Dyadic,
    precision: &Precision,
) -> Result<Vec<RootEnclosure>> {
    let d = match f.degree() {
        None => return Err(Error::ZeroInput("roots of the zero polynomial".into())),
        Some(0) => return Ok(vec![]),
        Some(d) => d,
    };
    if !target_radius.is_positive() {
        return Err(Error::InvalidEnclosure("target radius must be positive".into()));
    }
    let fr = RatPolynomial::from_int(f);
    if poly_gcd(&fr, &fr.derivative()).degree().map_or(false, |g| g > 0) {
        return Err(Error::NotSquarefree);
    }

    if d == 1 {
        // exact rational root -c0/c1
        let q = num_rational::BigRational::new(-f.coeff(0), f.coeff(1));
        for w in precision.steps() {
            let b = Ball::from_rational(&q, w);
            if b.rad().cmp_dyadic(target_radius) != Ordering::Greater {
                return Ok(vec![RootEnclosure {
                    z: ComplexBall::new(b, Ball::zero()),
                    is_real: true,
                }]);
            }
        }
        return Err(Error::PrecisionExhausted(
            "linear root enclosure did not reach the target radius".into(),
        ));
    }

    let fp = f.derivative();
    let mut attempt = 0u64;
    for w in precision.steps() {
        attempt += 1;
        let aberth_prec = w.min(256 + 64 * attempt as u32);
        let tol_bits = aberth_prec.saturating_sub(16).max(48);
        let approx = aberth(f, aberth_prec, tol_bits, attempt - 1);
        let candidates = match certify(f, &approx, w, tol_bits / 2) {
            Some(c) => c,
            None => continue,
        };
        let mut refined: Vec<RootEnclosure> = Vec::with_capacity(d);
        let mut ok = true;
        for c in candidates {
            let r = if c.enclosure.is_real {
                refine_real(f, &fp, &c.enclosure.z.re, target_radius, w)
                    .map(|b| RootEnclosure {
                        z: ComplexBall::new(b, Ball::zero()),
                        is_real: true,
                    })
            } else {
                refine_complex(f, &fp, &c.enclosure.z, target_radius, w)
                    .map(|z| RootEnclosure { z, is_real: false })
            };
            match r {
                Some(e) => refined.push(e),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        refined.sort_by(|a, b| {
            a.z.re
                .mid()
                .cmp_dyadic(b.z.re.mid())
                .then_with(|| a.z.im.mid().cmp_dyadic(b.z.im.mid()))
        });
        return Ok(refined);
    }
    Err(Error::PrecisionExhausted(format!(
        "root isolation did not converge within the {}-bit precision cap",
        precision.cap
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::complex::expand_from_roots;
    use num_rational::BigRational;

    fn ip(cs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64_slice(cs)
    }

    fn tiny() -> Dyadic {
        Dyadic::new(1.into(), -40)
    }

    fn prec() -> Precision {
        Precision::default()
    }

    #[test]
    fn quadratic_complex_pair() {
        // x^2 + 1: roots ±i
        let roots = isolate_roots(&ip(&[1, 0, 1]), &tiny(), &prec()).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|r| !r.is_real));
        assert!(roots[0].z.re.contains_zero());
        assert!(roots[0].z.im.contains_rational(&BigRational::from_integer((-1).into())));
        assert!(roots[1].z.im.contains_rational(&BigRational::from_integer(1.into())));
        // conjugate closure
        assert_eq!(roots[0].z.re, roots[1].z.re);
    }

    #[test]
    fn quadratic_real_pair() {
        // x^2 - 2: ±sqrt 2
        let roots = isolate_roots(&ip(&[-2, 0, 1]), &tiny(), &prec()).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|r| r.is_real));
        // the positive enclosure squares to 2 and sits near 1.4142
        let sq = roots[1].z.re.square(128);
        assert!(sq.contains_rational(&BigRational::from_integer(2.into())));
        assert!((roots[1].z.re.mid().to_f64() - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!(roots[1].z.re.rad().cmp_dyadic(&tiny()) != Ordering::Greater);
        assert!(roots[0].z.re.mid().is_negative());
    }

    #[test]
    fn integer_roots_exact() {
        // (x-1)(x+2)(x-3)
        let f = ip(&[-1, 1]).mul(&ip(&[2, 1])).mul(&ip(&[-3, 1]));
        let roots = isolate_roots(&f, &tiny(), &prec()).unwrap();
        assert_eq!(roots.len(), 3);
        for (r, expect) in roots.iter().zip([-2i64, 1, 3]) {
            assert!(r.is_real);
            assert!(r.z.re.contains_rational(&BigRational::from_integer(expect.into())));
        }
    }

    #[test]
    fn mixed_real_and_complex() {
        // x^3 - x - 1: one real root 1.3247..., one conjugate pair
        let roots = isolate_roots(&ip(&[-1, -1, 0, 1]), &tiny(), &prec()).unwrap();
        assert_eq!(roots.len(), 3);
        let n_real = roots.iter().filter(|r| r.is_real).count();
        assert_eq!(n_real, 1);
        let real = roots.iter().find(|r| r.is_real).unwrap();
        assert!((real.z.re.mid().to_f64() - 1.324_717_957_244_746).abs() < 1e-12);
        // complex pair has modulus < 1 (product of all roots = 1)
        let c = roots.iter().find(|r| !r.is_real).unwrap();
        let m = c.z.modulus(64);
        assert!(m.upper().cmp_dyadic(&Dyadic::one()) == Ordering::Less);
    }

    #[test]
    fn lehmer_polynomial_roots() {
        let f = ip(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let roots = isolate_roots(&f, &tiny(), &prec()).unwrap();
        assert_eq!(roots.len(), 10);
        let mut outside = 0;
        let mut on_circle = 0;
        for r in &roots {
            let m = r.z.modulus(128);
            if m.lower().cmp_dyadic(&Dyadic::one()) == Ordering::Greater {
                outside += 1;
                // the famous smallest known Salem number
                assert!((m.mid().to_f64() - 1.176_280_818_259_917_5).abs() < 1e-12);
                assert!(r.is_real);
            } else if m.upper().cmp_dyadic(&Dyadic::one()) == Ordering::Greater {
                on_circle += 1;
            }
        }
        assert_eq!(outside, 1);
        assert_eq!(on_circle, 8); // Salem: all but two roots on the unit circle
    }

    #[test]
    fn reconstruction_cross_check() {
        // re-expanding prod (x - z_i) must reproduce the coefficients
        for f in [ip(&[-1, -1, 0, 1]), ip(&[5, 0, -3, 0, 1]), ip(&[1, 1, 1, 1, 1])] {
            let roots = isolate_roots(&f, &Dyadic::new(1.into(), -60), &prec()).unwrap();
            let zs: Vec<ComplexBall> = roots.iter().map(|r| r.z.clone()).collect();
            let coeffs = expand_from_roots(&zs, 128);
            let lc = f.leading_coeff();
            for (i, cb) in coeffs.iter().enumerate() {
                let expect = BigRational::new(f.coeff(i), lc.clone());
                assert!(cb.re.contains_rational(&expect), "coeff {} of {}", i, f);
                assert!(cb.im.contains_zero());
            }
        }
    }

    #[test]
    fn tight_target_radius_honored() {
        let target = Dyadic::new(1.into(), -500);
        let roots = isolate_roots(&ip(&[-2, 0, 1]), &target, &prec()).unwrap();
        for r in &roots {
            assert!(r.half_width().cmp_dyadic(&target) != Ordering::Greater);
        }
        // and the enclosure still squares to 2
        let sq = roots[1].z.re.square(600);
        assert!(sq.contains_rational(&BigRational::from_integer(2.into())));
    }

    #[test]
    fn rejects_non_squarefree() {
        let f = ip(&[1, 1]).mul(&ip(&[1, 1]));
        assert!(matches!(
            isolate_roots(&f, &tiny(), &prec()),
            Err(Error::NotSquarefree)
        ));
    }

    #[test]
    fn linear_exact() {
        // 3x - 2
        let roots = isolate_roots(&ip(&[-2, 3]), &Dyadic::new(1.into(), -80), &prec()).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(roots[0].is_real);
        assert!(roots[0].z.re.contains_rational(&BigRational::new(2.into(), 3.into())));
    }

    #[test]
    fn precision_cap_is_an_error() {
        // unreachable radius under a small cap
        let p = Precision { start: 32, cap: 64 };
        let target = Dyadic::new(1.into(), -300);
        let e = isolate_roots(&ip(&[-1, -1, 0, 1]), &target, &p).unwrap_err();
        assert_eq!(e.code(), "PRECISION_EXHAUSTED");
    }
}

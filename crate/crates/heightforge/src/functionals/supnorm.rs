//! Sup norms of homogeneous polynomials over the closed unit polydisc, and
//! dual norms of linear functionals.
//!
//! Finite places: the sup of `|T(z)|_v` over the polydisc `H_v(z) ≤ 1` of an
//! algebraically closed complete field equals the Gauss norm, the maximum of
//! the coefficient values. One inequality is the ultrametric triangle
//! inequality term by term. For the other, divide T by a coefficient of
//! maximal value; the result has a unit coefficient, so its reduction to the
//! residue field is a nonzero polynomial, which has a non-root in a finite
//! extension of the residue field; any unit lift of that non-root is a point
//! of the polydisc where `|T|_v` attains the Gauss norm. The
//! `gauss_norm_bounds_sampled_values` test exercises both halves on integer
//! samples.
//!
//! Archimedean places: `|T|` is separately holomorphic in each coordinate,
//! so the maximum over the closed polydisc sits on the distinguished torus
//! `|z_j| = 1`. Since `T` is homogeneous, a common phase rotation leaves
//! `|T|` unchanged and the first variable can be pinned to 1. The remaining
//! torus is swept in rational coordinates: each circle is two arcs
//! `(1 − t² + 2it)/(1 + t²)` and `(t² − 1 + 2it)/(1 + t²)` for `t ∈ [−1, 1]`,
//! with `|z(t) − z(s)| ≤ 2|t − s|` (the arc length, since dθ/dt ≤ 2). Lower
//! bounds come from exact rational sample points sharpened by a
//! golden-ratio coordinate descent; upper bounds from branch and bound with
//! the per-variable Lipschitz constants `L_j = Σ_r ‖c_r‖·e_{r,j}`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ball::{refine, tighten_enclosure, Ball, ComplexBall, Dyadic, Precision, Round};
use crate::error::{Error, Result};
use crate::places::{abs_value, LocalValue, Normalization, PAdicValue, Place};

use super::{HomogeneousPoly, LinearFunctional};

/// Free variables the torus search must sweep: every variable other than the
/// pinned first one that actually occurs in some term.
fn free_variables(t: &HomogeneousPoly) -> Vec<usize> {
    (1..t.num_vars())
        .filter(|&j| t.terms().keys().any(|e| e[j] > 0))
        .collect()
}

/// Embeds the coefficients of `t` at the Archimedean place `v`, tightened to
/// the working precision.
fn embed_terms(
    t: &HomogeneousPoly,
    v: &Place,
    w: u32,
    precision: &Precision,
) -> Result<Vec<(Vec<u32>, ComplexBall)>> {
    let target = Dyadic::new(BigInt::one(), -(w as i64));
    let enc = tighten_enclosure(v.defining(), v.root().expect("archimedean place"), &target, precision)?;
    let mut out = Vec::with_capacity(t.terms().len());
    for (exps, c) in t.terms() {
        let num = enc.z.eval_int_poly(c.numerator(), w);
        let den = ComplexBall::from_real(Ball::from_bigint(c.denominator()));
        out.push((exps.clone(), num.div(&den, w)?));
    }
    Ok(out)
}

/// One arc of the unit circle in rational coordinates.
fn arc_point(chart: u8, t: &BigRational) -> (BigRational, BigRational) {
    let t2 = t * t;
    let denom = &t2 + BigRational::one();
    let re = if chart == 0 {
        (BigRational::one() - &t2) / &denom
    } else {
        (&t2 - BigRational::one()) / &denom
    };
    let im = (t + t) / denom;
    (re, im)
}

/// `|T|` at the torus point with parameters `ts` on the given arcs; `terms`
/// are the embedded coefficients and `free` the swept variable indices.
fn eval_at(
    terms: &[(Vec<u32>, ComplexBall)],
    free: &[usize],
    charts: &[u8],
    ts: &[BigRational],
    max_exp: &[u32],
    w: u32,
) -> Ball {
    // powers[k] holds z_j^0..z_j^max for the k-th free variable
    let mut powers: Vec<Vec<ComplexBall>> = Vec::with_capacity(free.len());
    for (k, &j) in free.iter().enumerate() {
        let (re, im) = arc_point(charts[k], &ts[k]);
        let z = ComplexBall::new(Ball::from_rational(&re, w), Ball::from_rational(&im, w));
        let mut pows = vec![ComplexBall::one()];
        for _ in 0..max_exp[j] {
            let next = pows.last().unwrap().mul(&z, w);
            pows.push(next);
        }
        powers.push(pows);
    }
    let mut sum = ComplexBall::zero();
    for (exps, c) in terms {
        let mut term = c.clone();
        for (k, &j) in free.iter().enumerate() {
            if exps[j] > 0 {
                term = term.mul(&powers[k][exps[j] as usize], w);
            }
        }
        sum = sum.add(&term, w);
    }
    sum.modulus(w)
}

struct Cell {
    charts: Vec<u8>,
    lo: Vec<BigRational>,
    hi: Vec<BigRational>,
    ub: Dyadic,
}

// max-heap order on the upper bound, so the loosest cell pops first
impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.ub.cmp_dyadic(&other.ub) == Ordering::Equal
    }
}

impl Eq for Cell {}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ub.cmp_dyadic(&other.ub)
    }
}

fn cell_upper(
    center_value: &Ball,
    lipschitz: &[Dyadic],
    lo: &[BigRational],
    hi: &[BigRational],
) -> Dyadic {
    let mut ub = center_value.upper();
    for (k, l) in lipschitz.iter().enumerate() {
        // |z(t) - z(center)| ≤ 2·halfwidth, so the slack is L_k · width
        let width = Dyadic::from_rational(&(&hi[k] - &lo[k]), 32, Round::Up);
        ub = ub.add(&l.mul(&width));
    }
    ub
}

/// Golden-ratio coordinate descent from `ts`, improving the sample lower
/// bound. Heuristic only; certification is the branch-and-bound's job.
fn descend(
    terms: &[(Vec<u32>, ComplexBall)],
    free: &[usize],
    charts: &[u8],
    ts: &mut Vec<BigRational>,
    max_exp: &[u32],
    w: u32,
    best: &mut Dyadic,
) {
    let shrink = BigRational::new(377.into(), 610.into());
    let mut step = BigRational::new(BigInt::one(), 8.into());
    for _ in 0..24 {
        for k in 0..free.len() {
            for dir in [1i32, -1] {
                let mut cand = ts.clone();
                cand[k] = &ts[k] + &step * BigRational::from_integer(dir.into());
                if cand[k] > BigRational::one() || cand[k] < -BigRational::one() {
                    continue;
                }
                let val = eval_at(terms, free, charts, &cand, max_exp, w).lower();
                if val.cmp_dyadic(best) == Ordering::Greater {
                    *best = val;
                    *ts = cand;
                }
            }
        }
        step *= &shrink;
    }
}

/// The sup of `‖T(z)‖` over the closed unit polydisc at an Archimedean
/// place, raised to `d_v/d`, as a ball of width at most `tolerance`.
///
/// At most 3 variables are supported; the sweep dimension after pinning the
/// common phase is `N − 1`.
pub fn sup_norm_arch(
    t: &HomogeneousPoly,
    v: &Place,
    tolerance: &Dyadic,
    precision: &Precision,
) -> Result<Ball> {
    assert!(v.is_archimedean(), "sup_norm_arch needs an archimedean place");
    if !tolerance.is_positive() {
        return Err(Error::InvalidEnclosure("tolerance must be positive".into()));
    }
    if t.is_zero() {
        return Ok(Ball::zero());
    }
    if t.num_vars() > 3 {
        return Err(Error::UnsupportedDimension(format!(
            "torus sweep supports at most 3 variables, got {}",
            t.num_vars()
        )));
    }
    let d_v = v.local_degree() as i64;
    let d = v.field_degree() as u32;
    let start = precision.start.max(8);
    let mut spent = 0usize;
    refine(
        precision,
        |b: &Ball| b.rad().shl(1).cmp_dyadic(tolerance) != Ordering::Greater,
        |w| {
            // shrink the raw target with the precision step so that the
            // width inflation of the d_v/d power cannot stall the loop
            let inner = tolerance.shl(-(1 + (w / start) as i64));
            let raw = torus_sup(t, v, &inner, w, precision, &mut spent)?;
            raw.pow_rational(d_v, d, w)
        },
    )
}

/// Total subdivision budget per sup-norm query, shared across precision
/// rounds: more precision never unsticks a branch and bound whose bottleneck
/// is cell count.
const SUBDIVISION_BUDGET: usize = 60_000;

fn torus_sup(
    t: &HomogeneousPoly,
    v: &Place,
    tolerance: &Dyadic,
    w: u32,
    precision: &Precision,
    spent: &mut usize,
) -> Result<Ball> {
    let terms = embed_terms(t, v, w, precision)?;
    let free = free_variables(t);
    let n = t.num_vars();
    let mut max_exp = vec![0u32; n];
    for (exps, _) in &terms {
        for j in 0..n {
            max_exp[j] = max_exp[j].max(exps[j]);
        }
    }
    if free.is_empty() {
        // only the pinned variable occurs: |T| is constant on the torus
        return Ok(eval_at(&terms, &free, &[], &[], &max_exp, w));
    }
    if terms.len() == 1 {
        // a single term has constant modulus |c| on the torus
        return Ok(terms[0].1.modulus(w));
    }

    // Σ ‖c_r‖ bounds the sup on the whole polydisc (triangle inequality)
    let mut l1 = Ball::zero();
    for (_, c) in &terms {
        l1 = l1.add(&c.modulus(w), w);
    }
    let l1_up = l1.upper();

    let mut charts_list: Vec<Vec<u8>> = vec![vec![]];
    for _ in 0..free.len() {
        charts_list = charts_list
            .iter()
            .flat_map(|c| {
                [0u8, 1].iter().map(move |&b| {
                    let mut c = c.clone();
                    c.push(b);
                    c
                })
            })
            .collect();
    }

    // when the sup is attained at a ±1 point the triangle bound is tight
    // there, and probing those points certifies the value at the working
    // precision with no subdivision at all
    let origin = vec![BigRational::zero(); free.len()];
    let mut probe_lo = Dyadic::zero();
    for charts in &charts_list {
        let val = eval_at(&terms, &free, charts, &origin, &max_exp, w);
        if val.lower().cmp_dyadic(&probe_lo) == Ordering::Greater {
            probe_lo = val.lower();
        }
    }
    if l1_up.sub(&probe_lo).cmp_dyadic(tolerance) != Ordering::Greater {
        return Ok(Ball::from_endpoints(&probe_lo, &l1_up));
    }

    // Lipschitz constant per swept variable, from the derivative bound
    // |∂T/∂z_j| ≤ Σ_r ‖c_r‖·e_{r,j} on the polydisc; |dz/dt| ≤ 2 is paid in
    // cell_upper by multiplying with the full t-width instead of half
    let lipschitz: Vec<Dyadic> = free
        .iter()
        .map(|&j| {
            let mut l = Dyadic::zero();
            for (exps, c) in &terms {
                if exps[j] > 0 {
                    let m = c.modulus(w).upper().mul(&Dyadic::from_i64(exps[j] as i64));
                    l = l.add(&m);
                }
            }
            l
        })
        .collect();

    // initial grid: both arcs per circle, finer when only one variable is
    // swept; the branch and bound refines from this warm start
    let grid: i64 = if free.len() <= 1 { 32 } else { 16 };
    let mut lo_bound = probe_lo;
    let mut best_point: Option<(Vec<u8>, Vec<BigRational>)> = None;
    let mut cells: BinaryHeap<Cell> = BinaryHeap::new();
    let cuts: Vec<BigRational> = (0..=grid)
        .map(|i| BigRational::new((2 * i - grid).into(), grid.into()))
        .collect();
    let mut stack: Vec<(usize, Vec<usize>)> = vec![(0, vec![])];
    while let Some((k, idx)) = stack.pop() {
        if k == free.len() {
            for charts in &charts_list {
                let lo: Vec<BigRational> = idx.iter().map(|&i| cuts[i].clone()).collect();
                let hi: Vec<BigRational> = idx.iter().map(|&i| cuts[i + 1].clone()).collect();
                let center: Vec<BigRational> = lo
                    .iter()
                    .zip(&hi)
                    .map(|(a, b)| (a + b) / BigRational::from_integer(2.into()))
                    .collect();
                let val = eval_at(&terms, &free, charts, &center, &max_exp, w);
                if val.lower().cmp_dyadic(&lo_bound) == Ordering::Greater {
                    lo_bound = val.lower();
                    best_point = Some((charts.clone(), center.clone()));
                }
                let ub = cell_upper(&val, &lipschitz, &lo, &hi);
                cells.push(Cell {
                    charts: charts.clone(),
                    lo,
                    hi,
                    ub,
                });
            }
            continue;
        }
        for i in 0..grid as usize {
            let mut idx = idx.clone();
            idx.push(i);
            stack.push((k + 1, idx));
        }
    }

    if let Some((charts, mut ts)) = best_point {
        descend(&terms, &free, &charts, &mut ts, &max_exp, w, &mut lo_bound);
    }

    loop {
        let cell = match cells.pop() {
            Some(c) => c,
            None => return Ok(Ball::from_endpoints(&lo_bound, &lo_bound)),
        };
        // the triangle bound caps every cell bound; the sample lower bound
        // floors it (a popped cell may predate a later lower-bound raise)
        let mut ub = if cell.ub.cmp_dyadic(&l1_up) == Ordering::Greater {
            l1_up.clone()
        } else {
            cell.ub.clone()
        };
        if ub.cmp_dyadic(&lo_bound) == Ordering::Less {
            ub = lo_bound.clone();
        }
        if ub.sub(&lo_bound).cmp_dyadic(tolerance) != Ordering::Greater {
            return Ok(Ball::from_endpoints(&lo_bound, &ub));
        }
        *spent += 1;
        if *spent > SUBDIVISION_BUDGET {
            return Err(Error::PrecisionExhausted(
                "sup-norm subdivision budget exhausted before reaching the tolerance".into(),
            ));
        }
        // split along the widest parameter interval
        let split = (0..free.len())
            .max_by(|&a, &b| {
                let wa = &cell.hi[a] - &cell.lo[a];
                let wb = &cell.hi[b] - &cell.lo[b];
                wa.cmp(&wb)
            })
            .unwrap();
        let mid = (&cell.lo[split] + &cell.hi[split]) / BigRational::from_integer(2.into());
        for half in 0..2 {
            let mut lo = cell.lo.clone();
            let mut hi = cell.hi.clone();
            if half == 0 {
                hi[split] = mid.clone();
            } else {
                lo[split] = mid.clone();
            }
            let center: Vec<BigRational> = lo
                .iter()
                .zip(&hi)
                .map(|(a, b)| (a + b) / BigRational::from_integer(2.into()))
                .collect();
            let val = eval_at(&terms, &free, &cell.charts, &center, &max_exp, w);
            if val.lower().cmp_dyadic(&lo_bound) == Ordering::Greater {
                lo_bound = val.lower();
            }
            let ub = cell_upper(&val, &lipschitz, &lo, &hi);
            if ub.cmp_dyadic(&lo_bound) == Ordering::Greater {
                cells.push(Cell {
                    charts: cell.charts.clone(),
                    lo,
                    hi,
                    ub,
                });
            }
        }
    }
}

/// The Gauss norm: `max_r |c_r|_v` over the coefficients, which equals the
/// sup of `|T(z)|_v` over the closed unit polydisc (see the module docs).
/// The zero polynomial has norm zero.
pub fn sup_norm_finite(t: &HomogeneousPoly, v: &Place) -> Result<PAdicValue> {
    let p = v.prime().expect("sup_norm_finite needs a finite place").clone();
    let mut best = PAdicValue::zero(p);
    for c in t.terms().values() {
        let val = abs_value(c, v, Normalization::Normalized, &Dyadic::one(), &Precision::default())?;
        best = best.max_with(val.as_finite().expect("finite place"));
    }
    Ok(best)
}

/// `ν_v(T)`: the sup norm at any place, dispatching on the place kind.
pub fn sup_norm(
    t: &HomogeneousPoly,
    v: &Place,
    tolerance: &Dyadic,
    precision: &Precision,
) -> Result<LocalValue> {
    if v.is_archimedean() {
        Ok(LocalValue::Archimedean(sup_norm_arch(t, v, tolerance, precision)?))
    } else {
        Ok(LocalValue::Finite(sup_norm_finite(t, v)?))
    }
}

/// The dual of the max norm: `max_i |c_i|_v` at a finite place and
/// `(Σ_i ‖c_i‖_v)^{d_v/d}` at an Archimedean one, where the extremal point
/// has unit-modulus coordinates aligned with the coefficient phases.
pub fn dual_norm(
    psi: &LinearFunctional,
    v: &Place,
    tolerance: &Dyadic,
    precision: &Precision,
) -> Result<LocalValue> {
    match v.prime() {
        Some(p) => {
            let mut best = PAdicValue::zero(p.clone());
            for c in psi.coefficients() {
                let val =
                    abs_value(c, v, Normalization::Normalized, &Dyadic::one(), &Precision::default())?;
                best = best.max_with(val.as_finite().expect("finite place"));
            }
            Ok(LocalValue::Finite(best))
        }
        None => {
            let d_v = v.local_degree() as i64;
            let d = v.field_degree() as u32;
            let b = refine(
                precision,
                |b: &Ball| b.rad().shl(1).cmp_dyadic(tolerance) != Ordering::Greater,
                |w| {
                    let target = Dyadic::new(BigInt::one(), -(w as i64));
                    let enc = tighten_enclosure(
                        v.defining(),
                        v.root().expect("archimedean place"),
                        &target,
                        precision,
                    )?;
                    let mut sum = Ball::zero();
                    for c in psi.coefficients() {
                        let num = enc.z.eval_int_poly(c.numerator(), w).modulus(w);
                        let den = Ball::from_bigint(c.denominator());
                        sum = sum.add(&num.div(&den, w)?.clamp_nonneg(), w);
                    }
                    sum.pow_rational(d_v, d, w)
                },
            )?;
            Ok(LocalValue::Archimedean(b))
        }
    }
}

//! Certified arbitrary-precision enclosures: dyadic numbers, real and
//! complex balls, and root isolation built on them.

pub mod complex;
pub mod dyadic;
pub mod real;
pub mod roots;

pub use complex::ComplexBall;
pub use dyadic::{Dyadic, Round};
pub use real::Ball;
pub use roots::{isolate_roots, tighten_enclosure, RootEnclosure};

use crate::error::{Error, Result};

/// Working-precision schedule: start at `start` bits and double up to `cap`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision {
    pub start: u32,
    pub cap: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Precision { start: 64, cap: 8192 }
    }
}

impl Precision {
    pub fn with_cap(cap: u32) -> Self {
        let cap = cap.max(8);
        Precision {
            start: 64.min(cap),
            cap,
        }
    }

    /// The doubling sequence `start, 2·start, …`, ending exactly at `cap`.
    pub fn steps(&self) -> impl Iterator<Item = u32> {
        let start = self.start.max(8);
        let cap = self.cap.max(start);
        let mut w = Some(start);
        std::iter::from_fn(move || {
            let cur = w?;
            w = if cur >= cap {
                None
            } else {
                Some(cur.saturating_mul(2).min(cap))
            };
            Some(cur)
        })
    }
}

/// Re-runs `compute` with doubled working precision until `accept` holds,
/// or fails with a precision-cap error. `compute` may itself signal "not
/// enough precision yet" by returning a precision error.
pub fn refine<T>(
    precision: &Precision,
    mut accept: impl FnMut(&T) -> bool,
    mut compute: impl FnMut(u32) -> Result<T>,
) -> Result<T> {
    for w in precision.steps() {
        match compute(w) {
            Ok(v) => {
                if accept(&v) {
                    return Ok(v);
                }
            }
            Err(Error::PrecisionExhausted(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Err(Error::PrecisionExhausted(format!(
        "no acceptable enclosure within the {}-bit precision cap",
        precision.cap
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_steps() {
        let p = Precision { start: 64, cap: 300 };
        let steps: Vec<u32> = p.steps().collect();
        assert_eq!(steps, vec![64, 128, 256, 300]);
        let p = Precision { start: 64, cap: 64 };
        assert_eq!(p.steps().collect::<Vec<_>>(), vec![64]);
    }

    #[test]
    fn refine_drives_to_target() {
        let target = Dyadic::new(1.into(), -100);
        let q = num_rational::BigRational::new(1.into(), 3.into());
        let b = refine(
            &Precision::default(),
            |b: &Ball| b.rad().cmp_dyadic(&target) != std::cmp::Ordering::Greater,
            |w| Ok(Ball::from_rational(&q, w)),
        )
        .unwrap();
        assert!(b.contains_rational(&q));
    }

    #[test]
    fn refine_reports_cap() {
        let p = Precision { start: 16, cap: 32 };
        let e = refine(&p, |_: &()| false, |_| Ok(())).unwrap_err();
        assert_eq!(e.code(), "PRECISION_EXHAUSTED");
    }
}

//! Exact heights over number fields.
//!
//! This crate computes Weil heights, Mahler measures, projective heights and
//! subspace heights over number fields presented as `Q[x]/(f)`, together with
//! the auxiliary-functional machinery around them: local supremum norms
//! `ν_v`, quotient norms `U_v`, exterior-power functionals `∧^M(Ψ)`, and
//! numerical verifiers for the global identities
//!
//! ```text
//! 1 = H(a)^M · U(a, T)        (homogeneous auxiliary polynomials)
//! 1 = H(W) · U(W, Ψ)          (auxiliary linear transformations)
//! ```
//!
//! at every place of the field, plus congruence-based height lower bounds
//! `H(a)^{deg F} ≥ m / L¹∞(T)` for points on projective subvarieties.
//!
//! All finite-place data is exact (p-powers with rational exponents held
//! symbolically); all Archimedean data is a certified midpoint-radius
//! enclosure ([`ball::Ball`]) that can be refined to any requested radius up
//! to a configurable precision cap.

pub mod ball;
pub mod bounds;
pub mod error;
pub mod exact;
pub mod field;
pub mod functionals;
pub mod heights;
pub mod places;

pub use error::{Error, Result};
pub use field::{FieldElement, NumberField};

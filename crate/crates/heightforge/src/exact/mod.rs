//! Exact integer, rational and mod-p arithmetic primitives.

pub mod factor;
pub mod hensel;
pub mod integers;
pub mod intpoly;
pub mod modp;
pub mod ratpoly;

pub use factor::{factor_over_z, is_irreducible_over_z};
pub use integers::{factor_integer, is_prime, prime_divisors, valuation, valuation_rational};
pub use intpoly::{cyclotomic, discriminant, resultant, IntPolynomial};
pub use modp::{factor_mod_p, ModPoly};
pub use ratpoly::{poly_gcd, poly_xgcd, squarefree_decomposition, RatPolynomial};

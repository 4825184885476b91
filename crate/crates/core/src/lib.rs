//! Concordance invariants of virtual knots and links computed from Gauss
//! codes: the generalized Alexander polynomial, the Zh-construction, link
//! group presentations with Fox-calculus elementary ideals, and a batch
//! slice-obstruction sieve.

pub mod fuzz;
pub mod gauss;
pub mod groups;
pub mod laurent;
pub mod sawollek;
pub mod sieve;
pub mod zh;

pub use laurent::{CanonicalForm, LaurentError, LaurentPoly, PolyMatrix, UnitClass};

//! Exact symbolic calculus for vector-valued exponential polynomials on
//! finitely generated abelian groups `Z^r x Z_{n_1} x ... x Z_{n_t}`.
//!
//! The scalar domain is the cyclotomic field `Q(zeta_N)`, so every
//! computation — translation, difference operators, translate-span
//! dimensions, component isolation, finite-group Fourier synthesis — is
//! exact and equality is decidable. A separate [`lab`] module runs the one
//! intentionally numeric experiment in the crate.
//!
//! All values are immutable after construction and every operation is a pure
//! function, so everything here can be shared freely across threads.

pub mod cyclotomic;
pub mod error;
pub mod expopoly;
pub mod exponential;
pub mod fourier;
pub mod group;
pub mod lab;
pub mod linalg;
pub mod polynomial;
pub mod sample;
pub mod structure;

pub use cyclotomic::Cyclotomic;
pub use error::{Error, Result};
pub use expopoly::{box_points, DifferenceOperator, ExpoPoly, OperatorTerm};
pub use exponential::Exponential;
pub use group::{GroupElement, GroupSpec};
pub use polynomial::VectorPolynomial;

/// Smallest scalar order that hosts the imaginary unit and every torsion
/// character of the group: `lcm(4, n_1, ..., n_t)`.
pub fn default_order(group: &GroupSpec) -> u64 {
    group
        .torsion_orders()
        .iter()
        .fold(4u64, |acc, &n| num::integer::lcm(acc, n))
}

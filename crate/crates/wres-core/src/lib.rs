//! Exact symbolic engine for curvature identities of perturbed Dirac operators.
//!
//! The crate is organised around a small tower of exact structures:
//!
//! * [`sym`] — a commutative polynomial ring over indexed indeterminates
//!   (curvature, form coefficients, formal derivatives) with rational
//!   coefficients and a central formal imaginary unit;
//! * [`clifford`] — the Clifford algebra Cl(n) over that ring, with the
//!   canonical monomial normal form and the spinor trace;
//! * [`perturb`] — Lichnerowicz-type endomorphisms `E` and curvatures `Ω`
//!   for scalar, one-form, two-form, general and conformal perturbations,
//!   computed pointwise in the normal-coordinate gauge;
//! * [`heat`] — Seeley-deWitt densities a₀/a₂/a₄, interior residue
//!   densities and the spectral-action expansion;
//! * [`boundary`] — the one-covariable rational symbol calculus (π⁺
//!   projection, residue integration, sphere moments) and the boundary
//!   term Φ;
//! * [`checks`] — the identity catalogue run by the verifier front end.
//!
//! Everything symbolic is exact: coefficients are arbitrary-precision
//! rationals, π and Ω₃ are formal transcendentals, and identity checks are
//! equalities of canonical forms, never float comparisons.

pub mod boundary;
pub mod checks;
pub mod clifford;
pub mod error;
pub mod fixtures;
pub mod gauge;
pub mod heat;
pub mod perturb;
pub mod report;
pub mod sym;

pub use error::CoreError;
pub use sym::{Monomial, ScalarPoly, Symbol};

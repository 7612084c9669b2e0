//! Newton-polyhedron invariants of real-analytic phases in two variables.
//!
//! The crate computes the Newton distance, height, Varchenko exponent,
//! r-height and the associated critical exponents of bivariate polynomial
//! phases with exact rational arithmetic, and ships numerical probes
//! (oscillatory decay, sublevel growth, Knapp boxes) that check them.

// `!(x > 0.0)` checks are written that way on purpose so NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod adapt;
pub mod cli;
pub mod error;
pub mod homog;
pub mod invariants;
pub mod newton;
pub mod numeric;
pub mod oscillatory;
pub mod poly;
pub mod report;
pub mod series;
pub mod sublevel;

pub use error::*;
pub use newton::{
    build_polyhedron, kappa_principal_part, EdgeInfo, ExponentPoint, Face, FaceKind,
    NewtonPolyhedron, PrincipalFace, Weight,
};
pub use poly::{parse_polynomial, BivariatePolynomial, JetTerm, Monomial, Rational};

//! Relative Milnor algebras of quasihomogeneous polynomials and a decision
//! procedure for equivalence under diffeomorphisms preserving a
//! quasihomogeneous hypersurface `V = {Φ = 0}`.
//!
//! The crate is organised bottom-up:
//!
//! * [`qpoly`] – exact sparse polynomials, weight systems, graded slices,
//!   parsing/printing and Gröbner-basis ideal membership.
//! * [`logder`] – graded pieces of the module of vector fields tangent to `V`.
//! * [`relmilnor`] – graded pieces of the relative Jacobian ideal and the
//!   Hilbert fingerprint of the relative Milnor algebra.
//! * [`pencil`] – the linear pencil `f_t = (1-t) f + t g`, its generic rank and
//!   exceptional locus, and the two orbit conditions.
//! * [`equiv`] – substitutions, transport of ideals and the full decision
//!   pipeline.
//! * [`oracle`] – a deliberately independent dense re-implementation used to
//!   cross-check everything above.

pub mod equiv;
pub mod error;
pub mod linalg;
pub mod logder;
pub mod oracle;
pub mod pencil;
pub mod qpoly;
pub mod rational;
pub mod relmilnor;
pub mod univariate;

pub use error::{Error, Result};
pub use rational::Rational;

/// Version string embedded into every JSON report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

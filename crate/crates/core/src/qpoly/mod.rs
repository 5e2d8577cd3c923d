//! Sparse multivariate polynomials over the rationals together with the
//! weighted machinery built on top of them.

mod groebner;
mod infer;
mod parse;
mod poly;
mod weights;

pub use groebner::{groebner_basis, reduce, reduce_mod_ideal, reduce_mod_ideal_with, Reduction};
pub use infer::{infer_weights, WeightSolution};
pub use parse::{parse_poly, ParseError, ParseErrorKind};
pub use poly::{Monomial, Polynomial, Ring};
pub use weights::{
    euler_apply, is_quasihomogeneous, monomials_of_wdeg, quasi_degree, weighted_order,
    GradedSlice, MonomialOrder, Order, WeightSystem,
};

//! Exact coefficients, graded polynomials in `zeta, x, y, q`, and rewriting
//! normal forms truncated in `q`.

mod monomial;
mod polynomial;
mod rational;
mod rewrite;

pub use monomial::{Grading, Monomial, MonomialOrder};
pub use polynomial::{is_homogeneous, poly_mul, Polynomial};
pub use rational::Rational;
pub use rewrite::{
    confluence_smoke_check, enumerate_normal_monomials, normal_form, CriticalPair, RewriteSystem, Rule,
};

//! Exact computations for the orbifold Gromov-Witten theory of weighted
//! projective lines `P(a,b)`.
//!
//! * [`algebra`]: rationals, graded polynomials, rewriting normal forms.
//! * [`orbifold`]: inertia sectors, ages, the band-inverting involution.
//! * [`twisted_curves`]: Picard data and Riemann-Roch on footballs, map solver.
//! * [`quantum_ring`]: classical and small quantum stringy Chow rings.
//! * [`correlator`]: genus-zero correlators, string/dilaton/divisor, WDVV.

pub mod algebra;
pub mod correlator;
pub mod error;
pub mod orbifold;
pub mod quantum_ring;
pub mod twisted_curves;

pub use error::{Error, Result};

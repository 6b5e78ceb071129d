//! Picard groups, Riemann-Roch and section counts on twisted genus-zero
//! curves ("footballs"), virtual dimensions of maps to `P(a,b)`, and the
//! congruence solver for minimal-degree maps.

mod picard;
mod riemann_roch;

pub use picard::{h0_genus0, pic_canonical, pic_degree, PicClass, PicardGroup};
pub use riemann_roch::{euler_char, solve_map_picard, torsion_class, virtual_dim, Football, MapSpec, SheafClass};

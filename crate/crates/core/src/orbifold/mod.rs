//! Combinatorial model of the cyclotomic inertia stack of `P(a,b)`:
//! sectors, band orders, ages, the band-inverting involution and the
//! age-graded stringy basis. Weighted projective spaces of any dimension are
//! supported for censuses only.

mod sector;
mod weights;
mod wps;

pub use sector::{
    age, all_sectors, census, denominator_bound_check, involution_sector, stringy_basis, BasisClass, ClassKind,
    InertiaComponent, Sector,
};
pub use weights::Weights;
pub use wps::{wps_census, WpsSector};

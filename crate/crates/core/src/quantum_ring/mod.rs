//! The small quantum Chow ring of `P(a,b)` from its presentation: normal
//! basis, structure constants, the modified pairing and self-checks.

mod pairing;
mod presentation;
mod structure;
mod three_point;
mod verify;

pub use pairing::{
    hyperplane_multiple, integrate, integration_normalization, invert, pairing_matrix, IntegrationNormalization,
    PairingMatrix,
};
pub use presentation::{quantum_presentation, ring_grading, RingPresentation};
pub use structure::{
    monomial_sector, structure_constants, SeriesTerm, SparseConstant, StructureConstants, CONFLUENCE_SEED,
};
pub use three_point::{three_point_xy, ThreePointMethod, ThreePointXY};
pub use verify::{
    find_zeta_relabeling, verify_ring, verify_structure, verify_structure_seeded, Check, RingReport, ZetaRelabeling,
    VERIFY_SEED,
};

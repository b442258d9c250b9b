//! Generic graded noncommutative DGA machinery over exact Laurent
//! coefficient rings, together with the homological invariants used by the
//! pipeline.

mod dga;
mod element;
mod field;
mod invariants;
mod laurent;
mod serial;

pub use dga::{Dga, Generator};
pub use element::{Element, MonomialWord};
pub use field::{Field, Scalar};
pub use invariants::{
    acyclicity_test, augmentation_ideal, augmentation_polynomial, bilinearised_lch,
    bilinearised_rank_oracle, equivalent_under_basis_change, matrix_rank, superpotential_check,
    superpotential_search, Augmentation, AugmentationIdeal,
};
pub use laurent::{Expo, LaurentPoly};
pub use serial::{dga_from_json, dga_to_json, poly_from_json, poly_to_json};

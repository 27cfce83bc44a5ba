//! Cohomology of finite groups with coefficients in finitely generated modules.

mod complex;
mod group;
mod module;

pub use complex::{
    boundary_matrix, boundary_matrix_with_cap, cohomology, cohomology_with_cap, cyclic_cohomology, Cochain,
    DEFAULT_DIMENSION_CAP, MAX_DEGREE,
};
pub use group::{corpus, FiniteGroup, PERMUTATION_ORDER_CAP};
pub use module::GModule;

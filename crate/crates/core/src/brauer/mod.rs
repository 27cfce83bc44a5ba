//! Quaternion algebras over Q: Hilbert symbols, local invariants and global splitting.

mod descent;
mod hilbert;
mod qmodz;
mod quaternion;

pub use descent::{
    conic_point, conic_point_with_cap, descent_split_trace, ConicSolution, DescentOutcome, DescentStep,
    DescentTrace, DEFAULT_CONIC_SEARCH_CAP,
};
pub use hilbert::{hilbert_residue, hilbert_symbol, TWO_ADIC_DEPTH};
pub use qmodz::QmodZ;
pub use quaternion::{
    first_obstruction, is_split, local_invariants, product_formula_check, InvariantVector, QuaternionClass,
};

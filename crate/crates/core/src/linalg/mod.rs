//! Dense integer matrices, Smith normal form and finitely generated abelian groups.

mod abelian;
mod matrix;
mod modular;
mod snf;

pub use abelian::AbelianInvariants;
pub use matrix::IntMatrix;
pub use snf::{smith_form, subquotient, ColumnTransform, SmithForm};

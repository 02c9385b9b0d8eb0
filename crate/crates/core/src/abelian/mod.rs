//! Exact integer linear algebra: normal forms, lattices and presented abelian groups.

pub mod group;
pub mod lattice;
pub mod matrix;
pub mod normal_form;

pub use group::{
    homology, homology_localized, homology_subquotient, is_prime, kernel_lattice, p_primary,
    FgAbGroup, GroupMap, GroupSummary, Subquotient,
};
pub use lattice::{lattice_equal, Localization};
pub use matrix::IntMatrix;
pub use normal_form::{hnf, snf, SmithDecomposition};

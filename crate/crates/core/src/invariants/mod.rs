//! The Weyl invariants `K_n ⊂ Z[c_1, …, c_n]` in weights ≤ 6.

pub mod construct;
pub mod formulas;
pub mod quotient;
pub mod ring;
pub mod verify;

pub use construct::{
    constants, construct_e, kn_basis, kn_basis_bounded, lambda, Constants, GeneratorSequence,
    InvariantBasis, Provenance,
};
pub use quotient::{quotient_k12, quotient_l_n, solve_relation, solve_relation_with, RelationWitness};
pub use ring::CoefficientRing;
pub use verify::{invariants_report, verify_formulas, FormulaCheck, FormulaReport, InvariantsReport};

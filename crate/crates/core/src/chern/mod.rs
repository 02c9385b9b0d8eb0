//! `Z[c_1, …, c_n]` with its canonical monomial bases and the divergence operator.

pub mod monomial;
pub mod polynomial;
pub mod symmetric;

pub use monomial::{basis, partition_count, partitions, ChernMonomial};
pub use polynomial::{ChernPolynomial, Coefficient, RationalChernPolynomial};
pub use symmetric::{divergence_via_torus, expand_in_v, VPolynomial};

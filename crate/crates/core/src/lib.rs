pub mod abelian;
pub mod chern;
pub mod cli;
pub mod error;
pub mod kz3;
pub mod invariants;
pub mod page;
mod text;

pub use error::{Error, Result};

//! The Serre spectral sequence of `BU_n → BPU_n → K(Z,3)` in total degrees up to 15.

pub mod assembly;
pub mod engine;
pub mod entry;
pub mod formula;
pub mod label;
pub mod rules;

pub use assembly::{expected_torsion, torsion_of_h, torsion_with_engine, AssemblyReport, Verdict};
pub use engine::{einf_entry, Engine};
pub use entry::{d3, e3_entry, e4_entry, e4_entry_with, Page, PageEntry};
pub use label::PageLabel;
pub use rules::{DifferentialRule, RuleTable};

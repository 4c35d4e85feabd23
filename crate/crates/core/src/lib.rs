//! Finite hemirings: crisp h-ideals, grid fuzzy h-ideals, an exhaustive
//! structure generator and an executable catalog of structural statements.

pub mod config;
pub mod error;
pub mod fixtures;
pub mod fuzzy;
pub mod generator;
pub mod hemiring;
pub mod subset;
pub mod subsets;
pub mod theorems;

pub use config::Config;
pub use error::{Error, Result};
pub use fuzzy::{FuzzySubset, GridValue, ProductOp};
pub use hemiring::{AxiomReport, Hemiring, RawTables};
pub use subset::Subset;
pub use subsets::{IdealFamily, IdealKind};

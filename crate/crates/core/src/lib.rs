pub mod agenda;
pub mod axioms;
pub mod error;
pub mod lattice;
pub mod meta;
pub mod poset;
pub mod profiles;
pub mod relation;
pub mod report;
pub mod rules;
pub mod sampling;
pub mod structure;
pub mod verify;

pub use error::{Error, Result};

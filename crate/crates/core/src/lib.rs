pub mod error;
pub mod lattice;
pub mod root_datum;
pub mod weyl;

pub use error::{Error, Result};
pub mod classes;
pub mod alcove;
pub mod union_find;
pub mod labels;
pub mod classical;

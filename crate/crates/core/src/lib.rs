pub mod cli;
pub mod dixmier;
pub mod error;
pub mod invariants;
pub mod io;
pub mod lie;
pub mod matrix;
pub mod poly;
pub mod takiff;

pub use error::{Error, Result};

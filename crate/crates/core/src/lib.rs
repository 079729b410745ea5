pub mod bounds;
pub mod cli;
pub mod count;
pub mod entropy;
pub mod error;
pub mod graph;
pub mod numeric;
pub mod verify;

pub use error::{Error, Result};

pub mod complexes;
pub mod error;
pub mod words;
pub mod splitting;
pub mod surface;

pub use error::{Error, Result};

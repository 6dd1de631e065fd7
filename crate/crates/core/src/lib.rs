pub mod cli;
pub mod entanglement;
pub mod error;
pub mod lhs;
pub mod linalg;
pub mod search;
pub mod states;
pub mod steering;
pub mod tol;

pub use error::{Error, Result};

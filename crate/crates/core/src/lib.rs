pub mod algebra;
pub mod constructors;
pub mod error;
pub mod hopf;
pub mod rep;
pub mod exactfield;
pub mod verifier;

pub use error::{Error, Result};

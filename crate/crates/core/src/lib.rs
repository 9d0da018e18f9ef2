//! Exact combinatorics of cyclic objects and the homology engines built on them.

pub mod chain;
pub mod cyclic;
pub mod error;
pub mod hochschild;
pub mod lambda;

pub use error::{Error, Result};

pub mod cli;
pub mod error;
pub mod identities;
pub mod partitions;
pub mod qkit;
pub mod report;
pub mod series;
pub mod suite;
pub mod truncated;

pub use error::{Error, Result};
pub use series::{HalfExp, Series};

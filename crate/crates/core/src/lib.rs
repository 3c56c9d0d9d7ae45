pub mod bridge;
pub mod cli;
pub mod cost;
pub mod crep;
pub mod error;
pub mod gen;
pub mod herbrand;
pub mod ranking;
pub mod syntax;

pub use error::{Error, Result};

pub mod automaton;
pub mod avoided;
pub mod bounds;
pub mod cluster;
pub mod error;
pub mod poly;
pub mod quasipoly;
pub mod report;
pub mod verify;
pub mod word;

pub use error::{Error, Result};

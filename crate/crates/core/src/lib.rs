pub mod balanced;
pub mod cli;
pub mod error;
pub mod fdalg;
pub mod fixtures;
pub mod fock;
pub mod graphs;
pub mod hilbmod;
pub mod linalg;
pub mod report;
pub mod twist;

pub use error::{Error, Result};
pub use report::{Report, Tolerance};

//! File formats, the external-solver adapter, timing CSVs and the command line
//! on top of `netrel-core`.

pub mod cli;
pub mod dimacs;
pub mod error;
pub mod external;
pub mod proof_io;
pub mod solutions;
pub mod stats;

pub use error::{Error, ParseError, Result};
pub use netrel_core;

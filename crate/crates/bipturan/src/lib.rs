//! File formats, result reports, a multi-threaded search driver and the
//! `bipturan` command line on top of [`bipturan_core`].

pub mod cli;
pub mod driver;
pub mod error;
pub mod format;
pub mod report;
pub mod table;

pub use bipturan_core as engine;
pub use error::{Error, Result};

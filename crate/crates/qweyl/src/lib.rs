//! Text formats, graph export, parallel verification reports and the
//! command line for `qweyl-core`.

pub mod cli;
pub mod export;
pub mod parse;
pub mod report;

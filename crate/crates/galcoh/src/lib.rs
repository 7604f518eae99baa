//! Command line front end for `galcoh-core`: named real forms, datum files,
//! census and table generation.

pub mod cli;
pub mod datafile;
pub mod engine;
pub mod error;
pub mod formulas;
pub mod named;
pub mod report;
pub mod tables;

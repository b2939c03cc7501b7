//! File formats, experiment records and the `brushgame` command line on top
//! of `brushgame-core`.

pub mod acceptance;
pub mod cli;
pub mod experiment;
pub mod format;
pub mod records;

//! File formats, reports and the command-line front end for
//! [`groversat_core`].

pub mod circuit_text;
pub mod cli;
pub mod input;
pub mod report;
pub mod state_dump;

//! File formats, Monte Carlo sweeps and the command-line front end for
//! [`ira_core`].

pub mod cli;
pub mod dd_file;
pub mod graph_file;
pub mod reports;
pub mod sweep;

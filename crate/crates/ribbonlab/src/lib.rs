//! File formats, named generators, a threaded search expander and the
//! `ribbonlab` command line on top of `ribbonlab-core`.

pub mod cli;
pub mod format;
pub mod generate;
pub mod parallel;

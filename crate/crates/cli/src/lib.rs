//! File formats, external solver integration and the command-line front end
//! for `hgcolor-core`.

pub mod app;
pub mod hgr;
pub mod parallel;
pub mod provenance;
pub mod solver;

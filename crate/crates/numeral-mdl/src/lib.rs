//! File formats, run manifests and the `numeral-mdl` command line on top of
//! [`numeral_mdl_core`].

pub mod cli;
pub mod dataio;
pub mod manifest;

pub use numeral_mdl_core as core;

//! Graph formats, generators, corpus sweeps and reports on top of
//! [`spectral_gate_core`].

pub mod corpus;
pub mod formats;
pub mod generate;
pub mod selftest;
pub mod sweep;

pub use corpus::{CorpusSpec, Source};
pub use sweep::{Mode, Report};

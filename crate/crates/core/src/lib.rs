//! Spectral certificates for edge connectivity and spanning-tree packing.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only the pure
//! algorithmic layer:
//!
//! * [`graph`]: loop-free multigraphs with degree, boundary and component
//!   primitives.
//! * [`eigen`] and [`spectra`]: a cyclic Jacobi eigensolver, the adjacency,
//!   Laplacian and signless Laplacian matrices, quotient matrices, and
//!   interlacing / Weyl checks.
//! * [`connectivity`]: Stoer–Wagner edge connectivity, a bitmask min-cut
//!   oracle, and membership in the class of graphs with two disjoint
//!   minimum-cut sides.
//! * [`packing`]: the spanning-tree packing number by matroid union, with a
//!   partition dual and an exhaustive partition oracle.
//! * [`theorems`]: the catalog of eigenvalue-threshold sufficient conditions
//!   and their evaluation against exact combinatorial quantities.
//!
//! File formats, generators, corpus sweeps and the command line live in the
//! `spectral-gate` companion crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod connectivity;
pub mod eigen;
pub mod graph;
pub mod packing;
pub mod spectra;
pub mod theorems;

pub use connectivity::{CutCertificate, GClassWitness, Membership};
pub use eigen::DenseSymmetricMatrix;
pub use graph::{EdgeMultiset, Multigraph, VertexPartition, VertexSubset};
pub use packing::{PackingCertificate, PartitionWitness};
pub use spectra::{QuotientKind, QuotientMatrix, SpectralSummary};
pub use theorems::{ConditionSpec, ConditionVerdict};

/// Exact rational used for degree averages, quotient entries and thresholds.
pub type Rational = num_rational::Ratio<i64>;

/// Converts an exact rational to the nearest `f64`.
#[inline]
pub fn ratio_to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

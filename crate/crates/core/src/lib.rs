//! Kazhdan-Lusztig polynomials of symmetric groups and their hypercube
//! decompositions.
//!
//! The crate computes `P_{x,y}` with the classical recursion ([`klbase`]),
//! builds Bruhat intervals as ranked graphs ([`graph`]), finds hypercube
//! decompositions ([`decomp`]) and checks the formula `∂P = I + Q`
//! ([`formula`], [`sweep`]).

pub mod cli;
pub mod decomp;
pub mod error;
pub mod formula;
pub mod graph;
pub mod hypercube;
pub mod klbase;
pub mod perm;
pub mod poly;
pub mod sweep;

pub use decomp::{canonical_l, enumerate, validate, Failure, HypercubeDecomposition, Validation};
pub use error::{Error, Result};
pub use formula::{check_formula, gamma_expansion, inductive_piece, q_piece, q_tilde, InductiveExpansion, VerificationRecord};
pub use graph::{BruhatInterval, Diamond, GraphFixture, RankedDigraph, VertexId, VertexSet};
pub use hypercube::{greedy_decreasing, spans_cluster, spans_hypercube, theta, theta_corner_rank, theta_explicit};
pub use klbase::KlTable;
pub use perm::{CornerRankMatrix, Permutation};
pub use poly::IntPolynomial;
pub use sweep::{sweep, Mode, Sample, SweepConfig, SweepReport, SweepSummary};

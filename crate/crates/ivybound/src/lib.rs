//! Universal lower bounds and near-optimal intervention designs for fully
//! orienting the Markov equivalence class of a causal DAG.
//!
//! The crate is organized around a small partially-directed-graph core:
//!
//! - [`graph`]: graphs, DAGs, chordality, maximal cliques, chain components;
//! - [`essential`]: interventional essential graphs, their characterization
//!   check, and brute-force equivalence-class oracles;
//! - [`orderings`]: clique-block and shared-parent topological orderings;
//! - [`bounds`]: the intervention-count lower bounds and their comparison;
//! - [`design`]: constructions that meet the upper bounds;
//! - [`oracle`]: exact search for the smallest atomic intervention set;
//! - [`generators`]: synthetic graph families used by the experiments;
//! - [`cli`]: the command-line surface, including the experiment drivers.
//!
//! [`naive`] holds deliberately simple reference implementations used to
//! cross-check the fast paths in tests.

mod error;

pub mod bounds;
pub mod cli;
pub mod design;
pub mod essential;
pub mod generators;
pub mod graph;
pub mod naive;
pub mod oracle;
pub mod orderings;

pub use error::{Error, Result};
pub use essential::{EssentialGraph, InterventionSet};
pub use graph::{ChainDecomposition, Dag, PartiallyDirectedGraph};

//! Sequential Boolean-network dynamics on graphs and digraphs: the maximal
//! independent set network and its kernel, independent and dominating
//! relatives, with exact decision procedures for fixing words, fixing sets,
//! permises and fixability.

pub mod batch;
pub mod build;
pub mod comparability;
pub mod decide;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod kernelfix;
pub mod mis;
pub mod network;
pub mod orientation;
pub mod permis;
pub mod reach;
pub mod reductions;
pub mod set;
pub mod structure;

pub use build::{family, Family};
pub use error::{Error, Result, MAX_EXHAUSTIVE_VERTICES};
pub use graph::DiGraph;
pub use network::{Config, NetworkKind, Word};
pub use set::VertexSet;

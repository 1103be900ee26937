//! Reduction gadgets, used as generators of test instances with known answers.
//!
//! Each constructor maps a source instance to a target instance and records a
//! role name for every target vertex. Source vertices come first in source
//! order, then gadget vertices in the order the construction introduces them.
//! Each verifier decides both sides with the exact procedures of this crate
//! and reports whether the answers correspond.

mod circuit;
mod graphs;
mod source;

pub use circuit::{
    epsilon_variables, tautology3_to_fixable_refined, tautology_to_fixable, verify_circuit, CircuitLayout,
    CircuitReport,
};
pub use graphs::{
    constituency_to_district, nonconstituency_to_nontrivial_nondistrict, nonconstituency_to_permis,
    nonconstituency_to_permissible, nondistrict_to_fixingset, setcover_to_constituency, verify_district_gadget,
    verify_fixingset_gadget, verify_nontrivial_nondistrict_gadget, verify_permis_gadget, verify_permissible_gadget,
    verify_setcover_gadget,
};
pub use source::{Dnf, Literal, SetCover};

use crate::graph::DiGraph;
use crate::network::Word;
use crate::set::VertexSet;

/// The instance a gadget was built from.
#[derive(Debug, Clone)]
pub enum Source {
    SetCover(SetCover),
    /// A graph with a vertex set (constituency or district instances).
    GraphSet { graph: DiGraph, set: VertexSet },
    Dnf(Dnf),
}

/// The constructed instance; `set` and `word` are present when the target
/// problem asks about them.
#[derive(Debug, Clone)]
pub struct Target {
    pub graph: DiGraph,
    pub set: Option<VertexSet>,
    pub word: Option<Word>,
}

#[derive(Debug, Clone)]
pub struct ReductionInstance {
    pub source: Source,
    pub target: Target,
    /// `roles[v]` names the gadget role of target vertex `v`.
    pub roles: Vec<String>,
    /// Circuit structure, for the kernel-fixability gadgets.
    pub layout: Option<CircuitLayout>,
}

/// The answers on both sides of a reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Correspondence {
    pub source: bool,
    pub target: bool,
}

impl Correspondence {
    pub fn holds(&self) -> bool {
        self.source == self.target
    }
}

/// Incrementally builds a target graph with role names.
#[derive(Default)]
struct Builder {
    roles: Vec<String>,
    edges: Vec<(usize, usize)>,
    arcs: Vec<(usize, usize)>,
}

impl Builder {
    fn vertex(&mut self, role: impl Into<String>) -> usize {
        self.roles.push(role.into());
        self.roles.len() - 1
    }

    fn edge(&mut self, u: usize, v: usize) {
        self.edges.push((u, v));
    }

    fn arc(&mut self, u: usize, v: usize) {
        self.arcs.push((u, v));
    }

    fn graph(&self) -> crate::Result<DiGraph> {
        let n = self.roles.len();
        DiGraph::from_arcs(
            n,
            self.arcs
                .iter()
                .copied()
                .chain(self.edges.iter().flat_map(|&(u, v)| [(u, v), (v, u)])),
        )
    }
}

/// Fails with an internal error when a construction's size formula is off.
fn expect_count(what: &str, actual: usize, expected: usize) -> crate::Result<()> {
    if actual == expected {
        Ok(())
    } else {
        Err(crate::Error::Internal(format!("{what}: built {actual}, formula gives {expected}")))
    }
}

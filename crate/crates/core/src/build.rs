//! Named graph families and graph composition.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::DiGraph;
use crate::set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `k` vertices in a line.
    Path,
    /// Undirected cycle on `k >= 3` vertices.
    Cycle,
    Complete,
    /// Oriented cycle `0 -> 1 -> ... -> k-1 -> 0`, `k >= 3`.
    DirectedCycle,
    /// `k >= 4` vertices: a cycle on the first `k - 1` and a hub joined to all.
    Wheel,
    /// The odd hole on `2k + 1` vertices plus a pendant on vertex 0.
    OddHolePlus,
    /// As `OddHolePlus`, with a second pendant hanging off the first.
    OddHolePlusPlus,
    /// The Petersen graph; `k` is ignored.
    Petersen,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Path,
        Family::Cycle,
        Family::Complete,
        Family::DirectedCycle,
        Family::Wheel,
        Family::OddHolePlus,
        Family::OddHolePlusPlus,
        Family::Petersen,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::DirectedCycle => "directed_cycle",
            Family::Wheel => "wheel",
            Family::OddHolePlus => "odd_hole_plus",
            Family::OddHolePlusPlus => "odd_hole_plus_plus",
            Family::Petersen => "petersen",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.replace('-', "_");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == key)
            .ok_or_else(|| Error::Domain(format!("unknown family {s:?}")))
    }
}

fn cycle_edges(k: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..k).map(move |i| (i, (i + 1) % k))
}

fn need(cond: bool, family: Family, k: usize) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Domain(format!("{family} is undefined for k = {k}")))
    }
}

pub fn family(which: Family, k: usize) -> Result<DiGraph> {
    match which {
        Family::Path => {
            need(k >= 1, which, k)?;
            DiGraph::from_edges(k, (1..k).map(|i| (i - 1, i)))
        }
        Family::Cycle => {
            need(k >= 3, which, k)?;
            DiGraph::from_edges(k, cycle_edges(k))
        }
        Family::Complete => {
            need(k >= 1, which, k)?;
            DiGraph::from_edges(k, (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))))
        }
        Family::DirectedCycle => {
            need(k >= 3, which, k)?;
            DiGraph::from_arcs(k, cycle_edges(k))
        }
        Family::Wheel => {
            need(k >= 4, which, k)?;
            let rim = k - 1;
            DiGraph::from_edges(k, cycle_edges(rim).chain((0..rim).map(|i| (i, rim))))
        }
        Family::OddHolePlus => {
            need(k >= 1, which, k)?;
            let c = 2 * k + 1;
            DiGraph::from_edges(c + 1, cycle_edges(c).chain([(0, c)]))
        }
        Family::OddHolePlusPlus => {
            need(k >= 1, which, k)?;
            let c = 2 * k + 1;
            DiGraph::from_edges(c + 2, cycle_edges(c).chain([(0, c), (c, c + 1)]))
        }
        Family::Petersen => {
            let outer = cycle_edges(5);
            let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
            let spokes = (0..5).map(|i| (i, 5 + i));
            DiGraph::from_edges(10, outer.chain(inner).chain(spokes))
        }
    }
}

/// Replaces each vertex `h` of `host` by `parts[h]`, joining parts `a` and `b`
/// completely whenever `ab` is an edge of `host`. The vertices of `parts[0]`
/// come first, then those of `parts[1]`, and so on.
pub fn compose(host: &DiGraph, parts: &[DiGraph]) -> Result<DiGraph> {
    host.require_undirected()?;
    if parts.len() != host.n() {
        return Err(Error::Domain(format!(
            "{} parts for a {}-vertex host",
            parts.len(),
            host.n()
        )));
    }
    for p in parts {
        p.require_undirected()?;
    }
    let offsets: Vec<usize> = parts
        .iter()
        .scan(0, |acc, p| {
            let o = *acc;
            *acc += p.n();
            Some(o)
        })
        .collect();
    let total: usize = parts.iter().map(DiGraph::n).sum();
    let mut edges = Vec::new();
    for (h, p) in parts.iter().enumerate() {
        edges.extend(p.edges().map(|(u, v)| (offsets[h] + u, offsets[h] + v)));
    }
    for (a, b) in host.edges() {
        for u in 0..parts[a].n() {
            for v in 0..parts[b].n() {
                edges.push((offsets[a] + u, offsets[b] + v));
            }
        }
    }
    DiGraph::from_edges(total, edges)
}

/// Substitutes `part` for the single vertex `b` of `host`.
pub fn compose_one(host: &DiGraph, b: usize, part: &DiGraph) -> Result<DiGraph> {
    host.check_vertex(b)?;
    let k1 = DiGraph::empty(1);
    let parts: Vec<DiGraph> = (0..host.n())
        .map(|h| if h == b { part.clone() } else { k1.clone() })
        .collect();
    compose(host, &parts)
}

/// Disjoint union, numbering `a` before `b`.
pub fn disjoint_union(a: &DiGraph, b: &DiGraph) -> DiGraph {
    let n = a.n() + b.n();
    let arcs = a
        .arcs()
        .chain(b.arcs().map(|(u, v)| (u + a.n(), v + a.n())));
    DiGraph::from_arcs(n, arcs).expect("arcs are in range")
}

/// Adds a pendant vertex to every vertex; vertex `v` gets pendant `n + v`.
pub fn with_pendants(g: &DiGraph) -> Result<DiGraph> {
    g.require_undirected()?;
    let n = g.n();
    DiGraph::from_edges(2 * n, g.edges().chain((0..n).map(|v| (v, n + v))))
}

/// Vertices of `composed` that came from `parts[h]`.
pub fn part_vertices(parts: &[DiGraph], h: usize) -> VertexSet {
    let total = parts.iter().map(DiGraph::n).sum();
    let offset: usize = parts[..h].iter().map(DiGraph::n).sum();
    VertexSet::from_vertices(total, offset..offset + parts[h].n())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        let c7 = family(Family::Cycle, 7).unwrap();
        assert_eq!((c7.n(), c7.edge_count()), (7, 7));
        let pp = family(Family::OddHolePlusPlus, 3).unwrap();
        assert_eq!((pp.n(), pp.edge_count()), (9, 9));
        let dc = family(Family::DirectedCycle, 3).unwrap();
        assert_eq!(dc.arcs().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 0)]);
        assert_eq!(dc.edge_count(), 0);
        let w8 = family(Family::Wheel, 8).unwrap();
        assert_eq!((w8.n(), w8.edge_count(), w8.in_degree(7)), (8, 14, 7));
        let p = family(Family::Petersen, 0).unwrap();
        assert_eq!(p.edge_count(), 15);
        assert!((0..10).all(|v| p.in_degree(v) == 3));
        assert!(family(Family::Cycle, 2).is_err());
        assert_eq!("odd-hole-plus".parse::<Family>().unwrap(), Family::OddHolePlus);
    }

    #[test]
    fn wheel_is_join() {
        let c7 = family(Family::Cycle, 7).unwrap();
        let k2 = family(Family::Complete, 2).unwrap();
        let j = compose(&k2, &[c7, DiGraph::empty(1)]).unwrap();
        assert_eq!(j, family(Family::Wheel, 8).unwrap());
    }

    #[test]
    fn compose_identity() {
        let g = family(Family::Petersen, 0).unwrap();
        assert_eq!(compose(&DiGraph::empty(1), std::slice::from_ref(&g)).unwrap(), g);
    }
}

//! Reachability between configurations under the MIS, independent and
//! dominating networks, with geodesic constructions and a brute-force
//! oracle.

use std::collections::VecDeque;

use serde::Serialize;

use crate::decide::{is_constituency, Certificate};
use crate::error::{ensure_exhaustive, Error, Result};
use crate::graph::DiGraph;
use crate::mis::greedy_extend;
use crate::network::{apply_word, update_in_place, Config, NetworkKind, Word};
use crate::set::VertexSet;
use crate::structure::{
    leaves_to_roots, spanning_out_forest_within, strong_components, weak_components_within,
};

/// Largest `n` for the breadth-first oracle.
pub const ORACLE_MAX_VERTICES: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Violation {
    EdgeCreated,
    ComponentEmptied,
    NotMonotone,
    ASetViolated,
    BSetCyclic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReachabilityVerdict {
    pub reachable: bool,
    pub geodesic: Option<Word>,
    pub violated: Option<Violation>,
}

impl ReachabilityVerdict {
    fn yes(w: Vec<usize>) -> Self {
        ReachabilityVerdict {
            reachable: true,
            geodesic: Some(Word(w)),
            violated: None,
        }
    }

    fn no(v: Violation) -> Self {
        ReachabilityVerdict {
            reachable: false,
            geodesic: None,
            violated: Some(v),
        }
    }
}

fn check_pair(g: &DiGraph, x: &Config, y: &Config) -> Result<()> {
    if x.n() != g.n() || y.n() != g.n() {
        return Err(Error::Domain("configuration width differs from the graph".into()));
    }
    Ok(())
}

/// `w` takes `x` to `y`, visits exactly the vertices where they differ, and
/// visits each once.
pub fn is_geodesic(g: &DiGraph, kind: NetworkKind, x: &Config, y: &Config, w: &Word) -> bool {
    let n = g.n();
    let visited = w.visited(n);
    visited.len() == w.len()
        && visited == x.difference_set(y)
        && apply_word(g, kind, x, w).is_ok_and(|z| z == *y)
}

/// `G[1(y)]` has only edges of `G[1(x)]`, and no component of `G[1(x)]` is
/// emptied.
pub fn mis_reachable(g: &DiGraph, x: &Config, y: &Config) -> Result<ReachabilityVerdict> {
    g.require_undirected()?;
    check_pair(g, x, y)?;
    let ones_x = x.ones_set();
    let ones_y = y.ones_set();
    let created = g
        .edges()
        .any(|(u, v)| ones_y.contains(u) && ones_y.contains(v) && !(ones_x.contains(u) && ones_x.contains(v)));
    if created {
        return Ok(ReachabilityVerdict::no(Violation::EdgeCreated));
    }
    let comps = weak_components_within(g, ones_x);
    if comps.iter().any(|c| !y.any_in(c)) {
        return Ok(ReachabilityVerdict::no(Violation::ComponentEmptied));
    }
    let mut w = Vec::new();
    for c in &comps {
        let roots = c.intersection(ones_y);
        let parent = spanning_out_forest_within(g, c, &roots)?;
        w.extend(leaves_to_roots(&parent, c));
    }
    w.extend(ones_y.difference(ones_x).iter());
    Ok(ReachabilityVerdict::yes(w))
}

/// Whether every fixed point is reachable from `x`. A no carries an
/// unreachable maximal independent set.
pub fn mis_universal(g: &DiGraph, x: &Config) -> Result<(bool, Certificate)> {
    g.require_undirected()?;
    check_pair(g, x, x)?;
    for c in weak_components_within(g, x.ones_set()) {
        let d = is_constituency(g, &c)?;
        if let Certificate::IndependentDominator { set } = d.certificate {
            return Ok((
                false,
                Certificate::WitnessFixedPoint {
                    config: Config::from_support(set),
                },
            ));
        }
    }
    Ok((true, Certificate::None))
}

/// A maximal independent set reachable from `x` and a geodesic to it: the
/// smallest vertex of each component of `G[1(x)]`, extended greedily.
pub fn mis_reach_some_fixed_point(g: &DiGraph, x: &Config) -> Result<(Config, Word)> {
    g.require_undirected()?;
    check_pair(g, x, x)?;
    let seeds = VertexSet::from_vertices(
        g.n(),
        weak_components_within(g, x.ones_set())
            .iter()
            .filter_map(VertexSet::first),
    );
    let y = Config::from_support(greedy_extend(g, &seeds));
    let verdict = mis_reachable(g, x, &y)?;
    let w = verdict
        .geodesic
        .ok_or_else(|| Error::Internal("constructed fixed point is unreachable".into()))?;
    Ok((y, w))
}

/// `y <= x` and `y` keeps a 1 in every initial strong component of `G[1(x)]`.
pub fn ind_reachable(g: &DiGraph, x: &Config, y: &Config) -> Result<ReachabilityVerdict> {
    check_pair(g, x, y)?;
    if !y.le(x) {
        return Ok(ReachabilityVerdict::no(Violation::NotMonotone));
    }
    let (h, map) = g.induced(x.ones_set());
    let dec = strong_components(&h);
    let lift = |s: &VertexSet| VertexSet::from_vertices(g.n(), s.iter().map(|i| map[i]));
    let comps: Vec<VertexSet> = dec.components.iter().map(lift).collect();
    if dec.initial.iter().any(|&c| !y.any_in(&comps[c])) {
        return Ok(ReachabilityVerdict::no(Violation::ComponentEmptied));
    }
    let mut w = Vec::new();
    for c in (0..comps.len()).rev() {
        let b = &comps[c];
        if y.any_in(b) {
            let parent = spanning_out_forest_within(g, b, &b.intersection(y.ones_set()))?;
            w.extend(leaves_to_roots(&parent, b));
        } else {
            let parent_members = dec.parents[c]
                .iter()
                .fold(VertexSet::empty(g.n()), |acc, &p| acc.union(&comps[p]));
            let root = b
                .iter()
                .find(|&u| !g.in_neighbours(u).is_disjoint(&parent_members))
                .ok_or_else(|| Error::Internal("non-initial component without entry".into()))?;
            let parent = spanning_out_forest_within(g, b, &VertexSet::from_vertices(g.n(), [root]))?;
            w.extend(leaves_to_roots(&parent, b));
            w.push(root);
        }
    }
    Ok(ReachabilityVerdict::yes(w))
}

/// `y >= x`, `y` is 0 on `A(x) = 0(x) ∩ N⁺(1(x))`, and the ones of `y` in
/// `B(x) = 0(x) \ N⁺(1(x))` induce an acyclic digraph.
pub fn dom_reachable(g: &DiGraph, x: &Config, y: &Config) -> Result<ReachabilityVerdict> {
    check_pair(g, x, y)?;
    if !x.le(y) {
        return Ok(ReachabilityVerdict::no(Violation::NotMonotone));
    }
    let zeros = x.zeros_set();
    let dominated = g.out_neighbours_of_set(x.ones_set());
    let a = zeros.intersection(&dominated);
    if y.any_in(&a) {
        return Ok(ReachabilityVerdict::no(Violation::ASetViolated));
    }
    let mut remaining = zeros.difference(&dominated).intersection(y.ones_set());
    let mut w = Vec::with_capacity(remaining.len());
    while !remaining.is_empty() {
        let sink = remaining
            .iter()
            .find(|&v| g.out_neighbours(v).is_disjoint(&remaining));
        match sink {
            Some(v) => {
                w.push(v);
                remaining.remove(v);
            }
            None => return Ok(ReachabilityVerdict::no(Violation::BSetCyclic)),
        }
    }
    Ok(ReachabilityVerdict::yes(w))
}

/// Every configuration reachable from a start under arbitrary words.
#[derive(Debug, Clone)]
pub struct ReachableSet {
    n: usize,
    seen: Vec<bool>,
}

impl ReachableSet {
    pub fn contains(&self, y: &Config) -> bool {
        self.seen[y.mask() as usize]
    }

    pub fn contains_mask(&self, mask: u64) -> bool {
        self.seen[mask as usize]
    }

    pub fn len(&self) -> usize {
        self.seen.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = Config> + '_ {
        self.seen
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(m, _)| Config::from_mask(self.n, m as u64))
    }
}

/// Breadth-first search over single-vertex updates.
pub fn bfs_reachability_oracle(g: &DiGraph, kind: NetworkKind, x: &Config) -> Result<ReachableSet> {
    let n = g.n();
    ensure_exhaustive(n, ORACLE_MAX_VERTICES)?;
    check_pair(g, x, x)?;
    let mut seen = vec![false; 1 << n];
    seen[x.mask() as usize] = true;
    let mut queue = VecDeque::from([x.clone()]);
    while let Some(z) = queue.pop_front() {
        for v in 0..n {
            let mut next = z.clone();
            update_in_place(g, kind, &mut next, v);
            let m = next.mask() as usize;
            if !seen[m] {
                seen[m] = true;
                queue.push_back(next);
            }
        }
    }
    Ok(ReachableSet { n, seen })
}

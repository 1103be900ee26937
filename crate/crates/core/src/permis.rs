//! Permises: verification, covered vertices and the permissibility search.

use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::batch::{identity_word, Lanes};
use crate::build::compose;
use crate::comparability::is_near_comparability;
use crate::error::{ensure_exhaustive, Error, Result, MAX_EXHAUSTIVE_VERTICES};
use crate::graph::DiGraph;
use crate::network::{Config, NetworkKind, Word};
use crate::orientation::orientation_of;
use crate::set::VertexSet;
use crate::structure::{is_tethered, weak_components_within};

/// Largest graph on which [`find_permis`] runs the exhaustive search.
pub const PERMIS_SEARCH_MAX_VERTICES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PermisReport {
    pub is_permis: bool,
    pub uncovered_vertex: Option<usize>,
    pub witness_config: Option<Config>,
    /// Vertices certified covered by near-transitivity alone.
    pub covered_by_near_transitivity: VertexSet,
}

/// Lanes after applying the permutation `w` to every start configuration.
fn sweep(g: &DiGraph, w: &Word) -> Result<Lanes> {
    ensure_exhaustive(g.n(), MAX_EXHAUSTIVE_VERTICES)?;
    let mut lanes = Lanes::full(g.n());
    lanes.apply(g, NetworkKind::Mis, w.as_slice());
    Ok(lanes)
}

/// Smallest start configuration whose endpoint is 0 on `N[v]`.
fn uncovered_witness(g: &DiGraph, lanes: &Lanes, v: usize) -> Option<Config> {
    let closed = g.closed_neighbours(v).to_vec();
    (0..lanes.len()).find_map(|k| {
        let zero = lanes.all_zero_word(&closed, k);
        (zero != 0).then(|| Config::from_mask(g.n(), lanes.index(k, zero.trailing_zeros())))
    })
}

/// `v` is covered by `w` if every endpoint has a 1 in `N[v]`.
pub fn is_covered(g: &DiGraph, w: &Word, v: usize) -> Result<(bool, Option<Config>)> {
    g.require_undirected()?;
    g.check_vertex(v)?;
    let o = orientation_of(g, w)?;
    if o.is_near_transitive_vertex(g, v) {
        return Ok((true, None));
    }
    let lanes = sweep(g, w)?;
    let witness = uncovered_witness(g, &lanes, v);
    Ok((witness.is_none(), witness))
}

/// A permutation is a permis iff it covers every vertex.
pub fn is_permis(g: &DiGraph, w: &Word) -> Result<PermisReport> {
    g.require_undirected()?;
    let o = orientation_of(g, w)?;
    let near = o.near_transitive_vertices(g);
    let mut report = PermisReport {
        is_permis: true,
        uncovered_vertex: None,
        witness_config: None,
        covered_by_near_transitivity: near.clone(),
    };
    if near.len() == g.n() {
        return Ok(report);
    }
    let lanes = sweep(g, w)?;
    for v in near.complement().iter() {
        if let Some(x) = uncovered_witness(g, &lanes, v) {
            report.is_permis = false;
            report.uncovered_vertex = Some(v);
            report.witness_config = Some(x);
            break;
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    NearComparability,
    Search,
    TetheredShortcut,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PermisOutcome {
    Found { permis: Word, method: Method },
    NotPermissible { method: Method },
    Unknown { reason: String },
}

impl PermisOutcome {
    pub fn permis(&self) -> Option<&Word> {
        match self {
            PermisOutcome::Found { permis, .. } => Some(permis),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    /// Split the search over the rayon pool.
    pub parallel: bool,
    pub max_vertices: usize,
    /// Try the tethered odd-hole shortcut before searching.
    pub tethered_shortcut: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            parallel: true,
            max_vertices: PERMIS_SEARCH_MAX_VERTICES,
            tethered_shortcut: true,
        }
    }
}

/// A tethered set inducing an odd hole on at least seven vertices. Odd holes
/// of that size have no permis, and a tethered set without a permis rules
/// one out for the whole graph.
pub fn tethered_odd_hole(g: &DiGraph) -> Option<VertexSet> {
    let n = g.n();
    if !(7..=PERMIS_SEARCH_MAX_VERTICES).contains(&n) {
        return None;
    }
    let adj: Vec<u32> = (0..n).map(|v| g.neighbours(v).mask() as u32).collect();
    let mut size = 7;
    while size <= n {
        let mut found = None;
        for_each_subset(n, size, &mut |mask| {
            if is_odd_hole(&adj, mask) {
                let s = VertexSet::from_mask(n, u64::from(mask));
                if is_tethered(g, &s) {
                    found = Some(s);
                    return true;
                }
            }
            false
        });
        if found.is_some() {
            return found;
        }
        size += 2;
    }
    None
}

/// `mask` induces a single cycle (connected, 2-regular).
fn is_odd_hole(adj: &[u32], mask: u32) -> bool {
    let mut rest = mask;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if (adj[v] & mask).count_ones() != 2 {
            return false;
        }
    }
    // connectivity
    let start = mask.trailing_zeros();
    let mut seen = 1u32 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & mask & !seen;
        seen |= new;
        frontier |= new;
    }
    seen == mask
}

fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(u32) -> bool) {
    fn rec(n: usize, k: usize, from: usize, mask: u32, f: &mut dyn FnMut(u32) -> bool) -> bool {
        if k == 0 {
            return f(mask);
        }
        for v in from..=n - k {
            if rec(n, k - 1, v + 1, mask | 1 << v, f) {
                return true;
            }
        }
        false
    }
    rec(n, k, 0, 0, f);
}

pub fn find_permis(g: &DiGraph) -> Result<PermisOutcome> {
    find_permis_with(g, SearchOptions::default())
}

/// Decides permissibility: near-comparability first, then the tethered
/// odd-hole shortcut, then exhaustive search over acyclic orientations.
pub fn find_permis_with(g: &DiGraph, opts: SearchOptions) -> Result<PermisOutcome> {
    g.require_undirected()?;
    let n = g.n();
    if let Some((_, w)) = is_near_comparability(g)? {
        return Ok(PermisOutcome::Found {
            permis: w,
            method: Method::NearComparability,
        });
    }
    if opts.tethered_shortcut && tethered_odd_hole(g).is_some() {
        return Ok(PermisOutcome::NotPermissible {
            method: Method::TetheredShortcut,
        });
    }
    if n > 1 && !g.is_connected() {
        return components_permis(g, opts);
    }
    if n > opts.max_vertices.min(PERMIS_SEARCH_MAX_VERTICES) {
        return Ok(PermisOutcome::Unknown {
            reason: format!("{n} vertices exceeds the exhaustive search limit"),
        });
    }
    Ok(match search_permis(g, opts.parallel) {
        Some(w) => PermisOutcome::Found {
            permis: w,
            method: Method::Search,
        },
        None => PermisOutcome::NotPermissible {
            method: Method::Search,
        },
    })
}

/// A disjoint union is permissible iff every component is; the permis is the
/// concatenation of the components' permises.
fn components_permis(g: &DiGraph, opts: SearchOptions) -> Result<PermisOutcome> {
    let mut word = Vec::with_capacity(g.n());
    let mut unknown = None;
    for comp in weak_components_within(g, &g.vertices()) {
        let (h, map) = g.induced(&comp);
        match find_permis_with(&h, opts)? {
            PermisOutcome::Found { permis, .. } => word.extend(permis.as_slice().iter().map(|&v| map[v])),
            PermisOutcome::NotPermissible { method } => return Ok(PermisOutcome::NotPermissible { method }),
            PermisOutcome::Unknown { reason } => unknown = Some(reason),
        }
    }
    if let Some(reason) = unknown {
        return Ok(PermisOutcome::Unknown { reason });
    }
    Ok(PermisOutcome::Found {
        permis: Word(word),
        method: Method::Search,
    })
}

/// Depth-first search over permutations in the lexicographically smallest
/// topological order of their orientation, so every acyclic orientation is
/// met exactly once. A vertex's final state is known once it is placed, so a
/// branch is cut as soon as some vertex has its whole closed neighbourhood
/// placed and some start configuration leaves it all zero.
struct Dfs<'a> {
    g: &'a DiGraph,
    adj: Vec<u64>,
    closed: Vec<Vec<usize>>,
    closed_mask: Vec<u64>,
    lanes: Lanes,
    placed: u64,
    order: Vec<usize>,
    stop: &'a AtomicBool,
}

impl<'a> Dfs<'a> {
    fn new(g: &'a DiGraph, stop: &'a AtomicBool) -> Self {
        let n = g.n();
        Dfs {
            g,
            adj: (0..n).map(|v| g.neighbours(v).mask()).collect(),
            closed: (0..n).map(|v| g.closed_neighbours(v).to_vec()).collect(),
            closed_mask: (0..n).map(|v| g.closed_neighbours(v).mask()).collect(),
            lanes: Lanes::full(n),
            placed: 0,
            order: Vec::with_capacity(n),
            stop,
        }
    }

    /// Placing `u` next keeps the order lexicographically smallest.
    fn canonical(&self, u: usize) -> bool {
        for &p in self.order.iter().rev() {
            if self.adj[u] >> p & 1 == 1 {
                return true;
            }
            if p > u {
                return false;
            }
        }
        true
    }

    /// Places `u`; returns false if some newly completed closed
    /// neighbourhood is uncovered.
    fn place(&mut self, u: usize) -> bool {
        self.lanes.update(self.g, NetworkKind::Mis, u);
        self.placed |= 1 << u;
        self.order.push(u);
        let mut check = self.closed_mask[u];
        while check != 0 {
            let v = check.trailing_zeros() as usize;
            check &= check - 1;
            if self.closed_mask[v] & !self.placed == 0 {
                for k in 0..self.lanes.len() {
                    if self.lanes.all_zero_word(&self.closed[v], k) != 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn unplace(&mut self, u: usize) {
        let start = self.lanes.start();
        self.lanes.reset(u, |k| identity_word(u, start + k));
        self.placed &= !(1 << u);
        self.order.pop();
    }

    fn run(&mut self) -> Option<Vec<usize>> {
        let n = self.g.n();
        if self.order.len() == n {
            return Some(self.order.clone());
        }
        if self.stop.load(Ordering::Relaxed) {
            return None;
        }
        for u in 0..n {
            if self.placed >> u & 1 == 1 || !self.canonical(u) {
                continue;
            }
            let ok = self.place(u);
            if ok {
                if let Some(w) = self.run() {
                    return Some(w);
                }
            }
            self.unplace(u);
        }
        None
    }
}

fn search_permis(g: &DiGraph, parallel: bool) -> Option<Word> {
    let n = g.n();
    let stop = AtomicBool::new(false);
    if n == 0 {
        return Some(Word::default());
    }
    if !parallel || n < 9 {
        return Dfs::new(g, &stop).run().map(Word);
    }
    // Split on canonical two-vertex prefixes.
    let mut prefixes = Vec::new();
    {
        let mut probe = Dfs::new(g, &stop);
        for a in 0..n {
            if !probe.place(a) {
                probe.unplace(a);
                continue;
            }
            for b in 0..n {
                if b != a && probe.canonical(b) {
                    prefixes.push((a, b));
                }
            }
            probe.unplace(a);
        }
    }
    let found = prefixes.par_iter().find_map_any(|&(a, b)| {
        let mut dfs = Dfs::new(g, &stop);
        if !dfs.place(a) || !dfs.place(b) {
            return None;
        }
        let w = dfs.run();
        if w.is_some() {
            stop.store(true, Ordering::Relaxed);
        }
        w
    });
    found.map(Word)
}

/// Permis of a composition: the host permis with each host vertex replaced by
/// the permis of its part (shifted to the part's vertex range). The result is
/// verified exhaustively when small enough.
pub fn composition_permis(
    host: &DiGraph,
    parts: &[DiGraph],
    host_permis: &Word,
    part_permises: &[Word],
) -> Result<Word> {
    host_permis.require_permutation(host.n())?;
    if part_permises.len() != parts.len() {
        return Err(Error::Domain("one permis per part is required".into()));
    }
    for (p, w) in parts.iter().zip(part_permises) {
        w.require_permutation(p.n())?;
    }
    let g = compose(host, parts)?;
    let offsets: Vec<usize> = parts
        .iter()
        .scan(0, |acc, p| {
            let o = *acc;
            *acc += p.n();
            Some(o)
        })
        .collect();
    let mut seq = Vec::with_capacity(g.n());
    for &h in host_permis.as_slice() {
        seq.extend(part_permises[h].as_slice().iter().map(|&v| offsets[h] + v));
    }
    let w = Word(seq);
    if g.n() <= MAX_EXHAUSTIVE_VERTICES && !is_permis(&g, &w)?.is_permis {
        return Err(Error::Internal("composed permutation failed verification".into()));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{family, Family};

    #[test]
    fn p3_permis() {
        let g = family(Family::Path, 3).unwrap();
        assert!(is_permis(&g, &Word(vec![0, 2, 1])).unwrap().is_permis);
        let r = is_permis(&g, &Word(vec![0, 1, 2])).unwrap();
        assert!(!r.is_permis);
        assert_eq!(r.uncovered_vertex, Some(0));
        assert_eq!(r.witness_config.unwrap().to_string(), "011");
        for v in 0..3 {
            assert!(is_covered(&g, &Word(vec![0, 2, 1]), v).unwrap().0);
        }
        let (ok, x) = is_covered(&g, &Word(vec![0, 1, 2]), 0).unwrap();
        assert!(!ok);
        assert_eq!(x.unwrap().to_string(), "011");
    }

    #[test]
    fn named_graphs() {
        for (f, k) in [(Family::Cycle, 7), (Family::Wheel, 8), (Family::OddHolePlusPlus, 3)] {
            let g = family(f, k).unwrap();
            let r = find_permis_with(
                &g,
                SearchOptions {
                    tethered_shortcut: false,
                    ..SearchOptions::default()
                },
            )
            .unwrap();
            assert_eq!(r, PermisOutcome::NotPermissible { method: Method::Search }, "{f}");
        }
        let g = family(Family::OddHolePlus, 3).unwrap();
        let w = find_permis(&g).unwrap().permis().cloned().unwrap();
        assert!(is_permis(&g, &w).unwrap().is_permis);
    }

    #[test]
    fn tethered_shortcut() {
        let w8 = family(Family::Wheel, 8).unwrap();
        assert!(tethered_odd_hole(&w8).is_some());
        assert_eq!(
            find_permis(&w8).unwrap(),
            PermisOutcome::NotPermissible { method: Method::TetheredShortcut }
        );
        assert!(tethered_odd_hole(&family(Family::OddHolePlus, 3).unwrap()).is_none());
    }

    #[test]
    fn composition() {
        let k2 = family(Family::Complete, 2).unwrap();
        let p3 = family(Family::Path, 3).unwrap();
        let w = composition_permis(
            &k2,
            &[p3.clone(), DiGraph::empty(1)],
            &Word(vec![0, 1]),
            &[Word(vec![0, 2, 1]), Word(vec![0])],
        )
        .unwrap();
        assert_eq!(w, Word(vec![0, 2, 1, 3]));
        let two = DiGraph::empty(2);
        let w = composition_permis(&two, &[p3.clone(), p3], &Word(vec![1, 0]), &[Word(vec![0, 2, 1]), Word(vec![2, 0, 1])]).unwrap();
        assert_eq!(w, Word(vec![5, 3, 4, 0, 2, 1]));
    }
}

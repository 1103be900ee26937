//! Fixability of the kernel network on small digraphs.
//!
//! A profile records, for every start configuration at once, the current
//! configuration reached so far. Updating a vertex acts on all entries
//! simultaneously, so the network is fixable exactly when some sequence of
//! updates drives the identity profile to one whose entries are all kernels.
//! Profiles are stored transposed: one `u64` lane per vertex, bit `i` being
//! that vertex's state in entry `i`.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use num_rational::Ratio;
use serde::Serialize;

use crate::batch::{count_fixed, identity_word, valid_mask};
use crate::error::{ensure_exhaustive, Error, Result, MAX_EXHAUSTIVE_VERTICES};
use crate::graph::DiGraph;
use crate::network::{NetworkKind, Word};
use crate::set::VertexSet;
use crate::structure::is_tethered;

/// Largest digraph on which the profile search runs.
pub const PROFILE_MAX_VERTICES: usize = 5;

/// Largest tethered set whose subgraph is tested by profile search.
pub const TETHERED_MAX_SIZE: usize = 5;

/// Distinct profiles explored before the search gives up.
pub const PROFILE_BUDGET: usize = 4_000_000;

/// Transposed profile; lanes beyond `n` stay zero.
pub type Profile = [u64; PROFILE_MAX_VERTICES];

/// Why an answer holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Argument {
    /// Breadth-first search over reachable profiles ran to the stated end.
    ProfileSearch { profiles: usize },
    /// The digraph has no kernel, so no configuration is fixed.
    NoKernel,
    /// Undirected graphs are fixed by any permutation repeated twice.
    UndirectedDoubled,
    /// A tethered set whose induced kernel network is not fixable.
    TetheredSet { set: VertexSet },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Fixability {
    Fixable { word: Word, argument: Argument },
    NotFixable { argument: Argument },
    Unknown { reason: String },
}

impl Fixability {
    /// `Some(answer)` when decided.
    pub fn answer(&self) -> Option<bool> {
        match self {
            Fixability::Fixable { .. } => Some(true),
            Fixability::NotFixable { .. } => Some(false),
            Fixability::Unknown { .. } => None,
        }
    }

    pub fn word(&self) -> Option<&Word> {
        match self {
            Fixability::Fixable { word, .. } => Some(word),
            _ => None,
        }
    }
}

pub fn identity_profile(n: usize) -> Profile {
    let mut p = [0; PROFILE_MAX_VERTICES];
    for (v, lane) in p.iter_mut().enumerate().take(n) {
        *lane = identity_word(v, 0) & valid_mask(n);
    }
    p
}

/// Kernel update of `v` applied to every entry.
#[inline]
pub fn update_profile(g: &DiGraph, p: &Profile, v: usize) -> Profile {
    let mut q = *p;
    let or = g.in_list(v).iter().fold(0u64, |m, &u| m | p[u]);
    q[v] = !or & valid_mask(g.n());
    q
}

/// Entries (as bits) whose configuration is not a kernel.
pub fn unfixed_entries(g: &DiGraph, p: &Profile) -> u64 {
    let n = g.n();
    let mut bad = 0;
    for v in 0..n {
        let or = g.in_list(v).iter().fold(0u64, |m, &u| m | p[u]);
        bad |= p[v] ^ !or;
    }
    bad & valid_mask(n)
}

/// Exact fixability by breadth-first search over profiles. Returned words are
/// shortest. Gives `Unknown` only when the profile budget is exhausted.
pub fn profile_search(g: &DiGraph) -> Result<Fixability> {
    let n = g.n();
    if n > PROFILE_MAX_VERTICES {
        return Err(Error::TooLarge {
            n,
            limit: PROFILE_MAX_VERTICES,
        });
    }
    let start = identity_profile(n);
    // Each explored profile with its parent index and the vertex updated.
    let mut seen: HashMap<Profile, usize> = HashMap::new();
    let mut nodes: Vec<(Profile, usize, usize)> = vec![(start, usize::MAX, usize::MAX)];
    seen.insert(start, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let p = nodes[i].0;
        if unfixed_entries(g, &p) == 0 {
            let mut word = Vec::new();
            let mut j = i;
            while nodes[j].1 != usize::MAX {
                word.push(nodes[j].2);
                j = nodes[j].1;
            }
            word.reverse();
            return Ok(Fixability::Fixable {
                word: Word(word),
                argument: Argument::ProfileSearch { profiles: nodes.len() },
            });
        }
        for v in 0..n {
            let q = update_profile(g, &p, v);
            if let Entry::Vacant(e) = seen.entry(q) {
                if nodes.len() >= PROFILE_BUDGET {
                    return Ok(Fixability::Unknown {
                        reason: format!("profile budget of {PROFILE_BUDGET} exhausted"),
                    });
                }
                e.insert(nodes.len());
                queue.push_back(nodes.len());
                nodes.push((q, i, v));
            }
        }
    }
    Ok(Fixability::NotFixable {
        argument: Argument::ProfileSearch { profiles: nodes.len() },
    })
}

/// A kernel (independent set with every outside vertex having an
/// in-neighbour inside), by backtracking over vertices in index order.
pub fn find_kernel(g: &DiGraph) -> Result<Option<VertexSet>> {
    let n = g.n();
    ensure_exhaustive(n, MAX_EXHAUSTIVE_VERTICES)?;
    let inn = g.in_masks();
    let out = g.out_masks();
    // Vertex v is settled once all its in-neighbours and itself are decided.
    let settled_at: Vec<usize> = (0..n)
        .map(|v| {
            let hi = if inn[v] == 0 { 0 } else { 63 - inn[v].leading_zeros() as usize };
            hi.max(v)
        })
        .collect();
    let mut by_level = vec![Vec::new(); n];
    for v in 0..n {
        by_level[settled_at[v]].push(v);
    }
    fn go(i: usize, k: u64, n: usize, inn: &[u64], out: &[u64], by_level: &[Vec<usize>]) -> Option<u64> {
        if i == n {
            return Some(k);
        }
        for take in [true, false] {
            let k2 = if take {
                if (inn[i] | out[i]) & k != 0 {
                    continue;
                }
                k | 1 << i
            } else {
                k
            };
            let ok = by_level[i]
                .iter()
                .all(|&v| k2 >> v & 1 == 1 || inn[v] & k2 != 0);
            if ok {
                if let Some(found) = go(i + 1, k2, n, inn, out, by_level) {
                    return Some(found);
                }
            }
        }
        None
    }
    Ok(go(0, 0, n, &inn, &out, &by_level).map(|m| VertexSet::from_mask(n, m)))
}

fn subsets_up_to(n: usize, max: usize, f: &mut dyn FnMut(&VertexSet) -> bool) -> bool {
    fn rec(start: usize, n: usize, max: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&VertexSet) -> bool) -> bool {
        if !cur.is_empty() && f(&VertexSet::from_vertices(n, cur.iter().copied())) {
            return true;
        }
        if cur.len() == max {
            return false;
        }
        for v in start..n {
            cur.push(v);
            if rec(v + 1, n, max, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    rec(0, n, max, &mut Vec::new(), f)
}

/// A proper tethered set `S`, `|S| ≤ 5`, whose induced kernel network is not
/// fixable; such a set makes the whole network unfixable.
pub fn unfixable_tethered_set(g: &DiGraph) -> Result<Option<VertexSet>> {
    let n = g.n();
    ensure_exhaustive(n, MAX_EXHAUSTIVE_VERTICES)?;
    let mut found = None;
    let mut failure = None;
    subsets_up_to(n, TETHERED_MAX_SIZE.min(n.saturating_sub(1)), &mut |s| {
        if !is_tethered(g, s) {
            return false;
        }
        let (h, _) = g.induced(s);
        match profile_search(&h) {
            Ok(Fixability::NotFixable { .. }) => {
                found = Some(s.clone());
                true
            }
            Ok(_) => false,
            Err(e) => {
                failure = Some(e);
                true
            }
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

/// Is the kernel network of `g` fixable? Shortcuts first (no kernel,
/// undirected, unfixable tethered set), then the profile search for
/// `n ≤ 5`; otherwise unknown.
pub fn kernel_fixable(g: &DiGraph) -> Result<Fixability> {
    let n = g.n();
    if n > MAX_EXHAUSTIVE_VERTICES {
        return Ok(Fixability::Unknown {
            reason: format!("{n} vertices exceed the supported range"),
        });
    }
    if find_kernel(g)?.is_none() {
        return Ok(Fixability::NotFixable {
            argument: Argument::NoKernel,
        });
    }
    if g.is_undirected() {
        return Ok(Fixability::Fixable {
            word: Word::identity(n).doubled(),
            argument: Argument::UndirectedDoubled,
        });
    }
    if let Some(set) = unfixable_tethered_set(g)? {
        return Ok(Fixability::NotFixable {
            argument: Argument::TetheredSet { set },
        });
    }
    if n <= PROFILE_MAX_VERTICES {
        return profile_search(g);
    }
    Ok(Fixability::Unknown {
        reason: format!("no shortcut applies and {n} vertices exceed the profile search range"),
    })
}

/// Exact fraction of start configurations whose endpoint under `w` is fixed.
pub fn word_fix_fraction(g: &DiGraph, kind: NetworkKind, w: &Word) -> Result<Ratio<u64>> {
    let fixed = count_fixed(g, kind, w)?;
    Ok(Ratio::new(fixed, 1u64 << g.n()))
}

/// Directed `C3` on vertices `0, 1, 2`, each joined by a symmetric edge to
/// vertex 3 of the edge `3 4`: it has a kernel but is not fixable.
pub fn tethered_triangle_example() -> DiGraph {
    DiGraph::from_arcs(
        5,
        [(0, 1), (1, 2), (2, 0), (3, 4), (4, 3)]
            .into_iter()
            .chain((0..3).flat_map(|a| [(a, 3), (3, a)])),
    )
    .expect("valid arcs")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::batch::first_unfixed;
    use crate::build::{family, Family};

    #[test]
    fn directed_cycles() {
        for k in [3, 5] {
            let c = family(Family::DirectedCycle, k).unwrap();
            assert!(find_kernel(&c).unwrap().is_none());
            assert_eq!(kernel_fixable(&c).unwrap().answer(), Some(false));
            assert_eq!(profile_search(&c).unwrap().answer(), Some(false));
        }
        let c4 = family(Family::DirectedCycle, 4).unwrap();
        assert!(find_kernel(&c4).unwrap().is_some());
    }

    #[test]
    fn tethered_triangle() {
        let g = tethered_triangle_example();
        assert_eq!(find_kernel(&g).unwrap(), Some(VertexSet::from_vertices(5, [3])));
        assert_eq!(profile_search(&g).unwrap().answer(), Some(false));
        match kernel_fixable(&g).unwrap() {
            Fixability::NotFixable {
                argument: Argument::TetheredSet { set },
            } => assert_eq!(set.to_vec(), vec![0, 1, 2]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn found_words_verify() {
        let g = family(Family::Path, 4).unwrap();
        let r = profile_search(&g).unwrap();
        let w = r.word().unwrap();
        assert!(first_unfixed(&g, NetworkKind::Kernel, w).unwrap().is_none());
        // A lone arc needs its tail and then its head.
        let arc = DiGraph::from_arcs(2, [(0, 1)]).unwrap();
        assert_eq!(profile_search(&arc).unwrap().word(), Some(&Word(vec![0, 1])));
    }

    #[test]
    fn fractions() {
        let p3 = family(Family::Path, 3).unwrap();
        assert_eq!(word_fix_fraction(&p3, NetworkKind::Mis, &Word(vec![0, 2, 1])).unwrap(), Ratio::new(1, 1));
        assert_eq!(word_fix_fraction(&p3, NetworkKind::Mis, &Word(vec![0, 1, 2])).unwrap(), Ratio::new(3, 4));
        let c3 = family(Family::DirectedCycle, 3).unwrap();
        assert_eq!(
            word_fix_fraction(&c3, NetworkKind::Kernel, &Word(vec![0, 1, 2, 0])).unwrap(),
            Ratio::new(0, 1)
        );
    }
}

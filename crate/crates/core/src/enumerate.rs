//! Isomorphism-free generation of small graphs and digraphs.
//!
//! Canonical forms come from individualization-refinement: an ordered
//! partition is refined by neighbour counts until stable, each choice of
//! vertex to individualize in the first non-singleton cell is explored, and
//! the lexicographically largest adjacency code over all discrete leaves is
//! the canonical form. No automorphism pruning is done, which is fine at the
//! sizes used here.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::DiGraph;

/// Largest vertex count supported by the canonical code (one bit per ordered
/// pair must fit in 128 bits).
pub const MAX_CANONICAL_VERTICES: usize = 11;

/// Adjacency as bit masks; `out[u] >> v & 1` is the arc `u -> v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Adj {
    n: usize,
    out: Vec<u32>,
    inn: Vec<u32>,
}

impl Adj {
    fn of(g: &DiGraph) -> Self {
        let n = g.n();
        let out = (0..n).map(|v| g.out_neighbours(v).mask() as u32).collect();
        let inn = (0..n).map(|v| g.in_neighbours(v).mask() as u32).collect();
        Adj { n, out, inn }
    }

    fn has(&self, u: usize, v: usize) -> bool {
        self.out[u] >> v & 1 == 1
    }
}

/// Splits every cell by (out-count, in-count) into each current cell until
/// stable. Cells are lists of vertices; the order of cells is invariant.
fn refine(adj: &Adj, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let masks: Vec<u32> = cells
            .iter()
            .map(|c| c.iter().fold(0u32, |m, &v| m | 1 << v))
            .collect();
        let mut next = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let key = masks
                        .iter()
                        .flat_map(|&m| [(adj.out[v] & m).count_ones(), (adj.inn[v] & m).count_ones()])
                        .collect();
                    (key, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

/// Code of the labelling `order` (position -> vertex): one bit per ordered
/// pair of positions, most significant first.
fn code(adj: &Adj, order: &[usize]) -> u128 {
    let n = adj.n;
    let mut c = 0u128;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                c = c << 1 | u128::from(adj.has(order[i], order[j]));
            }
        }
    }
    c
}

fn search(adj: &Adj, cells: Vec<Vec<usize>>, best: &mut Option<(u128, Vec<usize>)>) {
    let cells = refine(adj, cells);
    match cells.iter().position(|c| c.len() > 1) {
        None => {
            let order: Vec<usize> = cells.into_iter().map(|c| c[0]).collect();
            let c = code(adj, &order);
            if best.as_ref().is_none_or(|(b, _)| c > *b) {
                *best = Some((c, order));
            }
        }
        Some(i) => {
            for &v in &cells[i] {
                let mut next = cells[..i].to_vec();
                next.push(vec![v]);
                next.push(cells[i].iter().copied().filter(|&u| u != v).collect());
                next.extend_from_slice(&cells[i + 1..]);
                search(adj, next, best);
            }
        }
    }
}

/// Canonical code and canonical labelling (position -> original vertex).
pub fn canonical_form(g: &DiGraph) -> Result<(u128, Vec<usize>)> {
    let n = g.n();
    if n > MAX_CANONICAL_VERTICES {
        return Err(Error::TooLarge {
            n,
            limit: MAX_CANONICAL_VERTICES,
        });
    }
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let adj = Adj::of(g);
    let mut best = None;
    search(&adj, vec![(0..n).collect()], &mut best);
    Ok(best.expect("at least one leaf"))
}

/// `g` relabelled so that vertex `i` is `order[i]` of the original.
pub fn relabel(g: &DiGraph, order: &[usize]) -> DiGraph {
    let n = g.n();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    DiGraph::from_arcs(n, g.arcs().map(|(u, v)| (pos[u], pos[v]))).expect("relabel keeps arcs valid")
}

pub fn canonical_graph(g: &DiGraph) -> Result<DiGraph> {
    let (_, order) = canonical_form(g)?;
    Ok(relabel(g, &order))
}

pub fn are_isomorphic(a: &DiGraph, b: &DiGraph) -> Result<bool> {
    Ok(a.n() == b.n() && canonical_form(a)?.0 == canonical_form(b)?.0)
}

/// All connected graphs on `n` vertices up to isomorphism, each in canonical
/// labelling, sorted by canonical code (descending).
pub fn connected_graphs(n: usize) -> Result<Vec<DiGraph>> {
    if n > 10 {
        return Err(Error::TooLarge { n, limit: 10 });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut level = vec![DiGraph::empty(1)];
    for m in 2..=n {
        let found: HashSet<(u128, Vec<(usize, usize)>)> = level
            .par_iter()
            .flat_map_iter(|g| {
                let base: Vec<(usize, usize)> = g.edges().collect();
                (1u32..1 << (m - 1)).map(move |nb| {
                    let mut edges = base.clone();
                    edges.extend((0..m - 1).filter(|&u| nb >> u & 1 == 1).map(|u| (u, m - 1)));
                    let h = DiGraph::from_edges(m, edges).expect("valid extension");
                    let (c, order) = canonical_form(&h).expect("within canonical range");
                    (c, relabel(&h, &order).edges().collect())
                })
            })
            .collect();
        let mut sorted: Vec<_> = found.into_iter().collect();
        sorted.sort_by_key(|e| std::cmp::Reverse(e.0));
        level = sorted
            .into_iter()
            .map(|(_, e)| DiGraph::from_edges(m, e).expect("valid canonical graph"))
            .collect();
    }
    Ok(level)
}

/// All digraphs (loops excluded, arcs in either or both directions) on `n`
/// vertices up to isomorphism, canonical labelling, sorted by code.
pub fn digraphs(n: usize) -> Result<Vec<DiGraph>> {
    if n > 4 {
        return Err(Error::TooLarge { n, limit: 4 });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    let mut seen: HashSet<u128> = HashSet::new();
    let mut out: Vec<(u128, DiGraph)> = Vec::new();
    for bits in 0u64..1 << pairs.len() {
        let g = DiGraph::from_arcs(n, pairs.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &p)| p))
            .expect("valid arcs");
        let (c, order) = canonical_form(&g)?;
        if seen.insert(c) {
            out.push((c, relabel(&g, &order)));
        }
    }
    out.sort_by_key(|e| std::cmp::Reverse(e.0));
    Ok(out.into_iter().map(|(_, g)| g).collect())
}

/// All graphs (connected or not) on `n` vertices up to isomorphism,
/// canonical labelling, sorted by code. Brute force over labelled graphs.
pub fn graphs(n: usize) -> Result<Vec<DiGraph>> {
    if n > 6 {
        return Err(Error::TooLarge { n, limit: 6 });
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut seen: HashSet<u128> = HashSet::new();
    let mut out: Vec<(u128, DiGraph)> = Vec::new();
    for bits in 0u64..1 << pairs.len() {
        let g = DiGraph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &p)| p))
            .expect("valid edges");
        let (c, order) = canonical_form(&g)?;
        if seen.insert(c) {
            out.push((c, relabel(&g, &order)));
        }
    }
    out.sort_by_key(|e| std::cmp::Reverse(e.0));
    Ok(out.into_iter().map(|(_, g)| g).collect())
}

/// A labelled digraph on `n` vertices with each ordered pair present
/// independently with probability `p`.
pub fn random_digraph<R: Rng>(rng: &mut R, n: usize, p: f64) -> DiGraph {
    let arcs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    DiGraph::from_arcs(n, arcs).expect("valid arcs")
}

/// A labelled graph on `n` vertices with each edge present with probability `p`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> DiGraph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    DiGraph::from_edges(n, edges).expect("valid edges")
}

/// Size of the standard digraph test corpus.
pub const DIGRAPH_CORPUS_SIZE: usize = 500;

/// The 238 digraphs on at most four vertices up to isomorphism (orders 1..=4),
/// followed by seeded random labelled four-vertex digraphs up to 500 total.
pub fn digraph_corpus(seed: u64) -> Vec<DiGraph> {
    let mut out: Vec<DiGraph> = (1..=4)
        .flat_map(|n| digraphs(n).expect("n <= 4"))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < DIGRAPH_CORPUS_SIZE {
        out.push(random_digraph(&mut rng, 4, 0.4));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{family, Family};

    #[test]
    fn connected_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| connected_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112, 853]);
    }

    #[test]
    fn digraph_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| digraphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 3, 16, 218]);
        let counts: Vec<usize> = (0..=6).map(|n| graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
        assert_eq!(digraph_corpus(7).len(), DIGRAPH_CORPUS_SIZE);
    }

    #[test]
    fn canonical_is_invariant() {
        let p = family(Family::Petersen, 0).unwrap();
        let shuffled = relabel(&p, &[3, 7, 1, 9, 0, 2, 8, 5, 4, 6]);
        assert!(are_isomorphic(&p, &shuffled).unwrap());
        let c10 = family(Family::Cycle, 10).unwrap();
        assert!(!are_isomorphic(&p, &c10).unwrap());
    }
}

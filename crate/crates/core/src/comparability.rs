//! Comparability and near-comparability recognition.
//!
//! Transitive orientations are found by decomposing the edge set into
//! implication classes: orienting an edge `ab` as `a -> b` forces `a -> c`
//! for every edge `ac` with `b, c` non-adjacent, and `c -> b` for every edge
//! `cb` with `a, c` non-adjacent. Classes are peeled off one at a time, the
//! forcing relation being recomputed on the remaining edges; the graph is a
//! comparability graph iff no class forces an edge both ways, and the union
//! of the classes is then a transitive orientation.

use crate::error::Result;
use crate::graph::DiGraph;
use crate::network::Word;
use crate::orientation::Orientation;
use crate::set::VertexSet;
use crate::structure::benjamins;

const UNSET: i8 = 0;

/// A transitive orientation of an undirected graph, if one exists.
pub fn transitive_orientation(g: &DiGraph) -> Result<Option<Orientation>> {
    g.require_undirected()?;
    let n = g.n();
    // present[u][v]: edge still in the remaining edge set.
    let mut present = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        present[u][v] = true;
        present[v][u] = true;
    }
    let mut arcs = Vec::with_capacity(g.edge_count());
    loop {
        let start = (0..n).find_map(|u| (u + 1..n).find(|&v| present[u][v]).map(|v| (u, v)));
        let Some(start) = start else { break };
        // dir[u][v] = 1 for u -> v in the class, -1 for v -> u.
        let mut dir = vec![vec![UNSET; n]; n];
        let mut stack = vec![start];
        dir[start.0][start.1] = 1;
        dir[start.1][start.0] = -1;
        let mut class = Vec::new();
        while let Some((a, b)) = stack.pop() {
            class.push((a, b));
            let mut force = |x: usize, y: usize, stack: &mut Vec<(usize, usize)>| -> bool {
                match dir[x][y] {
                    1 => true,
                    -1 => false,
                    _ => {
                        dir[x][y] = 1;
                        dir[y][x] = -1;
                        stack.push((x, y));
                        true
                    }
                }
            };
            for c in 0..n {
                if c != b && present[a][c] && !present[b][c] && !force(a, c, &mut stack) {
                    return Ok(None);
                }
                if c != a && present[c][b] && !present[a][c] && !force(c, b, &mut stack) {
                    return Ok(None);
                }
            }
        }
        for &(a, b) in &class {
            present[a][b] = false;
            present[b][a] = false;
        }
        arcs.extend(class);
    }
    Ok(Some(Orientation::from_arcs(g, arcs)?))
}

pub fn is_comparability(g: &DiGraph) -> Result<bool> {
    Ok(transitive_orientation(g)?.is_some())
}

/// Near-transitive acyclic orientation built from a transitive orientation of
/// the benjamin subgraph: its arcs are kept, every other edge into a benjamin
/// points at the benjamin, and edges among non-benjamins go from lower to
/// higher index. `None` if the benjamin subgraph is not a comparability graph.
pub fn near_transitive_orientation(g: &DiGraph) -> Result<Option<Orientation>> {
    g.require_undirected()?;
    let b = benjamins(g);
    let (gb, map) = g.induced(&b);
    let Some(tb) = transitive_orientation(&gb)? else {
        return Ok(None);
    };
    let mut arcs: Vec<(usize, usize)> = tb.arcs().into_iter().map(|(u, v)| (map[u], map[v])).collect();
    for (u, v) in g.edges() {
        match (b.contains(u), b.contains(v)) {
            (true, true) => {}
            (false, true) => arcs.push((u, v)),
            (true, false) => arcs.push((v, u)),
            (false, false) => arcs.push((u, v)),
        }
    }
    Ok(Some(Orientation::from_arcs(g, arcs)?))
}

/// The near-comparability test with, on success, a near-transitive acyclic
/// orientation and the permutation that induces it.
pub fn is_near_comparability(g: &DiGraph) -> Result<Option<(Orientation, Word)>> {
    let Some(o) = near_transitive_orientation(g)? else {
        return Ok(None);
    };
    let w = o
        .topological_order()
        .ok_or_else(|| crate::Error::Internal("near-transitive orientation has a cycle".into()))?;
    Ok(Some((o, w)))
}

/// Brute force over all `2^m` orientations: does any make every vertex
/// near-transitive? Intended for small graphs only.
pub fn brute_force_near_transitive(g: &DiGraph) -> Result<bool> {
    brute_force(g, false)
}

/// Brute force over all orientations for a transitive one.
pub fn brute_force_transitive(g: &DiGraph) -> Result<bool> {
    brute_force(g, true)
}

fn brute_force(g: &DiGraph, fully: bool) -> Result<bool> {
    g.require_undirected()?;
    let n = g.n();
    assert!(n <= 64, "brute force limited to 64 vertices");
    let edges: Vec<(usize, usize)> = g.edges().collect();
    assert!(edges.len() < 40, "too many edges for brute force");
    let closed: Vec<u64> = (0..n).map(|v| g.closed_neighbours(v).mask()).collect();
    let mut out = vec![0u64; n];
    for bits in 0u64..1 << edges.len() {
        out.iter_mut().for_each(|m| *m = 0);
        for (i, &(u, v)) in edges.iter().enumerate() {
            if bits >> i & 1 == 1 {
                out[u] |= 1 << v;
            } else {
                out[v] |= 1 << u;
            }
        }
        let transitive: Vec<bool> = (0..n)
            .map(|t| {
                let mut ok = true;
                let mut rest = out[t];
                while rest != 0 {
                    let a = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    if out[a] & !out[t] & !(1 << t) != 0 {
                        ok = false;
                        break;
                    }
                }
                ok
            })
            .collect();
        let good = if fully {
            transitive.iter().all(|&t| t)
        } else {
            (0..n).all(|v| {
                let mut cand = closed[v];
                while cand != 0 {
                    let t = cand.trailing_zeros() as usize;
                    cand &= cand - 1;
                    if transitive[t] && closed[t] & !closed[v] == 0 {
                        return true;
                    }
                }
                false
            })
        };
        if good {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Brute force over permutations for a near-transitive acyclic orientation.
pub fn brute_force_near_transitive_acyclic(g: &DiGraph) -> Result<bool> {
    g.require_undirected()?;
    let n = g.n();
    let mut found = false;
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        let o = crate::orientation::orientation_of(g, &Word(p.to_vec())).expect("valid permutation");
        if o.is_near_transitive(g) {
            found = true;
        }
        found
    });
    Ok(found)
}

/// Heap-style recursive permutation generator; stops when `f` returns true.
pub(crate) fn permutations(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k == p.len() {
        return f(p);
    }
    for i in k..p.len() {
        p.swap(k, i);
        if permutations(p, k + 1, f) {
            p.swap(k, i);
            return true;
        }
        p.swap(k, i);
    }
    false
}

/// Vertices of `g` outside the benjamin set, for reporting.
pub fn non_benjamins(g: &DiGraph) -> VertexSet {
    benjamins(g).complement()
}

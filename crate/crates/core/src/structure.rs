//! Structural predicates: closed twins, benjamins, tethered sets, strong
//! components and rooted spanning out-forests.

use std::collections::VecDeque;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph as PetGraph, NodeIndex};

use crate::error::{Error, Result};
use crate::graph::DiGraph;
use crate::set::VertexSet;

/// Partition of the vertices into classes of equal closed in-neighbourhood,
/// ordered by smallest member.
pub fn closed_twins(g: &DiGraph) -> Vec<VertexSet> {
    let n = g.n();
    let closed: Vec<VertexSet> = (0..n).map(|v| g.closed_in_neighbours(v)).collect();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<VertexSet> = Vec::new();
    for v in 0..n {
        if class_of[v] != usize::MAX {
            continue;
        }
        let mut class = VertexSet::empty(n);
        for u in v..n {
            if class_of[u] == usize::MAX && closed[u] == closed[v] {
                class_of[u] = classes.len();
                class.insert(u);
            }
        }
        classes.push(class);
    }
    classes
}

/// The closed-twin class containing `v`.
pub fn twin_class(g: &DiGraph, v: usize) -> VertexSet {
    let nv = g.closed_in_neighbours(v);
    VertexSet::from_vertices(g.n(), (0..g.n()).filter(|&u| g.closed_in_neighbours(u) == nv))
}

/// Vertices whose closed in-neighbourhood is inclusion-minimal.
pub fn benjamins(g: &DiGraph) -> VertexSet {
    let n = g.n();
    let closed: Vec<VertexSet> = (0..n).map(|v| g.closed_in_neighbours(v)).collect();
    VertexSet::from_vertices(
        n,
        (0..n).filter(|&m| {
            !(0..n).any(|v| closed[v] != closed[m] && closed[v].is_subset(&closed[m]))
        }),
    )
}

/// The subgraph induced by the benjamins, with the map back to `g`.
pub fn benjamin_subgraph(g: &DiGraph) -> (DiGraph, Vec<usize>) {
    g.induced(&benjamins(g))
}

/// Every `s ∈ S` and `t ∈ N⁻(S) \ S` are joined by a symmetric edge.
pub fn is_tethered(g: &DiGraph, s: &VertexSet) -> bool {
    let outside = g.in_neighbours_of_set(s).difference(s);
    s.iter()
        .all(|a| outside.iter().all(|t| g.has_edge(a, t)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongComponents {
    /// Each component's members, ascending. Components are listed in a
    /// topological order of the condensation.
    pub components: Vec<VertexSet>,
    /// Component index of every vertex.
    pub component_of: Vec<usize>,
    /// Indices (into `components`) of the components without a parent.
    pub initial: Vec<usize>,
    /// `parents[c]`: components with an arc into `c`.
    pub parents: Vec<Vec<usize>>,
}

impl StrongComponents {
    pub fn is_initial(&self, c: usize) -> bool {
        self.parents[c].is_empty()
    }
}

/// Strong components in topological order; ties between incomparable
/// components are broken by smallest member.
pub fn strong_components(g: &DiGraph) -> StrongComponents {
    let n = g.n();
    let mut pg: PetGraph<(), ()> = PetGraph::with_capacity(n, g.arc_count());
    let nodes: Vec<NodeIndex> = (0..n).map(|_| pg.add_node(())).collect();
    for (u, v) in g.arcs() {
        pg.add_edge(nodes[u], nodes[v], ());
    }
    let raw: Vec<VertexSet> = tarjan_scc(&pg)
        .into_iter()
        .map(|c| VertexSet::from_vertices(n, c.into_iter().map(|x| x.index())))
        .collect();
    let mut raw_of = vec![0; n];
    for (i, c) in raw.iter().enumerate() {
        for v in c.iter() {
            raw_of[v] = i;
        }
    }
    let k = raw.len();
    let mut raw_parents = vec![Vec::new(); k];
    let mut indeg = vec![0usize; k];
    for (u, v) in g.arcs() {
        let (a, b) = (raw_of[u], raw_of[v]);
        if a != b && !raw_parents[b].contains(&a) {
            raw_parents[b].push(a);
            indeg[b] += 1;
        }
    }
    // Kahn's algorithm, smallest minimum vertex first.
    let mut order = Vec::with_capacity(k);
    let mut done = vec![false; k];
    let mut children = vec![Vec::new(); k];
    for (b, ps) in raw_parents.iter().enumerate() {
        for &a in ps {
            children[a].push(b);
        }
    }
    while order.len() < k {
        let next = (0..k)
            .filter(|&c| !done[c] && indeg[c] == 0)
            .min_by_key(|&c| raw[c].first())
            .expect("condensation is acyclic");
        done[next] = true;
        order.push(next);
        for &c in &children[next] {
            indeg[c] -= 1;
        }
    }
    let mut new_index = vec![0; k];
    for (i, &c) in order.iter().enumerate() {
        new_index[c] = i;
    }
    let components: Vec<VertexSet> = order.iter().map(|&c| raw[c].clone()).collect();
    let component_of = (0..n).map(|v| new_index[raw_of[v]]).collect();
    let parents: Vec<Vec<usize>> = order
        .iter()
        .map(|&c| {
            let mut ps: Vec<usize> = raw_parents[c].iter().map(|&p| new_index[p]).collect();
            ps.sort_unstable();
            ps
        })
        .collect();
    let initial = (0..k).filter(|&c| parents[c].is_empty()).collect();
    StrongComponents {
        components,
        component_of,
        initial,
        parents,
    }
}

/// Connected components of the subgraph induced by `within` (arcs read in
/// both directions), ordered by smallest member.
pub fn weak_components_within(g: &DiGraph, within: &VertexSet) -> Vec<VertexSet> {
    let mut seen = VertexSet::empty(g.n());
    let mut comps = Vec::new();
    for start in within.iter() {
        if seen.contains(start) {
            continue;
        }
        let mut comp = VertexSet::empty(g.n());
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(u) = stack.pop() {
            comp.insert(u);
            for &v in g.out_list(u).iter().chain(g.in_list(u)) {
                if within.contains(v) && !seen.contains(v) {
                    seen.insert(v);
                    stack.push(v);
                }
            }
        }
        comps.push(comp);
    }
    comps
}

fn bfs_distances(g: &DiGraph, root: usize, within: &VertexSet) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    dist[root] = Some(0);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].unwrap();
        for &v in g.out_list(u) {
            if within.contains(v) && dist[v].is_none() {
                dist[v] = Some(d + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Spanning out-forest of `g[within]` rooted at `roots`, as a parent map.
///
/// Each vertex joins the tree of its nearest root, ties going to the root of
/// smallest index; its parent is the smallest-index in-neighbour that lies
/// on a shortest path from that root. Roots and vertices outside `within`
/// have no parent.
pub fn spanning_out_forest_within(
    g: &DiGraph,
    within: &VertexSet,
    roots: &VertexSet,
) -> Result<Vec<Option<usize>>> {
    let n = g.n();
    if roots.is_empty() && !within.is_empty() {
        return Err(Error::Domain("spanning out-forest needs at least one root".into()));
    }
    let root_list = roots.to_vec();
    let dists: Vec<Vec<Option<usize>>> = root_list
        .iter()
        .map(|&r| bfs_distances(g, r, within))
        .collect();
    // nearest[u] = (distance, index into root_list)
    let mut nearest: Vec<Option<(usize, usize)>> = vec![None; n];
    for u in within.iter() {
        for (i, d) in dists.iter().enumerate() {
            if let Some(d) = d[u] {
                if nearest[u].is_none_or(|(best, _)| d < best) {
                    nearest[u] = Some((d, i));
                }
            }
        }
    }
    let mut parent = vec![None; n];
    for u in within.iter() {
        if roots.contains(u) {
            continue;
        }
        let (d, i) = nearest[u].ok_or(Error::Unreachable(u))?;
        let p = g
            .in_list(u)
            .iter()
            .copied()
            .find(|&p| {
                within.contains(p) && dists[i][p] == Some(d - 1) && nearest[p].map(|x| x.1) == Some(i)
            })
            .ok_or_else(|| Error::Internal(format!("no shortest-path parent for {u}")))?;
        parent[u] = Some(p);
    }
    Ok(parent)
}

pub fn spanning_out_forest(g: &DiGraph, roots: &VertexSet) -> Result<Vec<Option<usize>>> {
    spanning_out_forest_within(g, &g.vertices(), roots)
}

/// Depth of every vertex in a parent map (roots and outsiders have depth 0).
pub(crate) fn forest_depths(parent: &[Option<usize>]) -> Vec<usize> {
    let n = parent.len();
    let mut depth = vec![usize::MAX; n];
    for v in 0..n {
        let mut path = Vec::new();
        let mut u = v;
        while depth[u] == usize::MAX {
            match parent[u] {
                Some(p) => {
                    path.push(u);
                    u = p;
                }
                None => {
                    depth[u] = 0;
                }
            }
        }
        let mut d = depth[u];
        while let Some(w) = path.pop() {
            d += 1;
            depth[w] = d;
        }
    }
    depth
}

/// Non-root members of `within`, deepest first (ties by index), so every
/// vertex precedes its parent.
pub(crate) fn leaves_to_roots(parent: &[Option<usize>], within: &VertexSet) -> Vec<usize> {
    let depth = forest_depths(parent);
    let mut order: Vec<usize> = within.iter().filter(|&v| parent[v].is_some()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(depth[v]), v));
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{family, Family};

    fn p3() -> DiGraph {
        DiGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn twins() {
        let k3 = family(Family::Complete, 3).unwrap();
        assert_eq!(closed_twins(&k3), vec![VertexSet::full(3)]);
        assert_eq!(closed_twins(&p3()).len(), 3);
        let c3 = family(Family::DirectedCycle, 3).unwrap();
        assert_eq!(closed_twins(&c3).len(), 3);
    }

    #[test]
    fn benjamin_examples() {
        assert_eq!(benjamins(&p3()).to_vec(), vec![0, 2]);
        assert_eq!(benjamins(&family(Family::Complete, 4).unwrap()).len(), 4);
        let star = DiGraph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(benjamins(&star).to_vec(), vec![1, 2, 3]);
    }

    #[test]
    fn tethered_examples() {
        let p4 = DiGraph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(!is_tethered(&p4, &VertexSet::from_vertices(4, [0, 2])));
        assert!(is_tethered(&p4, &VertexSet::from_vertices(4, [0])));
        assert!(is_tethered(&p4, &VertexSet::full(4)));
    }

    #[test]
    fn scc_examples() {
        let c3 = family(Family::DirectedCycle, 3).unwrap();
        let d = strong_components(&c3);
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.initial, vec![0]);

        let path = DiGraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
        let d = strong_components(&path);
        assert_eq!(d.components.len(), 3);
        assert_eq!(d.initial.len(), 1);
        assert_eq!(d.components[d.initial[0]].to_vec(), vec![0]);
        // topological order respected
        for (u, v) in path.arcs() {
            assert!(d.component_of[u] <= d.component_of[v]);
        }

        let two_k2 = DiGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let d = strong_components(&two_k2);
        assert_eq!(d.components.len(), 2);
        assert_eq!(d.initial, vec![0, 1]);
    }

    #[test]
    fn forest_examples() {
        let c3 = family(Family::DirectedCycle, 3).unwrap();
        let p = spanning_out_forest(&c3, &VertexSet::from_vertices(3, [0])).unwrap();
        assert_eq!(p, vec![None, Some(0), Some(1)]);

        let c4 = family(Family::Cycle, 4).unwrap();
        let p = spanning_out_forest(&c4, &VertexSet::from_vertices(4, [0, 2])).unwrap();
        assert_eq!(p, vec![None, Some(0), None, Some(0)]);

        let p = spanning_out_forest(&c4, &VertexSet::full(4)).unwrap();
        assert!(p.iter().all(Option::is_none));

        let path = DiGraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            spanning_out_forest(&path, &VertexSet::from_vertices(3, [1])),
            Err(Error::Unreachable(0))
        );
    }
}

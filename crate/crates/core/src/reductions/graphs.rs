//! Gadgets between constituency, district, fixing-set and permis problems.

use crate::decide::{
    has_nontrivial_nondistrict, is_complete_type, is_constituency, is_district, is_empty_type, is_fixing_set,
};
use crate::error::{Error, Result};
use crate::graph::DiGraph;
use crate::network::Word;
use crate::permis::{find_permis, is_permis, PermisOutcome};
use crate::set::VertexSet;

use super::{expect_count, Builder, Correspondence, ReductionInstance, SetCover, Source, Target};

fn instance(source: Source, b: Builder, set: Option<VertexSet>, word: Option<Word>) -> Result<ReductionInstance> {
    let graph = b.graph()?;
    Ok(ReductionInstance {
        source,
        target: Target { graph, set, word },
        roles: b.roles,
        layout: None,
    })
}

fn graph_source(g: &DiGraph, s: &VertexSet) -> Result<Source> {
    g.require_undirected()?;
    g.check_set(s)?;
    Ok(Source::GraphSet {
        graph: g.clone(),
        set: s.clone(),
    })
}

/// Element vertices `v_i`, then `k` copies `q_j^l` of every set; each layer
/// `l` is a clique and `q_j^l` is joined to the elements of set `j`. The
/// target set is the element vertices.
pub fn setcover_to_constituency(sc: &SetCover) -> Result<ReductionInstance> {
    let (n, m, k) = (sc.elements, sc.sets.len(), sc.k);
    let mut b = Builder::default();
    let v: Vec<usize> = (0..n).map(|i| b.vertex(format!("v{}", i + 1))).collect();
    let q: Vec<Vec<usize>> = (0..m)
        .map(|j| (0..k).map(|l| b.vertex(format!("q{}^{}", j + 1, l + 1))).collect())
        .collect();
    for (j, set) in sc.sets.iter().enumerate() {
        for &x in set {
            for l in 0..k {
                b.edge(q[j][l], v[x]);
            }
        }
    }
    for l in 0..k {
        for j in 0..m {
            for i in j + 1..m {
                b.edge(q[j][l], q[i][l]);
            }
        }
    }
    let sizes: usize = sc.sets.iter().map(Vec::len).sum();
    expect_count("vertices", b.roles.len(), n + m * k)?;
    expect_count("edges", b.edges.len(), k * sizes + k * m * m.saturating_sub(1) / 2)?;
    let total = b.roles.len();
    instance(
        Source::SetCover(sc.clone()),
        b,
        Some(VertexSet::from_vertices(total, v)),
        None,
    )
}

/// Adds a pendant copy `t'` to every `t ∉ S` and an apex `v̂` joined to `S`;
/// the target set is `S ∪ T'`.
pub fn constituency_to_district(g: &DiGraph, s: &VertexSet) -> Result<ReductionInstance> {
    let source = graph_source(g, s)?;
    let n = g.n();
    let t = s.complement();
    let mut b = Builder::default();
    for v in 0..n {
        b.vertex(format!("v{v}"));
    }
    let mut t_copy = vec![usize::MAX; n];
    for x in t.iter() {
        t_copy[x] = b.vertex(format!("v{x}'"));
    }
    let apex = b.vertex("v_hat");
    for (u, v) in g.edges() {
        b.edge(u, v);
    }
    for x in t.iter() {
        b.edge(x, t_copy[x]);
    }
    for x in s.iter() {
        b.edge(x, apex);
    }
    expect_count("vertices", b.roles.len(), n + t.len() + 1)?;
    expect_count("edges", b.edges.len(), g.edge_count() + t.len() + s.len())?;
    let total = b.roles.len();
    let set = VertexSet::from_vertices(total, s.iter().chain(t.iter().map(|x| t_copy[x])));
    instance(source, b, Some(set), None)
}

/// Requires complete type. Builds `V ∪ V' ∪ T'' ∪ {σ'', v̂}`: every `v`
/// gets a pendant copy `v'`, `v̂` is joined to `S ∪ S'`, `σ''` to
/// `S' ∪ T''`, `T''` is a clique and each `t''` is joined to `t'`.
///
/// The construction is only sound on non-constituencies. For any `s ∈ S`,
/// `V̂ \ {s}` is always a non-district of the target. A dominator of `N(s)`
/// avoiding `N[s]` must contain `σ''` to dominate `s'`, and then nothing is
/// left to dominate `v̂`: `S'` is adjacent to `σ''` and `S \ {s}` lies in
/// `N(s)`. With `S = ∅`, `σ''` is dominated only from `T''`, so
/// `V̂ \ {t''}` is a non-district instead. Hence every instance on a
/// nonempty graph maps to a yes.
pub fn nonconstituency_to_nontrivial_nondistrict(g: &DiGraph, s: &VertexSet) -> Result<ReductionInstance> {
    let source = graph_source(g, s)?;
    if !is_complete_type(g, s) {
        return Err(Error::Domain("instance is not of complete type".into()));
    }
    let n = g.n();
    let t = s.complement();
    let mut b = Builder::default();
    for v in 0..n {
        b.vertex(format!("v{v}"));
    }
    let prime: Vec<usize> = (0..n).map(|v| b.vertex(format!("v{v}'"))).collect();
    let mut dprime = vec![usize::MAX; n];
    for x in t.iter() {
        dprime[x] = b.vertex(format!("v{x}''"));
    }
    let sigma = b.vertex("sigma''");
    let apex = b.vertex("v_hat");
    for (u, v) in g.edges() {
        b.edge(u, v);
    }
    for v in 0..n {
        b.edge(v, prime[v]);
    }
    for x in s.iter() {
        b.edge(apex, x);
        b.edge(apex, prime[x]);
        b.edge(prime[x], sigma);
    }
    let ts = t.to_vec();
    for (i, &x) in ts.iter().enumerate() {
        for &y in &ts[i + 1..] {
            b.edge(dprime[x], dprime[y]);
        }
        b.edge(dprime[x], sigma);
        b.edge(prime[x], dprime[x]);
    }
    let (sn, tn) = (s.len(), t.len());
    expect_count("vertices", b.roles.len(), 2 * n + tn + 2)?;
    expect_count(
        "edges",
        b.edges.len(),
        g.edge_count() + n + 3 * sn + tn * tn.saturating_sub(1) / 2 + 2 * tn,
    )?;
    instance(source, b, None, None)
}

/// One gadget per `t ∉ S`: a copy of `G - (N[t] \ S)` plus a vertex `t̂`
/// joined to the copies of `N(t) ∩ S`. The target set is every copied
/// vertex. Dropping the copies of `N(t) \ S` keeps them out of any
/// dominator, as the district condition requires.
pub fn nondistrict_to_fixingset(g: &DiGraph, s: &VertexSet) -> Result<ReductionInstance> {
    let source = graph_source(g, s)?;
    let n = g.n();
    let t = s.complement();
    let mut b = Builder::default();
    let mut copied = Vec::new();
    let mut expected_vertices = 0;
    let mut expected_edges = 0;
    for x in t.iter() {
        let dropped = g.closed_neighbours(x).difference(s);
        let kept = dropped.complement();
        let mut index = vec![usize::MAX; n];
        for u in kept.iter() {
            index[u] = b.vertex(format!("v{u}_{x}"));
            copied.push(index[u]);
        }
        index[x] = b.vertex(format!("v{x}_hat"));
        for (u, v) in g.edges() {
            if kept.contains(u) && kept.contains(v) {
                b.edge(index[u], index[v]);
            }
        }
        let attached = g.neighbours(x).intersection(s);
        for u in attached.iter() {
            b.edge(index[u], index[x]);
        }
        expected_vertices += kept.len() + 1;
        expected_edges += g.induced(&kept).0.edge_count() + attached.len();
    }
    expect_count("vertices", b.roles.len(), expected_vertices)?;
    expect_count("edges", b.edges.len(), expected_edges)?;
    let total = b.roles.len();
    instance(source, b, Some(VertexSet::from_vertices(total, copied)), None)
}

/// Requires empty type. Builds `V ∪ T' ∪ {v, a, b}` with pendant copies
/// `tt'`, `v` joined to `S` and the path `v a b`; the word updates `v, a, b`,
/// then `T`, `T'` and `S`, each block in ascending order.
pub fn nonconstituency_to_permis(g: &DiGraph, s: &VertexSet) -> Result<ReductionInstance> {
    let source = graph_source(g, s)?;
    if !is_empty_type(g, s) {
        return Err(Error::Domain("instance is not of empty type".into()));
    }
    let n = g.n();
    let t = s.complement();
    let mut b = Builder::default();
    for x in 0..n {
        b.vertex(format!("v{x}"));
    }
    let mut t_copy = vec![usize::MAX; n];
    for x in t.iter() {
        t_copy[x] = b.vertex(format!("v{x}'"));
    }
    let hub = b.vertex("v");
    let va = b.vertex("a");
    let vb = b.vertex("b");
    for (u, v) in g.edges() {
        b.edge(u, v);
    }
    for x in s.iter() {
        b.edge(x, hub);
    }
    b.edge(hub, va);
    b.edge(va, vb);
    for x in t.iter() {
        b.edge(x, t_copy[x]);
    }
    expect_count("vertices", b.roles.len(), n + t.len() + 3)?;
    expect_count("edges", b.edges.len(), g.edge_count() + s.len() + 2 + t.len())?;
    let mut word = vec![hub, va, vb];
    word.extend(t.iter());
    word.extend(t.iter().map(|x| t_copy[x]));
    word.extend(s.iter());
    instance(source, b, None, Some(Word(word)))
}

/// Requires empty type. Builds `V ∪ T' ∪ A` where `A` induces a heptagon
/// whose first vertex is joined to `S`, and `t'` is a pendant copy of `t`.
pub fn nonconstituency_to_permissible(g: &DiGraph, s: &VertexSet) -> Result<ReductionInstance> {
    let source = graph_source(g, s)?;
    if !is_empty_type(g, s) {
        return Err(Error::Domain("instance is not of empty type".into()));
    }
    let n = g.n();
    let t = s.complement();
    let mut b = Builder::default();
    for x in 0..n {
        b.vertex(format!("v{x}"));
    }
    let mut t_copy = vec![usize::MAX; n];
    for x in t.iter() {
        t_copy[x] = b.vertex(format!("v{x}'"));
    }
    let a: Vec<usize> = (0..7).map(|i| b.vertex(format!("a{i}"))).collect();
    for (u, v) in g.edges() {
        b.edge(u, v);
    }
    for x in t.iter() {
        b.edge(x, t_copy[x]);
    }
    for i in 0..7 {
        b.edge(a[i], a[(i + 1) % 7]);
    }
    for x in s.iter() {
        b.edge(x, a[0]);
    }
    expect_count("vertices", b.roles.len(), n + t.len() + 7)?;
    expect_count("edges", b.edges.len(), g.edge_count() + t.len() + 7 + s.len())?;
    instance(source, b, None, None)
}

fn target_set(inst: &ReductionInstance) -> Result<&VertexSet> {
    inst.target
        .set
        .as_ref()
        .ok_or_else(|| Error::Internal("target has no set".into()))
}

/// Set cover exists iff the element vertices form a constituency.
pub fn verify_setcover_gadget(sc: &SetCover) -> Result<Correspondence> {
    let inst = setcover_to_constituency(sc)?;
    Ok(Correspondence {
        source: sc.has_cover(),
        target: is_constituency(&inst.target.graph, target_set(&inst)?)?.answer,
    })
}

/// `S` is a constituency iff the target set is a district.
pub fn verify_district_gadget(g: &DiGraph, s: &VertexSet) -> Result<Correspondence> {
    let inst = constituency_to_district(g, s)?;
    Ok(Correspondence {
        source: is_constituency(g, s)?.answer,
        target: is_district(&inst.target.graph, target_set(&inst)?)?.answer,
    })
}

/// `S` is a non-constituency iff the target has a non-trivial non-district.
pub fn verify_nontrivial_nondistrict_gadget(g: &DiGraph, s: &VertexSet) -> Result<Correspondence> {
    let inst = nonconstituency_to_nontrivial_nondistrict(g, s)?;
    Ok(Correspondence {
        source: !is_constituency(g, s)?.answer,
        target: has_nontrivial_nondistrict(&inst.target.graph)?.answer,
    })
}

/// `S` is a non-district iff the target set is a fixing set.
pub fn verify_fixingset_gadget(g: &DiGraph, s: &VertexSet) -> Result<Correspondence> {
    let inst = nondistrict_to_fixingset(g, s)?;
    Ok(Correspondence {
        source: !is_district(g, s)?.answer,
        target: is_fixing_set(&inst.target.graph, target_set(&inst)?)?.answer,
    })
}

/// `S` is a non-constituency iff the target word is a permis.
pub fn verify_permis_gadget(g: &DiGraph, s: &VertexSet) -> Result<Correspondence> {
    let inst = nonconstituency_to_permis(g, s)?;
    let w = inst
        .target
        .word
        .as_ref()
        .ok_or_else(|| Error::Internal("target has no word".into()))?;
    Ok(Correspondence {
        source: !is_constituency(g, s)?.answer,
        target: is_permis(&inst.target.graph, w)?.is_permis,
    })
}

/// `S` is a non-constituency iff the target is permissible.
pub fn verify_permissible_gadget(g: &DiGraph, s: &VertexSet) -> Result<Correspondence> {
    let inst = nonconstituency_to_permissible(g, s)?;
    let target = match find_permis(&inst.target.graph)? {
        PermisOutcome::Found { .. } => true,
        PermisOutcome::NotPermissible { .. } => false,
        PermisOutcome::Unknown { reason } => return Err(Error::Internal(format!("permissibility unknown: {reason}"))),
    };
    Ok(Correspondence {
        source: !is_constituency(g, s)?.answer,
        target,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{family, Family};

    fn set(n: usize, v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, v.iter().copied())
    }

    #[test]
    fn figure_set_cover_is_a_no_instance() {
        let sc = SetCover::new(4, vec![vec![], vec![0], vec![1, 2], vec![3]], 2).unwrap();
        let c = verify_setcover_gadget(&sc).unwrap();
        assert_eq!(c, Correspondence { source: false, target: false });
        let one = SetCover::new(1, vec![vec![0]], 1).unwrap();
        assert_eq!(verify_setcover_gadget(&one).unwrap(), Correspondence { source: true, target: true });
    }

    #[test]
    fn p3_instances() {
        let p3 = family(Family::Path, 3).unwrap();
        let ab = set(3, &[0, 1]);
        let ac = set(3, &[0, 2]);
        assert_eq!(verify_district_gadget(&p3, &ab).unwrap(), Correspondence { source: false, target: false });
        assert_eq!(verify_district_gadget(&p3, &ac).unwrap(), Correspondence { source: true, target: true });
        assert!(verify_district_gadget(&p3, &set(3, &[])).unwrap().target);
        // {a, b} of P3 leaves c isolated outside the set
        assert!(nonconstituency_to_nontrivial_nondistrict(&p3, &ab).is_err());
        let p4 = family(Family::Path, 4).unwrap();
        let c = verify_nontrivial_nondistrict_gadget(&p4, &set(4, &[0, 1])).unwrap();
        assert_eq!(c, Correspondence { source: true, target: true });
    }

    #[test]
    fn constituencies_still_get_a_nondistrict() {
        // Both are complete-type constituencies; the target nevertheless has
        // the non-district V̂ \ {s} for s = 0.
        for (g, s) in [
            (family(Family::Path, 3).unwrap(), set(3, &[0])),
            (family(Family::Complete, 4).unwrap(), set(4, &[0, 1])),
        ] {
            assert!(is_constituency(&g, &s).unwrap().answer);
            let h = nonconstituency_to_nontrivial_nondistrict(&g, &s).unwrap().target.graph;
            let mut w = h.vertices();
            w.remove(0);
            assert!(!is_district(&h, &w).unwrap().answer);
            assert!(!verify_nontrivial_nondistrict_gadget(&g, &s).unwrap().holds());
        }
    }

    #[test]
    fn c4_fixing_set_gadget() {
        let c4 = family(Family::Cycle, 4).unwrap();
        assert!(verify_fixingset_gadget(&c4, &set(4, &[1, 2, 3])).unwrap().holds());
        let all = VertexSet::full(4);
        let inst = nondistrict_to_fixingset(&c4, &all).unwrap();
        assert_eq!(inst.target.graph.n(), 0);
        assert!(verify_fixingset_gadget(&c4, &all).unwrap().holds());
    }

    #[test]
    fn type_preconditions() {
        let p3 = family(Family::Path, 3).unwrap();
        assert!(nonconstituency_to_permis(&p3, &set(3, &[0, 1])).is_err());
        assert!(nonconstituency_to_nontrivial_nondistrict(&p3, &set(3, &[0, 2])).is_err());
        assert!(nonconstituency_to_permis(&p3, &set(3, &[0, 2])).is_err());
        let p4 = family(Family::Path, 4).unwrap();
        let inst = nonconstituency_to_permis(&p4, &set(4, &[0, 3])).unwrap();
        assert_eq!(inst.roles.len(), inst.target.graph.n());
        assert_eq!(inst.target.word.unwrap(), Word(vec![6, 7, 8, 1, 2, 4, 5, 0, 3]));
    }
}

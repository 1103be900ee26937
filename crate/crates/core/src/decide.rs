//! Exact decision procedures for constituencies, districts, fixing words
//! and fixing sets, each returning a checkable certificate.

use serde::Serialize;

use crate::batch::first_unfixed;
use crate::error::Result;
use crate::graph::DiGraph;
use crate::mis::find_mis_avoiding;
use crate::network::{apply_word, is_fixed_point, Config, NetworkKind, Word};
use crate::set::VertexSet;
use crate::structure::{benjamins, twin_class};

/// Evidence attached to an answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// An independent set whose neighbourhood contains the queried set.
    IndependentDominator { set: VertexSet },
    /// A vertex `v` outside the set and an independent set disjoint from `N[v]`
    /// dominating the set's intersection with `N(v)`.
    DistrictWitness { vertex: usize, dominator: VertexSet },
    /// A configuration that is a fixed point not reachable as required.
    WitnessFixedPoint { config: Config },
    /// A start configuration whose endpoint violates the property.
    WitnessConfig { config: Config },
    WitnessVertex { vertex: usize },
    /// An edge with no endpoint in the queried set.
    VertexCoverGap { u: usize, v: usize },
    /// For every vertex `v`, an independent set of `G - v` dominating `N(v)`.
    DominatorFamily { dominators: Vec<VertexSet> },
    /// The answer rests on exhaustive search.
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub answer: bool,
    pub certificate: Certificate,
}

impl Decision {
    fn yes(certificate: Certificate) -> Self {
        Decision {
            answer: true,
            certificate,
        }
    }

    fn no(certificate: Certificate) -> Self {
        Decision {
            answer: false,
            certificate,
        }
    }

    fn negate(self) -> Self {
        Decision {
            answer: !self.answer,
            certificate: self.certificate,
        }
    }
}

/// Some independent set `I` has `S ⊆ N(I)`; equivalently some maximal
/// independent set avoids `S`.
pub fn is_constituency(g: &DiGraph, s: &VertexSet) -> Result<Decision> {
    g.require_undirected()?;
    g.check_set(s)?;
    Ok(match find_mis_avoiding(g, s) {
        Some(m) => Decision::yes(Certificate::IndependentDominator { set: m }),
        None => Decision::no(Certificate::None),
    })
}

/// An independent set avoiding `N[v]` that dominates `T ∩ N(v)`, in the
/// indices of `g`. Vertices of `N(v) \ T` are never updated by a word over
/// `T`, so they must stay 0 and cannot be used; this is a constituency query
/// on `G - (N[v] \ T)`.
fn district_dominator(g: &DiGraph, t: &VertexSet, v: usize) -> Option<VertexSet> {
    let target = t.intersection(g.neighbours(v));
    let removed = g.closed_neighbours(v).difference(&target);
    let (h, map) = g.induced(&removed.complement());
    let local = VertexSet::from_vertices(h.n(), (0..h.n()).filter(|&i| target.contains(map[i])));
    find_mis_avoiding(&h, &local).map(|m| VertexSet::from_vertices(g.n(), m.iter().map(|i| map[i])))
}

/// Some `v ∉ T` has `T ∩ N(v)` dominated by an independent set disjoint
/// from `N[v]`.
pub fn is_district(g: &DiGraph, t: &VertexSet) -> Result<Decision> {
    g.require_undirected()?;
    g.check_set(t)?;
    for v in t.complement().iter() {
        if let Some(dominator) = district_dominator(g, t, v) {
            return Ok(Decision::yes(Certificate::DistrictWitness { vertex: v, dominator }));
        }
    }
    Ok(Decision::no(Certificate::None))
}

/// Whether some `V \ {v}` is a non-district. A yes carries the vertex; a no
/// carries the dominator of every `N(v)` in `G - v`.
pub fn has_nontrivial_nondistrict(g: &DiGraph) -> Result<Decision> {
    g.require_undirected()?;
    let n = g.n();
    let mut dominators = Vec::with_capacity(n);
    for v in 0..n {
        let mut w = VertexSet::full(n);
        w.remove(v);
        match district_dominator(g, &w, v) {
            Some(d) => dominators.push(d),
            None => return Ok(Decision::yes(Certificate::WitnessVertex { vertex: v })),
        }
    }
    Ok(Decision::no(Certificate::DominatorFamily { dominators }))
}

/// `w` prefixes MIS(G): every endpoint is independent. Holds iff `[w]` is a
/// vertex cover.
pub fn prefixes_mis(g: &DiGraph, w: &Word) -> Result<Decision> {
    g.require_undirected()?;
    w.check(g.n())?;
    Ok(match g.uncovered_edge(&w.visited(g.n())) {
        None => Decision::yes(Certificate::None),
        Some((u, v)) => Decision::no(Certificate::VertexCoverGap { u, v }),
    })
}

/// `w` suffixes MIS(G): every independent start ends maximal. Holds iff `[w]`
/// is a non-district; a no carries the district witness.
pub fn suffixes_mis(g: &DiGraph, w: &Word) -> Result<Decision> {
    g.require_undirected()?;
    w.check(g.n())?;
    Ok(is_district(g, &w.visited(g.n()))?.negate())
}

/// Exhaustive: every start configuration ends at a maximal independent set.
pub fn fixes_mis(g: &DiGraph, w: &Word) -> Result<Decision> {
    g.require_undirected()?;
    Ok(match first_unfixed(g, NetworkKind::Mis, w)? {
        None => Decision::yes(Certificate::None),
        Some(x) => Decision::no(Certificate::WitnessConfig { config: x }),
    })
}

/// `S` is a vertex cover and a non-district.
pub fn is_fixing_set(g: &DiGraph, s: &VertexSet) -> Result<Decision> {
    g.require_undirected()?;
    g.check_set(s)?;
    if let Some((u, v)) = g.uncovered_edge(s) {
        return Ok(Decision::no(Certificate::VertexCoverGap { u, v }));
    }
    Ok(is_district(g, s)?.negate())
}

/// Some fixing set other than `V`; same as a non-trivial non-district.
pub fn has_nontrivial_fixing_set(g: &DiGraph) -> Result<Decision> {
    has_nontrivial_nondistrict(g)
}

/// A word fixes the independent network iff `[w]` is a directed vertex cover.
pub fn ind_fixing_word(g: &DiGraph, w: &Word) -> Result<bool> {
    w.check(g.n())?;
    Ok(g.is_directed_vertex_cover(&w.visited(g.n())))
}

/// A word fixes the dominating network iff it meets the closed-twin class of
/// every benjamin.
pub fn dom_fixing_word(g: &DiGraph, w: &Word) -> Result<bool> {
    w.check(g.n())?;
    let visited = w.visited(g.n());
    Ok(benjamins(g)
        .iter()
        .all(|m| !twin_class(g, m).is_disjoint(&visited)))
}

/// Result of reducing a constituency instance to one of the canonical types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub graph: DiGraph,
    pub set: VertexSet,
    /// `kept[i]` is the original index of vertex `i`.
    pub kept: Vec<usize>,
}

fn normalize(g: &DiGraph, s: &VertexSet, complete: bool) -> Result<Normalized> {
    g.require_undirected()?;
    g.check_set(s)?;
    let mut keep = g.vertices();
    let mut set = s.clone();
    // Drop isolated vertices of G - S one at a time; S loses their neighbours.
    loop {
        let outside = keep.difference(&set);
        let isolated = outside
            .iter()
            .find(|&t| g.neighbours(t).intersection(&outside).is_empty());
        match isolated {
            Some(t) => {
                keep.remove(t);
                set.difference_with(g.neighbours(t));
            }
            None => break,
        }
    }
    let kept = keep.to_vec();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let index = |v: usize| kept.binary_search(&v).expect("kept vertex");
    for (u, v) in g.edges() {
        if keep.contains(u) && keep.contains(v) && !(set.contains(u) && set.contains(v)) {
            edges.push((index(u), index(v)));
        }
    }
    if complete {
        let members: Vec<usize> = set.iter().map(index).collect();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                edges.push((a, b));
            }
        }
    }
    let graph = DiGraph::from_edges(kept.len(), edges)?;
    let set = VertexSet::from_vertices(kept.len(), set.iter().map(index));
    Ok(Normalized { graph, set, kept })
}

/// Equivalent instance with `G[S]` complete and no isolated vertex in `G - S`.
pub fn complete_type(g: &DiGraph, s: &VertexSet) -> Result<Normalized> {
    normalize(g, s, true)
}

/// Equivalent instance with `G[S]` edgeless and no isolated vertex in `G - S`.
pub fn empty_type(g: &DiGraph, s: &VertexSet) -> Result<Normalized> {
    normalize(g, s, false)
}

fn no_isolated_outside(g: &DiGraph, s: &VertexSet) -> bool {
    let outside = s.complement();
    let ok = outside.iter().all(|t| !g.neighbours(t).is_disjoint(&outside));
    ok
}

pub fn is_complete_type(g: &DiGraph, s: &VertexSet) -> bool {
    s.iter()
        .all(|a| s.iter().all(|b| a == b || g.has_edge(a, b)))
        && no_isolated_outside(g, s)
}

pub fn is_empty_type(g: &DiGraph, s: &VertexSet) -> bool {
    g.is_independent(s) && no_isolated_outside(g, s)
}

/// `I` is independent and `S ⊆ N(I)`.
pub fn verify_independent_dominator(g: &DiGraph, s: &VertexSet, i: &VertexSet) -> bool {
    g.is_independent(i) && s.is_subset(&g.in_neighbours_of_set(i))
}

/// The district witness is valid for `t`.
pub fn verify_district_witness(g: &DiGraph, t: &VertexSet, v: usize, dominator: &VertexSet) -> bool {
    if v >= g.n() || t.contains(v) || !dominator.is_disjoint(&g.closed_neighbours(v)) {
        return false;
    }
    let target = t.intersection(g.neighbours(v));
    g.is_independent(dominator) && target.is_subset(&g.in_neighbours_of_set(dominator))
}

/// `x` is a start configuration whose endpoint under `w` is not fixed.
pub fn verify_witness_config(g: &DiGraph, kind: NetworkKind, w: &Word, x: &Config) -> bool {
    apply_word(g, kind, x, w).is_ok_and(|y| !is_fixed_point(g, kind, &y))
}

/// Checks a certificate returned for a constituency query.
pub fn verify_constituency(g: &DiGraph, s: &VertexSet, d: &Decision) -> bool {
    match (&d.answer, &d.certificate) {
        (true, Certificate::IndependentDominator { set }) => verify_independent_dominator(g, s, set),
        (false, Certificate::None) => true,
        _ => false,
    }
}

/// Checks a certificate returned for a district query.
pub fn verify_district(g: &DiGraph, t: &VertexSet, d: &Decision) -> bool {
    match (&d.answer, &d.certificate) {
        (true, Certificate::DistrictWitness { vertex, dominator }) => {
            verify_district_witness(g, t, *vertex, dominator)
        }
        (false, Certificate::None) => true,
        _ => false,
    }
}

/// Checks a certificate returned by [`has_nontrivial_nondistrict`]. A yes is
/// re-checked by deciding the named set; a no is checked directly.
pub fn verify_nontrivial_nondistrict(g: &DiGraph, d: &Decision) -> bool {
    let n = g.n();
    match (&d.answer, &d.certificate) {
        (true, Certificate::WitnessVertex { vertex }) => {
            let mut w = VertexSet::full(n);
            w.remove(*vertex);
            *vertex < n && is_district(g, &w).is_ok_and(|x| !x.answer)
        }
        (false, Certificate::DominatorFamily { dominators }) => {
            dominators.len() == n
                && (0..n).all(|v| {
                    let mut w = VertexSet::full(n);
                    w.remove(v);
                    verify_district_witness(g, &w, v, &dominators[v])
                })
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{family, Family};

    fn p3() -> DiGraph {
        family(Family::Path, 3).unwrap()
    }

    fn set(n: usize, v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, v.iter().copied())
    }

    #[test]
    fn constituency_examples() {
        let g = p3();
        let d = is_constituency(&g, &set(3, &[0, 2])).unwrap();
        assert!(d.answer);
        assert_eq!(d.certificate, Certificate::IndependentDominator { set: set(3, &[1]) });
        assert!(!is_constituency(&g, &set(3, &[0, 1])).unwrap().answer);
        assert!(is_constituency(&g, &set(3, &[])).unwrap().answer);
    }

    #[test]
    fn district_examples() {
        let c4 = family(Family::Cycle, 4).unwrap();
        let d = is_district(&c4, &set(4, &[1, 2, 3])).unwrap();
        assert!(d.answer);
        assert!(verify_district(&c4, &set(4, &[1, 2, 3]), &d));
        let c3 = family(Family::Cycle, 3).unwrap();
        assert!(!is_district(&c3, &set(3, &[1, 2])).unwrap().answer);
        assert!(is_district(&c3, &set(3, &[])).unwrap().answer);
    }

    #[test]
    fn nontrivial_nondistrict_examples() {
        let c4 = family(Family::Cycle, 4).unwrap();
        let d = has_nontrivial_nondistrict(&c4).unwrap();
        assert!(!d.answer);
        assert!(verify_nontrivial_nondistrict(&c4, &d));
        let c3 = family(Family::Cycle, 3).unwrap();
        assert!(has_nontrivial_nondistrict(&c3).unwrap().answer);
        let d = has_nontrivial_nondistrict(&p3()).unwrap();
        assert_eq!(d.certificate, Certificate::WitnessVertex { vertex: 1 });
        assert!(!has_nontrivial_fixing_set(&DiGraph::empty(1)).unwrap().answer);
    }

    #[test]
    fn word_examples() {
        let g = p3();
        assert!(prefixes_mis(&g, &Word(vec![1])).unwrap().answer);
        assert!(!prefixes_mis(&g, &Word(vec![0])).unwrap().answer);
        assert!(suffixes_mis(&g, &Word(vec![0, 2, 1])).unwrap().answer);
        assert!(!suffixes_mis(&DiGraph::empty(1), &Word::default()).unwrap().answer);
        let d = fixes_mis(&g, &Word(vec![0, 1, 2])).unwrap();
        assert_eq!(d.certificate, Certificate::WitnessConfig { config: "011".parse().unwrap() });
        assert!(fixes_mis(&g, &Word(vec![0, 2, 1])).unwrap().answer);
        assert!(fixes_mis(&g, &Word(vec![0, 1, 2, 0, 1, 2])).unwrap().answer);
    }

    #[test]
    fn fixing_set_examples() {
        let k3 = family(Family::Complete, 3).unwrap();
        assert!(is_fixing_set(&k3, &set(3, &[0, 1])).unwrap().answer);
        let c4 = family(Family::Cycle, 4).unwrap();
        for skip in 0..4 {
            let s = set(4, &(0..4).filter(|&v| v != skip).collect::<Vec<_>>());
            assert!(!is_fixing_set(&c4, &s).unwrap().answer);
        }
        assert!(is_fixing_set(&c4, &VertexSet::full(4)).unwrap().answer);
    }

    #[test]
    fn digraph_word_tests() {
        let k2 = family(Family::Complete, 2).unwrap();
        assert!(ind_fixing_word(&k2, &Word(vec![0])).unwrap());
        let arc = DiGraph::from_arcs(2, [(0, 1)]).unwrap();
        assert!(!ind_fixing_word(&arc, &Word(vec![0])).unwrap());
        let k4 = family(Family::Complete, 4).unwrap();
        assert!(dom_fixing_word(&k4, &Word(vec![2])).unwrap());
        assert!(!dom_fixing_word(&p3(), &Word(vec![1])).unwrap());
    }

    #[test]
    fn normalizers() {
        // P3 with S = {b}: a is isolated in G - S; dropping it empties S.
        let n = complete_type(&p3(), &set(3, &[1])).unwrap();
        assert_eq!(n.kept, vec![1, 2]);
        assert!(n.set.is_empty());
        let g = family(Family::Cycle, 5).unwrap();
        let n = complete_type(&g, &set(5, &[0, 2])).unwrap();
        assert!(is_complete_type(&n.graph, &n.set));
        let e = empty_type(&g, &set(5, &[0, 2])).unwrap();
        assert!(is_empty_type(&e.graph, &e.set));
    }
}

use misnet::batch::{batch_apply, first_unfixed};
use misnet::build::compose;
use misnet::comparability::is_near_comparability;
use misnet::decide::{dom_fixing_word, fixes_mis, ind_fixing_word, is_district, is_fixing_set, prefixes_mis, suffixes_mis};
use misnet::enumerate::{canonical_form, relabel};
use misnet::graph6::{format_any, parse_graph6};
use misnet::kernelfix::{kernel_fixable, profile_search};
use misnet::network::{apply_word, fixed_points};
use misnet::permis::{composition_permis, find_permis, is_permis};
use misnet::reach::{bfs_reachability_oracle, dom_reachable, ind_reachable, is_geodesic, mis_reachable};
use misnet::{Config, DiGraph, NetworkKind, VertexSet, Word};
use proptest::prelude::*;

/// Undirected graph on `n` vertices from a bit per unordered pair.
fn graph_from_bits(n: usize, bits: u64) -> DiGraph {
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    let edges = pairs.enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, e)| e);
    DiGraph::from_edges(n, edges).unwrap()
}

/// Digraph on `n` vertices from a bit per ordered pair.
fn digraph_from_bits(n: usize, bits: u64) -> DiGraph {
    let pairs = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)));
    let arcs = pairs.enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, a)| a);
    DiGraph::from_arcs(n, arcs).unwrap()
}

fn graph(max_n: usize) -> impl Strategy<Value = DiGraph> {
    (1..=max_n, any::<u64>()).prop_map(|(n, bits)| graph_from_bits(n, bits))
}

fn digraph(max_n: usize) -> impl Strategy<Value = DiGraph> {
    (1..=max_n, any::<u64>()).prop_map(|(n, bits)| digraph_from_bits(n, bits))
}

fn permutation(n: usize) -> impl Strategy<Value = Word> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle().prop_map(Word)
}

fn graph_and_permutation(max_n: usize) -> impl Strategy<Value = (DiGraph, Word)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), permutation(n))
    })
}

fn graph_and_word(max_n: usize) -> impl Strategy<Value = (DiGraph, Word)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), prop::collection::vec(0..n, 0..2 * n + 1).prop_map(Word))
    })
}

fn in_mask(g: &DiGraph, v: usize) -> u64 {
    g.in_list(v).iter().fold(0, |m, &u| m | 1 << u)
}

/// Mask-level simulation of one network, written independently of the crate.
fn simulate(g: &DiGraph, kind: NetworkKind, mut x: u64, w: &[usize]) -> u64 {
    for &v in w {
        let nor = x & in_mask(g, v) == 0;
        let own = x >> v & 1 == 1;
        let next = match kind {
            NetworkKind::Mis | NetworkKind::Kernel => nor,
            NetworkKind::Independent => own && nor,
            NetworkKind::Dominating => own || nor,
        };
        x = (x & !(1 << v)) | (u64::from(next) << v);
    }
    x
}

fn is_fixed(g: &DiGraph, kind: NetworkKind, x: u64) -> bool {
    (0..g.n()).all(|v| simulate(g, kind, x, &[v]) == x)
}

fn independent(g: &DiGraph, x: u64) -> bool {
    (0..g.n()).all(|v| x >> v & 1 == 0 || x & in_mask(g, v) == 0)
}

fn maximal_independent(g: &DiGraph, x: u64) -> bool {
    independent(g, x) && (0..g.n()).all(|v| x >> v & 1 == 1 || x & in_mask(g, v) != 0)
}

fn word_fixes(g: &DiGraph, kind: NetworkKind, w: &[usize]) -> bool {
    (0..1u64 << g.n()).all(|x| is_fixed(g, kind, simulate(g, kind, x, w)))
}

fn visited(n: usize, w: &Word) -> VertexSet {
    VertexSet::from_vertices(n, w.0.iter().copied())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mis_fixed_points_are_the_maximal_independent_sets(g in graph(7)) {
        let mut got: Vec<u64> = fixed_points(&g, NetworkKind::Mis).unwrap().iter().map(Config::mask).collect();
        got.sort_unstable();
        let want: Vec<u64> = (0..1u64 << g.n()).filter(|&x| maximal_independent(&g, x)).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn doubled_permutation_fixes_mis((g, w) in graph_and_permutation(7)) {
        let ww = w.doubled();
        prop_assert!(first_unfixed(&g, NetworkKind::Mis, &ww).unwrap().is_none());
        prop_assert!(word_fixes(&g, NetworkKind::Mis, &ww.0));
    }

    #[test]
    fn batch_and_scalar_application_agree(g in digraph(5), seed in prop::collection::vec(0usize..64, 0..12)) {
        let n = g.n();
        let w = Word(seed.into_iter().map(|v| v % n).collect());
        for kind in [NetworkKind::Kernel, NetworkKind::Independent, NetworkKind::Dominating] {
            let map = batch_apply(&g, kind, &w).unwrap();
            for (x, y) in map.iter() {
                prop_assert_eq!(y, simulate(&g, kind, x, &w.0));
                let scalar = apply_word(&g, kind, &Config::from_mask(n, x), &w).unwrap();
                prop_assert_eq!(scalar.mask(), y);
            }
        }
    }

    #[test]
    fn graph6_round_trips(g in graph(11), d in digraph(7)) {
        for h in [g, d] {
            let text = format_any(&h);
            prop_assert_eq!(parse_graph6(&text).unwrap(), h);
        }
    }

    #[test]
    fn canonical_form_ignores_labels((g, order) in graph_and_permutation(7)) {
        let h = relabel(&g, &order.0);
        prop_assert_eq!(canonical_form(&g).unwrap().0, canonical_form(&h).unwrap().0);
    }

    #[test]
    fn characterizations_match_simulation((g, w) in graph_and_word(5)) {
        let n = g.n();
        let images: Vec<u64> = (0..1u64 << n).map(|x| simulate(&g, NetworkKind::Mis, x, &w.0)).collect();
        let prefix = images.iter().all(|&y| independent(&g, y));
        let suffix = (0..1u64 << n)
            .filter(|&x| independent(&g, x))
            .all(|x| maximal_independent(&g, images[x as usize]));
        let fixes = images.iter().all(|&y| maximal_independent(&g, y));
        prop_assert_eq!(prefixes_mis(&g, &w).unwrap().answer, prefix);
        prop_assert_eq!(suffixes_mis(&g, &w).unwrap().answer, suffix);
        prop_assert_eq!(fixes_mis(&g, &w).unwrap().answer, fixes);
        // a fixing set is exactly the vertex set of some fixing word; ww over
        // the set stands in for every such word
        let s = visited(n, &w);
        let order: Vec<usize> = s.iter().collect();
        let ww = Word(order.iter().chain(&order).copied().collect());
        prop_assert_eq!(is_fixing_set(&g, &s).unwrap().answer, word_fixes(&g, NetworkKind::Mis, &ww.0));
        prop_assert_eq!(
            is_fixing_set(&g, &s).unwrap().answer,
            g.is_vertex_cover(&s) && !is_district(&g, &s).unwrap().answer
        );
    }

    #[test]
    fn mis_reachability_matches_search(g in graph(5), x in any::<u64>(), y in any::<u64>()) {
        let n = g.n();
        let full = (1u64 << n) - 1;
        let (x, y) = (Config::from_mask(n, x & full), Config::from_mask(n, y & full));
        let reach = bfs_reachability_oracle(&g, NetworkKind::Mis, &x).unwrap();
        let v = mis_reachable(&g, &x, &y).unwrap();
        prop_assert_eq!(v.reachable, reach.contains(&y));
        if let Some(w) = v.geodesic {
            prop_assert!(is_geodesic(&g, NetworkKind::Mis, &x, &y, &w));
            prop_assert_eq!(simulate(&g, NetworkKind::Mis, x.mask(), &w.0), y.mask());
        }
    }

    #[test]
    fn independent_and_dominating_reachability_match_search(g in digraph(4), x in any::<u64>(), y in any::<u64>()) {
        let n = g.n();
        let full = (1u64 << n) - 1;
        let (x, y) = (Config::from_mask(n, x & full), Config::from_mask(n, y & full));
        for (kind, v) in [
            (NetworkKind::Independent, ind_reachable(&g, &x, &y).unwrap()),
            (NetworkKind::Dominating, dom_reachable(&g, &x, &y).unwrap()),
        ] {
            let reach = bfs_reachability_oracle(&g, kind, &x).unwrap();
            prop_assert_eq!(v.reachable, reach.contains(&y), "{:?}", kind);
            if let Some(w) = v.geodesic {
                prop_assert!(is_geodesic(&g, kind, &x, &y, &w));
                prop_assert_eq!(simulate(&g, kind, x.mask(), &w.0), y.mask());
            }
        }
    }

    #[test]
    fn near_comparability_yields_a_permis(g in graph(7)) {
        if let Some((_, w)) = is_near_comparability(&g).unwrap() {
            prop_assert!(is_permis(&g, &w).unwrap().is_permis);
            prop_assert!(word_fixes(&g, NetworkKind::Mis, &w.0));
        }
    }

    #[test]
    fn found_permis_fixes_mis(g in graph(7)) {
        if let Some(w) = find_permis(&g).unwrap().permis() {
            prop_assert!(w.is_permutation(g.n()));
            prop_assert!(word_fixes(&g, NetworkKind::Mis, &w.0));
        }
    }

    #[test]
    fn kernel_fixability_matches_profile_search(g in digraph(4)) {
        let fast = kernel_fixable(&g).unwrap();
        let slow = profile_search(&g).unwrap();
        prop_assert_eq!(fast.answer(), slow.answer());
        prop_assert!(fast.answer().is_some());
        if let Some(w) = fast.word() {
            prop_assert!(word_fixes(&g, NetworkKind::Kernel, &w.0));
        }
    }

    #[test]
    fn ind_and_dom_fixing_match_simulation(g in digraph(4), seed in prop::collection::vec(0usize..64, 0..8)) {
        let n = g.n();
        let w = Word(seed.into_iter().map(|v| v % n).collect());
        prop_assert_eq!(ind_fixing_word(&g, &w).unwrap(), word_fixes(&g, NetworkKind::Independent, &w.0));
        prop_assert_eq!(dom_fixing_word(&g, &w).unwrap(), word_fixes(&g, NetworkKind::Dominating, &w.0));
        prop_assert_eq!(
            ind_fixing_word(&g, &w).unwrap(),
            first_unfixed(&g, NetworkKind::Independent, &w).unwrap().is_none()
        );
    }

    #[test]
    fn composition_of_permises_is_a_permis(host in graph(3), parts_bits in prop::collection::vec((1usize..=3, any::<u64>()), 3)) {
        let parts: Vec<DiGraph> = parts_bits[..host.n()].iter().map(|&(n, b)| graph_from_bits(n, b)).collect();
        let (Some(hw), Some(pws)) = (
            find_permis(&host).unwrap().permis().cloned(),
            parts.iter().map(|p| find_permis(p).unwrap().permis().cloned()).collect::<Option<Vec<_>>>(),
        ) else {
            return Ok(());
        };
        let w = composition_permis(&host, &parts, &hw, &pws).unwrap();
        let g = compose(&host, &parts).unwrap();
        prop_assert!(word_fixes(&g, NetworkKind::Mis, &w.0));
    }
}

//! Property tests over random connected graphs and random trees.

use proptest::prelude::*;

use crate::construct::{canonical_graph6, tree_from_prufer};
use crate::graph::Graph;
use crate::resolve::{EquidistanceTable, VertexSet};
use crate::solve::{SearchMode, Searcher};
use crate::{
    classify_vertices, decompose_tree, find_twins, is_resolving_set, is_wtr_set,
    is_wtr_set_via_lemma1,
};

/// A random connected graph: a Prüfer spanning tree plus extra edges picked
/// from a bitmask over the remaining pairs.
fn connected(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n)
        .prop_flat_map(|n| {
            let seq = prop::collection::vec(0..n, n.saturating_sub(2));
            (Just(n), seq, any::<u64>(), 0u32..4)
        })
        .prop_map(|(n, seq, bits, density)| {
            let tree = tree_from_prufer(&seq).unwrap();
            let mut edges: Vec<(usize, usize)> = tree.edges().collect();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if tree.has_edge(u, v) {
                        continue;
                    }
                    // density 0 keeps the tree, higher values add more chords
                    let take =
                        density > 0 && (bits >> (k % 64)) & 1 == 1 && (k % 4) < density as usize;
                    if take {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::new(n, &edges).unwrap()
        })
}

fn random_tree(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n)
        .prop_flat_map(|n| prop::collection::vec(0..n, n.saturating_sub(2)))
        .prop_map(|seq| tree_from_prufer(&seq).unwrap())
}

fn subset_of(g: &Graph, mask: u64) -> VertexSet {
    VertexSet::from_mask(g.order(), mask & ((1u64 << g.order()) - 1))
}

fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<_> = g.edges().map(|(u, v)| (perm[u], perm[v])).collect();
    Graph::new(g.order(), &edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn lemma1_matches_definition(g in connected(9), mask in any::<u64>()) {
        let w = subset_of(&g, mask);
        prop_assert_eq!(is_wtr_set(&g, &w), is_wtr_set_via_lemma1(&g, &w));
    }

    #[test]
    fn wtr_sets_resolve(g in connected(9), mask in any::<u64>()) {
        let w = subset_of(&g, mask);
        if is_wtr_set(&g, &w) {
            prop_assert!(is_resolving_set(&g, &w));
        }
    }

    #[test]
    fn wtr_closed_under_supersets(g in connected(9), mask in any::<u64>(), extra in any::<u64>()) {
        let w = subset_of(&g, mask);
        if is_wtr_set(&g, &w) {
            prop_assert!(is_wtr_set(&g, &subset_of(&g, mask | extra)));
        }
    }

    #[test]
    fn twins_are_symmetric_and_equidistant(g in connected(9)) {
        let n = g.order();
        for u in 0..n {
            for v in 0..n {
                if u == v || !g.are_twins(u, v) {
                    continue;
                }
                prop_assert!(g.are_twins(v, u));
                for x in (0..n).filter(|&x| x != u && x != v) {
                    prop_assert_eq!(g.distance(u, x), g.distance(v, x));
                }
            }
        }
    }

    #[test]
    fn wtr_sets_contain_every_twin(g in connected(9), mask in any::<u64>()) {
        let w = subset_of(&g, mask);
        if is_wtr_set(&g, &w) {
            for &t in &find_twins(&g).vertices {
                prop_assert!(w.contains(t));
            }
        }
    }

    #[test]
    fn wtr_member_neighbors_are_not_at_equal_distance(g in connected(8), mask in any::<u64>()) {
        // a WTR-set member v and an outside neighbor u must be told apart by
        // another member, so W - {v} cannot sit inside S(u, v)
        let w = subset_of(&g, mask);
        if !is_wtr_set(&g, &w) {
            return Ok(());
        }
        for &v in w.members() {
            for &u in g.neighbors(v).iter().filter(|&&u| !w.contains(u)) {
                let separated = w
                    .members()
                    .iter()
                    .any(|&x| x != v && g.distance(x, u) != g.distance(x, v));
                prop_assert!(separated);
            }
        }
    }

    #[test]
    fn parameter_chain(g in connected(8)) {
        let s = Searcher::new(&g).unwrap();
        let (dim, _) = s.metric_dimension();
        let (dim_wt, w) = s.weak_total_metric_dimension(SearchMode::TwinPruned);
        let res_wt = s.weak_total_resolving_number();
        prop_assert!(dim <= dim_wt && dim_wt <= res_wt && res_wt <= g.order());
        prop_assert!(is_wtr_set(&g, &w));
        prop_assert_eq!(
            (dim_wt, w.clone()),
            s.weak_total_metric_dimension(SearchMode::Reference)
        );
    }

    #[test]
    fn res_wt_shortcut_matches_definition(g in connected(8)) {
        let s = Searcher::new(&g).unwrap();
        prop_assert_eq!(s.weak_total_resolving_number(), s.res_wt_by_definition());
    }

    #[test]
    fn widest_pair_is_widest(g in connected(9)) {
        let t = EquidistanceTable::new(&g).unwrap();
        let (size, u, v) = t.widest_equidistant_pair();
        prop_assert_eq!(t.equidistant(u, v).count_ones() as usize, size);
        for x in 0..g.order() {
            for y in x + 1..g.order() {
                prop_assert!(t.equidistant(x, y).count_ones() as usize <= size);
            }
        }
    }

    #[test]
    fn canonical_form_ignores_labels(g in connected(8), key in any::<u64>()) {
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by_key(|&i| (key.rotate_left(i as u32 * 7) ^ i as u64, i));
        let h = relabel(&g, &perm);
        prop_assert_eq!(canonical_graph6(&g).unwrap(), canonical_graph6(&h).unwrap());
    }

    #[test]
    fn prufer_gives_trees(g in random_tree(16)) {
        prop_assert!(g.is_tree());
        prop_assert_eq!(g.size() + 1, g.order());
    }

    #[test]
    fn terminal_counts_on_trees(g in random_tree(14)) {
        let c = classify_vertices(&g);
        prop_assert!(c.sigma >= c.ex);
        if let Ok(td) = decompose_tree(&g) {
            prop_assert_eq!(td.sigma, c.sigma);
            prop_assert_eq!(td.ex, c.ex);
            // every leaf of a non-path tree is terminal for some major
            let leaves = (0..g.order()).filter(|&v| g.degree(v) == 1).count();
            prop_assert_eq!(td.sigma, leaves);
            let w = td.construct_wtmb();
            prop_assert_eq!(w.len(), td.weak_total_dimension());
        }
    }
}

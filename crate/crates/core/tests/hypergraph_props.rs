mod common;

use common::{any_hypergraph, linear_hypergraph, subset};
use hpr_core::{Vertex, VertexSet};
use proptest::prelude::*;

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn full_tuple_counts_k_factorial_edges(h in linear_hypergraph(12, 20)) {
        let all = VertexSet::full(h.n());
        let sets = vec![&all; h.k()];
        prop_assert_eq!(h.labelled_edge_count(&sets).unwrap(), factorial(h.k()) * h.edge_count() as u64);
    }

    #[test]
    fn counts_grow_with_each_set(h in any_hypergraph(3, 9), masks in prop::array::uniform3(any::<u64>()), extra in any::<u64>(), at in 0usize..3) {
        let n = h.n();
        let small: Vec<VertexSet> = masks.iter().map(|&m| subset(n, m)).collect();
        let mut big = small.clone();
        big[at].union_with(&subset(n, extra));
        let s: Vec<&VertexSet> = small.iter().collect();
        let b: Vec<&VertexSet> = big.iter().collect();
        prop_assert!(h.labelled_edge_count(&s).unwrap() <= h.labelled_edge_count(&b).unwrap());
    }

    #[test]
    fn degrees_sum_to_k_times_labelled_edges(h in any_hypergraph(3, 10)) {
        let all = VertexSet::full(h.n());
        let total: u64 = (0..h.n() as Vertex).map(|v| h.degree_into_set(v, &all)).sum();
        prop_assert_eq!(total, h.k() as u64 * factorial(h.k() - 1) * h.edge_count() as u64);
        let tuples: u64 = (0..h.n() as Vertex)
            .map(|v| h.degree_into(v, &vec![&all; h.k() - 1]).unwrap())
            .sum();
        prop_assert_eq!(tuples, total);
    }

    #[test]
    fn linear_iff_pair_degrees_at_most_one(h in any_hypergraph(3, 8)) {
        let mut max = 0;
        for u in 0..h.n() as Vertex {
            for v in u + 1..h.n() as Vertex {
                max = max.max(h.pair_degree(u, v));
            }
        }
        prop_assert_eq!(h.is_linear(), max <= 1);
    }

    #[test]
    fn induced_counts_match_intersections(h in any_hypergraph(3, 10), s_mask in any::<u64>(), masks in prop::array::uniform3(any::<u64>())) {
        let n = h.n();
        let s = subset(n, s_mask);
        let ind = h.induced(&s);
        let parent_sets: Vec<VertexSet> = masks.iter().map(|&m| {
            let mut a = subset(n, m);
            a.intersect_with(&s);
            a
        }).collect();
        let child_sets: Vec<VertexSet> = parent_sets.iter().map(|a| {
            let mut c = VertexSet::new(ind.graph.n());
            for (i, &v) in ind.to_parent.iter().enumerate() {
                if a.contains(v) {
                    c.insert(i as Vertex);
                }
            }
            c
        }).collect();
        let p: Vec<&VertexSet> = parent_sets.iter().collect();
        let c: Vec<&VertexSet> = child_sets.iter().collect();
        prop_assert_eq!(h.labelled_edge_count(&p).unwrap(), ind.graph.labelled_edge_count(&c).unwrap());
    }
}

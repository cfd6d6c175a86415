mod common;

use common::{any_hypergraph, subset};
use hpr_core::audit::{audit_pseudo_random, AuditMode, PseudoParams, Verdict};
use hpr_core::embedder::{count_rooted_copies, counting_lower_bound, find_rooted_copy, greedy_builder, SearchOutcome};
use hpr_core::generators::{loose_path, motif, random_kgraph, GenSpec};
use hpr_core::{Hypergraph, RootedMotif, Vertex, VertexSet};
use proptest::prelude::*;

fn corpus() -> Vec<RootedMotif> {
    let edge = motif("single_edge", 3).unwrap();
    let rooted_edge = edge.clone().with_roots(vec![0]).unwrap();
    let path = loose_path(3, 2).unwrap();
    let rooted_path = RootedMotif::new(path.graph, vec![0], None).unwrap();
    vec![edge, rooted_edge, rooted_path]
}

fn min_degree_ok(h: &Hypergraph, c: f64, p: f64) -> bool {
    let all = VertexSet::full(h.n());
    let need = c * p * (h.n() as f64).powi(h.k() as i32 - 1);
    (0..h.n() as Vertex).all(|v| h.degree_into_set(v, &all) as f64 >= need)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn counting_bound_holds(seed in any::<u64>(), root in 0u32..40) {
        let h = random_kgraph(&GenSpec { k: 3, n: 40, p: 0.6, seed }).unwrap();
        let p = h.degree_report().density;
        let c = 0.5;
        prop_assume!(min_degree_ok(&h, c, p));
        let audit = audit_pseudo_random(&h, PseudoParams::new(p, 0.1, 0.5).unwrap(), AuditMode::Sampled, 60, seed).unwrap();
        prop_assume!(audit.verdict == Verdict::Pass);
        for m in corpus() {
            let y: Vec<Vertex> = if m.roots.is_empty() { vec![] } else { vec![root] };
            let mut u = VertexSet::full(40);
            for &v in &y {
                u.remove(v);
            }
            let count = count_rooted_copies(&h, &m, &y, &u, u64::MAX).unwrap();
            let f = m.v() - m.roots.len();
            let bound = counting_lower_bound(c, p, m.e(), u.len(), f);
            prop_assert!(count as f64 >= bound, "{} < {bound}", count);
        }
    }

    #[test]
    fn search_agrees_with_counting(h in any_hypergraph(3, 9), root in 0u32..9, mask in any::<u64>(), which in 0usize..3) {
        let m = &corpus()[which];
        let n = h.n();
        let root = root % n as Vertex;
        let y: Vec<Vertex> = if m.roots.is_empty() { vec![] } else { vec![root] };
        let u = subset(n, mask);
        let count = count_rooted_copies(&h, m, &y, &u, 1_000_000).unwrap();
        match find_rooted_copy(&h, m, &y, &u, 1_000_000).unwrap() {
            SearchOutcome::Found(emb) => {
                prop_assert!(count > 0);
                prop_assert!(emb.check(&h, m, Some(&u)).is_ok(), "{:?}", emb.check(&h, m, Some(&u)));
            }
            SearchOutcome::NotFound => prop_assert_eq!(count, 0),
            SearchOutcome::BudgetExhausted { .. } => prop_assert!(false, "tiny search ran out of budget"),
        }
    }

    #[test]
    fn greedy_builder_accounts_for_every_tuple(seed in any::<u64>(), tuples in prop::collection::vec(0u32..60, 0..12)) {
        let h = random_kgraph(&GenSpec { k: 3, n: 60, p: 0.4, seed }).unwrap();
        let m = &corpus()[2];
        let mut roots: Vec<Vertex> = tuples.clone();
        roots.sort_unstable();
        roots.dedup();
        let ordered: Vec<Vec<Vertex>> = roots.iter().map(|&r| vec![r]).collect();
        let mut x = VertexSet::full(60);
        for &r in &roots {
            x.remove(r);
        }
        let fam = greedy_builder(&h, m, &ordered, &x, 100_000).unwrap();
        let found = fam.copies.iter().flatten().count();
        prop_assert_eq!(found + fam.failed.len(), ordered.len());
        let mut used = Vec::new();
        for (emb, t) in fam.copies.iter().zip(&ordered) {
            if let Some(emb) = emb {
                prop_assert!(emb.check(&h, m, Some(&x)).is_ok());
                prop_assert_eq!(&emb.root_targets, t);
                used.extend(emb.non_root_images(m));
            }
        }
        let distinct: std::collections::BTreeSet<_> = used.iter().collect();
        prop_assert_eq!(distinct.len(), used.len());
        prop_assert_eq!(used.len(), found * (m.v() - m.roots.len()));
    }
}

mod common;

use common::linear_from;
use hpr_core::absorbers::{
    build_factor_absorber, build_path_absorber, factor_absorber_degeneracy_bound, path_absorber_order,
    verify_factor_absorber, verify_path_absorber,
};
use hpr_core::degeneracy::edge_degeneracy;
use hpr_core::generators::motif;
use hpr_core::{Hypergraph, Vertex};
use proptest::prelude::*;

/// Vertices of the 2-core of the line graph (non-empty iff some subgraph has minimum degree 2).
fn line_graph_two_core(f: &Hypergraph) -> usize {
    let l = f.line_graph();
    let mut alive = vec![true; l.n()];
    loop {
        let drop: Vec<usize> = (0..l.n())
            .filter(|&v| alive[v])
            .filter(|&v| {
                l.incident(v as Vertex).iter().filter(|&&e| l.edge(e as usize).iter().all(|&u| alive[u as usize])).count() < 2
            })
            .collect();
        if drop.is_empty() {
            return alive.iter().filter(|&&a| a).count();
        }
        for v in drop {
            alive[v] = false;
        }
    }
}

#[test]
fn path_absorbers_for_small_k() {
    for k in 3..=6usize {
        let a = build_path_absorber(k).unwrap();
        assert!(verify_path_absorber(&a).is_ok(), "k={k}: {:?}", verify_path_absorber(&a).violations);
        let (x, u, v, w) = (k - 1, (k - 1) * (k - 3), (k - 1) * (k - 2), (k - 2) * (k - 3));
        let gadgets = (2 * k - 3) * (2 * k + 1);
        let connectors = (2 * k - 4) * (k - 2);
        assert_eq!(x + u + v + w + gadgets + connectors, 9 * k * k + 15 - 23 * k);
        assert_eq!(a.motif.v(), path_absorber_order(k));
        // every vertex outside the gadgets and connectors is one of X, U, V, W
        let inner: usize = a.gadgets.iter().map(|g| g.c.len() + g.c_prime.len() + 1).sum::<usize>()
            + a.connector_sets.iter().map(Vec::len).sum::<usize>();
        assert_eq!(a.motif.v() - inner, x + u + v + w);
        let (d, _) = edge_degeneracy(&a.motif);
        assert!(d < k, "k={k}: degeneracy {d}");
        if k == 3 {
            assert!(line_graph_two_core(&a.motif.graph) > 0, "degeneracy of the k=3 absorber is at least 2");
        }
    }
}

fn check_factor(f: &Hypergraph) -> Result<(), TestCaseError> {
    let a = build_factor_absorber(f).unwrap();
    let v = verify_factor_absorber(&a);
    prop_assert!(v.is_ok(), "{:?}", v.violations);
    let (d, _) = edge_degeneracy(&a.motif);
    prop_assert!(d <= factor_absorber_degeneracy_bound(f).unwrap());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factor_absorbers_for_small_linear_3_graphs(n in 3usize..9, cands in prop::collection::vec(prop::collection::vec(0u32..9, 3), 1..8)) {
        let f = linear_from(3, n, &cands);
        prop_assume!(f.edge_count() >= 1 && f.edge_count() <= 4);
        check_factor(&f)?;
    }
}

#[test]
fn factor_absorbers_for_the_library() {
    for k in 2..=4 {
        for name in ["single_edge", "loose_path_2", "loose_triangle", "star_2", "matching_2"] {
            check_factor(&motif(name, k).unwrap().graph).unwrap();
        }
    }
}

mod common;

use common::linear_from;
use hpr_core::degeneracy::{brute_force_degeneracy, edge_degeneracy, exposure_weights, min_max_edge_degree};
use hpr_core::generators::motif;
use hpr_core::{Hypergraph, RootedMotif, Vertex};
use proptest::prelude::*;

/// max over non-empty vertex subsets of the minimum induced degree.
fn line_graph_degeneracy(f: &Hypergraph) -> usize {
    let l = f.line_graph();
    let m = l.n();
    let mut best = 0;
    for mask in 1u32..1 << m {
        let min = (0..m)
            .filter(|&v| mask >> v & 1 == 1)
            .map(|v| {
                l.incident(v as Vertex)
                    .iter()
                    .filter(|&&e| l.edge(e as usize).iter().all(|&u| mask >> u & 1 == 1))
                    .count()
            })
            .min()
            .unwrap();
        best = best.max(min);
    }
    best
}

fn root_choices(f: &Hypergraph) -> Vec<Vec<Vertex>> {
    let n = f.n() as Vertex;
    let mut out = vec![Vec::new()];
    for a in 0..n {
        out.push(vec![a]);
        for b in 0..n {
            if a != b {
                out.push(vec![a, b]);
            }
        }
    }
    out
}

fn check_all(f: &Hypergraph) -> Result<(), TestCaseError> {
    for roots in root_choices(f) {
        let Ok(m) = RootedMotif::new(f.clone(), roots.clone(), None) else { continue };
        let (d, w) = edge_degeneracy(&m);
        prop_assert_eq!(d, brute_force_degeneracy(&m).unwrap(), "roots {:?}", roots);
        prop_assert_eq!(w.max_weight, d);
        prop_assert_eq!(exposure_weights(f, &w.order).unwrap(), w.weights.clone());
        let first_free = w.order.iter().position(|&e| !m.is_root_edge(e)).unwrap_or(w.order.len());
        prop_assert!(w.order[first_free..].iter().all(|&e| !m.is_root_edge(e)), "root edges must come first");
        if roots.is_empty() {
            prop_assert_eq!(d, line_graph_degeneracy(f));
            if f.edge_count() > 0 {
                prop_assert!(d <= min_max_edge_degree(f).unwrap().1);
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn greedy_matches_brute_force(n in 3usize..10, cands in prop::collection::vec(prop::collection::vec(0u32..10, 3), 0..12)) {
        let f = linear_from(3, n, &cands);
        prop_assume!(f.edge_count() <= 6);
        check_all(&f)?;
    }
}

#[test]
fn motif_library_degeneracies() {
    for k in 2..=4 {
        for name in ["single_edge", "loose_path_2", "loose_path_3", "loose_triangle", "loose_cycle_4", "star_3", "matching_2"] {
            let f = motif(name, k).unwrap().graph;
            check_all(&f).unwrap();
        }
    }
}

#![allow(dead_code)]

use hpr_core::{Hypergraph, Vertex, VertexSet};
use proptest::prelude::*;

/// Greedily keeps the candidate edges that preserve linearity.
pub fn linear_from(k: usize, n: usize, candidates: &[Vec<Vertex>]) -> Hypergraph {
    let mut edges: Vec<Vec<Vertex>> = Vec::new();
    for c in candidates {
        let mut e: Vec<Vertex> = c.iter().map(|&v| v % n as Vertex).collect();
        e.sort_unstable();
        e.dedup();
        if e.len() != k {
            continue;
        }
        if edges.iter().all(|f| f.iter().filter(|v| e.contains(v)).count() <= 1) {
            edges.push(e);
        }
    }
    Hypergraph::new(k, n, &edges).unwrap()
}

/// (k, n, H) with H linear, n ≤ `max_n`.
pub fn linear_hypergraph(max_n: usize, max_edges: usize) -> impl Strategy<Value = Hypergraph> {
    (2usize..=4).prop_flat_map(move |k| {
        (k..=max_n.max(k)).prop_flat_map(move |n| {
            prop::collection::vec(prop::collection::vec(0..n as Vertex, k), 0..=max_edges)
                .prop_map(move |c| linear_from(k, n, &c))
        })
    })
}

/// Any k-graph (not necessarily linear) with n ≤ `max_n`.
pub fn any_hypergraph(k: usize, max_n: usize) -> impl Strategy<Value = Hypergraph> {
    (k..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(prop::collection::vec(0..n as Vertex, k), 0..3 * n).prop_map(move |c| {
            let mut edges: Vec<Vec<Vertex>> = c
                .into_iter()
                .map(|mut e| {
                    e.sort_unstable();
                    e.dedup();
                    e
                })
                .filter(|e| e.len() == k)
                .collect();
            edges.sort();
            edges.dedup();
            Hypergraph::new(k, n, &edges).unwrap()
        })
    })
}

pub fn subset(n: usize, mask: u64) -> VertexSet {
    let mut s = VertexSet::new(n);
    for v in 0..n {
        if mask >> v & 1 == 1 {
            s.insert(v as Vertex);
        }
    }
    s
}

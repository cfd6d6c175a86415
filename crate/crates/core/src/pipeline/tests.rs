use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::generators::{loose_cycle, random_kgraph, GenSpec};

fn random(k: usize, n: usize, p: f64, seed: u64) -> Hypergraph {
    random_kgraph(&GenSpec { k, n, p, seed }).unwrap()
}

fn edge3() -> Hypergraph {
    motif("single_edge", 3).unwrap().graph
}

#[test]
fn empty_set_has_empty_cover() {
    let h = random(3, 30, 0.5, 1);
    let c = cover_small_set(&h, CoverMode::Path, &[], &VertexSet::full(30), 1000).unwrap();
    assert!(c.vertices.is_empty() && c.path.is_empty() && c.pieces.is_empty());
}

#[test]
fn path_cover_of_two_vertices_has_seven() {
    let h = random(3, 20, 1.0, 0);
    let mut x = VertexSet::full(20);
    x.remove(3);
    x.remove(11);
    let c = cover_small_set(&h, CoverMode::Path, &[3, 11], &x, 100_000).unwrap();
    assert_eq!(c.vertices.len(), 7);
    assert_eq!(c.ends, Some((3, 11)));
    assert!(verify_spanning_path(&h, &c.path, (3, 11), &c.vertices).is_ok());
}

#[test]
fn single_vertex_path_cover() {
    let h = random(3, 10, 1.0, 0);
    let mut x = VertexSet::full(10);
    x.remove(4);
    let c = cover_small_set(&h, CoverMode::Path, &[4], &x, 100).unwrap();
    assert_eq!(c.vertices.to_vec(), vec![4]);
    assert!(c.path.is_empty());
}

#[test]
fn factor_cover_of_two_vertices_is_small() {
    let h = random(3, 120, 0.5, 7);
    let f = edge3();
    let mut x = VertexSet::full(120);
    x.remove(5);
    x.remove(77);
    let c = cover_small_set(&h, CoverMode::Factor(&f), &[5, 77], &x, 1_000_000).unwrap();
    assert!(c.vertices.len() <= 15);
    assert!(c.vertices.contains(5) && c.vertices.contains(77));
    assert!(verify_factor_pieces(&h, &f, &c.pieces, &c.vertices).is_ok());
}

#[test]
fn copies_cover_each_vertex() {
    let h = random(3, 60, 0.6, 3);
    let f = motif("loose_path_2", 3).unwrap().graph;
    let mut x = VertexSet::full(60);
    for v in [1, 2, 30] {
        x.remove(v);
    }
    let c = cover_small_set(&h, CoverMode::FactorCopies(&f), &[1, 2, 30], &x, 1_000_000).unwrap();
    assert!(verify_factor_pieces(&h, &f, &c.pieces, &c.vertices).is_ok());
    assert!([1, 2, 30].iter().all(|&v| c.vertices.contains(v)));
}

#[test]
fn divisibility_is_checked() {
    let h = random(3, 31, 0.5, 0);
    let cfg = PipelineConfig::default();
    assert_eq!(find_perfect_matching(&h, &cfg).unwrap_err(), Error::Divisibility { n: 31, d: 3 });
    assert_eq!(find_loose_hamilton_cycle(&h, &cfg).unwrap_err(), Error::Divisibility { n: 31, d: 2 });
}

#[test]
fn disjoint_edges_are_matched_greedily() {
    let edges: Vec<Vec<Vertex>> = (0..5).map(|i| vec![3 * i, 3 * i + 1, 3 * i + 2]).collect();
    let h = Hypergraph::new(3, 15, &edges).unwrap();
    let cert = find_perfect_matching(&h, &PipelineConfig::default()).unwrap();
    assert!(cert.report.greedy_only);
    assert_eq!(cert.kind, CertificateKind::Matching);
    assert_eq!(cert.pieces.len(), 5);
    assert!(verify_certificate(&h, &cert, None).is_ok());
}

#[test]
fn loose_cycle_host_yields_itself() {
    let h = loose_cycle(3, 6).unwrap();
    let cert = find_loose_hamilton_cycle(&h, &PipelineConfig::default()).unwrap();
    assert_eq!(cert.pieces.len(), 6);
    let mut got: Vec<Vec<Vertex>> = cert.pieces.iter().map(|p| p.edges[0].clone()).collect();
    got.sort();
    let mut want: Vec<Vec<Vertex>> = h.edges().map(<[Vertex]>::to_vec).collect();
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn edgeless_host_fails_with_a_diagnostic() {
    let h = Hypergraph::empty(3, 30).unwrap();
    match find_perfect_matching(&h, &PipelineConfig::default()) {
        Err(Error::Phase { phase, .. }) => assert_eq!(phase, "absorbing-degree-audit"),
        other => panic!("unexpected {other:?}"),
    }
}

fn matching_cert(h: &Hypergraph, pieces: Vec<Vec<Vertex>>) -> SpanningCertificate {
    SpanningCertificate {
        kind: CertificateKind::Matching,
        k: h.k(),
        n: h.n(),
        f_vertices: 3,
        f_edges: vec![vec![0, 1, 2]],
        pieces: pieces.iter().map(|e| Piece::edge(e, "test")).collect(),
        report: SolveReport::default(),
    }
}

#[test]
fn verifier_rejects_a_repeated_edge() {
    let h = Hypergraph::new(3, 6, [[0, 1, 2], [3, 4, 5]]).unwrap();
    assert!(verify_certificate(&h, &matching_cert(&h, vec![vec![0, 1, 2], vec![3, 4, 5]]), None).is_ok());
    let bad = matching_cert(&h, vec![vec![0, 1, 2], vec![0, 1, 2]]);
    assert!(!verify_certificate(&h, &bad, None).is_ok());
}

#[test]
fn verifier_rejects_a_chord() {
    let cycle = loose_cycle(3, 4).unwrap();
    let mut edges: Vec<Vec<Vertex>> = cycle.edges().map(<[Vertex]>::to_vec).collect();
    edges.push(vec![1, 3, 5]);
    let h = Hypergraph::new(3, 8, &edges).unwrap();
    let cert = |pieces: &[Vec<Vertex>]| SpanningCertificate {
        kind: CertificateKind::HamCycle,
        k: 3,
        n: 8,
        f_vertices: 0,
        f_edges: Vec::new(),
        pieces: pieces.iter().map(|e| Piece::edge(e, "test")).collect(),
        report: SolveReport::default(),
    };
    assert!(verify_certificate(&h, &cert(&edges[..4]), None).is_ok());
    let mut with_chord = edges[..3].to_vec();
    with_chord.push(vec![1, 3, 5]);
    assert!(!verify_certificate(&h, &cert(&with_chord), None).is_ok());
}

#[test]
fn greedy_tiling_leaves_nothing_on_dense_hosts() {
    let h = random(3, 45, 0.8, 2);
    let f = edge3();
    let (pieces, left) = greedy_tiling(&h, &f, &VertexSet::full(45), 100_000, "t").unwrap();
    assert!(verify_factor_pieces(&h, &f, &pieces, &left.complement()).is_ok());
    assert!(left.len() <= 3);
}

#[test]
fn absorbing_matching_end_to_end() {
    let h = random(3, 120, 0.5, 11);
    let cfg = PipelineConfig { greedy_first: false, seed: 4, ..PipelineConfig::default() };
    let cert = find_perfect_matching(&h, &cfg).unwrap();
    assert!(!cert.report.greedy_only);
    assert!(verify_certificate(&h, &cert, None).is_ok());
    let s = cert.report.structure.unwrap();
    assert!(s.m >= 1 && s.template_edges > 0);
}

#[test]
fn structure_releases_any_flexible_subset() {
    let h = random(3, 150, 0.5, 5);
    let cfg = PipelineConfig { seed: 2, ..PipelineConfig::default() };
    let st = build_absorbing_structure(&h, &Target::Factor(edge3()), &cfg).unwrap();
    let check = st.spot_check(&h, 10, 1);
    assert_eq!(check.passed, 10, "{:?}", check.failures);
}

#[test]
fn hamilton_structure_reports_the_size_gap() {
    let h = random(3, 120, 0.5, 1);
    let cfg = PipelineConfig { greedy_first: false, ..PipelineConfig::default() };
    match find_loose_hamilton_cycle(&h, &cfg) {
        Err(Error::Phase { phase, .. }) => assert!(phase.starts_with("finish") || phase.starts_with("absorbing"), "{phase}"),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn config_validation() {
    assert!(PipelineConfig::default().validate().is_ok());
    let bad = PipelineConfig { gamma: 0.2, ..PipelineConfig::default() };
    assert!(bad.validate().is_err());
}

#[test]
fn hamilton_structure_releases_with_fixed_ends() {
    let h = random(3, 260, 0.5, 3);
    let cfg = PipelineConfig { seed: 1, ..PipelineConfig::default() };
    let st = build_absorbing_structure(&h, &Target::Ham, &cfg).unwrap();
    assert!(st.a_ends.is_some());
    let check = st.spot_check(&h, 5, 2);
    assert_eq!(check.passed, 5, "{:?}", check.failures);
}

#[test]
fn greedy_cycle_on_dense_host() {
    let h = random(3, 60, 0.6, 8);
    let cert = find_loose_hamilton_cycle(&h, &PipelineConfig::default()).unwrap();
    assert!(cert.report.greedy_only);
    assert!(verify_certificate(&h, &cert, None).is_ok());
}

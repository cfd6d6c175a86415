//! The absorption pipeline: covering small sets, the absorbing structure with
//! its flexible set, finishing the cover, and the top-level drivers.

mod cover;
mod finish;
mod structure;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::absorbers::factor_absorber_degeneracy_bound;
use crate::error::{Error, Result};
use crate::generators::motif;
use crate::hypergraph::{Hypergraph, Vertex};
use crate::set::VertexSet;
use crate::verification::{check_loose_cycle, check_loose_path, Verification};

pub use cover::{cover_small_set, greedy_loose_path, greedy_tiling, CoverMode, SmallCover};
pub use finish::{complete_cover, CoverOutcome, Ledger};
pub use structure::{build_absorbing_structure, spot_check, AbsorbingStructure, SpotCheck, StructureSummary};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strictness {
    /// Full constant hierarchy; refuses to run when it cannot be met.
    Strict,
    /// Configured constants; unmet size conditions become warnings.
    Pragmatic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub c: f64,
    pub gamma: f64,
    pub beta: f64,
    pub alpha_frac: f64,
    /// Only reported: the audit threshold ε p^ℓ.
    pub eps: f64,
    pub delta: usize,
    pub seed: u64,
    /// Node budget of every rooted-copy search.
    pub search_budget: u64,
    pub template_retries: usize,
    pub mode: Strictness,
    /// Pragmatic mode: the absorbing structure may take at most this share of n.
    pub footprint: f64,
    /// Fixes m instead of deriving it from β and the footprint.
    pub m: Option<usize>,
    /// Try a plain greedy cover of the whole host before absorbing.
    pub greedy_first: bool,
    /// Pragmatic mode: also count vertices with low degree into Z_1, Z_2 (or Z)
    /// as bad. Strict mode always does.
    pub z_degree_in_bad_set: bool,
    pub bad_set_rounds: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            c: 0.1,
            gamma: 0.01,
            beta: 0.05,
            alpha_frac: 0.1,
            eps: 0.1,
            delta: 40,
            seed: 0,
            search_budget: 2_000_000,
            template_retries: 20,
            mode: Strictness::Pragmatic,
            footprint: 0.65,
            m: None,
            greedy_first: true,
            z_degree_in_bad_set: false,
            bad_set_rounds: 5,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0 < self.gamma && self.gamma < self.beta && self.beta < self.alpha_frac && self.alpha_frac < 1.0) {
            return Err(Error::arg("need 0 < γ < β < α < 1"));
        }
        if !(self.c > 0.0 && self.eps > 0.0 && self.footprint > 0.0 && self.footprint <= 1.0) {
            return Err(Error::arg("c, ε and the footprint share must be positive (footprint ≤ 1)"));
        }
        if self.search_budget == 0 || self.template_retries == 0 || self.delta == 0 || self.bad_set_rounds == 0 {
            return Err(Error::arg("budgets, retries, Δ and rounds must be positive"));
        }
        if self.m == Some(0) {
            return Err(Error::arg("m must be positive"));
        }
        Ok(())
    }

    pub(crate) fn strict(&self) -> bool {
        self.mode == Strictness::Strict
    }

    /// Distinct seed for the `i`-th randomized call inside a solve.
    pub(crate) fn sub_seed(&self, i: u64) -> u64 {
        self.seed ^ i.wrapping_mul(0x9E37_79B9_7F4A_7C15)
    }
}

/// What the pipeline is asked to span H with.
#[derive(Clone, Debug, PartialEq)]
pub enum Target {
    Factor(Hypergraph),
    Ham,
}

/// A copy of F (or a single cycle edge) inside the host.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Vec<Vertex>>,
    pub phase: String,
}

impl Piece {
    /// The image of F under `map` (F-vertex → host vertex).
    pub fn from_map(f: &Hypergraph, map: &[Vertex], phase: &str) -> Piece {
        let edges = f.edges().map(|e| e.iter().map(|&v| map[v as usize]).collect()).collect();
        Piece { vertices: map.to_vec(), edges, phase: phase.into() }
    }

    pub fn edge(e: &[Vertex], phase: &str) -> Piece {
        Piece { vertices: e.to_vec(), edges: vec![e.to_vec()], phase: phase.into() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    Matching,
    Factor,
    HamCycle,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    /// degen(F) + Δ′(F) + k, or k + 1 for Hamilton cycles.
    pub ell: usize,
    /// ε p^ℓ with p the host density.
    pub alpha_threshold: f64,
    /// The whole cover came from the greedy phase.
    pub greedy_only: bool,
    pub structure: Option<StructureSummary>,
    pub ledger: Option<Ledger>,
    pub warnings: Vec<String>,
    pub phases: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpanningCertificate {
    pub kind: CertificateKind,
    pub k: usize,
    pub n: usize,
    /// Vertex count and edges of F (factor kinds).
    pub f_vertices: usize,
    pub f_edges: Vec<Vec<Vertex>>,
    /// F-copies, or the cycle's edges in cyclic order.
    pub pieces: Vec<Piece>,
    pub report: SolveReport,
}

impl SpanningCertificate {
    pub fn motif(&self) -> Result<Hypergraph> {
        Hypergraph::new(self.k, self.f_vertices, &self.f_edges)
    }
}

/// Checks `pieces` are edge-exact copies of F in H, pairwise disjoint,
/// covering exactly `target`.
pub fn verify_factor_pieces(h: &Hypergraph, f: &Hypergraph, pieces: &[Piece], target: &VertexSet) -> Verification {
    let mut out = Verification::default();
    let mut owner = vec![usize::MAX; h.n()];
    for (i, p) in pieces.iter().enumerate() {
        if p.vertices.iter().any(|&v| v as usize >= h.n()) {
            out.push(format!("piece {i} leaves the vertex set"));
            continue;
        }
        for e in &p.edges {
            if !h.contains_edge(e) {
                out.push(format!("piece {i}: {e:?} is not an edge of H"));
            }
        }
        if f.isomorphism_onto(&p.vertices, &p.edges).is_none() {
            out.push(format!("piece {i} is not a copy of F"));
        }
        for &v in &p.vertices {
            if owner[v as usize] != usize::MAX {
                out.push(format!("vertex {v} lies in pieces {} and {i}", owner[v as usize]));
            }
            owner[v as usize] = i;
        }
    }
    for v in 0..h.n() as Vertex {
        let covered = owner[v as usize] != usize::MAX;
        if covered != target.contains(v) {
            out.push(format!("vertex {v} is {}covered", if covered { "wrongly " } else { "not " }));
        }
    }
    out
}

/// Checks `edges` form a loose path in H from `ends.0` to `ends.1` spanning exactly `target`.
pub fn verify_spanning_path(h: &Hypergraph, edges: &[Vec<Vertex>], ends: (Vertex, Vertex), target: &VertexSet) -> Verification {
    let mut out = Verification::default();
    for e in edges {
        if !h.contains_edge(e) {
            out.push(format!("{e:?} is not an edge of H"));
        }
    }
    match check_loose_path(edges, ends) {
        Ok(covered) => {
            if covered.len() != target.len() || covered.iter().any(|&v| !target.contains(v)) {
                out.push(format!("path covers {} vertices, target has {}", covered.len(), target.len()));
            }
        }
        Err(msg) => out.push(msg),
    }
    out
}

/// Standalone check of a certificate; `f` overrides the motif stored in it.
pub fn verify_certificate(h: &Hypergraph, cert: &SpanningCertificate, f: Option<&Hypergraph>) -> Verification {
    let mut out = Verification::default();
    if cert.k != h.k() || cert.n != h.n() {
        out.push(format!("certificate is for (k, n) = ({}, {}), host is ({}, {})", cert.k, cert.n, h.k(), h.n()));
        return out;
    }
    let all = VertexSet::full(h.n());
    match cert.kind {
        CertificateKind::Matching | CertificateKind::Factor => {
            let stored;
            let f = match f {
                Some(f) => f,
                None => match cert.motif() {
                    Ok(m) => {
                        stored = m;
                        &stored
                    }
                    Err(e) => {
                        out.push(format!("stored motif is invalid: {e}"));
                        return out;
                    }
                },
            };
            if cert.kind == CertificateKind::Matching && (f.n() != h.k() || f.edge_count() != 1) {
                out.push("a matching certificate needs F to be a single edge");
            }
            out.extend(verify_factor_pieces(h, f, &cert.pieces, &all));
        }
        CertificateKind::HamCycle => {
            let edges: Vec<&[Vertex]> = cert.pieces.iter().flat_map(|p| p.edges.iter().map(Vec::as_slice)).collect();
            if h.k() < 2 || !h.n().is_multiple_of(h.k() - 1) || edges.len() != h.n() / (h.k() - 1) {
                out.push(format!("cycle has {} edges, expected n/(k−1)", edges.len()));
            }
            for e in &edges {
                if !h.contains_edge(e) {
                    out.push(format!("{e:?} is not an edge of H"));
                }
            }
            match check_loose_cycle(&edges) {
                Ok(covered) if covered.len() == h.n() => {}
                Ok(covered) => out.push(format!("cycle covers {} of {} vertices", covered.len(), h.n())),
                Err(msg) => out.push(msg),
            }
        }
    }
    out
}

fn density(h: &Hypergraph) -> f64 {
    h.degree_report().density
}

fn self_verify(h: &Hypergraph, cert: SpanningCertificate, f: Option<&Hypergraph>) -> Result<SpanningCertificate> {
    let v = verify_certificate(h, &cert, f);
    if !v.is_ok() {
        return Err(Error::phase("verify", format!("assembled certificate fails: {}", v.violations.join("; "))));
    }
    Ok(cert)
}

/// Perfect matching as the F-factor with F a single edge.
pub fn find_perfect_matching(h: &Hypergraph, config: &PipelineConfig) -> Result<SpanningCertificate> {
    let f = motif("single_edge", h.k())?.graph;
    let mut cert = find_f_factor(h, &f, config)?;
    cert.kind = CertificateKind::Matching;
    Ok(cert)
}

pub fn find_f_factor(h: &Hypergraph, f: &Hypergraph, config: &PipelineConfig) -> Result<SpanningCertificate> {
    config.validate()?;
    if f.k() != h.k() {
        return Err(Error::arg("F and H have different uniformity"));
    }
    if !f.is_linear() {
        return Err(Error::NotLinear);
    }
    if !h.n().is_multiple_of(f.n()) {
        return Err(Error::Divisibility { n: h.n(), d: f.n() });
    }
    let ell = factor_absorber_degeneracy_bound(f)?;
    let p = density(h);
    let mut report = SolveReport {
        ell,
        alpha_threshold: config.eps * libm::pow(p, ell as f64),
        ..SolveReport::default()
    };
    let base = SpanningCertificate {
        kind: CertificateKind::Factor,
        k: h.k(),
        n: h.n(),
        f_vertices: f.n(),
        f_edges: f.edges().map(<[Vertex]>::to_vec).collect(),
        pieces: Vec::new(),
        report: SolveReport::default(),
    };
    if config.greedy_first {
        let (pieces, leftover) = greedy_tiling(h, f, &VertexSet::full(h.n()), config.search_budget, "greedy")?;
        if leftover.is_empty() {
            report.greedy_only = true;
            report.phases.push(format!("greedy: {} copies cover V", pieces.len()));
            return self_verify(h, SpanningCertificate { pieces, report, ..base }, Some(f));
        }
        report.phases.push(format!("greedy: {} vertices left uncovered, absorbing", leftover.len()));
    }
    let structure = build_absorbing_structure(h, &Target::Factor(f.clone()), config)?;
    report.phases.extend(structure.phases.iter().cloned());
    report.warnings.extend(structure.warnings.iter().cloned());
    let outcome = complete_cover(h, &structure, config)?;
    report.phases.extend(outcome.phases.iter().cloned());
    report.warnings.extend(outcome.warnings.iter().cloned());
    let mut pieces = outcome.pieces;
    pieces.extend(structure.extract_factor(&outcome.z_prime)?);
    report.structure = Some(structure.summary());
    report.ledger = Some(outcome.ledger);
    self_verify(h, SpanningCertificate { pieces, report, ..base }, Some(f))
}

pub fn find_loose_hamilton_cycle(h: &Hypergraph, config: &PipelineConfig) -> Result<SpanningCertificate> {
    config.validate()?;
    let k = h.k();
    if !h.n().is_multiple_of(k - 1) {
        return Err(Error::Divisibility { n: h.n(), d: k - 1 });
    }
    let ell = k + 1;
    let p = density(h);
    let mut report = SolveReport {
        ell,
        alpha_threshold: config.eps * libm::pow(p, ell as f64),
        ..SolveReport::default()
    };
    let base = SpanningCertificate {
        kind: CertificateKind::HamCycle,
        k,
        n: h.n(),
        f_vertices: 0,
        f_edges: Vec::new(),
        pieces: Vec::new(),
        report: SolveReport::default(),
    };
    if config.greedy_first {
        if let Some(cycle) = cover::greedy_loose_cycle(h)? {
            report.greedy_only = true;
            report.phases.push(format!("greedy: loose cycle with {} edges", cycle.len()));
            let pieces = cycle.iter().map(|e| Piece::edge(e, "greedy")).collect();
            return self_verify(h, SpanningCertificate { pieces, report, ..base }, None);
        }
        report.phases.push("greedy: no spanning cycle, absorbing".into());
    }
    structure::ham_preflight(h, config)?;
    let structure = build_absorbing_structure(h, &Target::Ham, config)?;
    report.phases.extend(structure.phases.iter().cloned());
    report.warnings.extend(structure.warnings.iter().cloned());
    let outcome = complete_cover(h, &structure, config)?;
    report.phases.extend(outcome.phases.iter().cloned());
    report.warnings.extend(outcome.warnings.iter().cloned());
    let mut edges = structure.extract_path(&outcome.z_prime)?;
    let absorbing_len = edges.len();
    edges.extend(outcome.path.iter().cloned());
    let pieces = edges
        .iter()
        .enumerate()
        .map(|(i, e)| Piece::edge(e, if i < absorbing_len { "absorbing" } else { "cover" }))
        .collect();
    report.structure = Some(structure.summary());
    report.ledger = Some(outcome.ledger);
    self_verify(h, SpanningCertificate { pieces, report, ..base }, None)
}

#[cfg(test)]
mod tests;

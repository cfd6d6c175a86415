//! Covering everything outside the absorbing structure, leaving exactly m
//! vertices of the flexible set for the template to release.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::embedder::greedy_builder;
use crate::error::{Error, Result};
use crate::generators::loose_path_rooted_at_ends;
use crate::hypergraph::{Hypergraph, Vertex};
use crate::set::VertexSet;

use super::cover::{cover_small_set, greedy_loose_path, greedy_tiling, CoverMode};
use super::structure::{ham_z2_need, AbsorbingStructure};
use super::{Piece, PipelineConfig, Target};

/// Sizes recorded while finishing the cover.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Ledger {
    /// |V ∖ (A ∪ U)|.
    pub outside: usize,
    /// Vertices the greedy phase could not cover.
    pub leftover: usize,
    /// |S_1 ∩ Z| and |S_2 ∩ Z|.
    pub s1_in_z: usize,
    pub s2_in_z: usize,
    /// Factor mode: copies dropped from S_2 to hit |Z ∖ S| = m.
    pub dropped: usize,
    pub z_prime: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoverOutcome {
    /// Factor mode: copies covering V ∖ (A ∪ U) ∪ Z′.
    pub pieces: Vec<Piece>,
    /// Hamilton mode: loose path from a_2 back to a_1 through everything else.
    pub path: Vec<Vec<Vertex>>,
    /// The m vertices of Z the cover uses.
    pub z_prime: Vec<Vertex>,
    pub ledger: Ledger,
    pub warnings: Vec<String>,
    pub phases: Vec<String>,
}

fn leftover_check(l: usize, n: usize, config: &PipelineConfig, warnings: &mut Vec<String>) -> Result<()> {
    let limit = config.gamma * n as f64;
    if l as f64 >= limit {
        let msg = format!("greedy phase left {l} vertices, not below γn = {limit:.1}");
        if config.strict() {
            return Err(Error::phase("finish-leftover", msg));
        }
        warnings.push(msg);
    }
    Ok(())
}

pub fn complete_cover(h: &Hypergraph, s: &AbsorbingStructure, config: &PipelineConfig) -> Result<CoverOutcome> {
    let mut outside = s.a_set.clone();
    outside.union_with(&s.u_set);
    let outside = outside.complement();
    match &s.target {
        Target::Factor(f) => finish_factor(h, f, s, &outside, config),
        Target::Ham => finish_ham(h, s, &outside, config),
    }
}

fn finish_factor(h: &Hypergraph, f: &Hypergraph, s: &AbsorbingStructure, outside: &VertexSet, config: &PipelineConfig) -> Result<CoverOutcome> {
    let n = h.n();
    let fv = f.n();
    let m = s.m;
    let mut warnings = Vec::new();
    let mut phases = Vec::new();
    let mut ledger = Ledger { outside: outside.len(), ..Ledger::default() };
    if !(outside.len() + m).is_multiple_of(fv) {
        return Err(Error::phase(
            "finish-divisibility",
            format!("|V ∖ (A ∪ U)| + m = {} is not divisible by v(F) = {fv}", outside.len() + m),
        ));
    }
    let (mut pieces, leftover) = greedy_tiling(h, f, outside, config.search_budget, "cover")?;
    ledger.leftover = leftover.len();
    leftover_check(leftover.len(), n, config, &mut warnings)?;
    phases.push(format!("finish: {} copies outside A ∪ U, {} left over", pieces.len(), leftover.len()));

    let l: Vec<Vertex> = leftover.iter().collect();
    let s1 = cover_small_set(h, CoverMode::FactorCopies(f), &l, &s.z, config.search_budget)?;
    let mut rest = s.z.clone();
    rest.difference_with(&s1.vertices);
    ledger.s1_in_z = s.z.len() - rest.len();

    let (mut s2, _) = greedy_tiling(h, f, &rest, config.search_budget, "flexible")?;
    let left_in_z = rest.len() - s2.len() * fv;
    let Some(q) = m.checked_sub(left_in_z) else {
        return Err(Error::phase(
            "finish-flexible",
            format!("{left_in_z} flexible vertices stay uncovered, more than m = {m}"),
        ));
    };
    if q % fv != 0 || q / fv > s2.len() {
        return Err(Error::phase("finish-flexible", format!("cannot release {q} flexible vertices in whole copies of F")));
    }
    s2.truncate(s2.len() - q / fv);
    ledger.dropped = q / fv;
    ledger.s2_in_z = s2.len() * fv;

    let mut used = VertexSet::new(n);
    for p in s1.pieces.iter().chain(&s2) {
        for &v in &p.vertices {
            used.insert(v);
        }
    }
    let z_prime: Vec<Vertex> = s.z.iter().filter(|&v| used.contains(v)).collect();
    ledger.z_prime = z_prime.len();
    if z_prime.len() != m {
        return Err(Error::phase("finish-flexible", format!("cover uses {} flexible vertices, need m = {m}", z_prime.len())));
    }
    phases.push(format!("finish: S_1 has {} copies, S_2 has {}, Z′ has {m} vertices", s1.pieces.len(), s2.len()));
    pieces.extend(s1.pieces);
    pieces.extend(s2);
    Ok(CoverOutcome { pieces, path: Vec::new(), z_prime, ledger, warnings, phases })
}

/// End of the prefix of a greedy loose path with `j` edges.
fn prefix_end(edges: &[Vec<Vertex>], start: Vertex, end: Vertex, j: usize) -> Vertex {
    if j == 0 {
        return start;
    }
    if j == edges.len() {
        return end;
    }
    *edges[j - 1].iter().find(|v| edges[j].contains(v)).expect("consecutive edges of a loose path meet")
}

fn finish_ham(h: &Hypergraph, s: &AbsorbingStructure, outside: &VertexSet, config: &PipelineConfig) -> Result<CoverOutcome> {
    let n = h.n();
    let k = h.k();
    let m = s.m;
    let step = k - 1;
    let (a1, a2) = s.a_ends.expect("Hamilton structures have ends");
    let mut warnings = Vec::new();
    let mut phases = Vec::new();
    let mut ledger = Ledger { outside: outside.len(), ..Ledger::default() };
    if s.z2.len() < ham_z2_need(k) {
        return Err(Error::phase(
            "finish-size",
            format!("|Z_2| = {} but closing the cycle needs {} vertices there", s.z2.len(), ham_z2_need(k)),
        ));
    }
    let Some(b1) = outside.iter().max_by_key(|&v| (h.degree_into_set(v, outside), core::cmp::Reverse(v))) else {
        return Err(Error::phase("finish-path", "nothing lies outside the absorbing structure"));
    };
    let (pb, b2, leftover) = greedy_loose_path(h, outside, b1, config.search_budget)?;
    ledger.leftover = leftover.len();
    leftover_check(leftover.len(), n, config, &mut warnings)?;
    phases.push(format!("finish: path with {} edges outside A ∪ U, {} left over", pb.len(), leftover.len()));

    let z1 = VertexSet::from_slice(n, &s.z1)?;
    let l: Vec<Vertex> = leftover.iter().collect();
    let (s1_path, c1, c2, s1_vertices) = if l.is_empty() {
        let c = s.z1[0];
        (Vec::new(), c, c, VertexSet::from_slice(n, &[c])?)
    } else {
        let cover = cover_small_set(h, CoverMode::Path, &l, &z1, config.search_budget)?;
        let (c1, c2) = cover.ends.expect("path covers have ends");
        (cover.path, c1, c2, cover.vertices)
    };
    let mut rest1 = z1.clone();
    rest1.difference_with(&s1_vertices);
    ledger.s1_in_z = s.z1.len() - rest1.len();

    let Some(d1) = rest1.iter().max_by_key(|&v| (h.degree_into_set(v, &rest1), core::cmp::Reverse(v))) else {
        return Err(Error::phase("finish-flexible", "S_1 used all of Z_1"));
    };
    let (s2_full, d_end, _) = greedy_loose_path(h, &rest1, d1, config.search_budget)?;
    // |Z ∖ S| must be m once the four connectors have taken their share of Z_2
    let keep = m + ham_z2_need(k);
    let z_left = s.z.len() - ledger.s1_in_z;
    let need = z_left.checked_sub(keep).filter(|&x| x >= 1 && (x - 1) % step == 0);
    let Some(need) = need else {
        return Err(Error::phase(
            "finish-flexible",
            format!("cannot leave exactly {keep} flexible vertices with a loose path ({z_left} remain after S_1)"),
        ));
    };
    let j = (need - 1) / step;
    if j > s2_full.len() {
        return Err(Error::phase("finish-flexible", format!("greedy path in Z_1 has {} edges, need {j}", s2_full.len())));
    }
    let d2 = prefix_end(&s2_full, d1, d_end, j);
    let s2_path: Vec<Vec<Vertex>> = s2_full[..j].to_vec();
    let mut s2_vertices = VertexSet::from_slice(n, &[d1])?;
    for e in &s2_path {
        for &v in e {
            s2_vertices.insert(v);
        }
    }
    ledger.s2_in_z = s2_vertices.len();

    let z2 = VertexSet::from_slice(n, &s.z2)?;
    let link = loose_path_rooted_at_ends(k, 3)?;
    let pairs = vec![vec![a2, b1], vec![b2, c1], vec![c2, d1], vec![d2, a1]];
    let conn = greedy_builder(h, &link, &pairs, &z2, config.search_budget)?;
    if let Some(&i) = conn.failed.first() {
        return Err(Error::phase(
            "finish-connect",
            format!("no connecting path through Z_2 between {} and {}", pairs[i][0], pairs[i][1]),
        ));
    }
    let conn_edges: Vec<Vec<Vec<Vertex>>> = conn
        .copies
        .iter()
        .flatten()
        .map(|emb| link.graph.edges().map(|e| e.iter().map(|&v| emb.image[v as usize]).collect()).collect())
        .collect();

    let mut path = Vec::new();
    for (i, segment) in [pb, s1_path, s2_path].into_iter().enumerate() {
        path.extend(conn_edges[i].iter().cloned());
        path.extend(segment);
    }
    path.extend(conn_edges[3].iter().cloned());

    let mut used = VertexSet::new(n);
    for e in &path {
        for &v in e {
            used.insert(v);
        }
    }
    let z_prime: Vec<Vertex> = s.z.iter().filter(|&v| used.contains(v)).collect();
    ledger.z_prime = z_prime.len();
    if z_prime.len() != m {
        return Err(Error::phase("finish-flexible", format!("cover uses {} flexible vertices, need m = {m}", z_prime.len())));
    }
    phases.push(format!("finish: closing path with {} edges, Z′ has {m} vertices", path.len()));
    Ok(CoverOutcome { pieces: Vec::new(), path, z_prime, ledger, warnings, phases })
}

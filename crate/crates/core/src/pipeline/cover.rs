//! Covering small vertex sets, and the greedy tilings and paths used before
//! and after absorption.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::absorbers::build_factor_absorber;
use crate::embedder::{find_rooted_copy, greedy_builder, SearchOutcome};
use crate::error::{Error, Result};
use crate::generators::loose_path_rooted_at_ends;
use crate::hypergraph::{Hypergraph, RootedMotif, Vertex};
use crate::set::VertexSet;

use super::Piece;

#[derive(Clone, Copy, Debug)]
pub enum CoverMode<'a> {
    /// Groups of v(F) vertices as the roots of grid absorbers.
    Factor(&'a Hypergraph),
    /// One F-copy per vertex, rooted there.
    FactorCopies(&'a Hypergraph),
    /// A loose path through the vertices in the given order.
    Path,
}

/// R̂: the covering pieces (factor modes) or path (path mode) and their vertex set.
#[derive(Clone, Debug, PartialEq)]
pub struct SmallCover {
    pub pieces: Vec<Piece>,
    pub path: Vec<Vec<Vertex>>,
    pub ends: Option<(Vertex, Vertex)>,
    pub vertices: VertexSet,
}

impl SmallCover {
    fn empty(n: usize) -> Self {
        SmallCover { pieces: Vec::new(), path: Vec::new(), ends: None, vertices: VertexSet::new(n) }
    }
}

/// Covers `b` using otherwise only vertices of `x` (which must avoid `b`).
pub fn cover_small_set(h: &Hypergraph, mode: CoverMode<'_>, b: &[Vertex], x: &VertexSet, budget: u64) -> Result<SmallCover> {
    let n = h.n();
    if b.iter().any(|&v| x.contains(v)) {
        return Err(Error::arg("the set to cover must avoid X"));
    }
    if b.is_empty() {
        return Ok(SmallCover::empty(n));
    }
    match mode {
        CoverMode::Factor(f) => cover_with_absorbers(h, f, b, x, budget),
        CoverMode::FactorCopies(f) => cover_with_copies(h, f, b, x, budget),
        CoverMode::Path => cover_with_path(h, b, x, budget),
    }
}

fn cover_with_absorbers(h: &Hypergraph, f: &Hypergraph, b: &[Vertex], x: &VertexSet, budget: u64) -> Result<SmallCover> {
    let n = h.n();
    let fv = f.n();
    let absorber = build_factor_absorber(f)?;
    let mut roots = b.to_vec();
    let mut x = x.clone();
    let pad = (fv - b.len() % fv) % fv;
    if pad > 0 {
        let mut by_degree: Vec<(u64, Vertex)> = x.iter().map(|v| (h.degree_into_set(v, &x), v)).collect();
        by_degree.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        if by_degree.len() < pad {
            return Err(Error::phase("cover", "X is too small to pad the set"));
        }
        for &(_, v) in &by_degree[..pad] {
            roots.push(v);
            x.remove(v);
        }
    }
    let groups: Vec<Vec<Vertex>> = roots.chunks(fv).map(<[Vertex]>::to_vec).collect();
    let fam = greedy_builder(h, &absorber.motif, &groups, &x, budget)?;
    if let Some(&i) = fam.failed.first() {
        let why = if fam.budget_exhausted.contains(&i) { "search budget exhausted" } else { "no copy" };
        return Err(Error::phase("cover", format!("no absorber rooted at {:?} ({why})", groups[i])));
    }
    let mut out = SmallCover::empty(n);
    for emb in fam.copies.iter().flatten() {
        for piece in &absorber.complete_factor {
            let map: Vec<Vertex> = piece.map.iter().map(|&v| emb.image[v as usize]).collect();
            out.pieces.push(Piece::from_map(f, &map, "cover"));
        }
        for &v in &emb.image {
            out.vertices.insert(v);
        }
    }
    Ok(out)
}

fn rooted_at(f: &Hypergraph, root: Vertex) -> Result<RootedMotif> {
    RootedMotif::new(f.clone(), vec![root], None)
}

/// A copy of F through `v` with every other vertex in `allowed`, trying each
/// vertex of F as the root. Returns the F-vertex → host map.
fn copy_through(h: &Hypergraph, f: &Hypergraph, v: Vertex, allowed: &VertexSet, budget: u64) -> Result<Option<Vec<Vertex>>> {
    for root in 0..f.n() as Vertex {
        let m = rooted_at(f, root)?;
        if let SearchOutcome::Found(emb) = find_rooted_copy(h, &m, &[v], allowed, budget)? {
            return Ok(Some(emb.image));
        }
    }
    Ok(None)
}

fn cover_with_copies(h: &Hypergraph, f: &Hypergraph, b: &[Vertex], x: &VertexSet, budget: u64) -> Result<SmallCover> {
    let n = h.n();
    let mut allowed = x.clone();
    for &v in b {
        allowed.insert(v);
    }
    let mut out = SmallCover::empty(n);
    for &v in b {
        if out.vertices.contains(v) {
            continue;
        }
        allowed.remove(v);
        let Some(map) = copy_through(h, f, v, &allowed, budget)? else {
            return Err(Error::phase("cover", format!("no copy of F through {v} inside the allowed set")));
        };
        for &u in &map {
            allowed.remove(u);
            out.vertices.insert(u);
        }
        out.pieces.push(Piece::from_map(f, &map, "cover"));
    }
    Ok(out)
}

fn cover_with_path(h: &Hypergraph, seq: &[Vertex], x: &VertexSet, budget: u64) -> Result<SmallCover> {
    let n = h.n();
    let mut out = SmallCover::empty(n);
    for &v in seq {
        if !out.vertices.insert(v) {
            return Err(Error::arg(format!("vertex {v} repeats in the path order")));
        }
    }
    out.ends = Some((seq[0], seq[seq.len() - 1]));
    if seq.len() == 1 {
        return Ok(out);
    }
    let motif = loose_path_rooted_at_ends(h.k(), 3)?;
    let pairs: Vec<Vec<Vertex>> = seq.windows(2).map(<[Vertex]>::to_vec).collect();
    let fam = greedy_builder(h, &motif, &pairs, x, budget)?;
    if let Some(&i) = fam.failed.first() {
        return Err(Error::phase("cover", format!("no connecting path between {} and {}", pairs[i][0], pairs[i][1])));
    }
    for emb in fam.copies.iter().flatten() {
        for e in motif.graph.edges() {
            out.path.push(e.iter().map(|&v| emb.image[v as usize]).collect());
        }
        for &v in &emb.image {
            out.vertices.insert(v);
        }
    }
    Ok(out)
}

/// Greedy F-tiling of `host`: each uncovered vertex in turn gets a copy of F
/// through it inside what is left, or is set aside. Returns the copies and
/// the vertices set aside.
pub fn greedy_tiling(h: &Hypergraph, f: &Hypergraph, host: &VertexSet, budget: u64, phase: &str) -> Result<(Vec<Piece>, VertexSet)> {
    let mut free = host.clone();
    let mut leftover = VertexSet::new(h.n());
    let mut pieces = Vec::new();
    for v in host.iter() {
        if !free.contains(v) {
            continue;
        }
        free.remove(v);
        if free.len() + 1 < f.n() {
            leftover.insert(v);
            continue;
        }
        match copy_through(h, f, v, &free, budget)? {
            Some(map) => {
                for &u in &map {
                    free.remove(u);
                }
                pieces.push(Piece::from_map(f, &map, phase));
            }
            None => {
                leftover.insert(v);
            }
        }
    }
    Ok((pieces, leftover))
}

const JUMP_TARGETS: usize = 64;

/// Edge through `end` whose other vertices are all in `free`, with
/// `accept` deciding among them; the first accepted one wins.
fn extension(h: &Hypergraph, end: Vertex, free: &VertexSet, mut accept: impl FnMut(&[Vertex]) -> bool) -> Option<Vec<Vertex>> {
    for &ei in h.incident(end) {
        let e = h.edge(ei as usize);
        if e.iter().all(|&v| v == end || free.contains(v)) && accept(e) {
            return Some(e.to_vec());
        }
    }
    None
}

/// The vertex of `e` other than `end` with the most edges inside `free ∪ {v}`.
fn best_end(h: &Hypergraph, e: &[Vertex], end: Vertex, free: &VertexSet) -> Vertex {
    let mut best = (0u64, Vertex::MAX);
    for &v in e {
        if v == end {
            continue;
        }
        let d = h.degree_into_set(v, free);
        if best.1 == Vertex::MAX || d > best.0 {
            best = (d, v);
        }
    }
    best.1
}

/// Greedy loose path inside `host` starting at `start`. When no edge
/// extends it, a loose path with three edges to some unused vertex is tried
/// before giving up (up to 64 targets). Returns the edges, the final end and the uncovered rest.
pub fn greedy_loose_path(
    h: &Hypergraph,
    host: &VertexSet,
    start: Vertex,
    budget: u64,
) -> Result<(Vec<Vec<Vertex>>, Vertex, VertexSet)> {
    let mut free = host.clone();
    free.remove(start);
    let mut end = start;
    let mut edges: Vec<Vec<Vertex>> = Vec::new();
    let jump = loose_path_rooted_at_ends(h.k(), 3)?;
    loop {
        if let Some(e) = extension(h, end, &free, |_| true) {
            let next = best_end(h, &e, end, &free);
            for &v in &e {
                free.remove(v);
            }
            edges.push(e);
            end = next;
            continue;
        }
        let mut jumped = false;
        for target in free.iter().take(JUMP_TARGETS).collect::<Vec<_>>() {
            let mut inner = free.clone();
            inner.remove(target);
            if let SearchOutcome::Found(emb) = find_rooted_copy(h, &jump, &[end, target], &inner, budget)? {
                for e in jump.graph.edges() {
                    edges.push(e.iter().map(|&v| emb.image[v as usize]).collect());
                }
                for &v in &emb.image {
                    free.remove(v);
                }
                end = target;
                jumped = true;
                break;
            }
        }
        if !jumped {
            return Ok((edges, end, free));
        }
    }
}

/// Greedy loose Hamilton cycle: a path from a start vertex over all but k−2
/// vertices, whose last edge is chosen so that the closing edge exists.
/// Tries the first few vertices as the start.
pub fn greedy_loose_cycle(h: &Hypergraph) -> Result<Option<Vec<Vec<Vertex>>>> {
    let n = h.n();
    let k = h.k();
    if k < 2 || !n.is_multiple_of(k - 1) || n / (k - 1) < 3 {
        return Ok(None);
    }
    for start in 0..n.min(CYCLE_STARTS) as Vertex {
        if let Some(c) = greedy_cycle_from(h, start) {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

const CYCLE_STARTS: usize = 8;

fn greedy_cycle_from(h: &Hypergraph, start: Vertex) -> Option<Vec<Vec<Vertex>>> {
    let n = h.n();
    let total = n / (h.k() - 1);
    let mut free = VertexSet::full(n);
    free.remove(start);
    let mut end = start;
    let mut edges: Vec<Vec<Vertex>> = Vec::with_capacity(total);
    while edges.len() + 2 < total {
        let e = extension(h, end, &free, |_| true)?;
        let next = best_end(h, &e, end, &free);
        for &v in &e {
            free.remove(v);
        }
        edges.push(e);
        end = next;
    }
    // free now holds exactly 2k−3 vertices: k−1 for the last path edge, k−2 for the closing one
    let mut closing = None;
    let last = extension(h, end, &free, |e| {
        for &w in e {
            if w == end {
                continue;
            }
            let mut c: Vec<Vertex> = free.iter().filter(|v| !e.contains(v)).collect();
            c.push(w);
            c.push(start);
            c.sort_unstable();
            if h.contains_edge(&c) {
                closing = Some(c);
                return true;
            }
        }
        false
    })?;
    edges.push(last);
    edges.push(closing?);
    Some(edges)
}

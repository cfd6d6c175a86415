//! Immutable k-uniform hypergraphs with labelled counting.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::set::VertexSet;

pub type Vertex = u32;

pub const MAX_UNIFORMITY: usize = 8;

const DENSE_PAIR_LIMIT: usize = 2048;

#[derive(Clone, Debug)]
enum PairCounts {
    Dense(Vec<u32>),
    Sparse(BTreeMap<(Vertex, Vertex), u32>),
}

#[inline]
fn tri(u: Vertex, v: Vertex) -> usize {
    let (a, b) = if u < v { (u as usize, v as usize) } else { (v as usize, u as usize) };
    b * (b - 1) / 2 + a
}

/// A k-uniform hypergraph on vertices `0..n`.
///
/// Edges keep the order they were supplied in; each edge is stored sorted.
/// A lexicographic index backs membership queries.
#[derive(Clone, Debug)]
pub struct Hypergraph {
    k: usize,
    n: usize,
    edges: Vec<Vertex>,
    lex: Option<Vec<u32>>,
    inc_start: Vec<usize>,
    inc: Vec<u32>,
    pairs: PairCounts,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k
            && self.n == other.n
            && self.edge_count() == other.edge_count()
            && self.edges_lex().zip(other.edges_lex()).all(|(a, b)| a == b)
    }
}

impl Eq for Hypergraph {}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeReport {
    pub min_vertex_degree: u64,
    pub max_pair_degree: u32,
    pub density: f64,
}

/// Result of [`Hypergraph::induced`]: the subgraph plus `to_parent[i]`, the
/// original index of new vertex `i`.
#[derive(Clone, Debug)]
pub struct Induced {
    pub graph: Hypergraph,
    pub to_parent: Vec<Vertex>,
}

pub(crate) fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

impl Hypergraph {
    pub fn new<I, E>(k: usize, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[Vertex]>,
    {
        if !(2..=MAX_UNIFORMITY).contains(&k) {
            return Err(Error::UnsupportedUniformity(k));
        }
        let mut flat = Vec::new();
        for (index, e) in edges.into_iter().enumerate() {
            let e = e.as_ref();
            if e.len() != k {
                return Err(Error::WrongEdgeSize { index, found: e.len(), k });
            }
            let start = flat.len();
            for &v in e {
                if v as usize >= n {
                    return Err(Error::VertexOutOfRange { vertex: v as usize, n });
                }
                flat.push(v);
            }
            let edge = &mut flat[start..];
            edge.sort_unstable();
            if edge.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::RepeatedVertex { index });
            }
        }
        Self::from_flat(k, n, flat)
    }

    pub fn empty(k: usize, n: usize) -> Result<Self> {
        Self::new(k, n, core::iter::empty::<[Vertex; 0]>())
    }

    /// `flat` holds sorted, in-range edges of size `k`; duplicates are still rejected.
    pub(crate) fn from_flat(k: usize, n: usize, flat: Vec<Vertex>) -> Result<Self> {
        let m = flat.len() / k;
        let edge = |i: usize| &flat[i * k..(i + 1) * k];
        let already_sorted = (1..m).all(|i| edge(i - 1) < edge(i));
        let lex = if already_sorted {
            None
        } else {
            let mut order: Vec<u32> = (0..m as u32).collect();
            order.sort_unstable_by(|&a, &b| edge(a as usize).cmp(edge(b as usize)));
            for w in order.windows(2) {
                if edge(w[0] as usize) == edge(w[1] as usize) {
                    return Err(Error::DuplicateEdge(edge(w[0] as usize).to_vec()));
                }
            }
            Some(order)
        };

        let mut inc_start = vec![0usize; n + 1];
        for &v in &flat {
            inc_start[v as usize + 1] += 1;
        }
        for i in 0..n {
            inc_start[i + 1] += inc_start[i];
        }
        let mut fill = inc_start.clone();
        let mut inc = vec![0u32; flat.len()];
        for i in 0..m {
            for &v in edge(i) {
                inc[fill[v as usize]] = i as u32;
                fill[v as usize] += 1;
            }
        }

        let pairs = if n <= DENSE_PAIR_LIMIT {
            let mut counts = vec![0u32; n * n.saturating_sub(1) / 2];
            for i in 0..m {
                let e = edge(i);
                for a in 0..k {
                    for b in a + 1..k {
                        counts[tri(e[a], e[b])] += 1;
                    }
                }
            }
            PairCounts::Dense(counts)
        } else {
            let mut counts = BTreeMap::new();
            for i in 0..m {
                let e = edge(i);
                for a in 0..k {
                    for b in a + 1..k {
                        *counts.entry((e[a], e[b])).or_insert(0) += 1;
                    }
                }
            }
            PairCounts::Sparse(counts)
        };

        Ok(Hypergraph { k, n, edges: flat, lex, inc_start, inc, pairs })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len() / self.k
    }

    #[inline]
    pub fn edge(&self, i: usize) -> &[Vertex] {
        &self.edges[i * self.k..(i + 1) * self.k]
    }

    pub fn edges(&self) -> core::slice::ChunksExact<'_, Vertex> {
        self.edges.chunks_exact(self.k)
    }

    /// Edges in lexicographic order.
    pub fn edges_lex(&self) -> impl Iterator<Item = &[Vertex]> + '_ {
        let m = self.edge_count();
        (0..m).map(move |i| match &self.lex {
            None => self.edge(i),
            Some(order) => self.edge(order[i] as usize),
        })
    }

    /// Indices of edges containing `v`, ascending.
    #[inline]
    pub fn incident(&self, v: Vertex) -> &[u32] {
        &self.inc[self.inc_start[v as usize]..self.inc_start[v as usize + 1]]
    }

    /// Number of edges containing `v` (unlabelled).
    #[inline]
    pub fn vertex_degree(&self, v: Vertex) -> usize {
        self.inc_start[v as usize + 1] - self.inc_start[v as usize]
    }

    pub fn pair_degree(&self, u: Vertex, v: Vertex) -> u32 {
        if u == v || u as usize >= self.n || v as usize >= self.n {
            return 0;
        }
        match &self.pairs {
            PairCounts::Dense(c) => c[tri(u, v)],
            PairCounts::Sparse(map) => {
                let key = if u < v { (u, v) } else { (v, u) };
                map.get(&key).copied().unwrap_or(0)
            }
        }
    }

    pub fn max_pair_degree(&self) -> u32 {
        match &self.pairs {
            PairCounts::Dense(c) => c.iter().copied().max().unwrap_or(0),
            PairCounts::Sparse(map) => map.values().copied().max().unwrap_or(0),
        }
    }

    /// Index of the edge with vertex set `e` (any order).
    pub fn find_edge(&self, e: &[Vertex]) -> Option<usize> {
        if e.len() != self.k {
            return None;
        }
        let mut key = [0 as Vertex; MAX_UNIFORMITY];
        key[..self.k].copy_from_slice(e);
        key[..self.k].sort_unstable();
        self.find_sorted_edge(&key[..self.k])
    }

    #[inline]
    pub(crate) fn find_sorted_edge(&self, key: &[Vertex]) -> Option<usize> {
        let m = self.edge_count();
        let (mut lo, mut hi) = (0usize, m);
        while lo < hi {
            let mid = (lo + hi) / 2;
            let idx = match &self.lex {
                None => mid,
                Some(order) => order[mid] as usize,
            };
            match self.edge(idx).cmp(key) {
                core::cmp::Ordering::Less => lo = mid + 1,
                core::cmp::Ordering::Greater => hi = mid,
                core::cmp::Ordering::Equal => return Some(idx),
            }
        }
        None
    }

    pub fn contains_edge(&self, e: &[Vertex]) -> bool {
        self.find_edge(e).is_some()
    }

    pub fn is_linear(&self) -> bool {
        self.max_pair_degree() <= 1
    }

    fn check_sets(&self, sets: &[&VertexSet], want: usize) -> Result<()> {
        if sets.len() != want {
            return Err(Error::arg(format!("expected {want} vertex sets, got {}", sets.len())));
        }
        for s in sets {
            if s.universe() != self.n {
                return Err(Error::arg(format!(
                    "vertex set over {} vertices used with n = {}",
                    s.universe(),
                    self.n
                )));
            }
        }
        Ok(())
    }

    /// e(A_1, ..., A_k): ordered k-tuples with `a_i ∈ A_i` whose underlying set is an edge.
    pub fn labelled_edge_count(&self, sets: &[&VertexSet]) -> Result<u64> {
        self.check_sets(sets, self.k)?;
        let smallest = *sets.iter().min_by_key(|s| s.len()).expect("k >= 2");
        let mut total = 0u64;
        let mut rows = [0u8; MAX_UNIFORMITY];
        for v in smallest.iter() {
            for &ei in self.incident(v) {
                let e = self.edge(ei as usize);
                // count each edge once: at its smallest vertex inside the pivot set
                if e.iter().find(|&&u| smallest.contains(u)) != Some(&v) {
                    continue;
                }
                for (i, s) in sets.iter().enumerate() {
                    let mut mask = 0u8;
                    for (j, &u) in e.iter().enumerate() {
                        if s.contains(u) {
                            mask |= 1 << j;
                        }
                    }
                    rows[i] = mask;
                }
                total += permanent(&rows[..self.k]);
            }
        }
        Ok(total)
    }

    /// [`labelled_edge_count`](Self::labelled_edge_count) with the sets given as vertex lists.
    pub fn labelled_edge_count_lists(&self, sets: &[&[Vertex]]) -> Result<u64> {
        let owned: Vec<VertexSet> =
            sets.iter().map(|s| VertexSet::from_slice(self.n, s)).collect::<Result<_>>()?;
        let refs: Vec<&VertexSet> = owned.iter().collect();
        self.labelled_edge_count(&refs)
    }

    /// deg(v; U_1, ..., U_{k-1}) = e({v}, U_1, ..., U_{k-1}).
    pub fn degree_into(&self, v: Vertex, sets: &[&VertexSet]) -> Result<u64> {
        if v as usize >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v as usize, n: self.n });
        }
        self.check_sets(sets, self.k - 1)?;
        let mut total = 0;
        let mut rows = [0u8; MAX_UNIFORMITY];
        for &ei in self.incident(v) {
            let e = self.edge(ei as usize);
            for (i, s) in sets.iter().enumerate() {
                let mut mask = 0u8;
                for (j, &u) in e.iter().filter(|&&u| u != v).enumerate() {
                    if s.contains(u) {
                        mask |= 1 << j;
                    }
                }
                rows[i] = mask;
            }
            total += permanent(&rows[..self.k - 1]);
        }
        Ok(total)
    }

    /// deg(v; U, ..., U): (k-1)! times the number of edges through `v` inside `{v} ∪ U`.
    pub fn degree_into_set(&self, v: Vertex, u: &VertexSet) -> u64 {
        let hits = self
            .incident(v)
            .iter()
            .filter(|&&ei| self.edge(ei as usize).iter().all(|&w| w == v || u.contains(w)))
            .count() as u64;
        hits * factorial(self.k - 1)
    }

    pub fn degree_report(&self) -> DegreeReport {
        let min_deg = (0..self.n as Vertex).map(|v| self.vertex_degree(v)).min().unwrap_or(0);
        let nk = libm::pow(self.n as f64, self.k as f64);
        let density =
            if self.n == 0 { 0.0 } else { factorial(self.k) as f64 * self.edge_count() as f64 / nk };
        DegreeReport {
            min_vertex_degree: min_deg as u64 * factorial(self.k - 1),
            max_pair_degree: self.max_pair_degree(),
            density,
        }
    }

    /// Graph on the edge indices where two edges are adjacent iff they intersect.
    pub fn line_graph(&self) -> Hypergraph {
        let m = self.edge_count();
        let mut pairs: Vec<[Vertex; 2]> = Vec::new();
        for v in 0..self.n as Vertex {
            let inc = self.incident(v);
            for (a, &x) in inc.iter().enumerate() {
                for &y in &inc[a + 1..] {
                    pairs.push([x, y]);
                }
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        let flat = pairs.into_iter().flatten().collect();
        Hypergraph::from_flat(2, m, flat).expect("line graph pairs are distinct")
    }

    /// Subgraph induced on `s`, re-indexed by increasing original index.
    pub fn induced(&self, s: &VertexSet) -> Induced {
        let to_parent: Vec<Vertex> = s.iter().filter(|&v| (v as usize) < self.n).collect();
        let mut to_child = vec![Vertex::MAX; self.n];
        for (i, &v) in to_parent.iter().enumerate() {
            to_child[v as usize] = i as Vertex;
        }
        let mut flat = Vec::new();
        for e in self.edges_lex() {
            if e.iter().all(|&v| to_child[v as usize] != Vertex::MAX) {
                flat.extend(e.iter().map(|&v| to_child[v as usize]));
            }
        }
        let graph = Hypergraph::from_flat(self.k, to_parent.len(), flat).expect("subset of a valid edge set");
        Induced { graph, to_parent }
    }

    /// Copy without the edges lying entirely inside `s`.
    pub fn without_edges_inside(&self, s: &VertexSet) -> Hypergraph {
        let mut flat = Vec::with_capacity(self.edges.len());
        for e in self.edges() {
            if !e.iter().all(|&v| s.contains(v)) {
                flat.extend_from_slice(e);
            }
        }
        Hypergraph::from_flat(self.k, self.n, flat).expect("subset of a valid edge set")
    }

    /// SHA-256 over `k`, `n` and the lexicographically sorted edges, as hex.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.k as u64).to_le_bytes());
        h.update((self.n as u64).to_le_bytes());
        for e in self.edges_lex() {
            for &v in e {
                h.update(v.to_le_bytes());
            }
        }
        let mut out = String::with_capacity(64);
        for b in h.finalize().iter() {
            out.push_str(&format!("{b:02x}"));
        }
        out
    }

    /// Finds a bijection `φ: V(self) → vertices` mapping the edge set of `self`
    /// exactly onto `edges`. Returns `φ` as a vector indexed by vertex.
    pub fn isomorphism_onto(&self, vertices: &[Vertex], edges: &[Vec<Vertex>]) -> Option<Vec<Vertex>> {
        let f = self.n;
        if vertices.len() != f || edges.len() != self.edge_count() {
            return None;
        }
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        if vs.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        let local = |v: Vertex| vs.binary_search(&v).ok();
        let mut target_edges: Vec<Vec<usize>> = Vec::with_capacity(edges.len());
        let mut tdeg = vec![0usize; f];
        for e in edges {
            if e.len() != self.k {
                return None;
            }
            let mut le = Vec::with_capacity(self.k);
            for &v in e {
                let l = local(v)?;
                le.push(l);
                tdeg[l] += 1;
            }
            le.sort_unstable();
            if le.windows(2).any(|w| w[0] == w[1]) {
                return None;
            }
            target_edges.push(le);
        }
        target_edges.sort_unstable();
        if target_edges.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        let mut map = vec![usize::MAX; f];
        let mut used = vec![false; f];
        if self.extend_iso(0, &mut map, &mut used, &tdeg, &target_edges) {
            Some(map.into_iter().map(|l| vs[l]).collect())
        } else {
            None
        }
    }

    fn extend_iso(
        &self,
        v: usize,
        map: &mut [usize],
        used: &mut [bool],
        tdeg: &[usize],
        target: &[Vec<usize>],
    ) -> bool {
        if v == self.n {
            return true;
        }
        for t in 0..self.n {
            if used[t] || tdeg[t] != self.vertex_degree(v as Vertex) {
                continue;
            }
            map[v] = t;
            used[t] = true;
            let consistent = self.incident(v as Vertex).iter().all(|&ei| {
                let e = self.edge(ei as usize);
                if e.iter().any(|&u| u as usize > v) {
                    return true;
                }
                let mut img: Vec<usize> = e.iter().map(|&u| map[u as usize]).collect();
                img.sort_unstable();
                target.binary_search(&img).is_ok()
            });
            if consistent && self.extend_iso(v + 1, map, used, tdeg, target) {
                return true;
            }
            used[t] = false;
            map[v] = usize::MAX;
        }
        false
    }
}

/// Number of perfect matchings in the row/column bitmask bipartite graph.
fn permanent(rows: &[u8]) -> u64 {
    let k = rows.len();
    if rows.contains(&0) {
        return 0;
    }
    let full = (1u16 << k) - 1;
    if rows.iter().all(|&r| r as u16 == full) {
        return factorial(k);
    }
    let mut dp = [0u64; 1 << MAX_UNIFORMITY];
    dp[0] = 1;
    for mask in 0..(1usize << k) {
        let c = dp[mask];
        if c == 0 {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == k {
            continue;
        }
        let mut free = rows[row] as usize & !mask;
        while free != 0 {
            let b = free & free.wrapping_neg();
            dp[mask | b] += c;
            free &= free - 1;
        }
    }
    dp[(1 << k) - 1]
}

/// A linear k-graph with an ordered root tuple and optional ends.
#[derive(Clone, Debug, PartialEq)]
pub struct RootedMotif {
    pub graph: Hypergraph,
    pub roots: Vec<Vertex>,
    pub ends: Option<(Vertex, Vertex)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MotifViolation {
    SharedPair { edges: (usize, usize) },
    RootOutOfRange { root: Vertex },
    DuplicateRoot { root: Vertex },
    RootEdgesMeet { roots: (Vertex, Vertex), edges: (usize, usize) },
    EndOutOfRange { end: Vertex },
    EndIsRoot { end: Vertex },
}

impl fmt::Display for MotifViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MotifViolation::SharedPair { edges } => {
                write!(f, "edges {} and {} share two or more vertices", edges.0, edges.1)
            }
            MotifViolation::RootOutOfRange { root } => write!(f, "root {root} is not a vertex"),
            MotifViolation::DuplicateRoot { root } => write!(f, "root {root} listed twice"),
            MotifViolation::RootEdgesMeet { roots, edges } => write!(
                f,
                "edge {} (through root {}) meets edge {} (through root {})",
                edges.0, roots.0, edges.1, roots.1
            ),
            MotifViolation::EndOutOfRange { end } => write!(f, "end {end} is not a vertex"),
            MotifViolation::EndIsRoot { end } => write!(f, "end {end} is also a root"),
        }
    }
}

impl RootedMotif {
    pub fn unrooted(graph: Hypergraph) -> Self {
        RootedMotif { graph, roots: Vec::new(), ends: None }
    }

    /// Builds a motif and rejects it unless [`validate`](Self::validate) is clean.
    pub fn new(graph: Hypergraph, roots: Vec<Vertex>, ends: Option<(Vertex, Vertex)>) -> Result<Self> {
        let m = RootedMotif { graph, roots, ends };
        match m.validate().first() {
            None => Ok(m),
            Some(v) => Err(Error::arg(format!("invalid rooted motif: {v}"))),
        }
    }

    pub fn with_roots(self, roots: Vec<Vertex>) -> Result<Self> {
        RootedMotif::new(self.graph, roots, self.ends)
    }

    pub fn v(&self) -> usize {
        self.graph.n()
    }

    pub fn e(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn is_root(&self, v: Vertex) -> bool {
        self.roots.contains(&v)
    }

    pub fn is_root_edge(&self, e: usize) -> bool {
        self.graph.edge(e).iter().any(|&v| self.is_root(v))
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Lists every violated motif invariant.
    pub fn validate(&self) -> Vec<MotifViolation> {
        let g = &self.graph;
        let mut out = Vec::new();
        for v in 0..g.n() as Vertex {
            let inc = g.incident(v);
            for (a, &x) in inc.iter().enumerate() {
                for &y in &inc[a + 1..] {
                    let shared = g.edge(x as usize).iter().filter(|u| g.edge(y as usize).contains(u)).count();
                    // report each offending pair once, at its smallest shared vertex
                    let first = g.edge(x as usize).iter().find(|u| g.edge(y as usize).contains(u));
                    if shared >= 2 && first == Some(&v) {
                        out.push(MotifViolation::SharedPair { edges: (x as usize, y as usize) });
                    }
                }
            }
        }
        for (i, &r) in self.roots.iter().enumerate() {
            if r as usize >= g.n() {
                out.push(MotifViolation::RootOutOfRange { root: r });
            } else if self.roots[..i].contains(&r) {
                out.push(MotifViolation::DuplicateRoot { root: r });
            }
        }
        let valid_roots: Vec<Vertex> = {
            let mut seen = Vec::new();
            for &r in &self.roots {
                if (r as usize) < g.n() && !seen.contains(&r) {
                    seen.push(r);
                }
            }
            seen
        };
        for (i, &a) in valid_roots.iter().enumerate() {
            for &b in &valid_roots[i + 1..] {
                for &ea in g.incident(a) {
                    for &eb in g.incident(b) {
                        let x = g.edge(ea as usize);
                        if g.edge(eb as usize).iter().any(|u| x.contains(u)) {
                            out.push(MotifViolation::RootEdgesMeet {
                                roots: (a, b),
                                edges: (ea as usize, eb as usize),
                            });
                        }
                    }
                }
            }
        }
        if let Some((y1, y2)) = self.ends {
            for y in [y1, y2] {
                if y as usize >= g.n() {
                    out.push(MotifViolation::EndOutOfRange { end: y });
                } else if self.roots.contains(&y) {
                    out.push(MotifViolation::EndIsRoot { end: y });
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn set(n: usize, v: &[Vertex]) -> VertexSet {
        VertexSet::from_slice(n, v).unwrap()
    }

    fn loose_cycle_3_3() -> Hypergraph {
        Hypergraph::new(3, 6, [[0, 1, 2], [2, 3, 4], [4, 5, 0]]).unwrap()
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(matches!(Hypergraph::new(3, 3, [[0, 1, 3]]), Err(Error::VertexOutOfRange { .. })));
        assert!(matches!(Hypergraph::new(3, 4, [[0, 1, 1]]), Err(Error::RepeatedVertex { .. })));
        assert!(matches!(
            Hypergraph::new(3, 4, [vec![0, 1, 2], vec![2, 1, 0]]),
            Err(Error::DuplicateEdge(_))
        ));
        assert!(matches!(Hypergraph::new(3, 4, [vec![0, 1]]), Err(Error::WrongEdgeSize { .. })));
        assert!(matches!(Hypergraph::empty(1, 4), Err(Error::UnsupportedUniformity(1))));
    }

    #[test]
    fn labelled_counts_single_edge() {
        let h = Hypergraph::new(3, 3, [[0, 1, 2]]).unwrap();
        let v = VertexSet::full(3);
        assert_eq!(h.labelled_edge_count(&[&v, &v, &v]).unwrap(), 6);
        let (a, b, c) = (set(3, &[0]), set(3, &[1]), set(3, &[2]));
        assert_eq!(h.labelled_edge_count(&[&a, &b, &c]).unwrap(), 1);
        let ab = set(3, &[0, 1]);
        assert_eq!(h.labelled_edge_count(&[&ab, &ab, &c]).unwrap(), 2);
        assert!(h.labelled_edge_count_lists(&[&[0], &[1], &[7]]).is_err());
    }

    #[test]
    fn degrees() {
        let h = Hypergraph::new(3, 3, [[0, 1, 2]]).unwrap();
        let u = set(3, &[1, 2]);
        assert_eq!(h.degree_into(0, &[&u, &u]).unwrap(), 2);
        let u1 = set(3, &[1]);
        assert_eq!(h.degree_into(0, &[&u1, &u1]).unwrap(), 0);
        assert!(h.degree_into(3, &[&u, &u]).is_err());

        let c = loose_cycle_3_3();
        let all = VertexSet::full(6);
        assert_eq!(c.degree_into(0, &[&all, &all]).unwrap(), 4);
        assert_eq!(c.degree_into_set(0, &all), 4);
    }

    #[test]
    fn degree_reports() {
        let h = Hypergraph::new(3, 3, [[0, 1, 2]]).unwrap();
        let r = h.degree_report();
        assert_eq!((r.min_vertex_degree, r.max_pair_degree), (2, 1));
        assert!((r.density - 6.0 / 27.0).abs() < 1e-12);
        let e = Hypergraph::empty(3, 5).unwrap().degree_report();
        assert_eq!((e.min_vertex_degree, e.max_pair_degree, e.density), (0, 0, 0.0));
        assert_eq!(loose_cycle_3_3().degree_report().min_vertex_degree, 2);
    }

    #[test]
    fn linearity_and_line_graph() {
        assert!(!Hypergraph::new(3, 4, [[0, 1, 2], [0, 1, 3]]).unwrap().is_linear());
        let path = Hypergraph::new(3, 7, [[0, 1, 2], [2, 3, 4], [4, 5, 6]]).unwrap();
        assert!(path.is_linear());
        let lg = path.line_graph();
        assert_eq!(lg.edges_lex().collect::<Vec<_>>(), vec![&[0, 1][..], &[1, 2][..]]);
        let tri = loose_cycle_3_3().line_graph();
        assert_eq!(tri.edge_count(), 3);
        let matching = Hypergraph::new(3, 6, [[0, 1, 2], [3, 4, 5]]).unwrap();
        assert_eq!(matching.line_graph().edge_count(), 0);
    }

    #[test]
    fn induced_subgraphs() {
        let h = Hypergraph::new(3, 6, [[0, 1, 2], [3, 4, 5]]).unwrap();
        let all = h.induced(&VertexSet::full(6));
        assert_eq!(all.graph, h);
        assert_eq!(all.to_parent, (0..6).collect::<Vec<_>>());
        let one = h.induced(&set(6, &[3, 4, 5]));
        assert_eq!(one.graph.edge_count(), 1);
        assert_eq!(one.to_parent, vec![3, 4, 5]);
        let none = h.induced(&set(6, &[0, 1, 3]));
        assert_eq!(none.graph.edge_count(), 0);
    }

    #[test]
    fn edge_lookup_with_unsorted_input() {
        let h = Hypergraph::new(3, 6, [[3, 4, 5], [0, 1, 2], [1, 2, 5]]).unwrap();
        assert_eq!(h.find_edge(&[2, 1, 0]), Some(1));
        assert_eq!(h.find_edge(&[5, 1, 2]), Some(2));
        assert_eq!(h.find_edge(&[0, 1, 3]), None);
        assert_eq!(h.edges_lex().next().unwrap(), &[0, 1, 2]);
    }

    #[test]
    fn rooted_validation() {
        let e = Hypergraph::new(3, 3, [[0, 1, 2]]).unwrap();
        assert!(RootedMotif::new(e.clone(), vec![0], None).is_ok());
        let bad = RootedMotif { graph: e, roots: vec![0, 1], ends: None };
        assert!(matches!(bad.validate()[0], MotifViolation::RootEdgesMeet { .. }));
    }

    #[test]
    fn isomorphism_check() {
        let path = Hypergraph::new(3, 5, [[0, 1, 2], [2, 3, 4]]).unwrap();
        let phi = path.isomorphism_onto(&[10, 11, 12, 13, 14], &[vec![14, 13, 12], vec![12, 11, 10]]).unwrap();
        assert_eq!(phi[2], 12);
        assert!(path.isomorphism_onto(&[10, 11, 12, 13, 14], &[vec![10, 11, 12], vec![10, 13, 14]]).is_some());
        assert!(path.isomorphism_onto(&[10, 11, 12, 13, 14], &[vec![10, 11, 12], vec![11, 12, 13]]).is_none());
    }
}

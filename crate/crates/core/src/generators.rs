//! Random k-graphs and the motif library.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, RootedMotif, Vertex, MAX_UNIFORMITY};
use crate::rng;
use crate::set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub k: usize,
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

const BITSET_LIMIT: u64 = 1 << 28;

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Next k-subset of `0..n` in lexicographic order; false after the last one.
fn next_combination(c: &mut [Vertex], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if (c[i] as usize) < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// The `rank`-th k-subset of `0..n` in lexicographic order.
pub fn unrank_lex(mut rank: u128, n: usize, k: usize) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(k);
    let mut c = 0usize;
    for i in 0..k {
        loop {
            let count = binomial((n - 1 - c) as u64, (k - 1 - i) as u64);
            if rank < count {
                break;
            }
            rank -= count;
            c += 1;
        }
        out.push(c as Vertex);
        c += 1;
    }
    out
}

/// Every k-set is an edge independently with probability `p`.
///
/// The edge count is drawn from Binomial(C(n,k), p); that many distinct ranks
/// are then drawn uniformly and the edges emitted in lexicographic order.
pub fn random_kgraph(spec: &GenSpec) -> Result<Hypergraph> {
    let GenSpec { k, n, p, seed } = *spec;
    if !(2..=MAX_UNIFORMITY).contains(&k) {
        return Err(Error::UnsupportedUniformity(k));
    }
    if n < k {
        return Err(Error::arg(format!("n = {n} is smaller than k = {k}")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::arg(format!("edge probability {p} outside [0, 1]")));
    }
    let total = binomial(n as u64, k as u64);
    let total: u64 = total.try_into().map_err(|_| Error::arg("C(n, k) exceeds 2^64"))?;
    let mut rng = rng::stream(seed, rng::GENERATOR);
    let count = if p == 0.0 {
        0
    } else if p == 1.0 {
        total
    } else {
        Binomial::new(total, p).map_err(|e| Error::arg(format!("{e}")))?.sample(&mut rng)
    };

    let mut flat = Vec::with_capacity(count as usize * k);
    if total <= BITSET_LIMIT {
        let words = total.div_ceil(64) as usize;
        let invert = count > total / 2;
        let mut bits = vec![if invert { u64::MAX } else { 0 }; words];
        let flips = if invert { total - count } else { count };
        let mut done = 0;
        while done < flips {
            let r = rng.random_range(0..total) as usize;
            let (w, b) = (r >> 6, r & 63);
            let set = bits[w] >> b & 1 == 1;
            if set == invert {
                bits[w] ^= 1 << b;
                done += 1;
            }
        }
        let mut c: Vec<Vertex> = (0..k as Vertex).collect();
        let mut rank = 0usize;
        loop {
            if bits[rank >> 6] >> (rank & 63) & 1 == 1 {
                flat.extend_from_slice(&c);
            }
            rank += 1;
            if !next_combination(&mut c, n) {
                break;
            }
        }
    } else {
        let mut ranks = BTreeSet::new();
        while (ranks.len() as u64) < count {
            ranks.insert(rng.random_range(0..total));
        }
        for r in ranks {
            flat.extend(unrank_lex(r as u128, n, k));
        }
    }
    Hypergraph::from_flat(k, n, flat)
}

/// Loose path with `t` edges on `t(k-1)+1` vertices; ends are its first and last vertex.
pub fn loose_path(k: usize, t: usize) -> Result<RootedMotif> {
    if t < 1 {
        return Err(Error::arg("a loose path needs at least one edge"));
    }
    let step = k.saturating_sub(1);
    let edges = (0..t).map(|j| (0..k).map(|i| (j * step + i) as Vertex).collect::<Vec<_>>());
    let graph = Hypergraph::new(k, t * step + 1, edges)?;
    Ok(RootedMotif { graph, roots: Vec::new(), ends: Some((0, (t * step) as Vertex)) })
}

/// Loose path whose two ends are its roots.
pub fn loose_path_rooted_at_ends(k: usize, t: usize) -> Result<RootedMotif> {
    let p = loose_path(k, t)?;
    let (a, b) = p.ends.expect("paths have ends");
    RootedMotif::new(p.graph, vec![a, b], None)
}

pub fn loose_cycle(k: usize, t: usize) -> Result<Hypergraph> {
    if t < 3 {
        return Err(Error::arg("a loose cycle needs at least three edges"));
    }
    let step = k.saturating_sub(1);
    let nv = t * step;
    let edges = (0..t).map(|j| (0..k).map(|i| ((j * step + i) % nv) as Vertex).collect::<Vec<_>>());
    Hypergraph::new(k, nv, edges)
}

/// Named motifs: `single_edge`, `loose_path_<t>`, `loose_triangle`,
/// `loose_cycle_<t>`, `star_<s>`, `matching_<s>`.
pub fn motif(name: &str, k: usize) -> Result<RootedMotif> {
    let unknown = || Error::UnknownMotif(name.into());
    let suffix = |prefix: &str| -> Result<usize> {
        name.strip_prefix(prefix).and_then(|s| s.parse().ok()).ok_or_else(unknown)
    };
    if name == "single_edge" {
        return loose_path(k, 1).map(|m| RootedMotif::unrooted(m.graph));
    }
    if name == "loose_triangle" {
        return loose_cycle(k, 3).map(RootedMotif::unrooted);
    }
    if name.starts_with("loose_path_") {
        return loose_path(k, suffix("loose_path_")?).map(|m| RootedMotif::unrooted(m.graph));
    }
    if name.starts_with("loose_cycle_") {
        return loose_cycle(k, suffix("loose_cycle_")?).map(RootedMotif::unrooted);
    }
    if name.starts_with("star_") {
        let s = suffix("star_")?;
        if s == 0 {
            return Err(unknown());
        }
        let edges = (0..s).map(|j| {
            let mut e = vec![0 as Vertex];
            e.extend((0..k - 1).map(|i| (1 + j * (k - 1) + i) as Vertex));
            e
        });
        return Hypergraph::new(k, 1 + s * (k - 1), edges).map(RootedMotif::unrooted);
    }
    if name.starts_with("matching_") {
        let s = suffix("matching_")?;
        if s == 0 {
            return Err(unknown());
        }
        let edges = (0..s).map(|j| (0..k).map(|i| (j * k + i) as Vertex).collect::<Vec<_>>());
        return Hypergraph::new(k, s * k, edges).map(RootedMotif::unrooted);
    }
    Err(unknown())
}

/// Removes every edge lying entirely inside `s`.
pub fn plant_hole(h: &Hypergraph, s: &VertexSet) -> Hypergraph {
    h.without_edges_inside(s)
}

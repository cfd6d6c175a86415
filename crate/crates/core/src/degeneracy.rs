//! Edge degrees, edge exposures and (rooted) edge degeneracy.

use alloc::vec;
use alloc::vec::Vec;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, RootedMotif};

/// An ordering of the edges; `weights[i]` counts earlier edges meeting `order[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeExposure {
    pub order: Vec<usize>,
    pub weights: Vec<usize>,
    pub max_weight: usize,
}

pub const BRUTE_FORCE_EDGE_LIMIT: usize = 10;

/// Adjacency lists of the line graph, ascending.
pub(crate) fn edge_neighbours(f: &Hypergraph) -> Vec<Vec<usize>> {
    let m = f.edge_count();
    let mut adj = vec![Vec::new(); m];
    for (i, nb) in adj.iter_mut().enumerate() {
        for &v in f.edge(i) {
            nb.extend(f.incident(v).iter().map(|&x| x as usize).filter(|&x| x != i));
        }
        nb.sort_unstable();
        nb.dedup();
    }
    adj
}

/// deg(e) = Σ_{v∈e} (deg(v) − 1), the number of other edges meeting `e`.
pub fn edge_degree(f: &Hypergraph, e: usize) -> Result<usize> {
    if !f.is_linear() {
        return Err(Error::NotLinear);
    }
    if e >= f.edge_count() {
        return Err(Error::arg("edge index out of range"));
    }
    Ok(f.edge(e).iter().map(|&v| f.vertex_degree(v) - 1).sum())
}

/// (δ′(F), Δ′(F)).
pub fn min_max_edge_degree(f: &Hypergraph) -> Result<(usize, usize)> {
    if !f.is_linear() {
        return Err(Error::NotLinear);
    }
    if f.edge_count() == 0 {
        return Err(Error::EmptyEdgeSet);
    }
    let degs = (0..f.edge_count()).map(|e| f.edge(e).iter().map(|&v| f.vertex_degree(v) - 1).sum::<usize>());
    let (lo, hi) = degs.fold((usize::MAX, 0), |(lo, hi), d| (lo.min(d), hi.max(d)));
    Ok((lo, hi))
}

pub fn exposure_weights(f: &Hypergraph, order: &[usize]) -> Result<Vec<usize>> {
    let m = f.edge_count();
    let mut seen = vec![false; m];
    if order.len() != m {
        return Err(Error::InvalidPermutation);
    }
    for &e in order {
        if e >= m || seen[e] {
            return Err(Error::InvalidPermutation);
        }
        seen[e] = true;
    }
    let adj = edge_neighbours(f);
    let mut placed = vec![false; m];
    let mut weights = Vec::with_capacity(m);
    for &e in order {
        weights.push(adj[e].iter().filter(|&&x| placed[x]).count());
        placed[e] = true;
    }
    Ok(weights)
}

pub fn exposure(f: &Hypergraph, order: Vec<usize>) -> Result<EdgeExposure> {
    let weights = exposure_weights(f, &order)?;
    let max_weight = weights.iter().copied().max().unwrap_or(0);
    Ok(EdgeExposure { order, weights, max_weight })
}

/// Greedy min-degree peeling of the line graph. Edges without roots are
/// peeled before any root edge; ties go to the smallest edge index. The
/// witness exposure is the reverse peeling order.
pub fn edge_degeneracy(m: &RootedMotif) -> (usize, EdgeExposure) {
    let f = &m.graph;
    let ne = f.edge_count();
    let adj = edge_neighbours(f);
    let rooted: Vec<bool> = (0..ne).map(|e| m.is_root_edge(e)).collect();
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut alive = vec![true; ne];
    let mut free_left = rooted.iter().filter(|&&r| !r).count();
    let mut peel = Vec::with_capacity(ne);
    let mut degen = 0;
    for _ in 0..ne {
        let want_rooted = free_left == 0;
        let pick = (0..ne)
            .filter(|&e| alive[e] && rooted[e] == want_rooted)
            .min_by_key(|&e| (deg[e], e))
            .expect("an edge remains");
        degen = degen.max(deg[pick]);
        alive[pick] = false;
        if !rooted[pick] {
            free_left -= 1;
        }
        for &x in &adj[pick] {
            if alive[x] {
                deg[x] -= 1;
            }
        }
        peel.push(pick);
    }
    peel.reverse();
    let witness = exposure(f, peel).expect("peeling visits every edge once");
    debug_assert_eq!(witness.max_weight, degen);
    (degen, witness)
}

/// Minimum over all valid exposures of the maximum weight, by exhaustive
/// branch-and-bound over orders (root edges first).
pub fn brute_force_degeneracy(m: &RootedMotif) -> Result<usize> {
    let f = &m.graph;
    let ne = f.edge_count();
    if ne > BRUTE_FORCE_EDGE_LIMIT {
        return Err(Error::TooManyEdges(ne));
    }
    let adj = edge_neighbours(f);
    let rooted: Vec<bool> = (0..ne).map(|e| m.is_root_edge(e)).collect();
    let n_rooted = rooted.iter().filter(|&&r| r).count();
    let mut best = usize::MAX;
    let mut placed = vec![false; ne];
    search(&adj, &rooted, n_rooted, 0, 0, &mut placed, &mut best);
    Ok(if ne == 0 { 0 } else { best })
}

fn search(
    adj: &[Vec<usize>],
    rooted: &[bool],
    rooted_left: usize,
    depth: usize,
    current: usize,
    placed: &mut [bool],
    best: &mut usize,
) {
    if current >= *best {
        return;
    }
    if depth == adj.len() {
        *best = current;
        return;
    }
    for e in 0..adj.len() {
        if placed[e] || (rooted_left > 0 && !rooted[e]) {
            continue;
        }
        let w = adj[e].iter().filter(|&&x| placed[x]).count();
        placed[e] = true;
        let left = rooted_left - rooted[e] as usize;
        search(adj, rooted, left, depth + 1, current.max(w), placed, best);
        placed[e] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{loose_path, loose_path_rooted_at_ends, motif};

    #[test]
    fn edge_degrees() {
        let e = motif("single_edge", 3).unwrap().graph;
        assert_eq!(edge_degree(&e, 0).unwrap(), 0);
        let p = loose_path(3, 3).unwrap().graph;
        assert_eq!(edge_degree(&p, 1).unwrap(), 2);
        let t = motif("loose_triangle", 3).unwrap().graph;
        assert!((0..3).all(|i| edge_degree(&t, i).unwrap() == 2));
        let bad = Hypergraph::new(3, 4, [[0, 1, 2], [0, 1, 3]]).unwrap();
        assert_eq!(edge_degree(&bad, 0), Err(Error::NotLinear));
    }

    #[test]
    fn extremes() {
        assert_eq!(min_max_edge_degree(&motif("matching_3", 3).unwrap().graph).unwrap(), (0, 0));
        assert_eq!(min_max_edge_degree(&loose_path(3, 3).unwrap().graph).unwrap(), (1, 2));
        assert_eq!(min_max_edge_degree(&motif("single_edge", 4).unwrap().graph).unwrap(), (0, 0));
        let empty = Hypergraph::empty(3, 3).unwrap();
        assert_eq!(min_max_edge_degree(&empty), Err(Error::EmptyEdgeSet));
    }

    #[test]
    fn weights() {
        assert_eq!(exposure_weights(&motif("single_edge", 3).unwrap().graph, &[0]).unwrap(), [0]);
        assert_eq!(exposure_weights(&loose_path(3, 2).unwrap().graph, &[0, 1]).unwrap(), [0, 1]);
        let t = motif("loose_triangle", 3).unwrap().graph;
        assert_eq!(exposure_weights(&t, &[2, 0, 1]).unwrap(), [0, 1, 2]);
        assert_eq!(exposure_weights(&t, &[0, 0, 1]), Err(Error::InvalidPermutation));
        assert_eq!(exposure_weights(&t, &[0, 1]), Err(Error::InvalidPermutation));
    }

    #[test]
    fn degeneracy_examples() {
        let e = motif("single_edge", 3).unwrap();
        assert_eq!(edge_degeneracy(&e).0, 0);
        assert_eq!(brute_force_degeneracy(&e).unwrap(), 0);
        let p = loose_path_rooted_at_ends(3, 3).unwrap();
        let (d, w) = edge_degeneracy(&p);
        assert_eq!(d, 2);
        assert_eq!(w.max_weight, 2);
        assert!(p.is_root_edge(w.order[0]) && p.is_root_edge(w.order[1]));
        let t = motif("loose_triangle", 3).unwrap();
        assert_eq!(brute_force_degeneracy(&t).unwrap(), 2);
        assert_eq!(brute_force_degeneracy(&motif("star_2", 3).unwrap()).unwrap(), 1);
        assert!(matches!(brute_force_degeneracy(&motif("matching_11", 3).unwrap()), Err(Error::TooManyEdges(11))));
    }

    #[test]
    fn empty_motif() {
        let m = RootedMotif::unrooted(Hypergraph::empty(3, 4).unwrap());
        let (d, w) = edge_degeneracy(&m);
        assert_eq!((d, w.order.len()), (0, 0));
        assert_eq!(brute_force_degeneracy(&m).unwrap(), 0);
    }
}

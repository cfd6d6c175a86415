//! The grid F-factor absorber and the path absorber built from absorbing gadgets.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use serde::Serialize;

use crate::degeneracy::{edge_degeneracy, min_max_edge_degree};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, RootedMotif, Vertex};
use crate::verification::{check_loose_path, Verification};

/// One copy of F inside an absorber: `map[v]` is the image of F-vertex `v`,
/// `edges` the absorber edges that are images of F's edges (in F's order).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorPiece {
    pub map: Vec<Vertex>,
    pub edges: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct FactorAbsorber {
    pub motif: RootedMotif,
    /// Rows: an F-factor of the whole absorber.
    pub complete_factor: Vec<FactorPiece>,
    /// Diagonals: an F-factor of the absorber without its roots.
    pub internal_factor: Vec<FactorPiece>,
    pub source: Hypergraph,
}

/// Grid absorber on Z_f × Z_f; vertex (i, l) has index `i·f + l`.
///
/// Row `i` carries F on {i} × Z_f and diagonal `j` carries F on
/// {(i, i+j)}, both through the second coordinate. The roots are (i, i).
pub fn build_factor_absorber(f_graph: &Hypergraph) -> Result<FactorAbsorber> {
    if !f_graph.is_linear() {
        return Err(Error::NotLinear);
    }
    let k = f_graph.k();
    let f = f_graph.n();
    if f < k {
        return Err(Error::arg(format!("F has {f} vertices, fewer than k = {k}")));
    }
    let ef = f_graph.edge_count();
    let at = |i: usize, l: usize| (i * f + l) as Vertex;
    let mut edges: Vec<Vec<Vertex>> = Vec::with_capacity((2 * f - 1) * ef);
    let mut complete_factor = Vec::with_capacity(f);
    for i in 0..f {
        let map: Vec<Vertex> = (0..f).map(|l| at(i, l)).collect();
        let first = edges.len();
        for e in f_graph.edges() {
            edges.push(e.iter().map(|&l| map[l as usize]).collect());
        }
        complete_factor.push(FactorPiece { map, edges: (first..edges.len()).collect() });
    }
    let mut internal_factor = Vec::with_capacity(f - 1);
    for j in 1..f {
        let map: Vec<Vertex> = (0..f).map(|l| at((l + f - j) % f, l)).collect();
        let first = edges.len();
        for e in f_graph.edges() {
            edges.push(e.iter().map(|&l| map[l as usize]).collect());
        }
        internal_factor.push(FactorPiece { map, edges: (first..edges.len()).collect() });
    }
    let graph = Hypergraph::new(k, f * f, &edges)?;
    let roots = (0..f).map(|i| at(i, i)).collect();
    let motif = RootedMotif { graph, roots, ends: None };
    Ok(FactorAbsorber { motif, complete_factor, internal_factor, source: f_graph.clone() })
}

/// degen(F) + Δ′(F) + k, the bound on the absorber's rooted degeneracy.
pub fn factor_absorber_degeneracy_bound(f_graph: &Hypergraph) -> Result<usize> {
    let (degen, _) = edge_degeneracy(&RootedMotif::unrooted(f_graph.clone()));
    let max_deg = match min_max_edge_degree(f_graph) {
        Ok((_, hi)) => hi,
        Err(Error::EmptyEdgeSet) => 0,
        Err(e) => return Err(e),
    };
    Ok(degen + max_deg + f_graph.k())
}

fn check_pieces(
    out: &mut Verification,
    label: &str,
    graph: &Hypergraph,
    source: &Hypergraph,
    pieces: &[FactorPiece],
    target: &[bool],
) {
    let mut hits = vec![0usize; graph.n()];
    for (p, piece) in pieces.iter().enumerate() {
        if piece.map.len() != source.n() {
            out.push(format!("{label} piece {p} maps {} vertices, F has {}", piece.map.len(), source.n()));
            continue;
        }
        for &v in &piece.map {
            if (v as usize) < graph.n() {
                hits[v as usize] += 1;
            } else {
                out.push(format!("{label} piece {p} uses vertex {v} outside the absorber"));
            }
        }
        let mut sorted = piece.map.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            out.push(format!("{label} piece {p} is not injective"));
        }
        if piece.edges.len() != source.edge_count() {
            out.push(format!("{label} piece {p} lists {} edges, F has {}", piece.edges.len(), source.edge_count()));
            continue;
        }
        for (t, e) in source.edges().enumerate() {
            let image: Vec<Vertex> = e.iter().map(|&l| piece.map.get(l as usize).copied().unwrap_or(Vertex::MAX)).collect();
            match graph.find_edge(&image) {
                Some(idx) if idx == piece.edges[t] => {}
                Some(idx) => out.push(format!(
                    "{label} piece {p}: image of F-edge {t} is edge {idx}, listed as {}",
                    piece.edges[t]
                )),
                None => out.push(format!("{label} piece {p}: image {image:?} of F-edge {t} is not an edge")),
            }
        }
    }
    for v in 0..graph.n() {
        let want = target[v] as usize;
        if hits[v] != want {
            out.push(format!("{label} factor covers vertex {v} {} times, expected {want}", hits[v]));
        }
    }
}

pub fn verify_factor_absorber(a: &FactorAbsorber) -> Verification {
    let mut out = Verification::default();
    let g = &a.motif.graph;
    let f = a.source.n();
    if g.n() != f * f {
        out.push(format!("absorber has {} vertices, expected f² = {}", g.n(), f * f));
    }
    if a.motif.roots.len() != f {
        out.push(format!("absorber has {} roots, expected f = {f}", a.motif.roots.len()));
    }
    if !g.is_linear() {
        out.push("absorber is not linear");
    }
    for v in a.motif.validate() {
        out.push(format!("rooted motif: {v}"));
    }
    if !out.is_ok() {
        return out;
    }
    let everything = vec![true; g.n()];
    check_pieces(&mut out, "complete", g, &a.source, &a.complete_factor, &everything);
    let mut non_roots = vec![true; g.n()];
    for &r in &a.motif.roots {
        non_roots[r as usize] = false;
    }
    check_pieces(&mut out, "internal", g, &a.source, &a.internal_factor, &non_roots);
    match factor_absorber_degeneracy_bound(&a.source) {
        Ok(bound) => {
            let (d, _) = edge_degeneracy(&a.motif);
            if d > bound {
                out.push(format!("rooted edge degeneracy {d} exceeds degen(F)+Δ′(F)+k = {bound}"));
            }
        }
        Err(e) => out.push(format!("source graph: {e}")),
    }
    out
}

/// Absorbing gadget P_i. `c[j]` is c_{i,j+1}, `c_prime[j]` is c′_{i,j+1}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gadget {
    pub a: Vec<Vertex>,
    pub a_prime: Vec<Vertex>,
    pub b: Vec<Vertex>,
    pub c: Vec<Vertex>,
    pub c_prime: Vec<Vertex>,
    pub c_star: Vertex,
    pub e: usize,
    pub e_prime: usize,
    pub f: usize,
    pub f_prime: usize,
    pub g: usize,
}

impl Gadget {
    /// f, e, e′, f′: covers C ∪ A ∪ A′.
    pub fn outer(&self) -> [usize; 4] {
        [self.f, self.e, self.e_prime, self.f_prime]
    }

    /// f, g, f′: covers C ∪ B.
    pub fn inner(&self) -> [usize; 3] {
        [self.f, self.g, self.f_prime]
    }
}

#[derive(Clone, Debug)]
pub struct PathAbsorber {
    pub k: usize,
    pub motif: RootedMotif,
    pub complete_path: Vec<usize>,
    pub internal_path: Vec<usize>,
    pub gadgets: Vec<Gadget>,
    /// Edge indices of h_1, ..., h_{2k-4}.
    pub connectors: Vec<usize>,
    pub connector_sets: Vec<Vec<Vertex>>,
}

pub fn path_absorber_order(k: usize) -> usize {
    9 * k * k + 15 - 23 * k
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Label {
    X(usize),
    U(usize, usize),
    V(usize, usize),
    W(usize, usize),
}

/// Path absorber with roots x_1..x_{k-1} and ends c_{1,1}, c′_{2k-3,k}.
///
/// Gadgets 1..k-1 take their outer path and gadgets k..2k-3 their inner path
/// in the complete path; the internal path makes the opposite choice.
pub fn build_path_absorber(k: usize) -> Result<PathAbsorber> {
    if k < 3 {
        return Err(Error::arg("path absorbers need k >= 3"));
    }
    let km = (k - 1) as isize;
    let md = |x: usize| (x as isize).rem_euclid(km);
    let last = 2 * k - 3;

    let mut labels: BTreeMap<Label, Vertex> = BTreeMap::new();
    let mut next: Vertex = 0;
    let mut alloc_label = |l: Label, labels: &mut BTreeMap<Label, Vertex>| {
        labels.insert(l, next);
        next += 1;
    };
    for i in 1..k {
        alloc_label(Label::X(i), &mut labels);
    }
    for i in 1..k {
        for j in 1..k {
            if md(i) != md(j) && md(i) != md(j - 1) {
                alloc_label(Label::U(i, j), &mut labels);
            }
        }
    }
    for i in 1..k {
        for j in k..=last {
            alloc_label(Label::V(i, j), &mut labels);
        }
    }
    for i in k..=last {
        for j in k..=last {
            if i != j {
                alloc_label(Label::W(i, j), &mut labels);
            }
        }
    }
    let get = |l: Label| -> Result<Vertex> {
        labels.get(&l).copied().ok_or_else(|| Error::arg("gadget assignment refers to an unassigned label"))
    };

    let mut edges: Vec<Vec<Vertex>> = Vec::new();
    let mut gadgets = Vec::with_capacity(last);
    for i in 1..=last {
        let (a, a_prime, b) = if i < k {
            let mut a = vec![get(Label::X(i))?];
            for l in 1..k {
                if md(l) != md(i) && md(l) != md(i + 1) {
                    a.push(get(Label::U(i, l))?);
                }
            }
            let a_prime = (k..=last).map(|l| get(Label::V(i, l))).collect::<Result<Vec<_>>>()?;
            let mut b = Vec::new();
            for l in 1..k {
                if md(l) != md(i - 1) && md(l) != md(i) {
                    b.push(get(Label::U(l, i))?);
                }
            }
            (a, a_prime, b)
        } else {
            let mut a = vec![get(Label::V(i - k + 1, i))?];
            for l in k..=last {
                if l != i {
                    a.push(get(Label::W(i, l))?);
                }
            }
            let a_prime = (1..k).filter(|&l| l != i - k + 1).map(|l| get(Label::V(l, i))).collect::<Result<Vec<_>>>()?;
            let b = (k..=last).filter(|&l| l != i).map(|l| get(Label::W(l, i))).collect::<Result<Vec<_>>>()?;
            (a, a_prime, b)
        };
        let c: Vec<Vertex> = (0..k as Vertex).map(|j| next + j).collect();
        let c_prime: Vec<Vertex> = (0..k as Vertex).map(|j| next + k as Vertex + j).collect();
        let c_star = next + 2 * k as Vertex;
        next += 2 * k as Vertex + 1;

        let base = edges.len();
        let mut e = vec![c[1], c_star];
        e.extend(&a);
        let mut e_prime = vec![c_prime[1], c_star];
        e_prime.extend(&a_prime);
        let mut g = vec![c[k - 1], c_star, c_prime[0]];
        g.extend(&b);
        edges.extend([e, e_prime, c.clone(), c_prime.clone(), g]);
        gadgets.push(Gadget {
            a,
            a_prime,
            b,
            c,
            c_prime,
            c_star,
            e: base,
            e_prime: base + 1,
            f: base + 2,
            f_prime: base + 3,
            g: base + 4,
        });
    }
    let mut connectors = Vec::with_capacity(last - 1);
    let mut connector_sets = Vec::with_capacity(last - 1);
    for i in 0..last - 1 {
        let d: Vec<Vertex> = (0..(k - 2) as Vertex).map(|j| next + j).collect();
        next += (k - 2) as Vertex;
        let mut h = vec![gadgets[i].c_prime[k - 1], gadgets[i + 1].c[0]];
        h.extend(&d);
        connectors.push(edges.len());
        edges.push(h);
        connector_sets.push(d);
    }

    let n = next as usize;
    let graph = Hypergraph::new(k, n, &edges)?;
    let roots: Vec<Vertex> = (1..k).map(|i| labels[&Label::X(i)]).collect();
    let ends = (gadgets[0].c[0], gadgets[last - 1].c_prime[k - 1]);
    let motif = RootedMotif { graph, roots, ends: Some(ends) };

    let assemble = |outer_first: bool| {
        let mut path = Vec::new();
        for (idx, gd) in gadgets.iter().enumerate() {
            if idx > 0 {
                path.push(connectors[idx - 1]);
            }
            if (idx + 1 < k) == outer_first {
                path.extend(gd.outer());
            } else {
                path.extend(gd.inner());
            }
        }
        path
    };
    let complete_path = assemble(true);
    let internal_path = assemble(false);
    Ok(PathAbsorber { k, motif, complete_path, internal_path, gadgets, connectors, connector_sets })
}

pub fn verify_path_absorber(a: &PathAbsorber) -> Verification {
    let mut out = Verification::default();
    let k = a.k;
    let g = &a.motif.graph;
    if k < 3 {
        out.push("path absorbers need k >= 3");
        return out;
    }
    if g.n() != path_absorber_order(k) {
        out.push(format!("absorber has {} vertices, expected 9k²−23k+15 = {}", g.n(), path_absorber_order(k)));
    }
    if a.motif.roots.len() != k - 1 {
        out.push(format!("absorber has {} roots, expected k−1 = {}", a.motif.roots.len(), k - 1));
    }
    if !g.is_linear() {
        out.push("absorber is not linear");
    }
    for v in a.motif.validate() {
        out.push(format!("rooted motif: {v}"));
    }
    if a.gadgets.len() != 2 * k - 3 || a.connectors.len() != 2 * k - 4 {
        out.push(format!("expected {} gadgets and {} connectors", 2 * k - 3, 2 * k - 4));
        return out;
    }
    let Some(ends) = a.motif.ends else {
        out.push("absorber has no ends");
        return out;
    };
    let want_ends = (a.gadgets[0].c[0], a.gadgets[2 * k - 4].c_prime[k - 1]);
    if ends != want_ends {
        out.push(format!("ends {ends:?} differ from (c_11, c′_(2k−3)k) = {want_ends:?}"));
    }
    let edge_is = |idx: usize, want: &[Vertex]| -> bool {
        let mut w = want.to_vec();
        w.sort_unstable();
        idx < g.edge_count() && g.edge(idx) == w.as_slice()
    };
    for (i, gd) in a.gadgets.iter().enumerate() {
        let (na, nb) = (gd.a.len(), gd.b.len());
        if na != k - 2 || gd.a_prime.len() != k - 2 || nb != k - 3 || gd.c.len() != k || gd.c_prime.len() != k {
            out.push(format!("gadget {} has part sizes |A|={na}, |A′|={}, |B|={nb}", i + 1, gd.a_prime.len()));
            continue;
        }
        let mut e = vec![gd.c[1], gd.c_star];
        e.extend(&gd.a);
        let mut e_prime = vec![gd.c_prime[1], gd.c_star];
        e_prime.extend(&gd.a_prime);
        let mut gg = vec![gd.c[k - 1], gd.c_star, gd.c_prime[0]];
        gg.extend(&gd.b);
        for (name, idx, want) in [
            ("e", gd.e, e),
            ("e′", gd.e_prime, e_prime),
            ("f", gd.f, gd.c.clone()),
            ("f′", gd.f_prime, gd.c_prime.clone()),
            ("g", gd.g, gg),
        ] {
            if !edge_is(idx, &want) {
                out.push(format!("gadget {}: edge {name} (index {idx}) does not match its definition", i + 1));
            }
        }
    }
    for (i, (&h, d)) in a.connectors.iter().zip(&a.connector_sets).enumerate() {
        let mut want = vec![a.gadgets[i].c_prime[k - 1], a.gadgets[i + 1].c[0]];
        want.extend(d);
        if d.len() != k - 2 || !edge_is(h, &want) {
            out.push(format!("connector h_{} does not match its definition", i + 1));
        }
    }
    let mut path_check = |label: &str, path: &[usize], expect: Vec<Vertex>| {
        if path.iter().any(|&e| e >= g.edge_count()) {
            out.push(format!("{label} path refers to a missing edge"));
            return;
        }
        let edges: Vec<&[Vertex]> = path.iter().map(|&e| g.edge(e)).collect();
        match check_loose_path(&edges, ends) {
            Err(msg) => out.push(format!("{label} path: {msg}")),
            Ok(covered) if covered != expect => {
                out.push(format!("{label} path covers {} vertices, expected {}", covered.len(), expect.len()))
            }
            Ok(_) => {}
        }
    };
    path_check("complete", &a.complete_path, (0..g.n() as Vertex).collect());
    let internal: Vec<Vertex> = (0..g.n() as Vertex).filter(|v| !a.motif.roots.contains(v)).collect();
    path_check("internal", &a.internal_path, internal);
    let (d, _) = edge_degeneracy(&a.motif);
    if d > k - 1 {
        out.push(format!("rooted edge degeneracy {d} exceeds k−1 = {}", k - 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{loose_path, motif};

    #[test]
    fn single_edge_grid() {
        let f = motif("single_edge", 3).unwrap().graph;
        let a = build_factor_absorber(&f).unwrap();
        assert_eq!((a.motif.v(), a.motif.roots.len(), a.motif.e()), (9, 3, 5));
        assert!(a.motif.graph.is_linear());
        assert!(verify_factor_absorber(&a).is_ok());
        assert_eq!(factor_absorber_degeneracy_bound(&f).unwrap(), 3);
        assert!(edge_degeneracy(&a.motif).0 <= 3);
    }

    #[test]
    fn path_grid() {
        let f = loose_path(3, 2).unwrap().graph;
        let a = build_factor_absorber(&f).unwrap();
        assert_eq!((a.motif.v(), a.motif.roots.len(), a.motif.e()), (25, 5, 18));
        assert!(verify_factor_absorber(&a).is_ok());
        assert!(edge_degeneracy(&a.motif).0 <= 5);
    }

    #[test]
    fn factor_absorber_rejects_non_linear() {
        let f = Hypergraph::new(3, 4, [[0, 1, 2], [0, 1, 3]]).unwrap();
        assert!(matches!(build_factor_absorber(&f), Err(Error::NotLinear)));
    }

    #[test]
    fn factor_mutations_are_caught() {
        let f = motif("single_edge", 3).unwrap().graph;
        let a = build_factor_absorber(&f).unwrap();
        let mut cut = a.clone();
        let drop = a.internal_factor[0].edges[0];
        let kept: Vec<Vec<Vertex>> =
            (0..a.motif.e()).filter(|&i| i != drop).map(|i| a.motif.graph.edge(i).to_vec()).collect();
        cut.motif.graph = Hypergraph::new(3, 9, &kept).unwrap();
        assert!(!verify_factor_absorber(&cut).is_ok());

        let mut dup = a.clone();
        dup.complete_factor[1].map[0] = dup.complete_factor[0].map[0];
        assert!(!verify_factor_absorber(&dup).is_ok());
    }

    #[test]
    fn path_absorber_k3() {
        let a = build_path_absorber(3).unwrap();
        assert_eq!((a.motif.v(), a.motif.roots.len(), a.motif.e()), (27, 2, 17));
        for gd in &a.gadgets {
            assert_eq!((gd.a.len(), gd.a_prime.len(), gd.b.len(), gd.c.len() + gd.c_prime.len() + 1), (1, 1, 0, 7));
        }
        assert_eq!(a.motif.ends, Some((a.gadgets[0].c[0], a.gadgets[2].c_prime[2])));
        assert!(verify_path_absorber(&a).is_ok(), "{:?}", verify_path_absorber(&a));
        assert_eq!(edge_degeneracy(&a.motif).0, 2);
    }

    #[test]
    fn path_absorber_sizes() {
        let a = build_path_absorber(4).unwrap();
        assert_eq!(a.motif.v(), 67);
        assert!(verify_path_absorber(&a).is_ok());
        assert_eq!(edge_degeneracy(&a.motif).0, 3);
        let b = build_path_absorber(5).unwrap();
        assert_eq!(b.motif.v(), 125);
        assert!(verify_path_absorber(&b).is_ok());
        assert!(build_path_absorber(2).is_err());
    }

    #[test]
    fn swapped_paths_fail() {
        let mut a = build_path_absorber(3).unwrap();
        core::mem::swap(&mut a.complete_path, &mut a.internal_path);
        assert!(!verify_path_absorber(&a).is_ok());
    }
}

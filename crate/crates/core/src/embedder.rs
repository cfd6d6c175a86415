//! Rooted-copy search and counting, the greedy builder and T-compatible families.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use serde::Serialize;

use crate::degeneracy::edge_degeneracy;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, RootedMotif, Vertex, MAX_UNIFORMITY};
use crate::rng;
use crate::set::VertexSet;
use crate::verification::Verification;

const UNSET: Vertex = Vertex::MAX;

/// `image[v]` is the host vertex of motif vertex `v`; roots go to `root_targets`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootedEmbedding {
    pub image: Vec<Vertex>,
    pub root_targets: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(RootedEmbedding),
    NotFound,
    BudgetExhausted { nodes: u64 },
}

impl SearchOutcome {
    pub fn found(self) -> Option<RootedEmbedding> {
        match self {
            SearchOutcome::Found(e) => Some(e),
            _ => None,
        }
    }
}

impl RootedEmbedding {
    /// Non-root images, in motif-vertex order.
    pub fn non_root_images<'a>(&'a self, motif: &'a RootedMotif) -> impl Iterator<Item = Vertex> + 'a {
        self.image.iter().enumerate().filter(|(v, _)| !motif.is_root(*v as Vertex)).map(|(_, &x)| x)
    }

    /// Injective, edge preserving, roots on target and non-roots in `allowed ∖ Y`.
    pub fn check(&self, h: &Hypergraph, motif: &RootedMotif, allowed: Option<&VertexSet>) -> core::result::Result<(), String> {
        if self.image.len() != motif.v() {
            return Err(format!("image has {} entries, motif has {} vertices", self.image.len(), motif.v()));
        }
        if self.root_targets.len() != motif.roots.len() {
            return Err("root tuple length differs from the motif's".into());
        }
        if self.image.iter().any(|&x| x as usize >= h.n()) {
            return Err("image leaves the host".into());
        }
        let mut sorted = self.image.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err("image is not injective".into());
        }
        for (i, &x) in motif.roots.iter().enumerate() {
            if self.image[x as usize] != self.root_targets[i] {
                return Err(format!("root {i} maps to {} instead of {}", self.image[x as usize], self.root_targets[i]));
            }
        }
        for (v, &x) in self.image.iter().enumerate() {
            if motif.is_root(v as Vertex) {
                continue;
            }
            if self.root_targets.contains(&x) {
                return Err(format!("non-root vertex {v} maps onto root target {x}"));
            }
            if let Some(u) = allowed {
                if !u.contains(x) {
                    return Err(format!("non-root vertex {v} maps to {x}, outside the allowed set"));
                }
            }
        }
        for (i, e) in motif.graph.edges().enumerate() {
            let img: Vec<Vertex> = e.iter().map(|&v| self.image[v as usize]).collect();
            if !h.contains_edge(&img) {
                return Err(format!("motif edge {i} maps to {img:?}, which is not an edge"));
            }
        }
        Ok(())
    }
}

struct Step {
    mapped: Vec<Vertex>,
    fresh: Vec<Vertex>,
}

/// Search order: root edges first, then repeatedly the edge with the most
/// vertices already placed (ties to the degeneracy witness order), then
/// vertices lying in no edge.
fn plan(m: &RootedMotif) -> Vec<Step> {
    let g = &m.graph;
    let (_, witness) = edge_degeneracy(m);
    let mut placed = vec![false; g.n()];
    for &r in &m.roots {
        placed[r as usize] = true;
    }
    let mut left = witness.order;
    let mut steps = Vec::with_capacity(left.len() + 1);
    while !left.is_empty() {
        let roots_pending = left.iter().any(|&e| m.is_root_edge(e));
        let pos = left
            .iter()
            .enumerate()
            .filter(|(_, &e)| !roots_pending || m.is_root_edge(e))
            .max_by_key(|(i, &e)| (g.edge(e).iter().filter(|&&v| placed[v as usize]).count(), usize::MAX - i))
            .map(|(i, _)| i)
            .expect("non-empty");
        let e = left.remove(pos);
        let (mapped, fresh): (Vec<Vertex>, Vec<Vertex>) = g.edge(e).iter().partition(|&&v| placed[v as usize]);
        for &v in &fresh {
            placed[v as usize] = true;
        }
        steps.push(Step { mapped, fresh });
    }
    for v in 0..g.n() as Vertex {
        if !placed[v as usize] {
            steps.push(Step { mapped: Vec::new(), fresh: vec![v] });
        }
    }
    steps
}

struct Search<'a> {
    h: &'a Hypergraph,
    steps: &'a [Step],
    allowed: &'a VertexSet,
    allowed_len: usize,
    image: Vec<Vertex>,
    used: VertexSet,
    nodes: u64,
    budget: u64,
    count_all: bool,
    count: u64,
    exhausted: bool,
}

impl Search<'_> {
    #[inline]
    fn free(&self, x: Vertex) -> bool {
        self.allowed.contains(x) && !self.used.contains(x)
    }

    /// Returns true when the search should stop.
    fn go(&mut self, s: usize) -> bool {
        if s == self.steps.len() {
            self.count += 1;
            return !self.count_all;
        }
        let step = &self.steps[s];
        let k = self.h.k();
        if step.mapped.is_empty() && step.fresh.len() == 1 {
            // a vertex in no edge
            let v = step.fresh[0];
            for x in 0..self.h.n() as Vertex {
                if self.free(x) && self.place(s, &[v], &[x]) {
                    return true;
                }
                if self.exhausted {
                    return true;
                }
            }
            return false;
        }
        let mut key = [0 as Vertex; MAX_UNIFORMITY];
        for (i, &v) in step.mapped.iter().enumerate() {
            key[i] = self.image[v as usize];
        }
        let a = step.mapped.len();
        if step.fresh.is_empty() {
            key[..k].sort_unstable();
            return self.h.find_sorted_edge(&key[..k]).is_some() && self.go(s + 1);
        }
        if a == 0 {
            // each free edge once, through its smallest vertex
            let h = self.h;
            for x in 0..h.n() as Vertex {
                if !self.free(x) {
                    continue;
                }
                for &ei in h.incident(x) {
                    let e = h.edge(ei as usize);
                    if e[0] == x && e.iter().all(|&y| self.free(y)) {
                        let cands: Vec<Vertex> = e.to_vec();
                        if self.assign_all(s, &step.fresh, &cands) {
                            return true;
                        }
                    }
                }
            }
            return false;
        }
        let anchor = *key[..a].iter().min_by_key(|&&x| self.h.vertex_degree(x)).expect("a >= 1");
        if step.fresh.len() == 1 && a >= 2 && self.allowed_len * 8 < self.h.vertex_degree(anchor) {
            for x in self.allowed.iter() {
                if self.used.contains(x) {
                    continue;
                }
                key[a] = x;
                let mut sorted = key;
                sorted[..k].sort_unstable();
                if self.h.find_sorted_edge(&sorted[..k]).is_some() {
                    if self.place(s, &step.fresh, &[x]) {
                        return true;
                    }
                    if self.exhausted {
                        return true;
                    }
                }
            }
            return false;
        }
        let mapped_imgs = &key[..a];
        for &ei in self.h.incident(anchor) {
            let e = self.h.edge(ei as usize);
            if !mapped_imgs.iter().all(|x| e.contains(x)) {
                continue;
            }
            let cands: Vec<Vertex> = e.iter().copied().filter(|x| !mapped_imgs.contains(x)).collect();
            if cands.iter().all(|&x| self.free(x)) && self.assign_all(s, &step.fresh, &cands) {
                return true;
            }
        }
        false
    }

    /// Tries every bijection from `fresh` onto `cands`.
    fn assign_all(&mut self, s: usize, fresh: &[Vertex], cands: &[Vertex]) -> bool {
        let b = fresh.len();
        let mut perm: Vec<Vertex> = cands.to_vec();
        let mut c = vec![0usize; b];
        if self.place(s, fresh, &perm) || self.exhausted {
            return true;
        }
        // Heap's algorithm
        let mut i = 0;
        while i < b {
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(c[i], i);
                }
                if self.place(s, fresh, &perm) || self.exhausted {
                    return true;
                }
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        false
    }

    fn place(&mut self, s: usize, fresh: &[Vertex], xs: &[Vertex]) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return true;
        }
        for (&v, &x) in fresh.iter().zip(xs) {
            self.image[v as usize] = x;
            self.used.insert(x);
        }
        let stop = self.go(s + 1);
        if stop && !self.exhausted && !self.count_all {
            return true;
        }
        for (&v, &x) in fresh.iter().zip(xs) {
            self.image[v as usize] = UNSET;
            self.used.remove(x);
        }
        stop
    }
}

fn start<'a>(
    h: &'a Hypergraph,
    m: &RootedMotif,
    y: &[Vertex],
    u: &'a VertexSet,
    steps: &'a [Step],
    budget: u64,
    count_all: bool,
) -> Result<Search<'a>> {
    if m.graph.k() != h.k() {
        return Err(Error::arg("motif and host have different uniformity"));
    }
    if y.len() != m.roots.len() {
        return Err(Error::arg(format!("{} root targets for {} roots", y.len(), m.roots.len())));
    }
    if u.universe() != h.n() {
        return Err(Error::arg("allowed set is over the wrong universe"));
    }
    let mut used = VertexSet::new(h.n());
    for &x in y {
        if x as usize >= h.n() {
            return Err(Error::VertexOutOfRange { vertex: x as usize, n: h.n() });
        }
        if !used.insert(x) {
            return Err(Error::arg("root targets must be distinct"));
        }
    }
    let mut image = vec![UNSET; m.v()];
    for (&r, &x) in m.roots.iter().zip(y) {
        image[r as usize] = x;
    }
    Ok(Search {
        h,
        steps,
        allowed: u,
        allowed_len: u.len(),
        image,
        used,
        nodes: 0,
        budget,
        count_all,
        count: 0,
        exhausted: false,
    })
}

/// Backtracking search for a copy of `m` with roots on `y` and all other
/// vertices in `u ∖ y`. Candidates come from the host edges through the
/// lowest-degree embedded vertex of the next motif edge.
pub fn find_rooted_copy(h: &Hypergraph, m: &RootedMotif, y: &[Vertex], u: &VertexSet, budget: u64) -> Result<SearchOutcome> {
    let steps = plan(m);
    let mut s = start(h, m, y, u, &steps, budget, false)?;
    s.go(0);
    if s.exhausted {
        return Ok(SearchOutcome::BudgetExhausted { nodes: s.nodes - 1 });
    }
    if s.count == 0 {
        return Ok(SearchOutcome::NotFound);
    }
    Ok(SearchOutcome::Found(RootedEmbedding { image: s.image, root_targets: y.to_vec() }))
}

/// Number of rooted embeddings of `m` (labelled).
pub fn count_rooted_copies(h: &Hypergraph, m: &RootedMotif, y: &[Vertex], u: &VertexSet, budget: u64) -> Result<u64> {
    let steps = plan(m);
    let mut s = start(h, m, y, u, &steps, budget, true)?;
    s.go(0);
    if s.exhausted {
        return Err(Error::BudgetExhausted(budget));
    }
    Ok(s.count)
}

/// ½ (cp)^{e(F)} |U|^f.
pub fn counting_lower_bound(c: f64, p: f64, edge_count: usize, u_size: usize, f: usize) -> f64 {
    0.5 * libm::pow(c * p, edge_count as f64) * libm::pow(u_size as f64, f as f64)
}

/// Copies indexed by the edges of an auxiliary r-graph T (root tuples).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompatibleFamily {
    #[serde(skip)]
    pub motif: RootedMotif,
    pub template_edges: Vec<Vec<Vertex>>,
    pub copies: Vec<Option<RootedEmbedding>>,
    /// Template edges without a copy.
    pub failed: Vec<usize>,
    /// The subset of `failed` whose search hit the node budget.
    pub budget_exhausted: Vec<usize>,
}

impl CompatibleFamily {
    pub fn template_vertices(&self, n: usize) -> VertexSet {
        let mut s = VertexSet::new(n);
        for e in &self.template_edges {
            for &v in e {
                s.insert(v);
            }
        }
        s
    }

    /// All vertices used by copies, roots included.
    pub fn vertices(&self, n: usize) -> VertexSet {
        let mut s = VertexSet::new(n);
        for emb in self.copies.iter().flatten() {
            for &v in &emb.image {
                s.insert(v);
            }
        }
        s
    }
}

/// Greedy builder: embed a copy rooted at each tuple in turn, each time inside
/// what is left of `x`.
pub fn greedy_builder(
    h: &Hypergraph,
    m: &RootedMotif,
    ordered_edges: &[Vec<Vertex>],
    x: &VertexSet,
    budget: u64,
) -> Result<CompatibleFamily> {
    let mut xs = x.clone();
    let mut copies = Vec::with_capacity(ordered_edges.len());
    let mut failed = Vec::new();
    let mut budget_exhausted = Vec::new();
    for (s, e) in ordered_edges.iter().enumerate() {
        match find_rooted_copy(h, m, e, &xs, budget)? {
            SearchOutcome::Found(emb) => {
                for v in emb.non_root_images(m) {
                    xs.remove(v);
                }
                copies.push(Some(emb));
            }
            SearchOutcome::NotFound => {
                failed.push(s);
                copies.push(None);
            }
            SearchOutcome::BudgetExhausted { .. } => {
                failed.push(s);
                budget_exhausted.push(s);
                copies.push(None);
            }
        }
    }
    Ok(CompatibleFamily { motif: m.clone(), template_edges: ordered_edges.to_vec(), copies, failed, budget_exhausted })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyConfig {
    /// Enforce the size conditions instead of warning about them.
    pub strict: bool,
    pub c: f64,
    /// Density parameter; the host's p̂ when absent.
    pub p: Option<f64>,
    pub delta: usize,
    /// Pragmatic mode: share of the free pool reserved as U (W gets the rest).
    pub u_share: f64,
    pub budget: u64,
    pub seed: u64,
}

impl Default for FamilyConfig {
    fn default() -> Self {
        FamilyConfig { strict: false, c: 0.1, p: None, delta: 40, u_share: 2.0 / 3.0, budget: 2_000_000, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyOutcome {
    pub family: CompatibleFamily,
    pub warnings: Vec<String>,
    /// Sizes of T_1, T_2 and T_3.
    pub phase_sizes: [usize; 3],
}

/// Three-phase construction: tuples touching vertices of low degree into the
/// reserve W are embedded first anywhere in the free pool, the rest greedily
/// into U, and the failures of that pass into W.
pub fn build_compatible_family(
    h: &Hypergraph,
    m: &RootedMotif,
    t_edges: &[Vec<Vertex>],
    host: &VertexSet,
    config: &FamilyConfig,
) -> Result<FamilyOutcome> {
    let n = h.n();
    let k = h.k();
    let mut warnings = Vec::new();
    let empty = CompatibleFamily {
        motif: m.clone(),
        template_edges: Vec::new(),
        copies: Vec::new(),
        failed: Vec::new(),
        budget_exhausted: Vec::new(),
    };
    if t_edges.is_empty() {
        return Ok(FamilyOutcome { family: empty, warnings, phase_sizes: [0; 3] });
    }
    let r = m.roots.len();
    let mut vt = VertexSet::new(n);
    let mut deg_t = vec![0usize; n];
    for e in t_edges {
        if e.len() != r {
            return Err(Error::arg(format!("template edge {e:?} has {} vertices, motif has {r} roots", e.len())));
        }
        for &v in e {
            if v as usize >= n {
                return Err(Error::VertexOutOfRange { vertex: v as usize, n });
            }
            vt.insert(v);
            deg_t[v as usize] += 1;
        }
    }
    let delta_t = deg_t.iter().copied().max().unwrap_or(0);
    if delta_t > config.delta {
        return Err(Error::arg(format!("Δ_1(T) = {delta_t} exceeds Δ = {}", config.delta)));
    }
    let f = m.v();
    let y_cap = n as f64 / (200.0 * (config.delta * config.delta) as f64 * ((r + f) * (r + f)) as f64);
    if vt.len() as f64 > y_cap {
        let msg = format!("|V_T| = {} exceeds n/(200Δ²(r+f)²) = {y_cap:.3}", vt.len());
        if config.strict {
            return Err(Error::phase("family", msg));
        }
        warnings.push(msg);
    }
    let p = config.p.unwrap_or_else(|| h.degree_report().density);
    let mut free = host.clone();
    free.difference_with(&vt);
    let mut pool: Vec<Vertex> = free.iter().collect();
    let reserve = if config.strict {
        let gamma = 1.0 / (100.0 * config.delta as f64 * f as f64);
        libm::ceil(2.0 * gamma * n as f64) as usize
    } else {
        0
    };
    let (u_size, w_size) = if config.strict {
        (reserve, reserve)
    } else {
        let u = libm::round(pool.len() as f64 * config.u_share) as usize;
        (u, pool.len() - u)
    };
    if u_size + w_size > pool.len() || u_size == 0 || w_size == 0 {
        return Err(Error::phase(
            "family",
            format!("cannot reserve U and W ({u_size} + {w_size}) from {} free vertices", pool.len()),
        ));
    }
    pool.shuffle(&mut rng::stream(config.seed, rng::FAMILY));
    let u_set = VertexSet::from_slice(n, &pool[..u_size])?;
    let w_set = VertexSet::from_slice(n, &pool[u_size..u_size + w_size])?;

    let w_len = w_set.len() as f64;
    let free_len = free.len() as f64;
    let low_into_free = libm::pow(free_len, (k - 1) as f64) * config.c * p;
    let mut short = 0;
    let mut bad = VertexSet::new(n);
    let bad_threshold = 2.0 * config.c * p * libm::pow(w_len, (k - 1) as f64);
    for v in vt.iter() {
        if (h.degree_into_set(v, &free) as f64) < low_into_free {
            short += 1;
        }
        if (h.degree_into_set(v, &w_set) as f64) < bad_threshold {
            bad.insert(v);
        }
    }
    if short > 0 {
        let msg = format!("{short} template vertices have deg(v; V∖Y) below c·p·|V∖Y|^(k−1)");
        if config.strict {
            return Err(Error::phase("family", msg));
        }
        warnings.push(msg);
    }

    let t1: Vec<usize> = (0..t_edges.len()).filter(|&i| t_edges[i].iter().any(|&v| bad.contains(v))).collect();
    let t_rest: Vec<usize> = (0..t_edges.len()).filter(|&i| !t_edges[i].iter().any(|&v| bad.contains(v))).collect();
    let pick = |idx: &[usize]| idx.iter().map(|&i| t_edges[i].clone()).collect::<Vec<_>>();

    let fam1 = greedy_builder(h, m, &pick(&t1), &free, config.budget)?;
    let used1 = fam1.vertices(n);
    let mut u_prime = u_set;
    u_prime.difference_with(&used1);
    let mut w_prime = w_set;
    w_prime.difference_with(&used1);
    let fam2 = greedy_builder(h, m, &pick(&t_rest), &u_prime, config.budget)?;
    let t3: Vec<usize> = fam2
        .failed
        .iter()
        .map(|&i| t_rest[i])
        .chain(fam1.failed.iter().map(|&i| t1[i]))
        .collect();
    let fam3 = greedy_builder(h, m, &pick(&t3), &w_prime, config.budget)?;

    let mut copies: Vec<Option<RootedEmbedding>> = vec![None; t_edges.len()];
    for (fam, idx) in [(&fam1, &t1), (&fam2, &t_rest), (&fam3, &t3)] {
        for (j, c) in fam.copies.iter().enumerate() {
            if let Some(emb) = c {
                copies[idx[j]] = Some(emb.clone());
            }
        }
    }
    let mut failed: Vec<usize> = fam3.failed.iter().map(|&j| t3[j]).collect();
    failed.sort_unstable();
    let mut budget_exhausted: Vec<usize> = fam3.budget_exhausted.iter().map(|&j| t3[j]).collect();
    budget_exhausted.sort_unstable();
    let family = CompatibleFamily {
        motif: m.clone(),
        template_edges: t_edges.to_vec(),
        copies,
        failed,
        budget_exhausted,
    };
    Ok(FamilyOutcome { family, warnings, phase_sizes: [t1.len(), t_rest.len(), t3.len()] })
}

/// Checks each copy and the three compatibility conditions: (1) the copy is
/// rooted at its tuple, (2) it meets V_T only there, (3) two copies meet only
/// in shared roots.
pub fn verify_compatible(fam: &CompatibleFamily, h: &Hypergraph) -> Verification {
    let mut out = Verification::default();
    let n = h.n();
    let vt = fam.template_vertices(n);
    let mut owner: Vec<usize> = vec![usize::MAX; n];
    if fam.copies.len() != fam.template_edges.len() {
        out.push("copies and template edges differ in number");
        return out;
    }
    for (i, (e, c)) in fam.template_edges.iter().zip(&fam.copies).enumerate() {
        let Some(emb) = c else {
            if !fam.failed.contains(&i) {
                out.push(format!("template edge {i} has no copy but is not listed as failed"));
            }
            continue;
        };
        if fam.failed.contains(&i) {
            out.push(format!("template edge {i} has a copy but is listed as failed"));
        }
        if emb.root_targets != *e {
            out.push(format!("condition 1: copy {i} is rooted at {:?}, not {e:?}", emb.root_targets));
        }
        if let Err(msg) = emb.check(h, &fam.motif, None) {
            out.push(format!("copy {i}: {msg}"));
            continue;
        }
        for x in emb.non_root_images(&fam.motif) {
            if vt.contains(x) {
                out.push(format!("condition 2: copy {i} uses template vertex {x} outside its own edge"));
            }
            let o = &mut owner[x as usize];
            if *o != usize::MAX {
                out.push(format!("condition 3: copies {} and {i} share non-root vertex {x}", *o));
            } else {
                *o = i;
            }
        }
    }
    out
}

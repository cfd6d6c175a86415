//! The absorbing structure: the host parts, the patch U for low-degree
//! vertices, the flexible template placed on Y and its compatible family of
//! absorbers (chained into one path for Hamilton cycles).

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::{IndexedRandom, SliceRandom};
use serde::{Deserialize, Serialize};

use crate::absorbers::{build_factor_absorber, build_path_absorber, FactorAbsorber, PathAbsorber};
use crate::embedder::{build_compatible_family, greedy_builder, CompatibleFamily, FamilyConfig};
use crate::error::{Error, Result};
use crate::generators::{binomial, loose_path_rooted_at_ends};
use crate::hypergraph::{Hypergraph, Vertex};
use crate::rng;
use crate::set::VertexSet;
use crate::templates::{build_template, matching_after_removal, Template};

use super::cover::{cover_small_set, CoverMode};
use super::{verify_factor_pieces, verify_spanning_path, Piece, PipelineConfig, Target};

#[derive(Clone, Debug)]
enum Absorber {
    Factor(FactorAbsorber),
    Path(PathAbsorber),
}

#[derive(Clone, Debug)]
pub struct AbsorbingStructure {
    pub target: Target,
    pub m: usize,
    pub g: usize,
    /// Uniformity of the template: v(F), or k − 1.
    pub r: usize,
    pub p_hat: f64,
    pub template: Template,
    /// Host vertex of each template vertex.
    pub t_to_host: Vec<Vertex>,
    pub z1: Vec<Vertex>,
    pub z2: Vec<Vertex>,
    /// Image of the flexible set, Z_1 ∪ Z_2.
    pub z: VertexSet,
    pub y: VertexSet,
    pub w: VertexSet,
    /// Factor mode: the F-copies covering the patch U.
    pub u_pieces: Vec<Piece>,
    /// Hamilton mode: the loose path through U, from `u_ends.0` to `u_ends.1`.
    pub u_path: Vec<Vec<Vertex>>,
    pub u_ends: Option<(Vertex, Vertex)>,
    pub u_set: VertexSet,
    pub family: CompatibleFamily,
    /// Hamilton mode: connectors chaining the U path and the absorbers.
    pub connectors: Vec<Vec<Vec<Vertex>>>,
    /// Y together with every absorber and connector vertex.
    pub a_set: VertexSet,
    /// Hamilton mode: ends a_1, a_2 of the absorbing path.
    pub a_ends: Option<(Vertex, Vertex)>,
    pub bad_sizes: Vec<usize>,
    pub size_bound: f64,
    pub family_phase_sizes: [usize; 3],
    /// Vertices outside A ∪ U with deg(v; Z_i) ≤ (p/4)|Z_i|^(k−1).
    pub low_into_z: usize,
    pub warnings: Vec<String>,
    pub phases: Vec<String>,
    absorber: Absorber,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureSummary {
    pub m: usize,
    pub g: usize,
    pub r: usize,
    pub p_hat: f64,
    pub size_a: usize,
    pub size_u: usize,
    pub size_w: usize,
    pub size_bound: f64,
    pub template_edges: usize,
    pub template_max_degree: usize,
    pub bad_sizes: Vec<usize>,
    pub family_phase_sizes: [usize; 3],
    pub low_into_z: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpotCheck {
    pub trials: usize,
    pub passed: usize,
    pub failures: Vec<String>,
}

/// Vertices of the absorbing structure for a given m: the template, the
/// absorbers hanging off it and, for Hamilton cycles, the chaining paths.
fn footprint(m: usize, r: usize, v_a: usize, k: usize, delta: usize, ham: bool) -> usize {
    let y = 4 * m + 3 * m * (r - 1);
    let e_t = if m < delta { m * (m + 1) + 2 * m } else { delta.min(20) * 4 * m };
    let mut total = y + e_t * (v_a - r);
    if ham {
        let interior = 3 * (k - 1) - 1;
        total += (e_t + 1) * interior + 3 * (k - 1) + 1;
    }
    total
}

fn ceil_frac(x: f64, n: usize) -> usize {
    libm::ceil(x * n as f64) as usize
}

/// Bit i of `labels[v]` says v lies in the i-th set; returns the labelled
/// degree of `v` into each set at once.
fn set_degrees(h: &Hypergraph, v: Vertex, labels: &[u8], sets: usize) -> [u64; 8] {
    let mut out = [0u64; 8];
    for &ei in h.incident(v) {
        let mut mask = u8::MAX;
        for &w in h.edge(ei as usize) {
            if w != v {
                mask &= labels[w as usize];
            }
        }
        for (i, o) in out.iter_mut().enumerate().take(sets) {
            if mask >> i & 1 == 1 {
                *o += 1;
            }
        }
    }
    let fact: u64 = (1..h.k() as u64).product();
    out.iter_mut().for_each(|d| *d *= fact);
    out
}

fn labels_for(n: usize, sets: &[&VertexSet]) -> Vec<u8> {
    let mut labels = vec![0u8; n];
    for (i, s) in sets.iter().enumerate() {
        for v in s.iter() {
            labels[v as usize] |= 1 << i;
        }
    }
    labels
}

struct Parts {
    z1: Vec<Vertex>,
    z2: Vec<Vertex>,
    y0: Vec<Vertex>,
    ys: Vec<Vec<Vertex>>,
    w: Vec<Vertex>,
    sizes: Vec<usize>,
}

impl Parts {
    fn all_mut(&mut self) -> Vec<&mut Vec<Vertex>> {
        let mut out = vec![&mut self.z1, &mut self.z2, &mut self.y0];
        out.extend(self.ys.iter_mut());
        out.push(&mut self.w);
        out
    }

    fn set(&self, n: usize, which: &[&Vec<Vertex>]) -> VertexSet {
        let mut s = VertexSet::new(n);
        for part in which {
            for &v in part.iter() {
                s.insert(v);
            }
        }
        s
    }

    fn y(&self, n: usize) -> VertexSet {
        let mut parts = vec![&self.z1, &self.z2, &self.y0];
        parts.extend(self.ys.iter());
        self.set(n, &parts)
    }

    fn remove(&mut self, b: &VertexSet) {
        for part in self.all_mut() {
            part.retain(|&v| !b.contains(v));
        }
    }

    /// Tops every part up to its size from `pool` (taken in order, skipping `taken`).
    fn refill(&mut self, pool: &[Vertex], taken: &VertexSet) -> Result<()> {
        let mut used = taken.clone();
        for part in self.all_mut() {
            for &v in part.iter() {
                used.insert(v);
            }
        }
        let sizes = self.sizes.clone();
        let mut it = pool.iter().copied().filter(|&v| !used.contains(v));
        for (part, &size) in self.all_mut().into_iter().zip(&sizes) {
            while part.len() < size {
                match it.next() {
                    Some(v) => part.push(v),
                    None => return Err(Error::phase("absorbing-parts", "not enough vertices to refill the parts")),
                }
            }
        }
        Ok(())
    }
}

/// The largest usable m, and the matching g.
fn choose_m(n: usize, k: usize, r: usize, v_a: usize, ham: bool, config: &PipelineConfig, warnings: &mut Vec<String>) -> Result<(usize, usize)> {
    let fp = |m: usize| footprint(m, r, v_a, k, config.delta, ham);
    let beta_n = ceil_frac(config.beta, n).max(1);
    let gamma_n = ceil_frac(config.gamma, n);
    let m = match (config.m, config.strict()) {
        (Some(m), _) => m,
        (None, true) => beta_n,
        (None, false) => {
            let cap = config.footprint * n as f64;
            let Some(m) = (1..=beta_n).rev().find(|&m| fp(m) as f64 <= cap) else {
                return Err(Error::phase(
                    "absorbing-size",
                    format!("even m = 1 needs {} vertices, over {:.0}% of n = {n}", fp(1), 100.0 * config.footprint),
                ));
            };
            if m < beta_n {
                warnings.push(format!("m reduced from ⌈βn⌉ = {beta_n} to {m} to fit the footprint share"));
            }
            m
        }
    };
    if fp(m) > n {
        return Err(Error::phase("absorbing-size", format!("m = {m} needs {} vertices, n = {n}", fp(m))));
    }
    let g = if config.strict() {
        if gamma_n >= m {
            return Err(Error::phase("absorbing-size", format!("⌈γn⌉ = {gamma_n} is not below m = {m}")));
        }
        gamma_n
    } else {
        let g = gamma_n.min(m - 1);
        if g < gamma_n {
            warnings.push(format!("g reduced from ⌈γn⌉ = {gamma_n} to {g} so that |Z_2| = m − g > 0"));
        }
        g
    };
    Ok((m, g))
}

/// Smallest |Z_2| the Hamilton finishing step can work with: four connecting
/// paths of three edges each.
pub(crate) fn ham_z2_need(k: usize) -> usize {
    12 * (k - 1) - 4
}

/// Fails early when the m that fits leaves Z_2 too small to close a cycle.
pub(crate) fn ham_preflight(h: &Hypergraph, config: &PipelineConfig) -> Result<()> {
    let (n, k) = (h.n(), h.k());
    let v_a = build_path_absorber(k)?.motif.v();
    let (m, g) = choose_m(n, k, k - 1, v_a, true, config, &mut Vec::new())?;
    if m - g < ham_z2_need(k) {
        return Err(Error::phase(
            "finish-size",
            format!(
                "|Z_2| = m − g = {} but closing the cycle needs {} vertices there; no larger m fits in n = {n}",
                m - g,
                ham_z2_need(k)
            ),
        ));
    }
    Ok(())
}

pub fn build_absorbing_structure(h: &Hypergraph, target: &Target, config: &PipelineConfig) -> Result<AbsorbingStructure> {
    config.validate()?;
    let n = h.n();
    let k = h.k();
    let mut warnings = Vec::new();
    let mut phases = Vec::new();
    let ham = matches!(target, Target::Ham);
    let absorber = match target {
        Target::Factor(f) => Absorber::Factor(build_factor_absorber(f)?),
        Target::Ham => Absorber::Path(build_path_absorber(k)?),
    };
    let (r, v_a) = match &absorber {
        Absorber::Factor(a) => (a.source.n(), a.motif.v()),
        Absorber::Path(a) => (k - 1, a.motif.v()),
    };

    let p = h.degree_report().density;
    if p == 0.0 {
        return Err(Error::phase("absorbing-degree-audit", "the host has no edges"));
    }
    let expected = p / 2.0 * binomial(n as u64 - 1, k as u64 - 1) as f64;
    let low = (0..n as Vertex).filter(|&v| (h.vertex_degree(v) as f64) < expected).count();
    if low > 0 {
        let msg = format!("{low} vertices have degree below p̂/2 · C(n−1, k−1)");
        if config.strict() {
            return Err(Error::phase("absorbing-degree-audit", msg));
        }
        warnings.push(msg);
    }

    let (m, g) = choose_m(n, k, r, v_a, ham, config, &mut warnings)?;
    phases.push(format!("absorbing: m = {m}, g = {g}, r = {r}, p̂ = {p:.4}"));

    let mut pool: Vec<Vertex> = (0..n as Vertex).collect();
    pool.shuffle(&mut rng::stream(config.seed, rng::PIPELINE));
    let mut sizes = vec![m + g, m - g, 2 * m];
    sizes.extend(core::iter::repeat_n(3 * m, r - 1));
    sizes.push(ceil_frac(config.alpha_frac, n));
    if sizes.iter().sum::<usize>() > n {
        return Err(Error::phase("absorbing-parts", format!("parts need {} vertices, n = {n}", sizes.iter().sum::<usize>())));
    }
    let mut parts = Parts { z1: Vec::new(), z2: Vec::new(), y0: Vec::new(), ys: vec![Vec::new(); r - 1], w: Vec::new(), sizes };
    parts.refill(&pool, &VertexSet::new(n))?;

    // low-degree vertices are covered early by the patch U
    let mut u_set = VertexSet::new(n);
    let mut u_pieces = Vec::new();
    let mut u_path: Vec<Vec<Vertex>> = Vec::new();
    let mut u_ends: Option<(Vertex, Vertex)> = None;
    let mut bad_sizes = Vec::new();
    let mut settled = false;
    for round in 0..=config.bad_set_rounds {
        let y = parts.y(n);
        let w = parts.set(n, &[&parts.w]);
        let mut outside = y.clone();
        outside.union_with(&w);
        let rest = outside.complement();
        let z1 = parts.set(n, &[&parts.z1]);
        let z2 = parts.set(n, &[&parts.z2]);
        let z = parts.set(n, &[&parts.z1, &parts.z2]);
        let mut sets: Vec<&VertexSet> = Vec::new();
        if config.z_degree_in_bad_set || config.strict() {
            if ham {
                sets.extend([&z1, &z2]);
            } else {
                sets.push(&z);
            }
        }
        sets.extend([&w, &rest]);
        let labels = labels_for(n, &sets);
        let thresholds: Vec<f64> =
            sets.iter().map(|s| p / 2.0 * libm::pow(s.len() as f64, (k - 1) as f64)).collect();
        let mut bad = VertexSet::new(n);
        for v in 0..n as Vertex {
            if u_set.contains(v) {
                continue;
            }
            let d = set_degrees(h, v, &labels, sets.len());
            if thresholds.iter().enumerate().any(|(i, &t)| (d[i] as f64) < t) {
                bad.insert(v);
            }
        }
        bad_sizes.push(bad.len());
        let first_ham_round = ham && u_ends.is_none();
        if bad.is_empty() && !first_ham_round {
            settled = true;
            break;
        }
        if round == config.bad_set_rounds {
            break;
        }
        if (bad.len() + u_set.len()) as f64 > n as f64 / 10.0 {
            return Err(Error::phase(
                "absorbing-bad-set",
                format!("{} low-degree vertices (plus |U| = {}) exceed n/10", bad.len(), u_set.len()),
            ));
        }
        parts.remove(&bad);
        let mut x = parts.y(n);
        x.union_with(&parts.set(n, &[&parts.w]));
        x.union_with(&u_set);
        x.union_with(&bad);
        let mut x = x.complement();
        let b: Vec<Vertex> = bad.iter().collect();
        let cover = match &absorber {
            Absorber::Factor(a) => cover_small_set(h, CoverMode::Factor(&a.source), &b, &x, config.search_budget)?,
            Absorber::Path(_) => {
                let start = match u_ends {
                    Some((_, v0)) => v0,
                    None => {
                        let u0 = highest_degree(h, &x);
                        x.remove(u0);
                        u0
                    }
                };
                let end = highest_degree(h, &x);
                x.remove(end);
                let mut seq = vec![start];
                seq.extend(&b);
                seq.push(end);
                let c = cover_small_set(h, CoverMode::Path, &seq, &x, config.search_budget)?;
                u_ends = Some((u_ends.map_or(start, |e| e.0), end));
                c
            }
        };
        u_set.union_with(&cover.vertices);
        u_pieces.extend(cover.pieces);
        u_path.extend(cover.path);
        phases.push(format!("absorbing: round {round} patched {} low-degree vertices, |U| = {}", bad.len(), u_set.len()));
        parts.refill(&pool, &u_set)?;
    }
    if !settled {
        return Err(Error::phase(
            "absorbing-bad-set",
            format!("low-degree vertices remain after {} rounds (sizes {bad_sizes:?})", config.bad_set_rounds),
        ));
    }

    let template = build_template(r, m, config.sub_seed(1), config.delta, config.template_retries)?;
    let mut t_to_host = vec![Vertex::MAX; template.n()];
    let zs: Vec<Vertex> = parts.z1.iter().chain(&parts.z2).copied().collect();
    for (&t, &v) in template.flexible.iter().zip(&zs) {
        t_to_host[t as usize] = v;
    }
    let fixed: Vec<Vertex> = template.part(0).filter(|t| !template.flexible.contains(t)).collect();
    for (&t, &v) in fixed.iter().zip(&parts.y0) {
        t_to_host[t as usize] = v;
    }
    for i in 1..r {
        for (t, &v) in template.part(i).zip(&parts.ys[i - 1]) {
            t_to_host[t as usize] = v;
        }
    }
    debug_assert!(t_to_host.iter().all(|&v| v != Vertex::MAX));
    let t_edges: Vec<Vec<Vertex>> =
        template.edges.iter().map(|e| e.iter().map(|&t| t_to_host[t as usize]).collect()).collect();
    phases.push(format!("absorbing: template with {} edges, Δ_1 = {}", template.edges.len(), template.max_degree));

    let y = parts.y(n);
    let w = parts.set(n, &[&parts.w]);
    let mut host = u_set.clone();
    host.union_with(&w);
    let host = host.complement();
    let motif = match &absorber {
        Absorber::Factor(a) => &a.motif,
        Absorber::Path(a) => &a.motif,
    };
    let fam_config = FamilyConfig {
        strict: config.strict(),
        c: config.c,
        p: Some(p),
        delta: config.delta,
        budget: config.search_budget,
        seed: config.sub_seed(2),
        ..FamilyConfig::default()
    };
    let outcome = build_compatible_family(h, motif, &t_edges, &host, &fam_config)?;
    warnings.extend(outcome.warnings);
    let family = outcome.family;
    if !family.failed.is_empty() {
        return Err(Error::phase(
            "absorbing-family",
            format!(
                "{} of {} absorbers could not be embedded ({} hit the search budget)",
                family.failed.len(),
                t_edges.len(),
                family.budget_exhausted.len()
            ),
        ));
    }
    phases.push(format!("absorbing: {} absorbers embedded (phases {:?})", t_edges.len(), outcome.phase_sizes));

    let mut a_set = y.clone();
    a_set.union_with(&family.vertices(n));
    let mut connectors = Vec::new();
    let mut a_ends = None;
    if let Absorber::Path(pa) = &absorber {
        let (u0, v0) = u_ends.expect("Hamilton mode always builds the U path");
        let ends = pa.motif.ends.expect("path absorbers have ends");
        let mut pairs = Vec::with_capacity(family.copies.len());
        let mut prev = v0;
        for emb in family.copies.iter().flatten() {
            pairs.push(vec![prev, emb.image[ends.0 as usize]]);
            prev = emb.image[ends.1 as usize];
        }
        let link = loose_path_rooted_at_ends(k, 3)?;
        let chain = greedy_builder(h, &link, &pairs, &w, config.search_budget)?;
        if !chain.failed.is_empty() {
            return Err(Error::phase(
                "absorbing-chain",
                format!("{} of {} connecting paths through W could not be found", chain.failed.len(), pairs.len()),
            ));
        }
        for emb in chain.copies.iter().flatten() {
            connectors.push(link.graph.edges().map(|e| e.iter().map(|&v| emb.image[v as usize]).collect()).collect());
            for &v in &emb.image {
                a_set.insert(v);
            }
        }
        a_ends = Some((u0, prev));
        // the U path's end v0 is shared with the first connector
        a_set.remove(v0);
        phases.push(format!("absorbing: absorbing path from {u0} to {prev}"));
    }
    let size_bound = 8.0 * v_a as f64 * config.beta * n as f64;
    if a_set.len() as f64 > size_bound {
        warnings.push(format!("|A| = {} exceeds 8·v(A)·βn = {size_bound:.0}", a_set.len()));
    }

    let z = parts.set(n, &[&parts.z1, &parts.z2]);
    let mut covered = a_set.clone();
    covered.union_with(&u_set);
    let zsets: Vec<VertexSet> = if ham {
        vec![parts.set(n, &[&parts.z1]), parts.set(n, &[&parts.z2])]
    } else {
        vec![z.clone()]
    };
    let zrefs: Vec<&VertexSet> = zsets.iter().collect();
    let labels = labels_for(n, &zrefs);
    let zthresholds: Vec<f64> = zsets.iter().map(|s| p / 4.0 * libm::pow(s.len() as f64, (k - 1) as f64)).collect();
    let low_into_z = (0..n as Vertex)
        .filter(|&v| !covered.contains(v))
        .filter(|&v| {
            let d = set_degrees(h, v, &labels, zsets.len());
            zthresholds.iter().enumerate().any(|(i, &t)| d[i] as f64 <= t)
        })
        .count();
    if low_into_z > 0 {
        let msg = format!("{low_into_z} vertices outside A ∪ U have degree at most (p/4)|Z_i|^(k−1) into Z_i");
        if config.strict() {
            return Err(Error::phase("absorbing-flexible-degree", msg));
        }
        warnings.push(msg);
    }

    Ok(AbsorbingStructure {
        target: target.clone(),
        m,
        g,
        r,
        p_hat: p,
        template,
        t_to_host,
        z1: parts.z1,
        z2: parts.z2,
        z,
        y,
        w,
        u_pieces,
        u_path,
        u_ends,
        u_set,
        family,
        connectors,
        a_set,
        a_ends,
        bad_sizes,
        size_bound,
        family_phase_sizes: outcome.phase_sizes,
        low_into_z,
        warnings,
        phases,
        absorber,
    })
}

fn highest_degree(h: &Hypergraph, x: &VertexSet) -> Vertex {
    x.iter().max_by_key(|&v| (h.degree_into_set(v, x), core::cmp::Reverse(v))).expect("X is not empty")
}

impl AbsorbingStructure {
    pub fn summary(&self) -> StructureSummary {
        StructureSummary {
            m: self.m,
            g: self.g,
            r: self.r,
            p_hat: self.p_hat,
            size_a: self.a_set.len(),
            size_u: self.u_set.len(),
            size_w: self.w.len(),
            size_bound: self.size_bound,
            template_edges: self.template.edges.len(),
            template_max_degree: self.template.max_degree,
            bad_sizes: self.bad_sizes.clone(),
            family_phase_sizes: self.family_phase_sizes,
            low_into_z: self.low_into_z,
        }
    }

    /// Vertices the structure covers once `z_prime` is taken out: (A ∪ U) ∖ Z′.
    pub fn covered_without(&self, z_prime: &[Vertex]) -> VertexSet {
        let mut s = self.a_set.clone();
        s.union_with(&self.u_set);
        for &v in z_prime {
            s.remove(v);
        }
        s
    }

    /// Template edges matched once the host vertices `z_prime` are removed.
    fn matched(&self, z_prime: &[Vertex]) -> Result<Vec<bool>> {
        let mut inverse = vec![Vertex::MAX; self.z.universe()];
        for (t, &v) in self.t_to_host.iter().enumerate() {
            inverse[v as usize] = t as Vertex;
        }
        let mut zt = Vec::with_capacity(z_prime.len());
        for &v in z_prime {
            if !self.z.contains(v) {
                return Err(Error::arg(format!("vertex {v} is not in the flexible set")));
            }
            zt.push(inverse[v as usize]);
        }
        let Some(edges) = matching_after_removal(&self.template, &zt)? else {
            return Err(Error::phase("extract", "the template has no perfect matching after removing Z′"));
        };
        let mut matched = vec![false; self.template.edges.len()];
        for e in edges {
            matched[e] = true;
        }
        Ok(matched)
    }

    /// F-factor of (A ∪ U) ∖ Z′ for an m-subset Z′ of Z.
    pub fn extract_factor(&self, z_prime: &[Vertex]) -> Result<Vec<Piece>> {
        let Absorber::Factor(a) = &self.absorber else {
            return Err(Error::arg("this structure absorbs into a path"));
        };
        let matched = self.matched(z_prime)?;
        let mut out = self.u_pieces.clone();
        for (i, emb) in self.family.copies.iter().enumerate() {
            let emb = emb.as_ref().expect("every absorber is embedded");
            let (pieces, phase) =
                if matched[i] { (&a.complete_factor, "absorber") } else { (&a.internal_factor, "absorber-internal") };
            for piece in pieces {
                let map: Vec<Vertex> = piece.map.iter().map(|&v| emb.image[v as usize]).collect();
                out.push(Piece::from_map(&a.source, &map, phase));
            }
        }
        Ok(out)
    }

    /// Loose path from a_1 to a_2 spanning (A ∪ U) ∖ Z′.
    pub fn extract_path(&self, z_prime: &[Vertex]) -> Result<Vec<Vec<Vertex>>> {
        let Absorber::Path(a) = &self.absorber else {
            return Err(Error::arg("this structure absorbs into an F-factor"));
        };
        let matched = self.matched(z_prime)?;
        let mut out = self.u_path.clone();
        for (i, emb) in self.family.copies.iter().enumerate() {
            let emb = emb.as_ref().expect("every absorber is embedded");
            out.extend(self.connectors[i].iter().cloned());
            let path = if matched[i] { &a.complete_path } else { &a.internal_path };
            for &ei in path {
                out.push(a.motif.graph.edge(ei).iter().map(|&v| emb.image[v as usize]).collect());
            }
        }
        Ok(out)
    }

    /// Extracts with `trials` random Z′ and checks each result.
    pub fn spot_check(&self, h: &Hypergraph, trials: usize, seed: u64) -> SpotCheck {
        let mut rng = rng::stream(seed, rng::FLEXIBILITY);
        let zs: Vec<Vertex> = self.z.iter().collect();
        let mut failures = Vec::new();
        for t in 0..trials {
            let mut z_prime: Vec<Vertex> = zs.choose_multiple(&mut rng, self.m).copied().collect();
            z_prime.sort_unstable();
            let target = self.covered_without(&z_prime);
            let result = match &self.target {
                Target::Factor(f) => self.extract_factor(&z_prime).map(|p| verify_factor_pieces(h, f, &p, &target)),
                Target::Ham => {
                    let ends = self.a_ends.expect("Hamilton structures have ends");
                    self.extract_path(&z_prime).map(|e| verify_spanning_path(h, &e, ends, &target))
                }
            };
            match result {
                Ok(v) if v.is_ok() => {}
                Ok(v) => failures.push(format!("trial {t}, Z′ = {z_prime:?}: {}", v.violations.join("; "))),
                Err(e) => failures.push(format!("trial {t}, Z′ = {z_prime:?}: {e}")),
            }
        }
        SpotCheck { trials, passed: trials - failures.len(), failures }
    }
}

pub fn spot_check(structure: &AbsorbingStructure, h: &Hypergraph, trials: usize, seed: u64) -> SpotCheck {
    structure.spot_check(h, trials, seed)
}

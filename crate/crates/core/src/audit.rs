//! Pseudo-randomness and jumbledness audits, parameter conversions, the
//! independent-set density floor and second-eigenvalue estimates.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use nalgebra::{DMatrix, SymmetricEigen};
use rand::seq::IndexedRandom;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{factorial, Hypergraph, Vertex};
use crate::rng;
use crate::set::VertexSet;

/// Version of the sampled-tuple distribution recorded in every report.
pub const DISTRIBUTION_VERSION: u32 = 1;
/// Largest number of set tuples an exhaustive audit may visit.
pub const DEFAULT_EXHAUSTIVE_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PseudoParams {
    pub p: f64,
    pub alpha: f64,
    pub eps: f64,
}

impl PseudoParams {
    pub fn new(p: f64, alpha: f64, eps: f64) -> Result<Self> {
        let unit = |x: f64| x > 0.0 && x <= 1.0;
        if !unit(p) || !unit(alpha) || !unit(eps) {
            return Err(Error::arg(format!("need p, α, ε in (0, 1], got ({p}, {alpha}, {eps})")));
        }
        Ok(PseudoParams { p, alpha, eps })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AuditMode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

/// The property being audited.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Criterion {
    /// e = (1 ± ε) p ∏|A_i| whenever ∏|A_i| ≥ α n^k.
    PseudoRandom { p: f64, alpha: f64, eps: f64 },
    /// e = p ∏|A_i| ± β (∏|A_i|)^{1/2} for every tuple.
    Jumbled { p: f64, beta: f64 },
}

impl Criterion {
    fn p(&self) -> f64 {
        match *self {
            Criterion::PseudoRandom { p, .. } | Criterion::Jumbled { p, .. } => p,
        }
    }

    fn tolerance(&self) -> f64 {
        match *self {
            Criterion::PseudoRandom { eps, .. } => eps,
            Criterion::Jumbled { beta, .. } => beta,
        }
    }

    /// Smallest product of set sizes the criterion constrains.
    fn min_product(&self, n: usize, k: usize) -> f64 {
        match *self {
            Criterion::PseudoRandom { alpha, .. } => alpha * libm::pow(n as f64, k as f64),
            Criterion::Jumbled { .. } => 0.0,
        }
    }

    /// Relative error (pseudo-random) or normalized deviation (jumbled).
    pub fn error(&self, edges: u64, product: f64) -> f64 {
        let dev = libm::fabs(edges as f64 - self.p() * product);
        match self {
            Criterion::PseudoRandom { .. } => dev / (self.p() * product),
            Criterion::Jumbled { .. } => {
                if product == 0.0 {
                    0.0
                } else {
                    dev / libm::sqrt(product)
                }
            }
        }
    }
}

/// A set tuple with what was observed on it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub trial: u64,
    pub descriptor: String,
    pub sets: Vec<Vec<Vertex>>,
    pub edges: u64,
    pub product: f64,
    pub expected: f64,
    pub error: f64,
    pub tolerance: f64,
    pub violates: bool,
}

impl Witness {
    /// Recomputes e(A_1, ..., A_k) on `h`.
    pub fn recheck(&self, h: &Hypergraph) -> Result<u64> {
        let refs: Vec<&[Vertex]> = self.sets.iter().map(Vec::as_slice).collect();
        h.labelled_edge_count_lists(&refs)
    }

    /// Larger error first, then larger product, then earlier trial.
    fn beats(&self, other: &Witness) -> bool {
        (self.error, self.product) > (other.error, other.product)
            || ((self.error, self.product) == (other.error, other.product) && self.trial < other.trial)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub criterion: Criterion,
    pub mode: AuditMode,
    pub trials: u64,
    /// Tuples that met the size threshold and were evaluated.
    pub tested: u64,
    /// Worst tuple seen; a violation exactly when the verdict is fail.
    pub worst_violation: Option<Witness>,
    pub verdict: Verdict,
    pub hypergraph_hash: String,
    pub distribution_version: u32,
    pub note: String,
}

/// Partial result over a range of sampled trials, for splitting work.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Partial {
    pub tested: u64,
    pub worst: Option<Witness>,
}

impl Partial {
    pub fn merge(mut self, other: Partial) -> Partial {
        self.tested += other.tested;
        self.worst = match (self.worst, other.worst) {
            (Some(a), Some(b)) => Some(if b.beats(&a) { b } else { a }),
            (a, b) => a.or(b),
        };
        self
    }

    fn offer(&mut self, w: Witness) {
        self.tested += 1;
        if self.worst.as_ref().is_none_or(|cur| w.beats(cur)) {
            self.worst = Some(w);
        }
    }
}

pub fn audit_pseudo_random(h: &Hypergraph, params: PseudoParams, mode: AuditMode, trials: u64, seed: u64) -> Result<AuditReport> {
    let PseudoParams { p, alpha, eps } = params;
    audit(h, Criterion::PseudoRandom { p, alpha, eps }, mode, trials, seed, DEFAULT_EXHAUSTIVE_BUDGET)
}

pub fn audit_jumbled(h: &Hypergraph, p: f64, beta: f64, mode: AuditMode, trials: u64, seed: u64) -> Result<AuditReport> {
    audit(h, Criterion::Jumbled { p, beta }, mode, trials, seed, DEFAULT_EXHAUSTIVE_BUDGET)
}

fn check_criterion(c: &Criterion) -> Result<()> {
    match *c {
        Criterion::PseudoRandom { p, alpha, eps } => PseudoParams::new(p, alpha, eps).map(|_| ()),
        Criterion::Jumbled { p, beta } => {
            if !(0.0..=1.0).contains(&p) || beta.is_nan() || beta < 0.0 {
                return Err(Error::arg(format!("need p in [0, 1] and β ≥ 0, got ({p}, {beta})")));
            }
            Ok(())
        }
    }
}

pub fn audit(h: &Hypergraph, criterion: Criterion, mode: AuditMode, trials: u64, seed: u64, budget: u64) -> Result<AuditReport> {
    check_criterion(&criterion)?;
    let partial = match mode {
        AuditMode::Exhaustive => exhaustive(h, &criterion, budget)?,
        AuditMode::Sampled => {
            if trials == 0 {
                return Err(Error::arg("sampled audits need at least one trial"));
            }
            sampled_range(h, &criterion, seed, 0..trials)
        }
    };
    Ok(finish(h, criterion, mode, trials, partial))
}

/// Turns merged partial results into a report.
pub fn finish(h: &Hypergraph, criterion: Criterion, mode: AuditMode, trials: u64, partial: Partial) -> AuditReport {
    let violated = partial.worst.as_ref().is_some_and(|w| w.violates);
    let verdict = if violated {
        Verdict::Fail
    } else if partial.tested == 0 {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };
    let note = match (mode, verdict) {
        (_, Verdict::Fail) => "counterexample found; the witness tuple reproduces it".into(),
        (AuditMode::Exhaustive, Verdict::Pass) => "every constrained set tuple satisfies the criterion".into(),
        (AuditMode::Sampled, Verdict::Pass) => {
            format!("no violation found among {} sampled tuples (distribution v{DISTRIBUTION_VERSION})", partial.tested)
        }
        (_, Verdict::Inconclusive) => "no set tuple met the size threshold".into(),
    };
    AuditReport {
        criterion,
        mode,
        trials: if mode == AuditMode::Sampled { trials } else { partial.tested },
        tested: partial.tested,
        worst_violation: partial.worst,
        verdict,
        hypergraph_hash: h.digest(),
        distribution_version: DISTRIBUTION_VERSION,
        note,
    }
}

fn witness(criterion: &Criterion, trial: u64, descriptor: String, sets: Vec<Vec<Vertex>>, edges: u64) -> Witness {
    let product: f64 = sets.iter().map(|s| s.len() as f64).product();
    let error = criterion.error(edges, product);
    Witness {
        trial,
        descriptor,
        sets,
        edges,
        product,
        expected: criterion.p() * product,
        error,
        tolerance: criterion.tolerance(),
        violates: error > criterion.tolerance(),
    }
}

/// Codegree masks: `nb[u_1 n^{k-2} + ... + u_{k-1}]` holds every `w` with
/// `{u_1, ..., u_{k-1}, w}` an edge.
struct MaskCounter {
    k: usize,
    n: usize,
    nb: Vec<u64>,
}

impl MaskCounter {
    fn new(h: &Hypergraph) -> Self {
        let (k, n) = (h.k(), h.n());
        let mut nb = vec![0u64; n.pow(k as u32 - 1)];
        let mut rest = Vec::with_capacity(k);
        for e in h.edges() {
            for &w in e {
                rest.clear();
                rest.extend(e.iter().copied().filter(|&u| u != w));
                for_each_permutation(&mut rest, &mut |perm| {
                    let idx = perm.iter().fold(0usize, |acc, &u| acc * n + u as usize);
                    nb[idx] |= 1 << w;
                });
            }
        }
        MaskCounter { k, n, nb }
    }

    fn count(&self, sets: &[u64]) -> u64 {
        self.rec(sets, 0, 0, 0)
    }

    fn rec(&self, sets: &[u64], depth: usize, idx: usize, used: u64) -> u64 {
        if depth == self.k - 1 {
            return (self.nb[idx] & sets[depth] & !used).count_ones() as u64;
        }
        let mut total = 0;
        let mut m = sets[depth] & !used;
        while m != 0 {
            let u = m.trailing_zeros() as usize;
            m &= m - 1;
            total += self.rec(sets, depth + 1, idx * self.n + u, used | 1 << u);
        }
        total
    }
}

fn for_each_permutation(items: &mut [Vertex], f: &mut impl FnMut(&[Vertex])) {
    fn go(items: &mut [Vertex], i: usize, f: &mut impl FnMut(&[Vertex])) {
        if i == items.len() {
            f(items);
            return;
        }
        for j in i..items.len() {
            items.swap(i, j);
            go(items, i + 1, f);
            items.swap(i, j);
        }
    }
    go(items, 0, f);
}

fn mask_to_vec(m: u64) -> Vec<Vertex> {
    (0..64).filter(|&i| m >> i & 1 == 1).collect()
}

/// Every k-tuple of subsets, in odometer order over bitmasks.
fn exhaustive(h: &Hypergraph, criterion: &Criterion, budget: u64) -> Result<Partial> {
    let (k, n) = (h.k(), h.n());
    let bits = n * k;
    if n >= 63 || bits >= 64 || (1u64 << bits) > budget {
        return Err(Error::BudgetExhausted(budget));
    }
    let counter = MaskCounter::new(h);
    let min_product = criterion.min_product(n, k);
    let limit = 1u64 << n;
    let mut sets = vec![0u64; k];
    let mut out = Partial::default();
    let mut trial = 0u64;
    loop {
        let product: f64 = sets.iter().map(|s| s.count_ones() as f64).product();
        if product >= min_product && (product > 0.0 || matches!(criterion, Criterion::Jumbled { .. })) {
            let edges = counter.count(&sets);
            let error = criterion.error(edges, product);
            let better = out.worst.as_ref().is_none_or(|w| (error, product) > (w.error, w.product));
            out.tested += 1;
            if better {
                let sets_v = sets.iter().map(|&s| mask_to_vec(s)).collect();
                out.worst = Some(witness(criterion, trial, "exhaustive".into(), sets_v, edges));
            }
        }
        trial += 1;
        let mut i = 0;
        loop {
            if i == k {
                return Ok(out);
            }
            sets[i] += 1;
            if sets[i] < limit {
                break;
            }
            sets[i] = 0;
            i += 1;
        }
    }
}

/// Evaluates sampled trials `range`; trial `t` draws from its own stream, so
/// any split of the trial range merges to the same result.
///
/// Distribution v1: trial 0 is (V, ..., V). Afterwards trials cycle through
/// (a) independent uniform subsets of uniform size, (b) one greedy set grown
/// from a random vertex by repeatedly adding the vertex with fewest (sparse)
/// or most (dense) edges into the set, used in every coordinate, and (c)
/// codegree neighbourhoods of (k−1)-subsets of random edges, the last one
/// complemented on odd draws. Sizes are drawn so that the tuple meets the
/// pseudo-random threshold when there is one.
pub fn sampled_range(h: &Hypergraph, criterion: &Criterion, seed: u64, range: Range<u64>) -> Partial {
    let (k, n) = (h.k(), h.n());
    let min_product = criterion.min_product(n, k);
    let lo = match criterion {
        Criterion::PseudoRandom { alpha, .. } => (libm::ceil(libm::pow(*alpha, 1.0 / k as f64) * n as f64) as usize).max(1),
        Criterion::Jumbled { .. } => 1,
    }
    .min(n.max(1));
    let all: Vec<Vertex> = (0..n as Vertex).collect();
    let mut out = Partial::default();
    for t in range {
        let mut rng = rng::stream(seed, rng::AUDIT + t);
        let (descriptor, sets) = if t == 0 {
            ("full".into(), vec![all.clone(); k])
        } else {
            match t % 3 {
                1 => {
                    let sets = (0..k)
                        .map(|_| {
                            let s = rng.random_range(lo..=n);
                            let mut v: Vec<Vertex> = all.choose_multiple(&mut rng, s).copied().collect();
                            v.sort_unstable();
                            v
                        })
                        .collect();
                    ("uniform".into(), sets)
                }
                2 => {
                    let dense = (t / 3) % 2 == 1;
                    let s = rng.random_range(lo..=n);
                    let start = rng.random_range(0..n) as Vertex;
                    let set = greedy_set(h, start, s, dense, &mut rng);
                    let kind = if dense { "dense" } else { "sparse" };
                    (format!("greedy-{kind} from {start}, size {s}"), vec![set; k])
                }
                _ => {
                    if h.edge_count() == 0 {
                        continue;
                    }
                    let mut sets = Vec::with_capacity(k);
                    for _ in 0..k {
                        let e = h.edge(rng.random_range(0..h.edge_count()));
                        let skip = rng.random_range(0..k);
                        let base: Vec<Vertex> = e.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                        sets.push(codegree_neighbourhood(h, &base));
                    }
                    if rng.random_bool(0.5) {
                        let last = sets.pop().expect("k >= 2");
                        let mut comp = VertexSet::from_slice(n, &last).expect("in range").complement().to_vec();
                        comp.sort_unstable();
                        sets.push(comp);
                    }
                    ("neighbourhood".into(), sets)
                }
            }
        };
        let product: f64 = sets.iter().map(|s| s.len() as f64).product();
        if product < min_product || (product == 0.0 && matches!(criterion, Criterion::PseudoRandom { .. })) {
            continue;
        }
        let refs: Vec<&[Vertex]> = sets.iter().map(Vec::as_slice).collect();
        let edges = h.labelled_edge_count_lists(&refs).expect("sets are in range");
        out.offer(witness(criterion, t, descriptor, sets, edges));
    }
    out
}

/// Vertices `w` such that `base ∪ {w}` is an edge.
fn codegree_neighbourhood(h: &Hypergraph, base: &[Vertex]) -> Vec<Vertex> {
    let anchor = *base.iter().min_by_key(|&&v| h.vertex_degree(v)).expect("k >= 2");
    let mut out: Vec<Vertex> = h
        .incident(anchor)
        .iter()
        .map(|&ei| h.edge(ei as usize))
        .filter(|e| base.iter().all(|b| e.contains(b)))
        .filter_map(|e| e.iter().copied().find(|v| !base.contains(v)))
        .collect();
    out.sort_unstable();
    out
}

/// Grows a set of size `s` from `start`, each time adding the outside vertex
/// with the fewest (or most) edges whose other vertices all lie in the set.
/// Ties are broken by a random rotation of the vertex order.
fn greedy_set(h: &Hypergraph, start: Vertex, s: usize, dense: bool, rng: &mut impl Rng) -> Vec<Vertex> {
    let n = h.n();
    let mut inside = VertexSet::new(n);
    let mut c = vec![0u64; n];
    let offset = rng.random_range(0..n);
    let add = |w: Vertex, inside: &mut VertexSet, c: &mut Vec<u64>| {
        inside.insert(w);
        for &ei in h.incident(w) {
            let e = h.edge(ei as usize);
            let mut outside = e.iter().filter(|&&u| !inside.contains(u));
            if let (Some(&u), None) = (outside.next(), outside.next()) {
                c[u as usize] += 1;
            }
        }
    };
    add(start, &mut inside, &mut c);
    while inside.len() < s {
        let pick = (0..n)
            .map(|i| ((i + offset) % n) as Vertex)
            .filter(|&v| !inside.contains(v))
            .reduce(|a, b| {
                let better = if dense { c[b as usize] > c[a as usize] } else { c[b as usize] < c[a as usize] };
                if better {
                    b
                } else {
                    a
                }
            })
            .expect("set smaller than n");
        add(pick, &mut inside, &mut c);
    }
    inside.to_vec()
}

/// α = β²/(ε² p² n^k).
pub fn jumbled_to_pseudo(p: f64, beta: f64, eps: f64, n: usize, k: usize) -> Result<f64> {
    if !(p > 0.0 && beta > 0.0 && eps > 0.0 && n > 0 && k > 0) {
        return Err(Error::arg("jumbled_to_pseudo needs positive p, β, ε, n, k"));
    }
    Ok(beta * beta / (eps * eps * p * p * libm::pow(n as f64, k as f64)))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Restricted {
    pub params: PseudoParams,
    /// α/γ > 1: no tuple of subsets of U meets the threshold.
    pub vacuous: bool,
}

/// Parameters inherited by H[U] when |U| ≥ γ^{1/k} n.
pub fn restrict_params(params: PseudoParams, gamma: f64) -> Result<Restricted> {
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(Error::arg(format!("γ = {gamma} outside (0, 1]")));
    }
    let alpha = params.alpha / gamma;
    Ok(Restricted { params: PseudoParams { alpha, ..params }, vacuous: alpha > 1.0 })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityFloorReport {
    pub p_hat: f64,
    pub independent_set: Vec<Vertex>,
    pub independent_set_size: usize,
    pub edges_inside: u64,
    /// ε p̂^ℓ n^k, compared against |I|^k.
    pub threshold: f64,
    /// Exponent in p = Ω(n^{−s}).
    pub s: f64,
    /// H is not (p̂, ε p̂^ℓ, ε′)-pseudo-random for any ε′ < 1.
    pub refuted: bool,
}

pub fn density_floor_check(h: &Hypergraph, eps: f64, ell: usize) -> DensityFloorReport {
    let (k, n) = (h.k(), h.n());
    let p_hat = h.degree_report().density;
    let mut inside = VertexSet::new(n);
    for v in 0..n as Vertex {
        let blocked = h
            .incident(v)
            .iter()
            .any(|&ei| h.edge(ei as usize).iter().all(|&u| u == v || inside.contains(u)));
        if !blocked {
            inside.insert(v);
        }
    }
    let sets = vec![&inside; k];
    let edges_inside = h.labelled_edge_count(&sets).expect("sets are in range");
    let size = inside.len();
    let threshold = eps * libm::pow(p_hat, ell as f64) * libm::pow(n as f64, k as f64);
    let kf = k as f64;
    DensityFloorReport {
        p_hat,
        independent_set: inside.to_vec(),
        independent_set_size: size,
        edges_inside,
        threshold,
        s: kf * (kf - 1.0) / (ell as f64 * (kf - 1.0) + kf),
        refuted: edges_inside == 0 && libm::pow(size as f64, kf) >= threshold,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactSpectral {
    pub lambda1: f64,
    pub lambda2: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    /// Lower-bound estimate of ‖τ_H‖.
    pub lambda1: f64,
    /// Lower-bound estimate of ‖τ_H − (k! e(H)/n^k) J‖.
    pub lambda2: f64,
    /// Sweeps over all k coordinates, summed over restarts of both runs.
    pub iterations: u64,
    /// Every restart met the stopping tolerance.
    pub converged: bool,
    pub restarts: u32,
    /// Best λ2 value after each sweep, non-decreasing.
    pub history: Vec<f64>,
    /// Symmetric eigensolve, k = 2 only.
    pub exact: Option<ExactSpectral>,
    pub note: String,
}

struct AltMax {
    best: f64,
    sweeps: u64,
    converged: bool,
    history: Vec<f64>,
}

/// Σ over bijections from `rows` to `cols` of ∏ x[row][col].
fn real_permanent(x: &[Vec<f64>], rows: &[usize], cols: &[Vertex]) -> f64 {
    let r = rows.len();
    if r == 0 {
        return 1.0;
    }
    let mut dp = vec![0.0f64; 1 << r];
    dp[0] = 1.0;
    for mask in 0..(1usize << r) {
        let c = dp[mask];
        if c == 0.0 {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == r {
            continue;
        }
        for (j, &col) in cols.iter().enumerate() {
            if mask >> j & 1 == 0 {
                dp[mask | 1 << j] += c * x[rows[row]][col as usize];
            }
        }
    }
    dp[(1 << r) - 1]
}

/// Alternating maximization of τ_H(x_1..x_k) − q ∏⟨1, x_i⟩ over unit vectors.
fn alternating_max(h: &Hypergraph, q: f64, iterations: u32, restarts: u32, seed: u64, salt: u64) -> AltMax {
    let (k, n) = (h.k(), h.n());
    let mut out = AltMax { best: 0.0, sweeps: 0, converged: true, history: Vec::new() };
    let mut g = vec![0.0f64; n];
    let mut rest: Vec<Vertex> = Vec::with_capacity(k);
    for r in 0..restarts.max(1) {
        let mut rng = rng::stream(seed, rng::SPECTRAL + salt + r as u64);
        let mut x: Vec<Vec<f64>> = (0..k)
            .map(|_| {
                let mut v: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
                normalize(&mut v);
                v
            })
            .collect();
        let mut value = f64::NEG_INFINITY;
        let mut run_converged = false;
        for _ in 0..iterations {
            let before = value;
            for j in 0..k {
                let others: Vec<usize> = (0..k).filter(|&i| i != j).collect();
                g.iter_mut().for_each(|v| *v = 0.0);
                for e in h.edges() {
                    for &v in e {
                        rest.clear();
                        rest.extend(e.iter().copied().filter(|&u| u != v));
                        g[v as usize] += real_permanent(&x, &others, &rest);
                    }
                }
                if q != 0.0 {
                    let shift: f64 = q * others.iter().map(|&i| x[i].iter().sum::<f64>()).product::<f64>();
                    g.iter_mut().for_each(|v| *v -= shift);
                }
                let norm = libm::sqrt(g.iter().map(|v| v * v).sum());
                if norm > 0.0 {
                    x[j].iter_mut().zip(&g).for_each(|(a, b)| *a = b / norm);
                }
                value = norm;
            }
            out.sweeps += 1;
            out.best = out.best.max(value);
            out.history.push(out.best);
            if value - before <= 1e-15 * value.max(1.0) {
                run_converged = true;
                break;
            }
        }
        out.converged &= run_converged;
    }
    out
}

fn normalize(v: &mut [f64]) {
    let norm = libm::sqrt(v.iter().map(|a| a * a).sum());
    if norm > 0.0 {
        v.iter_mut().for_each(|a| *a /= norm);
    } else if let Some(first) = v.first_mut() {
        *first = 1.0;
    }
}

/// Alternating maximization with random restarts; both values are lower
/// bounds on the norms they estimate. For k = 2 the exact values from a
/// symmetric eigensolve are reported alongside.
pub fn estimate_second_eigenvalue(h: &Hypergraph, iterations: u32, restarts: u32, seed: u64) -> SpectralReport {
    let (k, n) = (h.k(), h.n());
    let q = factorial(k) as f64 * h.edge_count() as f64 / libm::pow(n as f64, k as f64);
    let first = alternating_max(h, 0.0, iterations, restarts, seed, 0);
    let second = alternating_max(h, q, iterations, restarts, seed, 1 << 16);
    let exact = (k == 2 && n > 0).then(|| {
        let mut a = DMatrix::<f64>::zeros(n, n);
        for e in h.edges() {
            let (u, v) = (e[0] as usize, e[1] as usize);
            a[(u, v)] = 1.0;
            a[(v, u)] = 1.0;
        }
        let spread = |m: DMatrix<f64>| SymmetricEigen::new(m).eigenvalues.iter().fold(0.0f64, |acc, l| acc.max(libm::fabs(*l)));
        let lambda1 = spread(a.clone());
        let lambda2 = spread(a.add_scalar(-q));
        ExactSpectral { lambda1, lambda2 }
    });
    SpectralReport {
        lambda1: first.best,
        lambda2: second.best,
        iterations: first.sweeps + second.sweeps,
        converged: first.converged && second.converged,
        restarts: restarts.max(1),
        history: second.history,
        exact,
        note: "lower-bound estimate".into(),
    }
}

//! (r, m)-templates with a flexible set, built by randomized construction and
//! verified by bipartite matching.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::binomial;
use crate::hypergraph::Vertex;
use crate::matching::hopcroft_karp;
use crate::rng;

pub const DEFAULT_DEGREE_CAP: usize = 40;
pub const EXHAUSTIVE_BUDGET: u64 = 1_000_000;
const RANDOM_ROUNDS: usize = 20;
const SAMPLED_TRIALS: usize = 2000;

/// Parts are consecutive index ranges: Y_0 = `0..4m`, then Y_1, ..., Y_{r-1}
/// with `3m` vertices each. Edges list one vertex per part, Y_0 first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Template {
    pub r: usize,
    pub m: usize,
    pub edges: Vec<Vec<Vertex>>,
    pub flexible: Vec<Vertex>,
    pub max_degree: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FlexMode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlexibilityReport {
    pub mode: FlexMode,
    pub tested: usize,
    pub passed: bool,
    /// A removal set Z′ leaving no perfect matching.
    pub witness: Option<Vec<Vertex>>,
}

impl Template {
    pub fn n(&self) -> usize {
        4 * self.m + 3 * self.m * (self.r - 1)
    }

    pub fn part(&self, i: usize) -> Range<Vertex> {
        let m = self.m as Vertex;
        if i == 0 {
            0..4 * m
        } else {
            let start = 4 * m + 3 * m * (i as Vertex - 1);
            start..start + 3 * m
        }
    }

    pub fn parts(&self) -> Vec<Range<Vertex>> {
        (0..self.r).map(|i| self.part(i)).collect()
    }

    fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n()];
        for e in &self.edges {
            for &v in e {
                d[v as usize] += 1;
            }
        }
        d
    }

    /// Checks part sizes, transversality and |Z| = 2m, Z ⊆ Y_0.
    pub fn check_shape(&self) -> core::result::Result<(), alloc::string::String> {
        if self.r < 2 || self.m < 1 {
            return Err(format!("bad parameters r = {}, m = {}", self.r, self.m));
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.len() != self.r || e.iter().enumerate().any(|(p, v)| !self.part(p).contains(v)) {
                return Err(format!("edge {i} {e:?} is not transversal"));
            }
        }
        let z: BTreeSet<Vertex> = self.flexible.iter().copied().collect();
        if z.len() != 2 * self.m || self.flexible.len() != 2 * self.m || z.iter().any(|v| !self.part(0).contains(v)) {
            return Err("flexible set must be 2m distinct vertices of Y_0".into());
        }
        let actual = self.degrees().into_iter().max().unwrap_or(0);
        if actual != self.max_degree {
            return Err(format!("recorded Δ_1 = {} but actual is {actual}", self.max_degree));
        }
        Ok(())
    }
}

/// Builds a flexible (r, m)-template with Δ_1 ≤ `degree_cap`.
///
/// Y_0 ∖ Z is matched perfectly onto a block Y_1b of 2m vertices. The other
/// block Y_1a (m vertices, y_0..y_{m-1}) meets Z = z_0..z_{2m-1} through the
/// m+1 shifted matchings y_j z_{j+s}, s = 0..m; any m vertices left in Z can
/// then be matched in order, so every attempt of this kind is flexible. When
/// m+1 exceeds the cap, unions of random near-perfect matchings are used
/// instead. Every attempt is verified and retried on failure.
pub fn build_template(r: usize, m: usize, seed: u64, degree_cap: usize, retries: usize) -> Result<Template> {
    if r < 2 || m < 1 {
        return Err(Error::arg(format!("templates need r >= 2 and m >= 1, got r = {r}, m = {m}")));
    }
    let mut worst = 0usize;
    let mut shape_failures = 0usize;
    for attempt in 0..retries.max(1) {
        let mut rng = rng::stream(seed, rng::TEMPLATE | attempt as u64);
        let t2 = if m < degree_cap {
            shifted_design(m, &mut rng)
        } else {
            random_design(m, degree_cap, &mut rng)
        };
        if t2.max_degree > degree_cap || t2.check_shape().is_err() {
            shape_failures += 1;
            continue;
        }
        let mode = if binomial(2 * m as u64, m as u64) <= EXHAUSTIVE_BUDGET as u128 {
            FlexMode::Exhaustive
        } else {
            FlexMode::Sampled
        };
        let report = verify_flexibility(&t2, mode, SAMPLED_TRIALS, seed ^ attempt as u64)?;
        if report.passed {
            return extend_template(&t2, r);
        }
        worst = worst.max(report.tested);
    }
    Err(Error::RetriesExhausted {
        attempts: retries.max(1),
        detail: format!("{shape_failures} attempts broke the degree cap; flexibility failed in the rest (up to {worst} removals tested)"),
    })
}

fn split_parts(m: usize, rng: &mut impl Rng) -> (Vec<Vertex>, Vec<Vertex>, Vec<Vertex>, Vec<Vertex>) {
    let mut y0: Vec<Vertex> = (0..4 * m as Vertex).collect();
    y0.shuffle(rng);
    let mut y1: Vec<Vertex> = (4 * m as Vertex..7 * m as Vertex).collect();
    y1.shuffle(rng);
    let fixed = y0.split_off(2 * m);
    let y1b = y1.split_off(m);
    (y0, fixed, y1, y1b)
}

fn finish(m: usize, mut edges: Vec<Vec<Vertex>>, mut z: Vec<Vertex>) -> Template {
    edges.sort_unstable();
    edges.dedup();
    z.sort_unstable();
    let mut t = Template { r: 2, m, edges, flexible: z, max_degree: 0 };
    t.max_degree = t.degrees().into_iter().max().unwrap_or(0);
    t
}

fn shifted_design(m: usize, rng: &mut impl Rng) -> Template {
    let (z, fixed, y1a, y1b) = split_parts(m, rng);
    let mut edges: Vec<Vec<Vertex>> = fixed.iter().zip(&y1b).map(|(&a, &b)| vec![a, b]).collect();
    for (j, &y) in y1a.iter().enumerate() {
        for s in 0..=m {
            edges.push(vec![z[j + s], y]);
        }
    }
    finish(m, edges, z)
}

fn random_design(m: usize, cap: usize, rng: &mut impl Rng) -> Template {
    let (z, fixed, y1a, y1b) = split_parts(m, rng);
    let mut y1 = y1a;
    y1.extend(y1b);
    let mut deg = vec![0usize; 7 * m];
    let mut edges = BTreeSet::new();
    for side in [&z, &fixed] {
        for _ in 0..RANDOM_ROUNDS {
            let mut targets = y1.clone();
            targets.shuffle(rng);
            for (&a, &b) in side.iter().zip(&targets) {
                if deg[a as usize] < cap && deg[b as usize] < cap && edges.insert((a, b)) {
                    deg[a as usize] += 1;
                    deg[b as usize] += 1;
                }
            }
        }
    }
    finish(m, edges.into_iter().map(|(a, b)| vec![a, b]).collect(), z)
}

/// Lifts a 2-template to uniformity `r_target` by cloning Y_1 into Y_2..Y_{r-1}.
pub fn extend_template(t2: &Template, r_target: usize) -> Result<Template> {
    if r_target < 2 {
        return Err(Error::arg("target uniformity must be at least 2"));
    }
    if t2.r != 2 {
        return Err(Error::arg("extend_template expects a 2-uniform template"));
    }
    let m = t2.m as Vertex;
    let edges = t2
        .edges
        .iter()
        .map(|e| {
            let (a, b) = (e[0], e[1]);
            let mut out = vec![a, b];
            out.extend((2..r_target as Vertex).map(|i| b + 3 * m * (i - 1)));
            out
        })
        .collect();
    Ok(Template { r: r_target, m: t2.m, edges, flexible: t2.flexible.clone(), max_degree: t2.max_degree })
}

/// Perfect matching of the template after deleting `z_prime`, as edge indices.
pub fn matching_after_removal(t: &Template, z_prime: &[Vertex]) -> Result<Option<Vec<usize>>> {
    let m = t.m;
    let removed: BTreeSet<Vertex> = z_prime.iter().copied().collect();
    if removed.len() != m || z_prime.len() != m {
        return Err(Error::arg(format!("Z′ must have exactly m = {m} distinct vertices")));
    }
    if removed.iter().any(|v| !t.flexible.contains(v)) {
        return Err(Error::arg("Z′ must lie inside the flexible set"));
    }
    let left: Vec<Vertex> = t.part(0).filter(|v| !removed.contains(v)).collect();
    let mut slot = vec![usize::MAX; 4 * m];
    for (i, &v) in left.iter().enumerate() {
        slot[v as usize] = i;
    }
    let y1 = t.part(1);
    let mut adj = vec![Vec::new(); left.len()];
    let mut edge_of = vec![Vec::new(); left.len()];
    for (idx, e) in t.edges.iter().enumerate() {
        let s = slot[e[0] as usize];
        if s != usize::MAX {
            adj[s].push((e[1] - y1.start) as usize);
            edge_of[s].push(idx);
        }
    }
    let mm = hopcroft_karp(&adj, 3 * m);
    let mut chosen = Vec::with_capacity(3 * m);
    for (s, partner) in mm.iter().enumerate() {
        match partner {
            Some(b) => {
                let pos = adj[s].iter().position(|x| x == b).expect("matched along an edge");
                chosen.push(edge_of[s][pos]);
            }
            None => return Ok(None),
        }
    }
    debug_assert!(check_matching(t, z_prime, &chosen).is_ok());
    Ok(Some(chosen))
}

/// Confirms that `edges` are disjoint, transversal and cover exactly V(T) ∖ Z′.
pub fn check_matching(t: &Template, z_prime: &[Vertex], edges: &[usize]) -> core::result::Result<(), alloc::string::String> {
    let mut hit = vec![0usize; t.n()];
    for &i in edges {
        let e = t.edges.get(i).ok_or_else(|| format!("edge {i} does not exist"))?;
        if e.len() != t.r || e.iter().enumerate().any(|(p, v)| !t.part(p).contains(v)) {
            return Err(format!("edge {i} is not transversal"));
        }
        for &v in e {
            hit[v as usize] += 1;
        }
    }
    for v in 0..t.n() as Vertex {
        let want = !z_prime.contains(&v) as usize;
        if hit[v as usize] != want {
            return Err(format!("vertex {v} covered {} times, expected {want}", hit[v as usize]));
        }
    }
    Ok(())
}

pub fn verify_flexibility(t: &Template, mode: FlexMode, trials: usize, seed: u64) -> Result<FlexibilityReport> {
    let m = t.m;
    let z = &t.flexible;
    let mut tested = 0;
    let mut check = |zp: &[Vertex]| -> Result<bool> {
        tested += 1;
        Ok(match matching_after_removal(t, zp)? {
            Some(edges) => check_matching(t, zp, &edges).is_ok(),
            None => false,
        })
    };
    match mode {
        FlexMode::Exhaustive => {
            if binomial(2 * m as u64, m as u64) > EXHAUSTIVE_BUDGET as u128 {
                return Err(Error::BudgetExhausted(EXHAUSTIVE_BUDGET));
            }
            let mut idx: Vec<usize> = (0..m).collect();
            loop {
                let zp: Vec<Vertex> = idx.iter().map(|&i| z[i]).collect();
                if !check(&zp)? {
                    return Ok(FlexibilityReport { mode, tested, passed: false, witness: Some(zp) });
                }
                let mut i = m;
                let mut advanced = false;
                while i > 0 {
                    i -= 1;
                    if idx[i] < 2 * m - m + i {
                        idx[i] += 1;
                        for j in i + 1..m {
                            idx[j] = idx[j - 1] + 1;
                        }
                        advanced = true;
                        break;
                    }
                }
                if !advanced {
                    break;
                }
            }
        }
        FlexMode::Sampled => {
            if trials == 0 {
                return Err(Error::arg("sampled verification needs at least one trial"));
            }
            let mut rng = rng::stream(seed, rng::FLEXIBILITY);
            for _ in 0..trials {
                let mut zp: Vec<Vertex> = z.choose_multiple(&mut rng, m).copied().collect();
                zp.sort_unstable();
                if !check(&zp)? {
                    return Ok(FlexibilityReport { mode, tested, passed: false, witness: Some(zp) });
                }
            }
        }
    }
    Ok(FlexibilityReport { mode, tested, passed: true, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_template() {
        let t = build_template(2, 1, 5, DEFAULT_DEGREE_CAP, 10).unwrap();
        assert_eq!((t.part(0).len(), t.part(1).len(), t.flexible.len()), (4, 3, 2));
        let rep = verify_flexibility(&t, FlexMode::Exhaustive, 0, 0).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.tested, 2);
        let mm = matching_after_removal(&t, &t.flexible[..1]).unwrap().unwrap();
        assert_eq!(mm.len(), 3);
    }

    #[test]
    fn uniformity_three_clones() {
        let t = build_template(3, 4, 1, DEFAULT_DEGREE_CAP, 10).unwrap();
        assert_eq!(t.parts().iter().map(|p| p.len()).collect::<Vec<_>>(), [16, 12, 12]);
        for e in &t.edges {
            assert_eq!(e[2], e[1] + 12);
        }
        assert!(t.check_shape().is_ok());
        assert!(t.max_degree <= DEFAULT_DEGREE_CAP);
        let rep = verify_flexibility(&t, FlexMode::Exhaustive, 0, 0).unwrap();
        assert!(rep.passed && rep.tested == 70);
    }

    #[test]
    fn degree_cap_one_exhausts_retries() {
        assert!(matches!(build_template(2, 4, 1, 1, 5), Err(Error::RetriesExhausted { attempts: 5, .. })));
    }

    #[test]
    fn isolated_flexible_vertex_is_caught() {
        let mut t = build_template(2, 3, 2, DEFAULT_DEGREE_CAP, 10).unwrap();
        let z = t.flexible[0];
        t.edges.retain(|e| e[0] != z);
        t.max_degree = t.degrees().into_iter().max().unwrap();
        let rep = verify_flexibility(&t, FlexMode::Exhaustive, 0, 0).unwrap();
        assert!(!rep.passed);
        assert!(!rep.witness.unwrap().contains(&z));
    }

    #[test]
    fn hall_violation_gives_none() {
        let t = Template {
            r: 2,
            m: 1,
            edges: vec![vec![0, 4], vec![1, 5], vec![2, 6], vec![3, 6]],
            flexible: vec![0, 1],
            max_degree: 2,
        };
        assert!(matching_after_removal(&t, &[0]).unwrap().is_none());
        assert!(matching_after_removal(&t, &[0, 1]).is_err());
        assert!(matching_after_removal(&t, &[2]).is_err());
    }

    #[test]
    fn extension_identity_and_errors() {
        let t = build_template(2, 2, 3, DEFAULT_DEGREE_CAP, 10).unwrap();
        assert_eq!(extend_template(&t, 2).unwrap(), t);
        assert!(extend_template(&t, 1).is_err());
        let t4 = extend_template(&t, 4).unwrap();
        assert_eq!(t4.edges.len(), t.edges.len());
        assert!(verify_flexibility(&t4, FlexMode::Exhaustive, 0, 0).unwrap().passed);
    }

    #[test]
    fn sampled_mode_on_large_m() {
        let t = build_template(2, 12, 9, DEFAULT_DEGREE_CAP, 3).unwrap();
        let rep = verify_flexibility(&t, FlexMode::Sampled, 200, 4).unwrap();
        assert!(rep.passed && rep.tested == 200);
        assert!(verify_flexibility(&t, FlexMode::Exhaustive, 0, 0).is_err());
    }
}

//! Violation lists shared by the verifiers, and loose-path checks.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::Serialize;

use crate::hypergraph::Vertex;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub violations: Vec<String>,
}

impl Verification {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, msg: impl Into<String>) {
        self.violations.push(msg.into());
    }

    pub fn extend(&mut self, other: Verification) {
        self.violations.extend(other.violations);
    }
}

/// Checks that `edges` form a loose path from `ends.0` to `ends.1` and
/// returns the vertices it covers (sorted). A path without edges is the
/// single vertex `ends.0 == ends.1`.
pub fn check_loose_path<E: AsRef<[Vertex]>>(
    edges: &[E],
    ends: (Vertex, Vertex),
) -> core::result::Result<Vec<Vertex>, String> {
    let t = edges.len();
    if t == 0 {
        return if ends.0 == ends.1 {
            Ok(alloc::vec![ends.0])
        } else {
            Err(format!("empty path cannot join {} and {}", ends.0, ends.1))
        };
    }
    let mut seen: BTreeMap<Vertex, Vec<usize>> = BTreeMap::new();
    for (i, e) in edges.iter().enumerate() {
        for &v in e.as_ref() {
            let at = seen.entry(v).or_default();
            if at.last() == Some(&i) {
                return Err(format!("edge {i} repeats vertex {v}"));
            }
            at.push(i);
        }
    }
    let mut shared = alloc::vec![0usize; t.saturating_sub(1)];
    for (&v, at) in &seen {
        match at.as_slice() {
            [_] => {}
            [a, b] if b - a == 1 => shared[*a] += 1,
            _ => return Err(format!("vertex {v} lies in edges {at:?}, which are not consecutive")),
        }
    }
    if let Some(i) = shared.iter().position(|&s| s != 1) {
        return Err(format!("edges {i} and {} share {} vertices", i + 1, shared[i]));
    }
    let only_in = |v: Vertex, i: usize| seen.get(&v).is_some_and(|at| at.as_slice() == [i]);
    if !only_in(ends.0, 0) {
        return Err(format!("end {} is not a private vertex of the first edge", ends.0));
    }
    if !only_in(ends.1, t - 1) || ends.0 == ends.1 {
        return Err(format!("end {} is not a private vertex of the last edge", ends.1));
    }
    Ok(seen.into_keys().collect())
}

/// Checks that `edges` (at least three) form a loose cycle in the given cyclic
/// order; returns the covered vertices.
pub fn check_loose_cycle<E: AsRef<[Vertex]>>(edges: &[E]) -> core::result::Result<Vec<Vertex>, String> {
    let t = edges.len();
    if t < 3 {
        return Err(format!("a loose cycle needs at least 3 edges, got {t}"));
    }
    let mut seen: BTreeMap<Vertex, Vec<usize>> = BTreeMap::new();
    for (i, e) in edges.iter().enumerate() {
        for &v in e.as_ref() {
            let at = seen.entry(v).or_default();
            if at.last() == Some(&i) {
                return Err(format!("edge {i} repeats vertex {v}"));
            }
            at.push(i);
        }
    }
    let mut shared = alloc::vec![0usize; t];
    for (&v, at) in &seen {
        match at.as_slice() {
            [_] => {}
            [a, b] if b - a == 1 => shared[*a] += 1,
            [0, b] if *b == t - 1 => shared[t - 1] += 1,
            _ => return Err(format!("vertex {v} lies in edges {at:?}, which are not cyclically consecutive")),
        }
    }
    if let Some(i) = shared.iter().position(|&s| s != 1) {
        return Err(format!("edges {i} and {} share {} vertices", (i + 1) % t, shared[i]));
    }
    Ok(seen.into_keys().collect())
}

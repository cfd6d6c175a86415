//! Hopcroft–Karp maximum matching on bipartite graphs.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

const NIL: usize = usize::MAX;

/// Maximum matching between `0..adj.len()` (left) and `0..right` (right).
/// Returns the partner of every left vertex.
pub fn hopcroft_karp(adj: &[Vec<usize>], right: usize) -> Vec<Option<usize>> {
    let left = adj.len();
    let mut match_l = vec![NIL; left];
    let mut match_r = vec![NIL; right];
    let mut dist = vec![0usize; left];
    loop {
        let mut queue = VecDeque::new();
        for u in 0..left {
            if match_l[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = NIL;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = match_r[v];
                if w == NIL {
                    found = true;
                } else if dist[w] == NIL {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }
        let mut it = vec![0usize; left];
        for u in 0..left {
            if match_l[u] == NIL {
                augment(u, adj, &mut match_l, &mut match_r, &mut dist, &mut it);
            }
        }
    }
    match_l.into_iter().map(|v| (v != NIL).then_some(v)).collect()
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    match_l: &mut [usize],
    match_r: &mut [usize],
    dist: &mut [usize],
    it: &mut [usize],
) -> bool {
    while it[u] < adj[u].len() {
        let v = adj[u][it[u]];
        it[u] += 1;
        let w = match_r[v];
        if w == NIL || (dist[w] == dist[u] + 1 && augment(w, adj, match_l, match_r, dist, it)) {
            match_l[u] = v;
            match_r[v] = u;
            return true;
        }
    }
    dist[u] = NIL;
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn perfect_and_deficient() {
        let adj = vec![vec![0, 1], vec![0], vec![1, 2]];
        let m = hopcroft_karp(&adj, 3);
        assert_eq!(m, [Some(1), Some(0), Some(2)]);
        let hall = vec![vec![0], vec![0], vec![1]];
        assert_eq!(hopcroft_karp(&hall, 2).iter().flatten().count(), 2);
        assert!(hopcroft_karp(&[], 4).is_empty());
    }
}

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hypergraph::Vertex;

/// Bitset over the vertex universe `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        VertexSet { n, words: vec![0; n.div_ceil(64)] }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::new(n);
        for v in 0..n {
            s.insert(v as Vertex);
        }
        s
    }

    pub fn from_slice(n: usize, vertices: &[Vertex]) -> Result<Self> {
        let mut s = Self::new(n);
        for &v in vertices {
            if v as usize >= n {
                return Err(Error::VertexOutOfRange { vertex: v as usize, n });
            }
            s.insert(v);
        }
        Ok(s)
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        let v = v as usize;
        v < self.n && self.words[v >> 6] >> (v & 63) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: Vertex) -> bool {
        let v = v as usize;
        assert!(v < self.n, "vertex {v} out of range");
        let was = self.words[v >> 6] >> (v & 63) & 1 == 1;
        self.words[v >> 6] |= 1 << (v & 63);
        !was
    }

    #[inline]
    pub fn remove(&mut self, v: Vertex) -> bool {
        let v = v as usize;
        if v >= self.n {
            return false;
        }
        let was = self.words[v >> 6] >> (v & 63) & 1 == 1;
        self.words[v >> 6] &= !(1 << (v & 63));
        was
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros();
                w &= w - 1;
                Some((i as u32) * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !*b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn complement(&self) -> VertexSet {
        let mut c = VertexSet::full(self.n);
        c.difference_with(self);
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut s = VertexSet::from_slice(130, &[0, 64, 129]).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.contains(129) && !s.contains(128));
        assert_eq!(s.to_vec(), [0, 64, 129]);
        s.remove(64);
        assert_eq!(s.complement().len(), 128);
        assert!(VertexSet::from_slice(4, &[4]).is_err());
    }
}

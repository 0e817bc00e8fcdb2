//! Fixed-width vertex sets.
//!
//! Every graph handled by this crate has at most [`MAX_VERTICES`] vertices, so a
//! set of vertices (or of positions inside an ordering) fits in a single `u64`.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use crate::Vertex;

/// Hard upper bound on the number of vertices of a [`crate::Graph`].
pub const MAX_VERTICES: usize = 64;

/// A set of vertex ids (or π-positions) in `0..64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The set `{0, 1, …, n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: Vertex) -> Self {
        debug_assert!(v < MAX_VERTICES);
        VertexSet(1u64 << v)
    }

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: Vertex) -> bool {
        v < MAX_VERTICES && self.0 & (1u64 << v) != 0
    }

    pub fn insert(&mut self, v: Vertex) {
        debug_assert!(v < MAX_VERTICES);
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: Vertex) {
        if v < MAX_VERTICES {
            self.0 &= !(1u64 << v);
        }
    }

    pub fn with(mut self, v: Vertex) -> Self {
        self.insert(v);
        self
    }

    pub fn without(mut self, v: Vertex) -> Self {
        self.remove(v);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest element.
    pub fn first(self) -> Option<Vertex> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest element.
    pub fn last(self) -> Option<Vertex> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// Elements in ascending order.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// The `count` smallest elements.
    pub fn take_smallest(self, count: usize) -> VertexSet {
        self.iter().take(count).collect()
    }

    /// The `count` largest elements.
    pub fn take_largest(self, count: usize) -> VertexSet {
        let mut out = VertexSet::EMPTY;
        let mut rest = self;
        for _ in 0..count {
            match rest.last() {
                Some(v) => {
                    out.insert(v);
                    rest.remove(v);
                }
                None => break,
            }
        }
        out
    }

    /// Elements strictly greater than `v`.
    pub fn above(self, v: Vertex) -> VertexSet {
        if v >= MAX_VERTICES - 1 {
            VertexSet::EMPTY
        } else {
            VertexSet(self.0 & !((1u64 << (v + 1)) - 1))
        }
    }

    /// Elements less than or equal to `v`.
    pub fn up_to(self, v: Vertex) -> VertexSet {
        if v >= MAX_VERTICES - 1 {
            self
        } else {
            VertexSet(self.0 & ((1u64 << (v + 1)) - 1))
        }
    }

    pub fn to_vec(self) -> Vec<Vertex> {
        self.iter().collect()
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Iter {}

impl IntoIterator for VertexSet {
    type Item = Vertex;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 | rhs.0)
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & rhs.0)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & !rhs.0)
    }
}

impl Not for VertexSet {
    type Output = VertexSet;
    fn not(self) -> VertexSet {
        VertexSet(!self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let s: VertexSet = [1, 5, 63].into_iter().collect();
        assert_eq!(s.len(), 3);
        assert_eq!(s.first(), Some(1));
        assert_eq!(s.last(), Some(63));
        assert_eq!(s.to_vec(), vec![1, 5, 63]);
        assert_eq!(s.above(1).to_vec(), vec![5, 63]);
        assert_eq!(s.up_to(5).to_vec(), vec![1, 5]);
        assert_eq!(s.take_largest(2).to_vec(), vec![5, 63]);
        assert_eq!(s.take_smallest(2).to_vec(), vec![1, 5]);
        assert_eq!(VertexSet::full(64).len(), 64);
        assert_eq!(VertexSet::full(3).to_vec(), vec![0, 1, 2]);
        assert!(VertexSet::EMPTY.first().is_none());
    }
}

//! Uniform hypergraphs: validated construction, generators and structural
//! queries.
//!
//! Vertices are 0-based here. Every edge is a strictly increasing vertex list
//! and the edge list is kept in lexicographic order, so two hypergraphs with
//! the same edge set compare equal.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// An `m`-uniform hypergraph on `n` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniformHypergraph {
    m: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
}

/// Number of edges containing each vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexDegreeProfile {
    pub degrees: Vec<usize>,
}

impl VertexDegreeProfile {
    pub fn max(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.degrees.iter().sum()
    }
}

impl UniformHypergraph {
    /// Builds a hypergraph from 0-based edges, rejecting malformed input.
    ///
    /// Vertices inside an edge may come in any order. Duplicate edges are an
    /// error rather than being merged.
    pub fn new<I, E>(m: usize, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        if m < 2 {
            return Err(Error::InvalidUniformity(m));
        }
        if n == 0 {
            return Err(Error::NoVertices);
        }
        let mut out: Vec<Vec<usize>> = Vec::new();
        for (idx, e) in edges.into_iter().enumerate() {
            let e = e.as_ref();
            if e.len() != m {
                return Err(Error::EdgeArity {
                    edge: idx,
                    expected: m,
                    found: e.len(),
                });
            }
            let mut sorted = e.to_vec();
            sorted.sort_unstable();
            for (i, &v) in sorted.iter().enumerate() {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if i > 0 && sorted[i - 1] == v {
                    return Err(Error::RepeatedVertex { vertex: v });
                }
            }
            out.push(sorted);
        }
        out.sort();
        if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge { edge: w[0].clone() });
        }
        Ok(Self { m, n, edges: out })
    }

    /// Same as [`UniformHypergraph::new`] but with 1-based vertex labels.
    pub fn from_one_based<I, E>(m: usize, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        let shifted: Vec<Vec<usize>> = edges
            .into_iter()
            .map(|e| {
                e.as_ref()
                    .iter()
                    .map(|&v| if v == 0 { usize::MAX } else { v - 1 })
                    .collect()
            })
            .collect();
        Self::new(m, n, shifted).map_err(|err| match err {
            Error::VertexOutOfRange { vertex, n } => Error::VertexOutOfRange {
                vertex: vertex.wrapping_add(1),
                n,
            },
            other => other,
        })
    }

    pub fn uniformity(&self) -> usize {
        self.m
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn degrees(&self) -> VertexDegreeProfile {
        let mut degrees = vec![0usize; self.n];
        for e in &self.edges {
            for &v in e {
                degrees[v] += 1;
            }
        }
        VertexDegreeProfile { degrees }
    }

    /// Indices of the edges containing each vertex.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v].push(i);
            }
        }
        inc
    }

    /// Eigenvalue count `k = n (m-1)^(n-1)` of the adjacency tensor, if it
    /// fits in a `u128`.
    pub fn eigenvalue_count(&self) -> Result<u128> {
        eigenvalue_count(self.n, self.m)
    }

    /// Connected components as sorted vertex lists. Isolated vertices form
    /// singleton components.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in &self.edges {
            let r0 = find(&mut parent, e[0]);
            for &v in &e[1..] {
                let r = find(&mut parent, v);
                if r != r0 {
                    parent[r] = r0;
                }
            }
        }
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; self.n];
        for v in 0..self.n {
            let r = find(&mut parent, v);
            if slot[r] == usize::MAX {
                slot[r] = comps.len();
                comps.push(Vec::new());
            }
            comps[slot[r]].push(v);
        }
        comps
    }

    /// The sub-hypergraph induced on `vertices` (sorted), relabelled to
    /// `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let mut map = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            map[v] = i;
        }
        let mut edges: Vec<Vec<usize>> = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| map[v] != usize::MAX))
            .map(|e| e.iter().map(|&v| map[v]).collect())
            .collect();
        edges.sort();
        Self {
            m: self.m,
            n: vertices.len().max(1),
            edges,
        }
    }

    /// Disjoint union, with `other`'s vertices placed after this one's.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        if self.m != other.m {
            return Err(Error::InvalidParameter(
                "disjoint union needs equal uniformity",
            ));
        }
        let shift = self.n;
        let edges = self.edges.iter().cloned().chain(
            other
                .edges
                .iter()
                .map(|e| e.iter().map(|&v| v + shift).collect::<Vec<_>>()),
        );
        Self::new(self.m, self.n + other.n, edges)
    }

    /// Recognises a hyperstar: `q` edges sharing one center and otherwise
    /// disjoint, with no isolated vertices. Returns `(center, q)`.
    pub fn hyperstar_center(&self) -> Option<(usize, usize)> {
        let q = self.edges.len();
        if q == 0 || self.n != q * (self.m - 1) + 1 {
            return None;
        }
        let deg = self.degrees().degrees;
        if q == 1 {
            return Some((self.edges[0][0], 1));
        }
        let center = deg.iter().position(|&d| d == q)?;
        let others_ok = deg.iter().enumerate().all(|(v, &d)| v == center || d == 1);
        if others_ok && self.edges.iter().all(|e| e.contains(&center)) {
            Some((center, q))
        } else {
            None
        }
    }

    /// Lexicographically smallest relabelled edge list over all vertex
    /// permutations. Only available for `n <= 8`.
    pub fn canonical_form(&self) -> Option<Vec<Vec<usize>>> {
        if self.n > 8 {
            return None;
        }
        let mut perm: Vec<usize> = (0..self.n).collect();
        let mut best: Option<Vec<Vec<usize>>> = None;
        loop {
            let mut relabelled: Vec<Vec<usize>> = self
                .edges
                .iter()
                .map(|e| {
                    let mut r: Vec<usize> = e.iter().map(|&v| perm[v]).collect();
                    r.sort_unstable();
                    r
                })
                .collect();
            relabelled.sort();
            if best.as_ref().is_none_or(|b| relabelled < *b) {
                best = Some(relabelled);
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        best
    }

    /// Isomorphism test through [`UniformHypergraph::canonical_form`];
    /// `None` when either side is too large for it.
    pub fn is_isomorphic(&self, other: &Self) -> Option<bool> {
        if self.m != other.m || self.n != other.n || self.edges.len() != other.edges.len() {
            return Some(false);
        }
        if self.degree_multiset() != other.degree_multiset() {
            return Some(false);
        }
        Some(self.canonical_form()? == other.canonical_form()?)
    }

    fn degree_multiset(&self) -> Vec<usize> {
        let mut d = self.degrees().degrees;
        d.sort_unstable();
        d
    }
}

pub(crate) fn eigenvalue_count(n: usize, m: usize) -> Result<u128> {
    let overflow = Error::EigenvalueCountOverflow { n, m };
    let exp = u32::try_from(n - 1).map_err(|_| overflow.clone())?;
    (m as u128 - 1)
        .checked_pow(exp)
        .and_then(|p| p.checked_mul(n as u128))
        .ok_or(overflow)
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// The `m`-uniform hyperstar with `q` edges. Vertex 0 is the center.
pub fn gen_hyperstar(m: usize, q: usize) -> Result<UniformHypergraph> {
    if q == 0 {
        return Err(Error::InvalidParameter(
            "hyperstar needs q >= 1; use gen_empty for edgeless hypergraphs",
        ));
    }
    if m < 2 {
        return Err(Error::InvalidUniformity(m));
    }
    let n = q * (m - 1) + 1;
    let edges = (0..q).map(|j| {
        let mut e = vec![0];
        e.extend((0..m - 1).map(|t| 1 + j * (m - 1) + t));
        e
    });
    UniformHypergraph::new(m, n, edges)
}

/// The loose `m`-uniform hyperpath with `p` edges: consecutive edges share
/// one vertex, others are disjoint.
pub fn gen_hyperpath(m: usize, p: usize) -> Result<UniformHypergraph> {
    if p == 0 {
        return Err(Error::InvalidParameter(
            "hyperpath needs p >= 1; use gen_empty for edgeless hypergraphs",
        ));
    }
    if m < 2 {
        return Err(Error::InvalidUniformity(m));
    }
    let n = p * (m - 1) + 1;
    let edges = (0..p).map(|j| ((j * (m - 1))..=(j * (m - 1) + m - 1)).collect::<Vec<_>>());
    UniformHypergraph::new(m, n, edges)
}

/// The edgeless `m`-uniform hypergraph on `n` vertices.
pub fn gen_empty(m: usize, n: usize) -> Result<UniformHypergraph> {
    UniformHypergraph::new(m, n, core::iter::empty::<Vec<usize>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            UniformHypergraph::new(3, 3, [[0usize, 1].as_slice()]),
            Err(Error::EdgeArity {
                edge: 0,
                expected: 3,
                found: 2
            })
        );
        assert_eq!(
            UniformHypergraph::new(3, 3, [[0usize, 1, 3]]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(
            UniformHypergraph::new(3, 3, [[0usize, 1, 1]]),
            Err(Error::RepeatedVertex { vertex: 1 })
        );
        assert!(matches!(
            UniformHypergraph::new(3, 4, [[0usize, 1, 2], [2, 1, 0]]),
            Err(Error::DuplicateEdge { .. })
        ));
        assert_eq!(gen_empty(1, 3), Err(Error::InvalidUniformity(1)));
        assert_eq!(gen_empty(3, 0), Err(Error::NoVertices));
    }

    #[test]
    fn one_based_labels() {
        let h = UniformHypergraph::from_one_based(3, 3, [[1usize, 2, 3]]).unwrap();
        assert_eq!(h.edges(), &[vec![0, 1, 2]]);
        assert_eq!(
            UniformHypergraph::from_one_based(3, 3, [[1usize, 2, 4]]),
            Err(Error::VertexOutOfRange { vertex: 4, n: 3 })
        );
        assert_eq!(
            UniformHypergraph::from_one_based(3, 3, [[0usize, 2, 3]]),
            Err(Error::VertexOutOfRange { vertex: 0, n: 3 })
        );
    }

    #[test]
    fn generators() {
        let s = gen_hyperstar(3, 2).unwrap();
        assert_eq!(s.vertex_count(), 5);
        assert_eq!(s.edges(), &[vec![0, 1, 2], vec![0, 3, 4]]);
        assert_eq!(s.degrees().degrees, vec![2, 1, 1, 1, 1]);

        let s = gen_hyperstar(4, 3).unwrap();
        assert_eq!(s.vertex_count(), 10);
        assert!(s.edges().iter().all(|e| e[0] == 0));

        assert_eq!(gen_hyperpath(3, 1).unwrap(), gen_hyperstar(3, 1).unwrap());
        let p = gen_hyperpath(3, 3).unwrap();
        assert_eq!(p.vertex_count(), 7);
        assert_eq!(p.edges(), &[vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 6]]);

        assert!(gen_hyperstar(3, 0).is_err());
        assert!(gen_hyperpath(3, 0).is_err());

        for (m, n) in [(3, 3), (2, 5), (4, 4)] {
            let e = gen_empty(m, n).unwrap();
            assert_eq!(e.edge_count(), 0);
            assert_eq!(e.vertex_count(), n);
        }
        assert_eq!(gen_empty(3, 4).unwrap().degrees().degrees, vec![0; 4]);
        assert_eq!(gen_hyperstar(3, 1).unwrap().degrees().degrees, vec![1; 3]);
    }

    #[test]
    fn hyperpath_two_edges_is_a_hyperstar() {
        for m in 2..=4 {
            let p = gen_hyperpath(m, 2).unwrap();
            let s = gen_hyperstar(m, 2).unwrap();
            assert_eq!(p.is_isomorphic(&s), Some(true));
            assert_eq!(p.hyperstar_center().map(|c| c.1), Some(2));
        }
        let p3 = gen_hyperpath(3, 3).unwrap();
        assert_eq!(p3.hyperstar_center(), None);
        assert_eq!(p3.is_isomorphic(&gen_hyperstar(3, 3).unwrap()), Some(false));
    }

    #[test]
    fn hyperstar_detection_needs_exact_vertex_count() {
        let padded = UniformHypergraph::new(3, 6, [[0usize, 1, 2], [0, 3, 4]]).unwrap();
        assert_eq!(padded.hyperstar_center(), None);
        let relabelled = UniformHypergraph::new(3, 5, [[4usize, 0, 1], [4, 2, 3]]).unwrap();
        assert_eq!(relabelled.hyperstar_center(), Some((4, 2)));
    }

    #[test]
    fn components_and_union() {
        let a = gen_hyperstar(3, 1).unwrap();
        let b = gen_hyperpath(3, 2).unwrap();
        let u = a.disjoint_union(&b).unwrap();
        assert_eq!(u.vertex_count(), 8);
        let comps = u.components();
        assert_eq!(comps, vec![vec![0, 1, 2], vec![3, 4, 5, 6, 7]]);
        assert_eq!(u.induced(&comps[1]), b);
        assert_eq!(gen_empty(3, 3).unwrap().components().len(), 3);
    }

    #[test]
    fn eigenvalue_counts() {
        assert_eq!(gen_empty(3, 3).unwrap().eigenvalue_count(), Ok(12));
        assert_eq!(gen_hyperstar(3, 2).unwrap().eigenvalue_count(), Ok(80));
        assert_eq!(gen_hyperstar(3, 4).unwrap().eigenvalue_count(), Ok(2304));
        assert!(gen_empty(3, 200).unwrap().eigenvalue_count().is_err());
    }
}

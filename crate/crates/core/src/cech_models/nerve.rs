//! Finite simplicial complexes used as nerves of good covers.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exact_linalg::IntMatrix;
use crate::scalar::int;

/// Simplex identifier: (dimension, position within that dimension).
pub type SimplexId = (usize, usize);

/// Face-closed set of simplices; each simplex is a strictly increasing vertex tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nerve {
    n_vertices: usize,
    simplices: Vec<Vec<Vec<usize>>>,
    index: BTreeMap<Vec<usize>, usize>,
}

impl Nerve {
    /// Closure under faces of the given simplices.
    pub fn from_facets(n_vertices: usize, facets: &[Vec<usize>]) -> Result<Self> {
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        for f in facets {
            let mut s = f.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != f.len() || s.iter().any(|&v| v >= n_vertices) {
                return Err(Error::Malformed(alloc::format!("bad simplex {f:?}")));
            }
            let m = s.len();
            for mask in 1u64..(1u64 << m) {
                all.insert((0..m).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect());
            }
        }
        Self::from_simplices(n_vertices, all.into_iter().collect())
    }

    /// Validates face closure and builds the index.
    pub fn from_simplices(n_vertices: usize, list: Vec<Vec<usize>>) -> Result<Self> {
        let set: BTreeSet<Vec<usize>> = list.iter().cloned().collect();
        if set.len() != list.len() {
            return Err(Error::Malformed("duplicate simplex".into()));
        }
        let top = list.iter().map(|s| s.len()).max().unwrap_or(0);
        let mut simplices: Vec<Vec<Vec<usize>>> = alloc::vec![Vec::new(); top];
        for s in &set {
            if s.is_empty() || s.windows(2).any(|w| w[0] >= w[1]) || s.iter().any(|&v| v >= n_vertices) {
                return Err(Error::Malformed(alloc::format!("bad simplex {s:?}")));
            }
            for i in 0..s.len() {
                if s.len() > 1 {
                    let mut f = s.clone();
                    f.remove(i);
                    if !set.contains(&f) {
                        return Err(Error::Malformed(alloc::format!("face {f:?} of {s:?} missing")));
                    }
                }
            }
            simplices[s.len() - 1].push(s.clone());
        }
        let mut index = BTreeMap::new();
        for level in &simplices {
            for (i, s) in level.iter().enumerate() {
                index.insert(s.clone(), i);
            }
        }
        Ok(Nerve { n_vertices, simplices, index })
    }

    pub fn point() -> Self {
        Self::from_facets(1, &[alloc::vec![0]]).expect("point")
    }

    /// The full simplex on `n + 1` vertices (a contractible nerve).
    pub fn simplex(n: usize) -> Self {
        Self::from_facets(n + 1, &[(0..=n).collect()]).expect("simplex")
    }

    /// Seven-vertex triangulation of the torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7.
    pub fn torus7() -> Self {
        let mut facets = Vec::new();
        for i in 0..7 {
            facets.push(alloc::vec![i, (i + 1) % 7, (i + 3) % 7]);
            facets.push(alloc::vec![i, (i + 2) % 7, (i + 3) % 7]);
        }
        Self::from_facets(7, &facets).expect("torus")
    }

    /// Three vertices and three edges.
    pub fn circle3() -> Self {
        Self::from_facets(3, &[alloc::vec![0, 1], alloc::vec![0, 2], alloc::vec![1, 2]]).expect("circle")
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }
    /// Top dimension plus one (0 for the empty nerve).
    pub fn len(&self) -> usize {
        self.simplices.len()
    }
    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }
    pub fn count(&self, d: usize) -> usize {
        self.simplices.get(d).map_or(0, |v| v.len())
    }
    pub fn simplices(&self, d: usize) -> &[Vec<usize>] {
        self.simplices.get(d).map_or(&[], |v| v.as_slice())
    }
    pub fn simplex_at(&self, id: SimplexId) -> &[usize] {
        &self.simplices[id.0][id.1]
    }
    pub fn id_of(&self, s: &[usize]) -> Option<SimplexId> {
        self.index.get(s).map(|&i| (s.len() - 1, i))
    }
    pub fn ids(&self) -> impl Iterator<Item = SimplexId> + '_ {
        self.simplices.iter().enumerate().flat_map(|(d, v)| (0..v.len()).map(move |i| (d, i)))
    }
    pub fn all_simplices(&self) -> Vec<Vec<usize>> {
        self.simplices.iter().flatten().cloned().collect()
    }

    /// Integral coboundary `C^d -> C^{d+1}`: `(dc)(v_0..v_{d+1}) = sum (-1)^i c(face_i)`.
    pub fn coboundary(&self, d: usize) -> IntMatrix {
        let mut ts = Vec::new();
        for (j, s) in self.simplices(d + 1).iter().enumerate() {
            for i in 0..s.len() {
                let mut f = s.clone();
                f.remove(i);
                let col = self.index[&f];
                ts.push((j, col, int(if i % 2 == 0 { 1 } else { -1 })));
            }
        }
        IntMatrix::from_triplets(self.count(d + 1), self.count(d), ts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_counts() {
        let t = Nerve::torus7();
        assert_eq!((t.count(0), t.count(1), t.count(2)), (7, 21, 14));
        assert!(t.coboundary(1).mul(&t.coboundary(0)).is_zero());
    }

    #[test]
    fn missing_face_is_rejected() {
        assert!(Nerve::from_simplices(2, alloc::vec![alloc::vec![0], alloc::vec![0, 1]]).is_err());
    }
}

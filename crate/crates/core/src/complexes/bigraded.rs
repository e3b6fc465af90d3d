//! Bigraded pieces with a horizontal and a vertical differential.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exact_linalg::QiMatrix;
use crate::scalar::Qi;

use super::cochain::{CochainComplex, ComplexMorphism, Ring};

pub type Bidegree = (usize, usize);

/// Position of each piece `(r, s)` inside the total complex: degree `r + s`, pieces ordered by `r`.
#[derive(Clone, Debug, Default)]
pub struct TotalLayout {
    pub offsets: BTreeMap<Bidegree, usize>,
    pub ranks: BTreeMap<Bidegree, usize>,
    pub dims: Vec<usize>,
}

impl TotalLayout {
    pub fn new(ranks: &BTreeMap<Bidegree, usize>) -> Self {
        let top = ranks.keys().map(|&(r, s)| r + s + 1).max().unwrap_or(0);
        let mut dims = alloc::vec![0; top];
        let mut by_degree: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (&(r, s), &n) in ranks {
            by_degree.insert((r + s, r), n);
        }
        let mut offsets = BTreeMap::new();
        for (&(k, r), &n) in &by_degree {
            offsets.insert((r, k - r), dims[k]);
            dims[k] += n;
        }
        TotalLayout { offsets, ranks: ranks.clone(), dims }
    }

    pub fn offset(&self, b: Bidegree) -> Option<usize> {
        self.offsets.get(&b).copied()
    }
    pub fn rank(&self, b: Bidegree) -> usize {
        self.ranks.get(&b).copied().unwrap_or(0)
    }
    pub fn dim(&self, k: usize) -> usize {
        self.dims.get(k).copied().unwrap_or(0)
    }
    pub fn pieces_in(&self, k: usize) -> impl Iterator<Item = Bidegree> + '_ {
        (0..=k).map(move |r| (r, k - r)).filter(|b| self.ranks.contains_key(b))
    }

    /// Extracts the `(r, s)` block of a degree-`r+s` vector.
    pub fn component(&self, b: Bidegree, x: &[Qi]) -> Vec<Qi> {
        match self.offset(b) {
            Some(o) => x[o..o + self.rank(b)].to_vec(),
            None => Vec::new(),
        }
    }
}

#[derive(Clone, Debug, Default)]
struct Pieces {
    ranks: BTreeMap<Bidegree, usize>,
    h: BTreeMap<Bidegree, QiMatrix>,
    v: BTreeMap<Bidegree, QiMatrix>,
}

impl Pieces {
    fn rank(&self, b: Bidegree) -> usize {
        self.ranks.get(&b).copied().unwrap_or(0)
    }
    fn h(&self, (r, s): Bidegree) -> QiMatrix {
        self.h.get(&(r, s)).cloned().unwrap_or_else(|| QiMatrix::zeros(self.rank((r + 1, s)), self.rank((r, s))))
    }
    fn v(&self, (r, s): Bidegree) -> QiMatrix {
        self.v.get(&(r, s)).cloned().unwrap_or_else(|| QiMatrix::zeros(self.rank((r, s + 1)), self.rank((r, s))))
    }

    fn check(&self, anticommute: bool) -> Result<()> {
        for (&(r, s), m) in &self.h {
            if (m.nrows(), m.ncols()) != (self.rank((r + 1, s)), self.rank((r, s))) {
                return Err(Error::DimensionMismatch(format!("horizontal map at ({r},{s})")));
            }
        }
        for (&(r, s), m) in &self.v {
            if (m.nrows(), m.ncols()) != (self.rank((r, s + 1)), self.rank((r, s))) {
                return Err(Error::DimensionMismatch(format!("vertical map at ({r},{s})")));
            }
        }
        for &(r, s) in self.ranks.keys() {
            if !self.h((r + 1, s)).mul(&self.h((r, s))).is_zero() || !self.v((r, s + 1)).mul(&self.v((r, s))).is_zero() {
                return Err(Error::NotAComplex { degree: r + s });
            }
            let hv = self.h((r, s + 1)).mul(&self.v((r, s)));
            let vh = self.v((r + 1, s)).mul(&self.h((r, s)));
            let ok = if anticommute { hv.add(&vh).is_zero() } else { hv == vh };
            if !ok {
                return Err(Error::NotAComplex { degree: r + s });
            }
        }
        Ok(())
    }

    /// Total differential `h + sign(r) v` on the pieces accepted by `keep`.
    fn total(&self, keep: impl Fn(Bidegree) -> bool, vsign: impl Fn(usize) -> bool) -> (CochainComplex, TotalLayout) {
        let ranks: BTreeMap<Bidegree, usize> = self.ranks.iter().filter(|(b, _)| keep(**b)).map(|(b, n)| (*b, *n)).collect();
        let lay = TotalLayout::new(&ranks);
        let top = lay.dims.len();
        let mut ds = Vec::new();
        for k in 0..top.saturating_sub(1) {
            let mut ts = Vec::new();
            for b in lay.pieces_in(k) {
                let (r, s) = b;
                let o = lay.offsets[&b];
                if let Some(t) = lay.offset((r + 1, s)) {
                    for (i, j, x) in self.h(b).triplets() {
                        ts.push((t + i, o + j, x.clone()));
                    }
                }
                if let Some(t) = lay.offset((r, s + 1)) {
                    let neg = vsign(r);
                    for (i, j, x) in self.v(b).triplets() {
                        ts.push((t + i, o + j, if neg { -x.clone() } else { x.clone() }));
                    }
                }
            }
            ds.push(QiMatrix::from_triplets(lay.dims[k + 1], lay.dims[k], ts));
        }
        let c = CochainComplex::new(Ring::Qi, lay.dims.clone(), ds).expect("total differential squares to zero");
        (c, lay)
    }
}

/// Form-type pieces `(r, s)` with `del: (r,s) -> (r+1,s)` and `delbar: (r,s) -> (r,s+1)`, unsigned.
#[derive(Clone, Debug)]
pub struct BigradedComplex {
    p: Pieces,
}

/// Level-p truncation: pieces with `r < p`, `d_p = pi_p . d`, and `pi_p` itself.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub level: usize,
    pub full: CochainComplex,
    pub full_layout: TotalLayout,
    pub truncated: CochainComplex,
    pub layout: TotalLayout,
    pub pi: ComplexMorphism,
}

impl BigradedComplex {
    pub fn new(ranks: BTreeMap<Bidegree, usize>, del: BTreeMap<Bidegree, QiMatrix>, delbar: BTreeMap<Bidegree, QiMatrix>) -> Result<Self> {
        let p = Pieces { ranks, h: del, v: delbar };
        p.check(true)?;
        Ok(BigradedComplex { p })
    }

    pub fn ranks(&self) -> &BTreeMap<Bidegree, usize> {
        &self.p.ranks
    }
    pub fn del(&self, b: Bidegree) -> QiMatrix {
        self.p.h(b)
    }
    pub fn delbar(&self, b: Bidegree) -> QiMatrix {
        self.p.v(b)
    }

    /// Forms with `d = del + delbar`.
    pub fn total(&self) -> (CochainComplex, TotalLayout) {
        self.p.total(|_| true, |_| false)
    }

    pub fn truncate_level(&self, level: usize) -> Truncation {
        let (full, full_layout) = self.total();
        let (truncated, layout) = self.p.total(|(r, _)| r < level, |_| false);
        let maps = (0..full.len())
            .map(|k| {
                let mut ts = Vec::new();
                for b in layout.pieces_in(k) {
                    let (src, dst) = (full_layout.offsets[&b], layout.offsets[&b]);
                    for i in 0..layout.rank(b) {
                        ts.push((dst + i, src + i, Qi::from_int(1)));
                    }
                }
                QiMatrix::from_triplets(layout.dim(k), full_layout.dim(k), ts)
            })
            .collect();
        let pi = ComplexMorphism::new(full.clone(), truncated.clone(), maps).expect("projection is a chain map");
        Truncation { level, full, full_layout, truncated, layout, pi }
    }
}

/// Pieces `(r, s)` with commuting `delta: (r,s) -> (r+1,s)` and `d: (r,s) -> (r,s+1)`;
/// the total differential is `delta + (-1)^r d`.
#[derive(Clone, Debug)]
pub struct DoubleComplex {
    p: Pieces,
}

impl DoubleComplex {
    pub fn new(ranks: BTreeMap<Bidegree, usize>, delta: BTreeMap<Bidegree, QiMatrix>, d: BTreeMap<Bidegree, QiMatrix>) -> Result<Self> {
        let p = Pieces { ranks, h: delta, v: d };
        p.check(false)?;
        Ok(DoubleComplex { p })
    }

    pub fn ranks(&self) -> &BTreeMap<Bidegree, usize> {
        &self.p.ranks
    }
    pub fn delta(&self, b: Bidegree) -> QiMatrix {
        self.p.h(b)
    }
    pub fn vertical(&self, b: Bidegree) -> QiMatrix {
        self.p.v(b)
    }

    pub fn total_complex(&self) -> (CochainComplex, TotalLayout) {
        self.p.total(|_| true, |r| r % 2 == 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn invariant_forms_curve() -> BigradedComplex {
        // invariant forms on a complex curve: 1, dz, dzbar, dz dzbar with zero differentials
        let ranks = [((0, 0), 1), ((1, 0), 1), ((0, 1), 1), ((1, 1), 1)].into_iter().collect();
        BigradedComplex::new(ranks, BTreeMap::new(), BTreeMap::new()).unwrap()
    }

    #[test]
    fn level_one_keeps_antiholomorphic_column() {
        let t = invariant_forms_curve().truncate_level(1);
        assert_eq!(t.truncated.dims(), &[1, 1]);
        let ranks: Vec<usize> = (0..3).map(|k| t.truncated.cohomology(k).invariants().q_rank).collect();
        assert_eq!(ranks, alloc::vec![2, 2, 0]);
    }

    #[test]
    fn large_level_is_identity() {
        let b = invariant_forms_curve();
        let t = b.truncate_level(5);
        assert_eq!(t.truncated.dims(), b.total().0.dims());
    }

    #[test]
    fn single_column_total_is_original() {
        let one = QiMatrix::from_triplets(1, 1, [(0, 0, Qi::from_int(1))]);
        let ranks = [((0, 0), 1), ((0, 1), 1)].into_iter().collect();
        let dc = DoubleComplex::new(ranks, BTreeMap::new(), [((0, 0), one.clone())].into_iter().collect()).unwrap();
        let (c, _) = dc.total_complex();
        assert_eq!(c.diff(0), one);
    }
}

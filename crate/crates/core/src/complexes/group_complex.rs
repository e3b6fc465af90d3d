//! Complexes of mixed groups Q^q + Z^z with rational differentials.
//!
//! Every complex over Z, Q or Q(i) is realified into this form before any
//! group-theoretic computation; mapping cones mix the two kinds of summands.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exact_linalg::{Ambient, Hom, ModuleHom, QZModule, RatMatrix, SVec, Subgroup};

#[derive(Clone, Debug)]
pub struct GroupComplex {
    amb: Vec<Ambient>,
    d: Vec<RatMatrix>,
}

impl GroupComplex {
    pub fn new(amb: Vec<Ambient>, d: Vec<RatMatrix>) -> Result<Self> {
        if d.len() + 1 != amb.len().max(1) {
            return Err(Error::DimensionMismatch(format!("{} differentials for {} degrees", d.len(), amb.len())));
        }
        for (k, m) in d.iter().enumerate() {
            if (m.nrows(), m.ncols()) != (amb[k + 1].dim(), amb[k].dim()) {
                return Err(Error::DimensionMismatch(format!("d^{k} has shape {}x{}", m.nrows(), m.ncols())));
            }
        }
        for k in 1..d.len() {
            if !d[k].mul(&d[k - 1]).is_zero() {
                return Err(Error::NotAComplex { degree: k });
            }
        }
        Ok(GroupComplex { amb, d })
    }

    pub fn len(&self) -> usize {
        self.amb.len()
    }
    pub fn is_empty(&self) -> bool {
        self.amb.iter().all(|a| a.dim() == 0)
    }

    pub fn ambient(&self, k: usize) -> Ambient {
        self.amb.get(k).copied().unwrap_or(Ambient::new(0, 0))
    }

    pub fn diff(&self, k: usize) -> Hom {
        let m = self
            .d
            .get(k)
            .cloned()
            .unwrap_or_else(|| RatMatrix::zeros(self.ambient(k + 1).dim(), self.ambient(k).dim()));
        Hom::new(self.ambient(k), self.ambient(k + 1), m)
    }

    pub fn cocycles(&self, k: usize) -> Subgroup {
        Subgroup::full(self.ambient(k)).kernel(&self.diff(k))
    }

    pub fn coboundaries(&self, k: usize) -> Subgroup {
        match k.checked_sub(1) {
            Some(j) => Subgroup::full(self.ambient(j)).image(&self.diff(j)),
            None => Subgroup::zero(self.ambient(0)),
        }
    }

    pub fn cohomology(&self, k: usize) -> QZModule {
        QZModule::new(self.cocycles(k), self.coboundaries(k))
    }
}

#[derive(Clone, Debug)]
pub struct GroupMorphism {
    pub source: GroupComplex,
    pub target: GroupComplex,
    maps: Vec<Hom>,
}

impl GroupMorphism {
    pub fn new(source: GroupComplex, target: GroupComplex, maps: Vec<Hom>) -> Result<Self> {
        let n = source.len().max(target.len());
        let mut full = Vec::with_capacity(n);
        for k in 0..n {
            let h = maps.get(k).cloned().unwrap_or_else(|| {
                Hom::new(source.ambient(k), target.ambient(k), RatMatrix::zeros(target.ambient(k).dim(), source.ambient(k).dim()))
            });
            if h.source != source.ambient(k) || h.target != target.ambient(k) {
                return Err(Error::DimensionMismatch(format!("component {k}")));
            }
            full.push(h);
        }
        let f = GroupMorphism { source, target, maps: full };
        for k in 0..n {
            if f.target.diff(k).compose(&f.map(k)).matrix != f.map(k + 1).compose(&f.source.diff(k)).matrix {
                return Err(Error::NotAChainMap { degree: k });
            }
        }
        Ok(f)
    }

    pub fn map(&self, k: usize) -> Hom {
        self.maps.get(k).cloned().unwrap_or_else(|| {
            let (s, t) = (self.source.ambient(k), self.target.ambient(k));
            Hom::new(s, t, RatMatrix::zeros(t.dim(), s.dim()))
        })
    }

    pub fn induced(&self, k: usize) -> ModuleHom {
        ModuleHom::new(self.source.cohomology(k), self.target.cohomology(k), self.map(k))
    }

    pub fn compose(&self, first: &GroupMorphism) -> Result<GroupMorphism> {
        let n = first.source.len().max(self.target.len());
        let maps = (0..n).map(|k| self.map(k).compose(&first.map(k))).collect();
        GroupMorphism::new(first.source.clone(), self.target.clone(), maps)
    }

    /// Per-degree injectivity and surjectivity of the induced maps.
    pub fn quasi_isomorphism_report(&self) -> QuasiIsoReport {
        let n = self.source.len().max(self.target.len());
        let degrees = (0..n)
            .map(|k| {
                let h = self.induced(k);
                DegreeVerdict { degree: k, injective: h.is_injective(), surjective: h.is_surjective() }
            })
            .collect();
        QuasiIsoReport { degrees }
    }

    pub fn is_quasi_isomorphism(&self) -> bool {
        self.quasi_isomorphism_report().holds()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeVerdict {
    pub degree: usize,
    pub injective: bool,
    pub surjective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiIsoReport {
    pub degrees: Vec<DegreeVerdict>,
}

impl QuasiIsoReport {
    pub fn holds(&self) -> bool {
        self.degrees.iter().all(|d| d.injective && d.surjective)
    }
}

/// Placement of summands in a direct sum: rational coordinates of all summands first.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub ambient: Ambient,
    pub parts: Vec<Ambient>,
    idx: Vec<Vec<usize>>,
}

impl DirectSum {
    pub fn new(parts: &[Ambient]) -> Self {
        let q: usize = parts.iter().map(|a| a.q).sum();
        let z: usize = parts.iter().map(|a| a.z).sum();
        let (mut qo, mut zo) = (0, q);
        let idx = parts
            .iter()
            .map(|a| {
                let mut v: Vec<usize> = (qo..qo + a.q).collect();
                v.extend(zo..zo + a.z);
                qo += a.q;
                zo += a.z;
                v
            })
            .collect();
        DirectSum { ambient: Ambient::new(q, z), parts: parts.to_vec(), idx }
    }

    pub fn index(&self, part: usize, i: usize) -> usize {
        self.idx[part][i]
    }

    pub fn inject(&self, part: usize, x: &SVec) -> SVec {
        x.iter().map(|(&i, v)| (self.idx[part][i], v.clone())).collect()
    }

    pub fn project(&self, part: usize, x: &SVec) -> SVec {
        let ix = &self.idx[part];
        let mut out = SVec::new();
        for (i, &g) in ix.iter().enumerate() {
            if let Some(v) = x.get(&g) {
                out.insert(i, v.clone());
            }
        }
        out
    }

    pub fn inclusion(&self, part: usize) -> Hom {
        let p = self.parts[part];
        let m = RatMatrix::from_triplets(self.ambient.dim(), p.dim(), (0..p.dim()).map(|i| (self.idx[part][i], i, crate::scalar::rat(1, 1))));
        Hom::new(p, self.ambient, m)
    }

    pub fn projection(&self, part: usize) -> Hom {
        let i = self.inclusion(part);
        Hom::new(self.ambient, i.source, i.matrix.transpose())
    }
}

/// Block matrix from `(row part, col part, block)` entries.
pub fn block_hom(rows: &DirectSum, cols: &DirectSum, blocks: &[(usize, usize, &RatMatrix)]) -> Hom {
    let mut ts = Vec::new();
    for &(r, c, m) in blocks {
        for (i, j, v) in m.triplets() {
            ts.push((rows.index(r, i), cols.index(c, j), v.clone()));
        }
    }
    Hom::new(cols.ambient, rows.ambient, RatMatrix::from_triplets(rows.ambient.dim(), cols.ambient.dim(), ts))
}

/// Mapping cone `G^k = F^k + I^{k+1}` of `psi: I -> F` with `D(a, r) = (da + psi r, -dr)`.
///
/// The cone starts in degree -1 (`G^{-1} = I^0`), so index `j` of `complex` and
/// `layouts` holds degree `j - 1`; use the degree-based accessors.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: GroupComplex,
    /// Part 0 is `F^k`, part 1 is `I^{k+1}`.
    pub layouts: Vec<DirectSum>,
}

impl Cone {
    /// Layout of `G^k`.
    pub fn layout(&self, k: usize) -> DirectSum {
        self.layouts.get(k + 1).cloned().unwrap_or_else(|| DirectSum::new(&[Ambient::new(0, 0), Ambient::new(0, 0)]))
    }
    pub fn ambient(&self, k: usize) -> Ambient {
        self.complex.ambient(k + 1)
    }
    /// `D: G^k -> G^{k+1}`.
    pub fn diff(&self, k: usize) -> Hom {
        self.complex.diff(k + 1)
    }
    /// `D(G^{k-1})` inside `G^k`.
    pub fn boundaries(&self, k: usize) -> Subgroup {
        self.complex.coboundaries(k + 1)
    }
    pub fn cohomology(&self, k: usize) -> QZModule {
        self.complex.cohomology(k + 1)
    }
    /// Top degree plus one.
    pub fn len(&self) -> usize {
        self.layouts.len() - 1
    }
    pub fn is_empty(&self) -> bool {
        self.complex.is_empty()
    }
}

pub fn cone(psi: &GroupMorphism) -> Cone {
    let (f, i) = (&psi.target, &psi.source);
    let n = f.len().max(i.len().saturating_sub(1)).max(1);
    let zero = Ambient::new(0, 0);
    // index j holds degree j - 1
    let f_at = |j: usize| if j == 0 { zero } else { f.ambient(j - 1) };
    let layouts: Vec<DirectSum> = (0..=n).map(|j| DirectSum::new(&[f_at(j), i.ambient(j)])).collect();
    let d = (0..n)
        .map(|j| {
            let neg = i.diff(j).matrix.neg();
            let df = if j == 0 { RatMatrix::zeros(f.ambient(0).dim(), 0) } else { f.diff(j - 1).matrix };
            block_hom(&layouts[j + 1], &layouts[j], &[(0, 0, &df), (0, 1, &psi.map(j).matrix), (1, 1, &neg)]).matrix
        })
        .collect();
    let amb = layouts.iter().map(|l| l.ambient).collect();
    Cone { complex: GroupComplex::new(amb, d).expect("cone differential squares to zero"), layouts }
}

//! Cochain complexes of free modules over Z, Q or Q(i), stored on a finite degree window.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exact_linalg::{Ambient, Hom, ModuleHom, QZModule, QiMatrix, RatMatrix, SVec};
use crate::scalar::Qi;

use super::group_complex::{GroupComplex, GroupMorphism};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ring {
    Z,
    Q,
    Qi,
}

impl Ring {
    pub fn name(self) -> &'static str {
        match self {
            Ring::Z => "Z",
            Ring::Q => "Q",
            Ring::Qi => "Q(i)",
        }
    }

    pub fn parse(s: &str) -> Option<Ring> {
        match s {
            "Z" | "ZZ" => Some(Ring::Z),
            "Q" | "QQ" => Some(Ring::Q),
            "Q(i)" | "Qi" | "QQ(i)" => Some(Ring::Qi),
            _ => None,
        }
    }

    /// Underlying group of the free module of rank `n`.
    pub fn ambient(self, n: usize) -> Ambient {
        match self {
            Ring::Z => Ambient::new(0, n),
            Ring::Q => Ambient::new(n, 0),
            Ring::Qi => Ambient::new(2 * n, 0),
        }
    }

    pub fn admits(self, v: &Qi) -> bool {
        match self {
            Ring::Z => v.is_integer(),
            Ring::Q => v.is_real(),
            Ring::Qi => true,
        }
    }
}

/// Real form of a matrix between free modules over `src` and `tgt`.
pub fn realify_map(m: &QiMatrix, src: Ring, tgt: Ring) -> Result<RatMatrix> {
    match (src, tgt) {
        (Ring::Qi, Ring::Qi) => Ok(m.realify()),
        (_, Ring::Qi) => {
            let mut out = RatMatrix::zeros(2 * m.nrows(), m.ncols());
            for (i, j, v) in m.triplets() {
                out.set(2 * i, j, v.re.clone());
                out.set(2 * i + 1, j, v.im.clone());
            }
            Ok(out)
        }
        (Ring::Qi, _) => Err(Error::RingMismatch(format!("no map from Q(i) to {}", tgt.name()))),
        _ if m.is_real() => Ok(m.real_part()),
        _ => Err(Error::RingMismatch("complex entries between real modules".into())),
    }
}

/// Real coordinates of a vector over `ring`.
pub fn realify_vec(ring: Ring, x: &[Qi]) -> SVec {
    let mut out = SVec::new();
    for (i, v) in x.iter().enumerate() {
        match ring {
            Ring::Qi => {
                if !num_traits::Zero::is_zero(&v.re) {
                    out.insert(2 * i, v.re.clone());
                }
                if !num_traits::Zero::is_zero(&v.im) {
                    out.insert(2 * i + 1, v.im.clone());
                }
            }
            _ => {
                if !num_traits::Zero::is_zero(&v.re) {
                    out.insert(i, v.re.clone());
                }
            }
        }
    }
    out
}

/// Inverse of [`realify_vec`] for a module of rank `n`.
pub fn complexify_vec(ring: Ring, x: &SVec, n: usize) -> Vec<Qi> {
    let mut out = alloc::vec![Qi::from_int(0); n];
    for (&i, v) in x {
        match ring {
            Ring::Qi => {
                if i % 2 == 0 {
                    out[i / 2].re = v.clone();
                } else {
                    out[i / 2].im = v.clone();
                }
            }
            _ => out[i].re = v.clone(),
        }
    }
    out
}

/// `d[k]: C^k -> C^{k+1}` for `k + 1 < dims.len()`; everything outside the window is zero.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    ring: Ring,
    dims: Vec<usize>,
    d: Vec<QiMatrix>,
}

impl CochainComplex {
    pub fn new(ring: Ring, dims: Vec<usize>, d: Vec<QiMatrix>) -> Result<Self> {
        if d.len() + 1 != dims.len().max(1) {
            return Err(Error::DimensionMismatch(format!("{} differentials for {} degrees", d.len(), dims.len())));
        }
        for (k, m) in d.iter().enumerate() {
            if (m.nrows(), m.ncols()) != (dims[k + 1], dims[k]) {
                return Err(Error::DimensionMismatch(format!("d^{k} has shape {}x{}", m.nrows(), m.ncols())));
            }
            if m.triplets().any(|(_, _, v)| !ring.admits(v)) {
                return Err(Error::RingMismatch(format!("d^{k} has entries outside {}", ring.name())));
            }
        }
        for k in 1..d.len() {
            if !d[k].mul(&d[k - 1]).is_zero() {
                return Err(Error::NotAComplex { degree: k });
            }
        }
        Ok(CochainComplex { ring, dims, d })
    }

    pub fn zero(ring: Ring) -> Self {
        CochainComplex { ring, dims: Vec::new(), d: Vec::new() }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }
    /// One past the top stored degree.
    pub fn len(&self) -> usize {
        self.dims.len()
    }
    pub fn is_empty(&self) -> bool {
        self.dims.iter().all(|&n| n == 0)
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn dim(&self, k: usize) -> usize {
        self.dims.get(k).copied().unwrap_or(0)
    }

    /// `d^k`, the zero matrix outside the window.
    pub fn diff(&self, k: usize) -> QiMatrix {
        self.d.get(k).cloned().unwrap_or_else(|| QiMatrix::zeros(self.dim(k + 1), self.dim(k)))
    }

    pub fn to_group(&self) -> GroupComplex {
        let amb = self.dims.iter().map(|&n| self.ring.ambient(n)).collect();
        let d = self.d.iter().map(|m| realify_map(m, self.ring, self.ring).expect("entries checked")).collect();
        GroupComplex::new(amb, d).expect("realification preserves d^2 = 0")
    }

    pub fn cohomology(&self, k: usize) -> QZModule {
        self.to_group().cohomology(k)
    }

    /// Coefficient extension along Z -> Q -> Q(i).
    pub fn extend_scalars(&self, ring: Ring) -> Result<Self> {
        if ring < self.ring {
            return Err(Error::RingMismatch(format!("cannot restrict {} to {}", self.ring.name(), ring.name())));
        }
        Ok(CochainComplex { ring, dims: self.dims.clone(), d: self.d.clone() })
    }
}

/// Per-degree maps `f^k: A^k -> B^k` commuting with the differentials.
#[derive(Clone, Debug)]
pub struct ComplexMorphism {
    pub source: CochainComplex,
    pub target: CochainComplex,
    maps: Vec<QiMatrix>,
}

impl ComplexMorphism {
    pub fn new(source: CochainComplex, target: CochainComplex, maps: Vec<QiMatrix>) -> Result<Self> {
        let n = source.len().max(target.len());
        let mut full = Vec::with_capacity(n);
        for k in 0..n {
            let m = maps.get(k).cloned().unwrap_or_else(|| QiMatrix::zeros(target.dim(k), source.dim(k)));
            if (m.nrows(), m.ncols()) != (target.dim(k), source.dim(k)) {
                return Err(Error::DimensionMismatch(format!("component {k} has shape {}x{}", m.nrows(), m.ncols())));
            }
            realify_map(&m, source.ring, target.ring)?;
            full.push(m);
        }
        let f = ComplexMorphism { source, target, maps: full };
        for k in 0..n {
            let lhs = f.target.diff(k).mul(&f.map(k));
            let rhs = f.map(k + 1).mul(&f.source.diff(k));
            if lhs != rhs {
                return Err(Error::NotAChainMap { degree: k });
            }
        }
        Ok(f)
    }

    pub fn identity(c: &CochainComplex) -> Self {
        let maps = c.dims.iter().map(|&n| QiMatrix::identity(n)).collect();
        ComplexMorphism { source: c.clone(), target: c.clone(), maps }
    }

    pub fn map(&self, k: usize) -> QiMatrix {
        self.maps.get(k).cloned().unwrap_or_else(|| QiMatrix::zeros(self.target.dim(k), self.source.dim(k)))
    }

    pub fn compose(&self, first: &ComplexMorphism) -> Result<Self> {
        let n = first.source.len().max(self.target.len());
        let maps = (0..n).map(|k| self.map(k).mul(&first.map(k))).collect();
        ComplexMorphism::new(first.source.clone(), self.target.clone(), maps)
    }

    pub fn to_group(&self) -> GroupMorphism {
        let (s, t) = (self.source.to_group(), self.target.to_group());
        let n = self.source.len().max(self.target.len());
        let maps = (0..n)
            .map(|k| {
                let m = realify_map(&self.map(k), self.source.ring, self.target.ring).expect("rings checked");
                Hom::new(s.ambient(k), t.ambient(k), m)
            })
            .collect();
        GroupMorphism::new(s, t, maps).expect("realification preserves chain maps")
    }

    pub fn induced(&self, k: usize) -> ModuleHom {
        self.to_group().induced(k)
    }
}

//! Morphisms of spark complex triples and their induced maps on spark groups.

use alloc::format;
use alloc::vec::Vec;

use crate::complexes::{ComplexMorphism, DirectSum};
use crate::error::{Error, Result};
use crate::exact_linalg::{rref, solve_mixed, svec, Hom, ModuleHom, RatMatrix, SVec, Subgroup};

use super::triple::SparkComplexTriple;

/// `(m_F, m_E, m_I)` commuting with the inclusions and with `psi`.
#[derive(Clone, Debug)]
pub struct TripleMorphism {
    pub source: SparkComplexTriple,
    pub target: SparkComplexTriple,
    pub mf: ComplexMorphism,
    pub me: ComplexMorphism,
    pub mi: ComplexMorphism,
}

/// A kernel generator together with a certified representative `(incl e, 0)`.
#[derive(Clone, Debug)]
pub struct KernelRep {
    pub class: SVec,
    /// `e` in realified coordinates of `E^k`, with `m_E(e) = 0`.
    pub e: Option<SVec>,
}

impl KernelRep {
    pub fn certified(&self) -> bool {
        self.e.is_some()
    }
}

impl TripleMorphism {
    pub fn new(source: SparkComplexTriple, target: SparkComplexTriple, mf: ComplexMorphism, me: ComplexMorphism, mi: ComplexMorphism) -> Result<Self> {
        let n = source.len().max(target.len());
        for k in 0..n {
            let a = mf.map(k).mul(&source.incl.map(k));
            let b = target.incl.map(k).mul(&me.map(k));
            if a != b {
                return Err(Error::NotAChainMap { degree: k });
            }
            let a = mf.map(k).mul(&source.psi.map(k));
            let b = target.psi.map(k).mul(&mi.map(k));
            if a != b {
                return Err(Error::Malformed(format!("morphism does not commute with psi in degree {k}")));
            }
        }
        Ok(TripleMorphism { source, target, mf, me, mi })
    }

    pub fn identity(t: &SparkComplexTriple) -> Self {
        TripleMorphism {
            source: t.clone(),
            target: t.clone(),
            mf: ComplexMorphism::identity(&t.f),
            me: ComplexMorphism::identity(&t.e),
            mi: ComplexMorphism::identity(&t.i),
        }
    }

    pub fn compose(&self, first: &TripleMorphism) -> Result<Self> {
        TripleMorphism::new(
            first.source.clone(),
            self.target.clone(),
            self.mf.compose(&first.mf)?,
            self.me.compose(&first.me)?,
            self.mi.compose(&first.mi)?,
        )
    }

    /// `(a, r) -> (m_F a, m_I r)` on `G^k`.
    pub fn cone_map(&self, k: usize) -> Hom {
        let (sl, tl) = (self.source.cone().layout(k), self.target.cone().layout(k));
        let f = self.mf.to_group().map(k).matrix;
        let i = self.mi.to_group().map(k + 1).matrix;
        crate::complexes::block_hom(&tl, &sl, &[(0, 0, &f), (1, 1, &i)])
    }

    pub fn induced_map(&self, k: usize) -> ModuleHom {
        ModuleHom::new(self.source.spark_group(k).module, self.target.spark_group(k).module, self.cone_map(k))
    }

    /// For every kernel generator, a representative `(incl e, 0)` with `m_E(e) = 0` when one exists.
    pub fn kernel_representatives(&self, k: usize) -> Vec<KernelRep> {
        let h = self.induced_map(k);
        let ker = h.kernel();
        let rel = &h.source.rel;
        let gens: Vec<SVec> = ker.div_basis().iter().chain(ker.lat_basis()).filter(|g| !rel.contains(g)).cloned().collect();
        if gens.is_empty() {
            return Vec::new();
        }
        let src = &self.source;
        let me = self.me.to_group().map(k).matrix;
        let ne = me.ncols();
        let rows = crate::exact_linalg::rref::columns_to_rows(&me.column_svecs(), me.nrows());
        let ker_e = rref(rows, ne).kernel();
        let j = src.e_to_cone(k);
        let mut qcols: Vec<SVec> = ker_e.iter().map(|e| j.apply(e)).collect();
        let nq = qcols.len();
        // D on G^{k-1}, stored at cone index k
        let d = src.cone().complex.diff(k);
        let lay: &DirectSum = &src.cone().layouts[k];
        let dcols = d.matrix.column_svecs();
        qcols.extend(dcols[..lay.ambient.q].iter().cloned());
        let zcols = &dcols[lay.ambient.q..];
        let nrows = src.cone().ambient(k).dim();
        gens.into_iter()
            .map(|g| {
                let e = solve_mixed(&qcols, zcols, nrows, &g).map(|(x, _)| {
                    let mut e = SVec::new();
                    for (&i, c) in x.range(..nq) {
                        svec::axpy(&mut e, c, &ker_e[i]);
                    }
                    e
                });
                KernelRep { class: g, e }
            })
            .collect()
    }

    /// Kernel of the induced map as a subgroup of the source sparks.
    pub fn kernel(&self, k: usize) -> Subgroup {
        self.induced_map(k).kernel()
    }
}

/// Matrix of a realified morphism component, exposed for callers assembling morphisms by hand.
pub fn realified(m: &ComplexMorphism, k: usize) -> RatMatrix {
    m.to_group().map(k).matrix
}

//! Bigraded local coefficient algebras over the simplices of a nerve.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact_linalg::QiMatrix;
use crate::scalar::Qi;

use super::nerve::{Nerve, SimplexId};

/// Sparse vector over Q(i).
pub type QVec = BTreeMap<usize, Qi>;

pub fn qvec_axpy(v: &mut QVec, c: &Qi, w: &QVec) {
    for (&i, x) in w {
        let p = c * x;
        let e = v.entry(i).or_insert_with(Qi::zero);
        *e += &p;
        if e.is_zero() {
            v.remove(&i);
        }
    }
}

pub fn qvec_apply(m: &QiMatrix, x: &QVec) -> QVec {
    let mut out = QVec::new();
    for i in 0..m.nrows() {
        let mut acc = Qi::zero();
        for (j, a) in m.row(i) {
            if let Some(b) = x.get(j) {
                acc += &(a * b);
            }
        }
        if !acc.is_zero() {
            out.insert(i, acc);
        }
    }
    out
}

/// Local algebra on one simplex: a basis with Hodge bidegrees, `del`, `delbar` and a wedge table.
#[derive(Clone, Debug)]
pub struct LocalAlgebra {
    pub bideg: Vec<(usize, usize)>,
    pub del: QiMatrix,
    pub delbar: QiMatrix,
    /// Nonzero products of basis elements.
    pub wedge: BTreeMap<(usize, usize), QVec>,
    pub one: QVec,
    /// Basis indices spanning the integral lattice, closed under `d` and restriction.
    pub lattice: Vec<usize>,
    /// Bases of the holomorphic forms of type `(j, 0)`, indexed by `j`.
    pub holomorphic: Vec<Vec<QVec>>,
}

impl LocalAlgebra {
    pub fn dim(&self) -> usize {
        self.bideg.len()
    }
    pub fn degree(&self, i: usize) -> usize {
        self.bideg[i].0 + self.bideg[i].1
    }
    pub fn d(&self) -> QiMatrix {
        self.del.add(&self.delbar)
    }

    pub fn wedge_vec(&self, a: &QVec, b: &QVec) -> QVec {
        let mut out = QVec::new();
        for (&i, x) in a {
            for (&j, y) in b {
                if let Some(p) = self.wedge.get(&(i, j)) {
                    qvec_axpy(&mut out, &(x * y), p);
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct CoefficientSystem {
    pub label: String,
    pub nerve: Nerve,
    local: BTreeMap<SimplexId, LocalAlgebra>,
    /// `(face, simplex) -> A(face) -> A(simplex)` for every proper face.
    restrict: BTreeMap<(SimplexId, SimplexId), QiMatrix>,
    /// Largest holomorphic degree present.
    pub max_hol: usize,
    /// False for truncated systems whose restrictions only respect products of low weight.
    pub wedge_exact: bool,
}

impl CoefficientSystem {
    /// Builds from codimension-one restrictions; longer ones are composed along the vertex-removal chain.
    pub fn new(
        label: String,
        nerve: Nerve,
        local: BTreeMap<SimplexId, LocalAlgebra>,
        codim1: BTreeMap<(SimplexId, SimplexId), QiMatrix>,
    ) -> Result<Self> {
        let max_hol = local.values().flat_map(|a| a.bideg.iter().map(|b| b.0)).max().unwrap_or(0);
        let mut restrict = codim1.clone();
        let ids: Vec<SimplexId> = nerve.ids().collect();
        for &t in &ids {
            let ts = nerve.simplex_at(t).to_vec();
            // faces by decreasing size; compose through a codim-one face containing them
            for m in (1..ts.len().saturating_sub(1)).rev() {
                for mask in 0u64..(1u64 << ts.len()) {
                    if mask.count_ones() as usize != m {
                        continue;
                    }
                    let f: Vec<usize> = (0..ts.len()).filter(|i| mask >> i & 1 == 1).map(|i| ts[i]).collect();
                    let fid = nerve.id_of(&f).expect("face");
                    let drop = (0..ts.len()).find(|i| mask >> i & 1 == 0).expect("proper face");
                    let mut mid = ts.clone();
                    mid.remove(drop);
                    let mid_id = nerve.id_of(&mid).expect("face");
                    let a = restrict.get(&(mid_id, t)).cloned().ok_or_else(|| Error::Malformed(format!("missing restriction {mid:?} -> {ts:?}")))?;
                    let b = if mid.len() == f.len() {
                        QiMatrix::identity(local[&fid].dim())
                    } else {
                        restrict.get(&(fid, mid_id)).cloned().ok_or_else(|| Error::Malformed(format!("missing restriction {f:?} -> {mid:?}")))?
                    };
                    restrict.insert((fid, t), a.mul(&b));
                }
            }
        }
        Ok(CoefficientSystem { label, nerve, local, restrict, max_hol, wedge_exact: true })
    }

    pub fn local(&self, s: SimplexId) -> &LocalAlgebra {
        &self.local[&s]
    }

    /// Restriction `A(face) -> A(simplex)`; identity when they coincide.
    pub fn restriction(&self, face: SimplexId, simplex: SimplexId) -> QiMatrix {
        if face == simplex {
            return QiMatrix::identity(self.local[&face].dim());
        }
        self.restrict.get(&(face, simplex)).cloned().unwrap_or_else(|| panic!("no restriction {face:?} -> {simplex:?}"))
    }

    pub fn codim1_restrictions(&self) -> BTreeMap<(SimplexId, SimplexId), QiMatrix> {
        self.restrict.iter().filter(|((f, s), _)| f.0 + 1 == s.0).map(|(k, v)| (*k, v.clone())).collect()
    }

    /// Whether every matrix of the system has rational entries.
    pub fn is_real(&self) -> bool {
        self.local.values().all(|a| a.del.is_real() && a.delbar.is_real()) && self.restrict.values().all(|m| m.is_real())
    }

    /// Structural checks: differentials, bidegrees, restriction compatibility and functoriality.
    /// Wedge compatibility is checked on every stored product and on `sample` extra basis pairs,
    /// unless `wedge_exact` is false.
    pub fn validate(&self, sample: usize) -> Result<()> {
        for (s, a) in &self.local {
            let n = a.dim();
            for m in [&a.del, &a.delbar] {
                if (m.nrows(), m.ncols()) != (n, n) {
                    return Err(Error::DimensionMismatch(format!("local differential on {s:?}")));
                }
            }
            for (i, j, _) in a.del.triplets() {
                let (b, c) = (a.bideg[i], a.bideg[j]);
                if b != (c.0 + 1, c.1) {
                    return Err(Error::Malformed(format!("del changes type wrongly on {s:?}")));
                }
            }
            for (i, j, _) in a.delbar.triplets() {
                let (b, c) = (a.bideg[i], a.bideg[j]);
                if b != (c.0, c.1 + 1) {
                    return Err(Error::Malformed(format!("delbar changes type wrongly on {s:?}")));
                }
            }
            if !a.del.mul(&a.del).is_zero() || !a.delbar.mul(&a.delbar).is_zero() || !a.del.mul(&a.delbar).add(&a.delbar.mul(&a.del)).is_zero() {
                return Err(Error::NotAComplex { degree: 0 });
            }
        }
        for (&(f, s), r) in &self.restrict {
            let (af, as_) = (&self.local[&f], &self.local[&s]);
            if r.mul(&af.del) != as_.del.mul(r) || r.mul(&af.delbar) != as_.delbar.mul(r) {
                return Err(Error::Malformed(format!("restriction {f:?} -> {s:?} does not commute with del/delbar")));
            }
            if !self.wedge_exact {
                continue;
            }
            let pairs: Vec<(usize, usize)> = af
                .wedge
                .keys()
                .copied()
                .chain((0..sample).map(|t| ((t * 7919) % af.dim().max(1), (t * 104729 + 13) % af.dim().max(1))))
                .collect();
            for (i, j) in pairs {
                if af.dim() == 0 {
                    break;
                }
                let ei: QVec = [(i, Qi::from_int(1))].into_iter().collect();
                let ej: QVec = [(j, Qi::from_int(1))].into_iter().collect();
                let lhs = qvec_apply(r, &af.wedge_vec(&ei, &ej));
                let rhs = as_.wedge_vec(&qvec_apply(r, &ei), &qvec_apply(r, &ej));
                if lhs != rhs {
                    return Err(Error::Malformed(format!("restriction {f:?} -> {s:?} does not respect the wedge at ({i},{j})")));
                }
            }
        }
        // functoriality along every chain face < middle < simplex
        for (&(f, s), r) in &self.restrict {
            for (&(f2, m), r1) in &self.restrict {
                if f2 != f || m == s {
                    continue;
                }
                if let Some(r2) = self.restrict.get(&(m, s)) {
                    if &r2.mul(r1) != r {
                        return Err(Error::Malformed(format!("restriction is not functorial through {m:?}")));
                    }
                }
            }
        }
        Ok(())
    }
}

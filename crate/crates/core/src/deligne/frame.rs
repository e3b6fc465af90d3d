//! Coordinates of holomorphic forms in the bases shipped with a coefficient system.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::cech_models::{qvec_axpy, CechModel, QVec, SimplexId};
use crate::error::{Error, Result};
use crate::exact_linalg::{rref, svec, SVec};
use crate::scalar::{Qi, Rat};

/// A basis of `Omega^j` on one simplex with a left inverse read off at pivot coordinates.
#[derive(Clone, Debug)]
pub struct Frame {
    pub basis: Vec<QVec>,
    pivots: Vec<usize>,
    /// Row `t` gives the basis coefficients contributed by one unit of coordinate `pivots[t]`.
    solve: Vec<SVec>,
}

impl Frame {
    pub fn new(basis: Vec<QVec>, dim: usize) -> Result<Self> {
        let nb = basis.len();
        let rows: Vec<SVec> = basis
            .iter()
            .enumerate()
            .map(|(m, v)| {
                let mut row: SVec = v.iter().map(|(&i, x)| (i, x.re.clone())).collect();
                row.insert(dim + m, Rat::one());
                row
            })
            .collect();
        let red = rref(rows, dim + nb);
        let mut pivots = Vec::new();
        let mut solve = Vec::new();
        for (row, &c) in red.rows.iter().zip(&red.pivots) {
            if c >= dim {
                return Err(Error::Malformed("holomorphic basis is linearly dependent".into()));
            }
            pivots.push(c);
            solve.push(row.range(dim..).map(|(&i, x)| (i - dim, x.clone())).collect());
        }
        Ok(Frame { basis, pivots, solve })
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }
    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn combine(&self, c: &[Qi]) -> QVec {
        let mut out = QVec::new();
        for (x, b) in c.iter().zip(&self.basis) {
            if !x.is_zero() {
                qvec_axpy(&mut out, x, b);
            }
        }
        out
    }

    /// Coordinates of `v`, or `None` when `v` is not a combination of the basis.
    pub fn coords(&self, v: &QVec) -> Option<Vec<Qi>> {
        let mut c = SVec::new();
        for (&p, t) in self.pivots.iter().zip(&self.solve) {
            if let Some(x) = v.get(&p) {
                svec::axpy(&mut c, &x.re, t);
            }
        }
        let out: Vec<Qi> = (0..self.len()).map(|m| c.get(&m).map_or_else(Qi::zero, |x| Qi::from_rat(x.clone()))).collect();
        (self.combine(&out) == *v).then_some(out)
    }
}

/// Frames for every simplex and every holomorphic degree the local algebras provide.
pub fn holomorphic_frames(model: &CechModel) -> Result<BTreeMap<(SimplexId, usize), Frame>> {
    let mut out = BTreeMap::new();
    for s in model.nerve().ids() {
        let alg = model.coeffs.local(s);
        for (j, basis) in alg.holomorphic.iter().enumerate() {
            for v in basis {
                if v.keys().any(|&i| alg.bideg[i] != (j, 0)) {
                    return Err(Error::Malformed(format!("holomorphic basis on {s:?} is not of type ({j}, 0)")));
                }
                let dbar: QVec = crate::cech_models::qvec_apply(&alg.delbar, v);
                if !dbar.is_empty() {
                    return Err(Error::Malformed(format!("holomorphic basis on {s:?} is not delbar-closed")));
                }
            }
            out.insert((s, j), Frame::new(basis.clone(), alg.dim())?);
        }
    }
    Ok(out)
}

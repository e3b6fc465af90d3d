//! The Cech resolution `M_p` of the Deligne complex `Z -> Omega^0 -> ... -> Omega^{p-1}`.
//!
//! Integers sit in degree 0 and `Omega^j` in degree `j + 1`. An element of `M^k_p` is an
//! integral cochain `r` in `C^k(N; Z)` plus holomorphic cochains `a^{i,j}` in `C^i(Omega^j)` with
//! `i + j = k - 1` and `j < p`. The holomorphic part is kept as a Cech cochain in the local
//! algebras, so it is literally an element of the level-`p` Cech-Dolbeault complex `F_p^{k-1}`.
//! `Omega^j` is zero beyond the holomorphic degrees the coefficient system provides.

mod frame;
mod product;

pub use frame::{holomorphic_frames, Frame};
pub use product::{DeligneRing, ProductCertificate};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand_core::RngCore;

use crate::cech_models::{CechCochain, CechModel, QVec, SimplexId};
use crate::complexes::{DirectSum, GroupComplex};
use crate::error::{Error, Result};
use crate::exact_linalg::{svec, Ambient, QZModule, RatMatrix, SVec, Subgroup};
use crate::scalar::{int, rat, rat_int, Int, Qi, Rat};

/// A cochain of `M_p`: `r` in `C^degree(N; Z)` and the holomorphic part `a` of form-total degree `degree - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeligneCochain {
    pub degree: usize,
    pub r: Vec<Int>,
    pub a: CechCochain,
}

impl DeligneCochain {
    pub fn zero(model: &CechModel, degree: usize) -> Self {
        DeligneCochain { degree, r: alloc::vec![Int::zero(); model.nerve().count(degree)], a: CechCochain::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.r.iter().all(|x| x.is_zero()) && self.a.values().all(|v| v.is_empty())
    }

    /// The part `a^{i, j}` living on Cech degree `i`.
    pub fn component(&self, i: usize) -> CechCochain {
        self.a.iter().filter(|(s, _)| s.0 == i).map(|(&s, v)| (s, v.clone())).collect()
    }
}

/// A Deligne cohomology class given by a cocycle of `M_p`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeligneClass {
    pub level: usize,
    pub cocycle: DeligneCochain,
}

pub(crate) fn sign(odd: bool) -> Qi {
    Qi::from_int(if odd { -1 } else { 1 })
}

/// `M_p` with its group structure: holomorphic coordinates are rational, integral cochains integral.
#[derive(Clone, Debug)]
pub struct DeligneComplex<'m> {
    pub model: &'m CechModel,
    pub level: usize,
    frames: BTreeMap<(SimplexId, usize), Frame>,
    /// Holomorphic coordinates `(simplex, j, basis index)` per degree.
    omega: Vec<Vec<(SimplexId, usize, usize)>>,
    omega_index: BTreeMap<(SimplexId, usize, usize), usize>,
    /// Part 0 holds the holomorphic coordinates, part 1 the integral ones.
    sums: Vec<DirectSum>,
    pub complex: GroupComplex,
}

impl<'m> DeligneComplex<'m> {
    pub fn new(model: &'m CechModel, level: usize) -> Result<Self> {
        let frames = holomorphic_frames(model)?;
        let n = model.nerve();
        let jmax = frames.keys().map(|&(_, j)| j + 1).max().unwrap_or(0).min(level);
        let len = if jmax > 0 { n.len() + jmax } else { n.len() };
        let mut omega = alloc::vec![Vec::new(); len];
        let mut omega_index = BTreeMap::new();
        for (k, slots) in omega.iter_mut().enumerate() {
            for i in 0..k.min(n.len()) {
                let j = k - 1 - i;
                if j >= jmax {
                    continue;
                }
                for pos in 0..n.count(i) {
                    let s = (i, pos);
                    let Some(fr) = frames.get(&(s, j)) else { continue };
                    for m in 0..fr.len() {
                        omega_index.insert((s, j, m), slots.len());
                        slots.push((s, j, m));
                    }
                }
            }
        }
        let sums: Vec<DirectSum> =
            (0..len).map(|k| DirectSum::new(&[Ambient::new(omega[k].len(), 0), Ambient::new(0, n.count(k))])).collect();
        let mut dc = DeligneComplex {
            model,
            level,
            frames,
            omega,
            omega_index,
            sums,
            complex: GroupComplex::new(Vec::new(), Vec::new())?,
        };
        let mut d = Vec::new();
        for k in 0..len.saturating_sub(1) {
            let cols: Vec<SVec> = (0..dc.sums[k].ambient.dim())
                .map(|c| dc.to_svec(&dc.delta(&dc.from_svec(k, &svec::unit(c)))))
                .collect::<Result<_>>()?;
            d.push(RatMatrix::from_columns(dc.sums[k + 1].ambient.dim(), &cols));
        }
        dc.complex = GroupComplex::new(dc.sums.iter().map(|s| s.ambient).collect(), d)?;
        Ok(dc)
    }

    /// One past the top degree.
    pub fn len(&self) -> usize {
        self.sums.len()
    }
    pub fn is_empty(&self) -> bool {
        self.sums.iter().all(|s| s.ambient.dim() == 0)
    }

    pub fn ambient(&self, k: usize) -> Ambient {
        self.sums.get(k).map_or(Ambient::new(0, 0), |s| s.ambient)
    }

    pub fn frame(&self, s: SimplexId, j: usize) -> Option<&Frame> {
        self.frames.get(&(s, j))
    }

    /// `Delta_p`: `delta + (-1)^r i` on integers, `delta + (-1)^r del` below the top and `delta` on `Omega^{p-1}`.
    pub fn delta(&self, x: &DeligneCochain) -> DeligneCochain {
        let m = self.model;
        let n = m.nerve();
        let k = x.degree;
        let r = if k + 1 < n.len() { n.coboundary(k).mul_vec(&x.r) } else { alloc::vec![Int::zero(); n.count(k + 1)] };
        // delbar vanishes on holomorphic forms and the truncation drops del of the top piece
        let mut a = m.differential(&x.a, Some(self.level));
        if self.level > 0 {
            a = m.add(&a, &m.psi_cochain(k, &x.r), &sign(k % 2 == 1));
        }
        DeligneCochain { degree: k + 1, r, a }
    }

    /// Group coordinates; fails when `a` is not holomorphic of the right degrees.
    pub fn to_svec(&self, x: &DeligneCochain) -> Result<SVec> {
        let k = x.degree;
        let Some(lay) = self.sums.get(k) else {
            return if x.is_zero() { Ok(SVec::new()) } else { Err(Error::OutOfWindow(k)) };
        };
        let mut v = SVec::new();
        for (&s, vec) in &x.a {
            if vec.is_empty() {
                continue;
            }
            let j = (k.checked_sub(1 + s.0)).ok_or(Error::OutOfWindow(k))?;
            let fr = self.frames.get(&(s, j)).ok_or_else(|| Error::Malformed(format!("no Omega^{j} on {s:?}")))?;
            let c = fr.coords(vec).ok_or_else(|| Error::Malformed(format!("cochain on {s:?} is not in Omega^{j}")))?;
            for (mi, cm) in c.iter().enumerate() {
                if cm.is_zero() {
                    continue;
                }
                let pos = self.omega_index.get(&(s, j, mi)).ok_or_else(|| Error::Malformed(format!("Omega^{j} is above level {}", self.level)))?;
                v.insert(lay.index(0, *pos), cm.re.clone());
            }
        }
        if x.r.len() != lay.parts[1].dim() {
            return Err(Error::DimensionMismatch(format!("integral part of degree {k}")));
        }
        for (pos, c) in x.r.iter().enumerate() {
            if !c.is_zero() {
                v.insert(lay.index(1, pos), rat_int(c));
            }
        }
        Ok(v)
    }

    pub fn from_svec(&self, k: usize, v: &SVec) -> DeligneCochain {
        let Some(lay) = self.sums.get(k) else { return DeligneCochain::zero(self.model, k) };
        let mut a = CechCochain::new();
        for (pos, c) in lay.project(0, v) {
            let (s, j, mi) = self.omega[k][pos];
            let e: &mut QVec = a.entry(s).or_default();
            crate::cech_models::qvec_axpy(e, &Qi::from_rat(c), &self.frames[&(s, j)].basis[mi]);
        }
        a.retain(|_, v| !v.is_empty());
        let rz = lay.project(1, v);
        let r = (0..lay.parts[1].dim()).map(|i| rz.get(&i).map_or_else(Int::zero, |x| x.to_integer())).collect();
        DeligneCochain { degree: k, r, a }
    }

    pub fn is_cocycle(&self, x: &DeligneCochain) -> bool {
        let d = self.delta(x);
        d.r.iter().all(|c| c.is_zero()) && d.a.is_empty()
    }

    pub fn cohomology(&self, q: usize) -> QZModule {
        self.complex.cohomology(q)
    }

    /// Random cocycle: small integer multiples of the lattice generators plus halves of divisible ones.
    pub fn random_cocycle(&self, k: usize, rng: &mut dyn RngCore) -> DeligneCochain {
        self.random_in(&self.complex.cocycles(k), k, rng)
    }

    pub fn random_coboundary(&self, k: usize, rng: &mut dyn RngCore) -> DeligneCochain {
        self.random_in(&self.complex.coboundaries(k), k, rng)
    }

    /// Random cochain with entries in `[-2, 2]` at roughly `density` percent of the coordinates.
    pub fn random_cochain(&self, k: usize, density: u32, rng: &mut dyn RngCore) -> DeligneCochain {
        let mut x = SVec::new();
        for i in 0..self.ambient(k).dim() {
            if rng.next_u32() % 100 < density {
                svec::add_entry(&mut x, i, &Rat::from_integer(int((rng.next_u32() % 5) as i64 - 2)));
            }
        }
        self.from_svec(k, &x)
    }

    fn random_in(&self, z: &Subgroup, k: usize, rng: &mut dyn RngCore) -> DeligneCochain {
        let mut x = SVec::new();
        for g in z.lat_basis() {
            svec::axpy(&mut x, &Rat::from_integer(int((rng.next_u32() % 5) as i64 - 2)), g);
        }
        for g in z.div_basis() {
            if rng.next_u32().is_multiple_of(2) {
                svec::axpy(&mut x, &rat((rng.next_u32() % 7) as i64 - 3, 2), g);
            }
        }
        self.from_svec(k, &x)
    }
}

/// `H^q` of `M_p`; level 0 is the integral cohomology of the nerve.
pub fn deligne_cohomology(model: &CechModel, p: usize, q: usize) -> Result<QZModule> {
    Ok(DeligneComplex::new(model, p)?.cohomology(q))
}

/// The constant integral cocycle `1` in `M^0_p`.
pub fn unit_cocycle(model: &CechModel) -> DeligneCochain {
    DeligneCochain { degree: 0, r: alloc::vec![Int::one(); model.nerve().count(0)], a: CechCochain::new() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cech_models::{disk, torus};
    use alloc::string::{String, ToString};

    #[test]
    fn delta_squares_to_zero() {
        for model in [CechModel::new(torus(1)).unwrap(), CechModel::new(disk(2)).unwrap()] {
            for p in 0..4 {
                // construction already checks d^2 = 0
                let dc = DeligneComplex::new(&model, p).unwrap();
                assert!(dc.len() >= model.nerve().len());
            }
        }
    }

    #[test]
    fn torus_level_one_is_the_circle_of_constants() {
        let m = CechModel::new(torus(1)).unwrap();
        // Omega^0 is locally constant, so H^k(Z(1)) = H^{k-1}(T^2; Q/Z)
        let got: Vec<String> = (0..4).map(|q| deligne_cohomology(&m, 1, q).unwrap().invariants().to_string()).collect();
        let want: Vec<String> = ["0", "Q/Z", "(Q/Z)^2", "Q/Z"].iter().map(|s| String::from(*s)).collect();
        assert_eq!(got, want);
    }
}

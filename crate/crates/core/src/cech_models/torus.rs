//! Invariant-form torus model: cochains on dual blocks of the barycentric subdivision tensored with
//! the exterior algebra on `dz_1..dz_n`.
//!
//! The dual block of `sigma` consists of the chains `tau_0 < tau_1 < ...` of simplices with
//! `sigma <= tau_0`. The block coboundary plays the role of `delbar`, so a chain of length `c + 1`
//! carries antiholomorphic degree `c`. Blocks are cones, so each local complex has `delbar`-cohomology
//! `Lambda(dz)` in degree 0: the holomorphic forms, as the local Dolbeault lemma demands.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::exact_linalg::QiMatrix;
use crate::scalar::Qi;

use super::coeffs::{CoefficientSystem, LocalAlgebra, QVec};
use super::nerve::{Nerve, SimplexId};

/// Sign of `lambda ^ mu` for wedge monomials stored as bitmasks, or `None` when they overlap.
pub fn monomial_sign(lambda: u32, mu: u32) -> Option<i64> {
    if lambda & mu != 0 {
        return None;
    }
    let mut swaps = 0u32;
    for b in 0..32 {
        if mu >> b & 1 == 1 {
            swaps += (lambda >> (b + 1)).count_ones();
        }
    }
    Some(if swaps.is_multiple_of(2) { 1 } else { -1 })
}

struct Subdivision {
    /// Chains of nerve simplices, each a list of `SimplexId` of strictly increasing dimension.
    chains: Vec<Vec<SimplexId>>,
    index: BTreeMap<Vec<SimplexId>, usize>,
}

fn contains(nerve: &Nerve, big: SimplexId, small: SimplexId) -> bool {
    let b = nerve.simplex_at(big);
    nerve.simplex_at(small).iter().all(|v| b.contains(v))
}

impl Subdivision {
    fn new(nerve: &Nerve) -> Self {
        let ids: Vec<SimplexId> = nerve.ids().collect();
        let mut chains: Vec<Vec<SimplexId>> = ids.iter().map(|&s| alloc::vec![s]).collect();
        let mut frontier = chains.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for c in &frontier {
                let last = *c.last().expect("nonempty chain");
                for &t in &ids {
                    if t.0 > last.0 && contains(nerve, t, last) {
                        let mut d = c.clone();
                        d.push(t);
                        next.push(d);
                    }
                }
            }
            chains.extend(next.iter().cloned());
            frontier = next;
        }
        let index = chains.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        Subdivision { chains, index }
    }
}

/// Invariant-form system of complex dimension `n` on the dual blocks of `nerve`.
pub fn invariant_form_system(nerve: Nerve, n: usize) -> CoefficientSystem {
    assert!(n <= 8, "exterior algebra limited to n <= 8");
    let sd = Subdivision::new(&nerve);
    let monomials: Vec<u32> = (0..1u32 << n).collect();
    let mut local = BTreeMap::new();
    let mut basis_of: BTreeMap<SimplexId, BTreeMap<(usize, u32), usize>> = BTreeMap::new();
    for s in nerve.ids() {
        let block: Vec<usize> = (0..sd.chains.len()).filter(|&c| contains(&nerve, sd.chains[c][0], s)).collect();
        let mut pos = BTreeMap::new();
        let mut bideg = Vec::new();
        for &lam in &monomials {
            for &c in &block {
                pos.insert((c, lam), bideg.len());
                bideg.push((lam.count_ones() as usize, sd.chains[c].len() - 1));
            }
        }
        let dim = bideg.len();
        let mut delbar = Vec::new();
        let mut wedge = BTreeMap::new();
        for (&(c, lam), &i) in &pos {
            let chain = &sd.chains[c];
            // coboundary: cofaces of `chain` inside the block, with the sign of the inserted slot
            for (&(c2, lam2), &j) in &pos {
                if lam2 != lam || sd.chains[c2].len() != chain.len() + 1 {
                    continue;
                }
                let big = &sd.chains[c2];
                if let Some(slot) = (0..big.len()).find(|&k| {
                    let mut f = big.clone();
                    f.remove(k);
                    &f == chain
                }) {
                    delbar.push((j, i, Qi::from_int(if slot % 2 == 0 { 1 } else { -1 })));
                }
            }
            // front/back products
            for (&(c2, mu), &j) in &pos {
                let other = &sd.chains[c2];
                if other[0] != *chain.last().expect("nonempty") {
                    continue;
                }
                let Some(sign) = monomial_sign(lam, mu) else { continue };
                let mut joined = chain.clone();
                joined.extend_from_slice(&other[1..]);
                let Some(&cj) = sd.index.get(&joined) else { continue };
                let sign = if (lam.count_ones() as usize * (other.len() - 1)) % 2 == 1 { -sign } else { sign };
                let target = pos[&(cj, lam | mu)];
                let v: QVec = [(target, Qi::from_int(sign))].into_iter().collect();
                wedge.insert((i, j), v);
            }
        }
        let vertex_sum = |lam: u32| -> QVec {
            block.iter().filter(|&&c| sd.chains[c].len() == 1).map(|&c| (pos[&(c, lam)], Qi::from_int(1))).collect()
        };
        let one = vertex_sum(0);
        let lattice = block.iter().map(|&c| pos[&(c, 0)]).collect();
        let holomorphic = (0..=n)
            .map(|j| monomials.iter().filter(|&&l| l.count_ones() as usize == j).map(|&l| vertex_sum(l)).collect())
            .collect();
        let alg = LocalAlgebra {
            bideg,
            del: QiMatrix::zeros(dim, dim),
            delbar: QiMatrix::from_triplets(dim, dim, delbar),
            wedge,
            one,
            lattice,
            holomorphic,
        };
        basis_of.insert(s, pos);
        local.insert(s, alg);
    }
    let mut codim1 = BTreeMap::new();
    for t in nerve.ids().filter(|t| t.0 > 0) {
        let ts = nerve.simplex_at(t).to_vec();
        for k in 0..ts.len() {
            let mut f = ts.clone();
            f.remove(k);
            let fid = nerve.id_of(&f).expect("face");
            let (src, tgt) = (&basis_of[&fid], &basis_of[&t]);
            let ts_: Vec<(usize, usize, Qi)> =
                src.iter().filter_map(|(key, &i)| tgt.get(key).map(|&j| (j, i, Qi::from_int(1)))).collect();
            codim1.insert((fid, t), QiMatrix::from_triplets(tgt.len(), src.len(), ts_));
        }
    }
    CoefficientSystem::new(format!("invariant forms n={n}"), nerve, local, codim1).expect("invariant-form restrictions")
}

/// The seven-vertex torus fixture.
pub fn torus(n: usize) -> CoefficientSystem {
    let mut c = invariant_form_system(Nerve::torus7(), n);
    c.label = format!("torus n={n}");
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_dimensions() {
        let c = torus(1);
        let v = c.local((0, 0));
        // 13 + 24 + 12 chains in a vertex block, monomials 1 and dz
        assert_eq!(v.dim(), 49 * 2);
        assert_eq!(c.local((1, 0)).dim(), 5 * 2);
        assert_eq!(c.local((2, 0)).dim(), 2);
        c.validate(64).unwrap();
        assert!(c.is_real());
    }

    #[test]
    fn monomial_signs() {
        assert_eq!(monomial_sign(0b01, 0b10), Some(1));
        assert_eq!(monomial_sign(0b10, 0b01), Some(-1));
        assert_eq!(monomial_sign(0b01, 0b01), None);
    }
}

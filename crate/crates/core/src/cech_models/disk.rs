//! Weight-truncated polynomial forms on a disk, with translations as restrictions.
//!
//! Basis `z^a zbar^b w` for `w` in `{1, dz, dzbar, dz^dzbar}` and weight `a + b + deg w <= W`.
//! Both `del` and `delbar` preserve the weight; translations only lower it, so the truncation is a
//! subcomplex stable under restriction. Products of weight above `W` are dropped, which translations
//! do not respect; the system is flagged as not wedge-exact.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::exact_linalg::QiMatrix;
use crate::scalar::{binomial, rat, rat_int, Qi, Rat};

use super::coeffs::{CoefficientSystem, LocalAlgebra, QVec};
use super::nerve::{Nerve, SimplexId};

const DZ: u8 = 1;
const DZBAR: u8 = 2;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct Mono {
    a: usize,
    b: usize,
    w: u8,
}

impl Mono {
    fn weight(&self) -> usize {
        self.a + self.b + self.w.count_ones() as usize
    }
}

fn monomials(max_weight: usize) -> Vec<Mono> {
    let mut out = Vec::new();
    for w in 0..4u8 {
        for a in 0..=max_weight {
            for b in 0..=max_weight {
                let m = Mono { a, b, w };
                if m.weight() <= max_weight {
                    out.push(m);
                }
            }
        }
    }
    out
}

/// `w ^ w'` for the form parts, with sign.
fn form_product(w: u8, v: u8) -> Option<(u8, i64)> {
    if w & v != 0 {
        return None;
    }
    let sign = if w == DZBAR && v == DZ { -1 } else { 1 };
    Some((w | v, sign))
}

fn local_algebra(monos: &[Mono], pos: &BTreeMap<Mono, usize>, max_weight: usize) -> LocalAlgebra {
    let n = monos.len();
    let bideg: Vec<(usize, usize)> = monos.iter().map(|m| ((m.w & DZ != 0) as usize, (m.w & DZBAR != 0) as usize)).collect();
    let mut del = Vec::new();
    let mut delbar = Vec::new();
    for (j, m) in monos.iter().enumerate() {
        if m.a > 0 {
            if let Some((w, s)) = form_product(DZ, m.w) {
                let t = pos[&Mono { a: m.a - 1, b: m.b, w }];
                del.push((t, j, Qi::from_int(s * m.a as i64)));
            }
        }
        if m.b > 0 {
            if let Some((w, s)) = form_product(DZBAR, m.w) {
                let t = pos[&Mono { a: m.a, b: m.b - 1, w }];
                delbar.push((t, j, Qi::from_int(s * m.b as i64)));
            }
        }
    }
    let mut wedge = BTreeMap::new();
    for (i, x) in monos.iter().enumerate() {
        for (j, y) in monos.iter().enumerate() {
            if x.weight() + y.weight() > max_weight {
                continue;
            }
            if let Some((w, s)) = form_product(x.w, y.w) {
                let t = pos[&Mono { a: x.a + y.a, b: x.b + y.b, w }];
                let v: QVec = [(t, Qi::from_int(s))].into_iter().collect();
                wedge.insert((i, j), v);
            }
        }
    }
    let unit = pos[&Mono { a: 0, b: 0, w: 0 }];
    let holomorphic = [0u8, DZ]
        .iter()
        .map(|&w| {
            monos
                .iter()
                .enumerate()
                .filter(|(_, m)| m.b == 0 && m.w == w)
                .map(|(i, _)| [(i, Qi::from_int(1))].into_iter().collect::<QVec>())
                .collect()
        })
        .collect();
    LocalAlgebra {
        bideg,
        del: QiMatrix::from_triplets(n, n, del),
        delbar: QiMatrix::from_triplets(n, n, delbar),
        wedge,
        one: [(unit, Qi::from_int(1))].into_iter().collect(),
        lattice: alloc::vec![unit],
        holomorphic,
    }
}

/// Substitution `z -> z + c`, `zbar -> zbar + c` for real `c`.
fn translation(monos: &[Mono], pos: &BTreeMap<Mono, usize>, c: &Rat) -> QiMatrix {
    let pow = |e: usize| -> Rat {
        let mut p = Rat::one();
        for _ in 0..e {
            p *= c;
        }
        p
    };
    let mut ts = Vec::new();
    for (j, m) in monos.iter().enumerate() {
        for i in 0..=m.a {
            for k in 0..=m.b {
                let coef = rat_int(&binomial(m.a as u64, i as u64)) * rat_int(&binomial(m.b as u64, k as u64)) * pow(m.a - i) * pow(m.b - k);
                if !coef.is_zero() {
                    ts.push((pos[&Mono { a: i, b: k, w: m.w }], j, Qi::from_rat(coef)));
                }
            }
        }
    }
    QiMatrix::from_triplets(monos.len(), monos.len(), ts)
}

/// Local coordinate of each simplex is `z - c_sigma`.
fn offset(nerve: &Nerve, s: SimplexId) -> Rat {
    let v = nerve.simplex_at(s);
    let sum: i64 = v.iter().map(|&x| (x as i64 + 1) * (x as i64 + 1)).sum();
    rat(sum, v.len() as i64 + 1)
}

/// Disk system of maximal weight `max_weight` on a nerve.
pub fn disk_system(nerve: Nerve, max_weight: usize) -> CoefficientSystem {
    let monos = monomials(max_weight);
    let pos: BTreeMap<Mono, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let alg = local_algebra(&monos, &pos, max_weight);
    let local = nerve.ids().map(|s| (s, alg.clone())).collect();
    let mut codim1 = BTreeMap::new();
    for t in nerve.ids().filter(|t| t.0 > 0) {
        let ts = nerve.simplex_at(t).to_vec();
        for k in 0..ts.len() {
            let mut f = ts.clone();
            f.remove(k);
            let fid = nerve.id_of(&f).expect("face");
            let shift = offset(&nerve, t) - offset(&nerve, fid);
            codim1.insert((fid, t), translation(&monos, &pos, &shift));
        }
    }
    let mut c = CoefficientSystem::new(format!("disk W={max_weight}"), nerve, local, codim1).expect("disk restrictions");
    c.wedge_exact = false;
    c
}

/// Weight-truncated polynomial forms with identity restrictions.
///
/// Restrictions are the identity, so truncated products are respected and the system is wedge-exact.
/// Cech rows are exact only over a contractible nerve.
pub fn constant_polynomial_system(nerve: Nerve, max_weight: usize) -> CoefficientSystem {
    let monos = monomials(max_weight);
    let pos: BTreeMap<Mono, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let alg = local_algebra(&monos, &pos, max_weight);
    let local = nerve.ids().map(|s| (s, alg.clone())).collect();
    let mut codim1 = BTreeMap::new();
    for t in nerve.ids().filter(|t| t.0 > 0) {
        let ts = nerve.simplex_at(t).to_vec();
        for k in 0..ts.len() {
            let mut f = ts.clone();
            f.remove(k);
            codim1.insert((nerve.id_of(&f).expect("face"), t), QiMatrix::identity(monos.len()));
        }
    }
    CoefficientSystem::new(format!("polynomial W={max_weight}"), nerve, local, codim1).expect("identity restrictions")
}

/// The shipped disk fixture: a 2-simplex nerve.
pub fn disk(max_weight: usize) -> CoefficientSystem {
    disk_system(Nerve::simplex(2), max_weight)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_is_a_valid_system() {
        let c = disk(3);
        c.validate(0).unwrap();
        // weight <= 3: 10 functions, 6 + 6 one-forms, 3 two-forms
        assert_eq!(c.local((0, 0)).dim(), 25);
    }

    #[test]
    fn constant_system_is_wedge_exact() {
        let c = constant_polynomial_system(Nerve::simplex(2), 3);
        assert!(c.wedge_exact);
        c.validate(64).unwrap();
    }

    #[test]
    fn translations_compose() {
        let c = disk(2);
        let direct = c.restriction((0, 0), (2, 0));
        let via = c.restriction((1, 0), (2, 0)).mul(&c.restriction((0, 0), (1, 0)));
        assert_eq!(direct, via);
    }
}

//! Sparse reduced row echelon form over Q and the linear algebra built on it.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::scalar::Rat;

use super::lattice;
use super::matrix::RatMatrix;
use super::svec::{self, SVec};

/// Reduced row echelon form: `rows[i]` has a unit entry at `pivots[i]` and zeros at every other pivot.
#[derive(Clone, Debug)]
pub struct Rref {
    pub ncols: usize,
    pub rows: Vec<SVec>,
    pub pivots: Vec<usize>,
}

/// Column-ordered elimination; among candidate rows the shortest one pivots (ties by index).
pub fn rref(input: Vec<SVec>, ncols: usize) -> Rref {
    let mut rows: Vec<SVec> = input.into_iter().filter(|r| !r.is_empty()).collect();
    let mut index: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (ri, r) in rows.iter().enumerate() {
        for &c in r.keys() {
            debug_assert!(c < ncols, "column {c} out of range");
            index.entry(c).or_default().insert(ri);
        }
    }
    let mut used = alloc::vec![false; rows.len()];
    let mut piv: Vec<(usize, usize)> = Vec::new();
    let mut next = index.keys().next().copied();
    while let Some(c) = next {
        let holders: Vec<usize> = index.get(&c).map(|s| s.iter().copied().collect()).unwrap_or_default();
        let chosen = holders.iter().copied().filter(|&r| !used[r]).min_by_key(|&r| (rows[r].len(), r));
        if let Some(p) = chosen {
            let inv = Rat::one() / rows[p][&c].clone();
            if !inv.is_one() {
                for v in rows[p].values_mut() {
                    *v *= &inv;
                }
            }
            let prow = rows[p].clone();
            for &o in holders.iter().filter(|&&o| o != p) {
                let f = rows[o][&c].clone();
                for (&k, v) in &prow {
                    let delta = -(&f * v);
                    let row = &mut rows[o];
                    match row.get_mut(&k) {
                        Some(x) => {
                            *x += &delta;
                            if x.is_zero() {
                                row.remove(&k);
                                if let Some(s) = index.get_mut(&k) {
                                    s.remove(&o);
                                }
                            }
                        }
                        None => {
                            row.insert(k, delta);
                            index.entry(k).or_default().insert(o);
                        }
                    }
                }
            }
            used[p] = true;
            piv.push((c, p));
        }
        next = index.range(c + 1..).next().map(|(&k, _)| k);
    }
    piv.sort();
    let pivots = piv.iter().map(|&(c, _)| c).collect();
    let out_rows = piv.iter().map(|&(_, r)| core::mem::take(&mut rows[r])).collect();
    Rref { ncols, rows: out_rows, pivots }
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let ps: BTreeSet<usize> = self.pivots.iter().copied().collect();
        (0..self.ncols).filter(|c| !ps.contains(c)).collect()
    }

    /// Basis of the solution space of `rows . x = 0`, one vector per free column.
    pub fn kernel(&self) -> Vec<SVec> {
        let mut by_free: BTreeMap<usize, Vec<(usize, Rat)>> = BTreeMap::new();
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            for (&c, v) in r {
                if c != p {
                    by_free.entry(c).or_default().push((p, v.clone()));
                }
            }
        }
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = svec::unit(f);
                if let Some(es) = by_free.get(&f) {
                    for (p, c) in es {
                        v.insert(*p, -c.clone());
                    }
                }
                v
            })
            .collect()
    }

    /// Reduces `x` modulo the row space; the result vanishes on pivot columns.
    pub fn reduce(&self, x: &SVec) -> SVec {
        let mut v = x.clone();
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if let Some(c) = v.get(&p).cloned() {
                svec::axpy(&mut v, &-c, r);
            }
        }
        v
    }

    pub fn in_row_space(&self, x: &SVec) -> bool {
        self.reduce(x).is_empty()
    }
}

pub fn rank(rows: Vec<SVec>, ncols: usize) -> usize {
    rref(rows, ncols).rank()
}

/// Solves `A x = b` over Q for A given by columns; free variables are set to zero.
pub fn solve_q(cols: &[SVec], nrows: usize, b: &SVec) -> Option<SVec> {
    let n = cols.len();
    let mut rows: Vec<SVec> = (0..nrows).map(|_| SVec::new()).collect();
    for (j, c) in cols.iter().enumerate() {
        for (&i, v) in c {
            rows[i].insert(j, v.clone());
        }
    }
    for (&i, v) in b {
        rows[i].insert(n, v.clone());
    }
    let r = rref(rows, n + 1);
    if r.pivots.contains(&n) {
        return None;
    }
    let mut x = SVec::new();
    for (row, &p) in r.rows.iter().zip(&r.pivots) {
        if let Some(v) = row.get(&n) {
            x.insert(p, v.clone());
        }
    }
    Some(x)
}

/// Transposes a list of columns (each a sparse vector over `nrows` rows) into rows.
pub fn columns_to_rows(cols: &[SVec], nrows: usize) -> Vec<SVec> {
    let mut rows: Vec<SVec> = (0..nrows).map(|_| SVec::new()).collect();
    for (j, c) in cols.iter().enumerate() {
        for (&i, v) in c {
            rows[i].insert(j, v.clone());
        }
    }
    rows
}

/// Solutions (x, y) in Q^a + Z^b of `sum x_i qcols_i + sum y_j zcols_j = 0`.
#[derive(Clone, Debug, Default)]
pub struct MixedKernel {
    /// Q-basis of the divisible part (y = 0); vectors over the x indices.
    pub divisible: Vec<SVec>,
    /// Z-basis of the remaining part; pairs (x, y).
    pub lattice: Vec<(SVec, SVec)>,
}

pub fn mixed_kernel(qcols: &[SVec], zcols: &[SVec], nrows: usize) -> MixedKernel {
    let a = qcols.len();
    let b = zcols.len();
    let mut all: Vec<SVec> = qcols.to_vec();
    all.extend(zcols.iter().cloned());
    let r = rref(columns_to_rows(&all, nrows), a + b);

    // rows whose pivot lies among the Z unknowns only involve Z unknowns
    let mut zrows = Vec::new();
    for (row, &p) in r.rows.iter().zip(&r.pivots) {
        if p >= a {
            zrows.push(svec::window(row, a, a + b));
        }
    }
    let zsol = lattice::integer_kernel(zrows, b);

    let piv: BTreeSet<usize> = r.pivots.iter().copied().collect();
    let mut divisible = Vec::new();
    for f in (0..a).filter(|c| !piv.contains(c)) {
        let mut v = svec::unit(f);
        for (row, &p) in r.rows.iter().zip(&r.pivots) {
            if p < a {
                if let Some(c) = row.get(&f) {
                    v.insert(p, -c.clone());
                }
            }
        }
        divisible.push(v);
    }
    let mut lat = Vec::new();
    for y in zsol {
        let yy = svec::shifted(&y, a);
        let mut x = SVec::new();
        for (row, &p) in r.rows.iter().zip(&r.pivots) {
            if p < a {
                let s = svec::dot(row, &yy);
                if !s.is_zero() {
                    x.insert(p, -s);
                }
            }
        }
        lat.push((x, y));
    }
    MixedKernel { divisible, lattice: lat }
}

/// Left inverse `L` (with `L m = I`) of a matrix with independent columns.
pub fn left_inverse(m: &RatMatrix) -> Option<RatMatrix> {
    let (r, c) = (m.nrows(), m.ncols());
    // independent rows of m are the pivots of rref(m^T)
    let t = rref(m.transpose().row_svecs(), r);
    if t.rank() < c {
        return None;
    }
    let rows: Vec<SVec> = t.pivots.iter().map(|&p| m.row(p).clone()).collect();
    // solve (rows) X = I column by column
    let cols = columns_to_rows(&rows, c);
    let mut out = RatMatrix::zeros(c, r);
    for j in 0..c {
        let x = solve_q(&cols, c, &svec::unit(j)).expect("square invertible block");
        for (&i, v) in &x {
            out.set(i, t.pivots[j], v.clone());
        }
    }
    Some(out)
}

/// Some `(x, y)` in Q^a + Z^b with `sum x_i qcols_i + sum y_j zcols_j = target`.
pub fn solve_mixed(qcols: &[SVec], zcols: &[SVec], nrows: usize, target: &SVec) -> Option<(SVec, SVec)> {
    let b = zcols.len();
    let mut z: Vec<SVec> = alloc::vec![svec::scaled(target, &-Rat::one())];
    z.extend(zcols.iter().cloned());
    let k = mixed_kernel(qcols, &z, nrows);
    // the target coefficient sits at lattice coordinate 0; echelon puts a minimal one first
    let combined: Vec<SVec> = k
        .lattice
        .iter()
        .map(|(x, y)| {
            let mut v = svec::shifted(x, b + 1);
            for (&i, c) in y {
                v.insert(i, c.clone());
            }
            v
        })
        .collect();
    let basis = lattice::lattice_basis(combined);
    let first = basis.first()?;
    if first.get(&0) != Some(&Rat::one()) {
        return None;
    }
    let a = qcols.len();
    let x = svec::window(first, b + 1, b + 1 + a);
    let y = svec::window(first, 1, b + 1);
    Some((x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn v(xs: &[(usize, i64)]) -> SVec {
        xs.iter().map(|&(i, x)| (i, rat(x, 1))).collect()
    }

    #[test]
    fn kernel_of_rank_one() {
        let r = rref(alloc::vec![v(&[(0, 1), (1, 2), (2, 3)]), v(&[(0, 2), (1, 4), (2, 6)])], 3);
        assert_eq!(r.rank(), 1);
        let k = r.kernel();
        assert_eq!(k.len(), 2);
        for x in &k {
            assert!(svec::dot(&v(&[(0, 1), (1, 2), (2, 3)]), x).is_zero());
        }
    }

    #[test]
    fn solve_rational_examples() {
        let col = alloc::vec![v(&[(0, 2)])];
        assert_eq!(solve_q(&col, 1, &v(&[(0, 3)])).unwrap(), [(0usize, rat(3, 2))].into_iter().collect());
        let cols = alloc::vec![v(&[(0, 1)]), v(&[(0, 1)])];
        assert!(solve_q(&cols[..1], 2, &v(&[(1, 1)])).is_none());
    }

    #[test]
    fn left_inverse_and_mixed_solve() {
        let m = RatMatrix::from_columns(3, &[v(&[(0, 1), (1, 1)]), v(&[(1, 2), (2, 1)])]);
        let l = left_inverse(&m).unwrap();
        assert_eq!(l.mul(&m), RatMatrix::identity(2));
        // 2y = 4 over Z solvable, 2y = 3 not, x/2 + 2y = 3 with x rational solvable
        assert!(solve_mixed(&[], &[v(&[(0, 2)])], 1, &v(&[(0, 4)])).is_some());
        assert!(solve_mixed(&[], &[v(&[(0, 2)])], 1, &v(&[(0, 3)])).is_none());
        let (x, y) = solve_mixed(&[v(&[(0, 1), (1, 1)])], &[v(&[(0, 2)])], 2, &v(&[(0, 3), (1, 1)])).unwrap();
        assert_eq!(x[&0], rat(1, 1));
        assert_eq!(y[&0], rat(1, 1));
    }

    #[test]
    fn mixed_kernel_half_integers() {
        // x/2 ... x in Q, y in Z with x - y/2 = 0 : one lattice generator (1/2, 1)
        let qc = alloc::vec![v(&[(0, 1)])];
        let zc = alloc::vec![[(0usize, rat(-1, 2))].into_iter().collect::<SVec>()];
        let k = mixed_kernel(&qc, &zc, 1);
        assert!(k.divisible.is_empty());
        assert_eq!(k.lattice.len(), 1);
        let (x, y) = &k.lattice[0];
        assert_eq!(x.get(&0).cloned().unwrap() * rat(2, 1), y.get(&0).cloned().unwrap());
    }
}

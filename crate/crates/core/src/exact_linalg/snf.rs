//! Smith normal form over Z with unimodular transforms.

use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::Int;

use super::matrix::IntMatrix;

/// Elementary operation applied to rows (of U·M) or columns (of M·V).
#[derive(Clone, Debug)]
pub enum ElemOp {
    Swap(usize, usize),
    /// target += factor * source
    AddMul { target: usize, source: usize, factor: Int },
    Negate(usize),
}

/// Diagonalizes `a` in place into divisor-chain form, reporting every operation.
pub fn smith_in_place(
    a: &mut [Vec<Int>],
    ncols: usize,
    mut on_row: impl FnMut(&ElemOp),
    mut on_col: impl FnMut(&ElemOp),
) -> usize {
    let m = a.len();
    let n = ncols;
    let mut row_op = |a: &mut [Vec<Int>], op: ElemOp| {
        match &op {
            ElemOp::Swap(i, j) => a.swap(*i, *j),
            ElemOp::AddMul { target, source, factor } => {
                for k in 0..n {
                    if !a[*source][k].is_zero() {
                        let d = &a[*source][k] * factor;
                        a[*target][k] += d;
                    }
                }
            }
            ElemOp::Negate(i) => {
                for x in a[*i].iter_mut() {
                    *x = -core::mem::take(x);
                }
            }
        }
        on_row(&op);
    };
    let mut col_op = |a: &mut [Vec<Int>], op: ElemOp| {
        match &op {
            ElemOp::Swap(i, j) => {
                for r in a.iter_mut() {
                    r.swap(*i, *j);
                }
            }
            ElemOp::AddMul { target, source, factor } => {
                for r in a.iter_mut() {
                    if !r[*source].is_zero() {
                        let d = &r[*source] * factor;
                        r[*target] += d;
                    }
                }
            }
            ElemOp::Negate(i) => {
                for r in a.iter_mut() {
                    r[*i] = -core::mem::take(&mut r[*i]);
                }
            }
        }
        on_col(&op);
    };

    let mut t = 0;
    while t < m.min(n) {
        // pivot: minimal |value| among the rows of minimal support
        let mut best: Option<(usize, Int, usize, usize)> = None;
        for i in t..m {
            let support = a[i][t..].iter().filter(|x| !x.is_zero()).count();
            if support == 0 {
                continue;
            }
            for j in t..n {
                if a[i][j].is_zero() {
                    continue;
                }
                let key = (support, a[i][j].abs(), i, j);
                if best.as_ref().is_none_or(|b| (key.0, &key.1) < (b.0, &b.1)) {
                    best = Some(key);
                }
            }
        }
        let Some((_, _, pi, pj)) = best else { break };
        if pi != t {
            row_op(a, ElemOp::Swap(pi, t));
        }
        if pj != t {
            col_op(a, ElemOp::Swap(pj, t));
        }
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_op(a, ElemOp::AddMul { target: i, source: t, factor: -q });
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_op(a, ElemOp::AddMul { target: j, source: t, factor: -q });
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // move the smallest nonzero of row t / column t to the corner
                let mut best = (a[t][t].abs(), t, t);
                for i in t + 1..m {
                    if !a[i][t].is_zero() && a[i][t].abs() < best.0 {
                        best = (a[i][t].abs(), i, t);
                    }
                }
                for j in t + 1..n {
                    if !a[t][j].is_zero() && a[t][j].abs() < best.0 {
                        best = (a[t][j].abs(), t, j);
                    }
                }
                if best.1 != t {
                    row_op(a, ElemOp::Swap(best.1, t));
                }
                if best.2 != t {
                    col_op(a, ElemOp::Swap(best.2, t));
                }
                continue;
            }
            // divisor chain: the corner must divide the remaining block
            let mut offender = None;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    if !a[i][j].is_zero() && !(&a[i][j] % &a[t][t]).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => row_op(a, ElemOp::AddMul { target: t, source: i, factor: Int::one() }),
                None => break,
            }
        }
        if a[t][t].is_negative() {
            row_op(a, ElemOp::Negate(t));
        }
        t += 1;
    }
    t
}

/// Result of [`smith_normal_form`]: `u * m * v == s`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl Smith {
    pub fn invariant_factors(&self) -> Vec<Int> {
        (0..self.rank).map(|i| self.s.get(i, i)).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (r, c) = (m.nrows(), m.ncols());
    let mut a = m.to_dense();
    let mut u: Vec<Vec<Int>> = IntMatrix::identity(r).to_dense();
    let mut v: Vec<Vec<Int>> = IntMatrix::identity(c).to_dense();
    let rank = smith_in_place(
        &mut a,
        c,
        |op| apply_row(&mut u, op),
        |op| apply_col(&mut v, op),
    );
    Smith {
        u: IntMatrix::from_dense_or_empty(&u, r),
        s: IntMatrix::from_dense_or_empty(&a, c),
        v: IntMatrix::from_dense_or_empty(&v, c),
        rank,
    }
}

fn apply_row(u: &mut [Vec<Int>], op: &ElemOp) {
    match op {
        ElemOp::Swap(i, j) => u.swap(*i, *j),
        ElemOp::AddMul { target, source, factor } => {
            let src = u[*source].clone();
            for (x, s) in u[*target].iter_mut().zip(src) {
                *x += s * factor;
            }
        }
        ElemOp::Negate(i) => {
            for x in u[*i].iter_mut() {
                *x = -core::mem::take(x);
            }
        }
    }
}

fn apply_col(v: &mut [Vec<Int>], op: &ElemOp) {
    match op {
        ElemOp::Swap(i, j) => {
            for r in v.iter_mut() {
                r.swap(*i, *j);
            }
        }
        ElemOp::AddMul { target, source, factor } => {
            for r in v.iter_mut() {
                let d = &r[*source] * factor;
                r[*target] += d;
            }
        }
        ElemOp::Negate(i) => {
            for r in v.iter_mut() {
                r[*i] = -core::mem::take(&mut r[*i]);
            }
        }
    }
}

impl IntMatrix {
    fn from_dense_or_empty(rows: &[Vec<Int>], ncols: usize) -> Self {
        let mut m = IntMatrix::zeros(rows.len(), ncols);
        for (i, r) in rows.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
            }
        }
        m
    }

    /// Determinant by fraction-free elimination (Bareiss); square matrices only.
    pub fn determinant(&self) -> Int {
        assert_eq!(self.nrows(), self.ncols(), "determinant of a non-square matrix");
        let n = self.nrows();
        let mut a = self.to_dense();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else { return Int::zero() };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let val = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = val;
                }
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            return Int::one();
        }
        sign * &a[n - 1][n - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn two_by_two_oracle() {
        let a = m(&[&[2, 4], &[6, 8]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.invariant_factors(), alloc::vec![int(2), int(4)]);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.s);
        assert_eq!(s.u.determinant().abs(), int(1));
        assert_eq!(s.v.determinant().abs(), int(1));
    }

    #[test]
    fn divisor_chain_is_enforced() {
        let s = smith_normal_form(&m(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.invariant_factors(), alloc::vec![int(1), int(6)]);
    }

    #[test]
    fn zero_and_identity() {
        assert_eq!(smith_normal_form(&m(&[&[0, 0], &[0, 0]])).rank, 0);
        let i = IntMatrix::identity(3);
        assert_eq!(smith_normal_form(&i).s, i);
    }
}

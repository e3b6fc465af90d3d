//! Sparse matrices over exact rings.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{Int, Qi, Rat};

use super::svec::SVec;

/// Exact ring of matrix entries.
pub trait Scalar:
    Clone + PartialEq + Eq + fmt::Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self>
where
    for<'a> &'a Self: Add<&'a Self, Output = Self> + Mul<&'a Self, Output = Self>,
{
}

impl Scalar for Int {}
impl Scalar for Rat {}
impl Scalar for Qi {}

/// Sparse matrix; each row is a map column -> nonzero entry.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix<T: Scalar>
where
    for<'a> &'a T: Add<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    nrows: usize,
    ncols: usize,
    rows: Vec<BTreeMap<usize, T>>,
}

pub type IntMatrix = SparseMatrix<Int>;
pub type RatMatrix = SparseMatrix<Rat>;
pub type QiMatrix = SparseMatrix<Qi>;

impl<T: Scalar> SparseMatrix<T>
where
    for<'a> &'a T: Add<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, rows: (0..nrows).map(|_| BTreeMap::new()).collect() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    /// Builds from (row, col, value) triplets; repeated positions are summed.
    pub fn from_triplets(nrows: usize, ncols: usize, ts: impl IntoIterator<Item = (usize, usize, T)>) -> Self {
        let mut m = Self::zeros(nrows, ncols);
        for (i, j, v) in ts {
            m.add_at(i, j, &v);
        }
        m
    }

    pub fn from_dense(rows: &[Vec<T>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(nrows, ncols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), ncols, "ragged dense matrix");
            for (j, v) in r.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }
    pub fn ncols(&self) -> usize {
        self.ncols
    }
    pub fn row(&self, i: usize) -> &BTreeMap<usize, T> {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.rows[i].get(&j).cloned().unwrap_or_else(T::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        assert!(i < self.nrows && j < self.ncols, "index ({i},{j}) out of bounds");
        if v.is_zero() {
            self.rows[i].remove(&j);
        } else {
            self.rows[i].insert(j, v);
        }
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &T) {
        let cur = self.get(i, j);
        self.set(i, j, &cur + v);
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &T)> + '_ {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(&j, v)| (i, j, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ncols, self.nrows);
        for (i, j, v) in self.triplets() {
            t.rows[j].insert(i, v.clone());
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch in product");
        let mut out = Self::zeros(self.nrows, other.ncols);
        for (i, r) in self.rows.iter().enumerate() {
            let mut acc: BTreeMap<usize, T> = BTreeMap::new();
            for (k, a) in r {
                for (j, b) in &other.rows[*k] {
                    let e = acc.entry(*j).or_insert_with(T::zero);
                    *e = &*e + &(a * b);
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.rows[i] = acc;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let mut out = self.clone();
        for (i, j, v) in other.triplets() {
            out.add_at(i, j, v);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map(|v| -v.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|v| c * v)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SparseMatrix<U>
    where
        for<'a> &'a U: Add<&'a U, Output = U> + Mul<&'a U, Output = U>,
    {
        SparseMatrix::from_triplets(self.nrows, self.ncols, self.triplets().map(|(i, j, v)| (i, j, f(v))))
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.ncols, "dimension mismatch in matrix-vector product");
        self.rows
            .iter()
            .map(|r| r.iter().fold(T::zero(), |acc, (j, a)| &acc + &(a * &x[*j])))
            .collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        (0..self.nrows).map(|i| (0..self.ncols).map(|j| self.get(i, j)).collect()).collect()
    }

    /// Block placement of `self` at offset (r0, c0) inside a larger zero matrix.
    pub fn embed(&self, nrows: usize, ncols: usize, r0: usize, c0: usize) -> Self {
        Self::from_triplets(nrows, ncols, self.triplets().map(|(i, j, v)| (i + r0, j + c0, v.clone())))
    }

    /// Columns as sparse maps.
    pub fn columns(&self) -> Vec<BTreeMap<usize, T>> {
        let mut cols: Vec<BTreeMap<usize, T>> = (0..self.ncols).map(|_| BTreeMap::new()).collect();
        for (i, j, v) in self.triplets() {
            cols[j].insert(i, v.clone());
        }
        cols
    }
}

impl<T: Scalar> fmt::Debug for SparseMatrix<T>
where
    for<'a> &'a T: Add<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} [", self.nrows, self.ncols)?;
        for (i, j, v) in self.triplets() {
            write!(f, " ({i},{j}):{v:?}")?;
        }
        write!(f, " ]")
    }
}

impl RatMatrix {
    /// Rational matrix-vector product on sparse vectors.
    pub fn apply(&self, x: &SVec) -> SVec {
        let mut out = SVec::new();
        for (i, r) in self.rows.iter().enumerate() {
            let mut acc = Rat::zero();
            for (j, a) in r {
                if let Some(b) = x.get(j) {
                    acc += a * b;
                }
            }
            if !acc.is_zero() {
                out.insert(i, acc);
            }
        }
        out
    }

    pub fn column_svecs(&self) -> Vec<SVec> {
        self.columns()
    }

    pub fn row_svecs(&self) -> Vec<SVec> {
        self.rows.clone()
    }

    pub fn from_columns(nrows: usize, cols: &[SVec]) -> Self {
        Self::from_triplets(
            nrows,
            cols.len(),
            cols.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(&i, v)| (i, j, v.clone()))),
        )
    }
}

impl IntMatrix {
    pub fn to_rat(&self) -> RatMatrix {
        self.map(|v| Rat::from_integer(v.clone()))
    }
}

impl QiMatrix {
    /// Real form: each entry a+bi becomes the block [[a,-b],[b,a]] on (re, im) coordinates.
    pub fn realify(&self) -> RatMatrix {
        let mut out = RatMatrix::zeros(2 * self.nrows, 2 * self.ncols);
        for (i, j, v) in self.triplets() {
            out.set(2 * i, 2 * j, v.re.clone());
            out.set(2 * i + 1, 2 * j + 1, v.re.clone());
            out.set(2 * i, 2 * j + 1, -v.im.clone());
            out.set(2 * i + 1, 2 * j, v.im.clone());
        }
        out
    }

    /// Real part, valid when every entry is real.
    pub fn real_part(&self) -> RatMatrix {
        self.map(|v| v.re.clone())
    }

    pub fn is_real(&self) -> bool {
        self.triplets().all(|(_, _, v)| v.is_real())
    }

    pub fn is_integral(&self) -> bool {
        self.triplets().all(|(_, _, v)| v.is_integer())
    }

    pub fn conj(&self) -> Self {
        self.map(|v| v.conj())
    }
}

impl RatMatrix {
    pub fn to_qi(&self) -> QiMatrix {
        self.map(|v| Qi::from_rat(v.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn product_and_transpose() {
        let a = IntMatrix::from_dense(&[alloc::vec![int(1), int(2)], alloc::vec![int(0), int(3)]]);
        let b = a.transpose();
        let c = a.mul(&b);
        assert_eq!(c.to_dense(), alloc::vec![alloc::vec![int(5), int(6)], alloc::vec![int(6), int(9)]]);
        assert_eq!(a.nnz(), 3);
    }

    #[test]
    fn zero_entries_are_not_stored() {
        let mut m = RatMatrix::zeros(2, 2);
        m.set(0, 0, rat(1, 2));
        m.add_at(0, 0, &rat(-1, 2));
        assert_eq!(m.nnz(), 0);
    }

    #[test]
    fn realify_multiplies_like_complex() {
        let m = QiMatrix::from_dense(&[alloc::vec![Qi::i()]]);
        let r = m.realify();
        let sq = r.mul(&r);
        assert_eq!(sq, RatMatrix::identity(2).neg());
    }
}

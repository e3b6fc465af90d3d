//! Square matrices of forms.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::scalar::Qi;

use super::form::{Ctx, PolyForm, EXACT};

#[derive(Clone, PartialEq, Eq)]
pub struct MatrixForm {
    ctx: Ctx,
    size: usize,
    /// Row-major.
    entries: Vec<PolyForm>,
}

impl MatrixForm {
    pub fn zero(ctx: Ctx, size: usize) -> Self {
        MatrixForm { ctx, size, entries: alloc::vec![PolyForm::zero(ctx); size * size] }
    }

    pub fn identity(ctx: Ctx, size: usize) -> Self {
        let mut m = MatrixForm::zero(ctx, size);
        for i in 0..size {
            m.entries[i * size + i] = PolyForm::one(ctx);
        }
        m
    }

    pub fn from_fn(ctx: Ctx, size: usize, mut f: impl FnMut(usize, usize) -> PolyForm) -> Self {
        let entries = (0..size * size).map(|k| f(k / size, k % size)).collect();
        MatrixForm { ctx, size, entries }
    }

    pub fn from_rows(ctx: Ctx, rows: Vec<Vec<PolyForm>>) -> Result<Self> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return Err(Error::DimensionMismatch(format!("matrix form with {size} rows is not square")));
        }
        let entries: Vec<PolyForm> = rows.into_iter().flatten().collect();
        if entries.iter().any(|e| e.ctx() != ctx) {
            return Err(Error::Malformed("matrix entries from a different context".into()));
        }
        Ok(MatrixForm { ctx, size, entries })
    }

    /// Diagonal matrix with the given entries.
    pub fn diag(ctx: Ctx, d: &[PolyForm]) -> Self {
        let size = d.len();
        MatrixForm::from_fn(ctx, size, |i, j| if i == j { d[i].clone() } else { PolyForm::zero(ctx) })
    }

    /// `(a 0; 0 b)`.
    pub fn block_diag(a: &MatrixForm, b: &MatrixForm) -> Self {
        assert_eq!(a.ctx, b.ctx, "matrix forms from different contexts");
        let (m, n) = (a.size, b.size);
        MatrixForm::from_fn(a.ctx, m + n, |i, j| match (i < m, j < m) {
            (true, true) => a.get(i, j).clone(),
            (false, false) => b.get(i - m, j - m).clone(),
            _ => PolyForm::zero(a.ctx),
        })
    }

    /// `(I 0; a I)` for an `n x m` block `a` given as rows.
    pub fn unipotent(ctx: Ctx, m: usize, a: &[Vec<PolyForm>]) -> Self {
        let n = a.len();
        MatrixForm::from_fn(ctx, m + n, |i, j| {
            if i == j {
                PolyForm::one(ctx)
            } else if i >= m && j < m {
                a[i - m][j].clone()
            } else {
                PolyForm::zero(ctx)
            }
        })
    }

    pub fn ctx(&self) -> Ctx {
        self.ctx
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &PolyForm {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, f: PolyForm) {
        assert_eq!(f.ctx(), self.ctx, "matrix entry from a different context");
        self.entries[i * self.size + j] = f;
    }

    pub fn entries(&self) -> &[PolyForm] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<PolyForm>> {
        self.entries.chunks(self.size.max(1)).map(|r| r.to_vec()).collect()
    }

    /// Smallest precision among the entries.
    pub fn prec(&self) -> i32 {
        self.entries.iter().map(|e| e.prec()).min().unwrap_or(EXACT)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_exact_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_exact_zero())
    }

    pub fn map(&self, f: impl Fn(&PolyForm) -> PolyForm) -> Self {
        MatrixForm { ctx: self.ctx, size: self.size, entries: self.entries.iter().map(f).collect() }
    }

    fn zip(&self, o: &MatrixForm, f: impl Fn(&PolyForm, &PolyForm) -> PolyForm) -> Self {
        assert_eq!((self.ctx, self.size), (o.ctx, o.size), "matrix forms of different shapes");
        MatrixForm { ctx: self.ctx, size: self.size, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn scale(&self, s: &Qi) -> Self {
        self.map(|e| e.scale(s))
    }

    /// Multiplies every entry by the form `w` on the left.
    pub fn left_scale(&self, w: &PolyForm) -> Self {
        self.map(|e| w * e)
    }

    pub fn matmul(&self, o: &MatrixForm) -> Self {
        assert_eq!((self.ctx, self.size), (o.ctx, o.size), "matrix forms of different shapes");
        let n = self.size;
        MatrixForm::from_fn(self.ctx, n, |i, j| {
            let mut acc = PolyForm::zero(self.ctx);
            for k in 0..n {
                let (a, b) = (self.get(i, k), o.get(k, j));
                if !a.is_exact_zero() && !b.is_exact_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        })
    }

    /// `a b - b a` with the product of forms, as in `[Omega, eta] = Omega eta - eta Omega`.
    pub fn commutator(&self, o: &MatrixForm) -> Self {
        &self.matmul(o) - &o.matmul(self)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = MatrixForm::identity(self.ctx, self.size);
        for _ in 0..k {
            acc = acc.matmul(self);
        }
        acc
    }

    pub fn trace(&self) -> PolyForm {
        let mut acc = PolyForm::zero(self.ctx);
        for i in 0..self.size {
            acc = &acc + self.get(i, i);
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        MatrixForm::from_fn(self.ctx, self.size, |i, j| self.get(j, i).clone())
    }

    /// Entrywise conjugation.
    pub fn conj(&self) -> Self {
        self.map(|e| e.conj())
    }

    /// Conjugate transpose `g^*`.
    pub fn star(&self) -> Self {
        self.conj().transpose()
    }

    pub fn del(&self) -> Self {
        self.map(|e| e.del())
    }

    pub fn delbar(&self) -> Self {
        self.map(|e| e.delbar())
    }

    pub fn d(&self) -> Self {
        self.map(|e| e.d())
    }

    pub fn component(&self, p: u32, q: u32) -> Self {
        self.map(|e| e.component(p, q))
    }

    pub fn integrate_t(&self) -> Self {
        self.map(|e| e.integrate_t())
    }

    /// Constant part: coefficients of `1` in every entry.
    pub fn constant_part(&self) -> Vec<Vec<Qi>> {
        (0..self.size).map(|i| (0..self.size).map(|j| self.get(i, j).constant_term()).collect()).collect()
    }

    pub fn residual(&self, o: &MatrixForm) -> Self {
        self.zip(o, |a, b| a.residual(b))
    }

    /// Entrywise equality at the common precision.
    pub fn agrees(&self, o: &MatrixForm) -> bool {
        self.size == o.size && self.entries.iter().zip(&o.entries).all(|(a, b)| a.agrees(b))
    }

    /// Inverse by a Neumann series around the constant part.
    ///
    /// The remainder `g - g_0` must be nilpotent: every term has positive polynomial or form degree.
    pub fn inverse(&self) -> Result<Self> {
        if self.prec() < 0 {
            return Err(Error::Singular("no coefficient is known".into()));
        }
        for e in &self.entries {
            if e.terms().keys().any(|m| m.t > 0 && m.mask == 0 && m.degree() == 0) {
                return Err(Error::Malformed("constant part depends on t".into()));
            }
        }
        let c0 = constant_inverse(&self.constant_part()).ok_or_else(|| Error::Singular("constant part is not invertible".into()))?;
        let ctx = self.ctx;
        let n = self.size;
        let g0inv = MatrixForm::from_fn(ctx, n, |i, j| PolyForm::constant(ctx, c0[i][j].clone()));
        let g0 = MatrixForm::from_fn(ctx, n, |i, j| PolyForm::constant(ctx, self.get(i, j).constant_term()));
        // g = g0 (I + x) with x nilpotent, so g^{-1} = (I - x + x^2 - ...) g0^{-1}
        let x = g0inv.matmul(&(self - &g0));
        let mut term = MatrixForm::identity(ctx, n);
        let mut acc = MatrixForm::identity(ctx, n);
        let bound = ctx.trunc as usize + 2 * ctx.n + 1;
        for k in 1..=bound {
            term = term.matmul(&x).scale(&-Qi::one());
            // a zero known to low degree still lowers the precision of the sum
            acc = &acc + &term;
            if term.is_zero() {
                break;
            }
            debug_assert!(k < bound, "Neumann series did not terminate");
        }
        let inv = acc.matmul(&g0inv);
        Ok(inv.map(|e| e.at_precision(self.prec().min(inv.prec()))))
    }

    /// Random function matrix; entries of degree `lo..=hi`.
    pub fn random_functions(ctx: Ctx, size: usize, lo: u32, hi: u32, density: u32, rng: &mut dyn RngCore) -> Self {
        MatrixForm::from_fn(ctx, size, |_, _| PolyForm::random_function(ctx, lo, hi, density, rng))
    }

    /// Random matrix of `(p, q)` forms.
    pub fn random_typed(ctx: Ctx, size: usize, p: u32, q: u32, density: u32, rng: &mut dyn RngCore) -> Self {
        MatrixForm::from_fn(ctx, size, |_, _| PolyForm::random_typed(ctx, p, q, density, rng))
    }
}

/// Gauss-Jordan over `Q(i)`.
pub fn constant_inverse(a: &[Vec<Qi>]) -> Option<Vec<Vec<Qi>>> {
    let n = a.len();
    let mut m: Vec<Vec<Qi>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Qi::one() } else { Qi::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].inv()?;
        for x in m[c].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let pivot = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot) {
                    *x -= &(&f * y);
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl<'a> Add for &'a MatrixForm {
    type Output = MatrixForm;
    fn add(self, o: &'a MatrixForm) -> MatrixForm {
        self.zip(o, |a, b| a + b)
    }
}

impl<'a> Sub for &'a MatrixForm {
    type Output = MatrixForm;
    fn sub(self, o: &'a MatrixForm) -> MatrixForm {
        self.zip(o, |a, b| a - b)
    }
}

impl<'a> Mul for &'a MatrixForm {
    type Output = MatrixForm;
    fn mul(self, o: &'a MatrixForm) -> MatrixForm {
        self.matmul(o)
    }
}

impl Neg for &MatrixForm {
    type Output = MatrixForm;
    fn neg(self) -> MatrixForm {
        self.scale(&-Qi::one())
    }
}

impl fmt::Debug for MatrixForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn nilpotent_inverse() {
        let ctx = Ctx::new(1, 3).unwrap();
        let z = PolyForm::z(ctx, 0);
        let g = MatrixForm::unipotent(ctx, 1, &[alloc::vec![z.clone()]]);
        let want = MatrixForm::unipotent(ctx, 1, &[alloc::vec![-&z]]);
        let inv = g.inverse().unwrap();
        assert_eq!(inv, want);
        assert_eq!(inv.prec(), EXACT);
    }

    #[test]
    fn series_inverse_is_a_truncated_inverse() {
        let ctx = Ctx::new(1, 3).unwrap();
        let h = PolyForm::parse(ctx, "2 + z1*zb1").unwrap();
        let g = MatrixForm::diag(ctx, &[h, PolyForm::one(ctx)]);
        let inv = g.inverse().unwrap();
        assert!(g.matmul(&inv).agrees(&MatrixForm::identity(ctx, 2)));
        assert_eq!(inv.get(0, 0).constant_term(), Qi::from_rat(rat(1, 2)));
    }

    #[test]
    fn singular_constant_part_is_rejected() {
        let ctx = Ctx::new(1, 2).unwrap();
        let g = MatrixForm::diag(ctx, &[PolyForm::z(ctx, 0), PolyForm::one(ctx)]);
        assert!(matches!(g.inverse(), Err(Error::Singular(_))));
    }
}

//! Subquotients of Q^q + Z^z: mixed subgroups, homomorphisms and invariants.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::scalar::{is_integral, rat_int, Int, Rat};

use super::lattice::{lattice_basis, lattice_coords};
use super::matrix::{IntMatrix, RatMatrix};
use super::rref::{mixed_kernel, rref, Rref};
use super::snf::smith_in_place;
use super::snf::ElemOp;
use super::svec::{self, SVec};

/// Coordinates `0..q` are rational, `q..q+z` integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ambient {
    pub q: usize,
    pub z: usize,
}

impl Ambient {
    pub fn new(q: usize, z: usize) -> Self {
        Ambient { q, z }
    }
    pub fn dim(&self) -> usize {
        self.q + self.z
    }
    /// Whether `x` is an element of Q^q + Z^z.
    pub fn contains(&self, x: &SVec) -> bool {
        x.iter().all(|(&i, v)| i < self.dim() && (i < self.q || is_integral(v)))
    }
}

/// `Q-span(div) + Z-span(lat)`; `lat` is an echelon lattice basis reduced modulo `div`.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub ambient: Ambient,
    div: Rref,
    lat: Vec<SVec>,
}

impl Subgroup {
    pub fn new(ambient: Ambient, div_gens: Vec<SVec>, lat_gens: Vec<SVec>) -> Self {
        let n = ambient.dim();
        let div = rref(div_gens, n);
        let lat = lattice_basis(lat_gens.iter().map(|g| div.reduce(g)).collect());
        Subgroup { ambient, div, lat }
    }

    pub fn zero(ambient: Ambient) -> Self {
        Self::new(ambient, Vec::new(), Vec::new())
    }

    pub fn full(ambient: Ambient) -> Self {
        let div = (0..ambient.q).map(svec::unit).collect();
        let lat = (ambient.q..ambient.dim()).map(svec::unit).collect();
        Self::new(ambient, div, lat)
    }

    pub fn div_basis(&self) -> &[SVec] {
        &self.div.rows
    }
    pub fn lat_basis(&self) -> &[SVec] {
        &self.lat
    }
    pub fn div_rank(&self) -> usize {
        self.div.rank()
    }
    pub fn lat_rank(&self) -> usize {
        self.lat.len()
    }
    pub fn is_zero(&self) -> bool {
        self.div.rank() == 0 && self.lat.is_empty()
    }

    /// `x = sum alpha_i div_i + sum beta_j lat_j` with alpha rational and beta integral.
    pub fn coords(&self, x: &SVec) -> Option<(Vec<Rat>, Vec<Int>)> {
        let beta = lattice_coords(&self.lat, &self.div.reduce(x))?;
        let mut rest = x.clone();
        for (b, l) in beta.iter().zip(&self.lat) {
            svec::axpy(&mut rest, &-rat_int(b), l);
        }
        let alpha = self.div.pivots.iter().map(|p| rest.get(p).cloned().unwrap_or_else(Rat::zero)).collect();
        Some((alpha, beta))
    }

    pub fn contains(&self, x: &SVec) -> bool {
        lattice_coords(&self.lat, &self.div.reduce(x)).is_some()
    }

    pub fn contains_group(&self, other: &Subgroup) -> bool {
        other.div.rows.iter().all(|d| self.div.in_row_space(d)) && other.lat.iter().all(|l| self.contains(l))
    }

    pub fn equals(&self, other: &Subgroup) -> bool {
        self.contains_group(other) && other.contains_group(self)
    }

    pub fn sum(&self, other: &Subgroup) -> Subgroup {
        assert_eq!(self.ambient, other.ambient, "sum of subgroups of different ambients");
        let mut d = self.div.rows.clone();
        d.extend(other.div.rows.iter().cloned());
        let mut l = self.lat.clone();
        l.extend(other.lat.iter().cloned());
        Subgroup::new(self.ambient, d, l)
    }

    /// `{ x in self : f x in target }`.
    pub fn preimage(&self, f: &Hom, target: &Subgroup) -> Subgroup {
        assert_eq!(f.source, self.ambient);
        assert_eq!(f.target, target.ambient);
        let fd: Vec<SVec> = self.div.rows.iter().map(|v| f.matrix.apply(v)).collect();
        let fl: Vec<SVec> = self.lat.iter().map(|v| f.matrix.apply(v)).collect();
        let neg = Rat::from_integer((-1).into());
        let mut qcols = fd;
        qcols.extend(target.div.rows.iter().map(|v| svec::scaled(v, &neg)));
        let mut zcols = fl;
        zcols.extend(target.lat.iter().map(|v| svec::scaled(v, &neg)));
        let k = mixed_kernel(&qcols, &zcols, f.target.dim());
        let (u, c) = (self.div.rank(), self.lat.len());
        let combine = |alpha: &SVec, beta: &SVec| {
            let mut x = SVec::new();
            for (&i, a) in alpha.range(..u) {
                svec::axpy(&mut x, a, &self.div.rows[i]);
            }
            for (&j, b) in beta.range(..c) {
                svec::axpy(&mut x, b, &self.lat[j]);
            }
            x
        };
        let div = k.divisible.iter().map(|a| combine(a, &SVec::new())).collect();
        let lat = k.lattice.iter().map(|(a, b)| combine(a, b)).collect();
        Subgroup::new(self.ambient, div, lat)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        self.preimage(&Hom::identity(self.ambient), other)
    }

    pub fn image(&self, f: &Hom) -> Subgroup {
        assert_eq!(f.source, self.ambient);
        Subgroup::new(
            f.target,
            self.div.rows.iter().map(|v| f.matrix.apply(v)).collect(),
            self.lat.iter().map(|v| f.matrix.apply(v)).collect(),
        )
    }

    pub fn kernel(&self, f: &Hom) -> Subgroup {
        self.preimage(f, &Subgroup::zero(f.target))
    }
}

/// Rational matrix between ambients; group-theoretic validity is checked per subquotient.
#[derive(Clone, Debug)]
pub struct Hom {
    pub source: Ambient,
    pub target: Ambient,
    pub matrix: RatMatrix,
}

impl Hom {
    pub fn new(source: Ambient, target: Ambient, matrix: RatMatrix) -> Self {
        assert_eq!((matrix.nrows(), matrix.ncols()), (target.dim(), source.dim()), "hom shape");
        Hom { source, target, matrix }
    }
    pub fn identity(a: Ambient) -> Self {
        Hom::new(a, a, RatMatrix::identity(a.dim()))
    }
    pub fn compose(&self, first: &Hom) -> Hom {
        assert_eq!(first.target, self.source);
        Hom::new(first.source, self.target, self.matrix.mul(&first.matrix))
    }
    pub fn apply(&self, x: &SVec) -> SVec {
        self.matrix.apply(x)
    }
}

/// `sub / rel`, with `rel` contained in `sub`.
#[derive(Clone, Debug)]
pub struct QZModule {
    pub sub: Subgroup,
    pub rel: Subgroup,
}

/// `Q^q + (Q/Z)^qz + Z^free + sum Z/t`, torsion in divisor-chain order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AbelianInvariants {
    pub q_rank: usize,
    pub qz_rank: usize,
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

impl AbelianInvariants {
    pub fn is_zero(&self) -> bool {
        *self == Self::default()
    }
    pub fn free(n: usize) -> Self {
        AbelianInvariants { free_rank: n, ..Default::default() }
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn term(name: &str, k: usize, paren: bool) -> Option<String> {
            match k {
                0 => None,
                1 => Some(name.into()),
                _ if paren => Some(alloc::format!("({name})^{k}")),
                _ => Some(alloc::format!("{name}^{k}")),
            }
        }
        let mut parts: Vec<String> = [term("Q", self.q_rank, false), term("Q/Z", self.qz_rank, true), term("Z", self.free_rank, false)]
            .into_iter()
            .flatten()
            .collect();
        parts.extend(self.torsion.iter().map(|t| alloc::format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl QZModule {
    pub fn new(sub: Subgroup, rel: Subgroup) -> Self {
        debug_assert!(sub.contains_group(&rel), "relations must lie in the subgroup");
        QZModule { sub, rel }
    }

    pub fn contains_rel(&self) -> bool {
        self.sub.contains_group(&self.rel)
    }

    /// Whether `x` (an element of `sub`) is zero in the quotient.
    pub fn is_trivial_class(&self, x: &SVec) -> bool {
        self.rel.contains(x)
    }

    pub fn invariants(&self) -> AbelianInvariants {
        let u = self.sub.div_rank();
        let c = self.sub.lat_rank();
        // divisible relations have vanishing lattice coordinates
        let coord = |x: &SVec| self.sub.coords(x).expect("relation outside subgroup");
        let drel: Vec<SVec> = self.rel.div_basis().iter().map(|d| svec::from_dense(&coord(d).0)).collect();
        let dq = rref(drel, u);
        let keep: Vec<usize> = dq.free_columns();
        let u2 = keep.len();
        // lattice relations: rational part in the complement, integral part
        let mut rq: Vec<Vec<Rat>> = alloc::vec![Vec::new(); u2];
        let mut rz: Vec<Vec<Int>> = alloc::vec![Vec::new(); c];
        for l in self.rel.lat_basis() {
            let (a, b) = coord(l);
            let red = dq.reduce(&svec::from_dense(&a));
            for (row, &k) in rq.iter_mut().zip(&keep) {
                row.push(red.get(&k).cloned().unwrap_or_else(Rat::zero));
            }
            for (row, v) in rz.iter_mut().zip(b) {
                row.push(v);
            }
        }
        let m = self.rel.lat_rank();
        let t = smith_in_place(&mut rz, m, |_| {}, |op| col_op(&mut rq, op));
        // after q += B z the first t columns carry no rational part
        let lam_gens: Vec<SVec> = (t..m).map(|j| svec::from_dense(&rq.iter().map(|r| r[j].clone()).collect::<Vec<_>>())).collect();
        let lam = rref(lam_gens, u2).rank();
        let torsion = (0..t).map(|j| rz[j][j].clone()).filter(|d| !d.is_one()).collect();
        AbelianInvariants { q_rank: u2 - lam, qz_rank: lam, free_rank: c - t, torsion }
    }
}

/// Homomorphism of subquotients induced by an ambient matrix.
#[derive(Clone, Debug)]
pub struct ModuleHom {
    pub source: QZModule,
    pub target: QZModule,
    pub hom: Hom,
}

impl ModuleHom {
    pub fn new(source: QZModule, target: QZModule, hom: Hom) -> Self {
        ModuleHom { source, target, hom }
    }

    /// Maps `sub` into `sub` and `rel` into `rel`.
    pub fn is_well_defined(&self) -> bool {
        self.target.sub.contains_group(&self.source.sub.image(&self.hom))
            && self.target.rel.contains_group(&self.source.rel.image(&self.hom))
    }

    /// Classes mapping to zero, as a subgroup of `source.sub` containing `source.rel`.
    pub fn kernel(&self) -> Subgroup {
        self.source.sub.preimage(&self.hom, &self.target.rel)
    }

    /// Image plus target relations.
    pub fn image(&self) -> Subgroup {
        self.source.sub.image(&self.hom).sum(&self.target.rel)
    }

    pub fn is_injective(&self) -> bool {
        self.source.rel.contains_group(&self.kernel())
    }

    pub fn is_surjective(&self) -> bool {
        self.image().contains_group(&self.target.sub)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Whether every class is sent to zero.
    pub fn is_zero(&self) -> bool {
        self.target.rel.contains_group(&self.source.sub.image(&self.hom))
    }

    pub fn compose(&self, first: &ModuleHom) -> ModuleHom {
        ModuleHom::new(first.source.clone(), self.target.clone(), self.hom.compose(&first.hom))
    }

    /// Agreement of two maps on every class.
    pub fn agrees_with(&self, other: &ModuleHom) -> bool {
        let diff = Hom::new(self.hom.source, self.hom.target, self.hom.matrix.add(&other.hom.matrix.neg()));
        self.target.rel.contains_group(&self.source.sub.image(&diff))
    }
}

/// Exactness of `A -f-> B -g-> C` at B.
pub fn is_exact_at(f: &ModuleHom, g: &ModuleHom) -> bool {
    g.kernel().equals(&f.image())
}

fn col_op(rows: &mut [Vec<Rat>], op: &ElemOp) {
    for r in rows.iter_mut() {
        match op {
            ElemOp::Swap(i, j) => r.swap(*i, *j),
            ElemOp::AddMul { target, source, factor } => {
                let d = &r[*source] * rat_int(factor);
                r[*target] += d;
            }
            ElemOp::Negate(i) => r[*i] = -core::mem::take(&mut r[*i]),
        }
    }
}

/// Invariants of Z^n / (column span of `m`).
pub fn cokernel_invariants(m: &IntMatrix) -> AbelianInvariants {
    let mut a = m.to_dense();
    let t = smith_in_place(&mut a, m.ncols(), |_| {}, |_| {});
    let torsion = (0..t).map(|j| a[j][j].clone()).filter(|d| !d.is_one()).collect();
    AbelianInvariants { free_rank: m.nrows() - t, torsion, ..Default::default() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn v(xs: &[(usize, Rat)]) -> SVec {
        xs.iter().cloned().collect()
    }

    #[test]
    fn finite_cyclic_from_two_relations() {
        let a = Ambient::new(0, 2);
        let rel = Subgroup::new(a, alloc::vec![], alloc::vec![v(&[(0, rat(2, 1))]), v(&[(1, rat(3, 1))])]);
        let m = QZModule::new(Subgroup::full(a), rel);
        assert_eq!(m.invariants().torsion, alloc::vec![int(6)]);
        assert_eq!(alloc::format!("{}", m.invariants()), "Z/6");
    }

    #[test]
    fn mixed_quotient_splits() {
        let a = Ambient::new(1, 1);
        let rel = Subgroup::new(a, alloc::vec![], alloc::vec![v(&[(0, rat(1, 2)), (1, rat(3, 1))])]);
        let inv = QZModule::new(Subgroup::full(a), rel).invariants();
        assert_eq!(alloc::format!("{inv}"), "Q + Z/3");
    }

    #[test]
    fn rationals_mod_integers() {
        let a = Ambient::new(1, 0);
        let rel = Subgroup::new(a, alloc::vec![], alloc::vec![svec::unit(0)]);
        assert_eq!(alloc::format!("{}", QZModule::new(Subgroup::full(a), rel).invariants()), "Q/Z");
    }

    #[test]
    fn preimage_and_intersection() {
        let a = Ambient::new(0, 2);
        let s = Subgroup::new(a, alloc::vec![], alloc::vec![v(&[(0, rat(2, 1))]), v(&[(0, rat(1, 1)), (1, rat(1, 1))])]);
        let t = Subgroup::new(a, alloc::vec![], alloc::vec![v(&[(0, rat(3, 1))]), svec::unit(1)]);
        let i = s.intersection(&t);
        assert!(i.contains(&v(&[(0, rat(6, 1))])));
        assert!(i.contains(&v(&[(0, rat(3, 1)), (1, rat(1, 1))])));
        assert!(!i.contains(&v(&[(0, rat(3, 1))])));
        let k = Subgroup::full(a).kernel(&Hom::new(a, Ambient::new(1, 0), RatMatrix::from_dense(&[alloc::vec![rat(1, 1), rat(1, 1)]])));
        assert_eq!(k.lat_rank(), 1);
        assert!(k.contains(&v(&[(0, rat(1, 1)), (1, rat(-1, 1))])));
    }

    #[test]
    fn cokernel_oracle() {
        let m = IntMatrix::from_dense(&[alloc::vec![int(2), int(0)], alloc::vec![int(0), int(3)], alloc::vec![int(0), int(0)]]);
        assert_eq!(alloc::format!("{}", cokernel_invariants(&m)), "Z + Z/6");
    }
}

//! Products of spark classes in the untruncated Cech-Dolbeault triple.
//!
//! For sparks `(a, r)` of degree `k` and `(b, s)` of degree `l` with `Da + psi r = e` and
//! `Db + psi s = f`, the product is `(a cup f + (-1)^{k+1} psi(r) cup b, r cup s)` in degree `k + l + 1`.
//! The constant integral cochain `1` in `I^0` plays the role of a unit in degree `-1`.

use core::cell::OnceCell;

use alloc::vec::Vec;

use num_traits::Zero;
use rand_core::RngCore;

use crate::error::Result;
use crate::exact_linalg::{svec, SVec};
use crate::scalar::{int, rat, Int, Qi, Rat};
use crate::spark_core::{SparkComplexTriple, SparkGroup, TripleMorphism};

use super::model::{CechCochain, CechModel, LevelComplex};

/// A spark written as Cech data: `a` in `F^k`, `r` in `C^{k+1}(N; Z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SparkRep {
    pub degree: usize,
    pub a: CechCochain,
    pub r: Vec<Int>,
}

pub struct SparkRing {
    pub model: CechModel,
    pub level: LevelComplex,
    pub triple: SparkComplexTriple,
    groups: Vec<OnceCell<SparkGroup>>,
}

impl SparkRing {
    pub fn new(model: CechModel) -> Result<Self> {
        let level = model.level_complex(None);
        let triple = model.cech_dolbeault_triple(&level)?;
        let groups = (0..2 * level.f.len() + 2).map(|_| OnceCell::new()).collect();
        Ok(SparkRing { model, level, triple, groups })
    }

    pub fn top_degree(&self) -> usize {
        self.level.f.len()
    }

    pub fn group(&self, k: usize) -> &SparkGroup {
        self.groups[k].get_or_init(|| self.triple.spark_group(k))
    }

    pub fn rep(&self, k: usize, x: &SVec) -> SparkRep {
        let (a, r) = self.triple.spark_parts(k, x);
        SparkRep { degree: k, a: self.model.from_vec(&self.level.layout, k, &a), r }
    }

    pub fn element(&self, s: &SparkRep) -> SVec {
        let a = self.model.to_vec(&self.level.layout, s.degree, &s.a).expect("cochain of the spark degree");
        self.triple.spark_element(s.degree, &a, &s.r)
    }

    /// `Da + psi r`, the global form of the spark as a Cech 0-cochain.
    pub fn curvature(&self, s: &SparkRep) -> CechCochain {
        let da = self.model.differential(&s.a, None);
        self.model.add(&da, &self.model.psi_cochain(s.degree + 1, &s.r), &Qi::from_int(1))
    }

    /// Product of Cech data where `a_shift = deg a + 1` (so the unit `(0, 1)` has `a_shift = 0`)
    /// and `s` lives in `C^{s_deg}(N; Z)`.
    #[allow(clippy::too_many_arguments)]
    pub fn product_parts(
        &self,
        a: &CechCochain,
        r: &[Int],
        a_shift: usize,
        b: &CechCochain,
        s: &[Int],
        s_deg: usize,
        f: &CechCochain,
    ) -> (CechCochain, Vec<Int>) {
        let m = &self.model;
        let rb = m.cup(&m.psi_cochain(a_shift, r), b);
        let sign = Qi::from_int(if a_shift % 2 == 1 { -1 } else { 1 });
        let x = m.add(&m.cup(a, f), &rb, &sign);
        (x, m.int_cup(a_shift, r, s_deg, s))
    }

    pub fn product_rep(&self, x: &SparkRep, y: &SparkRep) -> SparkRep {
        let f = self.curvature(y);
        let (a, r) = self.product_parts(&x.a, &x.r, x.degree + 1, &y.a, &y.r, y.degree + 1, &f);
        SparkRep { degree: x.degree + y.degree + 1, a, r }
    }

    /// Product of two sparks given as cone elements.
    pub fn product(&self, k: usize, x: &SVec, l: usize, y: &SVec) -> SVec {
        self.element(&self.product_rep(&self.rep(k, x), &self.rep(l, y)))
    }

    pub fn unit_left(&self, y: &SparkRep) -> SparkRep {
        let n0 = self.model.nerve().count(0);
        let one = alloc::vec![int(1); n0];
        let f = self.curvature(y);
        let (a, r) = self.product_parts(&CechCochain::new(), &one, 0, &y.a, &y.r, y.degree + 1, &f);
        SparkRep { degree: y.degree, a, r }
    }

    pub fn unit_right(&self, x: &SparkRep) -> SparkRep {
        let n0 = self.model.nerve().count(0);
        let one = alloc::vec![int(1); n0];
        let f = self.model.psi_cochain(0, &one);
        let m = &self.model;
        let a = m.cup(&x.a, &f);
        let r = m.int_cup(x.degree + 1, &x.r, 0, &one);
        SparkRep { degree: x.degree, a, r }
    }

    pub fn same_class(&self, k: usize, x: &SVec, y: &SVec) -> bool {
        self.group(k).same_class(x, y)
    }

    /// Random spark: integer combination of the lattice generators plus halves of the divisible ones.
    pub fn random_spark(&self, k: usize, rng: &mut dyn RngCore) -> SVec {
        let sub = &self.group(k).module.sub;
        let mut x = SVec::new();
        for g in sub.lat_basis() {
            let c = Rat::from_integer(int((rng.next_u32() % 5) as i64 - 2));
            svec::axpy(&mut x, &c, g);
        }
        for g in sub.div_basis() {
            if rng.next_u32().is_multiple_of(3) {
                let c = rat((rng.next_u32() % 7) as i64 - 3, 2);
                svec::axpy(&mut x, &c, g);
            }
        }
        x
    }

    /// `D(b, s)` for random `b in F^{k-1}` and `s in I^k`.
    pub fn random_boundary(&self, k: usize, rng: &mut dyn RngCore) -> SVec {
        let b: Vec<Qi> = if k == 0 {
            Vec::new()
        } else {
            (0..self.level.f.dim(k - 1)).map(|_| if rng.next_u32().is_multiple_of(4) { Qi::from_int((rng.next_u32() % 5) as i64 - 2) } else { Qi::zero() }).collect()
        };
        let s: Vec<Int> = (0..self.triple.i.dim(k)).map(|_| int((rng.next_u32() % 3) as i64 - 1)).collect();
        self.triple.boundary_of(k, &b, &s)
    }

    /// `e ^ f` of two global forms in `E` coordinates.
    pub fn e_wedge(&self, k: usize, e: &SVec, l: usize, f: &SVec) -> SVec {
        let m = &self.model;
        let lay = &self.level.layout;
        let to_cochain = |deg: usize, v: &SVec| {
            let dense: Vec<Qi> = (0..self.level.global.complex.dim(deg)).map(|i| v.get(&i).map_or(Qi::zero(), |q| Qi::from_rat(q.clone()))).collect();
            m.from_vec(lay, deg, &self.level.global.incl.map(deg).mul_vec(&dense))
        };
        let p = m.cup(&to_cochain(k, e), &to_cochain(l, f));
        if k + l >= lay.len() {
            return SVec::new();
        }
        let x = m.to_vec(lay, k + l, &p).expect("wedge of global forms");
        self.level.global.coords(k + l, &x).iter().enumerate().filter(|(_, q)| !q.is_zero()).map(|(i, q)| (i, q.re.clone())).collect()
    }

    /// Image of a spark under `Pi_p`.
    pub fn project(&self, pi: &TripleMorphism, k: usize, x: &SVec) -> SVec {
        pi.cone_map(k).apply(x)
    }
}

//! Spark complex triples, their validation, and spark class groups.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::complexes::{
    complexify_vec, cone, realify_vec, CochainComplex, ComplexMorphism, Cone, DirectSum, GroupComplex, GroupMorphism,
    QuasiIsoReport, Ring,
};
use crate::error::{Error, Result};
use crate::exact_linalg::{left_inverse, rref, svec, Ambient, Hom, QZModule, RatMatrix, SVec, Subgroup};
use crate::scalar::{rat_int, Int, Qi, Rat};

/// STRICT runs only on triples passing every axiom; MODEL reports violations and runs anyway.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tier {
    Strict,
    Model,
}

/// `(F, E, I)` with `incl: E -> F` and `psi: I -> F`.
#[derive(Clone, Debug)]
pub struct SparkComplexTriple {
    pub f: CochainComplex,
    pub e: CochainComplex,
    pub i: CochainComplex,
    pub incl: ComplexMorphism,
    pub psi: ComplexMorphism,
    fg: GroupComplex,
    eg: GroupComplex,
    ig: GroupComplex,
    incl_g: GroupMorphism,
    psi_g: GroupMorphism,
    cone: Cone,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axiom1Witness {
    pub degree: usize,
    /// Common element of `psi(I^k)` and `incl(E^k)` in `F^k`.
    pub element: Vec<Qi>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub axiom1: Option<Axiom1Witness>,
    pub axiom2: QuasiIsoReport,
    /// Nonzero integral cochain of `I^0` killed by `psi`.
    pub axiom3: Option<Vec<Int>>,
}

impl ValidationReport {
    pub fn passes(&self) -> bool {
        self.axiom1.is_none() && self.axiom2.holds() && self.axiom3.is_none()
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(w) = &self.axiom1 {
            out.push(format!("axiom 1: psi(I^{0}) meets E^{0} in {1:?}", w.degree, w.element));
        }
        for d in self.axiom2.degrees.iter().filter(|d| !(d.injective && d.surjective)) {
            out.push(format!("axiom 2: H^{} of the inclusion injective={} surjective={}", d.degree, d.injective, d.surjective));
        }
        if let Some(w) = &self.axiom3 {
            out.push(format!("axiom 3: psi kills {w:?} in degree 0"));
        }
        out
    }
}

/// Spark group data in one degree: `sparks / D(G^{k-1})` inside `G^k = F^k + I^{k+1}`.
#[derive(Clone, Debug)]
pub struct SparkGroup {
    pub degree: usize,
    pub layout: DirectSum,
    pub module: QZModule,
}

impl SparkGroup {
    pub fn is_spark(&self, x: &SVec) -> bool {
        self.module.sub.contains(x)
    }
    /// Equality of classes of two sparks.
    pub fn same_class(&self, x: &SVec, y: &SVec) -> bool {
        self.module.rel.contains(&svec::sub(x, y))
    }
}

impl SparkComplexTriple {
    pub fn new(incl: ComplexMorphism, psi: ComplexMorphism) -> Result<Self> {
        let (f, e, i) = (incl.target.clone(), incl.source.clone(), psi.source.clone());
        if psi.target.dims() != f.dims() || psi.target.ring() != f.ring() {
            return Err(Error::DimensionMismatch("psi and incl have different targets".into()));
        }
        if i.ring() != Ring::Z {
            return Err(Error::RingMismatch(format!("I must be over Z, found {}", i.ring().name())));
        }
        let (fg, eg, ig) = (f.to_group(), e.to_group(), i.to_group());
        let incl_g = incl.to_group();
        for k in 0..e.len() {
            if rref(incl_g.map(k).matrix.column_svecs(), fg.ambient(k).dim()).rank() != eg.ambient(k).dim() {
                return Err(Error::Malformed(format!("inclusion E -> F is not injective in degree {k}")));
            }
        }
        let psi_g = psi.to_group();
        let cone = cone(&psi_g);
        Ok(SparkComplexTriple { f, e, i, incl, psi, fg, eg, ig, incl_g, psi_g, cone })
    }

    pub fn f_group(&self) -> &GroupComplex {
        &self.fg
    }
    pub fn e_group(&self) -> &GroupComplex {
        &self.eg
    }
    pub fn i_group(&self) -> &GroupComplex {
        &self.ig
    }
    pub fn incl_group(&self) -> &GroupMorphism {
        &self.incl_g
    }
    pub fn psi_group(&self) -> &GroupMorphism {
        &self.psi_g
    }
    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    /// One past the top degree in which a spark group can be nonzero.
    pub fn len(&self) -> usize {
        self.f.len().max(self.i.len()).max(self.e.len())
    }
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn validate(&self) -> ValidationReport {
        ValidationReport { axiom1: self.axiom1_witness(), axiom2: self.incl_g.quasi_isomorphism_report(), axiom3: self.axiom3_witness() }
    }

    fn axiom1_witness(&self) -> Option<Axiom1Witness> {
        for k in 1..self.f.len() {
            let (p, j) = (self.psi_g.map(k).matrix, self.incl_g.map(k).matrix);
            let (ni, ne) = (p.ncols(), j.ncols());
            if ni == 0 || ne == 0 {
                continue;
            }
            let mut cols = p.column_svecs();
            cols.extend(j.neg().column_svecs());
            let rows = crate::exact_linalg::rref::columns_to_rows(&cols, p.nrows());
            for v in rref(rows, ni + ne).kernel() {
                let x = svec::window(&v, 0, ni);
                let w = p.apply(&x);
                if !w.is_empty() {
                    let w = clear_denominators(&w);
                    return Some(Axiom1Witness { degree: k, element: complexify_vec(self.f.ring(), &w, self.f.dim(k)) });
                }
            }
        }
        None
    }

    fn axiom3_witness(&self) -> Option<Vec<Int>> {
        let p = self.psi_g.map(0).matrix;
        let n = p.ncols();
        let rows = crate::exact_linalg::rref::columns_to_rows(&p.column_svecs(), p.nrows());
        rref(rows, n).kernel().first().map(|v| {
            let v = clear_denominators(v);
            (0..n).map(|i| v.get(&i).map_or_else(Int::zero, |x| x.to_integer())).collect()
        })
    }

    /// Validation gate for the STRICT tier.
    pub fn check_tier(&self, tier: Tier) -> Result<()> {
        if tier == Tier::Strict {
            let rep = self.validate();
            if !rep.passes() {
                return Err(Error::Malformed(format!("strict tier refused: {}", rep.violations().join("; "))));
            }
        }
        Ok(())
    }

    /// Realified element of `G^k` from `a in F^k` and `r in I^{k+1}`.
    pub fn spark_element(&self, k: usize, a: &[Qi], r: &[Int]) -> SVec {
        let lay = self.cone.layout(k);
        let mut x = lay.inject(0, &realify_vec(self.f.ring(), a));
        let rv: SVec = r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, rat_int(v))).collect();
        for (i, v) in lay.inject(1, &rv) {
            x.insert(i, v);
        }
        x
    }

    /// Inverse of [`Self::spark_element`].
    pub fn spark_parts(&self, k: usize, x: &SVec) -> (Vec<Qi>, Vec<Int>) {
        let lay = self.cone.layout(k);
        let a = complexify_vec(self.f.ring(), &lay.project(0, x), self.f.dim(k));
        let r = lay.project(1, x);
        let r = (0..self.i.dim(k + 1)).map(|i| r.get(&i).map_or_else(Int::zero, |v| v.to_integer())).collect();
        (a, r)
    }

    /// `incl(E^{k+1}) + 0` inside `G^{k+1}`.
    fn e_target(&self, k: usize) -> Subgroup {
        let lay = self.cone.layout(k + 1);
        let j = self.incl_g.map(k + 1).matrix;
        let gens = j.column_svecs().iter().map(|c| lay.inject(0, c)).collect();
        Subgroup::new(lay.ambient, gens, Vec::new())
    }

    /// Pairs `(a, r)` with `da + psi r` in `incl(E^{k+1})` and `dr = 0`.
    pub fn sparks(&self, k: usize) -> Subgroup {
        Subgroup::full(self.cone.ambient(k)).preimage(&self.cone.diff(k), &self.e_target(k))
    }

    pub fn spark_group(&self, k: usize) -> SparkGroup {
        SparkGroup { degree: k, layout: self.cone.layout(k), module: QZModule::new(self.sparks(k), self.cone.boundaries(k)) }
    }

    pub fn spark_class_group(&self, k: usize, tier: Tier) -> Result<SparkGroup> {
        self.check_tier(tier)?;
        Ok(self.spark_group(k))
    }

    /// Left inverse of the inclusion in degree `k`, on realified coordinates.
    pub fn incl_left_inverse(&self, k: usize) -> RatMatrix {
        left_inverse(&self.incl_g.map(k).matrix).expect("inclusion is injective")
    }

    /// `delta_1: G^k -> E^{k+1}`, `(a, r) -> incl^{-1}(da + psi r)`.
    pub fn delta1_hom(&self, k: usize) -> Hom {
        let lay = self.cone.layout(k);
        let dg = self.cone.diff(k).matrix;
        let next = self.cone.layout(k + 1);
        let proj = next.projection(0).matrix;
        let m = self.incl_left_inverse(k + 1).mul(&proj).mul(&dg);
        Hom::new(lay.ambient, self.eg.ambient(k + 1), m)
    }

    /// `delta_2: G^k -> I^{k+1}`, `(a, r) -> r`.
    pub fn delta2_hom(&self, k: usize) -> Hom {
        self.cone.layout(k).projection(1)
    }

    /// The witness `e` of a spark, or an error when `x` is not a spark.
    pub fn delta1(&self, k: usize, x: &SVec) -> Result<SVec> {
        if !self.sparks(k).contains(x) {
            return Err(Error::NotASpark(format!("degree {k}")));
        }
        Ok(self.delta1_hom(k).apply(x))
    }

    pub fn delta2(&self, k: usize, x: &SVec) -> SVec {
        self.delta2_hom(k).apply(x)
    }

    /// `D(b, s)` for `b in F^{k-1}`, `s in I^k`, as an element of `G^k`.
    pub fn boundary_of(&self, k: usize, b: &[Qi], s: &[Int]) -> SVec {
        let km1 = k.wrapping_sub(1);
        // G^{-1} = I^0 is stored at cone index 0
        let (lay, d) = if k == 0 {
            (self.cone.layouts[0].clone(), self.cone.complex.diff(0))
        } else {
            (self.cone.layout(km1), self.cone.diff(km1))
        };
        let mut x = if k == 0 { SVec::new() } else { lay.inject(0, &realify_vec(self.f.ring(), b)) };
        let sv: SVec = s.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, rat_int(v))).collect();
        for (i, v) in lay.inject(1, &sv) {
            x.insert(i, v);
        }
        d.apply(&x)
    }

    /// Ambient of `E^k` on realified coordinates.
    pub fn e_ambient(&self, k: usize) -> Ambient {
        self.eg.ambient(k)
    }
}

/// Scales a rational vector to a primitive integral one with positive leading entry.
pub fn clear_denominators(v: &SVec) -> SVec {
    use num_integer::Integer;
    let mut den = Int::one();
    for x in v.values() {
        den = den.lcm(x.denom());
    }
    let mut g = Int::zero();
    for x in v.values() {
        g = g.gcd(&(x.numer() * (&den / x.denom())));
    }
    if g.is_zero() {
        return v.clone();
    }
    let lead_neg = v.values().next().is_some_and(|x| x.is_negative());
    let s = Rat::new(if lead_neg { -den } else { den }, g);
    svec::scaled(v, &s)
}

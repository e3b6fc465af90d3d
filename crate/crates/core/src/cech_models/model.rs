//! Total complexes of a Cech model and the spark complex triples assembled from them.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand_core::RngCore;

use crate::complexes::{CochainComplex, ComplexMorphism, Ring};
use crate::error::{Error, Result};
use crate::exact_linalg::{integer_kernel, lattice_basis, lattice_coords, rank, rref, QiMatrix, SVec};
use crate::scalar::{int, rat_int, Int, Qi, Rat};
use crate::spark_core::{SparkComplexTriple, TripleMorphism};

use super::coeffs::{qvec_axpy, CoefficientSystem, QVec};
use super::nerve::{Nerve, SimplexId};

/// A local basis element on a simplex.
pub type Slot = (SimplexId, usize);

/// Cech cochain with values in the local algebras, keyed by simplex.
pub type CechCochain = BTreeMap<SimplexId, QVec>;

/// Level `None` keeps every piece; level `p` keeps holomorphic degree `< p`.
pub fn keeps(level: Option<usize>, hol: usize) -> bool {
    level.is_none_or(|p| hol < p)
}

/// Positions of slots inside each total degree `r + s`.
#[derive(Clone, Debug)]
pub struct CechLayout {
    pub level: Option<usize>,
    pub slots: Vec<Vec<Slot>>,
    pub index: BTreeMap<Slot, (usize, usize)>,
}

impl CechLayout {
    fn from_slots(level: Option<usize>, mut list: Vec<(usize, Slot)>) -> Self {
        list.sort();
        let top = list.iter().map(|x| x.0 + 1).max().unwrap_or(0);
        let mut slots = alloc::vec![Vec::new(); top];
        let mut index = BTreeMap::new();
        for (k, s) in list {
            index.insert(s, (k, slots[k].len()));
            slots[k].push(s);
        }
        CechLayout { level, slots, index }
    }
    pub fn dim(&self, k: usize) -> usize {
        self.slots.get(k).map_or(0, |v| v.len())
    }
    pub fn dims(&self) -> Vec<usize> {
        self.slots.iter().map(|v| v.len()).collect()
    }
    pub fn len(&self) -> usize {
        self.slots.len()
    }
    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }
}

/// Global sections: `E^s` with its inclusion into the Cech total complex as 0-cochains.
#[derive(Clone, Debug)]
pub struct GlobalForms {
    pub complex: CochainComplex,
    pub incl: ComplexMorphism,
    /// Total-complex positions whose values are the `E` coordinates of a global section.
    pub readout: Vec<Vec<usize>>,
}

impl GlobalForms {
    pub fn coords(&self, s: usize, x: &[Qi]) -> Vec<Qi> {
        self.readout[s].iter().map(|&i| x[i].clone()).collect()
    }
}

/// Level-`p` Cech data: the layout, the total complex `F_p` and the global forms `E_p`.
#[derive(Clone, Debug)]
pub struct LevelComplex {
    pub level: Option<usize>,
    pub layout: CechLayout,
    pub f: CochainComplex,
    pub global: GlobalForms,
}

/// Integral lattice inside the global sections.
#[derive(Clone, Debug)]
pub struct GlobalLattice {
    pub complex: CochainComplex,
    /// Basis of each degree as total-complex vectors.
    pub basis: Vec<Vec<SVec>>,
}

/// The three level-`p` triples and the two web morphisms into the hyperspark triple.
#[derive(Clone, Debug)]
pub struct HypersparkWeb {
    pub cech_dolbeault: SparkComplexTriple,
    pub hyperspark: SparkComplexTriple,
    pub global: SparkComplexTriple,
    pub from_cech_dolbeault: TripleMorphism,
    pub from_global: TripleMorphism,
}

#[derive(Clone, Debug)]
pub struct CechModel {
    pub coeffs: CoefficientSystem,
    cofaces: BTreeMap<SimplexId, Vec<(SimplexId, i64)>>,
    rcols: BTreeMap<(SimplexId, SimplexId), Vec<QVec>>,
    dcols: BTreeMap<SimplexId, Vec<QVec>>,
}

fn sign(odd: bool) -> Qi {
    Qi::from_int(if odd { -1 } else { 1 })
}

fn int_of(q: &Qi) -> Int {
    debug_assert!(q.is_integer());
    q.re.numer().clone()
}

impl CechModel {
    /// Validates the coefficient system; models are assembled over the real form, so `Q(i)` entries are rejected.
    pub fn new(coeffs: CoefficientSystem) -> Result<Self> {
        coeffs.validate(64)?;
        if !coeffs.is_real() {
            return Err(Error::RingMismatch("coefficient system has non-real structure constants".into()));
        }
        let nerve = coeffs.nerve.clone();
        let mut cofaces: BTreeMap<SimplexId, Vec<(SimplexId, i64)>> = nerve.ids().map(|s| (s, Vec::new())).collect();
        for t in nerve.ids().filter(|t| t.0 > 0) {
            let ts = nerve.simplex_at(t).to_vec();
            for i in 0..ts.len() {
                let mut f = ts.clone();
                f.remove(i);
                let fid = nerve.id_of(&f).expect("face");
                cofaces.get_mut(&fid).expect("face id").push((t, if i % 2 == 0 { 1 } else { -1 }));
            }
        }
        let mut rcols = BTreeMap::new();
        for s in nerve.ids() {
            for t in nerve.ids() {
                if t.0 > s.0 && nerve.simplex_at(s).iter().all(|v| nerve.simplex_at(t).contains(v)) {
                    rcols.insert((s, t), coeffs.restriction(s, t).columns());
                }
            }
        }
        let dcols = nerve.ids().map(|s| (s, coeffs.local(s).d().columns())).collect();
        Ok(CechModel { coeffs, cofaces, rcols, dcols })
    }

    pub fn nerve(&self) -> &Nerve {
        &self.coeffs.nerve
    }

    pub fn restrict_vec(&self, face: SimplexId, simplex: SimplexId, v: &QVec) -> QVec {
        if face == simplex {
            return v.clone();
        }
        let cols = &self.rcols[&(face, simplex)];
        let mut out = QVec::new();
        for (&i, c) in v {
            qvec_axpy(&mut out, c, &cols[i]);
        }
        out
    }

    fn hol(&self, s: SimplexId, i: usize) -> usize {
        self.coeffs.local(s).bideg[i].0
    }

    /// Total degree `r + s` of a slot.
    pub fn slot_degree(&self, (s, i): Slot) -> usize {
        s.0 + self.coeffs.local(s).degree(i)
    }

    pub fn layout(&self, level: Option<usize>) -> CechLayout {
        let mut list = Vec::new();
        for s in self.nerve().ids() {
            let a = self.coeffs.local(s);
            for i in 0..a.dim() {
                if keeps(level, a.bideg[i].0) {
                    list.push((s.0 + a.degree(i), (s, i)));
                }
            }
        }
        CechLayout::from_slots(level, list)
    }

    /// Lattice slots: the integral cochains `C^r(L^s)`.
    pub fn lattice_layout(&self) -> CechLayout {
        let mut list = Vec::new();
        for s in self.nerve().ids() {
            let a = self.coeffs.local(s);
            for &i in &a.lattice {
                list.push((s.0 + a.degree(i), (s, i)));
            }
        }
        CechLayout::from_slots(None, list)
    }

    pub fn truncate(&self, c: &CechCochain, level: Option<usize>) -> CechCochain {
        let mut out = CechCochain::new();
        for (&s, v) in c {
            let w: QVec = v.iter().filter(|(&i, _)| keeps(level, self.hol(s, i))).map(|(&i, x)| (i, x.clone())).collect();
            if !w.is_empty() {
                out.insert(s, w);
            }
        }
        out
    }

    /// `D_p = delta + (-1)^r d_p`.
    pub fn differential(&self, c: &CechCochain, level: Option<usize>) -> CechCochain {
        let mut out = CechCochain::new();
        for (&s, v) in c {
            for &(t, sg) in &self.cofaces[&s] {
                let w = self.restrict_vec(s, t, v);
                qvec_axpy(out.entry(t).or_default(), &Qi::from_int(sg), &w);
            }
            let cols = &self.dcols[&s];
            let sg = sign(s.0 % 2 == 1);
            let e = out.entry(s).or_default();
            for (&i, x) in v {
                qvec_axpy(e, &(&sg * x), &cols[i]);
            }
        }
        out.retain(|_, v| !v.is_empty());
        self.truncate(&out, level)
    }

    pub fn add(&self, a: &CechCochain, b: &CechCochain, cb: &Qi) -> CechCochain {
        let mut out = a.clone();
        for (&s, v) in b {
            qvec_axpy(out.entry(s).or_default(), cb, v);
        }
        out.retain(|_, v| !v.is_empty());
        out
    }

    pub fn to_vec(&self, lay: &CechLayout, k: usize, c: &CechCochain) -> Result<Vec<Qi>> {
        let mut x = alloc::vec![Qi::zero(); lay.dim(k)];
        for (&s, v) in c {
            for (&i, val) in v {
                match lay.index.get(&(s, i)) {
                    Some(&(d, o)) if d == k => x[o] = val.clone(),
                    _ => return Err(Error::OutOfWindow(k)),
                }
            }
        }
        Ok(x)
    }

    pub fn from_vec(&self, lay: &CechLayout, k: usize, x: &[Qi]) -> CechCochain {
        let mut out = CechCochain::new();
        for (o, v) in x.iter().enumerate() {
            if !v.is_zero() {
                let (s, i) = lay.slots[k][o];
                out.entry(s).or_default().insert(i, v.clone());
            }
        }
        out
    }

    fn complex_on(&self, lay: &CechLayout, ring: Ring) -> CochainComplex {
        let mut d = Vec::new();
        for k in 0..lay.len().saturating_sub(1) {
            let mut ts = Vec::new();
            for (j, &(s, i)) in lay.slots[k].iter().enumerate() {
                let unit: CechCochain = [(s, [(i, Qi::one())].into_iter().collect())].into_iter().collect();
                for (t, v) in self.differential(&unit, lay.level) {
                    for (l, x) in v {
                        let (dk, o) = lay.index[&(t, l)];
                        debug_assert_eq!(dk, k + 1);
                        ts.push((o, j, x));
                    }
                }
            }
            d.push(QiMatrix::from_triplets(lay.dim(k + 1), lay.dim(k), ts));
        }
        CochainComplex::new(ring, lay.dims(), d).expect("D squares to zero")
    }

    /// The Cech total complex `F_p`.
    pub fn total_complex(&self, level: Option<usize>) -> (CechLayout, CochainComplex) {
        let lay = self.layout(level);
        let c = self.complex_on(&lay, Ring::Q);
        (lay, c)
    }

    /// `C^*(N; Z)` with the simplicial coboundary.
    pub fn integral_complex(&self) -> CochainComplex {
        let n = self.nerve();
        let d = (0..n.len().saturating_sub(1)).map(|r| n.coboundary(r).map(|x| Qi::from_rat(rat_int(x)))).collect();
        CochainComplex::new(Ring::Z, (0..n.len()).map(|r| n.count(r)).collect(), d).expect("nerve coboundary")
    }

    /// `x -> x_sigma one(sigma)` on Cech `r`-cochains.
    pub fn psi_cochain(&self, r: usize, x: &[Int]) -> CechCochain {
        let mut out = CechCochain::new();
        for (pos, c) in x.iter().enumerate() {
            if !c.is_zero() {
                let s = (r, pos);
                let mut v = QVec::new();
                qvec_axpy(&mut v, &Qi::from_rat(rat_int(c)), &self.coeffs.local(s).one);
                out.insert(s, v);
            }
        }
        out
    }

    /// Global sections are the kernel of the Cech coboundary on 0-cochains.
    fn global_forms(&self, lay: &CechLayout, f: &CochainComplex) -> GlobalForms {
        let top = lay.len();
        let mut e_incl = Vec::new();
        let mut e_read = Vec::new();
        let mut e_dims = Vec::new();
        for k in 0..top {
            let (m, r) = self.delta_kernel(lay, k);
            e_dims.push(m.ncols());
            e_incl.push(m);
            e_read.push(r);
        }
        let mut d = Vec::new();
        for k in 0..top.saturating_sub(1) {
            let img = f.diff(k).mul(&e_incl[k]);
            let ts: Vec<(usize, usize, Qi)> = (0..e_read[k + 1].len())
                .flat_map(|i| {
                    let p = e_read[k + 1][i];
                    img.row(p).iter().map(move |(&j, x)| (i, j, x.clone())).collect::<Vec<_>>()
                })
                .collect();
            d.push(QiMatrix::from_triplets(e_dims[k + 1], e_dims[k], ts));
        }
        let complex = CochainComplex::new(Ring::Q, e_dims, d).expect("global forms form a complex");
        let incl = ComplexMorphism::new(complex.clone(), f.clone(), e_incl).expect("global forms include as a chain map");
        GlobalForms { complex, incl, readout: e_read }
    }

    /// Kernel of the Cech coboundary on 0-cochains of total degree `k`, with its readout positions.
    fn delta_kernel(&self, lay: &CechLayout, k: usize) -> (QiMatrix, Vec<usize>) {
        let zero_slots: Vec<usize> = (0..lay.dim(k)).filter(|&o| lay.slots[k][o].0 .0 == 0).collect();
        let mut rows: BTreeMap<Slot, SVec> = BTreeMap::new();
        for (c, &o) in zero_slots.iter().enumerate() {
            let (s, i) = lay.slots[k][o];
            let v: QVec = [(i, Qi::one())].into_iter().collect();
            for &(t, sg) in &self.cofaces[&s] {
                for (l, x) in self.restrict_vec(s, t, &v) {
                    let row = rows.entry((t, l)).or_default();
                    crate::exact_linalg::svec::add_entry(row, c, &(x.re * Rat::from_integer(int(sg))));
                }
            }
        }
        let red = rref(rows.into_values().filter(|r| !r.is_empty()).collect(), zero_slots.len());
        let free = red.free_columns();
        let ker = red.kernel();
        let zs = &zero_slots;
        let ts: Vec<(usize, usize, Qi)> =
            ker.iter().enumerate().flat_map(|(j, v)| v.iter().map(move |(&c, x)| (zs[c], j, Qi::from_rat(x.clone())))).collect();
        (QiMatrix::from_triplets(lay.dim(k), ker.len(), ts), free.iter().map(|&c| zero_slots[c]).collect())
    }

    pub fn level_complex(&self, level: Option<usize>) -> LevelComplex {
        let (layout, f) = self.total_complex(level);
        let global = self.global_forms(&layout, &f);
        LevelComplex { level, layout, f, global }
    }

    fn psi_morphism(&self, lc: &LevelComplex) -> ComplexMorphism {
        let i = self.integral_complex();
        let maps = (0..i.len().max(lc.f.len()))
            .map(|r| {
                let mut ts = Vec::new();
                for pos in 0..i.dim(r) {
                    let s = (r, pos);
                    for (&l, x) in &self.coeffs.local(s).one {
                        let (_, o) = lc.layout.index[&(s, l)];
                        ts.push((o, pos, x.clone()));
                    }
                }
                QiMatrix::from_triplets(lc.f.dim(r), i.dim(r), ts)
            })
            .collect();
        ComplexMorphism::new(i, lc.f.clone(), maps).expect("psi is a chain map")
    }

    /// Cech-Dolbeault triple `(F_p, E_p, C^*(N; Z))`.
    pub fn cech_dolbeault_triple(&self, lc: &LevelComplex) -> Result<SparkComplexTriple> {
        SparkComplexTriple::new(lc.global.incl.clone(), self.psi_morphism(lc))
    }

    pub fn assemble_level_p(&self, p: usize) -> Result<SparkComplexTriple> {
        if p == 0 {
            return Err(Error::Malformed("level must be at least 1".into()));
        }
        self.cech_dolbeault_triple(&self.level_complex(Some(p)))
    }

    /// `Tot C^r(N, L^s)` and its inclusion into `F_p`.
    pub fn hyperspark_i(&self, lc: &LevelComplex) -> (CechLayout, CochainComplex, ComplexMorphism) {
        let ll = self.lattice_layout();
        let i = self.complex_on(&ll, Ring::Z);
        let maps = (0..i.len().max(lc.f.len()))
            .map(|k| {
                let ts: Vec<(usize, usize, Qi)> =
                    (0..ll.dim(k)).map(|o| (lc.layout.index[&ll.slots[k][o]].1, o, Qi::one())).collect();
                QiMatrix::from_triplets(lc.f.dim(k), ll.dim(k), ts)
            })
            .collect();
        let psi = ComplexMorphism::new(i.clone(), lc.f.clone(), maps).expect("lattice inclusion is a chain map");
        (ll, i, psi)
    }

    /// Integral global sections `L_glob` inside `E_p`.
    pub fn global_lattice(&self, lc: &LevelComplex) -> GlobalLattice {
        let ll = self.lattice_layout();
        let top = ll.len();
        let mut basis: Vec<Vec<SVec>> = Vec::new();
        for k in 0..top {
            let zero: Vec<usize> = (0..ll.dim(k)).filter(|&o| ll.slots[k][o].0 .0 == 0).collect();
            let mut rows: BTreeMap<Slot, SVec> = BTreeMap::new();
            for (c, &o) in zero.iter().enumerate() {
                let (s, i) = ll.slots[k][o];
                let v: QVec = [(i, Qi::one())].into_iter().collect();
                for &(t, sg) in &self.cofaces[&s] {
                    for (l, x) in self.restrict_vec(s, t, &v) {
                        crate::exact_linalg::svec::add_entry(rows.entry((t, l)).or_default(), c, &(x.re * Rat::from_integer(int(sg))));
                    }
                }
            }
            let ker = integer_kernel(rows.into_values().filter(|r| !r.is_empty()).collect(), zero.len());
            // total-complex coordinates
            basis.push(lattice_basis(
                ker.iter()
                    .map(|v| v.iter().map(|(&c, x)| (lc.layout.index[&ll.slots[k][zero[c]]].1, x.clone())).collect())
                    .collect(),
            ));
        }
        let mut d = Vec::new();
        for k in 0..top.saturating_sub(1) {
            let mut ts = Vec::new();
            for (j, v) in basis[k].iter().enumerate() {
                let x: Vec<Qi> = (0..lc.f.dim(k)).map(|o| v.get(&o).map_or(Qi::zero(), |q| Qi::from_rat(q.clone()))).collect();
                let y = lc.f.diff(k).mul_vec(&x);
                let ys: SVec = y.iter().enumerate().filter(|(_, q)| !q.is_zero()).map(|(o, q)| (o, q.re.clone())).collect();
                let c = lattice_coords(&basis[k + 1], &ys).expect("d preserves integral global sections");
                for (i, ci) in c.iter().enumerate() {
                    if !ci.is_zero() {
                        ts.push((i, j, Qi::from_rat(rat_int(ci))));
                    }
                }
            }
            d.push(QiMatrix::from_triplets(basis[k + 1].len(), basis[k].len(), ts));
        }
        let complex = CochainComplex::new(Ring::Z, basis.iter().map(|b| b.len()).collect(), d).expect("integral global sections");
        GlobalLattice { complex, basis }
    }

    /// The three level-`p` triples and the web morphisms into the hyperspark triple.
    pub fn assemble_hyperspark_level_p(&self, level: Option<usize>) -> Result<HypersparkWeb> {
        if level == Some(0) {
            return Err(Error::Malformed("level must be at least 1".into()));
        }
        let lc = self.level_complex(level);
        let cd = self.cech_dolbeault_triple(&lc)?;
        let (ll, ih, psi_h) = self.hyperspark_i(&lc);
        let hyper = SparkComplexTriple::new(lc.global.incl.clone(), psi_h)?;

        let nz = self.integral_complex();
        let mi = (0..nz.len().max(ih.len()))
            .map(|r| {
                let mut ts = Vec::new();
                for pos in 0..nz.dim(r) {
                    let s = (r, pos);
                    for (&l, x) in &self.coeffs.local(s).one {
                        ts.push((ll.index[&(s, l)].1, pos, x.clone()));
                    }
                }
                QiMatrix::from_triplets(ih.dim(r), nz.dim(r), ts)
            })
            .collect();
        let from_cd = TripleMorphism::new(
            cd.clone(),
            hyper.clone(),
            ComplexMorphism::identity(&lc.f),
            ComplexMorphism::identity(&lc.global.complex),
            ComplexMorphism::new(nz, ih.clone(), mi)?,
        )?;

        let gl = self.global_lattice(&lc);
        let e = &lc.global;
        let psi_g = (0..gl.complex.len().max(e.complex.len()))
            .map(|k| {
                let mut ts = Vec::new();
                for (j, v) in gl.basis.get(k).map_or(&[][..], |b| b.as_slice()).iter().enumerate() {
                    for (i, &p) in e.readout[k].iter().enumerate() {
                        if let Some(x) = v.get(&p) {
                            ts.push((i, j, Qi::from_rat(x.clone())));
                        }
                    }
                }
                QiMatrix::from_triplets(e.complex.dim(k), gl.complex.dim(k), ts)
            })
            .collect();
        let global = SparkComplexTriple::new(ComplexMorphism::identity(&e.complex), ComplexMorphism::new(gl.complex.clone(), e.complex.clone(), psi_g)?)?;
        let mi_g = (0..gl.complex.len().max(ih.len()))
            .map(|k| {
                let mut ts = Vec::new();
                for (j, v) in gl.basis.get(k).map_or(&[][..], |b| b.as_slice()).iter().enumerate() {
                    for (&p, x) in v {
                        let slot = lc.layout.slots[k][p];
                        ts.push((ll.index[&slot].1, j, Qi::from_rat(x.clone())));
                    }
                }
                QiMatrix::from_triplets(ih.dim(k), gl.complex.dim(k), ts)
            })
            .collect();
        let from_global = TripleMorphism::new(
            global.clone(),
            hyper.clone(),
            e.incl.clone(),
            ComplexMorphism::identity(&e.complex),
            ComplexMorphism::new(gl.complex.clone(), ih, mi_g)?,
        )?;
        Ok(HypersparkWeb { cech_dolbeault: cd, hyperspark: hyper, global, from_cech_dolbeault: from_cd, from_global })
    }

    /// `Pi_p = (pi_p, pi_p, id)` from the untruncated triple to level `p`.
    pub fn level_projection(&self, p: usize) -> Result<TripleMorphism> {
        let full = self.level_complex(None);
        let trunc = self.level_complex(Some(p));
        let src = self.cech_dolbeault_triple(&full)?;
        let tgt = self.cech_dolbeault_triple(&trunc)?;
        let mut mf = Vec::new();
        let mut me = Vec::new();
        for k in 0..full.f.len() {
            let ts: Vec<(usize, usize, Qi)> = full.layout.slots[k]
                .iter()
                .enumerate()
                .filter_map(|(j, s)| trunc.layout.index.get(s).map(|&(_, o)| (o, j, Qi::one())))
                .collect();
            let pi = QiMatrix::from_triplets(trunc.f.dim(k), full.f.dim(k), ts);
            let img = pi.mul(&full.global.incl.map(k));
            let ts: Vec<(usize, usize, Qi)> = trunc.global.readout.get(k).map_or(&[][..], |r| r.as_slice())
                .iter()
                .enumerate()
                .flat_map(|(i, &p)| img.row(p).iter().map(move |(&j, x)| (i, j, x.clone())).collect::<Vec<_>>())
                .collect();
            me.push(QiMatrix::from_triplets(trunc.global.complex.dim(k), full.global.complex.dim(k), ts));
            mf.push(pi);
        }
        let mf = ComplexMorphism::new(full.f.clone(), trunc.f.clone(), mf)?;
        let me = ComplexMorphism::new(full.global.complex.clone(), trunc.global.complex.clone(), me)?;
        let mi = ComplexMorphism::identity(&src.i);
        TripleMorphism::new(src, tgt, mf, me, mi)
    }

    /// Whether every Cech row `C^0(A^s) -> C^1(A^s) -> ...` is exact away from the first column.
    pub fn rows_exact(&self, level: Option<usize>) -> bool {
        let lay = self.layout(level);
        let top = self.nerve().len();
        let forms = lay.len();
        for s in 0..forms {
            let mut ranks = Vec::new();
            let mut dims = Vec::new();
            for r in 0..top {
                let slots: Vec<Slot> = lay.index.keys().filter(|&&(sm, i)| sm.0 == r && self.coeffs.local(sm).degree(i) == s).copied().collect();
                dims.push(slots.len());
                let col: BTreeMap<Slot, usize> = slots.iter().enumerate().map(|(c, s)| (*s, c)).collect();
                let mut rows: BTreeMap<Slot, SVec> = BTreeMap::new();
                for (&(sm, i), &c) in &col {
                    let v: QVec = [(i, Qi::one())].into_iter().collect();
                    for &(t, sg) in &self.cofaces[&sm] {
                        for (l, x) in self.restrict_vec(sm, t, &v) {
                            if keeps(level, self.hol(t, l)) {
                                crate::exact_linalg::svec::add_entry(rows.entry((t, l)).or_default(), c, &(x.re * Rat::from_integer(int(sg))));
                            }
                        }
                    }
                }
                ranks.push(rank(rows.into_values().filter(|r| !r.is_empty()).collect(), slots.len()));
            }
            for r in 1..top {
                if dims[r] - ranks[r] != ranks[r - 1] {
                    return false;
                }
            }
        }
        true
    }

    /// `(a cup b)` on `i_0..i_{r+r'}` is `(-1)^{s r'} a(i_0..i_r) ^ b(i_r..i_{r+r'})`, both restricted.
    pub fn cup(&self, a: &CechCochain, b: &CechCochain) -> CechCochain {
        let n = self.nerve();
        let mut out = CechCochain::new();
        for u in n.ids() {
            let vs = n.simplex_at(u);
            let alg = self.coeffs.local(u);
            for r in 0..vs.len() {
                let (Some(fa), Some(fb)) = (n.id_of(&vs[..=r]), n.id_of(&vs[r..])) else { continue };
                let (Some(av), Some(bv)) = (a.get(&fa), b.get(&fb)) else { continue };
                let rp = fb.0;
                let signed: QVec = av
                    .iter()
                    .map(|(&i, x)| (i, if self.coeffs.local(fa).degree(i) * rp % 2 == 1 { -x.clone() } else { x.clone() }))
                    .collect();
                let p = alg.wedge_vec(&self.restrict_vec(fa, u, &signed), &self.restrict_vec(fb, u, bv));
                qvec_axpy(out.entry(u).or_default(), &Qi::one(), &p);
            }
        }
        out.retain(|_, v| !v.is_empty());
        out
    }

    /// Integral cup `(x cup y)(i_0..i_{r+l}) = x(i_0..i_r) y(i_r..i_{r+l})`.
    pub fn int_cup(&self, r: usize, x: &[Int], l: usize, y: &[Int]) -> Vec<Int> {
        let n = self.nerve();
        (0..n.count(r + l))
            .map(|pos| {
                let vs = n.simplex_at((r + l, pos));
                let f = n.id_of(&vs[..=r]).expect("front face").1;
                let b = n.id_of(&vs[r..]).expect("back face").1;
                &x[f] * &y[b]
            })
            .collect()
    }

    /// Random cochain of total degree `k` on the given layout, entries in `[-2, 2]`.
    pub fn random_cochain(&self, lay: &CechLayout, k: usize, density: u32, rng: &mut dyn RngCore) -> CechCochain {
        let x: Vec<Qi> = (0..lay.dim(k))
            .map(|_| if rng.next_u32() % 100 < density { Qi::from_int((rng.next_u32() % 5) as i64 - 2) } else { Qi::zero() })
            .collect();
        self.from_vec(lay, k, &x)
    }

    pub fn int_of(q: &Qi) -> Int {
        int_of(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cech_models::{disk, torus};

    #[test]
    fn torus_level_one_dimensions() {
        let m = CechModel::new(torus(1)).unwrap();
        let (lay, f) = m.total_complex(None);
        assert_eq!(f.dims(), &[91, 322, 371, 140]);
        let lc = m.level_complex(Some(1));
        // level 1 drops the dz copy, which sits one degree up
        assert_eq!(lc.f.dims(), &[91, 231, 140]);
        assert_eq!(lay.dim(0), 91);
        assert!(m.rows_exact(None));
    }

    #[test]
    fn disk_rows_exact() {
        let m = CechModel::new(disk(2)).unwrap();
        assert!(m.rows_exact(None));
        assert!(m.rows_exact(Some(1)));
    }
}

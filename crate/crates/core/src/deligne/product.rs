//! Products of Deligne classes: Beilinson's cup on `M_p`, and the route through untruncated sparks.
//!
//! `phi_p` sends a cocycle `r + a` of `M^k_p` to the level-`p` spark `(a, (-1)^k r)` of degree `k - 1`.
//! For the spark route both factors are lifted to untruncated sparks `(A, (-1)^k r)` with
//! `pi_p A = a`, multiplied, and projected to level `p + q`.

use core::cell::OnceCell;

use alloc::vec::Vec;

use num_traits::Zero;
use rand_core::RngCore;

use crate::cech_models::{qvec_apply, CechCochain, CechModel, LevelComplex, SparkRep, SparkRing};
use crate::error::{Error, Result};
use crate::exact_linalg::{solve_q, ModuleHom, QZModule, RatMatrix, SVec, Subgroup};
use crate::scalar::{Int, Qi};
use crate::spark_core::{SparkComplexTriple, SparkGroup};

use super::{sign, DeligneCochain, DeligneComplex};

/// Highest level handled by a [`DeligneRing`].
pub const MAX_LEVEL: usize = 8;

/// Outcome of comparing the two product routes on one pair of cocycles.
#[derive(Clone, Debug)]
pub struct ProductCertificate {
    /// The spark-route product at level `p + q`.
    pub via_sparks: SVec,
    /// `phi_{p+q}` of the Beilinson product.
    pub via_beilinson: SVec,
    /// `a cup (B - b)`, whose boundary accounts for the difference.
    pub correction: CechCochain,
    /// Left side minus right side of the cochain identity; empty when it holds.
    pub residual: CechCochain,
    pub lifts_valid: bool,
    pub beilinson_closed: bool,
    pub in_ker_delta1: bool,
    pub same_class: bool,
}

impl ProductCertificate {
    pub fn holds(&self) -> bool {
        self.residual.is_empty() && self.lifts_valid && self.beilinson_closed && self.in_ker_delta1 && self.same_class
    }
}

fn negated(r: &[Int], odd: bool) -> Vec<Int> {
    if odd {
        r.iter().map(|x| -x).collect()
    } else {
        r.to_vec()
    }
}

/// Deligne complexes of all levels over one spark ring, built on demand.
pub struct DeligneRing<'r> {
    pub ring: &'r SparkRing,
    complexes: Vec<OnceCell<DeligneComplex<'r>>>,
    levels: Vec<OnceCell<(LevelComplex, SparkComplexTriple)>>,
    groups: Vec<Vec<OnceCell<SparkGroup>>>,
}

impl<'r> DeligneRing<'r> {
    pub fn new(ring: &'r SparkRing) -> Self {
        let top = ring.top_degree() + 2;
        DeligneRing {
            ring,
            complexes: (0..=MAX_LEVEL).map(|_| OnceCell::new()).collect(),
            levels: (0..=MAX_LEVEL).map(|_| OnceCell::new()).collect(),
            groups: (0..=MAX_LEVEL).map(|_| (0..top).map(|_| OnceCell::new()).collect()).collect(),
        }
    }

    pub fn model(&self) -> &'r CechModel {
        &self.ring.model
    }

    fn check_level(p: usize) -> Result<()> {
        if p > MAX_LEVEL {
            return Err(Error::OutOfWindow(p));
        }
        Ok(())
    }

    pub fn complex(&self, p: usize) -> Result<&DeligneComplex<'r>> {
        Self::check_level(p)?;
        let cell = &self.complexes[p];
        if cell.get().is_none() {
            let _ = cell.set(DeligneComplex::new(self.model(), p)?);
        }
        Ok(cell.get().expect("initialised"))
    }

    /// Level-`p` Cech-Dolbeault data and triple, `p >= 1`.
    pub fn level(&self, p: usize) -> Result<&(LevelComplex, SparkComplexTriple)> {
        Self::check_level(p)?;
        if p == 0 {
            return Err(Error::Malformed("level must be at least 1".into()));
        }
        let cell = &self.levels[p];
        if cell.get().is_none() {
            let lc = self.model().level_complex(Some(p));
            let t = self.model().cech_dolbeault_triple(&lc)?;
            let _ = cell.set((lc, t));
        }
        Ok(cell.get().expect("initialised"))
    }

    pub fn group(&self, p: usize, k: usize) -> Result<&SparkGroup> {
        let (_, t) = self.level(p)?;
        let cell = self.groups[p].get(k).ok_or(Error::OutOfWindow(k))?;
        Ok(cell.get_or_init(|| t.spark_group(k)))
    }

    /// `del` applied simplex by simplex.
    pub fn del(&self, c: &CechCochain) -> CechCochain {
        let m = self.model();
        let mut out: CechCochain = c.iter().map(|(&s, v)| (s, qvec_apply(&m.coeffs.local(s).del, v))).collect();
        out.retain(|_, v| !v.is_empty());
        out
    }

    /// Beilinson's cup `M_p x M_q -> M_{p+q}` with Cech signs taken from the Deligne degrees.
    ///
    /// Sheaf level: `x . y` when `x` is integral or `y` is integral of level 0, `x ^ del y` when
    /// `y` lies in the top piece `Omega^{q-1}`, and zero otherwise. A piece of Deligne degree `m` cupped
    /// with a piece on Cech degree `i'` picks up `(-1)^{m i'}`; against the cup of `F` this is an extra
    /// `(-1)^{i'}` on holomorphic `x`.
    pub fn beilinson_cup(&self, x: &DeligneCochain, q: usize, y: &DeligneCochain) -> DeligneCochain {
        let m = self.model();
        let (k, l) = (x.degree, y.degree);
        let r = m.int_cup(k, &x.r, l, &y.r);
        let mut a = m.cup(&m.psi_cochain(k, &x.r), &y.a);
        if q == 0 {
            let t = m.cup(&x.a, &m.psi_cochain(l, &y.r));
            a = m.add(&a, &t, &sign(l % 2 == 1));
        } else if l >= q {
            let t = m.cup(&x.a, &self.del(&y.component(l - q)));
            a = m.add(&a, &t, &sign((l - q) % 2 == 1));
        }
        DeligneCochain { degree: k + l, r, a }
    }

    /// `Db - D_q b`: the part of `Db` above level `q`, equal to `(-1)^{l-q} del b^{l-q, q-1}`.
    pub fn excess(&self, q: usize, y: &DeligneCochain) -> CechCochain {
        let m = self.model();
        let full = m.differential(&y.a, None);
        m.add(&full, &m.truncate(&full, Some(q)), &Qi::from_int(-1))
    }

    /// The Cech form of the product: `r cup b~ + a cup (Db - D_q b)` with the cup of `F`.
    ///
    /// Reading the second factor as the excess of `Db` (rather than `del b` itself) is what makes the
    /// comparison identity with the spark route hold; it agrees with [`Self::beilinson_cup`] for `q >= 1`.
    pub fn product_via_beilinson(&self, x: &DeligneCochain, q: usize, y: &DeligneCochain) -> DeligneCochain {
        let m = self.model();
        let (k, l) = (x.degree, y.degree);
        let mut a = m.cup(&m.psi_cochain(k, &x.r), &y.a);
        if q > 0 {
            a = m.add(&a, &m.cup(&x.a, &self.excess(q, y)), &Qi::from_int(1));
        }
        DeligneCochain { degree: k + l, r: m.int_cup(k, &x.r, l, &y.r), a }
    }

    /// `(a, (-1)^k r)` as an element of `G^{k-1}` of the level-`p` triple, without checks.
    fn phi_raw(&self, p: usize, x: &DeligneCochain) -> Result<SVec> {
        let k = x.degree;
        let km1 = k.checked_sub(1).ok_or(Error::OutOfWindow(0))?;
        let (lc, t) = self.level(p)?;
        let a = if lc.layout.dim(km1) == 0 && x.a.is_empty() { Vec::new() } else { self.model().to_vec(&lc.layout, km1, &x.a)? };
        Ok(t.spark_element(km1, &a, &negated(&x.r, k % 2 == 1)))
    }

    /// `phi_p` on a cocycle of `M^k_p`, `k >= 1`.
    pub fn phi(&self, p: usize, x: &DeligneCochain) -> Result<SVec> {
        if !self.complex(p)?.is_cocycle(x) {
            return Err(Error::Malformed("not a Deligne cocycle".into()));
        }
        self.phi_raw(p, x)
    }

    /// `ker delta_1` inside the level-`p` spark group of degree `k`.
    pub fn kernel_delta1(&self, p: usize, k: usize) -> Result<QZModule> {
        let g = self.group(p, k)?;
        let (_, t) = self.level(p)?;
        let ker = g.module.sub.preimage(&t.delta1_hom(k), &Subgroup::zero(t.e_ambient(k + 1)));
        Ok(QZModule::new(ker, g.module.rel.clone()))
    }

    /// `phi_p: H^k(M_p) -> ker delta_1` as a map of modules.
    pub fn phi_hom(&self, p: usize, k: usize) -> Result<ModuleHom> {
        let dc = self.complex(p)?;
        let src = dc.cohomology(k);
        let tgt = self.kernel_delta1(p, k - 1)?;
        let amb = dc.ambient(k);
        let cols: Vec<SVec> =
            (0..amb.dim()).map(|c| self.phi_raw(p, &dc.from_svec(k, &crate::exact_linalg::svec::unit(c)))).collect::<Result<_>>()?;
        let m = RatMatrix::from_columns(tgt.sub.ambient.dim(), &cols);
        Ok(ModuleHom::new(src, tgt.clone(), crate::exact_linalg::Hom::new(amb, tgt.sub.ambient, m)))
    }

    /// Untruncated spark `(A, (-1)^k r)` with `pi_p A = a` and curvature `e` satisfying `pi_p e = 0`.
    ///
    /// Solves `D y - e = -(D a + psi((-1)^k r))` for `y` supported in holomorphic degree `>= p`; with an
    /// rng, a random global form of holomorphic degree `>= p` is added so that `A - a` is not minimal.
    pub fn lift(&self, p: usize, x: &DeligneCochain, rng: Option<&mut dyn RngCore>) -> Result<SparkRep> {
        let m = self.model();
        let full = &self.ring.level;
        let k = x.degree;
        let km1 = k.checked_sub(1).ok_or(Error::OutOfWindow(0))?;
        let rho = negated(&x.r, k % 2 == 1);
        let curv = m.add(&m.differential(&x.a, None), &m.psi_cochain(k, &rho), &Qi::from_int(1));
        let rhs: SVec = m.to_vec(&full.layout, k, &curv)?.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, -v.re.clone())).collect();
        let hol = |s: crate::cech_models::Slot| m.coeffs.local(s.0).bideg[s.1].0;
        let free: Vec<usize> = (0..full.layout.dim(km1)).filter(|&o| hol(full.layout.slots[km1][o]) >= p).collect();
        let dcols = full.f.diff(km1).columns();
        let ecols = full.global.incl.map(k).columns();
        let cols: Vec<SVec> = free
            .iter()
            .map(|&o| dcols[o].iter().map(|(&i, v)| (i, v.re.clone())).collect())
            .chain(ecols.iter().map(|c| c.iter().map(|(&i, v)| (i, -v.re.clone())).collect()))
            .collect();
        let sol = solve_q(&cols, full.f.dim(k), &rhs).ok_or_else(|| Error::Singular(alloc::format!("no level-{p} lift in degree {km1}")))?;
        let mut y = alloc::vec![Qi::zero(); full.layout.dim(km1)];
        for (c, v) in sol.range(..free.len()) {
            y[free[*c]] = Qi::from_rat(v.clone());
        }
        if let Some(rng) = rng {
            let g = full.global.incl.map(km1);
            for col in g.columns() {
                if col.keys().all(|&o| hol(full.layout.slots[km1][o]) >= p) && rng.next_u32() % 2 == 0 {
                    let c = Qi::from_int((rng.next_u32() % 3) as i64 - 1);
                    for (o, v) in col {
                        y[o] += &(&c * &v);
                    }
                }
            }
        }
        let a = m.add(&x.a, &m.from_vec(&full.layout, km1, &y), &Qi::from_int(1));
        Ok(SparkRep { degree: km1, a, r: rho })
    }

    /// Whether `lift` is an untruncated spark lifting the cocycle `x` of level `p`.
    pub fn is_lift(&self, p: usize, x: &DeligneCochain, lift: &SparkRep) -> bool {
        let m = self.model();
        let full = &self.ring.level;
        let k = x.degree;
        if m.truncate(&lift.a, Some(p)) != x.a || lift.r != negated(&x.r, k % 2 == 1) {
            return false;
        }
        let e = self.ring.curvature(lift);
        if !m.truncate(&e, Some(p)).is_empty() {
            return false;
        }
        let Ok(ev) = m.to_vec(&full.layout, k, &e) else { return false };
        let Some(rd) = full.global.readout.get(k) else { return e.is_empty() };
        let coords: Vec<Qi> = rd.iter().map(|&i| ev[i].clone()).collect();
        full.global.incl.map(k).mul_vec(&coords) == ev
    }

    /// `Pi_{p+q}` of the product of the lifts, in the level-`p+q` spark group of degree `k + l - 1`.
    pub fn product_via_sparks(&self, pq: usize, a: &SparkRep, b: &SparkRep) -> Result<SVec> {
        let m = self.model();
        let prod = self.ring.product_rep(a, b);
        let (lc, t) = self.level(pq)?;
        let trunc = m.truncate(&prod.a, Some(pq));
        let v = if lc.layout.dim(prod.degree) == 0 && trunc.is_empty() { Vec::new() } else { m.to_vec(&lc.layout, prod.degree, &trunc)? };
        Ok(t.spark_element(prod.degree, &v, &prod.r))
    }

    /// Both product routes on cocycles `x` of level `p` and `y` of level `q`, with the cochain identity
    /// `r cup b + a cup (Db - D_q b) = pi_{p+q}(A cup f + r cup B) + (-1)^k D_{p+q}(a cup (B - b))`.
    pub fn compare_products(&self, p: usize, x: &DeligneCochain, q: usize, y: &DeligneCochain, rng: Option<&mut dyn RngCore>) -> Result<ProductCertificate> {
        let m = self.model();
        let (k, l) = (x.degree, y.degree);
        let pq = p + q;
        let (la, lb) = match rng {
            Some(g) => (self.lift(p, x, Some(&mut *g))?, self.lift(q, y, Some(&mut *g))?),
            None => (self.lift(p, x, None)?, self.lift(q, y, None)?),
        };
        let lifts_valid = self.is_lift(p, x, &la) && self.is_lift(q, y, &lb);

        let lhs = self.product_via_beilinson(x, q, y);
        let f = self.ring.curvature(&lb);
        let r = &x.r;
        let spark_a = m.add(&m.cup(&la.a, &f), &m.cup(&m.psi_cochain(k, r), &lb.a), &Qi::from_int(1));
        let correction = m.cup(&x.a, &m.add(&lb.a, &y.a, &Qi::from_int(-1)));
        let rhs = m.add(&m.truncate(&spark_a, Some(pq)), &m.differential(&correction, Some(pq)), &sign(k % 2 == 1));
        let residual = m.add(&lhs.a, &rhs, &Qi::from_int(-1));

        let cup = self.beilinson_cup(x, q, y);
        let beilinson_closed = self.complex(pq)?.is_cocycle(&cup);
        let via_sparks = self.product_via_sparks(pq, &la, &lb)?;
        let via_beilinson = self.phi_raw(pq, &cup)?;
        let deg = k + l - 1;
        let (_, t) = self.level(pq)?;
        let (in_ker_delta1, same_class) = if deg < t.len() {
            let g = self.group(pq, deg)?;
            (g.is_spark(&via_sparks) && t.delta1_hom(deg).apply(&via_sparks).is_empty(), g.same_class(&via_sparks, &via_beilinson))
        } else {
            (via_sparks.is_empty(), via_sparks.is_empty() && via_beilinson.is_empty())
        };
        Ok(ProductCertificate { via_sparks, via_beilinson, correction, residual, lifts_valid, beilinson_closed, in_ker_delta1, same_class })
    }
}

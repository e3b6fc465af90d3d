//! Two holomorphic structures on one smooth bundle, related by a frame change `g`, and the
//! identities satisfied by the transgression between their hermitian connections.
//!
//! `theta_0 = del H . H^{-1}` is the connection of the first structure. The second has metric
//! `gHg^*` in its own frame; moved back by `g` its connection is `theta_1`, and `eta = theta_1 - theta_0`.

use alloc::format;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::scalar::{rat, Qi, Rat};

use super::form::{Ctx, PolyForm};
use super::invariant::{beta_kk, gauge, hermitian_connection, transgression, types_below_diagonal, Invariant, Transgression};
use super::matrix::{constant_inverse, MatrixForm};

#[derive(Clone, Debug)]
pub struct Scenario {
    pub g: MatrixForm,
    pub h: MatrixForm,
    /// Rank `m` of the sub-bundle when `g = (I_m 0; A I)`.
    pub sub_rank: Option<usize>,
}

/// Connection matrices of the two structures in the first frame.
#[derive(Clone, Debug)]
pub struct ConnectionPair {
    pub theta0: MatrixForm,
    pub theta1: MatrixForm,
}

impl ConnectionPair {
    pub fn eta(&self) -> MatrixForm {
        &self.theta1 - &self.theta0
    }
}

/// Random hermitian metric: a positive integer diagonal plus `P + P^*` with `P` vanishing at 0.
pub fn random_metric(ctx: Ctx, size: usize, rng: &mut dyn RngCore) -> MatrixForm {
    let d: Vec<PolyForm> = (0..size).map(|_| PolyForm::constant(ctx, Qi::from_int(1 + (rng.next_u32() % 3) as i64))).collect();
    let p = MatrixForm::random_functions(ctx, size, 1, ctx.trunc, 25, rng);
    &(&MatrixForm::diag(ctx, &d) + &p) + &p.star()
}

/// Random `(1, 0)` connection matrix.
pub fn random_holomorphic_type_connection(ctx: Ctx, size: usize, rng: &mut dyn RngCore) -> MatrixForm {
    MatrixForm::random_typed(ctx, size, 1, 0, 20, rng)
}

impl Scenario {
    pub fn new(g: MatrixForm, h: MatrixForm) -> Result<Self> {
        if g.size() != h.size() || g.ctx() != h.ctx() {
            return Err(Error::DimensionMismatch(format!("g is {0}x{0} but H is {1}x{1}", g.size(), h.size())));
        }
        if g.entries().iter().chain(h.entries()).any(|e| !e.is_function() || !e.is_t_free()) {
            return Err(Error::Malformed("g and H must have t-free function entries".into()));
        }
        let sub_rank = detect_unipotent(&g);
        Ok(Scenario { g, h, sub_rank })
    }

    /// `g = (I_m 0; A I_r)` with random `A`; `H` is the identity or a random block-diagonal metric.
    pub fn unipotent(ctx: Ctx, m: usize, r: usize, identity_metric: bool, rng: &mut dyn RngCore) -> Self {
        let a: Vec<Vec<PolyForm>> = (0..r).map(|_| (0..m).map(|_| PolyForm::random_function(ctx, 0, ctx.trunc, 35, rng)).collect()).collect();
        let g = MatrixForm::unipotent(ctx, m, &a);
        let h = if identity_metric {
            MatrixForm::identity(ctx, m + r)
        } else {
            MatrixForm::block_diag(&random_metric(ctx, m, rng), &random_metric(ctx, r, rng))
        };
        Scenario { g, h, sub_rank: Some(m) }
    }

    /// Random `g` with invertible constant part.
    pub fn general(ctx: Ctx, size: usize, identity_metric: bool, rng: &mut dyn RngCore) -> Self {
        let c = loop {
            let c: Vec<Vec<Qi>> = (0..size)
                .map(|i| (0..size).map(|j| Qi::from_int(if i == j { 1 + (rng.next_u32() % 2) as i64 } else { (rng.next_u32() % 3) as i64 - 1 })).collect())
                .collect();
            if constant_inverse(&c).is_some() {
                break c;
            }
        };
        let p = MatrixForm::random_functions(ctx, size, 1, ctx.trunc, 30, rng);
        let g = &MatrixForm::from_fn(ctx, size, |i, j| PolyForm::constant(ctx, c[i][j].clone())) + &p;
        let h = if identity_metric { MatrixForm::identity(ctx, size) } else { random_metric(ctx, size, rng) };
        let sub_rank = detect_unipotent(&g);
        Scenario { g, h, sub_rank }
    }

    pub fn ctx(&self) -> Ctx {
        self.g.ctx()
    }

    pub fn identity_metric(&self) -> bool {
        self.h == MatrixForm::identity(self.ctx(), self.h.size())
    }

    pub fn connections(&self) -> Result<ConnectionPair> {
        let theta0 = hermitian_connection(&self.h)?;
        let ht = self.g.matmul(&self.h).matmul(&self.g.star());
        let theta1 = gauge(&self.g, &hermitian_connection(&ht)?)?;
        Ok(ConnectionPair { theta0, theta1 })
    }

    /// `(H del g^* (g^*)^{-1} H^{-1}, -g^{-1} delbar g)`, the two types of `eta` written out.
    pub fn eta_closed_form(&self) -> Result<(MatrixForm, MatrixForm)> {
        let gs = self.g.star();
        let hi = self.h.inverse()?;
        let e10 = self.h.matmul(&gs.del()).matmul(&gs.inverse()?).matmul(&hi);
        let e01 = -&self.g.inverse()?.matmul(&self.g.delbar());
        Ok((e10, e01))
    }

    fn require_unipotent(&self) -> Result<usize> {
        self.sub_rank.ok_or_else(|| Error::Malformed("g is not of the form (I 0; A I)".into()))
    }
}

/// The largest `m` with `g = (I_m 0; A I)`, provided both blocks are nonempty.
fn detect_unipotent(g: &MatrixForm) -> Option<usize> {
    let n = g.size();
    let ctx = g.ctx();
    let one = PolyForm::one(ctx);
    (1..n).rev().find(|&m| {
        (0..n).all(|i| {
            (0..n).all(|j| {
                let e = g.get(i, j);
                if i == j {
                    *e == one
                } else if i >= m && j < m {
                    true
                } else {
                    e.is_zero()
                }
            })
        })
    })
}

/// Outcome of the check that low Hodge components of a transgression vanish.
#[derive(Clone, Debug)]
pub struct LowTypeReport {
    pub invariant: Invariant,
    /// `((i, 2k-1-i), vanishes)` for `i < k - 1`.
    pub components: Vec<((u32, u32), bool)>,
    pub omega02_vanishes: bool,
    /// Degree through which the coefficients were compared.
    pub prec: i32,
    /// True when none of the checked types exists in dimension `n`.
    pub vacuous: bool,
}

impl LowTypeReport {
    pub fn holds(&self) -> bool {
        self.omega02_vanishes && self.components.iter().all(|c| c.1)
    }
}

pub fn verify_low_types_vanish(sc: &Scenario, phi: Invariant) -> Result<LowTypeReport> {
    sc.require_unipotent()?;
    let k = phi.k() as u32;
    let ctx = sc.ctx();
    if ctx.hol_cap.is_some_and(|cap| cap + 2 < k) {
        return Err(Error::Malformed(format!("holomorphic cap below {} hides the checked types", k.saturating_sub(2))));
    }
    let pair = sc.connections()?;
    let tr = transgression(phi, &pair.theta0, &pair.theta1)?;
    let components = (0..k.saturating_sub(1)).map(|i| ((i, 2 * k - 1 - i), tr.form.component(i, 2 * k - 1 - i).is_zero())).collect();
    let omega02_vanishes = tr.omega_t.component(0, 2).is_zero();
    let vacuous = (0..k.saturating_sub(1)).all(|i| (2 * k - 1 - i) as usize > ctx.n);
    Ok(LowTypeReport { invariant: phi, components, omega02_vanishes, prec: tr.form.prec(), vacuous })
}

/// Outcome of `T^{k-1,k} = delbar S` for the trace power.
#[derive(Clone, Debug)]
pub struct TopTypeReport {
    pub k: usize,
    pub s: PolyForm,
    pub top: PolyForm,
    pub delbar_s: PolyForm,
    pub residual: PolyForm,
    /// `(m, holds)` for `delbar((Omega^{1,1})^m) = -t [(Omega^{1,1})^m, eta^{0,1}]`.
    pub power_identities: Vec<(usize, bool)>,
    /// `[Omega^{1,1}, eta] = t d(eta ^ eta)`.
    pub bracket_identity: bool,
    pub prec: i32,
    /// True when type `(k-1, k)` does not exist in dimension `n`.
    pub vacuous: bool,
}

impl TopTypeReport {
    pub fn holds(&self) -> bool {
        self.residual.is_zero() && self.bracket_identity && self.power_identities.iter().all(|p| p.1)
    }
}

/// Needs the normalization `H = I`, under which the intermediate identities are stated.
pub fn verify_top_type_exact(sc: &Scenario, k: usize) -> Result<TopTypeReport> {
    sc.require_unipotent()?;
    if !sc.identity_metric() {
        return Err(Error::Malformed("the exactness identities need H = I".into()));
    }
    if k == 0 {
        return Err(Error::Malformed("k must be positive".into()));
    }
    let ctx = sc.ctx();
    if ctx.hol_cap.is_some_and(|cap| (cap as usize) + 1 < k) {
        return Err(Error::Malformed(format!("holomorphic cap below {} hides type ({}, {k})", k - 1, k - 1)));
    }
    let pair = sc.connections()?;
    let tr: Transgression = transgression(Invariant::TracePower(k), &pair.theta0, &pair.theta1)?;
    let ku = k as u32;
    let top = tr.form.component(ku - 1, ku);
    let eta = &tr.eta;
    let e01 = eta.component(0, 1);
    let e10 = eta.component(1, 0);
    let om = tr.omega_t.component(1, 1);
    let t = PolyForm::t(ctx);
    let s = if k == 1 {
        PolyForm::zero(ctx)
    } else {
        let inner = e01.matmul(&e10).matmul(&om.pow(k - 2)).trace();
        (&(-&inner) * &t).integrate_t().scale(&Qi::from_int(k as i64))
    };
    let delbar_s = s.delbar();
    let residual = top.residual(&delbar_s);
    let mut power_identities = Vec::new();
    for m in 1..k.max(2) {
        let p = om.pow(m);
        let rhs = p.commutator(&e01).left_scale(&-&t);
        power_identities.push((m, p.delbar().agrees(&rhs)));
    }
    let bracket_identity = om.commutator(eta).agrees(&eta.matmul(eta).d().left_scale(&t));
    let prec = residual.prec();
    Ok(TopTypeReport { k, s, top, delbar_s, residual, power_identities, bracket_identity, prec, vacuous: k > ctx.n })
}

/// Outcome of the `(0, 2k-1)` comparison with `-k B(k,k) tr((g^{-1} delbar g)^{2k-1})`.
#[derive(Clone, Debug)]
pub struct NadelReport {
    pub k: usize,
    pub component: PolyForm,
    pub closed_form: PolyForm,
    /// `-k B(k, k)`.
    pub coefficient: Rat,
    /// `Omega_t^{0,2} = (t - t^2) (g^{-1} delbar g)^2`.
    pub omega02_matches: bool,
    pub matches: bool,
    /// True when `2k - 1 > n`, so both sides vanish for degree reasons.
    pub vacuous: bool,
    pub prec: i32,
}

impl NadelReport {
    pub fn holds(&self) -> bool {
        self.matches && self.omega02_matches
    }
}

pub fn nadel(sc: &Scenario, k: usize) -> Result<NadelReport> {
    if k == 0 {
        return Err(Error::Malformed("k must be positive".into()));
    }
    let ctx = sc.ctx();
    let pair = sc.connections()?;
    let tr = transgression(Invariant::TracePower(k), &pair.theta0, &pair.theta1)?;
    let q = 2 * k as u32 - 1;
    let component = tr.form.component(0, q);
    let a = sc.g.inverse()?.matmul(&sc.g.delbar());
    let coefficient = nadel_coefficient(k);
    let closed_form = a.pow(2 * k - 1).trace().scale(&Qi::from_rat(coefficient.clone()));
    let t = PolyForm::t(ctx);
    let tt = &t - &(&t * &t);
    let omega02_matches = tr.omega_t.component(0, 2).agrees(&a.matmul(&a).left_scale(&tt));
    let matches = component.agrees(&closed_form);
    let prec = component.residual(&closed_form).prec();
    Ok(NadelReport { k, component, closed_form, coefficient, omega02_matches, matches, vacuous: q as usize > ctx.n, prec })
}

/// Hodge types `(p, q)` with `p < q` in a transgression between two `(1, 0)` connections.
#[derive(Clone, Debug)]
pub struct VanishingReport {
    pub invariant: Invariant,
    pub below_diagonal: Vec<(u32, u32)>,
    pub types: Vec<(u32, u32)>,
    pub prec: i32,
}

impl VanishingReport {
    pub fn holds(&self) -> bool {
        self.below_diagonal.is_empty()
    }
}

pub fn type_vanishing(phi: Invariant, theta0: &MatrixForm, theta1: &MatrixForm) -> Result<VanishingReport> {
    for th in [theta0, theta1] {
        if th.entries().iter().any(|e| e.types().iter().any(|&ty| ty != (1, 0))) {
            return Err(Error::Malformed("connection matrix is not of type (1, 0)".into()));
        }
    }
    let tr = transgression(phi, theta0, theta1)?;
    Ok(VanishingReport { invariant: phi, below_diagonal: types_below_diagonal(&tr.form), types: tr.form.types(), prec: tr.form.prec() })
}

/// Connections of two random hermitian metrics on the same holomorphic frame.
pub fn hermitian_pair(ctx: Ctx, size: usize, rng: &mut dyn RngCore) -> Result<ConnectionPair> {
    Ok(ConnectionPair { theta0: hermitian_connection(&random_metric(ctx, size, rng))?, theta1: hermitian_connection(&random_metric(ctx, size, rng))? })
}

/// A hermitian connection against an arbitrary second `(1, 0)` connection.
pub fn second_connection_pair(ctx: Ctx, size: usize, rng: &mut dyn RngCore) -> Result<ConnectionPair> {
    Ok(ConnectionPair { theta0: hermitian_connection(&random_metric(ctx, size, rng))?, theta1: random_holomorphic_type_connection(ctx, size, rng) })
}

/// `-k B(k, k)`.
pub fn nadel_coefficient(k: usize) -> Rat {
    -(rat(k as i64, 1) * beta_kk(k))
}

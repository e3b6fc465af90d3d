//! Differential forms on `C^n` with polynomial coefficients in `z`, `zbar` and a path parameter `t`.
//!
//! A form is stored as a class in the quotient of the polynomial forms by `m^{prec+1}`, where `m`
//! is generated by the `z_i` and `zbar_i`. Products that produce monomials above the truncation
//! degree drop them and lower the precision to `trunc`; `del` and `delbar` lower it by one. Values
//! with `prec = EXACT` are honest polynomials. Comparisons happen at the smaller precision, so every
//! identity that holds for smooth forms holds exactly here.
//!
//! With `hol_cap = Some(P)` forms are further taken modulo the ideal of holomorphic degree above `P`.
//! That ideal is closed under wedge, `del` and `delbar`, so the quotient is again a dg algebra.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::scalar::{fmt_rat, parse_rat, rat, Qi};

/// Precision of values that were never truncated.
pub const EXACT: i32 = i32::MAX;

/// Ambient data shared by all forms that may be combined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ctx {
    pub n: usize,
    pub trunc: u32,
    pub hol_cap: Option<u32>,
}

impl Ctx {
    /// Exponents are packed four bits per variable, so `n <= 8` and `trunc <= 15`.
    pub fn new(n: usize, trunc: u32) -> Result<Self> {
        if n == 0 || n > 8 {
            return Err(Error::Malformed(format!("complex dimension {n} is outside 1..=8")));
        }
        if trunc > 15 {
            return Err(Error::Malformed(format!("truncation degree {trunc} is above 15")));
        }
        Ok(Ctx { n, trunc, hol_cap: None })
    }

    pub fn with_hol_cap(self, cap: u32) -> Self {
        Ctx { hol_cap: Some(cap), ..self }
    }

    fn low(&self) -> u32 {
        (1u32 << self.n) - 1
    }
}

/// `z^a zbar^b dz_S dzbar_T t^j`: nibble `v` of `poly` is the exponent of variable `v`
/// (`z_1..z_n` then `zbar_1..zbar_n`); bit `i` of `mask` is `dz_{i+1}`, bit `n+i` is `dzbar_{i+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub mask: u32,
    pub t: u32,
    pub poly: u64,
}

impl Mono {
    pub const ONE: Mono = Mono { mask: 0, t: 0, poly: 0 };

    pub fn exp(&self, v: usize) -> u32 {
        ((self.poly >> (4 * v)) & 15) as u32
    }

    pub fn degree(&self) -> u32 {
        let mut p = self.poly;
        let mut s = 0;
        while p != 0 {
            s += (p & 15) as u32;
            p >>= 4;
        }
        s
    }

    /// Hodge type `(|S|, |T|)`.
    pub fn form_type(&self, n: usize) -> (u32, u32) {
        let low = (1u32 << n) - 1;
        ((self.mask & low).count_ones(), (self.mask >> n).count_ones())
    }

    pub fn form_degree(&self) -> u32 {
        self.mask.count_ones()
    }
}

fn sat_add(a: i32, b: i32) -> i32 {
    if a == EXACT || b == EXACT {
        EXACT
    } else {
        a.saturating_add(b).min(EXACT - 1)
    }
}

/// Sign of `dx_A ^ dx_B` against the sorted product.
fn merge_sign(a: u32, b: u32) -> bool {
    let mut odd = false;
    let mut rest = b;
    while rest != 0 {
        let y = rest.trailing_zeros();
        odd ^= (a >> y >> 1).count_ones() % 2 == 1;
        rest &= rest - 1;
    }
    odd
}

fn push(terms: &mut BTreeMap<Mono, Qi>, m: Mono, c: Qi) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        alloc::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        alloc::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += &c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct PolyForm {
    ctx: Ctx,
    prec: i32,
    terms: BTreeMap<Mono, Qi>,
}

impl PolyForm {
    pub fn zero(ctx: Ctx) -> Self {
        PolyForm { ctx, prec: EXACT, terms: BTreeMap::new() }
    }

    pub fn constant(ctx: Ctx, c: Qi) -> Self {
        let mut f = PolyForm::zero(ctx);
        push(&mut f.terms, Mono::ONE, c);
        f
    }

    pub fn one(ctx: Ctx) -> Self {
        PolyForm::constant(ctx, Qi::one())
    }

    /// A single monomial; `exps` lists the exponents of `z_1..z_n, zbar_1..zbar_n`.
    pub fn monomial(ctx: Ctx, exps: &[u32], mask: u32, t: u32, c: Qi) -> Result<Self> {
        let n = ctx.n;
        if exps.len() > 2 * n || mask >> (2 * n) != 0 {
            return Err(Error::Malformed(format!("monomial uses variables beyond dimension {n}")));
        }
        if exps.iter().sum::<u32>() > ctx.trunc {
            return Err(Error::Malformed(format!("monomial degree exceeds truncation {}", ctx.trunc)));
        }
        let poly = exps.iter().enumerate().fold(0u64, |acc, (v, &e)| acc | (u64::from(e) << (4 * v)));
        let m = Mono { mask, t, poly };
        let mut f = PolyForm::zero(ctx);
        if ctx.hol_cap.is_none_or(|cap| m.form_type(n).0 <= cap) {
            push(&mut f.terms, m, c);
        }
        Ok(f)
    }

    fn var(ctx: Ctx, v: usize) -> Self {
        let mut e = alloc::vec![0; 2 * ctx.n];
        e[v] = 1;
        PolyForm::monomial(ctx, &e, 0, 0, Qi::one()).expect("a variable has degree one")
    }

    /// `z_{i+1}`.
    pub fn z(ctx: Ctx, i: usize) -> Self {
        PolyForm::var(ctx, i)
    }

    pub fn zbar(ctx: Ctx, i: usize) -> Self {
        PolyForm::var(ctx, ctx.n + i)
    }

    pub fn dz(ctx: Ctx, i: usize) -> Self {
        PolyForm::monomial(ctx, &[], 1 << i, 0, Qi::one()).expect("dz is a monomial")
    }

    pub fn dzbar(ctx: Ctx, i: usize) -> Self {
        PolyForm::monomial(ctx, &[], 1 << (ctx.n + i), 0, Qi::one()).expect("dzbar is a monomial")
    }

    pub fn t(ctx: Ctx) -> Self {
        PolyForm::monomial(ctx, &[], 0, 1, Qi::one()).expect("t is a monomial")
    }

    pub fn from_terms(ctx: Ctx, terms: impl IntoIterator<Item = (Mono, Qi)>) -> Result<Self> {
        let mut f = PolyForm::zero(ctx);
        for (m, c) in terms {
            if m.degree() > ctx.trunc || m.mask >> (2 * ctx.n) != 0 || m.poly.checked_shr(8 * ctx.n as u32).unwrap_or(0) != 0 {
                return Err(Error::Malformed(format!("monomial {m:?} does not fit dimension {} and truncation {}", ctx.n, ctx.trunc)));
            }
            if ctx.hol_cap.is_none_or(|cap| m.form_type(ctx.n).0 <= cap) {
                push(&mut f.terms, m, c);
            }
        }
        Ok(f)
    }

    pub fn ctx(&self) -> Ctx {
        self.ctx
    }

    /// Coefficients are known through this polynomial degree; `EXACT` when nothing was dropped.
    pub fn prec(&self) -> i32 {
        self.prec
    }

    pub fn terms(&self) -> &BTreeMap<Mono, Qi> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Zero with nothing dropped; a zero known only to low degree still carries its precision.
    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.prec == EXACT
    }

    pub fn coeff(&self, m: &Mono) -> Qi {
        self.terms.get(m).cloned().unwrap_or_else(Qi::zero)
    }

    /// Coefficient of `1`.
    pub fn constant_term(&self) -> Qi {
        self.coeff(&Mono::ONE)
    }

    /// True when every term is a 0-form.
    pub fn is_function(&self) -> bool {
        self.terms.keys().all(|m| m.mask == 0)
    }

    pub fn is_t_free(&self) -> bool {
        self.terms.keys().all(|m| m.t == 0)
    }

    /// Lowest polynomial degree that can be nonzero: the smallest stored degree, else `prec + 1`.
    pub fn valuation(&self) -> i32 {
        match self.terms.keys().map(|m| m.degree()).min() {
            Some(d) => d as i32,
            None => sat_add(self.prec, 1),
        }
    }

    /// Lowers the precision to `p` and drops what is no longer known.
    pub fn at_precision(&self, p: i32) -> Self {
        let prec = self.prec.min(p);
        let terms = self.terms.iter().filter(|(m, _)| (m.degree() as i64) <= prec as i64).map(|(m, c)| (*m, c.clone())).collect();
        PolyForm { ctx: self.ctx, prec, terms }
    }

    fn same_ctx(&self, o: &PolyForm) {
        assert_eq!(self.ctx, o.ctx, "forms from different contexts");
    }

    fn combine(&self, o: &PolyForm, s: &Qi) -> Self {
        self.same_ctx(o);
        let prec = self.prec.min(o.prec);
        let mut out = self.at_precision(prec);
        for (m, c) in &o.terms {
            if (m.degree() as i64) <= prec as i64 {
                push(&mut out.terms, *m, c * s);
            }
        }
        out
    }

    pub fn scale(&self, s: &Qi) -> Self {
        if s.is_zero() {
            return PolyForm { ctx: self.ctx, prec: self.prec, terms: BTreeMap::new() };
        }
        PolyForm { ctx: self.ctx, prec: self.prec, terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect() }
    }

    /// `self ^ o`.
    pub fn wedge(&self, o: &PolyForm) -> Self {
        self.same_ctx(o);
        let ctx = self.ctx;
        let low = ctx.low();
        // unknown parts sit above prec, so they meet the other factor no lower than its valuation
        let prec = sat_add(self.prec, o.valuation()).min(sat_add(o.prec, self.valuation()));
        let keep = (ctx.trunc as i64).min(prec as i64);
        let mut dropped = false;
        let mut terms = BTreeMap::new();
        for (a, x) in &self.terms {
            let da = a.degree() as i64;
            for (b, y) in &o.terms {
                if a.mask & b.mask != 0 {
                    continue;
                }
                let mask = a.mask | b.mask;
                if let Some(cap) = ctx.hol_cap {
                    if (mask & low).count_ones() > cap {
                        continue;
                    }
                }
                let deg = da + b.degree() as i64;
                if deg > keep {
                    dropped |= deg > ctx.trunc as i64;
                    continue;
                }
                let c = x * y;
                let m = Mono { mask, t: a.t + b.t, poly: a.poly + b.poly };
                push(&mut terms, m, if merge_sign(a.mask, b.mask) { -c } else { c });
            }
        }
        let prec = if dropped { prec.min(ctx.trunc as i32) } else { prec };
        PolyForm { ctx, prec, terms }
    }

    fn derivative(&self, offset: usize) -> Self {
        let ctx = self.ctx;
        let n = ctx.n;
        let low = ctx.low();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            for i in 0..n {
                let v = offset + i;
                let e = m.exp(v);
                let bit = 1u32 << v;
                if e == 0 || m.mask & bit != 0 {
                    continue;
                }
                let mask = m.mask | bit;
                if let Some(cap) = ctx.hol_cap {
                    if (mask & low).count_ones() > cap {
                        continue;
                    }
                }
                let nm = Mono { mask, t: m.t, poly: m.poly - (1u64 << (4 * v)) };
                let s = c.scale(&rat(i64::from(e), 1));
                push(&mut terms, nm, if (m.mask & (bit - 1)).count_ones() % 2 == 1 { -s } else { s });
            }
        }
        let prec = if self.prec == EXACT { EXACT } else { (self.prec - 1).max(-1) };
        PolyForm { ctx, prec, terms }.at_precision(prec)
    }

    pub fn del(&self) -> Self {
        self.derivative(0)
    }

    pub fn delbar(&self) -> Self {
        self.derivative(self.ctx.n)
    }

    pub fn d(&self) -> Self {
        &self.del() + &self.delbar()
    }

    /// Complex conjugation: `z <-> zbar`, `dz <-> dzbar`, conjugate coefficients.
    ///
    /// Panics under a holomorphic cap unless `self` is a function, since conjugation does not
    /// preserve the capped ideal.
    pub fn conj(&self) -> Self {
        let ctx = self.ctx;
        assert!(ctx.hol_cap.is_none() || self.is_function(), "conjugation of forms under a holomorphic cap");
        let n = ctx.n;
        let low = ctx.low();
        let half = 4 * n;
        let pmask = (1u64 << half) - 1;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let poly = ((m.poly & pmask) << half) | (m.poly >> half);
                let (s, t) = (m.mask & low, m.mask >> n);
                let mask = (s << n) | t;
                let odd = s.count_ones() * t.count_ones() % 2 == 1;
                let c = c.conj();
                (Mono { mask, t: m.t, poly }, if odd { -c } else { c })
            })
            .collect();
        PolyForm { ctx, prec: self.prec, terms }
    }

    /// The `(p, q)` Hodge component.
    pub fn component(&self, p: u32, q: u32) -> Self {
        let n = self.ctx.n;
        self.filter(|m| m.form_type(n) == (p, q))
    }

    /// Part of total form degree `k`.
    pub fn of_degree(&self, k: u32) -> Self {
        self.filter(|m| m.form_degree() == k)
    }

    /// Even and odd parts.
    pub fn parity_parts(&self) -> (Self, Self) {
        (self.filter(|m| m.form_degree() % 2 == 0), self.filter(|m| m.form_degree() % 2 == 1))
    }

    /// `Some(odd)` when every term has the same form-degree parity; zero counts as even.
    pub fn parity(&self) -> Option<bool> {
        let mut it = self.terms.keys().map(|m| m.form_degree() % 2 == 1);
        let first = it.next().unwrap_or(false);
        it.all(|p| p == first).then_some(first)
    }

    pub fn filter(&self, keep: impl Fn(&Mono) -> bool) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (*m, c.clone())).collect();
        PolyForm { ctx: self.ctx, prec: self.prec, terms }
    }

    /// Hodge types with a nonzero component.
    pub fn types(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<_> = self.terms.keys().map(|m| m.form_type(self.ctx.n)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `int_0^1 dt`, exact on each power of `t`.
    pub fn integrate_t(&self) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            push(&mut terms, Mono { t: 0, ..*m }, c.scale(&rat(1, i64::from(m.t) + 1)));
        }
        PolyForm { ctx: self.ctx, prec: self.prec, terms }
    }

    /// `self - o` at the common precision.
    pub fn residual(&self, o: &PolyForm) -> Self {
        self.combine(o, &-Qi::one())
    }

    /// Equality in the quotient at the common precision.
    pub fn agrees(&self, o: &PolyForm) -> bool {
        self.residual(o).is_zero()
    }

    /// Random function with small Gaussian-integer coefficients on monomials of degree `lo..=hi`.
    pub fn random_function(ctx: Ctx, lo: u32, hi: u32, density: u32, rng: &mut dyn RngCore) -> Self {
        let mut f = PolyForm::zero(ctx);
        for poly in exponent_vectors(2 * ctx.n, lo, hi.min(ctx.trunc)) {
            if rng.next_u32() % 100 >= density {
                continue;
            }
            let re = (rng.next_u32() % 5) as i64 - 2;
            let im = if rng.next_u32().is_multiple_of(3) { (rng.next_u32() % 3) as i64 - 1 } else { 0 };
            push(&mut f.terms, Mono { mask: 0, t: 0, poly }, Qi::new(rat(re, 1), rat(im, 1)));
        }
        f
    }

    /// Random form of type `(p, q)` with coefficients from [`PolyForm::random_function`].
    pub fn random_typed(ctx: Ctx, p: u32, q: u32, density: u32, rng: &mut dyn RngCore) -> Self {
        let n = ctx.n;
        let mut f = PolyForm::zero(ctx);
        for mask in 0u32..(1 << (2 * n)) {
            let m = Mono { mask, t: 0, poly: 0 };
            if m.form_type(n) != (p, q) || ctx.hol_cap.is_some_and(|cap| p > cap) {
                continue;
            }
            let c = PolyForm::random_function(ctx, 0, ctx.trunc, density, rng);
            for (cm, x) in c.terms {
                push(&mut f.terms, Mono { mask, ..cm }, x);
            }
        }
        f
    }

    /// Parses sums of terms such as `2*z1*zb2 - (1/2+i)*t^2*dz1*dzb1`; factors wedge in the order written.
    pub fn parse(ctx: Ctx, s: &str) -> Result<Self> {
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |m: &str| Error::Malformed(format!("form {s:?}: {m}"));
        if src.is_empty() {
            return Err(err("empty"));
        }
        let mut out = PolyForm::zero(ctx);
        let b = src.as_bytes();
        let mut pos = 0;
        while pos < b.len() {
            let mut neg = false;
            while pos < b.len() && (b[pos] == b'+' || b[pos] == b'-') {
                neg ^= b[pos] == b'-';
                pos += 1;
            }
            let start = pos;
            let mut depth = 0;
            while pos < b.len() && (depth > 0 || (b[pos] != b'+' && b[pos] != b'-') || b[pos - 1] == b'^') {
                match b[pos] {
                    b'(' => depth += 1,
                    b')' => depth -= 1,
                    _ => {}
                }
                pos += 1;
            }
            let term = &src[start..pos];
            if term.is_empty() {
                return Err(err("missing term"));
            }
            let mut f = PolyForm::one(ctx);
            for factor in split_factors(term) {
                let (base, power) = match factor.rsplit_once('^') {
                    Some((base, e)) if !e.is_empty() && e.bytes().all(|c| c.is_ascii_digit()) => {
                        (base, e.parse::<u32>().map_err(|_| err("bad exponent"))?)
                    }
                    _ => (factor, 1),
                };
                let g = parse_factor(ctx, base).ok_or_else(|| err(&format!("unknown factor {base:?}")))?;
                for _ in 0..power {
                    f = &f * &g;
                }
            }
            out = if neg { &out - &f } else { &out + &f };
        }
        Ok(out)
    }
}

fn split_factors(term: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (k, ch) in term.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => {
                out.push(&term[start..k]);
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push(&term[start..]);
    out
}

fn parse_factor(ctx: Ctx, f: &str) -> Option<PolyForm> {
    let index = |rest: &str| rest.parse::<usize>().ok().filter(|&i| i >= 1 && i <= ctx.n).map(|i| i - 1);
    if let Some(inner) = f.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        return crate::scalar::parse_qi(inner).ok().map(|c| PolyForm::constant(ctx, c));
    }
    if f == "i" {
        return Some(PolyForm::constant(ctx, Qi::i()));
    }
    if f == "t" {
        return Some(PolyForm::t(ctx));
    }
    if let Some(r) = f.strip_prefix("dzb") {
        return index(r).map(|i| PolyForm::dzbar(ctx, i));
    }
    if let Some(r) = f.strip_prefix("dz") {
        return index(r).map(|i| PolyForm::dz(ctx, i));
    }
    if let Some(r) = f.strip_prefix("zb") {
        return index(r).filter(|_| ctx.trunc >= 1).map(|i| PolyForm::zbar(ctx, i));
    }
    if let Some(r) = f.strip_prefix('z') {
        return index(r).filter(|_| ctx.trunc >= 1).map(|i| PolyForm::z(ctx, i));
    }
    parse_rat(f).ok().map(|q| PolyForm::constant(ctx, Qi::from_rat(q)))
}

/// Packed exponent vectors in `vars` variables with total degree in `lo..=hi`.
pub fn exponent_vectors(vars: usize, lo: u32, hi: u32) -> Vec<u64> {
    // `left` is the degree still available; the total so far is `hi - left`
    fn rec(v: usize, vars: usize, left: u32, acc: u64, min_total: u32, out: &mut Vec<u64>) {
        if v == vars {
            if left <= min_total {
                out.push(acc);
            }
            return;
        }
        for e in 0..=left {
            rec(v + 1, vars, left - e, acc | (u64::from(e) << (4 * v)), min_total, out);
        }
    }
    let mut out = Vec::new();
    if lo <= hi {
        rec(0, vars, hi, 0, hi - lo, &mut out);
    }
    out
}

impl<'a> Add for &'a PolyForm {
    type Output = PolyForm;
    fn add(self, o: &'a PolyForm) -> PolyForm {
        self.combine(o, &Qi::one())
    }
}

impl<'a> Sub for &'a PolyForm {
    type Output = PolyForm;
    fn sub(self, o: &'a PolyForm) -> PolyForm {
        self.combine(o, &-Qi::one())
    }
}

/// Wedge product.
impl<'a> Mul for &'a PolyForm {
    type Output = PolyForm;
    fn mul(self, o: &'a PolyForm) -> PolyForm {
        self.wedge(o)
    }
}

impl Neg for &PolyForm {
    type Output = PolyForm;
    fn neg(self) -> PolyForm {
        self.scale(&-Qi::one())
    }
}

fn fmt_coeff(c: &Qi, first: bool, bare: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if c.is_real() {
        let neg = c.re.is_negative();
        let abs = c.re.abs();
        match (first, neg) {
            (true, true) => f.write_str("-")?,
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
            (true, false) => {}
        }
        if !abs.is_one() || bare {
            f.write_str(&fmt_rat(&abs))?;
            if !bare {
                f.write_str("*")?;
            }
        }
        return Ok(());
    }
    if !first {
        f.write_str(" + ")?;
    }
    write!(f, "({c})")?;
    if !bare {
        f.write_str("*")?;
    }
    Ok(())
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let n = self.ctx.n;
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            for v in 0..2 * n {
                let e = m.exp(v);
                if e == 0 {
                    continue;
                }
                let name = if v < n { format!("z{}", v + 1) } else { format!("zb{}", v - n + 1) };
                factors.push(if e == 1 { name } else { format!("{name}^{e}") });
            }
            match m.t {
                0 => {}
                1 => factors.push("t".into()),
                e => factors.push(format!("t^{e}")),
            }
            for b in 0..2 * n {
                if m.mask >> b & 1 == 1 {
                    factors.push(if b < n { format!("dz{}", b + 1) } else { format!("dzb{}", b - n + 1) });
                }
            }
            fmt_coeff(c, k == 0, factors.is_empty(), f)?;
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prec == EXACT {
            write!(f, "{self}")
        } else {
            write!(f, "{self} [prec {}]", self.prec)
        }
    }
}

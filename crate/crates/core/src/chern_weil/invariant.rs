//! Invariant polynomials, connections, curvature and transgression forms.

use alloc::vec::Vec;

use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::{rat, Qi};

use super::form::PolyForm;
use super::matrix::MatrixForm;

/// `Psi_k(A_1..A_k) = tr(A_1 ... A_k)` or the polarization `C_k` of the `k`th elementary symmetric function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Invariant {
    TracePower(usize),
    Chern(usize),
}

impl Invariant {
    pub fn k(&self) -> usize {
        match *self {
            Invariant::TracePower(k) | Invariant::Chern(k) => k,
        }
    }

    pub fn eval(&self, args: &[MatrixForm]) -> Result<PolyForm> {
        if args.len() != self.k() {
            return Err(Error::DimensionMismatch(alloc::format!("{:?} takes {} arguments, got {}", self, self.k(), args.len())));
        }
        match self {
            Invariant::TracePower(_) => psi(args),
            Invariant::Chern(_) => polarized_chern(args),
        }
    }
}

fn check_shapes(args: &[MatrixForm]) -> Result<()> {
    let Some(first) = args.first() else { return Err(Error::Malformed("invariant polynomial of no arguments".into())) };
    if args.iter().any(|a| a.size() != first.size() || a.ctx() != first.ctx()) {
        return Err(Error::DimensionMismatch("invariant polynomial of matrices of different sizes".into()));
    }
    Ok(())
}

pub fn psi(args: &[MatrixForm]) -> Result<PolyForm> {
    check_shapes(args)?;
    let mut p = args[0].clone();
    for a in &args[1..] {
        p = p.matmul(a);
    }
    Ok(p.trace())
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return alloc::vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// Cycles of `pi`, each starting at its smallest element, ordered by that element.
fn cycles(pi: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = alloc::vec![false; pi.len()];
    let mut out = Vec::new();
    for s in 0..pi.len() {
        if seen[s] {
            continue;
        }
        let mut c = Vec::new();
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            c.push(x);
            x = pi[x];
        }
        out.push(c);
    }
    out
}

/// Parity of the reordering of `seq` restricted to odd arguments.
fn koszul_odd(seq: &[usize], odd: &[bool]) -> bool {
    let o: Vec<usize> = seq.iter().copied().filter(|&i| odd[i]).collect();
    let mut inv = 0;
    for a in 0..o.len() {
        for b in a + 1..o.len() {
            inv += usize::from(o[a] > o[b]);
        }
    }
    inv % 2 == 1
}

/// `C_k(X_1..X_k) = (1/k!) sum_pi sgn(pi) prod_cycles tr(X_{i_1} X_{pi(i_1)} ...)`.
///
/// The sum is symmetric multilinear and agrees with `sigma_k` on the diagonal. Forms in each summand
/// appear in cycle order, so a Koszul sign restores the order `X_1 .. X_k` among odd arguments.
pub fn polarized_chern(args: &[MatrixForm]) -> Result<PolyForm> {
    check_shapes(args)?;
    let k = args.len();
    let ctx = args[0].ctx();
    let parts: Vec<[MatrixForm; 2]> = args
        .iter()
        .map(|a| {
            let even = a.map(|e| e.parity_parts().0);
            let odd = a.map(|e| e.parity_parts().1);
            [even, odd]
        })
        .collect();
    let perms = permutations(k);
    let mut total = PolyForm::zero(ctx);
    for choice in 0u32..(1 << k) {
        let odd: Vec<bool> = (0..k).map(|i| choice >> i & 1 == 1).collect();
        let xs: Vec<&MatrixForm> = (0..k).map(|i| &parts[i][usize::from(odd[i])]).collect();
        if xs.iter().any(|x| x.is_exact_zero()) {
            continue;
        }
        for pi in &perms {
            let cs = cycles(pi);
            let sgn = (k - cs.len()) % 2 == 1;
            let seq: Vec<usize> = cs.iter().flatten().copied().collect();
            let mut term = PolyForm::one(ctx);
            for c in &cs {
                let mut prod = xs[c[0]].clone();
                for &i in &c[1..] {
                    prod = prod.matmul(xs[i]);
                }
                term = &term * &prod.trace();
            }
            if sgn ^ koszul_odd(&seq, &odd) {
                total = &total - &term;
            } else {
                total = &total + &term;
            }
        }
    }
    let fact: i64 = (1..=k as i64).product();
    Ok(total.scale(&Qi::from_rat(rat(1, fact))))
}

/// Leibniz determinant; entries must commute, i.e. be even forms.
pub fn det_even(m: &MatrixForm) -> Result<PolyForm> {
    if m.entries().iter().any(|e| e.parity() != Some(false)) {
        return Err(Error::Malformed("determinant of a matrix with odd entries".into()));
    }
    let n = m.size();
    let mut total = PolyForm::zero(m.ctx());
    for pi in permutations(n) {
        let sgn = (n - cycles(&pi).len()) % 2 == 1;
        let mut term = PolyForm::one(m.ctx());
        for (i, &j) in pi.iter().enumerate() {
            term = &term * m.get(i, j);
            if term.is_exact_zero() {
                break;
            }
        }
        total = if sgn { &total - &term } else { &total + &term };
    }
    Ok(total)
}

/// `sigma_k(X)`: sum of the principal `k x k` minors.
pub fn sigma(x: &MatrixForm, k: usize) -> Result<PolyForm> {
    let n = x.size();
    let ctx = x.ctx();
    let mut total = if k == 0 { PolyForm::one(ctx) } else { PolyForm::zero(ctx) };
    if k == 0 || k > n {
        return Ok(total);
    }
    for set in 0u32..(1 << n) {
        if set.count_ones() as usize != k {
            continue;
        }
        let idx: Vec<usize> = (0..n).filter(|&i| set >> i & 1 == 1).collect();
        let minor = MatrixForm::from_fn(ctx, k, |a, b| x.get(idx[a], idx[b]).clone());
        total = &total + &det_even(&minor)?;
    }
    Ok(total)
}

/// `det(I + X) = sum_k sigma_k(X)`.
pub fn total_chern(x: &MatrixForm) -> Result<PolyForm> {
    let mut acc = PolyForm::zero(x.ctx());
    for k in 0..=x.size() {
        acc = &acc + &sigma(x, k)?;
    }
    Ok(acc)
}

/// `theta = del H . H^{-1}` for a hermitian metric matrix `H`.
pub fn hermitian_connection(h: &MatrixForm) -> Result<MatrixForm> {
    if h.entries().iter().any(|e| !e.is_function() || !e.is_t_free()) {
        return Err(Error::Malformed("metric entries must be t-free functions".into()));
    }
    if !h.star().agrees(h) {
        return Err(Error::Malformed("metric is not hermitian".into()));
    }
    Ok(h.del().matmul(&h.inverse()?))
}

/// `Omega = d theta - theta ^ theta`.
pub fn curvature(theta: &MatrixForm) -> MatrixForm {
    &theta.d() - &theta.matmul(theta)
}

/// Connection matrix `d(g^{-1}) g + g^{-1} theta g` in the frame moved by `g`.
pub fn gauge(g: &MatrixForm, theta: &MatrixForm) -> Result<MatrixForm> {
    let gi = g.inverse()?;
    Ok(&gi.d().matmul(g) + &gi.matmul(theta).matmul(g))
}

/// Data along the straight path `theta_t = theta_0 + t eta`.
#[derive(Clone, Debug)]
pub struct Transgression {
    pub invariant: Invariant,
    pub eta: MatrixForm,
    pub theta_t: MatrixForm,
    pub omega_t: MatrixForm,
    /// `k Phi(eta, Omega_t, .., Omega_t)` before integration.
    pub integrand: PolyForm,
    /// `T = k int_0^1 Phi(eta, Omega_t, .., Omega_t) dt`.
    pub form: PolyForm,
}

pub fn transgression(phi: Invariant, theta0: &MatrixForm, theta1: &MatrixForm) -> Result<Transgression> {
    let k = phi.k();
    if k == 0 {
        return Err(Error::Malformed("transgression of a degree-0 invariant".into()));
    }
    let ctx = theta0.ctx();
    let eta = theta1 - theta0;
    let theta_t = theta0 + &eta.left_scale(&PolyForm::t(ctx));
    let omega_t = curvature(&theta_t);
    let mut args = alloc::vec![eta.clone()];
    args.extend(core::iter::repeat_n(omega_t.clone(), k - 1));
    let integrand = phi.eval(&args)?.scale(&Qi::from_int(k as i64));
    let form = integrand.integrate_t();
    Ok(Transgression { invariant: phi, eta, theta_t, omega_t, integrand, form })
}

/// `Phi(Omega, .., Omega)`.
pub fn characteristic_form(phi: Invariant, omega: &MatrixForm) -> Result<PolyForm> {
    phi.eval(&alloc::vec![omega.clone(); phi.k()])
}

/// Hodge types `(p, q)` with `p < q` carrying a nonzero component.
pub fn types_below_diagonal(f: &PolyForm) -> Vec<(u32, u32)> {
    f.types().into_iter().filter(|&(p, q)| p < q).collect()
}

/// `B(k, k) = int_0^1 t^{k-1} (1-t)^{k-1} dt = ((k-1)!)^2 / (2k-1)!`.
pub fn beta_kk(k: usize) -> crate::scalar::Rat {
    assert!(k >= 1, "B(k, k) needs k >= 1");
    let f = |m: usize| (1..=m as i64).fold(crate::scalar::Int::one(), |acc, x| acc * crate::scalar::int(x));
    let num = f(k - 1) * f(k - 1);
    crate::scalar::Rat::new(num, f(2 * k - 1))
}

/// Result of the block Whitney check `c(Omega_1 + Omega_2) = c(Omega_1) ^ c(Omega_2)`.
#[derive(Clone, Debug)]
pub struct WhitneyReport {
    /// `sigma_k` of the sum against the convolution, for `k = 0..=size`.
    pub degrees: Vec<(usize, bool)>,
    pub total_matches: bool,
}

impl WhitneyReport {
    pub fn holds(&self) -> bool {
        self.total_matches && self.degrees.iter().all(|d| d.1)
    }
}

pub fn whitney_form_check(omega1: &MatrixForm, omega2: &MatrixForm) -> Result<WhitneyReport> {
    let sum = MatrixForm::block_diag(omega1, omega2);
    let mut degrees = Vec::new();
    for k in 0..=sum.size() {
        let lhs = sigma(&sum, k)?;
        let mut rhs = PolyForm::zero(sum.ctx());
        for i in 0..=k {
            rhs = &rhs + &(&sigma(omega1, i)? * &sigma(omega2, k - i)?);
        }
        degrees.push((k, lhs.agrees(&rhs)));
    }
    let total_matches = total_chern(&sum)?.agrees(&(&total_chern(omega1)? * &total_chern(omega2)?));
    Ok(WhitneyReport { degrees, total_matches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chern_weil::form::Ctx;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn polarization_restricts_to_sigma() {
        let ctx = Ctx::new(2, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for k in 1..=3 {
            let x = &MatrixForm::random_typed(ctx, 3, 1, 1, 30, &mut rng) + &MatrixForm::random_functions(ctx, 3, 0, 1, 40, &mut rng);
            let c = polarized_chern(&alloc::vec![x.clone(); k]).unwrap();
            assert!(c.agrees(&sigma(&x, k).unwrap()), "k={k}");
        }
    }

    #[test]
    fn beta_values() {
        assert_eq!(beta_kk(1), rat(1, 1));
        assert_eq!(beta_kk(2), rat(1, 6));
        assert_eq!(beta_kk(3), rat(1, 30));
    }

    #[test]
    fn identity_metric_has_no_connection() {
        let ctx = Ctx::new(2, 2).unwrap();
        assert!(hermitian_connection(&MatrixForm::identity(ctx, 2)).unwrap().is_zero());
    }

    #[test]
    fn scalar_metric_connection_series() {
        let ctx = Ctx::new(1, 3).unwrap();
        let h = MatrixForm::diag(ctx, &[PolyForm::parse(ctx, "1 + z1*zb1").unwrap(), PolyForm::one(ctx)]);
        let theta = hermitian_connection(&h).unwrap();
        // zbar dz (1 - z zbar + ...): h^-1 is known through degree 3 and zbar raises that by one
        let want = PolyForm::parse(ctx, "zb1*dz1 - z1*zb1^2*dz1").unwrap();
        assert!(theta.get(0, 0).agrees(&want));
        assert_eq!(theta.get(0, 0).prec(), 4);
        assert!(theta.get(1, 1).is_zero());
    }

    #[test]
    fn diagonal_whitney_is_a_product() {
        let ctx = Ctx::new(2, 2).unwrap();
        let w1 = PolyForm::parse(ctx, "dz1*dzb1").unwrap();
        let w2 = PolyForm::parse(ctx, "z2*dz2*dzb2").unwrap();
        let z = PolyForm::zero(ctx);
        let a = MatrixForm::diag(ctx, &[w1.clone(), z.clone()]);
        let b = MatrixForm::diag(ctx, &[w2.clone(), z]);
        let one = PolyForm::one(ctx);
        assert!(total_chern(&MatrixForm::block_diag(&a, &b)).unwrap().agrees(&(&(&one + &w1) * &(&one + &w2))));
        assert!(whitney_form_check(&a, &b).unwrap().holds());
    }
}

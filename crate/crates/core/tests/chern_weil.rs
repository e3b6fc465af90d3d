use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sparkforge_core::chern_weil::*;
use sparkforge_core::scalar::{rat, Qi};

fn random_form(ctx: Ctx, rng: &mut ChaCha8Rng) -> PolyForm {
    let mut f = PolyForm::zero(ctx);
    for (p, q) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0)] {
        if rng.next_u32().is_multiple_of(2) {
            f = &f + &PolyForm::random_typed(ctx, p, q, 15, rng);
        }
    }
    f
}

use rand_chacha::rand_core::RngCore;

fn sign(odd: bool) -> Qi {
    Qi::from_int(if odd { -1 } else { 1 })
}

#[test]
fn differentials_square_to_zero_and_anticommute() {
    let ctx = Ctx::new(2, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let f = random_form(ctx, &mut rng);
        assert!(f.del().del().is_zero());
        assert!(f.delbar().delbar().is_zero());
        assert!(f.d().d().is_zero());
        assert!((&f.del().delbar() + &f.delbar().del()).is_zero());
    }
}

#[test]
fn leibniz_and_graded_commutativity() {
    let ctx = Ctx::new(2, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..40 {
        let a = PolyForm::random_typed(ctx, 1, 0, 15, &mut rng);
        let b = &PolyForm::random_typed(ctx, 0, 1, 15, &mut rng) + &PolyForm::random_typed(ctx, 1, 1, 10, &mut rng);
        let odd_a = true;
        for (op, name) in [(PolyForm::del as fn(&PolyForm) -> PolyForm, "del"), (PolyForm::delbar, "delbar"), (PolyForm::d, "d")] {
            let lhs = op(&(&a * &b));
            let rhs = &(&op(&a) * &b) + &(&a * &op(&b)).scale(&sign(odd_a));
            assert!(lhs.agrees(&rhs), "{name}");
        }
        let c = PolyForm::random_typed(ctx, 0, 1, 15, &mut rng);
        assert!((&a * &c).agrees(&(&c * &a).scale(&sign(true))));
        let e = PolyForm::random_typed(ctx, 1, 1, 15, &mut rng);
        assert!((&a * &e).agrees(&(&e * &a)));
    }
}

#[test]
fn trace_is_graded_cyclic_and_conjugation_is_an_involution() {
    let ctx = Ctx::new(2, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..20 {
        let a = MatrixForm::random_typed(ctx, 2, 1, 0, 30, &mut rng);
        let b = MatrixForm::random_typed(ctx, 2, 0, 1, 30, &mut rng);
        let c = MatrixForm::random_typed(ctx, 2, 1, 1, 30, &mut rng);
        assert!(a.matmul(&b).trace().agrees(&b.matmul(&a).trace().scale(&sign(true))));
        assert!(a.matmul(&c).trace().agrees(&c.matmul(&a).trace()));
        let abc = a.matmul(&b).matmul(&c);
        assert!(abc.trace().agrees(&c.matmul(&a).matmul(&b).trace()));
        assert_eq!(abc.conj().conj(), abc);
        assert_eq!(a.star().star(), a);
        // Psi_2 on 1-form matrices is antisymmetric
        let a2 = MatrixForm::random_typed(ctx, 2, 1, 0, 30, &mut rng);
        assert!(psi(&[a.clone(), a2.clone()]).unwrap().agrees(&psi(&[a2, a]).unwrap().scale(&sign(true))));
    }
}

#[test]
fn unipotent_inverse_negates_the_block() {
    let ctx = Ctx::new(2, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..10 {
        let a: Vec<Vec<PolyForm>> = (0..2).map(|_| (0..2).map(|_| PolyForm::random_function(ctx, 0, 2, 50, &mut rng)).collect()).collect();
        let neg: Vec<Vec<PolyForm>> = a.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        let g = MatrixForm::unipotent(ctx, 2, &a);
        assert_eq!(g.inverse().unwrap(), MatrixForm::unipotent(ctx, 2, &neg));
    }
    assert_eq!(MatrixForm::identity(ctx, 3).inverse().unwrap(), MatrixForm::identity(ctx, 3));
}

#[test]
fn transformed_metric_connection() {
    let ctx = Ctx::new(2, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..5 {
        let sc = Scenario::general(ctx, 2, false, &mut rng);
        let (g, h) = (&sc.g, &sc.h);
        let theta = hermitian_connection(h).unwrap();
        let gi = g.inverse().unwrap();
        let gs = g.star();
        let want = &(&g.del().matmul(&gi) + &g.matmul(&theta).matmul(&gi))
            + &g.matmul(h).matmul(&gs.del()).matmul(&gs.inverse().unwrap()).matmul(&h.inverse().unwrap()).matmul(&gi);
        let got = hermitian_connection(&g.matmul(h).matmul(&gs)).unwrap();
        assert!(got.agrees(&want));
        // eta in the first frame splits into the two closed-form types
        let pair = sc.connections().unwrap();
        let (e10, e01) = sc.eta_closed_form().unwrap();
        assert!(pair.eta().agrees(&(&e10 + &e01)));
    }
}

#[test]
fn bianchi_and_telescoping() {
    let ctx = Ctx::new(2, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..5 {
        let th: Vec<MatrixForm> = (0..3)
            .map(|_| &MatrixForm::random_typed(ctx, 2, 1, 0, 20, &mut rng) + &MatrixForm::random_typed(ctx, 2, 0, 1, 10, &mut rng))
            .collect();
        let om = curvature(&th[0]);
        assert!(om.d().agrees(&th[0].commutator(&om)));
        for phi in [Invariant::TracePower(2), Invariant::Chern(2)] {
            let c: Vec<PolyForm> = th.iter().map(|t| characteristic_form(phi, &curvature(t)).unwrap()).collect();
            let t01 = transgression(phi, &th[0], &th[1]).unwrap().form;
            let t12 = transgression(phi, &th[1], &th[2]).unwrap().form;
            let t02 = transgression(phi, &th[0], &th[2]).unwrap().form;
            assert!(t01.d().agrees(&(&c[1] - &c[0])));
            assert!(t02.d().agrees(&(&c[2] - &c[0])));
            assert!((&(&t01 + &t12) - &t02).d().is_zero());
        }
    }
}

#[test]
fn equal_connections_have_no_transgression() {
    let ctx = Ctx::new(2, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let th = MatrixForm::random_typed(ctx, 2, 1, 0, 30, &mut rng);
    assert!(transgression(Invariant::TracePower(2), &th, &th).unwrap().form.is_zero());
    let sc = Scenario::unipotent(ctx, 1, 1, true, &mut rng);
    let zero = Scenario::new(MatrixForm::identity(ctx, 2), sc.h.clone()).unwrap();
    let pair = zero.connections().unwrap();
    assert!(pair.eta().is_zero());
}

#[test]
fn low_types_vanish_for_unipotent_frame_changes() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    // n <= 2 has no room for the checked types; n = 2k - 1 under a cap of k - 2 does
    for (n, k, cap) in [(1, 2, None), (2, 2, None), (2, 3, None), (3, 2, Some(0)), (3, 2, None), (5, 3, Some(1))] {
        let mut ctx = Ctx::new(n, 2).unwrap();
        if let Some(c) = cap {
            ctx = ctx.with_hol_cap(c);
        }
        for _ in 0..2 {
            let sc = Scenario::unipotent(ctx, 1 + (rng.next_u32() % 2) as usize, 1, false, &mut rng);
            for phi in [Invariant::TracePower(k), Invariant::Chern(k)] {
                let r = verify_low_types_vanish(&sc, phi).unwrap();
                assert!(r.holds(), "n={n} k={k} {r:?}");
                assert_eq!(r.vacuous, n < 2 * k - 1);
                assert!(r.prec >= 0);
            }
        }
    }
}

#[test]
fn too_small_a_cap_is_rejected() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let ctx = Ctx::new(3, 2).unwrap().with_hol_cap(0);
    let sc = Scenario::unipotent(ctx, 1, 1, true, &mut rng);
    assert!(verify_top_type_exact(&sc, 2).is_err());
    assert!(verify_low_types_vanish(&sc, Invariant::TracePower(3)).is_err());
}

#[test]
fn top_type_is_delbar_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for n in 1..=2 {
        let ctx = Ctx::new(n, 2).unwrap();
        for k in 1..=3 {
            let sc = Scenario::unipotent(ctx, 1, 1 + (rng.next_u32() % 2) as usize, true, &mut rng);
            let r = verify_top_type_exact(&sc, k).unwrap();
            assert!(r.holds(), "n={n} k={k} residual={:?}", r.residual);
        }
    }
    // nonvacuous: type (k-1, k) exists once n >= k, and scalar blocks kill it at k = 3
    for (n, k, m, rr) in [(3, 2, 1, 1), (5, 3, 1, 2)] {
        let ctx = Ctx::new(n, 3).unwrap().with_hol_cap(k as u32 - 1);
        let sc = Scenario::unipotent(ctx, m, rr, true, &mut rng);
        let r = verify_top_type_exact(&sc, k).unwrap();
        assert!(r.holds() && !r.vacuous && r.prec >= 0, "n={n} k={k}");
        assert!(!r.top.is_zero());
    }
}

#[test]
fn holomorphic_type_pairs_have_no_low_types() {
    let ctx = Ctx::new(2, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..5 {
        for pair in [hermitian_pair(ctx, 2, &mut rng).unwrap(), second_connection_pair(ctx, 2, &mut rng).unwrap()] {
            for phi in [Invariant::TracePower(2), Invariant::Chern(2), Invariant::Chern(1)] {
                assert!(type_vanishing(phi, &pair.theta0, &pair.theta1).unwrap().holds());
            }
        }
    }
}

#[test]
fn nadel_component_matches_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for k in 1..=3usize {
        let ctx = Ctx::new(2 * k - 1, 2).unwrap().with_hol_cap(0);
        for _ in 0..2 {
            let sc = Scenario::general(ctx, 2, false, &mut rng);
            let r = nadel(&sc, k).unwrap();
            assert!(r.holds(), "k={k}");
            assert!(!r.vacuous);
        }
    }
    assert_eq!(nadel_coefficient(1), rat(-1, 1));
    assert_eq!(nadel_coefficient(2), rat(-1, 3));
    let ctx = Ctx::new(1, 2).unwrap();
    let sc = Scenario::general(ctx, 2, true, &mut rng);
    // k = 1: T^{0,1} = -tr(g^{-1} delbar g)
    let r = nadel(&sc, 1).unwrap();
    let a = sc.g.inverse().unwrap().matmul(&sc.g.delbar());
    assert!(r.component.agrees(&-&a.trace()));
    let id = Scenario::new(MatrixForm::identity(ctx, 2), MatrixForm::identity(ctx, 2)).unwrap();
    assert!(nadel(&id, 2).unwrap().component.is_zero());
}

#[test]
fn whitney_for_block_curvatures() {
    let ctx = Ctx::new(3, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..3 {
        let a = MatrixForm::random_typed(ctx, 2, 1, 1, 10, &mut rng);
        let b = MatrixForm::random_typed(ctx, 2, 1, 1, 10, &mut rng);
        assert!(whitney_form_check(&a, &b).unwrap().holds());
        let r = whitney_form_check(&a, &MatrixForm::zero(ctx, 2)).unwrap();
        assert!(r.holds());
        assert!(total_chern(&MatrixForm::block_diag(&a, &MatrixForm::zero(ctx, 2))).unwrap().agrees(&total_chern(&a).unwrap()));
    }
}

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sparkforge_core::cech_models::{torus, CechModel, SparkRing};
use sparkforge_core::exact_linalg::svec;
use sparkforge_core::scalar::{int, Qi};

fn ring() -> SparkRing {
    SparkRing::new(CechModel::new(torus(1)).unwrap()).unwrap()
}

#[test]
fn cup_satisfies_leibniz() {
    let r = ring();
    let m = &r.model;
    let lay = &r.level.layout;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let k = (rng.next_u32() % 3) as usize;
        let l = (rng.next_u32() % 2) as usize;
        let a = m.random_cochain(lay, k, 10, &mut rng);
        let b = m.random_cochain(lay, l, 10, &mut rng);
        let lhs = m.differential(&m.cup(&a, &b), None);
        let sign = Qi::from_int(if k % 2 == 1 { -1 } else { 1 });
        let rhs = m.add(&m.cup(&m.differential(&a, None), &b), &m.cup(&a, &m.differential(&b, None)), &sign);
        assert_eq!(lhs, rhs, "k={k} l={l}");
    }
}

#[test]
fn constant_cochains_act_by_scalars() {
    let r = ring();
    let m = &r.model;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let b = m.random_cochain(&r.level.layout, 2, 20, &mut rng);
    let two = m.psi_cochain(0, &vec![int(2); 7]);
    let one = m.psi_cochain(0, &vec![int(1); 7]);
    assert_eq!(m.cup(&one, &b), b);
    assert_eq!(m.cup(&b, &one), b);
    assert_eq!(m.cup(&two, &b), m.add(&b, &b, &Qi::from_int(1)));
}

#[test]
fn spark_product_identities() {
    let r = ring();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..3 {
        let (k, l) = (0, (rng.next_u32() % 2) as usize);
        let x = r.random_spark(k, &mut rng);
        let y = r.random_spark(l, &mut rng);
        let p = r.product(k, &x, l, &y);
        let n = k + l + 1;
        assert!(r.group(n).is_spark(&p));
        // representative independence
        let x2 = svec::add(&x, &r.random_boundary(k, &mut rng));
        let y2 = svec::add(&y, &r.random_boundary(l, &mut rng));
        assert!(r.same_class(n, &p, &r.product(k, &x2, l, &y2)));
        // delta_1 and delta_2 compatibility
        let t = &r.triple;
        let e = r.e_wedge(k + 1, &t.delta1(k, &x).unwrap(), l + 1, &t.delta1(l, &y).unwrap());
        assert_eq!(t.delta1(n, &p).unwrap(), e);
        // units
        let rx = r.rep(k, &x);
        assert!(r.same_class(k, &r.element(&r.unit_left(&rx)), &x));
        assert!(r.same_class(k, &r.element(&r.unit_right(&rx)), &x));
    }
}

#[test]
fn spark_product_is_associative() {
    let r = ring();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..2 {
        let (x, y, z) = (r.random_spark(0, &mut rng), r.random_spark(0, &mut rng), r.random_spark(0, &mut rng));
        let left = r.product(1, &r.product(0, &x, 0, &y), 0, &z);
        let right = r.product(0, &x, 1, &r.product(0, &y, 0, &z));
        assert!(r.same_class(2, &left, &right));
    }
}

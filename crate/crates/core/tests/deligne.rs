use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sparkforge_core::cech_models::{constant_polynomial_system, disk, torus, CechModel, Nerve, SparkRing};
use sparkforge_core::deligne::{deligne_cohomology, unit_cocycle, DeligneComplex, DeligneRing};

fn leibniz_holds(dr: &DeligneRing, p: usize, q: usize, k: usize, l: usize, rng: &mut ChaCha8Rng) -> bool {
    let (mp, mq, mpq) = (dr.complex(p).unwrap(), dr.complex(q).unwrap(), dr.complex(p + q).unwrap());
    let x = mp.random_cochain(k, 15, rng);
    let y = mq.random_cochain(l, 15, rng);
    let lhs = mpq.delta(&dr.beilinson_cup(&x, q, &y));
    let t1 = dr.beilinson_cup(&mp.delta(&x), q, &y);
    let t2 = dr.beilinson_cup(&x, q, &mq.delta(&y));
    let m = dr.model();
    let s = sparkforge_core::scalar::Qi::from_int(if k % 2 == 1 { -1 } else { 1 });
    let a = m.add(&t1.a, &t2.a, &s);
    let r: Vec<_> = t1.r.iter().zip(&t2.r).map(|(u, v)| if k % 2 == 1 { u - v } else { u + v }).collect();
    let mut lhs_a = lhs.a.clone();
    lhs_a.retain(|_, v| !v.is_empty());
    lhs_a == a && lhs.r == r
}

#[test]
fn beilinson_cup_is_a_chain_map() {
    let ring = SparkRing::new(CechModel::new(torus(1)).unwrap()).unwrap();
    let dr = DeligneRing::new(&ring);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for t in 0..40 {
        let (p, q) = (t % 3, (t / 3) % 3);
        let (k, l) = (t % 4, (t / 2) % 4);
        assert!(leibniz_holds(&dr, p, q, k, l, &mut rng), "p={p} q={q} k={k} l={l}");
    }
}

#[test]
fn beilinson_cup_is_a_chain_map_with_del() {
    let ring = SparkRing::new(CechModel::new(constant_polynomial_system(Nerve::simplex(2), 3)).unwrap()).unwrap();
    let dr = DeligneRing::new(&ring);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for p in 0..3 {
        for q in 0..3 {
            for k in 0..5 {
                for l in 0..5 {
                    assert!(leibniz_holds(&dr, p, q, k, l, &mut rng), "p={p} q={q} k={k} l={l}");
                }
            }
        }
    }
}

#[test]
fn level_zero_is_integral_cohomology() {
    for m in [CechModel::new(torus(1)).unwrap(), CechModel::new(disk(2)).unwrap()] {
        let z = m.integral_complex();
        for q in 0..4 {
            assert_eq!(deligne_cohomology(&m, 0, q).unwrap().invariants(), z.cohomology(q).invariants());
        }
    }
}

#[test]
fn phi_is_an_isomorphism_onto_ker_delta1() {
    let ring = SparkRing::new(CechModel::new(torus(1)).unwrap()).unwrap();
    let dr = DeligneRing::new(&ring);
    for p in 1..=2 {
        for k in 1..=3 {
            let h = dr.phi_hom(p, k).unwrap();
            assert!(h.is_well_defined(), "p={p} k={k}");
            assert!(h.is_isomorphism(), "p={p} k={k}: {} -> {}", h.source.invariants(), h.target.invariants());
        }
    }
}

#[test]
fn products_agree_on_torus() {
    let ring = SparkRing::new(CechModel::new(torus(1)).unwrap()).unwrap();
    let dr = DeligneRing::new(&ring);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for t in 0..8 {
        let (p, q) = (1 + t % 2, 1 + (t / 2) % 2);
        let (k, l) = (1 + t % 3, 1 + (t / 3) % 2);
        let x = dr.complex(p).unwrap().random_cocycle(k, &mut rng);
        let y = dr.complex(q).unwrap().random_cocycle(l, &mut rng);
        let c = dr.compare_products(p, &x, q, &y, Some(&mut rng)).unwrap();
        assert!(c.holds(), "p={p} q={q} k={k} l={l}: {c:?}");
    }
}

#[test]
fn unit_acts_trivially() {
    let ring = SparkRing::new(CechModel::new(torus(1)).unwrap()).unwrap();
    let dr = DeligneRing::new(&ring);
    let one = unit_cocycle(dr.model());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mp: &DeligneComplex = dr.complex(1).unwrap();
    let x = mp.random_cocycle(2, &mut rng);
    assert_eq!(dr.beilinson_cup(&x, 0, &one), x);
    assert_eq!(dr.beilinson_cup(&one, 1, &x), x);
}

#[test]
fn products_agree_with_del() {
    let ring = SparkRing::new(CechModel::new(constant_polynomial_system(Nerve::simplex(2), 3)).unwrap()).unwrap();
    let dr = DeligneRing::new(&ring);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for p in 1..=2 {
        for q in 1..=2 {
            for k in 1..=3 {
                for l in 1..=3 {
                    let x = dr.complex(p).unwrap().random_cocycle(k, &mut rng);
                    let y = dr.complex(q).unwrap().random_cocycle(l, &mut rng);
                    let c = dr.compare_products(p, &x, q, &y, Some(&mut rng)).unwrap();
                    assert!(c.holds(), "{c:?}");
                    assert_eq!(dr.product_via_beilinson(&x, q, &y), dr.beilinson_cup(&x, q, &y));
                }
            }
        }
    }
}

#[test]
fn phi_kills_coboundaries_and_lands_in_ker_delta1() {
    let ring = SparkRing::new(CechModel::new(torus(1)).unwrap()).unwrap();
    let dr = DeligneRing::new(&ring);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for p in 1..=2 {
        for k in 1..=3 {
            let g = dr.group(p, k - 1).unwrap();
            let t = &dr.level(p).unwrap().1;
            let b = dr.complex(p).unwrap().random_coboundary(k, &mut rng);
            let v = dr.phi(p, &b).unwrap();
            assert!(g.same_class(&v, &Default::default()), "p={p} k={k}");
            let z = dr.complex(p).unwrap().random_cocycle(k, &mut rng);
            let v = dr.phi(p, &z).unwrap();
            assert!(g.is_spark(&v) && t.delta1_hom(k - 1).apply(&v).is_empty());
        }
    }
}

#[test]
fn beilinson_product_is_associative_on_classes() {
    let ring = SparkRing::new(CechModel::new(torus(1)).unwrap()).unwrap();
    let dr = DeligneRing::new(&ring);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (p, q, r, k, l, m) in [(1, 1, 1, 1, 1, 1), (1, 2, 1, 1, 1, 2), (2, 1, 1, 2, 1, 1), (1, 1, 2, 1, 2, 1)] {
        let x = dr.complex(p).unwrap().random_cocycle(k, &mut rng);
        let y = dr.complex(q).unwrap().random_cocycle(l, &mut rng);
        let z = dr.complex(r).unwrap().random_cocycle(m, &mut rng);
        let left = dr.beilinson_cup(&dr.beilinson_cup(&x, q, &y), r, &z);
        let right = dr.beilinson_cup(&x, q + r, &dr.beilinson_cup(&y, r, &z));
        let top = dr.complex(p + q + r).unwrap();
        let h = top.cohomology(k + l + m);
        let diff = sparkforge_core::exact_linalg::svec::sub(&top.to_svec(&left).unwrap(), &top.to_svec(&right).unwrap());
        assert!(h.rel.contains(&diff));
    }
}

#[test]
fn spark_route_respects_delta2() {
    let ring = SparkRing::new(CechModel::new(torus(1)).unwrap()).unwrap();
    let dr = DeligneRing::new(&ring);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let m = dr.model();
    for (p, q, k, l) in [(1, 1, 1, 1), (1, 2, 1, 2), (2, 2, 2, 1)] {
        let x = dr.complex(p).unwrap().random_cocycle(k, &mut rng);
        let y = dr.complex(q).unwrap().random_cocycle(l, &mut rng);
        let c = dr.compare_products(p, &x, q, &y, Some(&mut rng)).unwrap();
        let t = &dr.level(p + q).unwrap().1;
        let (_, r) = t.spark_parts(k + l - 1, &c.via_sparks);
        let want: Vec<_> = m.int_cup(k, &x.r, l, &y.r).iter().map(|v| if (k + l) % 2 == 1 { -v } else { v.clone() }).collect();
        assert_eq!(r, want);
    }
}

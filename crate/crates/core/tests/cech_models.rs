use sparkforge_core::cech_models::{disk, torus, CechModel};
use sparkforge_core::exact_linalg::AbelianInvariants;

fn ranks(inv: &[AbelianInvariants]) -> Vec<usize> {
    inv.iter().map(|i| i.q_rank).collect()
}

#[test]
fn torus_level_one_triple() {
    let m = CechModel::new(torus(1)).unwrap();
    let t = m.assemble_level_p(1).unwrap();
    let e: Vec<_> = (0..t.e.len()).map(|k| t.e.cohomology(k).invariants()).collect();
    // level 1 keeps only the functions, whose global forms compute H(T^2)
    assert_eq!(ranks(&e), vec![1, 2, 1]);
    let rep = t.validate();
    assert!(rep.passes(), "{:?}", rep.violations());
    for k in 0..3 {
        println!("H^{k} spark = {}", t.spark_group(k).module.invariants());
    }
}

#[test]
fn hyperspark_web_on_torus() {
    let m = CechModel::new(torus(1)).unwrap();
    let web = m.assemble_hyperspark_level_p(Some(1)).unwrap();
    assert!(web.hyperspark.validate().axiom1.is_some());
    assert!(web.from_cech_dolbeault.mi.to_group().is_quasi_isomorphism());
    assert!(web.from_global.mf.to_group().is_quasi_isomorphism());
    for k in 0..3 {
        assert!(web.from_cech_dolbeault.induced_map(k).is_isomorphism(), "cd degree {k}");
        assert!(web.from_global.induced_map(k).is_isomorphism(), "global degree {k}");
    }
}

#[test]
fn level_projection_on_torus() {
    let m = CechModel::new(torus(1)).unwrap();
    let pi = m.level_projection(1).unwrap();
    for k in 0..4 {
        let h = pi.induced_map(k);
        assert!(h.is_surjective(), "degree {k}");
        let reps = pi.kernel_representatives(k);
        println!("k={k} kernel gens {}", reps.len());
        assert!(reps.iter().all(|r| r.certified()));
    }
}

#[test]
fn disk_triples() {
    let m = CechModel::new(disk(2)).unwrap();
    let t = m.assemble_level_p(1).unwrap();
    assert!(t.validate().passes());
    println!("{}", t.spark_group(0).module.invariants());
}

#[test]
fn level_projection_on_torus_n2() {
    let m = CechModel::new(torus(2)).unwrap();
    for p in [1, 2] {
        let pi = m.level_projection(p).unwrap();
        for k in 0..pi.source.f.len() {
            assert!(pi.induced_map(k).is_surjective(), "p={p} k={k}");
        }
    }
}

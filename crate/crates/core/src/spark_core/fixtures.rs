//! Small hand-checkable triples and their deliberately broken variants.

use alloc::vec::Vec;

use crate::complexes::{CochainComplex, ComplexMorphism, Ring};
use crate::exact_linalg::QiMatrix;
use crate::scalar::Qi;

use super::triple::SparkComplexTriple;

pub(crate) fn mat(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> QiMatrix {
    QiMatrix::from_triplets(rows, cols, entries.iter().map(|&(i, j, v)| (i, j, Qi::from_int(v))))
}

fn complex(ring: Ring, dims: &[usize], diffs: &[&[(usize, usize, i64)]]) -> CochainComplex {
    let d = (0..dims.len().saturating_sub(1)).map(|k| mat(dims[k + 1], dims[k], diffs.get(k).copied().unwrap_or(&[]))).collect();
    CochainComplex::new(ring, dims.to_vec(), d).expect("fixture complex")
}

fn morphism(s: &CochainComplex, t: &CochainComplex, maps: &[&[(usize, usize, i64)]]) -> ComplexMorphism {
    let n = s.len().max(t.len());
    let m: Vec<QiMatrix> = (0..n).map(|k| mat(t.dim(k), s.dim(k), maps.get(k).copied().unwrap_or(&[]))).collect();
    ComplexMorphism::new(s.clone(), t.clone(), m).expect("fixture morphism")
}

/// `F^0 = E^0 = Q`, `I^0 = Z`, `psi = 1`.
pub fn point() -> SparkComplexTriple {
    let f = complex(Ring::Q, &[1], &[]);
    let i = complex(Ring::Z, &[1], &[]);
    SparkComplexTriple::new(morphism(&f, &f, &[&[(0, 0, 1)]]), morphism(&i, &f, &[&[(0, 0, 1)]])).expect("point triple")
}

fn t1_f() -> CochainComplex {
    // F^0 = <u, v>, F^1 = <w>, du = 0, dv = w
    complex(Ring::Q, &[2, 1], &[&[(0, 1, 1)]])
}

fn t1_i(i0: usize) -> CochainComplex {
    complex(Ring::Z, &[i0, 1], &[])
}

/// `F^0 = Q<u,v>`, `F^1 = Q<w>`, `dv = w`; `E = Q<u>`; `I^0 = Z alpha -> u`, `I^1 = Z beta -> w`.
pub fn synthetic_t1() -> SparkComplexTriple {
    let f = t1_f();
    let e = complex(Ring::Q, &[1], &[]);
    let i = t1_i(1);
    SparkComplexTriple::new(morphism(&e, &f, &[&[(0, 0, 1)]]), morphism(&i, &f, &[&[(0, 0, 1)], &[(0, 0, 1)]])).expect("T1")
}

/// Adds `E^1 = Q<w>`, which meets `psi(I^1)` in `w`.
pub fn t1_axiom1_broken() -> SparkComplexTriple {
    let f = t1_f();
    let e = complex(Ring::Q, &[1, 1], &[]);
    let i = t1_i(1);
    SparkComplexTriple::new(morphism(&e, &f, &[&[(0, 0, 1)], &[(0, 0, 1)]]), morphism(&i, &f, &[&[(0, 0, 1)], &[(0, 0, 1)]]))
        .expect("T1 with E^1")
}

/// Drops `E`, so the inclusion misses `H^0(F) = Q<u>`.
pub fn t1_axiom2_broken() -> SparkComplexTriple {
    let f = t1_f();
    let e = complex(Ring::Q, &[0], &[]);
    let i = t1_i(1);
    SparkComplexTriple::new(morphism(&e, &f, &[]), morphism(&i, &f, &[&[(0, 0, 1)], &[(0, 0, 1)]])).expect("T1 without E")
}

/// `I^0 = Z<alpha_1, alpha_2>` with both generators sent to `u`.
pub fn t1_axiom3_broken() -> SparkComplexTriple {
    let f = t1_f();
    let e = complex(Ring::Q, &[1], &[]);
    let i = t1_i(2);
    SparkComplexTriple::new(morphism(&e, &f, &[&[(0, 0, 1)]]), morphism(&i, &f, &[&[(0, 0, 1), (0, 1, 1)], &[(0, 0, 1)]]))
        .expect("T1 with doubled I^0")
}

/// `F = E` acyclic (`Q -> Q` identity) and `I = 0`.
pub fn acyclic() -> SparkComplexTriple {
    let f = complex(Ring::Q, &[1, 1], &[&[(0, 0, 1)]]);
    let i = complex(Ring::Z, &[0], &[]);
    SparkComplexTriple::new(ComplexMorphism::identity(&f), morphism(&i, &f, &[])).expect("acyclic triple")
}

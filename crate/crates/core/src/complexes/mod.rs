//! Cochain complexes, morphisms, cones, double complexes and level truncation.

pub mod bigraded;
pub mod cochain;
pub mod group_complex;

pub use bigraded::{BigradedComplex, DoubleComplex, TotalLayout, Truncation};
pub use cochain::{complexify_vec, realify_map, realify_vec, CochainComplex, ComplexMorphism, Ring};
pub use group_complex::{block_hom, cone, Cone, DirectSum, GroupComplex, GroupMorphism, QuasiIsoReport};

//! Finite good-cover models: nerves, local coefficient systems and the Cech complexes built on them.

pub mod coeffs;
pub mod disk;
pub mod model;
pub mod nerve;
pub mod product;
pub mod torus;

pub use coeffs::{qvec_apply, qvec_axpy, CoefficientSystem, LocalAlgebra, QVec};
pub use disk::{constant_polynomial_system, disk, disk_system};
pub use model::{keeps, CechCochain, CechLayout, CechModel, GlobalForms, GlobalLattice, HypersparkWeb, LevelComplex, Slot};
pub use product::{SparkRep, SparkRing};
pub use nerve::{Nerve, SimplexId};
pub use torus::{invariant_form_system, monomial_sign, torus};

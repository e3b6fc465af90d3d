//! Exact linear algebra over Z, Q and Q(i).

pub mod group;
pub mod lattice;
pub mod matrix;
pub mod rref;
pub mod snf;
pub mod svec;

pub use group::{cokernel_invariants, is_exact_at, AbelianInvariants, Ambient, Hom, ModuleHom, QZModule, Subgroup};
pub use lattice::{integer_kernel, lattice_basis, lattice_coords};
pub use matrix::{IntMatrix, QiMatrix, RatMatrix, Scalar, SparseMatrix};
pub use rref::{left_inverse, mixed_kernel, rank, rref, solve_mixed, solve_q, MixedKernel, Rref};
pub use snf::{smith_normal_form, Smith};
pub use svec::SVec;

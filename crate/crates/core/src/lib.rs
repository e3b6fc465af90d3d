//! Exact computations with spark complexes, Deligne complexes and Chern-Weil forms.
#![no_std]

extern crate alloc;

pub mod cech_models;
pub mod chern_weil;
pub mod complexes;
pub mod deligne;
pub mod error;
pub mod exact_linalg;
pub mod scalar;
pub mod spark_core;

pub use error::{Error, Result};

//! Spark complexes, spark class groups, the nine-group grid and induced maps.

pub mod fixtures;
pub mod grid;
pub mod morphism;
pub mod triple;

pub use grid::{GridResult, NODE_NAMES};
pub use morphism::{KernelRep, TripleMorphism};
pub use triple::{clear_denominators, Axiom1Witness, SparkComplexTriple, SparkGroup, Tier, ValidationReport};

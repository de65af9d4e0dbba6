//! Budgeted disk complexes, the sphere complex and their verifiers.

pub mod analysis;
pub mod build;
pub mod census;
pub mod export;
pub mod graph;
pub mod verify;

pub use analysis::{component_count, edge_cycle_census, find_cycles, is_forest};
pub use build::{build_disk_complex, build_dual_tree, build_pprime_complex, build_primitive_complex, build_sphere_complex, phi_v};
pub use census::Census;
pub use graph::{Budget, ComplexGraph, ComplexKind};
pub use verify::{verify, Suite, Verdict, VerifierReport};

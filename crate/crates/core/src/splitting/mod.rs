//! The genus-2 Heegaard splitting of a lens space as data.

pub mod cache;
pub mod diagram;
pub mod disks;
pub mod snf;

pub use diagram::{build_diagram, HandleSide, HeegaardDiagram};
pub use disks::{DiskClass, DiskSet, DualPair};

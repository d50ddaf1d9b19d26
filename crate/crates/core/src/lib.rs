//! Exact computations for finite-dimensional Lie algebras, their cohomology
//! and deformations, the q-deformed Heisenberg algebra, and truncated
//! ladder-operator realisations.

pub mod catalog;
pub mod cohomology;
pub mod deform;
pub mod exactnum;
pub mod extend;
pub mod fock;
pub mod liealg;
pub mod linalg;
pub mod qheis;
pub mod report;
pub mod suite;

/// Version tag carried by every JSON document.
pub const FORMAT: &str = "lieq-1";

//! Supergrid graphs: classification, cycle merging, and constructive
//! Hamiltonian cycles for 2-connected linear-convex instances.

pub mod classify;
pub mod cli;
pub mod cycle;
pub mod enumerate;
pub mod grid;
pub mod hamiltonian;
pub mod io;
pub mod verify;

pub use classify::{classify, ClassificationReport, Predicate};
pub use cycle::{validate_cycle, Cycle, PathSeq};
pub use grid::{adjacent, Direction, Point, SupergridGraph};
pub use hamiltonian::{find_hamiltonian_cycle, ExtensionRule, ExtensionTrace, HamResult};

//! Gorenstein, level and almost Gorenstein properties of edge rings of
//! complete multipartite graphs, decided both by closed-form
//! characterization and by direct lattice-point computation.

pub mod arith;
pub mod canonical;
pub mod characterize;
pub mod error;
pub mod hibi;
pub mod hilbert;
pub mod multipartite;
pub mod polytope;

pub use error::{Error, Result};
pub use multipartite::{CaseClass, Edge, Partition};
pub use polytope::{Budget, LatticePoint, SupportSystem};

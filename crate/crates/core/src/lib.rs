//! Analysis of noncontextual Pauli Hamiltonians.
//!
//! The crate decides whether a real Pauli Hamiltonian is noncontextual,
//! splits it into symmetry generators `G` and anticommuting clique
//! representatives `A`, evaluates its full spectrum in closed form over the
//! `2^|G|` symmetry sectors, and builds eigenvectors as short sums of Pauli
//! words applied to a stabilizer state. The `verify` module provides dense
//! oracles for cross-checking all of this at small sizes.

#![allow(clippy::result_large_err)]

pub mod clifford;
pub mod eigenstate;
pub mod error;
pub mod gen;
pub mod gf2;
pub mod io;
pub mod partition;
pub mod pauli;
pub mod spectrum;
pub mod structure;
pub mod sum;
pub mod verify;

pub use error::{Error, Result};
pub use pauli::{Letter, PauliOperator};
pub use structure::{CompatibilityGraph, Decomposition};
pub use sum::{OperatorSum, PauliSum};

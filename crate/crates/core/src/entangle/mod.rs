//! Entanglement generation protocols and verification.

pub mod qubit;
pub mod stabilizer;

pub use qubit::{DensityOperator, QubitKind, QubitStateVector};
pub use stabilizer::{Pauli, PauliString, StabilizerSet};

//! Entanglement-assisted quantum error-correcting codes.
//!
//! The crate covers the binary symplectic representation of Pauli operators,
//! `[[n,k,d;c]]` code objects and their duals, exact weight enumerators and
//! the MacWilliams identity between them, distance bounds decided by an exact
//! rational integer-programming solver, the repetition and accumulator code
//! families, and block-error bounds for the depolarizing channel.

pub mod bounds;
pub mod channel;
pub mod circuit;
pub mod code;
pub mod constructions;
pub mod enumerator;
pub mod error;
pub mod pauli;
pub mod simulate;
pub mod symplectic;
pub mod table;

pub use circuit::{CliffordCircuit, Cnot};
pub use code::{parse_code, serialize_code, EaqecCode, GroupKind, ValidationReport, Violation};
pub use enumerator::{macwilliams_transform, weight_enumerator, WeightEnumerator};
pub use error::*;
pub use pauli::{Pauli, PauliOp};
pub use symplectic::{SymplecticDecomposition, SymplecticMatrix, DEFAULT_ENUMERATION_CAP};

//! Quantum-memory-assisted entropic uncertainty bounds.
//!
//! A party `A` holds one share of a multipartite state and performs one of `m`
//! rank-one projective measurements. `n` quantum memories `B_1..B_n` each try to
//! predict the outcomes of the measurements assigned to them. This crate
//! evaluates the total conditional uncertainty
//! `sum_t sum_{M_i in S_t} S(M_i|B_t)` together with every lower bound on it:
//! the two-measurement relations (Deutsch, Maassen-Uffink, Berta, Adabi,
//! Renes-Berta tripartite, Ming, Wu), the multi-measurement relations (Xie, Wu,
//! Liu) and the multi-memory bounds built on them.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the command line
//! front end and parallel sweeps live in the `qmeur` crate.
//!
//! Subsystem `0` of every [`Register`] is the measured party `A`; subsystems
//! `1..` are memories. All logarithms are base 2.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
mod math;

pub mod bounds;
pub mod entropy;
pub mod linalg;
pub mod measure;
pub mod qstate;
pub mod scenario;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub use bounds::{BoundOptions, BoundReport, Partition, ShannonBound, WuVariant};
pub use entropy::EntropyValue;
pub use linalg::{ComplexMatrix, EigenDecomposition};
pub use measure::{BOrder, MeasurementBasis, MeasurementSet};
pub use qstate::{DensityMatrix, Register, Rng};

//! Exact diagonalization of Heisenberg XX open chains with bond impurities,
//! and the pairwise thermal entanglement (Wootters concurrence) of every
//! site pair.
//!
//! The pipeline is
//!
//! ```text
//! ChainSpec ─► Hamiltonian ─► Spectrum ─► DensityMatrix ─► TwoQubitState ─► concurrence
//! ```
//!
//! ```
//! use xxchain::{all_pairwise, ChainSpec, Temperature};
//!
//! let chain = ChainSpec::uniform(3).unwrap();
//! let rho = chain.thermal_state(Temperature::ZERO).unwrap();
//! let c = all_pairwise(&rho).unwrap();
//! assert!((c[&(1, 2)].value - (0.5f64.sqrt() - 0.25)).abs() < 1e-12);
//! assert!(c[&(1, 3)].value < 1e-12);
//! ```
//!
//! The [`experiments`] module holds named scenarios, parameter sweeps, the
//! impurity-parameter optimizer and claim verifiers; [`cli`] backs the
//! `xxchain` binary.

// `!(x >= 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod chain;
pub mod cli;
pub mod entanglement;
mod error;
pub mod experiments;
pub mod linalg;
pub mod thermal;

pub use chain::{build_hamiltonian, impurity_pattern, magnetization_sectors, ChainSpec};
pub use entanglement::{
    all_pairwise, concurrence, concurrence_xstate, partial_trace_pair, spin_flip,
    ConcurrenceResult, PairMap, TwoQubitState,
};
pub use error::{Error, Result};
pub use linalg::{eigh, eigh_blocks, psd_sqrt, Spectrum, SymMatrix};
pub use thermal::{gibbs_state, ground_state_mixture, DensityMatrix, Temperature};

//! Exact simulation of a triangular beam-splitter lattice ("quantum
//! pachinko machine") of depth `L` with `2L` photon-number-resolving
//! detectors.
//!
//! * [`lattice`] geometry, validation and resource counts
//! * [`transfer`] the `2L × 2L` creation-operator transfer matrix
//! * [`kernels`] permanents (Ryser, Laplace) and determinants
//! * [`fock`] bosonic and fermionic output amplitudes and distributions
//! * [`oracle`] independent state-vector evolution and path counts
//! * [`gaussian`] coherent and squeezed inputs in polynomial time
//! * [`dims`] exact Hilbert-space dimensions
//!
//! Numerical code is generic over [`Real`] (`f32`, `f64`); the aliases below
//! fix the common double-precision instantiations.

// `!(x <= limit)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bench;
pub mod config;
pub mod dims;
pub mod error;
pub mod fock;
pub mod gaussian;
pub mod kernels;
pub mod lattice;
pub mod limits;
pub mod matrix;
pub mod ops;
pub mod oracle;
pub mod pattern;
pub mod scalar;
pub mod transfer;

pub use error::{Error, Result};
pub use limits::Limits;
pub use pattern::OccupationPattern;
pub use scalar::{Cx, Real};

pub type C64 = num_complex::Complex64;
pub type C32 = num_complex::Complex32;

pub type LatticeConfigF64 = lattice::LatticeConfig<f64>;
pub type BeamSplitterF64 = lattice::BeamSplitterSpec<f64>;
pub type TransferMatrixF64 = transfer::TransferMatrix<f64>;
pub type ComplexMatrixF64 = matrix::ComplexMatrix<f64>;
pub type AmplitudeDistributionF64 = fock::AmplitudeDistribution<f64>;
pub type FockStateVectorF64 = oracle::FockStateVector<f64>;
pub type GaussianStateF64 = gaussian::GaussianState<f64>;

pub type LatticeConfigF32 = lattice::LatticeConfig<f32>;
pub type TransferMatrixF32 = transfer::TransferMatrix<f32>;
pub type ComplexMatrixF32 = matrix::ComplexMatrix<f32>;
pub type AmplitudeDistributionF32 = fock::AmplitudeDistribution<f32>;
pub type GaussianStateF32 = gaussian::GaussianState<f32>;

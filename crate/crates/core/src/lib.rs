//! Generalized Schmidt decomposition and time-averaged entanglement of two
//! identical particles.
//!
//! The numeric core is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix it to double precision.

pub mod cli;
pub mod dynamics;
pub mod eig;
pub mod error;
pub mod factor;
pub mod fock;
pub mod matrix;
pub mod models;
pub mod random;
pub mod scalar;

pub use dynamics::{
    average_entanglement, e1_trajectory, evolve, monte_carlo_phase_average, project_state,
    two_particle_spectrum, two_particle_spectrum_with_basis, HoppingModel, HoppingSign,
    SpectrumOptions,
};
pub use eig::hermitian_eig;
pub use error::{Error, Result};
pub use factor::{antisym_canonical, canonical_spectrum, congruence, takagi, Parity};
pub use fock::{
    linear_entropy, read_state, reduced_densities, schmidt_decompose, state_from_occupation,
    von_neumann_entropy, write_state, Occupation, Species,
};
pub use matrix::{frobenius_distance, is_unitary, ComplexMatrix, Symmetry};
pub use scalar::{Real, C};

pub type Matrix = ComplexMatrix<f64>;
pub type State = fock::TwoParticleState<f64>;
pub type Schmidt = fock::SchmidtDecomposition<f64>;
pub type Spectrum = dynamics::SpectralDecomposition<f64>;
pub type Model = dynamics::HoppingModel<f64>;
pub type Report = dynamics::AverageReport<f64>;
pub type Eig = eig::HermitianEig<f64>;

//! Superpositions of squeezed displaced number states driving the
//! multiphoton Jaynes-Cummings model: closed-form states, exact resonant
//! dynamics, field statistics, Wigner functions and harmonic asymptotics.

pub mod asymptotics;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod fock;
pub mod numerics;
pub mod observables;
pub mod states;
pub mod wigner;

pub use dynamics::{evolve, evolve_field, FieldDensityMatrix, JointState, ModelParams};
pub use error::{JcmError, Result};
pub use fock::FieldState;
pub use states::SuperpositionParams;

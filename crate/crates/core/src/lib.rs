//! Two-polariton spectra of a one-dimensional atomic lattice in a cavity,
//! with Rydberg blockade (kinematic) and van der Waals / nearest-shell
//! (dynamical) interactions.
//!
//! Start from [`model::Params`], diagonalise a total-momentum sector with
//! [`hamiltonian::solve_fixed_k`], then classify and score the states with
//! [`analysis`]. The `examples/` directory walks through each capability.

pub mod analysis;
pub mod blockade;
pub mod bound_states;
pub mod cli;
pub mod error;
pub mod hamiltonian;
pub mod io;
pub mod linalg;
pub mod model;
pub mod oracle;
pub mod virtual_basis;

pub use error::{Error, Result};
pub use model::{derive_params, Params, ParamsConfig, PotentialKind, Species};

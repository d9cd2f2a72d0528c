//! Toolkit for the two-level pseudo-Hermitian Hamiltonian family
//! `H(a,b,c) = [[a-c, bi], [bi, a+c]]` with real parameters.
//!
//! The crate provides the closed-form spectrum and both eigenvector
//! parametrizations of the family ([`hamiltonian`]), its C, P, T, PT and CPT
//! symmetry operators with the associated structural checks ([`symmetry`]),
//! a residual-based verification battery over a fixed catalog of equality
//! and inequality claims ([`claims`]), and a command-line front end with a
//! phase-diagram scanner ([`cli`]).
//!
//! All values are immutable and all operations are pure functions.

pub mod claims;
pub mod cli;
pub mod cxmat;
pub mod error;
pub mod hamiltonian;
pub mod symmetry;

pub use cxmat::{AntilinearOp, Mat2C, Vec2C};
pub use error::ModelError;
pub use hamiltonian::{HamiltonianParams, PTPhase, Spectrum};

#![forbid(unsafe_code)]

//! Continuous-time models of quantum logic gates.
//!
//! A quantum gate is usually treated as an instantaneous jump. This crate
//! treats it as the endpoint of a continuous unitary evolution
//! `U(t) = exp(-iHt)` driven by an effective Hamiltonian read off the gate's
//! spectral decomposition, and provides the machinery that view needs:
//!
//! - [`numerics`]: dense complex matrices, a Jacobi eigensolver for normal
//!   matrices, Kronecker and Frobenius products, determinants, and the
//!   matrix exponential.
//! - [`gates`]: a catalog of standard gates with pinned spectral data, and
//!   interpolated evolution operators between the identity and the gate.
//! - [`bloch`]: single-qubit trajectories on the Bloch sphere.
//! - [`entanglement`]: two-qubit product states under entangling evolutions,
//!   concurrence, and phase-factorizability.
//! - [`realspace`]: the embedding of complex matrices into real matrices of
//!   twice the dimension, complex-structure detection, and special-orthogonal
//!   generators.
//! - [`endomorphism`]: the Pauli-tensor basis of real matrix space in
//!   dimension `2^n x 2^n` and its symmetric/antisymmetric census.
//! - [`io`]: the JSON and CSV interchange formats used by the command-line
//!   tool.

pub mod bloch;
pub mod endomorphism;
pub mod entanglement;
pub mod gates;
pub mod io;
pub mod numerics;
pub mod realspace;

#[cfg(test)]
mod test_util;

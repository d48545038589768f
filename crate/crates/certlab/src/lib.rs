//! Exact certificates of polynomial nonnegativity over constrained sets.
//!
//! Everything here runs in rational arithmetic: positive semidefinite checks
//! factor matrices exactly, linear programs return verifiable optimality or
//! infeasibility certificates, and circuit membership compares lifted powers
//! of integers. A certificate accepted by [`hierarchy::verify`] is a proof,
//! not a numerical claim.
//!
//! The main pieces:
//!
//! - [`polycore`]: sparse multivariate polynomials over the rationals.
//! - [`polytope`]: lattice point tools, mediated sets, simplex
//!   classification.
//! - [`matrixkit`]: exact symmetric matrix checks (psd, diagonally
//!   dominant, scaled dominant) with constructive witnesses either way.
//! - [`exactlp`]: a certificate-producing rational simplex solver.
//! - [`circuitcert`]: nonnegative circuits and sums of them.
//! - [`cubecert`]: juntas, pseudoexpectations, and level-bounded solving
//!   over the 0/1 cube.
//! - [`hierarchy`]: certificate containers for the four proof styles,
//!   the exact verifier, conversions, and stock witness families.
//! - [`cli`]: the command surface behind the `certlab` binary.
//!
//! The `examples/` directory is the guided tour: each example is a runnable
//! walkthrough of one capability.

pub mod budget;
pub mod circuitcert;
pub mod cli;
pub mod cubecert;
pub mod exactlp;
pub mod hierarchy;
pub mod linalg;
pub mod matrixkit;
pub mod polycore;
pub mod polytope;
pub mod ratio;

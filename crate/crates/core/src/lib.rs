//! Exact solutions and entanglement analysis for small quantum spin systems.
//!
//! The crate is organized around the models it solves and the tools they share:
//!
//! - [`numerics`]: dense matrices, Hermitian eigensolver, SVD, elliptic
//!   integrals, least-squares fits, hypergeometric probabilities.
//! - [`freefermion`]: the XY family (Ising/XX included) via Jordan-Wigner and
//!   Bogoliubov transformations, block correlation kernels and entropies.
//! - [`bethe`]: Bethe-ansatz solution of small XXZ chains.
//! - [`lmg`]: the Lipkin-Meshkov-Glick model in the symmetric (Dicke) sector.
//! - [`entanglement`]: Schmidt decompositions, majorization, doubly stochastic
//!   mode weights and renormalization-flow audits.
//! - [`mpsrg`]: translation-invariant matrix product states, transfer matrices
//!   and exact coarse-graining with its fixed-point classification.
//! - [`spinchain`]: dense 2^N diagonalization oracles shared by the model
//!   modules and the test suites.
//!
//! Entropies are reported in bits (base-2 logarithms) throughout.
//!
//! The crate is `no_std` (with `alloc`); all IO lives in the companion
//! command-line crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bethe;
pub mod entanglement;
pub mod freefermion;
pub mod lmg;
pub mod mpsrg;
pub mod numerics;
pub mod spinchain;

mod scalar;

use core::fmt;

/// Errors shared across the solver modules.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input matrix failed the Hermitian contract.
    NotHermitian { deviation: f64 },
    /// Input contained NaN or infinite entries.
    NonFinite,
    /// Mismatched or invalid dimensions.
    Dimension { expected: usize, found: usize },
    /// Argument outside the mathematical domain of the operation.
    Domain(&'static str),
    /// An iterative solver ran out of iterations.
    NonConvergence { what: &'static str, residual: f64 },
    /// Problem size exceeds the supported desk-scale bounds.
    Resource(&'static str),
    /// An internal consistency check failed; indicates a bug upstream.
    Consistency(&'static str),
    /// Transfer matrix has a degenerate unit eigenvalue; infinite-chain
    /// correlators are ill-defined.
    ClusteringViolation,
    /// A gapless momentum was passed where a finite quasiparticle energy is
    /// required.
    SingularMomentum,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotHermitian { deviation } => {
                write!(f, "matrix is not Hermitian (deviation {deviation:.3e})")
            }
            Error::NonFinite => write!(f, "non-finite entries"),
            Error::Dimension { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::NonConvergence { what, residual } => {
                write!(f, "{what} did not converge (residual {residual:.3e})")
            }
            Error::Resource(what) => write!(f, "problem too large: {what}"),
            Error::Consistency(what) => write!(f, "consistency check failed: {what}"),
            Error::ClusteringViolation => {
                write!(f, "degenerate unit eigenvalue: clustering violated")
            }
            Error::SingularMomentum => write!(f, "gapless momentum: Bogoliubov angle undefined"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;

//! Fast solver for the finite Smoluchowski coagulation equations.
//!
//! The right-hand side of the coagulation system couples every pair of
//! cluster sizes through a rate matrix `K`, so a naive evaluation costs
//! `O(M^2)` per time step. This crate stores `K` in a hierarchical block
//! format instead: the index square is tiled recursively, near-diagonal
//! leaf blocks are kept dense, and every other block is compressed to a
//! low-rank factorization by adaptive cross approximation. With that
//! structure the loss term becomes a sum of small matvecs
//! (`O(R M log M)`) and the gain term a sum of per-block FFT convolutions
//! (`O(R M log^2 M)`), which makes systems with `M = 2^20` equations
//! tractable on a single core.
//!
//! The main entry points:
//!
//! - [`kernels::kernel_by_name`] — the registry of built-in coagulation
//!   kernels (constant, ballistic, flow, baikal, ...).
//! - [`partition::build_partition`] / [`mosaic::build_mosaic`] — tile the
//!   index square and compress the kernel.
//! - [`operators::gain`] / [`operators::loss`] / [`operators::rhs`] — fast
//!   evaluation of the coagulation operator over the compressed kernel.
//! - [`integrate::integrate`] — fixed-step RK4 or adaptive RKF45 time
//!   stepping with per-checkpoint moment diagnostics.
//! - [`oracle`] — direct `O(M^2)` reference operators and the analytic
//!   constant-kernel solution, used for verification.
//!
//! See the `examples/` directory for runnable walkthroughs of each
//! capability and the `smolu` binary for a command-line front end.

use std::fmt;
use std::io;

pub mod aca;
pub mod convolve;
pub mod integrate;
pub mod kernels;
pub mod metrics;
pub mod mosaic;
pub mod operators;
pub mod oracle;
pub mod partition;
pub mod run;

pub use aca::{aca_approximate, BlockGenerator, LowRankFactor};
pub use integrate::{integrate, IntegratorConfig, Mode, State};
pub use kernels::{kernel_by_name, registry_list, KernelSpec};
pub use mosaic::{build_mosaic, MosaicKernel};
pub use partition::{build_partition, Partition, Strategy};

/// Crate-wide error type.
#[derive(Debug)]
pub enum Error {
    /// A size argument was not a power of two or out of range.
    InvalidSize(String),
    /// Kernel evaluated outside its domain (sizes must be >= 1).
    Domain(String),
    /// Kernel name not present in the registry.
    UnknownKernel { name: String, available: Vec<&'static str> },
    /// Unknown or malformed kernel parameter.
    BadParam(String),
    /// Vector length does not match the system size.
    SizeMismatch { expected: usize, got: usize },
    /// Adaptive cross approximation did not converge within the rank cap.
    RankCapExceeded { cap: usize },
    /// A reference oracle was asked for a problem too large to materialize.
    SizeGuard(String),
    /// Non-finite value produced by the right-hand side during integration.
    NonFinite { t: f64, index: usize },
    /// Adaptive step control drove the step below its minimum.
    StepUnderflow { t: f64, dt: f64 },
    /// Invalid run configuration.
    InvalidConfig(String),
    /// Malformed input file (initial condition table, kernel dump).
    Parse(String),
    Io(io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidSize(msg) => write!(f, "invalid size: {msg}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::UnknownKernel { name, available } => {
                write!(f, "unknown kernel '{name}'; available: {}", available.join(", "))
            }
            Error::BadParam(msg) => write!(f, "bad kernel parameter: {msg}"),
            Error::SizeMismatch { expected, got } => {
                write!(f, "size mismatch: expected {expected}, got {got}")
            }
            Error::RankCapExceeded { cap } => {
                write!(f, "cross approximation exceeded rank cap {cap}")
            }
            Error::SizeGuard(msg) => write!(f, "size guard: {msg}"),
            Error::NonFinite { t, index } => {
                write!(f, "non-finite derivative at t = {t}, component {index}")
            }
            Error::StepUnderflow { t, dt } => {
                write!(f, "step size underflow at t = {t} (dt = {dt:.3e})")
            }
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<io::Error> for Error {
    fn from(e: io::Error) -> Self {
        Error::Io(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;

//! Exact-arithmetic toolkit for the polyhedral geometry of Mandelstam
//! kinematic space: zonotopal generalized permutohedra cut out by flags of
//! cumulative inequalities, kinematic associahedra, Catalan tree
//! triangulations of root cones, and the rational-function identities they
//! induce for biadjoint scalar amplitudes.
//!
//! Everything in the core is exact: all quantities are arbitrary-precision
//! rationals, and every identity check compares both sides for literal
//! equality. Floating point appears only in [`amplitudes::alpha_limit_check`].

pub mod amplitudes;
pub mod associahedron;
pub mod checks;
pub mod kinematics;
pub mod laplace;
pub mod linalg;
pub mod plates;
pub mod rational;
pub mod roottrees;
pub mod sampling;
pub mod svg;
pub mod zonotope;

pub use kinematics::{ConstantMatrix, KinematicPoint, NearestNeighborPoint};
pub use rational::{format_rat, parse_rat, rat, rat_int, Rat};

/// JSON schema tag stamped on every exported document.
pub const SCHEMA: &str = "permutokit/1";

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("subset must be nonempty")]
    EmptySubset,
    #[error("subsets must be disjoint")]
    OverlappingSubsets,
    #[error("invalid label {0:?}")]
    InvalidLabel(String),
    #[error("{what} = {value} out of supported range (max {max})")]
    OutOfRange {
        what: &'static str,
        value: usize,
        max: usize,
    },
    #[error("pole encountered: {0}")]
    Pole(String),
    #[error("inconsistent input: {0}")]
    InconsistentInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degenerate system: {0}")]
    DegenerateSystem(String),
}

pub type Result<T> = std::result::Result<T, Error>;

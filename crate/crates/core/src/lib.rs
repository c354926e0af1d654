//! Principal pivoting on P-matrix linear complementarity problems, viewed
//! through the unique-sink orientations (USOs) they induce on the n-cube.
//!
//! The crate is organized bottom-up:
//!
//! - [`cube`]: vertices, coordinate sets, subcubes.
//! - [`exact`]: rationals and fraction-free elimination.
//! - [`lcp`]: instances, bases, matrix classes, principal pivot transforms.
//! - [`uso`]: orientation oracles (P-LCP, Morris transducer, combinators).
//! - [`verify`]: property checkers over materialized orientations.
//! - [`pivot`]: simple and greedy principal pivoting with pluggable rules.
//! - [`gen`]: seeded instance and orientation generators.
//! - [`experiments`]: iteration-count experiments with pass/fail verdicts.
//! - [`cli`]: the `pivotlab` command line, exposed for in-process use.

pub mod cli;
pub mod cube;
pub mod error;
pub mod exact;
pub mod experiments;
pub mod gen;
pub mod lcp;
pub mod pivot;
pub mod uso;
pub mod verify;

pub use cube::{CoordSet, Subcube, Vertex};
pub use error::{Error, Result};
pub use exact::{RatMatrix, RatVector, Rational};
pub use lcp::{Basis, LcpInstance, LcpSolution};
pub use uso::{Orientation, Outmap, Sign, UsoTable};

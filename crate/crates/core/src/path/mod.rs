//! Exact `d^D(1, n)` on weighted paths.

mod block;
mod fastpath;
mod pattern;
mod solver;
mod verify;

pub use block::{solve_block, BlockSolution};
pub use fastpath::{solve_path_fastpath, FastPathCase};
pub use pattern::{enumerate_patterns, pattern_count, BlockDecomposition, PatternIter, ZeroPattern};
pub use solver::{
    potentials_from_z, solve_path, BlockValue, DistanceReport, Method, SolveOptions, Strategy, ViableCandidate,
    MAX_ENUMERATION_ORDER, MAX_ORDER,
};
pub use verify::{verify_candidate, VerificationRecord};

//! Noncommutative (Connes) distance between the endpoints of a weighted path
//! graph, computed exactly, plus numerical cross-checks for arbitrary graphs.
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the aliases below fix
//! `f64`, which is what the command-line tool uses.

pub mod error;
pub mod linalg;
pub mod munu;
pub mod oracle;
pub mod path;
pub mod scalar;

pub use error::{Error, Result};
pub use linalg::{
    commutator_norm, perron_pair, spectral_radius_tridiag, staircase_position, BidiagonalStaircase,
    GraphDiracOperator, PerronPair, SymTridiagonal,
};
pub use munu::{bilinear_identity_residual, build_munu, truncated_munu, MuNu, PathDiracOperator};
pub use oracle::{geodesic, oracle_graph, oracle_path, oracle_path_as_graph, OracleConfig, OracleResult, Reach};
pub use path::{
    enumerate_patterns, pattern_count, potentials_from_z, solve_block, solve_path, solve_path_fastpath,
    verify_candidate, BlockDecomposition, BlockSolution, BlockValue, DistanceReport, FastPathCase, Method,
    SolveOptions, Strategy, VerificationRecord, ViableCandidate, ZeroPattern, MAX_ENUMERATION_ORDER, MAX_ORDER,
};
pub use scalar::Real;

pub type Path = PathDiracOperator<f64>;
pub type Graph = GraphDiracOperator<f64>;
pub type Report = DistanceReport<f64>;
pub type Candidate = ViableCandidate<f64>;
pub type Verification = VerificationRecord<f64>;
pub type Oracle = OracleResult<f64>;
pub type Tridiagonal = SymTridiagonal<f64>;
pub type Staircase = BidiagonalStaircase<f64>;

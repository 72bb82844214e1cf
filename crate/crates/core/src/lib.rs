//! Exact Ehrhart theory for lattice simplices.
//!
//! The crate computes delta-vectors (also called h*-vectors) of integral
//! simplices in two independent ways, evaluates Ehrhart polynomials and their
//! reciprocity, checks the known linear inequalities on delta-vectors, and
//! builds explicit witness simplices for every delta-vector of normalized
//! volume at most 3 in dimension 3 and above.
//!
//! All arithmetic is exact.

pub mod classifier;
pub mod engine;
pub mod error;
pub mod format;
pub mod linalg;
pub mod polytope;
pub mod realizer;

pub use classifier::{
    check_basic, check_hibi, check_lower_bound, check_stanley, enumerate_candidates,
    inequality_report, is_realizable, CandidateDelta, InequalityReport, Verdict,
};
pub use engine::{
    box_points, count_points, delta_from_box, delta_from_counts, delta_star, ehrhart_polynomial,
    evaluate_ehrhart, evaluate_interior, interior_box_points, BoxPoint, DeltaVector,
    DEFAULT_BUDGET,
};
pub use error::{Error, Result};
pub use format::PolytopeFile;
pub use linalg::{
    determinant, smith_normal_form, solve_rational, IntegerMatrix, Rational, SnfDecomposition,
};
pub use polytope::LatticeSimplex;
pub use realizer::{realize, realize_verified, ConstructionPlan, Family};

//! Multi-objective optimization over resource bundles: dominance and
//! filtering, a posteriori front sampling by ray bisection, a priori
//! scalarization, and a massive-MIMO dimensioning model as the built-in
//! case study.
//!
//! All objectives are maximized. With the `parallel` feature (on by default)
//! grid scans and direction sweeps run on the rayon pool whenever the
//! [`Execution`] mode is `Parallel`.

pub mod error;
pub mod exec;
pub mod filter;
pub mod front;
pub mod grid;
mod local;
pub mod mimo;
pub mod moo;
pub mod problems;
pub mod refine;
pub mod sampler;
pub mod scalar;

pub use error::{MooError, Result};
pub use exec::Execution;
pub use filter::{nondominated_flat, nondominated_indices, pareto_filter};
pub use front::{export_front, import_front_json, BoundaryKind, ExportFormat, Front, FrontParameters, FrontPoint, Method, SampleError};
pub use grid::{logspace, GridAxis, GridSpec, ResolvedGrid};
pub use mimo::{MimoParams, MimoPoint};
pub use moo::{
    dominates, dominates_slice, eval_goal, normalize_weights, weakly_dominates, GoalKind, GoalSpec, Norm, ObjectiveInfo,
    ObjectiveVector, ProblemBuilder, ProblemDefinition, ResourcePoint,
};
pub use problems::{builtin, builtin_with, Builtin, ProblemSummary, BUILTIN_NAMES};
pub use refine::{apply_refinements, apply_refinements_with, RefinedProblem, Refinement};
pub use sampler::{
    bisect_ray, generate_directions, grid_sample, grid_sample_with, membership_test, sample_front, utopia, utopia_with, Direction,
    RayOutcome, SearchSpace, SweepControl, UtopiaPoint, Witness,
};
pub use scalar::{
    chebyshev_cross_check, scalarize_sweep, scalarize_sweep_with, simplex_weights_2d, solve_scalarized, solve_scalarized_with,
    ChebyshevCheck, ScalarDiagnostics, ScalarOptions, ScalarSolution,
};

//! Built-in problems and their default search grids.

use serde::{Deserialize, Serialize};

use crate::error::{MooError, Result};
use crate::grid::{GridAxis, GridSpec};
use crate::mimo::{self, MimoParams};
use crate::moo::ProblemDefinition;

pub const TOY_SIMPLEX: &str = "toy_simplex";

/// Names of the built-in problems, sorted.
pub const BUILTIN_NAMES: [&str; 2] = [mimo::PROBLEM_NAME, TOY_SIMPLEX];

/// Power grid resolution of the default MIMO search grid.
pub const MIMO_POWER_POINTS: usize = 200;

/// `X = {x ∈ [0,1]² : x1 + x2 ≤ 1}`, `g(x) = x`. Membership is answered
/// exactly: `μ` is attainable iff `Σ max(μ_m, 0) ≤ 1`.
pub fn toy_simplex() -> ProblemDefinition {
    ProblemDefinition::builder(TOY_SIMPLEX)
        .dimension(0.0, 1.0, false)
        .dimension(0.0, 1.0, false)
        .objective("x_1", "")
        .objective("x_2", "")
        .constraint("x_1 + x_2 <= 1", |x| x[0] + x[1] <= 1.0)
        .evaluator(|x, out| out.copy_from_slice(x))
        .origin(vec![0.0, 0.0])
        .exact_membership(|mu| {
            let x: Vec<f64> = mu.iter().map(|&m| m.max(0.0)).collect();
            (x.iter().all(|&v| v <= 1.0) && x[0] + x[1] <= 1.0).then_some(x)
        })
        .build()
        .expect("toy simplex is well formed")
}

pub fn toy_simplex_grid() -> GridSpec {
    GridSpec::uniform(2, 101)
}

/// A built-in problem with its default search grid.
#[derive(Debug, Clone)]
pub struct Builtin {
    pub problem: ProblemDefinition,
    pub grid: GridSpec,
}

pub fn builtin(name: &str) -> Result<Builtin> {
    builtin_with(name, &MimoParams::default())
}

/// Like [`builtin`], with model parameters for the MIMO problem.
pub fn builtin_with(name: &str, params: &MimoParams) -> Result<Builtin> {
    match name {
        mimo::PROBLEM_NAME => Ok(Builtin {
            problem: mimo::as_problem(params)?,
            grid: mimo::search_grid(params, MIMO_POWER_POINTS),
        }),
        TOY_SIMPLEX => Ok(Builtin { problem: toy_simplex(), grid: toy_simplex_grid() }),
        other => Err(MooError::InvalidProblem(format!("unknown problem `{other}`"))),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveSummary {
    pub name: String,
    pub unit: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemSummary {
    pub name: String,
    #[serde(rename = "D")]
    pub d: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub objectives: Vec<ObjectiveSummary>,
    /// `[lower, upper]` per resource dimension.
    #[serde(rename = "box")]
    pub bounds: Vec<[f64; 2]>,
    pub integral: Vec<bool>,
    pub default_grid: GridSpec,
}

impl ProblemSummary {
    pub fn of(problem: &ProblemDefinition, grid: &GridSpec) -> Self {
        Self {
            name: problem.name().to_string(),
            d: problem.dimension(),
            m: problem.objective_count(),
            objectives: problem
                .objectives()
                .iter()
                .map(|o| ObjectiveSummary { name: o.name.clone(), unit: o.unit.clone() })
                .collect(),
            bounds: problem.lower().iter().zip(problem.upper()).map(|(&l, &u)| [l, u]).collect(),
            integral: problem.integral().to_vec(),
            default_grid: grid.clone(),
        }
    }
}

pub fn summaries() -> Vec<ProblemSummary> {
    BUILTIN_NAMES
        .iter()
        .map(|n| {
            let b = builtin(n).expect("built-in");
            ProblemSummary::of(&b.problem, &b.grid)
        })
        .collect()
}

/// Explicit axis values for a grid resolved against `problem`.
pub fn explicit_grid(problem: &ProblemDefinition, grid: &GridSpec) -> Result<GridSpec> {
    let resolved = grid.resolve(problem)?;
    Ok(GridSpec::new((0..resolved.dimension()).map(|d| GridAxis::Values(resolved.axis(d).to_vec())).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_sorted() {
        let mut sorted = BUILTIN_NAMES;
        sorted.sort();
        assert_eq!(sorted, BUILTIN_NAMES);
        assert_eq!(BUILTIN_NAMES, ["mimo_case_study", "toy_simplex"]);
    }

    #[test]
    fn toy_oracle() {
        let p = toy_simplex();
        let oracle = p.exact_membership().unwrap();
        assert_eq!(oracle(&[0.3, 0.3]), Some(vec![0.3, 0.3]));
        assert_eq!(oracle(&[0.6, 0.6]), None);
        assert_eq!(oracle(&[-1.0, 0.5]), Some(vec![0.0, 0.5]));
        assert_eq!(oracle(&[1.5, -1.0]), None);
    }

    #[test]
    fn unknown_problem() {
        assert!(matches!(builtin("nope"), Err(MooError::InvalidProblem(_))));
    }

    #[test]
    fn summary_shape() {
        let s = summaries();
        assert_eq!(s[0].d, 3);
        assert_eq!(s[0].m, 3);
        assert_eq!(s[0].bounds[0], [1.0, 250.0]);
        assert_eq!(s[1].objectives[1].name, "x_2");
        let json = serde_json::to_value(&s[1]).unwrap();
        assert!(json.get("box").is_some() && json.get("D").is_some());
    }
}

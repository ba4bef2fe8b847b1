//! Shrinking the resource bundle: tightened bounds and objective floors.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{MooError, Result};
use crate::exec::Execution;
use crate::grid::{GridAxis, GridSpec};
use crate::moo::{Constraint, ProblemDefinition};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Refinement {
    /// New box bounds for one resource dimension; omitted ends are kept.
    Bound {
        dimension: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lower: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        upper: Option<f64>,
    },
    /// `g_objective(x) ≥ value`, in objective units.
    Floor { objective: usize, value: f64 },
}

impl Refinement {
    fn validate(&self, problem: &ProblemDefinition) -> Result<()> {
        match *self {
            Refinement::Bound { dimension, lower, upper } => {
                if dimension >= problem.dimension() {
                    return Err(MooError::InvalidRefinement(format!(
                        "dimension {dimension} out of range (D = {})",
                        problem.dimension()
                    )));
                }
                if lower.is_none() && upper.is_none() {
                    return Err(MooError::InvalidRefinement("bound refinement sets neither end".into()));
                }
                let (lo, hi) = (problem.lower()[dimension], problem.upper()[dimension]);
                for v in [lower, upper].into_iter().flatten() {
                    if !v.is_finite() || v < lo || v > hi {
                        return Err(MooError::InvalidRefinement(format!(
                            "bound {v} on dimension {dimension} outside the original box [{lo}, {hi}]"
                        )));
                    }
                }
            }
            Refinement::Floor { objective, value } => {
                if objective >= problem.objective_count() {
                    return Err(MooError::InvalidRefinement(format!(
                        "objective {objective} out of range (M = {})",
                        problem.objective_count()
                    )));
                }
                if !(value.is_finite() && value >= 0.0) {
                    return Err(MooError::InvalidRefinement(format!("floor must be finite and nonnegative, got {value}")));
                }
            }
        }
        Ok(())
    }
}

/// The refined problem and the base search grid restricted to its box.
#[derive(Debug, Clone)]
pub struct RefinedProblem {
    pub problem: ProblemDefinition,
    pub grid: GridSpec,
}

/// Applies `refinements` in order. Bounds only ever tighten; floors become
/// predicates. The search grid keeps the base grid's values inside the new
/// box, so the refined search space is a subset of the original one. Fails
/// with `OverConstrained` when no feasible point remains on the grid and the
/// origin is excluded.
pub fn apply_refinements(problem: &ProblemDefinition, refinements: &[Refinement], search: &GridSpec) -> Result<RefinedProblem> {
    apply_refinements_with(problem, refinements, search, Execution::default())
}

pub fn apply_refinements_with(
    problem: &ProblemDefinition,
    refinements: &[Refinement],
    search: &GridSpec,
    exec: Execution,
) -> Result<RefinedProblem> {
    let base_grid = search.resolve(problem)?;
    if refinements.is_empty() {
        return Ok(RefinedProblem { problem: problem.clone(), grid: search.clone() });
    }
    let mut lower = problem.lower().to_vec();
    let mut upper = problem.upper().to_vec();
    let mut floors = vec![0.0f64; problem.objective_count()];
    let mut has_floor = vec![false; problem.objective_count()];
    for r in refinements {
        r.validate(problem)?;
        match *r {
            Refinement::Bound { dimension, lower: lo, upper: hi } => {
                if let Some(lo) = lo {
                    lower[dimension] = lower[dimension].max(lo);
                }
                if let Some(hi) = hi {
                    upper[dimension] = upper[dimension].min(hi);
                }
            }
            Refinement::Floor { objective, value } => {
                floors[objective] = floors[objective].max(value);
                has_floor[objective] = true;
            }
        }
    }
    if let Some(d) = (0..lower.len()).find(|&d| lower[d] > upper[d]) {
        return Err(MooError::OverConstrained(format!("dimension {d}: lower {} > upper {}", lower[d], upper[d])));
    }

    let mut extra = Vec::new();
    let active: Vec<(usize, f64)> = (0..floors.len()).filter(|&m| has_floor[m]).map(|m| (m, floors[m])).collect();
    if !active.is_empty() {
        let name = active.iter().map(|(m, v)| format!("g_{} >= {v}", m + 1)).collect::<Vec<_>>().join(", ");
        let base = problem.clone();
        let m = problem.objective_count();
        extra.push(Constraint {
            name,
            predicate: Arc::new(move |x: &[f64]| {
                let mut g = vec![0.0; m];
                base.evaluate_into(x, &mut g);
                active.iter().all(|&(i, v)| g[i] >= v)
            }),
        });
    }
    let derived = problem.restricted(lower.clone(), upper.clone(), extra);

    let axes: Vec<Vec<f64>> = (0..base_grid.dimension())
        .map(|d| base_grid.axis(d).iter().copied().filter(|&v| v >= lower[d] && v <= upper[d]).collect())
        .collect();
    if let Some(d) = axes.iter().position(|a| a.is_empty()) {
        return Err(MooError::OverConstrained(format!("no search grid value left on dimension {d}")));
    }
    let grid = GridSpec::new(axes.into_iter().map(GridAxis::Values).collect());

    if !derived.origin_feasible() {
        let resolved = grid.resolve(&derived)?;
        let any = exec.position_first(resolved.len(), |i| {
            let x = resolved.point(i);
            derived.satisfies_predicates(&x)
        });
        if any.is_none() {
            return Err(MooError::OverConstrained("no feasible point remains on the search grid".into()));
        }
    }
    Ok(RefinedProblem { problem: derived, grid })
}

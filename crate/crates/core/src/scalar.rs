//! A priori method: maximize a goal function of the objectives over the
//! resource bundle.
//!
//! The solver scans the whole search grid (ties go to the lowest grid index,
//! i.e. the lexicographically smallest `x`) and then refines the incumbent on
//! the continuous dimensions. The returned value is a lower bound on the true
//! optimum.

use serde::{Deserialize, Serialize};

use crate::error::{MooError, Result};
use crate::exec::Execution;
use crate::front::{BoundaryKind, Front, FrontParameters, FrontPoint, Method, SampleError};
use crate::grid::GridSpec;
use crate::local::refine_local;
use crate::moo::{dominates_slice, GoalKind, GoalSpec, ObjectiveVector, ProblemDefinition};
use crate::sampler::{Direction, SearchSpace};

const BLOCK: usize = 1 << 15;

/// Default bracket width for the Chebyshev cross-check.
pub const CROSS_CHECK_EPS: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalarSolution {
    pub x_star: Vec<f64>,
    pub g_star: ObjectiveVector,
    pub value: f64,
    pub goal: GoalSpec,
    pub diagnostics: ScalarDiagnostics,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalarDiagnostics {
    pub grid_size: usize,
    pub feasible_points: usize,
    pub refine_levels: usize,
    /// Goal value of the best grid point before refinement.
    pub grid_value: f64,
    pub refine_evaluations: usize,
    /// Every feasible grid point has some zero objective; the returned point
    /// maximizes the number of nonzero objectives instead.
    pub degenerate_product: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chebyshev_check: Option<ChebyshevCheck>,
}

/// Agreement between the Chebyshev optimum and bisection along `v = w`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChebyshevCheck {
    pub bisect_lambda: f64,
    pub eps: f64,
    /// `|λ_bisect − f*|·‖w‖`
    pub gap: f64,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalarOptions {
    pub refine_levels: usize,
    pub exec: Execution,
    /// Run the bisection cross-check for Chebyshev goals with this bracket.
    pub cross_check_eps: Option<f64>,
}

impl Default for ScalarOptions {
    fn default() -> Self {
        Self { refine_levels: 0, exec: Execution::default(), cross_check_eps: Some(CROSS_CHECK_EPS) }
    }
}

pub fn solve_scalarized(problem: &ProblemDefinition, goal: &GoalSpec, search: &GridSpec, refine_levels: usize) -> Result<ScalarSolution> {
    solve_scalarized_with(problem, goal, search, &ScalarOptions { refine_levels, ..ScalarOptions::default() })
}

#[derive(Debug, Clone, Copy)]
struct Best {
    value: f64,
    idx: usize,
    nonzero: usize,
    nonzero_idx: usize,
    feasible: usize,
}

impl Best {
    const EMPTY: Best = Best { value: f64::NEG_INFINITY, idx: usize::MAX, nonzero: 0, nonzero_idx: usize::MAX, feasible: 0 };

    fn merge(a: Best, b: Best) -> Best {
        let (value, idx) = if b.value > a.value || (b.value == a.value && b.idx < a.idx) { (b.value, b.idx) } else { (a.value, a.idx) };
        let (nonzero, nonzero_idx) = if b.nonzero > a.nonzero || (b.nonzero == a.nonzero && b.nonzero_idx < a.nonzero_idx) {
            (b.nonzero, b.nonzero_idx)
        } else {
            (a.nonzero, a.nonzero_idx)
        };
        Best { value, idx, nonzero, nonzero_idx, feasible: a.feasible + b.feasible }
    }
}

pub fn solve_scalarized_with(problem: &ProblemDefinition, goal: &GoalSpec, search: &GridSpec, opts: &ScalarOptions) -> Result<ScalarSolution> {
    let m = problem.objective_count();
    goal.validate(Some(m))?;
    let grid = search.resolve(problem)?;
    if grid.is_empty() {
        return Err(MooError::EmptyGrid);
    }
    let best = opts
        .exec
        .fold_blocks(
            grid.len(),
            BLOCK,
            |range| {
                let mut b = Best::EMPTY;
                let mut x = vec![0.0; problem.dimension()];
                let mut g = vec![0.0; m];
                for idx in range {
                    grid.point_into(idx, &mut x);
                    if !problem.satisfies_predicates(&x) {
                        continue;
                    }
                    problem.evaluate_into(&x, &mut g);
                    b.feasible += 1;
                    let v = goal.value(&g);
                    if v > b.value {
                        b.value = v;
                        b.idx = idx;
                    }
                    if goal.kind == GoalKind::Product {
                        let nz = g.iter().filter(|&&v| v != 0.0).count();
                        if nz > b.nonzero || b.nonzero_idx == usize::MAX {
                            b.nonzero = nz;
                            b.nonzero_idx = idx;
                        }
                    }
                }
                b
            },
            Best::merge,
        )
        .unwrap_or(Best::EMPTY);
    if best.feasible == 0 {
        return Err(MooError::AllInfeasible(grid.len()));
    }
    if best.value.is_nan() {
        return Err(MooError::NotANumber);
    }
    let degenerate = goal.kind == GoalKind::Product && best.value == 0.0;
    let start = if degenerate { best.nonzero_idx } else { best.idx };
    let x0 = grid.point(start);
    let g0 = problem.evaluate(&x0);
    let grid_value = goal.value(&g0);
    let levels = if degenerate { 0 } else { opts.refine_levels };
    let refined = refine_local(problem, &grid, x0, g0, levels, |g| goal.value(g));

    let chebyshev_check = match (goal.kind, opts.cross_check_eps) {
        (GoalKind::Chebyshev, Some(eps)) => {
            let space = SearchSpace::build(problem, search, opts.exec)?.with_refinement(opts.refine_levels);
            Some(chebyshev_cross_check(&space, &goal.weights, refined.score, eps)?)
        }
        _ => None,
    };
    Ok(ScalarSolution {
        x_star: refined.x,
        g_star: ObjectiveVector { values: refined.g, units: problem.units() },
        value: refined.score,
        goal: goal.clone(),
        diagnostics: ScalarDiagnostics {
            grid_size: grid.len(),
            feasible_points: best.feasible,
            refine_levels: levels,
            grid_value,
            refine_evaluations: refined.evaluations,
            degenerate_product: degenerate,
            chebyshev_check,
        },
    })
}

/// Bisects along `v = w` and compares the ray scale with the Chebyshev
/// optimum `chebyshev_value = min_m g*_m / w_m`.
pub fn chebyshev_cross_check(space: &SearchSpace, weights: &[f64], chebyshev_value: f64, eps: f64) -> Result<ChebyshevCheck> {
    let v = Direction::new(weights.to_vec())?;
    let lambda_max = space.lambda_max(&v)?;
    let out = space.bisect(&v, eps, lambda_max)?;
    let gap = (out.lambda - chebyshev_value).abs() * v.norm();
    Ok(ChebyshevCheck { bisect_lambda: out.lambda, eps, gap, agrees: gap <= eps * v.norm() })
}

/// One scalarization per weight vector, merged into a front. Points with the
/// same objective vector are kept once, with every weight that produced them.
pub fn scalarize_sweep(problem: &ProblemDefinition, kind: GoalKind, weight_grid: &[Vec<f64>], search: &GridSpec) -> Result<Front> {
    scalarize_sweep_with(problem, kind, weight_grid, search, &ScalarOptions { cross_check_eps: None, ..ScalarOptions::default() })
}

pub fn scalarize_sweep_with(
    problem: &ProblemDefinition,
    kind: GoalKind,
    weight_grid: &[Vec<f64>],
    search: &GridSpec,
    opts: &ScalarOptions,
) -> Result<Front> {
    if kind == GoalKind::Distance {
        return Err(MooError::InvalidGoal("weight sweeps need a weighted goal kind".into()));
    }
    if weight_grid.is_empty() {
        return Err(MooError::EmptyInput);
    }
    let goals = weight_grid
        .iter()
        .map(|w| {
            let total: f64 = w.iter().sum();
            if (total - 1.0).abs() > 1e-9 {
                return Err(MooError::InvalidGoal(format!("sweep weights must lie on the simplex, sum is {total}")));
            }
            GoalSpec::weighted(kind, w.clone())
        })
        .collect::<Result<Vec<_>>>()?;
    let space = SearchSpace::build(problem, search, opts.exec)?;
    let inner = ScalarOptions { exec: Execution::Sequential, cross_check_eps: None, ..opts.clone() };
    let solutions = opts.exec.map_range(goals.len(), |i| solve_scalarized_with(problem, &goals[i], search, &inner));

    let mut front = Front::new(problem.name(), Method::Scalarization, problem.dimension(), problem.objective_count());
    front.parameters = Some(FrontParameters::Weights { goal: kind, count: goals.len() });
    for (i, s) in solutions.into_iter().enumerate() {
        let s = match s {
            Ok(s) => s,
            Err(e) => {
                front.errors.push(SampleError { index: i, message: e.to_string() });
                continue;
            }
        };
        if let Some(p) = front.points.iter_mut().find(|p| p.g == s.g_star.values) {
            p.weights.push(weight_grid[i].clone());
            continue;
        }
        front.points.push(FrontPoint {
            x: s.x_star,
            g: s.g_star.values,
            lambda: None,
            direction: None,
            boundary_kind: BoundaryKind::Weak,
            weights: vec![weight_grid[i].clone()],
        });
    }
    let kinds: Vec<BoundaryKind> = front
        .points
        .iter()
        .map(|p| {
            let by_grid = space.nondominated().any(|(_, g)| dominates_slice(g, &p.g));
            let by_sweep = front.points.iter().any(|q| dominates_slice(&q.g, &p.g));
            if by_grid || by_sweep {
                BoundaryKind::Weak
            } else {
                BoundaryKind::StrongCertified
            }
        })
        .collect();
    for (p, k) in front.points.iter_mut().zip(kinds) {
        p.boundary_kind = k;
    }
    Ok(front)
}

/// `count` evenly spaced weight vectors on the 2-simplex, excluding the
/// vertices (weights must stay positive).
pub fn simplex_weights_2d(count: usize) -> Vec<Vec<f64>> {
    (1..=count)
        .map(|i| {
            let t = i as f64 / (count + 1) as f64;
            vec![t, 1.0 - t]
        })
        .collect()
}

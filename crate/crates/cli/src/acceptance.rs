//! The acceptance suite behind `paretoscope verify`: each check recomputes a
//! reference result from scratch and reports pass or fail with its numbers.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::time::Instant;

use paretoscope_core::mimo::{self, MimoParams, MimoPoint};
use paretoscope_core::problems::{toy_simplex, toy_simplex_grid, MIMO_POWER_POINTS};
use paretoscope_core::{
    apply_refinements, chebyshev_cross_check, dominates_slice, nondominated_indices, pareto_filter, solve_scalarized_with,
    BoundaryKind, Direction, Execution, Front, GoalSpec, GridSpec, ObjectiveVector, ProblemDefinition, Refinement,
    ResourcePoint, ScalarOptions, SearchSpace, SweepControl,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Reference operating point of maximal energy efficiency, in bit/s/user and bit/J.
pub const REFERENCE_MAX_EE_RATE: f64 = 20.4e6;
pub const REFERENCE_MAX_EE: f64 = 11.1e6;
pub const MAX_EE_TOLERANCE: f64 = 0.5;
/// Deviation above which the parameter sensitivity table is reported.
pub const SENSITIVITY_THRESHOLD: f64 = 0.1;
/// Refinement levels for the continuous power after the grid scan.
pub const MAX_EE_REFINE_LEVELS: usize = 20;
/// Single-threaded time budget for one max-EE solve.
pub const MAX_EE_SECONDS: f64 = 60.0;

/// Share of the maximal EE kept at the maximal area-rate point of the
/// `(g2, g3)` front, as measured on the default model and grid. The area
/// rate saturates in `P`, so its maximum sits at `P = N·P_max` where the EE
/// has collapsed; see [`KNOWN_DEVIATIONS`].
pub const GOLDEN_RETAINED_EE: f64 = 0.063_417;
pub const GOLDEN_TOLERANCE: f64 = 0.02;
pub const MIN_RETAINED_EE: f64 = 0.5;

/// Relative area-rate losses at which the retained EE is also reported.
pub const NEAR_MAX_AREA_RATE: [f64; 3] = [1e-6, 1e-5, 1e-4];

/// Criteria that fail on the reference model for a documented reason.
pub const KNOWN_DEVIATIONS: [&str; 1] = ["area_rate_ee_retention"];

/// Solver refinement for the toy problem, whose bisection uses the exact oracle.
pub const TOY_REFINE_LEVELS: usize = 40;

pub const SHAPE_DIRECTIONS: usize = 64;
pub const SWEEP_EPS: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct Criterion {
    pub name: &'static str,
    pub passed: bool,
    /// One-line summary of the measured values.
    pub summary: String,
    /// Extra lines such as a sensitivity table.
    pub details: Vec<String>,
    pub seconds: f64,
}

impl Criterion {
    pub fn known_deviation(&self) -> bool {
        KNOWN_DEVIATIONS.contains(&self.name)
    }

    pub fn line(&self) -> String {
        let status = match (self.passed, self.known_deviation()) {
            (true, _) => "PASS",
            (false, false) => "FAIL",
            (false, true) => "FAIL*",
        };
        format!("[{status:<5}] {:<28} {} ({:.2} s)", self.name, self.summary, self.seconds)
    }
}

/// Shared inputs: the default MIMO model on its full search grid.
pub struct Context {
    pub params: MimoParams,
    pub problem: ProblemDefinition,
    pub grid: GridSpec,
    pub exec: Execution,
}

impl Context {
    pub fn new(params: MimoParams, exec: Execution) -> paretoscope_core::Result<Self> {
        let problem = mimo::as_problem(&params)?;
        let grid = mimo::search_grid(&params, MIMO_POWER_POINTS);
        Ok(Self { params, problem, grid, exec })
    }

    fn space(&self, problem: &ProblemDefinition) -> paretoscope_core::Result<SearchSpace> {
        SearchSpace::build(problem, &self.grid, self.exec)
    }
}

impl Default for Context {
    fn default() -> Self {
        Self::new(MimoParams::default(), Execution::default()).expect("default model is valid")
    }
}

pub type Check = fn(&Context) -> Criterion;

pub const CHECKS: [(&str, Check); 9] = [
    ("max_ee_operating_point", max_ee_operating_point),
    ("area_rate_identity", area_rate_identity),
    ("utopia_infeasible", utopia_infeasible),
    ("toy_bisection", toy_bisection),
    ("filter_oracle", filter_oracle),
    ("rate_ee_unimodal", rate_ee_unimodal),
    ("area_rate_ee_retention", area_rate_ee_retention),
    ("chebyshev_cross_check", chebyshev_agreement),
    ("refinement_monotone", refinement_monotone),
];

pub fn run_all(ctx: &Context, mut report: impl FnMut(&Criterion)) -> Vec<Criterion> {
    CHECKS
        .iter()
        .map(|(_, check)| {
            let c = check(ctx);
            report(&c);
            c
        })
        .collect()
}

fn timed(name: &'static str, f: impl FnOnce() -> Result<(bool, String, Vec<String>), String>) -> Criterion {
    let start = Instant::now();
    let (passed, summary, details) = f().unwrap_or_else(|e| (false, format!("error: {e}"), Vec::new()));
    Criterion { name, passed, summary, details, seconds: start.elapsed().as_secs_f64() }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Maximal-EE point of a model, with its full objective vector.
pub fn max_ee_point(params: &MimoParams, grid: &GridSpec) -> paretoscope_core::Result<(Vec<f64>, [f64; 3])> {
    let problem = mimo::as_problem(params)?.project(&[2])?;
    let opts = ScalarOptions { refine_levels: MAX_EE_REFINE_LEVELS, exec: Execution::Sequential, cross_check_eps: None };
    let sol = solve_scalarized_with(&problem, &GoalSpec::sum(vec![1.0])?, grid, &opts)?;
    let g = mimo::objectives(&MimoPoint::from_slice(&sol.x_star), params)?;
    Ok((sol.x_star, g))
}

fn deviation(value: f64, reference: f64) -> f64 {
    (value - reference) / reference
}

pub fn max_ee_operating_point(ctx: &Context) -> Criterion {
    timed("max_ee_operating_point", || {
        let start = Instant::now();
        let (x, g) = max_ee_point(&ctx.params, &ctx.grid).map_err(err)?;
        let solve_seconds = start.elapsed().as_secs_f64();
        let (d1, d3) = (deviation(g[0], REFERENCE_MAX_EE_RATE), deviation(g[2], REFERENCE_MAX_EE));
        let passed = d1.abs() <= MAX_EE_TOLERANCE && d3.abs() <= MAX_EE_TOLERANCE && solve_seconds < MAX_EE_SECONDS;
        let summary = format!(
            "K={} N={} P={:.4} W: g1={:.2} Mbit/s/user ({:+.1}%), g3={:.2} Mbit/J ({:+.1}%), solved in {solve_seconds:.2} s",
            x[0],
            x[1],
            x[2],
            g[0] / 1e6,
            d1 * 100.0,
            g[2] / 1e6,
            d3 * 100.0
        );
        let mut details = Vec::new();
        if d1.abs() > SENSITIVITY_THRESHOLD || d3.abs() > SENSITIVITY_THRESHOLD {
            details.push(format!("{:>8} {:>6} {:>6} | {:>4} {:>4} {:>10} | {:>8} {:>8}", "T", "eta", "C_N", "K", "N", "P [W]", "g1", "g3"));
            let p = &ctx.params;
            for t in [p.Upsilon, p.Upsilon / 2.0] {
                for (eta, c_n) in [(0.31, 1.0), (0.31, 0.5), (0.5, 1.0)] {
                    let q = MimoParams { T: t, eta, C_N: c_n, ..p.clone() };
                    let (x, g) = max_ee_point(&q, &ctx.grid).map_err(err)?;
                    details.push(format!(
                        "{t:>8} {eta:>6} {c_n:>6} | {:>4} {:>4} {:>10.4} | {:>8.2} {:>8.2}",
                        x[0],
                        x[1],
                        x[2],
                        g[0] / 1e6,
                        g[2] / 1e6
                    ));
                }
            }
        }
        Ok((passed, summary, details))
    })
}

/// Uniform feasible point of the default bundle.
pub fn random_mimo_point(rng: &mut impl Rng, params: &MimoParams) -> MimoPoint {
    loop {
        let n = rng.gen_range(2..=params.N_max as usize) as f64;
        let k = rng.gen_range(1..=(n as usize / 2)) as f64;
        let p = rng.gen_range(0.0..=n * params.P_max);
        let pt = MimoPoint::new(k, n, p);
        if pt.validate(params).is_ok() {
            return pt;
        }
    }
}

pub fn area_rate_identity(ctx: &Context) -> Criterion {
    timed("area_rate_identity", || {
        let mut rng = StdRng::seed_from_u64(0x6d69_6d6f);
        let total = 100_000;
        let mut mismatches = 0;
        for _ in 0..total {
            let pt = random_mimo_point(&mut rng, &ctx.params);
            let g = mimo::objectives(&pt, &ctx.params).map_err(err)?;
            if g[1].to_bits() != ((pt.k / ctx.params.A) * g[0]).to_bits() {
                mismatches += 1;
            }
        }
        Ok((mismatches == 0, format!("{mismatches} of {total} random points differ from (K/A)·g1"), Vec::new()))
    })
}

pub fn utopia_infeasible(ctx: &Context) -> Criterion {
    timed("utopia_infeasible", || {
        let space = ctx.space(&ctx.problem).map_err(err)?;
        let u = space.utopia_values().to_vec();
        let at_utopia = space.membership(&u).map_err(err)?.is_some();
        let front = space.sample_front(16, SWEEP_EPS).map_err(err)?;
        let certified: Vec<_> = front.points.iter().filter(|p| p.boundary_kind == BoundaryKind::StrongCertified).collect();
        let mut missing = 0;
        for p in &certified {
            let mu: Vec<f64> = p.ray_point().unwrap_or_default().iter().map(|v| 0.99 * v).collect();
            if space.membership(&mu).map_err(err)?.is_none() {
                missing += 1;
            }
        }
        let passed = !at_utopia && missing == 0 && !certified.is_empty();
        let summary = format!(
            "utopia {}; 0.99·λv attainable for {} of {} certified points",
            if at_utopia { "attainable" } else { "not attainable" },
            certified.len() - missing,
            certified.len()
        );
        Ok((passed, summary, Vec::new()))
    })
}

pub fn toy_bisection(_: &Context) -> Criterion {
    timed("toy_bisection", || {
        let space = SearchSpace::new(&toy_simplex(), &toy_simplex_grid()).map_err(err)?;
        let (mut worst, mut wrong_counts) = (0.0f64, 0);
        let dirs = space.scaled_directions(SHAPE_DIRECTIONS).map_err(err)?;
        for v in &dirs {
            let lm = space.lambda_max(v).map_err(err)?;
            let out = space.bisect(v, SWEEP_EPS, lm).map_err(err)?;
            let s: f64 = v.as_slice().iter().sum();
            worst = worst.max((out.lambda * s - 1.0).abs());
            let expected = (lm / SWEEP_EPS).log2().ceil() as usize + 1;
            if out.iterations != expected {
                wrong_counts += 1;
            }
        }
        let passed = worst <= 2e-6 && wrong_counts == 0;
        let summary = format!("max |λ(v1+v2) − 1| = {worst:.2e} over {} directions; {wrong_counts} iteration-count mismatches", dirs.len());
        Ok((passed, summary, Vec::new()))
    })
}

/// Pairwise reference: a point survives iff nothing strictly dominates it.
pub fn brute_force_nondominated(points: &[Vec<f64>]) -> Vec<usize> {
    (0..points.len()).filter(|&i| !points.iter().any(|q| dominates_slice(q, &points[i]))).collect()
}

pub fn filter_oracle(_: &Context) -> Criterion {
    timed("filter_oracle", || {
        let mut rng = StdRng::seed_from_u64(0x6669_6c74);
        let instances = 200;
        let mut discrepancies = 0;
        for i in 0..instances {
            let m = 2 + i % 2;
            let n = rng.gen_range(1..=1000);
            // Every third instance uses few distinct values to force ties.
            let levels = if i % 3 == 0 { Some(rng.gen_range(2..8)) } else { None };
            let points: Vec<Vec<f64>> = (0..n)
                .map(|_| {
                    (0..m)
                        .map(|_| match levels {
                            Some(l) => rng.gen_range(0..l) as f64,
                            None => rng.gen_range(0.0..1.0),
                        })
                        .collect()
                })
                .collect();
            let expected = brute_force_nondominated(&points);
            let fast = nondominated_indices(&points).map_err(err)?;
            let pairs: Vec<_> = points
                .iter()
                .enumerate()
                .map(|(j, g)| (ResourcePoint(vec![j as f64]), ObjectiveVector::unitless(g.clone())))
                .collect();
            let kept: Vec<usize> = pareto_filter(&pairs).map_err(err)?.iter().map(|(x, _)| x.0[0] as usize).collect();
            if fast != expected || kept != expected {
                discrepancies += 1;
            }
        }
        Ok((discrepancies == 0, format!("{discrepancies} discrepancies over {instances} instances"), Vec::new()))
    })
}

/// Front points sorted by the first objective of a two-objective sweep.
fn sweep_2d(ctx: &Context, selection: &[usize]) -> Result<(SearchSpace, Front), String> {
    let problem = ctx.problem.project(selection).map_err(err)?;
    let space = ctx.space(&problem).map_err(err)?;
    let front = space.sample_front(SHAPE_DIRECTIONS, SWEEP_EPS).map_err(err)?;
    if !front.errors.is_empty() {
        return Err(format!("{} directions failed: {}", front.errors.len(), front.errors[0].message));
    }
    Ok((space, front))
}

/// Rises to a single maximum and then falls, allowing wiggles up to `tol`.
pub fn is_unimodal(values: &[f64], tol: f64) -> bool {
    let Some(peak) = (0..values.len()).max_by(|&a, &b| values[a].total_cmp(&values[b])) else {
        return true;
    };
    values[..=peak].windows(2).all(|w| w[1] >= w[0] - tol) && values[peak..].windows(2).all(|w| w[1] <= w[0] + tol)
}

pub fn rate_ee_unimodal(ctx: &Context) -> Criterion {
    timed("rate_ee_unimodal", || {
        let (space, front) = sweep_2d(ctx, &[0, 2])?;
        let mut rays: Vec<Vec<f64>> = front.points.iter().filter_map(|p| p.ray_point()).collect();
        rays.sort_by(|a, b| a[0].total_cmp(&b[0]));
        let g3: Vec<f64> = rays.iter().map(|r| r[1]).collect();
        let tol = 2.0 * SWEEP_EPS * space.utopia_values()[1];
        let peak = rays.iter().max_by(|a, b| a[1].total_cmp(&b[1])).cloned().unwrap_or_default();
        let passed = rays.len() == SHAPE_DIRECTIONS && is_unimodal(&g3, tol);
        let summary = format!(
            "{} ray points, g3 peaks at {:.2} Mbit/J for g1 = {:.2} Mbit/s/user",
            rays.len(),
            peak.get(1).copied().unwrap_or(0.0) / 1e6,
            peak.first().copied().unwrap_or(0.0) / 1e6
        );
        Ok((passed, summary, Vec::new()))
    })
}

/// `g3` at the maximal-`g2` front point over the largest `g3` on the front.
pub fn retained_ee(front: &Front) -> Option<f64> {
    retained_ee_near_max(front, 0.0)
}

/// Largest `g3` among front points within `loss` (relative) of the maximal
/// `g2`, over the largest `g3` on the front.
pub fn retained_ee_near_max(front: &Front, loss: f64) -> Option<f64> {
    let max_area = front.points.iter().map(|p| p.g[0]).fold(f64::NEG_INFINITY, f64::max);
    let max_ee = front.points.iter().map(|p| p.g[1]).fold(f64::NEG_INFINITY, f64::max);
    let best = front.points.iter().filter(|p| p.g[0] >= max_area * (1.0 - loss)).map(|p| p.g[1]).fold(f64::NEG_INFINITY, f64::max);
    (best.is_finite() && max_ee > 0.0).then(|| best / max_ee)
}

pub fn area_rate_ee_retention(ctx: &Context) -> Criterion {
    timed("area_rate_ee_retention", || {
        let (_, front) = sweep_2d(ctx, &[1, 2])?;
        let r = retained_ee(&front).ok_or("empty front")?;
        let drift = deviation(r, GOLDEN_RETAINED_EE);
        let passed = r >= MIN_RETAINED_EE && drift.abs() <= GOLDEN_TOLERANCE;
        let summary = format!(
            "retained EE fraction {r:.6} (needs >= {MIN_RETAINED_EE}; golden {GOLDEN_RETAINED_EE}, {:+.2}%)",
            drift * 100.0
        );
        let mut details = Vec::new();
        for loss in NEAR_MAX_AREA_RATE {
            if let Some(near) = retained_ee_near_max(&front, loss) {
                details.push(format!("giving up {loss:.0e} of the maximal g2 keeps {near:.4} of the maximal g3"));
            }
        }
        Ok((passed, summary, details))
    })
}

/// Chebyshev optimum against bisection along `v = w` for random weights.
/// With `refine_levels = 0` both sides search the same grid; an exact
/// membership oracle needs the solver refined to the same precision.
fn cross_check(
    problem: &ProblemDefinition,
    grid: &GridSpec,
    exec: Execution,
    seed: u64,
    scaled: bool,
    refine_levels: usize,
) -> Result<(usize, f64), String> {
    let space = SearchSpace::build(problem, grid, exec).map_err(err)?;
    let u = space.utopia_values().to_vec();
    let opts = ScalarOptions { refine_levels, exec, cross_check_eps: None };
    let mut rng = StdRng::seed_from_u64(seed);
    let (mut failures, mut worst) = (0, 0.0f64);
    for _ in 0..16 {
        let w: Vec<f64> = u.iter().map(|&ui| rng.gen_range(0.05..1.0) * if scaled { ui } else { 1.0 }).collect();
        let sol = solve_scalarized_with(problem, &GoalSpec::chebyshev(w.clone()).map_err(err)?, grid, &opts).map_err(err)?;
        let check = chebyshev_cross_check(&space, &w, sol.value, SWEEP_EPS).map_err(err)?;
        worst = worst.max(check.gap / Direction::new(w).map_err(err)?.norm());
        if !check.agrees {
            failures += 1;
        }
    }
    Ok((failures, worst))
}

pub fn chebyshev_agreement(ctx: &Context) -> Criterion {
    timed("chebyshev_cross_check", || {
        let (toy_fail, toy_gap) = cross_check(&toy_simplex(), &toy_simplex_grid(), ctx.exec, 0x7479, false, TOY_REFINE_LEVELS)?;
        let (mimo_fail, mimo_gap) = cross_check(&ctx.problem, &ctx.grid, ctx.exec, 0x6d6d, true, 0)?;
        let summary = format!(
            "disagreements: toy {toy_fail}/16 (max gap {toy_gap:.1e}·‖w‖), MIMO {mimo_fail}/16 (max gap {mimo_gap:.1e}·‖w‖)"
        );
        Ok((toy_fail == 0 && mimo_fail == 0, summary, Vec::new()))
    })
}

/// Five nested refinements of the MIMO bundle, each adding one condition.
pub fn nested_refinements() -> Vec<Vec<Refinement>> {
    let steps = [
        Refinement::Floor { objective: 2, value: 2e6 },
        Refinement::Bound { dimension: 1, lower: None, upper: Some(400.0) },
        Refinement::Floor { objective: 0, value: 5e6 },
        Refinement::Bound { dimension: 0, lower: Some(5.0), upper: Some(150.0) },
        Refinement::Floor { objective: 2, value: 5e6 },
    ];
    (1..=steps.len()).map(|n| steps[..n].to_vec()).collect()
}

pub fn refinement_monotone(ctx: &Context) -> Criterion {
    timed("refinement_monotone", || {
        let base = ctx.space(&ctx.problem).map_err(err)?;
        let sweep = |space: &SearchSpace| -> Result<Vec<f64>, String> {
            let front = space.sample_front_in(&base, 8, SWEEP_EPS, SweepControl::default()).map_err(err)?;
            if let Some(e) = front.errors.first() {
                return Err(format!("direction {}: {}", e.index, e.message));
            }
            Ok(front.points.iter().map(|p| p.lambda.unwrap_or(f64::NAN)).collect())
        };
        let mut levels = vec![sweep(&base)?];
        for refs in nested_refinements() {
            let r = apply_refinements(&ctx.problem, &refs, &ctx.grid).map_err(err)?;
            let space = SearchSpace::build(&r.problem, &r.grid, ctx.exec).map_err(err)?;
            levels.push(sweep(&space)?);
        }
        let mut violations = 0;
        for pair in levels.windows(2) {
            violations += pair[0].iter().zip(&pair[1]).filter(|(a, b)| !matches!(b.partial_cmp(a), Some(Ordering::Less | Ordering::Equal))).count();
        }
        let mut summary = format!("{violations} increases over 8 directions × 5 nested refinements; mean λ per level:");
        for l in &levels {
            let _ = write!(summary, " {:.4}", l.iter().sum::<f64>() / l.len() as f64);
        }
        Ok((violations == 0, summary, Vec::new()))
    })
}

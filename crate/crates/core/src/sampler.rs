//! A posteriori sampling of the attainable objective set.
//!
//! Two strategies: [`grid_sample`] evaluates the objectives over a grid of the
//! resource bundle and filters the cloud; [`SearchSpace::sample_front`] walks
//! rays from the origin and bisects each one with a membership test.
//!
//! Membership uses the dominated-region form: `μ` is attainable iff some
//! feasible `x` has `g(x) ≥ μ` componentwise. A problem may supply an exact
//! oracle; otherwise the test scans the grid (through its non-dominated
//! subset, which answers the same question) and optionally refines locally.

use std::f64::consts::FRAC_PI_2;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{MooError, Result};
use crate::exec::Execution;
use crate::filter::nondominated_flat;
use crate::front::{BoundaryKind, Front, FrontParameters, FrontPoint, Method, SampleError};
use crate::grid::{GridSpec, ResolvedGrid};
use crate::local::refine_local;
use crate::moo::{dominates_slice, weakly_dominates, ObjectiveVector, ProblemDefinition};

/// Slack on the utopia-derived upper end of the bisection range.
pub const LAMBDA_MAX_SLACK: f64 = 0.01;

const BLOCK: usize = 1 << 15;

/// A nonnegative search direction in objective space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Direction(Vec<f64>);

impl Direction {
    pub fn new(v: Vec<f64>) -> Result<Self> {
        if v.iter().any(|c| !c.is_finite() || *c < 0.0) {
            return Err(MooError::InvalidDirection(format!("components must be finite and nonnegative: {v:?}")));
        }
        if !v.iter().any(|&c| c > 0.0) {
            return Err(MooError::InvalidDirection("at least one component must be positive".into()));
        }
        Ok(Self(v))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Componentwise product with `scale`.
    pub fn scaled(&self, scale: &[f64]) -> Result<Self> {
        Self::new(self.0.iter().zip(scale).map(|(a, b)| a * b).collect())
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

/// `count` unit directions in the nonnegative orthant.
///
/// `M = 2`: angles `i·(π/2)/(count+1)`, `i = 1..=count`, strictly inside the
/// quadrant. `M = 3`: a golden-angle spiral over the positive octant with
/// area-uniform polar spacing. `M = 1` has the single direction `(1)`.
pub fn generate_directions(m: usize, count: usize) -> Result<Vec<Direction>> {
    if count == 0 {
        return Err(MooError::InvalidDirection("direction count must be at least 1".into()));
    }
    match m {
        1 => Ok(vec![Direction(vec![1.0])]),
        2 => Ok((1..=count)
            .map(|i| {
                let theta = FRAC_PI_2 * i as f64 / (count + 1) as f64;
                Direction(vec![theta.cos(), theta.sin()])
            })
            .collect()),
        3 => {
            let golden = (5f64.sqrt() - 1.0) / 2.0;
            Ok((0..count)
                .map(|i| {
                    let z = 1.0 - (i as f64 + 0.5) / count as f64;
                    let r = (1.0 - z * z).sqrt();
                    let phi = FRAC_PI_2 * ((i as f64 + 0.5) * golden).fract();
                    Direction(vec![r * phi.cos(), r * phi.sin(), z])
                })
                .collect())
        }
        other => Err(MooError::UnsupportedObjectiveCount(other)),
    }
}

/// Per-component maxima over a search grid, with the first grid point
/// attaining each.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UtopiaPoint {
    pub point: ObjectiveVector,
    pub witnesses: Vec<Vec<f64>>,
}

/// Component `m` is the maximum of `g_m` over the feasible grid points.
pub fn utopia(problem: &ProblemDefinition, search: &GridSpec) -> Result<UtopiaPoint> {
    utopia_with(problem, search, Execution::default())
}

pub fn utopia_with(problem: &ProblemDefinition, search: &GridSpec, exec: Execution) -> Result<UtopiaPoint> {
    let grid = search.resolve(problem)?;
    if grid.is_empty() {
        return Err(MooError::EmptyGrid);
    }
    let m = problem.objective_count();
    let best = exec
        .fold_blocks(
            grid.len(),
            BLOCK,
            |range| {
                let mut acc = MaxAcc::new(m);
                let mut x = vec![0.0; problem.dimension()];
                let mut g = vec![0.0; m];
                for idx in range {
                    grid.point_into(idx, &mut x);
                    if problem.satisfies_predicates(&x) {
                        problem.evaluate_into(&x, &mut g);
                        acc.push(idx, &g);
                    }
                }
                acc
            },
            MaxAcc::merge,
        )
        .expect("non-empty grid");
    if best.feasible == 0 {
        return Err(MooError::AllInfeasible(grid.len()));
    }
    Ok(UtopiaPoint {
        point: ObjectiveVector { values: best.max, units: problem.units() },
        witnesses: best.arg.iter().map(|&i| grid.point(i)).collect(),
    })
}

#[derive(Debug, Clone)]
struct MaxAcc {
    max: Vec<f64>,
    arg: Vec<usize>,
    feasible: usize,
}

impl MaxAcc {
    fn new(m: usize) -> Self {
        Self { max: vec![f64::NEG_INFINITY; m], arg: vec![usize::MAX; m], feasible: 0 }
    }

    fn push(&mut self, idx: usize, g: &[f64]) {
        self.feasible += 1;
        for (k, &v) in g.iter().enumerate() {
            if v > self.max[k] || (v == self.max[k] && idx < self.arg[k]) {
                self.max[k] = v;
                self.arg[k] = idx;
            }
        }
    }

    fn merge(mut a: Self, b: Self) -> Self {
        a.feasible += b.feasible;
        for k in 0..a.max.len() {
            if b.max[k] > a.max[k] || (b.max[k] == a.max[k] && b.arg[k] < a.arg[k]) {
                a.max[k] = b.max[k];
                a.arg[k] = b.arg[k];
            }
        }
        a
    }
}

/// Traverses the grid: every feasible point becomes a front point, marked
/// `weak` if no other evaluated point dominates it and `interior` otherwise.
pub fn grid_sample(problem: &ProblemDefinition, grid: &GridSpec) -> Result<Front> {
    grid_sample_with(problem, grid, Execution::default())
}

pub fn grid_sample_with(problem: &ProblemDefinition, spec: &GridSpec, exec: Execution) -> Result<Front> {
    let grid = spec.resolve(problem)?;
    if grid.is_empty() {
        return Err(MooError::EmptyGrid);
    }
    let (d, m) = (problem.dimension(), problem.objective_count());
    let blocks = exec.map_range(grid.len().div_ceil(BLOCK), |b| {
        let mut xs = Vec::new();
        let mut gs = Vec::new();
        let mut x = vec![0.0; d];
        let mut g = vec![0.0; m];
        for idx in b * BLOCK..((b + 1) * BLOCK).min(grid.len()) {
            grid.point_into(idx, &mut x);
            if problem.satisfies_predicates(&x) {
                problem.evaluate_into(&x, &mut g);
                xs.extend_from_slice(&x);
                gs.extend_from_slice(&g);
            }
        }
        (xs, gs)
    });
    let (mut xs, mut gs) = (Vec::new(), Vec::new());
    for (bx, bg) in blocks {
        xs.extend(bx);
        gs.extend(bg);
    }
    let n = gs.len() / m;
    if n == 0 {
        return Err(MooError::AllInfeasible(grid.len()));
    }
    let survivors = nondominated_flat(&gs, m)?;
    let mut kind = vec![BoundaryKind::Interior; n];
    for i in survivors {
        kind[i] = BoundaryKind::Weak;
    }
    let mut front = Front::new(problem.name(), Method::Grid, d, m);
    front.parameters = Some(FrontParameters::Grid { grid: spec.clone() });
    front.points = (0..n)
        .map(|i| FrontPoint {
            x: xs[i * d..(i + 1) * d].to_vec(),
            g: gs[i * m..(i + 1) * m].to_vec(),
            lambda: None,
            direction: None,
            boundary_kind: kind[i],
            weights: Vec::new(),
        })
        .collect();
    Ok(front)
}

/// Resource point and its objective vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub x: Vec<f64>,
    pub g: Vec<f64>,
}

/// Result of one ray bisection.
#[derive(Debug, Clone, PartialEq)]
pub struct RayOutcome {
    /// Largest tested attainable scale; `λ·v` is attained by `witness`.
    pub lambda: f64,
    /// Smallest tested unattainable scale; `lambda_upper − lambda ≤ eps`.
    pub lambda_upper: f64,
    /// Membership tests performed, including the check at `lambda_max`.
    pub iterations: usize,
    pub witness: Witness,
}

/// Progress and cancellation hooks for long sweeps.
#[derive(Default, Clone, Copy)]
pub struct SweepControl<'a> {
    /// Called with `(completed, total)` after each direction.
    pub progress: Option<&'a (dyn Fn(usize, usize) + Sync)>,
    pub cancel: Option<&'a AtomicBool>,
}

impl SweepControl<'_> {
    fn cancelled(&self) -> bool {
        self.cancel.is_some_and(|c| c.load(Ordering::Relaxed))
    }
}

/// A problem bound to a search grid, with the grid's non-dominated subset
/// precomputed for membership tests.
#[derive(Clone)]
pub struct SearchSpace {
    problem: ProblemDefinition,
    spec: GridSpec,
    grid: ResolvedGrid,
    exec: Execution,
    refine_levels: usize,
    feasible: usize,
    utopia: Vec<f64>,
    utopia_witness: Vec<usize>,
    scale: Vec<f64>,
    /// Non-dominated grid points, ordered by decreasing `Σ g_m / scale_m`
    /// and then by grid index.
    xs: Vec<f64>,
    gs: Vec<f64>,
}

impl std::fmt::Debug for SearchSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SearchSpace")
            .field("problem", &self.problem.name())
            .field("grid_len", &self.grid.len())
            .field("feasible", &self.feasible)
            .field("nondominated", &self.cache_len())
            .field("utopia", &self.utopia)
            .finish_non_exhaustive()
    }
}

impl SearchSpace {
    pub fn new(problem: &ProblemDefinition, search: &GridSpec) -> Result<Self> {
        Self::build(problem, search, Execution::default())
    }

    pub fn build(problem: &ProblemDefinition, search: &GridSpec, exec: Execution) -> Result<Self> {
        let grid = search.resolve(problem)?;
        if grid.is_empty() {
            return Err(MooError::EmptyGrid);
        }
        let (d, m) = (problem.dimension(), problem.objective_count());
        let blocks = exec.map_range(grid.len().div_ceil(BLOCK), |b| -> Result<(Vec<usize>, Vec<f64>, MaxAcc)> {
            let mut idxs = Vec::new();
            let mut gs = Vec::new();
            let mut acc = MaxAcc::new(m);
            let mut x = vec![0.0; d];
            let mut g = vec![0.0; m];
            for idx in b * BLOCK..((b + 1) * BLOCK).min(grid.len()) {
                grid.point_into(idx, &mut x);
                if problem.satisfies_predicates(&x) {
                    problem.evaluate_into(&x, &mut g);
                    acc.push(idx, &g);
                    idxs.push(idx);
                    gs.extend_from_slice(&g);
                }
            }
            let keep = nondominated_flat(&gs, m)?;
            let kg = keep.iter().flat_map(|&i| gs[i * m..(i + 1) * m].iter().copied()).collect();
            Ok((keep.iter().map(|&i| idxs[i]).collect(), kg, acc))
        });
        let mut idxs = Vec::new();
        let mut gs = Vec::new();
        let mut acc = MaxAcc::new(m);
        for block in blocks {
            let (bi, bg, ba) = block?;
            idxs.extend(bi);
            gs.extend(bg);
            acc = MaxAcc::merge(acc, ba);
        }
        if acc.feasible == 0 {
            return Err(MooError::AllInfeasible(grid.len()));
        }
        let keep = nondominated_flat(&gs, m)?;
        let scale: Vec<f64> = acc.max.iter().map(|&u| if u > 0.0 { u } else { 1.0 }).collect();
        let key = |i: usize| gs[i * m..(i + 1) * m].iter().zip(&scale).map(|(g, s)| g / s).sum::<f64>();
        let mut order: Vec<(f64, usize)> = keep.iter().map(|&i| (key(i), i)).collect();
        order.sort_by(|a, b| b.0.total_cmp(&a.0).then(idxs[a.1].cmp(&idxs[b.1])));
        let mut cx = Vec::with_capacity(order.len() * d);
        let mut cg = Vec::with_capacity(order.len() * m);
        for &(_, i) in &order {
            cx.extend(grid.point(idxs[i]));
            cg.extend_from_slice(&gs[i * m..(i + 1) * m]);
        }
        Ok(Self {
            problem: problem.clone(),
            spec: search.clone(),
            grid,
            exec,
            refine_levels: 0,
            feasible: acc.feasible,
            utopia: acc.max,
            utopia_witness: acc.arg,
            scale,
            xs: cx,
            gs: cg,
        })
    }

    /// Enables local refinement of the best candidate when the grid scan
    /// finds no witness.
    pub fn with_refinement(mut self, levels: usize) -> Self {
        self.refine_levels = levels;
        self
    }

    pub fn with_execution(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }

    pub fn problem(&self) -> &ProblemDefinition {
        &self.problem
    }

    pub fn grid_spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn grid(&self) -> &ResolvedGrid {
        &self.grid
    }

    pub fn feasible_points(&self) -> usize {
        self.feasible
    }

    /// Size of the non-dominated subset of the feasible grid.
    pub fn cache_len(&self) -> usize {
        self.gs.len() / self.problem.objective_count()
    }

    pub fn nondominated(&self) -> impl Iterator<Item = (&[f64], &[f64])> {
        let (d, m) = (self.problem.dimension(), self.problem.objective_count());
        self.xs.chunks_exact(d).zip(self.gs.chunks_exact(m))
    }

    pub fn utopia(&self) -> UtopiaPoint {
        UtopiaPoint {
            point: ObjectiveVector { values: self.utopia.clone(), units: self.problem.units() },
            witnesses: self.utopia_witness.iter().map(|&i| self.grid.point(i)).collect(),
        }
    }

    pub fn utopia_values(&self) -> &[f64] {
        &self.utopia
    }

    fn cached(&self, i: usize) -> Witness {
        let (d, m) = (self.problem.dimension(), self.problem.objective_count());
        Witness { x: self.xs[i * d..(i + 1) * d].to_vec(), g: self.gs[i * m..(i + 1) * m].to_vec() }
    }

    fn cached_g(&self, i: usize) -> &[f64] {
        let m = self.problem.objective_count();
        &self.gs[i * m..(i + 1) * m]
    }

    /// Some feasible `x` with `g(x) ≥ μ`, if the search discretization (or
    /// the problem's exact oracle) has one.
    pub fn membership(&self, mu: &[f64]) -> Result<Option<Witness>> {
        self.membership_in(mu, self.exec)
    }

    /// `scan` runs the cache scan; sweeps that already spread directions
    /// over the pool pass `Sequential` to avoid nested parallelism.
    fn membership_in(&self, mu: &[f64], scan: Execution) -> Result<Option<Witness>> {
        let m = self.problem.objective_count();
        if mu.len() != m {
            return Err(MooError::DimensionMismatch { expected: m, actual: mu.len() });
        }
        if mu.iter().any(|v| v.is_nan()) {
            return Err(MooError::NotANumber);
        }
        if self.problem.origin_feasible() && mu.iter().all(|&v| v <= 0.0) {
            let x = self.problem.origin().to_vec();
            let g = self.problem.evaluate(&x);
            return Ok(Some(Witness { x, g }));
        }
        if let Some(oracle) = self.problem.exact_membership() {
            return Ok(oracle(mu).map(|x| {
                let g = self.problem.evaluate(&x);
                Witness { x, g }
            }));
        }
        let n = self.cache_len();
        if let Some(i) = scan.position_first(n, |i| weakly_dominates(self.cached_g(i), mu)) {
            return Ok(Some(self.cached(i)));
        }
        if self.refine_levels == 0 {
            return Ok(None);
        }
        let ratio = |g: &[f64]| {
            g.iter()
                .zip(mu)
                .filter(|(_, &u)| u > 0.0)
                .map(|(g, u)| g / u)
                .fold(f64::INFINITY, f64::min)
        };
        let best = (0..n)
            .map(|i| (ratio(self.cached_g(i)), i))
            .fold(None, |acc: Option<(f64, usize)>, c| match acc {
                Some(a) if a.0 >= c.0 => Some(a),
                _ => Some(c),
            });
        let Some((_, i)) = best else { return Ok(None) };
        let start = self.cached(i);
        let refined = refine_local(&self.problem, &self.grid, start.x, start.g, self.refine_levels, ratio);
        Ok(weakly_dominates(&refined.g, mu).then_some(Witness { x: refined.x, g: refined.g }))
    }

    /// Initial upper end of the bisection range along `v`:
    /// `(1 + δ)·min_m u_m / v_m`, doubled while still attainable (possible
    /// only when refinement or an exact oracle exceeds the grid utopia).
    pub fn lambda_max(&self, v: &Direction) -> Result<f64> {
        self.lambda_max_in(v, self.exec)
    }

    fn lambda_max_in(&self, v: &Direction, scan: Execution) -> Result<f64> {
        let mut lam = (1.0 + LAMBDA_MAX_SLACK)
            * v.as_slice()
                .iter()
                .zip(&self.utopia)
                .filter(|(&vi, _)| vi > 0.0)
                .map(|(vi, u)| u / vi)
                .fold(f64::INFINITY, f64::min);
        if lam <= 0.0 {
            // Some objective is identically zero on the grid.
            lam = f64::MIN_POSITIVE;
        }
        for _ in 0..64 {
            let mu: Vec<f64> = v.as_slice().iter().map(|vi| lam * vi).collect();
            if self.membership_in(&mu, scan)?.is_none() {
                return Ok(lam);
            }
            lam *= 2.0;
        }
        Err(MooError::LambdaMaxTooSmall(lam))
    }

    /// Bisection over `[0, lambda_max]` along `v` until the bracket is at
    /// most `eps` wide.
    pub fn bisect(&self, v: &Direction, eps: f64, lambda_max: f64) -> Result<RayOutcome> {
        self.bisect_in(v, eps, lambda_max, self.exec)
    }

    fn bisect_in(&self, v: &Direction, eps: f64, lambda_max: f64, scan: Execution) -> Result<RayOutcome> {
        let m = self.problem.objective_count();
        if v.len() != m {
            return Err(MooError::DimensionMismatch { expected: m, actual: v.len() });
        }
        if !(eps.is_finite() && eps > 0.0) {
            return Err(MooError::InvalidTolerance(eps));
        }
        if !lambda_max.is_finite() {
            return Err(MooError::InvalidDirection(format!("lambda_max must be finite, got {lambda_max}")));
        }
        let mu = |l: f64| -> Vec<f64> { v.as_slice().iter().map(|vi| l * vi).collect() };
        if self.membership_in(&mu(lambda_max), scan)?.is_some() {
            return Err(MooError::LambdaMaxTooSmall(lambda_max));
        }
        let mut iterations = 1;
        let (mut lo, mut hi) = (0.0f64, lambda_max);
        let mut witness = None;
        while hi - lo > eps {
            let mid = (lo + hi) / 2.0;
            iterations += 1;
            match self.membership_in(&mu(mid), scan)? {
                Some(w) => {
                    lo = mid;
                    witness = Some(w);
                }
                None => hi = mid,
            }
        }
        let witness = match witness {
            Some(w) => w,
            None => self.membership_in(&mu(0.0), scan)?.ok_or(MooError::AllInfeasible(self.grid.len()))?,
        };
        Ok(RayOutcome { lambda: lo, lambda_upper: hi, iterations, witness })
    }

    /// Front point for one ray, tagged `weak` until certified.
    pub fn bisect_ray(&self, v: &Direction, eps: f64, lambda_max: f64) -> Result<FrontPoint> {
        self.bisect_ray_in(v, eps, lambda_max, self.exec)
    }

    fn bisect_ray_in(&self, v: &Direction, eps: f64, lambda_max: f64, scan: Execution) -> Result<FrontPoint> {
        let out = self.bisect_in(v, eps, lambda_max, scan)?;
        Ok(FrontPoint {
            x: out.witness.x,
            g: out.witness.g,
            lambda: Some(out.lambda),
            direction: Some(v.as_slice().to_vec()),
            boundary_kind: BoundaryKind::Weak,
            weights: Vec::new(),
        })
    }

    /// Directions scaled componentwise by the utopia point, so the sweep is
    /// equally spaced in normalized objective space.
    pub fn scaled_directions(&self, count: usize) -> Result<Vec<Direction>> {
        generate_directions(self.problem.objective_count(), count)?
            .into_iter()
            .map(|d| d.scaled(&self.scale))
            .collect()
    }

    pub fn sample_front(&self, count: usize, eps: f64) -> Result<Front> {
        self.sample_front_with(count, eps, SweepControl::default())
    }

    /// One bisection per direction (in parallel), then the strong
    /// certification pass. Failed directions are recorded in `errors`.
    pub fn sample_front_with(&self, count: usize, eps: f64, control: SweepControl<'_>) -> Result<Front> {
        self.sample_front_in(self, count, eps, control)
    }

    /// Sweep whose directions and bisection upper ends come from `frame`,
    /// typically the unrefined problem. Since a refinement only shrinks the
    /// feasible set, rays match one to one across refinement levels and
    /// each `λ` can only shrink.
    pub fn sample_front_in(&self, frame: &SearchSpace, count: usize, eps: f64, control: SweepControl<'_>) -> Result<Front> {
        if !(eps.is_finite() && eps > 0.0) {
            return Err(MooError::InvalidTolerance(eps));
        }
        let m = self.problem.objective_count();
        if frame.problem.objective_count() != m {
            return Err(MooError::DimensionMismatch { expected: m, actual: frame.problem.objective_count() });
        }
        let dirs = frame.scaled_directions(count)?;
        let total = dirs.len();
        let scan = if total > 1 { Execution::Sequential } else { self.exec };
        let done = AtomicUsize::new(0);
        let results = self.exec.map_range(total, |i| {
            if control.cancelled() {
                return Err(MooError::Cancelled);
            }
            let out = frame.lambda_max_in(&dirs[i], scan).and_then(|lm| self.bisect_ray_in(&dirs[i], eps, lm, scan));
            let n = done.fetch_add(1, Ordering::Relaxed) + 1;
            if let Some(p) = control.progress {
                p(n, total);
            }
            out
        });
        if control.cancelled() {
            return Err(MooError::Cancelled);
        }
        let mut front = Front::new(self.problem.name(), Method::DirectionSearch, self.problem.dimension(), self.problem.objective_count());
        front.eps = Some(eps);
        front.parameters = Some(FrontParameters::Directions { count });
        for (i, r) in results.into_iter().enumerate() {
            match r {
                Ok(p) => front.points.push(p),
                Err(e) => front.errors.push(SampleError { index: i, message: e.to_string() }),
            }
        }
        self.certify(&mut front.points);
        Ok(front)
    }

    /// Tags each ray point `strong_certified` iff no other point of the run
    /// dominates it and maximizing `Σ g_m / u_m` over `{g ≥ λ·v}` returns
    /// its own objective vector; `weak` otherwise.
    pub fn certify(&self, points: &mut [FrontPoint]) {
        let kinds: Vec<BoundaryKind> = self.exec.map_range(points.len(), |i| {
            let p = &points[i];
            if points.iter().enumerate().any(|(j, q)| j != i && dominates_slice(&q.g, &p.g)) {
                return BoundaryKind::Weak;
            }
            let Some(floor) = p.ray_point() else {
                return BoundaryKind::Weak;
            };
            let best = self.augmented_resolve(&floor, &p.g);
            if best == p.g {
                BoundaryKind::StrongCertified
            } else {
                BoundaryKind::Weak
            }
        });
        for (p, k) in points.iter_mut().zip(kinds) {
            p.boundary_kind = k;
        }
    }

    /// Objective vector maximizing `Σ g_m / scale_m` among the grid's
    /// non-dominated points and `incumbent` with `g ≥ floor`.
    fn augmented_resolve(&self, floor: &[f64], incumbent: &[f64]) -> Vec<f64> {
        let key = |g: &[f64]| g.iter().zip(&self.scale).map(|(g, s)| g / s).sum::<f64>();
        let mut best = incumbent.to_vec();
        let mut best_key = key(incumbent);
        for i in 0..self.cache_len() {
            let g = self.cached_g(i);
            if weakly_dominates(g, floor) {
                let k = key(g);
                if k > best_key {
                    best_key = k;
                    best = g.to_vec();
                }
            }
        }
        best
    }
}

/// Membership test over a search grid.
pub fn membership_test(problem: &ProblemDefinition, mu: &ObjectiveVector, search: &GridSpec) -> Result<Option<Vec<f64>>> {
    Ok(SearchSpace::new(problem, search)?.membership(mu.as_slice())?.map(|w| w.x))
}

/// Bisection along `v` with an explicit upper end.
pub fn bisect_ray(problem: &ProblemDefinition, v: &Direction, eps: f64, lambda_max: f64, search: &GridSpec) -> Result<FrontPoint> {
    SearchSpace::new(problem, search)?.bisect_ray(v, eps, lambda_max)
}

/// Direction sweep with `count` utopia-scaled directions.
pub fn sample_front(problem: &ProblemDefinition, count: usize, eps: f64, search: &GridSpec) -> Result<Front> {
    SearchSpace::new(problem, search)?.sample_front(count, eps)
}

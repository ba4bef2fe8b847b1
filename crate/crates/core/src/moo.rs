//! Problems, objective vectors, dominance and goal functions.
//!
//! All objectives are maximized. A problem owns a compact box-shaped resource
//! bundle (optionally cut by named predicates and integrality), a vector-valued
//! evaluator, and a designated origin resource point whose objective vector is
//! all zeros.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{MooError, Result};

/// Writes all `M` objective values of `x` into `out`.
pub type EvalFn = dyn Fn(&[f64], &mut [f64]) + Send + Sync;
pub type PredicateFn = dyn Fn(&[f64]) -> bool + Send + Sync;
/// Problem-specific attainability oracle: returns a witness resource point
/// whose objective vector dominates-or-equals the query, if one exists.
pub type MembershipFn = dyn Fn(&[f64]) -> Option<Vec<f64>> + Send + Sync;

#[derive(Clone)]
pub struct Constraint {
    pub name: String,
    pub predicate: Arc<PredicateFn>,
}

impl fmt::Debug for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Constraint").field("name", &self.name).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectiveInfo {
    pub name: String,
    pub unit: String,
}

impl ObjectiveInfo {
    pub fn new(name: impl Into<String>, unit: impl Into<String>) -> Self {
        Self { name: name.into(), unit: unit.into() }
    }
}

/// A point `g ∈ R^M` together with per-objective unit labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveVector {
    pub values: Vec<f64>,
    pub units: Vec<String>,
}

impl ObjectiveVector {
    pub fn new(values: Vec<f64>, units: Vec<String>) -> Result<Self> {
        if values.len() != units.len() {
            return Err(MooError::DimensionMismatch { expected: values.len(), actual: units.len() });
        }
        if values.iter().any(|v| v.is_nan()) {
            return Err(MooError::NotANumber);
        }
        Ok(Self { values, units })
    }

    /// Vector without unit labels (all empty).
    pub fn unitless(values: Vec<f64>) -> Self {
        let units = vec![String::new(); values.len()];
        Self { values, units }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }
}

impl AsRef<[f64]> for ObjectiveVector {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ResourcePoint(pub Vec<f64>);

impl ResourcePoint {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// A resource bundle plus `M` objectives.
#[derive(Clone)]
pub struct ProblemDefinition {
    name: String,
    lower: Vec<f64>,
    upper: Vec<f64>,
    integral: Vec<bool>,
    constraints: Vec<Constraint>,
    objectives: Vec<ObjectiveInfo>,
    evaluator: Arc<EvalFn>,
    origin: Vec<f64>,
    origin_feasible: bool,
    exact_membership: Option<Arc<MembershipFn>>,
}

impl fmt::Debug for ProblemDefinition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemDefinition")
            .field("name", &self.name)
            .field("lower", &self.lower)
            .field("upper", &self.upper)
            .field("integral", &self.integral)
            .field("constraints", &self.constraints)
            .field("objectives", &self.objectives)
            .field("origin", &self.origin)
            .finish_non_exhaustive()
    }
}

pub struct ProblemBuilder {
    name: String,
    lower: Vec<f64>,
    upper: Vec<f64>,
    integral: Vec<bool>,
    constraints: Vec<Constraint>,
    objectives: Vec<ObjectiveInfo>,
    evaluator: Option<Arc<EvalFn>>,
    origin: Option<Vec<f64>>,
    exact_membership: Option<Arc<MembershipFn>>,
}

impl ProblemBuilder {
    /// Appends a resource dimension with bounds `[lower, upper]`.
    pub fn dimension(mut self, lower: f64, upper: f64, integral: bool) -> Self {
        self.lower.push(lower);
        self.upper.push(upper);
        self.integral.push(integral);
        self
    }

    pub fn objective(mut self, name: impl Into<String>, unit: impl Into<String>) -> Self {
        self.objectives.push(ObjectiveInfo::new(name, unit));
        self
    }

    pub fn constraint<F>(mut self, name: impl Into<String>, predicate: F) -> Self
    where
        F: Fn(&[f64]) -> bool + Send + Sync + 'static,
    {
        self.constraints.push(Constraint { name: name.into(), predicate: Arc::new(predicate) });
        self
    }

    pub fn evaluator<F>(mut self, f: F) -> Self
    where
        F: Fn(&[f64], &mut [f64]) + Send + Sync + 'static,
    {
        self.evaluator = Some(Arc::new(f));
        self
    }

    pub fn origin(mut self, x0: Vec<f64>) -> Self {
        self.origin = Some(x0);
        self
    }

    pub fn exact_membership<F>(mut self, f: F) -> Self
    where
        F: Fn(&[f64]) -> Option<Vec<f64>> + Send + Sync + 'static,
    {
        self.exact_membership = Some(Arc::new(f));
        self
    }

    pub fn build(self) -> Result<ProblemDefinition> {
        let d = self.lower.len();
        if d == 0 {
            return Err(MooError::InvalidProblem("resource dimension must be positive".into()));
        }
        if self.objectives.is_empty() {
            return Err(MooError::InvalidProblem("at least one objective is required".into()));
        }
        for i in 0..d {
            let (lo, hi) = (self.lower[i], self.upper[i]);
            if !lo.is_finite() || !hi.is_finite() {
                return Err(MooError::InvalidProblem(format!("dimension {i} has a non-finite bound")));
            }
            if lo > hi {
                return Err(MooError::InvalidProblem(format!("dimension {i}: lower {lo} > upper {hi}")));
            }
        }
        let evaluator = self
            .evaluator
            .ok_or_else(|| MooError::InvalidProblem("missing objective evaluator".into()))?;
        let origin = self
            .origin
            .ok_or_else(|| MooError::InvalidProblem("missing origin point".into()))?;
        if origin.len() != d {
            return Err(MooError::DimensionMismatch { expected: d, actual: origin.len() });
        }
        let problem = ProblemDefinition {
            name: self.name,
            lower: self.lower,
            upper: self.upper,
            integral: self.integral,
            constraints: self.constraints,
            objectives: self.objectives,
            evaluator,
            origin,
            origin_feasible: true,
            exact_membership: self.exact_membership,
        };
        if let Some(c) = problem.violated_constraint(&problem.origin) {
            return Err(MooError::InvalidProblem(format!("origin point violates `{c}`")));
        }
        let g0 = problem.evaluate(&problem.origin);
        if g0.iter().any(|&v| v != 0.0) {
            return Err(MooError::InvalidProblem(format!("objectives at the origin point are {g0:?}, not zero")));
        }
        Ok(problem)
    }
}

impl ProblemDefinition {
    pub fn builder(name: impl Into<String>) -> ProblemBuilder {
        ProblemBuilder {
            name: name.into(),
            lower: Vec::new(),
            upper: Vec::new(),
            integral: Vec::new(),
            constraints: Vec::new(),
            objectives: Vec::new(),
            evaluator: None,
            origin: None,
            exact_membership: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn objective_count(&self) -> usize {
        self.objectives.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn integral(&self) -> &[bool] {
        &self.integral
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn objectives(&self) -> &[ObjectiveInfo] {
        &self.objectives
    }

    pub fn units(&self) -> Vec<String> {
        self.objectives.iter().map(|o| o.unit.clone()).collect()
    }

    pub fn origin(&self) -> &[f64] {
        &self.origin
    }

    /// False for derived problems whose refinements cut the origin away.
    pub fn origin_feasible(&self) -> bool {
        self.origin_feasible
    }

    pub fn exact_membership(&self) -> Option<&Arc<MembershipFn>> {
        self.exact_membership.as_ref()
    }

    /// Name of the first violated box, integrality or predicate condition.
    pub fn violated_constraint(&self, x: &[f64]) -> Option<String> {
        if x.len() != self.dimension() {
            return Some("dimension".into());
        }
        for (d, &v) in x.iter().enumerate() {
            if !(v >= self.lower[d] && v <= self.upper[d]) {
                return Some(format!("bounds[{d}]"));
            }
            if self.integral[d] && v.fract() != 0.0 {
                return Some(format!("integrality[{d}]"));
            }
        }
        self.constraints.iter().find(|c| !(c.predicate)(x)).map(|c| c.name.clone())
    }

    pub fn is_feasible(&self, x: &[f64]) -> bool {
        self.violated_constraint(x).is_none()
    }

    /// Predicate-only check for points already known to lie on a grid inside
    /// the box.
    pub(crate) fn satisfies_predicates(&self, x: &[f64]) -> bool {
        self.constraints.iter().all(|c| (c.predicate)(x))
    }

    pub fn evaluate_into(&self, x: &[f64], out: &mut [f64]) {
        (self.evaluator)(x, out)
    }

    pub fn evaluate(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.objective_count()];
        self.evaluate_into(x, &mut out);
        out
    }

    pub fn objective_vector(&self, x: &[f64]) -> ObjectiveVector {
        ObjectiveVector { values: self.evaluate(x), units: self.units() }
    }

    /// Problem restricted to a subset of the objectives, in the given order.
    pub fn project(&self, selection: &[usize]) -> Result<ProblemDefinition> {
        let m = self.objective_count();
        if selection.is_empty() {
            return Err(MooError::InvalidProblem("empty objective selection".into()));
        }
        if let Some(&bad) = selection.iter().find(|&&i| i >= m) {
            return Err(MooError::InvalidProblem(format!("objective index {bad} out of range (M = {m})")));
        }
        let sel: Vec<usize> = selection.to_vec();
        let inner = Arc::clone(&self.evaluator);
        let evaluator = {
            let sel = sel.clone();
            move |x: &[f64], out: &mut [f64]| {
                let mut stack = [0.0f64; 16];
                let mut heap;
                let full: &mut [f64] = if m <= stack.len() {
                    &mut stack[..m]
                } else {
                    heap = vec![0.0; m];
                    &mut heap
                };
                inner(x, full);
                for (o, &i) in out.iter_mut().zip(&sel) {
                    *o = full[i];
                }
            }
        };
        let exact_membership = self.exact_membership.as_ref().map(|oracle| {
            let oracle = Arc::clone(oracle);
            let sel = sel.clone();
            Arc::new(move |mu: &[f64]| {
                let mut full = vec![0.0f64; m];
                for (&v, &i) in mu.iter().zip(&sel) {
                    full[i] = full[i].max(v);
                }
                oracle(&full)
            }) as Arc<MembershipFn>
        });
        let names: Vec<&str> = sel.iter().map(|&i| self.objectives[i].name.as_str()).collect();
        Ok(ProblemDefinition {
            name: format!("{}[{}]", self.name, names.join(",")),
            lower: self.lower.clone(),
            upper: self.upper.clone(),
            integral: self.integral.clone(),
            constraints: self.constraints.clone(),
            objectives: sel.iter().map(|&i| self.objectives[i].clone()).collect(),
            evaluator: Arc::new(evaluator),
            origin: self.origin.clone(),
            origin_feasible: self.origin_feasible,
            exact_membership,
        })
    }

    /// Derived problem with a tightened box and extra predicates. The exact
    /// membership oracle no longer describes the smaller set and is dropped.
    pub(crate) fn restricted(&self, lower: Vec<f64>, upper: Vec<f64>, extra: Vec<Constraint>) -> ProblemDefinition {
        let mut constraints = self.constraints.clone();
        constraints.extend(extra);
        let mut derived = ProblemDefinition {
            name: self.name.clone(),
            lower,
            upper,
            integral: self.integral.clone(),
            constraints,
            objectives: self.objectives.clone(),
            evaluator: Arc::clone(&self.evaluator),
            origin: self.origin.clone(),
            origin_feasible: true,
            exact_membership: None,
        };
        derived.origin_feasible = self.origin_feasible && derived.is_feasible(&derived.origin);
        derived
    }
}

/// Strong-Pareto dominance on raw values: `a ≥ b` componentwise and `a ≠ b`.
/// Lengths must match.
#[inline]
pub fn dominates_slice(a: &[f64], b: &[f64]) -> bool {
    debug_assert_eq!(a.len(), b.len());
    let mut strict = false;
    for (&x, &y) in a.iter().zip(b) {
        if x < y {
            return false;
        }
        if x > y {
            strict = true;
        }
    }
    strict
}

/// `a_m ≥ b_m` for every `m`.
#[inline]
pub fn weakly_dominates(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

pub fn dominates(a: &ObjectiveVector, b: &ObjectiveVector) -> Result<bool> {
    if a.len() != b.len() {
        return Err(MooError::DimensionMismatch { expected: a.len(), actual: b.len() });
    }
    Ok(dominates_slice(&a.values, &b.values))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GoalKind {
    Sum,
    Product,
    Chebyshev,
    Distance,
}

impl std::str::FromStr for GoalKind {
    type Err = MooError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sum" => Ok(Self::Sum),
            "product" => Ok(Self::Product),
            "chebyshev" => Ok(Self::Chebyshev),
            "distance" => Ok(Self::Distance),
            other => Err(MooError::InvalidGoal(format!("unknown goal kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Norm {
    #[serde(rename = "1")]
    L1,
    #[default]
    #[serde(rename = "2")]
    L2,
    #[serde(rename = "inf")]
    Inf,
}

impl std::str::FromStr for Norm {
    type Err = MooError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(Self::L1),
            "2" => Ok(Self::L2),
            "inf" | "Inf" | "INF" => Ok(Self::Inf),
            other => Err(MooError::InvalidGoal(format!("unknown norm `{other}` (expected 1, 2 or inf)"))),
        }
    }
}

/// A goal function imposing an order on objective vectors. Larger is better
/// for every kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GoalSpec {
    pub kind: GoalKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub weights: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<Vec<f64>>,
    #[serde(default)]
    pub norm: Norm,
}

impl GoalSpec {
    pub fn sum(weights: Vec<f64>) -> Result<Self> {
        Self::weighted(GoalKind::Sum, weights)
    }

    pub fn product(weights: Vec<f64>) -> Result<Self> {
        Self::weighted(GoalKind::Product, weights)
    }

    pub fn chebyshev(weights: Vec<f64>) -> Result<Self> {
        Self::weighted(GoalKind::Chebyshev, weights)
    }

    pub fn distance(reference: Vec<f64>, norm: Norm) -> Result<Self> {
        let goal = Self { kind: GoalKind::Distance, weights: Vec::new(), reference: Some(reference), norm };
        goal.validate(None)?;
        Ok(goal)
    }

    pub fn weighted(kind: GoalKind, weights: Vec<f64>) -> Result<Self> {
        if kind == GoalKind::Distance {
            return Err(MooError::InvalidGoal("distance goal takes a reference point, not weights".into()));
        }
        let goal = Self { kind, weights, reference: None, norm: Norm::default() };
        goal.validate(None)?;
        Ok(goal)
    }

    /// Checks the goal's invariants and, when given, its length against `M`.
    pub fn validate(&self, m: Option<usize>) -> Result<()> {
        let len = match self.kind {
            GoalKind::Distance => {
                let r = self
                    .reference
                    .as_ref()
                    .ok_or_else(|| MooError::InvalidGoal("distance goal requires a reference point".into()))?;
                if r.iter().any(|v| !v.is_finite()) {
                    return Err(MooError::InvalidGoal("reference point must be finite".into()));
                }
                r.len()
            }
            _ => {
                if self.weights.is_empty() {
                    return Err(MooError::InvalidGoal("weights are required".into()));
                }
                if self.weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
                    return Err(MooError::InvalidGoal(format!("weights must be finite and strictly positive: {:?}", self.weights)));
                }
                self.weights.len()
            }
        };
        match m {
            Some(m) if m != len => Err(MooError::DimensionMismatch { expected: m, actual: len }),
            _ => Ok(()),
        }
    }

    pub fn len(&self) -> usize {
        match self.kind {
            GoalKind::Distance => self.reference.as_ref().map_or(0, Vec::len),
            _ => self.weights.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Goal value without input validation; for hot loops over evaluated
    /// grids whose length already matches.
    #[inline]
    pub fn value(&self, g: &[f64]) -> f64 {
        match self.kind {
            GoalKind::Sum => g.iter().zip(&self.weights).map(|(g, w)| w * g).sum(),
            GoalKind::Product => {
                let mut acc = 1.0;
                for (&g, &w) in g.iter().zip(&self.weights) {
                    if g == 0.0 {
                        return 0.0;
                    }
                    acc *= g.powf(w);
                }
                acc
            }
            GoalKind::Chebyshev => g.iter().zip(&self.weights).map(|(g, w)| g / w).fold(f64::INFINITY, f64::min),
            GoalKind::Distance => {
                let r = self.reference.as_deref().unwrap_or(&[]);
                let diff = r.iter().zip(g).map(|(t, g)| (t - g).abs());
                let dist = match self.norm {
                    Norm::L1 => diff.sum::<f64>(),
                    Norm::L2 => diff.map(|d| d * d).sum::<f64>().sqrt(),
                    Norm::Inf => diff.fold(0.0, f64::max),
                };
                -dist
            }
        }
    }
}

pub fn eval_goal(goal: &GoalSpec, g: &ObjectiveVector) -> Result<f64> {
    goal.validate(Some(g.len()))?;
    if g.values.iter().any(|v| v.is_nan()) {
        return Err(MooError::NotANumber);
    }
    let v = goal.value(&g.values);
    if v.is_nan() {
        return Err(MooError::NotANumber);
    }
    Ok(v)
}

/// Rescales positive weights onto the simplex `Σ w_m = 1`.
pub fn normalize_weights(weights: &[f64]) -> Result<Vec<f64>> {
    if weights.is_empty() {
        return Err(MooError::EmptyInput);
    }
    if weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
        return Err(MooError::InvalidGoal(format!("weights must be finite and strictly positive: {weights:?}")));
    }
    let total: f64 = weights.iter().sum();
    Ok(weights.iter().map(|w| w / total).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ov(v: &[f64]) -> ObjectiveVector {
        ObjectiveVector::unitless(v.to_vec())
    }

    #[test]
    fn dominance_examples() {
        assert!(dominates(&ov(&[2.0, 1.0]), &ov(&[1.0, 1.0])).unwrap());
        assert!(!dominates(&ov(&[1.0, 1.0]), &ov(&[1.0, 1.0])).unwrap());
        assert!(!dominates(&ov(&[2.0, 0.0]), &ov(&[1.0, 1.0])).unwrap());
        assert!(!dominates(&ov(&[1.0, 1.0]), &ov(&[2.0, 0.0])).unwrap());
        assert_eq!(
            dominates(&ov(&[1.0]), &ov(&[1.0, 2.0])),
            Err(MooError::DimensionMismatch { expected: 1, actual: 2 })
        );
    }

    #[test]
    fn goal_examples() {
        let g = ov(&[2.0, 3.0]);
        assert_eq!(eval_goal(&GoalSpec::sum(vec![1.0, 1.0]).unwrap(), &g).unwrap(), 5.0);
        assert_eq!(eval_goal(&GoalSpec::chebyshev(vec![1.0, 2.0]).unwrap(), &g).unwrap(), 1.5);
        let d = GoalSpec::distance(vec![1.0, 1.0], Norm::L2).unwrap();
        assert_eq!(eval_goal(&d, &ov(&[1.0, 1.0])).unwrap(), 0.0);
        let p = GoalSpec::product(vec![1.0, 2.0]).unwrap();
        assert_eq!(eval_goal(&p, &g).unwrap(), 18.0);
        assert_eq!(eval_goal(&p, &ov(&[0.0, 3.0])).unwrap(), 0.0);
    }

    #[test]
    fn distance_norms() {
        let g = ov(&[0.0, 0.0]);
        let r = vec![3.0, 4.0];
        assert_eq!(eval_goal(&GoalSpec::distance(r.clone(), Norm::L1).unwrap(), &g).unwrap(), -7.0);
        assert_eq!(eval_goal(&GoalSpec::distance(r.clone(), Norm::L2).unwrap(), &g).unwrap(), -5.0);
        assert_eq!(eval_goal(&GoalSpec::distance(r, Norm::Inf).unwrap(), &g).unwrap(), -4.0);
    }

    #[test]
    fn goal_rejects_bad_input() {
        assert!(GoalSpec::sum(vec![1.0, 0.0]).is_err());
        assert!(GoalSpec::chebyshev(vec![1.0, -2.0]).is_err());
        assert!(GoalSpec::sum(vec![]).is_err());
        let s = GoalSpec::sum(vec![1.0, 1.0]).unwrap();
        assert_eq!(eval_goal(&s, &ov(&[f64::NAN, 1.0])), Err(MooError::NotANumber));
        assert!(matches!(eval_goal(&s, &ov(&[1.0])), Err(MooError::DimensionMismatch { .. })));
        assert!(matches!(GoalSpec::weighted(GoalKind::Distance, vec![1.0]), Err(MooError::InvalidGoal(_))));
    }

    #[test]
    fn normalize_onto_simplex() {
        let w = normalize_weights(&[1.0, 3.0]).unwrap();
        assert_eq!(w, vec![0.25, 0.75]);
        assert!(normalize_weights(&[1.0, 0.0]).is_err());
    }

    fn toy() -> ProblemDefinition {
        ProblemDefinition::builder("t")
            .dimension(0.0, 1.0, false)
            .dimension(0.0, 1.0, false)
            .objective("a", "u")
            .objective("b", "v")
            .constraint("sum", |x| x[0] + x[1] <= 1.0)
            .evaluator(|x, out| out.copy_from_slice(x))
            .origin(vec![0.0, 0.0])
            .build()
            .unwrap()
    }

    #[test]
    fn builder_validates_origin() {
        let err = ProblemDefinition::builder("bad")
            .dimension(0.0, 1.0, false)
            .objective("a", "")
            .evaluator(|x, out| out[0] = x[0] + 1.0)
            .origin(vec![0.0])
            .build()
            .unwrap_err();
        assert!(matches!(err, MooError::InvalidProblem(_)));
        let err = ProblemDefinition::builder("bad")
            .dimension(0.0, f64::INFINITY, false)
            .objective("a", "")
            .evaluator(|x, out| out[0] = x[0])
            .origin(vec![0.0])
            .build()
            .unwrap_err();
        assert!(matches!(err, MooError::InvalidProblem(_)));
    }

    #[test]
    fn projection_selects_and_reorders() {
        let p = toy().project(&[1, 0]).unwrap();
        assert_eq!(p.objective_count(), 2);
        assert_eq!(p.evaluate(&[0.25, 0.5]), vec![0.5, 0.25]);
        assert_eq!(p.objectives()[0].name, "b");
        assert!(toy().project(&[2]).is_err());
    }

    #[test]
    fn feasibility() {
        let p = toy();
        assert!(p.is_feasible(&[0.5, 0.5]));
        assert_eq!(p.violated_constraint(&[0.6, 0.6]).as_deref(), Some("sum"));
        assert_eq!(p.violated_constraint(&[1.5, 0.0]).as_deref(), Some("bounds[0]"));
    }
}

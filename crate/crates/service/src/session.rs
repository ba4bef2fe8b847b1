//! Exploration sessions: a base problem plus an ordered list of refinements.

use std::collections::BTreeMap;
use std::sync::Arc;

use paretoscope_core::mimo::MimoParams;
use paretoscope_core::{
    apply_refinements, builtin_with, Builtin, GridSpec, MooError, ProblemDefinition, RefinedProblem, Refinement, SearchSpace,
};
use serde::{Deserialize, Serialize};

/// The refinement list a version stands for.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VersionRecord {
    pub version: u64,
    pub refinements: Vec<Refinement>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleMethod {
    Grid,
    Direction,
}

/// Sampling parameters with defaults filled in; part of the front cache key.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleParams {
    pub method: SampleMethod,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CachedFront {
    pub params: SampleParams,
    pub refinement_version: u64,
    pub front_id: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionState {
    pub id: String,
    pub problem: String,
    /// Model parameter overrides (MIMO problem only).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, f64>,
    /// Search grid for membership tests; the problem default when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    pub refinements: Vec<Refinement>,
    pub refinement_version: u64,
    pub versions: Vec<VersionRecord>,
    pub fronts: Vec<CachedFront>,
    pub created_at: String,
    pub updated_at: String,
}

impl SessionState {
    pub fn version_record(&self, version: u64) -> Option<&VersionRecord> {
        self.versions.iter().find(|r| r.version == version)
    }

    /// A front sampled with `params` under the current refinement list. It
    /// may come from an earlier version with the same list, e.g. before a
    /// rollback.
    pub fn cached_front(&self, params: &SampleParams) -> Option<&CachedFront> {
        self.fronts.iter().find(|c| {
            &c.params == params
                && (c.refinement_version == self.refinement_version
                    || self.version_record(c.refinement_version).is_some_and(|r| r.refinements == self.refinements))
        })
    }
}

/// Base problem and grid for a session's problem name and overrides.
pub fn base_problem(problem: &str, params: &BTreeMap<String, f64>, grid: Option<&GridSpec>) -> Result<Builtin, MooError> {
    let mut mimo = MimoParams::default();
    if !params.is_empty() {
        if problem != paretoscope_core::mimo::PROBLEM_NAME {
            return Err(MooError::InvalidParameter(format!("problem `{problem}` takes no parameters")));
        }
        let text: String = params.iter().map(|(k, v)| format!("{k} = {v}\n")).collect();
        mimo.apply_overrides(&text)?;
    }
    let mut b = builtin_with(problem, &mimo)?;
    if let Some(g) = grid {
        g.resolve(&b.problem)?;
        b.grid = g.clone();
    }
    Ok(b)
}

/// A loaded session with its derived problem and a lazily built search space
/// for the current refinement version.
pub struct Session {
    pub state: SessionState,
    pub base: Builtin,
    pub current: Builtin,
    space: Option<(u64, Arc<SearchSpace>)>,
    base_space: Option<Arc<SearchSpace>>,
}

impl Session {
    pub fn new(state: SessionState) -> Result<Self, MooError> {
        let base = base_problem(&state.problem, &state.params, state.grid.as_ref())?;
        let refined = apply_refinements(&base.problem, &state.refinements, &base.grid)?;
        Ok(Self { state, base, current: Builtin { problem: refined.problem, grid: refined.grid }, space: None, base_space: None })
    }

    pub fn version(&self) -> u64 {
        self.state.refinement_version
    }

    pub fn problem(&self) -> &ProblemDefinition {
        &self.current.problem
    }

    pub fn space(&self) -> Option<Arc<SearchSpace>> {
        match &self.space {
            Some((v, s)) if *v == self.version() => Some(Arc::clone(s)),
            _ => None,
        }
    }

    /// Search space of the unrefined problem; it fixes the sweep directions
    /// for every version.
    pub fn base_space(&self) -> Option<Arc<SearchSpace>> {
        if self.state.refinements.is_empty() {
            return self.space().or_else(|| self.base_space.clone());
        }
        self.base_space.clone()
    }

    pub fn store_base_space(&mut self, space: Arc<SearchSpace>) {
        self.base_space = Some(space);
    }

    pub fn store_space(&mut self, version: u64, space: Arc<SearchSpace>) {
        if version == self.version() {
            self.space = Some((version, space));
        }
    }

    /// Installs a refinement list computed by [`apply_refinements`] against
    /// `self.base`, bumping the version.
    pub fn commit_refinements(&mut self, refinements: Vec<Refinement>, refined: RefinedProblem, now: String) {
        self.state.refinements = refinements;
        self.state.refinement_version += 1;
        self.state.versions.push(VersionRecord {
            version: self.state.refinement_version,
            refinements: self.state.refinements.clone(),
        });
        self.state.updated_at = now;
        self.current = Builtin { problem: refined.problem, grid: refined.grid };
        self.space = None;
    }
}

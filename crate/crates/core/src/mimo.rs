//! Downlink massive-MIMO dimensioning model.
//!
//! Resources are `x = [K, N, P]`: users per cell, antennas per base station
//! and emitted power per cell. Closed-form average user rate under
//! zero-forcing with perfect CSI, a per-cell power consumption model, and the
//! three objectives user rate, area rate and energy efficiency.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{MooError, Result};
use crate::grid::{logspace, GridAxis, GridSpec};
use crate::moo::ProblemDefinition;

pub const PROBLEM_NAME: &str = "mimo_case_study";

#[allow(non_snake_case)]
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MimoParams {
    /// Bandwidth, Hz.
    pub B: f64,
    /// Noise power, W.
    pub sigma2: f64,
    /// Cell area, km².
    pub A: f64,
    /// Expected inverse serving-channel variance.
    pub Lambda1: f64,
    /// Expected intercell-to-serving variance ratio.
    pub Lambda2: f64,
    /// Channel uses per coherence block.
    pub Upsilon: f64,
    /// Power amplifier efficiency.
    pub eta: f64,
    /// Circuit power per antenna, W.
    pub C_N: f64,
    /// Circuit power per user, W.
    pub C_K: f64,
    /// Static power, W.
    pub C_0: f64,
    /// Computational efficiency, flop/s per W.
    pub L_eff: f64,
    /// Channel uses between precoder recomputations.
    pub T: f64,
    pub N_max: f64,
    /// Maximum emitted power per antenna, W.
    pub P_max: f64,
}

impl Default for MimoParams {
    fn default() -> Self {
        Self {
            B: 10e6,
            sigma2: 1e-13,
            A: 0.25 * 0.25,
            Lambda1: 1.72e9,
            Lambda2: 0.54,
            Upsilon: 1000.0,
            eta: 0.31,
            C_N: 1.0,
            C_K: 0.3,
            C_0: 10.0,
            L_eff: 12.8e9,
            T: 1000.0,
            N_max: 500.0,
            P_max: 20.0,
        }
    }
}

const KEYS: [&str; 14] = [
    "B", "sigma2", "A", "Lambda1", "Lambda2", "Upsilon", "eta", "C_N", "C_K", "C_0", "L_eff", "T", "N_max", "P_max",
];

impl MimoParams {
    fn field_mut(&mut self, key: &str) -> Option<&mut f64> {
        Some(match key {
            "B" => &mut self.B,
            "sigma2" => &mut self.sigma2,
            "A" => &mut self.A,
            "Lambda1" => &mut self.Lambda1,
            "Lambda2" => &mut self.Lambda2,
            "Upsilon" => &mut self.Upsilon,
            "eta" => &mut self.eta,
            "C_N" => &mut self.C_N,
            "C_K" => &mut self.C_K,
            "C_0" => &mut self.C_0,
            "L_eff" => &mut self.L_eff,
            "T" => &mut self.T,
            "N_max" => &mut self.N_max,
            "P_max" => &mut self.P_max,
            _ => return None,
        })
    }

    pub fn validate(&self) -> Result<()> {
        let mut fields = self.clone();
        for key in KEYS {
            let v = *fields.field_mut(key).expect("known key");
            if !(v.is_finite() && v > 0.0) {
                return Err(MooError::InvalidParameter(format!("{key} must be finite and positive, got {v}")));
            }
        }
        if self.eta > 1.0 {
            return Err(MooError::InvalidParameter(format!("eta must lie in (0, 1], got {}", self.eta)));
        }
        if self.N_max.fract() != 0.0 || self.N_max < 2.0 {
            return Err(MooError::InvalidParameter(format!("N_max must be an integer >= 2, got {}", self.N_max)));
        }
        if self.k_max() >= self.Upsilon {
            return Err(MooError::InvalidParameter("N_max/2 must stay below Upsilon".into()));
        }
        Ok(())
    }

    /// Applies `key = value` overrides; `#` starts a comment. Unknown keys
    /// and duplicate keys are rejected.
    pub fn apply_overrides(&mut self, text: &str) -> Result<()> {
        let mut seen = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| MooError::InvalidParameter(format!("line {}: expected key=value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            let parsed: f64 = value
                .parse()
                .map_err(|_| MooError::InvalidParameter(format!("line {}: `{value}` is not a number", lineno + 1)))?;
            if seen.insert(key.to_string(), lineno).is_some() {
                return Err(MooError::InvalidParameter(format!("line {}: duplicate key `{key}`", lineno + 1)));
            }
            let slot = self
                .field_mut(key)
                .ok_or_else(|| MooError::InvalidParameter(format!("line {}: unknown key `{key}`", lineno + 1)))?;
            *slot = parsed;
        }
        self.validate()
    }

    pub fn from_config(text: &str) -> Result<Self> {
        let mut p = Self::default();
        p.apply_overrides(text)?;
        Ok(p)
    }

    pub fn to_config(&self) -> String {
        let mut fields = self.clone();
        let mut out = String::new();
        for key in KEYS {
            let _ = writeln!(out, "{key} = {}", fields.field_mut(key).expect("known key"));
        }
        out
    }

    pub fn k_max(&self) -> f64 {
        (self.N_max / 2.0).floor()
    }

    pub fn p_upper(&self) -> f64 {
        self.N_max * self.P_max
    }
}

/// `x = [K, N, P]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MimoPoint {
    pub k: f64,
    pub n: f64,
    pub p: f64,
}

impl MimoPoint {
    pub fn new(k: f64, n: f64, p: f64) -> Self {
        Self { k, n, p }
    }

    pub fn from_slice(x: &[f64]) -> Self {
        Self { k: x[0], n: x[1], p: x[2] }
    }

    pub fn to_vec(self) -> Vec<f64> {
        vec![self.k, self.n, self.p]
    }

    pub fn validate(&self, params: &MimoParams) -> Result<()> {
        let Self { k, n, p } = *self;
        let bad = |why: String| Err(MooError::InfeasiblePoint(why));
        if k.fract() != 0.0 || n.fract() != 0.0 {
            return bad(format!("K = {k} and N = {n} must be integers"));
        }
        if !(k >= 1.0 && k <= n / 2.0) {
            return bad(format!("need 1 <= K <= N/2, got K = {k}, N = {n}"));
        }
        if !(n >= 2.0 && n <= params.N_max) {
            return bad(format!("need 2 <= N <= {}, got {n}", params.N_max));
        }
        if !(p >= 0.0 && p <= n * params.P_max) {
            return bad(format!("need 0 <= P <= N·P_max = {}, got {p}", n * params.P_max));
        }
        if k >= params.Upsilon {
            return bad(format!("K = {k} leaves no channel uses for data (Upsilon = {})", params.Upsilon));
        }
        Ok(())
    }
}

#[inline]
fn rate_unchecked(k: f64, n: f64, p: f64, q: &MimoParams) -> f64 {
    let prelog = 1.0 - k / q.Upsilon;
    let sinr = (p / k) * (n - k) / (q.sigma2 * q.Lambda1 + p * q.Lambda2);
    q.B * prelog * sinr.ln_1p() / std::f64::consts::LN_2
}

#[inline]
fn power_unchecked(k: f64, n: f64, p: f64, q: &MimoParams) -> f64 {
    let precoding_flops = 3.0 * k * k * n * (q.B / q.T);
    p / q.eta + n * q.C_N + k * q.C_K + precoding_flops / q.L_eff + q.C_0
}

/// Average user rate, bit/s/user.
pub fn average_user_rate(pt: &MimoPoint, params: &MimoParams) -> Result<f64> {
    pt.validate(params)?;
    Ok(rate_unchecked(pt.k, pt.n, pt.p, params))
}

/// Total power consumption per cell, W.
pub fn total_power(pt: &MimoPoint, params: &MimoParams) -> Result<f64> {
    pt.validate(params)?;
    Ok(power_unchecked(pt.k, pt.n, pt.p, params))
}

/// Precoding computation power `3K²N·(B/T) / L`, W.
pub fn precoding_power(k: f64, n: f64, params: &MimoParams) -> f64 {
    3.0 * k * k * n * (params.B / params.T) / params.L_eff
}

/// `[g1, g2, g3]` in bit/s/user, bit/s/km², bit/J.
#[inline]
fn objectives_unchecked(k: f64, n: f64, p: f64, q: &MimoParams, out: &mut [f64]) {
    let r = rate_unchecked(k, n, p, q);
    out[0] = r;
    out[1] = (k / q.A) * r;
    out[2] = k * r / power_unchecked(k, n, p, q);
}

pub fn objectives(pt: &MimoPoint, params: &MimoParams) -> Result<[f64; 3]> {
    pt.validate(params)?;
    let mut out = [0.0; 3];
    objectives_unchecked(pt.k, pt.n, pt.p, params, &mut out);
    Ok(out)
}

/// The case study as a generic problem over `[K, N, P]`.
pub fn as_problem(params: &MimoParams) -> Result<ProblemDefinition> {
    params.validate()?;
    let q = params.clone();
    let (n_max, p_max) = (params.N_max, params.P_max);
    ProblemDefinition::builder(PROBLEM_NAME)
        .dimension(1.0, params.k_max(), true)
        .dimension(2.0, n_max, true)
        .dimension(0.0, params.p_upper(), false)
        .objective("average_user_rate", "bit/s/user")
        .objective("average_area_rate", "bit/s/km^2")
        .objective("energy_efficiency", "bit/J")
        .constraint("K <= N/2", |x| x[0] <= x[1] / 2.0)
        .constraint("P <= N*P_max", move |x| x[2] <= x[1] * p_max)
        .evaluator(move |x, out| objectives_unchecked(x[0], x[1], x[2], &q, out))
        .origin(vec![1.0, 2.0, 0.0])
        .build()
}

/// Every integer `K` and `N` in the box and `p_points` log-spaced powers
/// from 1 mW to `N_max·P_max`, plus `P = 0`.
pub fn search_grid(params: &MimoParams, p_points: usize) -> GridSpec {
    let ks: Vec<f64> = (1..=params.k_max() as usize).map(|k| k as f64).collect();
    let ns: Vec<f64> = (2..=params.N_max as usize).map(|n| n as f64).collect();
    let mut ps = logspace(1e-3, params.p_upper(), p_points);
    ps.insert(0, 0.0);
    GridSpec::new(vec![GridAxis::Values(ks), GridAxis::Values(ns), GridAxis::Values(ps)])
}

/// A coarser grid for interactive use: `N` in steps of `n_step`, `K` up to
/// `N/2` on the same lattice.
pub fn coarse_search_grid(params: &MimoParams, n_step: usize, p_points: usize) -> GridSpec {
    let ns: Vec<f64> = (2..=params.N_max as usize).step_by(n_step.max(1)).map(|n| n as f64).collect();
    let ks: Vec<f64> = (1..=params.k_max() as usize).map(|k| k as f64).collect();
    let mut ps = logspace(1e-3, params.p_upper(), p_points);
    ps.insert(0, 0.0);
    GridSpec::new(vec![GridAxis::Values(ks), GridAxis::Values(ns), GridAxis::Values(ps)])
}

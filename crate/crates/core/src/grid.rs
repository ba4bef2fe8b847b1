//! Product grids over a problem's resource box.

use serde::{Deserialize, Serialize};

use crate::error::{MooError, Result};
use crate::moo::ProblemDefinition;

/// How one resource dimension is discretized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridAxis {
    /// `n` equally spaced values spanning the dimension's bounds. Integral
    /// dimensions round to the nearest integer and drop duplicates.
    Count(usize),
    /// Explicit values in problem units.
    Values(Vec<f64>),
    /// `count` log-spaced values in `[min, max]`, optionally with an exact 0.
    Log {
        min: f64,
        max: f64,
        count: usize,
        #[serde(default)]
        zero: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GridSpec {
    pub axes: Vec<GridAxis>,
}

impl GridSpec {
    pub fn new(axes: Vec<GridAxis>) -> Self {
        Self { axes }
    }

    /// The same number of values on every one of `d` dimensions.
    pub fn uniform(d: usize, count: usize) -> Self {
        Self { axes: vec![GridAxis::Count(count); d] }
    }

    /// Validates against `problem` and materializes the value lists.
    pub fn resolve(&self, problem: &ProblemDefinition) -> Result<ResolvedGrid> {
        let d = problem.dimension();
        if self.axes.len() != d {
            return Err(MooError::DimensionMismatch { expected: d, actual: self.axes.len() });
        }
        let mut values = Vec::with_capacity(d);
        for (i, axis) in self.axes.iter().enumerate() {
            let (lo, hi, int) = (problem.lower()[i], problem.upper()[i], problem.integral()[i]);
            let mut vs = match axis {
                GridAxis::Count(n) => linspace(lo, hi, *n, int),
                GridAxis::Values(v) => v.clone(),
                GridAxis::Log { min, max, count, zero } => {
                    if !(min.is_finite() && max.is_finite() && *min > 0.0 && min <= max) {
                        return Err(MooError::InvalidGrid(format!("axis {i}: log range must satisfy 0 < min <= max")));
                    }
                    let mut v = logspace(*min, *max, *count);
                    if *zero {
                        v.push(0.0);
                    }
                    v
                }
            };
            for &v in &vs {
                if !v.is_finite() {
                    return Err(MooError::InvalidGrid(format!("axis {i}: non-finite value")));
                }
                if v < lo || v > hi {
                    return Err(MooError::InvalidGrid(format!("axis {i}: value {v} outside [{lo}, {hi}]")));
                }
                if int && v.fract() != 0.0 {
                    return Err(MooError::InvalidGrid(format!("axis {i}: value {v} on an integral dimension")));
                }
            }
            vs.sort_by(f64::total_cmp);
            vs.dedup_by(|a, b| a == b);
            values.push(vs);
        }
        let mut len: usize = 1;
        for vs in &values {
            len = len
                .checked_mul(vs.len())
                .ok_or_else(|| MooError::InvalidGrid("grid size overflows".into()))?;
        }
        Ok(ResolvedGrid { values, len })
    }
}

/// Sorted, deduplicated per-dimension values. Linear index order is
/// lexicographic in `x` with dimension 0 varying slowest.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedGrid {
    values: Vec<Vec<f64>>,
    len: usize,
}

impl ResolvedGrid {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn dimension(&self) -> usize {
        self.values.len()
    }

    pub fn axis(&self, d: usize) -> &[f64] {
        &self.values[d]
    }

    /// Writes the grid point with linear index `idx` into `out`.
    pub fn point_into(&self, mut idx: usize, out: &mut [f64]) {
        for d in (0..self.values.len()).rev() {
            let n = self.values[d].len();
            out[d] = self.values[d][idx % n];
            idx /= n;
        }
    }

    pub fn point(&self, idx: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.values.len()];
        self.point_into(idx, &mut out);
        out
    }

    /// Largest gap between `v` and its neighbours on axis `d`; zero on a
    /// single-valued axis.
    pub fn local_step(&self, d: usize, v: f64) -> f64 {
        let axis = &self.values[d];
        let pos = axis.partition_point(|&a| a < v);
        let mut step: f64 = 0.0;
        if pos > 0 {
            step = step.max(v - axis[pos - 1]);
        }
        let next = if pos < axis.len() && axis[pos] == v { pos + 1 } else { pos };
        if next < axis.len() {
            step = step.max(axis[next] - v);
        }
        step
    }
}

fn linspace(lo: f64, hi: f64, n: usize, integral: bool) -> Vec<f64> {
    let raw: Vec<f64> = match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| if i == n - 1 { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 })
            .collect(),
    };
    if integral {
        let (lo_i, hi_i) = (lo.ceil(), hi.floor());
        raw.into_iter().map(|v| v.round().clamp(lo_i, hi_i)).collect()
    } else {
        raw
    }
}

/// `count` log-spaced values from `min` to `max` inclusive.
pub fn logspace(min: f64, max: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![min],
        _ => {
            let (a, b) = (min.ln(), max.ln());
            (0..count)
                .map(|i| match i {
                    0 => min,
                    i if i == count - 1 => max,
                    i => (a + (b - a) * i as f64 / (count - 1) as f64).exp(),
                })
                .collect()
        }
    }
}

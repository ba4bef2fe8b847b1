//! Sampled fronts and their file formats.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{MooError, Result};
use crate::grid::GridSpec;
use crate::moo::GoalKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryKind {
    Interior,
    Weak,
    StrongCertified,
}

impl BoundaryKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundaryKind::Interior => "interior",
            BoundaryKind::Weak => "weak",
            BoundaryKind::StrongCertified => "strong_certified",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Grid,
    DirectionSearch,
    Scalarization,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontPoint {
    pub x: Vec<f64>,
    pub g: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<Vec<f64>>,
    pub boundary_kind: BoundaryKind,
    /// Every weight vector whose scalarization landed on this point.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub weights: Vec<Vec<f64>>,
}

impl FrontPoint {
    /// The attainable objective point `λ·v` found along the search ray.
    pub fn ray_point(&self) -> Option<Vec<f64>> {
        let (l, v) = (self.lambda?, self.direction.as_ref()?);
        Some(v.iter().map(|vi| l * vi).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FrontParameters {
    Grid { grid: GridSpec },
    Directions { count: usize },
    Weights { goal: GoalKind, count: usize },
}

/// A direction (or weight) whose search failed; the rest of the sweep is kept.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleError {
    pub index: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Front {
    pub problem: String,
    pub method: Method,
    pub eps: Option<f64>,
    pub refinement_version: u64,
    pub points: Vec<FrontPoint>,
    pub created_at: Option<String>,
    pub dimension: usize,
    pub objective_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameters: Option<FrontParameters>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub errors: Vec<SampleError>,
}

impl Front {
    pub fn new(problem: impl Into<String>, method: Method, dimension: usize, objective_count: usize) -> Self {
        Self {
            problem: problem.into(),
            method,
            eps: None,
            refinement_version: 0,
            points: Vec::new(),
            created_at: None,
            dimension,
            objective_count,
            parameters: None,
            errors: Vec::new(),
        }
    }

    pub fn boundary_points(&self) -> impl Iterator<Item = &FrontPoint> {
        self.points.iter().filter(|p| p.boundary_kind != BoundaryKind::Interior)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Csv,
}

impl FromStr for ExportFormat {
    type Err = MooError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            other => Err(MooError::UnknownFormat(other.to_string())),
        }
    }
}

pub fn export_front(front: &Front, format: ExportFormat) -> Result<Vec<u8>> {
    match format {
        ExportFormat::Json => {
            let mut out = serde_json::to_vec_pretty(front).map_err(|e| MooError::Serialization(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
        ExportFormat::Csv => Ok(front_csv(front).into_bytes()),
    }
}

pub fn import_front_json(bytes: &[u8]) -> Result<Front> {
    serde_json::from_slice(bytes).map_err(|e| MooError::Serialization(e.to_string()))
}

fn front_csv(front: &Front) -> String {
    let mut header: Vec<String> = (1..=front.dimension).map(|i| format!("x_{i}")).collect();
    header.extend((1..=front.objective_count).map(|i| format!("g_{i}")));
    header.push("lambda".into());
    header.push("boundary_kind".into());
    let mut out = header.join(",");
    out.push('\n');
    for p in &front.points {
        for v in p.x.iter().chain(&p.g) {
            // `Display` for f64 is the shortest representation that round-trips.
            let _ = write!(out, "{v},");
        }
        if let Some(l) = p.lambda {
            let _ = write!(out, "{l}");
        }
        out.push(',');
        out.push_str(p.boundary_kind.as_str());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Front {
        let mut f = Front::new("toy", Method::DirectionSearch, 2, 2);
        f.eps = Some(1e-6);
        f.points.push(FrontPoint {
            x: vec![0.1, 0.9000000000000001],
            g: vec![0.1, 0.9000000000000001],
            lambda: Some(std::f64::consts::FRAC_1_SQRT_2),
            direction: Some(vec![0.1414213562373095, 1.2727922061357855]),
            boundary_kind: BoundaryKind::StrongCertified,
            weights: vec![],
        });
        f.points.push(FrontPoint {
            x: vec![1.0, 0.0],
            g: vec![1.0, 0.0],
            lambda: None,
            direction: None,
            boundary_kind: BoundaryKind::Interior,
            weights: vec![],
        });
        f
    }

    #[test]
    fn json_round_trip() {
        let f = sample();
        let bytes = export_front(&f, ExportFormat::Json).unwrap();
        assert_eq!(import_front_json(&bytes).unwrap(), f);
    }

    #[test]
    fn json_field_order() {
        let text = String::from_utf8(export_front(&sample(), ExportFormat::Json).unwrap()).unwrap();
        let pos = |k: &str| text.find(&format!("\"{k}\"")).unwrap();
        let keys = ["problem", "method", "eps", "refinement_version", "points", "created_at"];
        assert!(keys.windows(2).all(|w| pos(w[0]) < pos(w[1])));
        let pk = ["\"x\"", "\"g\"", "\"lambda\"", "\"direction\"", "\"boundary_kind\""];
        let ppos: Vec<usize> = pk.iter().map(|k| text.find(k).unwrap()).collect();
        assert!(ppos.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn csv_layout() {
        let text = String::from_utf8(export_front(&sample(), ExportFormat::Csv).unwrap()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "x_1,x_2,g_1,g_2,lambda,boundary_kind");
        assert_eq!(lines[1], "0.1,0.9000000000000001,0.1,0.9000000000000001,0.7071067811865476,strong_certified");
        assert_eq!(lines[2], "1,0,1,0,,interior");
    }

    #[test]
    fn empty_front_has_header_only() {
        let f = Front::new("mimo", Method::Grid, 3, 3);
        let text = String::from_utf8(export_front(&f, ExportFormat::Csv).unwrap()).unwrap();
        assert_eq!(text, "x_1,x_2,x_3,g_1,g_2,g_3,lambda,boundary_kind\n");
        let json = export_front(&f, ExportFormat::Json).unwrap();
        assert_eq!(import_front_json(&json).unwrap(), f);
    }

    #[test]
    fn unknown_format() {
        assert_eq!("xml".parse::<ExportFormat>(), Err(MooError::UnknownFormat("xml".into())));
    }
}

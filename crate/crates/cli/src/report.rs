//! Report structure, summary and emitters.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

use akv_core::almost_hermitian::catalogue::{self, Group, Tier};
use akv_core::almost_hermitian::identities::{Outcome, PointScalars};
use akv_core::almost_hermitian::PointRecord;
use akv_core::family::{Hypothesis, Instance};
use serde::{Deserialize, Serialize};

use crate::config::{Format, RunConfig};
use crate::conventions;
use crate::error::CliError;

/// One residual of one point: a number, or why there is none.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Value(f64),
    Skipped { skipped: String },
    Error { error: String },
}

impl Cell {
    pub fn value(&self) -> Option<f64> {
        match self {
            Cell::Value(v) => Some(*v),
            _ => None,
        }
    }

    fn from_outcome(o: Outcome) -> Self {
        match o {
            Outcome::Value { value } if value.is_finite() => Cell::Value(value),
            Outcome::Value { value } => Cell::Error {
                error: format!("non-finite residual {value}"),
            },
            Outcome::Skipped { reason } => Cell::Skipped { skipped: reason },
            Outcome::Error { message } => Cell::Error { error: message },
        }
    }

    fn csv_field(&self) -> String {
        match self {
            Cell::Value(v) => v.to_string(),
            Cell::Skipped { .. } => "skipped".into(),
            Cell::Error { .. } => "error".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointReport {
    pub p: [f64; 4],
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub scalars: Option<PointScalars>,
    pub residuals: BTreeMap<String, Cell>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

impl From<PointRecord> for PointReport {
    fn from(r: PointRecord) -> Self {
        PointReport {
            p: r.p,
            scalars: r.scalars,
            residuals: r.residuals.into_iter().map(|(k, o)| (k, Cell::from_outcome(o))).collect(),
            error: r.error,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    /// Largest residual over the points where it was computed.
    pub max: Option<f64>,
    pub mean: Option<f64>,
    pub evaluated: usize,
    pub skipped: usize,
    pub errors: usize,
    pub tier: Tier,
    pub tolerance: f64,
    /// False when the instance does not claim the hypotheses the identity
    /// needs; the residual is then reported without a verdict.
    pub applicable: bool,
    /// `None` when not applicable or never evaluated.
    pub pass: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    #[serde(flatten)]
    pub checks: BTreeMap<String, CheckSummary>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub instance: Instance,
    pub hypotheses: BTreeSet<Hypothesis>,
    pub groups: BTreeSet<Group>,
    pub points: usize,
    pub seed: u64,
    pub tol_scale: f64,
    pub tolerances: BTreeMap<Tier, f64>,
    pub conventions_sha256: String,
    pub gauge: String,
    pub orientation: String,
    pub bianchi_02_projection: String,
    pub point_errors: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub meta: Meta,
    pub points: Vec<PointReport>,
    pub summary: Summary,
}

const TIERS: [Tier; 4] = [Tier::Algebraic, Tier::FirstOrder, Tier::SecondOrder, Tier::HigherOrder];

impl Report {
    pub fn new(cfg: &RunConfig, points: Vec<PointReport>) -> Self {
        let names: BTreeSet<&String> = points.iter().flat_map(|p| p.residuals.keys()).collect();
        let mut checks = BTreeMap::new();
        for name in names {
            let Some(info) = catalogue::lookup(name) else {
                continue;
            };
            let tolerance = cfg.tier_tolerance(info.tier) * cfg.tol_scale;
            let cells: Vec<&Cell> = points.iter().filter_map(|p| p.residuals.get(name)).collect();
            let values: Vec<f64> = cells.iter().filter_map(|c| c.value()).collect();
            let errors = cells.iter().filter(|c| matches!(c, Cell::Error { .. })).count();
            let skipped = cells.len() - values.len() - errors;
            let max = values.iter().copied().reduce(f64::max);
            let mean = (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64);
            let applicable = info.applies(&cfg.instance.hypotheses);
            let pass = if !applicable {
                None
            } else if errors > 0 {
                Some(false)
            } else {
                max.map(|m| m <= tolerance)
            };
            checks.insert(
                name.clone(),
                CheckSummary {
                    max,
                    mean,
                    evaluated: values.len(),
                    skipped,
                    errors,
                    tier: info.tier,
                    tolerance,
                    applicable,
                    pass,
                },
            );
        }
        let point_errors = points.iter().filter(|p| p.error.is_some()).count();
        let pass = point_errors == 0 && checks.values().all(|c| c.pass != Some(false));
        let meta = Meta {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            instance: cfg.instance.clone(),
            hypotheses: cfg.instance.hypotheses.clone(),
            groups: cfg.groups.clone(),
            points: cfg.points,
            seed: cfg.seed,
            tol_scale: cfg.tol_scale,
            tolerances: TIERS.iter().map(|&t| (t, cfg.tier_tolerance(t))).collect(),
            conventions_sha256: conventions::sheet_hash(),
            gauge: "phi from dx^dy (fallback dx^dz, dx^dt) projected to [[Lambda^{0,2}]], |phi|^2 = 2".into(),
            orientation: "induced by J: vol = Omega^Omega/2".into(),
            bianchi_02_projection: "2-form slot".into(),
            point_errors,
        };
        Report {
            meta,
            points,
            summary: Summary { checks, pass },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One row per point: index, coordinates, scalars, then residuals in
    /// sorted name order.
    pub fn to_csv(&self) -> Result<String, CliError> {
        let names: BTreeSet<&String> = self.points.iter().flat_map(|p| p.residuals.keys()).collect();
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header: Vec<String> = ["point", "x", "y", "z", "t"].map(String::from).to_vec();
        header.extend(SCALAR_COLUMNS.iter().map(|s| s.to_string()));
        header.extend(names.iter().map(|s| s.to_string()));
        header.push("error".into());
        let io = |e: csv::Error| CliError::Io(e.to_string());
        w.write_record(&header).map_err(io)?;
        for (i, p) in self.points.iter().enumerate() {
            let mut row = vec![i.to_string()];
            row.extend(p.p.iter().map(|v| v.to_string()));
            match &p.scalars {
                Some(s) => row.extend(scalar_values(s).iter().map(|v| v.to_string())),
                None => row.extend(SCALAR_COLUMNS.iter().map(|_| String::new())),
            }
            for n in &names {
                row.push(p.residuals.get(*n).map(Cell::csv_field).unwrap_or_default());
            }
            row.push(p.error.clone().unwrap_or_default());
            w.write_record(&row).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => Ok(self.to_json()),
            Format::Csv => self.to_csv(),
        }
    }

    /// Writes the report to `out`, or to stdout when `out` is `None`.
    pub fn emit(&self, format: Format, out: Option<&std::path::Path>) -> Result<(), CliError> {
        let text = self.render(format)?;
        match out {
            Some(path) => {
                std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
            }
            None => std::io::stdout()
                .lock()
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io(e.to_string())),
        }
    }
}

const SCALAR_COLUMNS: [&str; 8] = [
    "norm_nabla_omega2",
    "s",
    "kappa",
    "s_star",
    "norm_wplus",
    "norm_wminus",
    "norm_ric",
    "norm_ric0",
];

fn scalar_values(s: &PointScalars) -> [f64; 8] {
    [
        s.norm_nabla_omega2,
        s.s,
        s.kappa,
        s.s_star,
        s.norm_wplus,
        s.norm_wminus,
        s.norm_ric,
        s.norm_ric0,
    ]
}

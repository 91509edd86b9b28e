//! Running selected check groups at one point of an instance.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::catalogue::{self, Group};
use super::identities::{
    bianchi, chern, compat, gray, section4, u2, weitzenbock, Outcome, PointScalars, PointState, Residuals,
};
use crate::exterior::DIM;
use crate::family::Instance;

pub const PREFLIGHT_FAILED: &str = "almost Kähler preflight failed";

/// Residuals and scalars of one sample point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointRecord {
    pub p: [f64; DIM],
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub scalars: Option<PointScalars>,
    pub residuals: BTreeMap<String, Outcome>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

/// Whether the preflight outcome for `name` rules out curvature checks.
/// The Cauchy–Riemann guard is reported but does not gate.
fn preflight_blocks(name: &str, o: &Outcome, tol_scale: f64) -> bool {
    if name == "cauchy_riemann" {
        return false;
    }
    let tol = catalogue::lookup(name).map_or(0.0, |c| c.tier.tolerance()) * tol_scale;
    match o {
        Outcome::Value { value } => !(*value <= tol),
        Outcome::Skipped { .. } => false,
        Outcome::Error { .. } => true,
    }
}

fn run_group(g: Group, st: &PointState, out: &mut Residuals) {
    match g {
        Group::Compat => compat::evaluate(st, out),
        Group::Gray => gray::evaluate(st, out),
        Group::U2 => u2::evaluate(st, out),
        Group::Bianchi => bianchi::evaluate(st, out),
        Group::Weitzenbock => weitzenbock::evaluate(st, out),
        Group::Section4 => section4::evaluate(st, out),
        Group::Chern => chern::evaluate(st, out),
    }
}

/// Evaluates the compat preflight plus `groups` at `p`. Failures at the point
/// are recorded in the returned record rather than propagated.
pub fn evaluate_point(inst: &Instance, p: [f64; DIM], groups: &BTreeSet<Group>, tol_scale: f64) -> PointRecord {
    let mut groups = groups.clone();
    groups.insert(Group::Compat);
    let wanted: Vec<&'static str> = catalogue::in_groups(&groups).map(|c| c.name).collect();
    let family = inst.geometry.as_family();

    let st = match PointState::new(&inst.geometry, p, family) {
        Ok(st) => st,
        Err(e) => {
            let message = e.to_string();
            let residuals = wanted
                .iter()
                .map(|n| (n.to_string(), Outcome::Error { message: message.clone() }))
                .collect();
            return PointRecord {
                p,
                scalars: None,
                residuals,
                error: Some(message),
            };
        }
    };

    let mut out = Residuals::new();
    compat::evaluate(&st, &mut out);
    let blocked = out.iter().any(|(n, o)| preflight_blocks(n, o, tol_scale));
    for &g in &groups {
        if g == Group::Compat {
            continue;
        }
        if blocked {
            for c in catalogue::in_groups(&BTreeSet::from([g])) {
                out.insert(
                    c.name,
                    Outcome::Skipped {
                        reason: PREFLIGHT_FAILED.into(),
                    },
                );
            }
        } else {
            run_group(g, &st, &mut out);
        }
    }
    let residuals = wanted
        .iter()
        .map(|n| {
            let o = out.remove(n).unwrap_or(Outcome::Error {
                message: "residual not produced".into(),
            });
            (n.to_string(), o)
        })
        .collect();
    PointRecord {
        p,
        scalars: Some(st.scalars()),
        residuals,
        error: blocked.then(|| PREFLIGHT_FAILED.to_string()),
    }
}

/// Every residual the group evaluators produce at `st`, for all groups.
pub fn all_residuals(st: &PointState) -> Residuals {
    let mut out = Residuals::new();
    for g in catalogue::ALL_GROUPS {
        run_group(g, st, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::preset;

    #[test]
    fn evaluators_emit_exactly_the_catalogue() {
        let inst = preset("hyperbolic3sym").unwrap();
        let st = PointState::new(&inst.geometry, [1.2, 0.1, 0.3, -0.2], inst.geometry.as_family()).unwrap();
        for g in catalogue::ALL_GROUPS {
            let mut out = Residuals::new();
            run_group(g, &st, &mut out);
            let emitted: BTreeSet<&str> = out.keys().copied().collect();
            let listed: BTreeSet<&str> = catalogue::in_groups(&BTreeSet::from([g])).map(|c| c.name).collect();
            assert_eq!(emitted, listed, "group {g}");
        }
    }

    #[test]
    fn empty_selection_runs_preflight_only() {
        let inst = preset("gibbons_hawking").unwrap();
        let rec = evaluate_point(&inst, [1.1, 0.2, 0.0, 0.4], &BTreeSet::new(), 1.0);
        let names: Vec<&str> = rec.residuals.keys().map(String::as_str).collect();
        assert_eq!(
            names,
            ["cauchy_riemann", "d_omega", "j_orthogonal", "j_squared", "metric_spd", "omega_norm"]
        );
        assert!(rec.error.is_none());
    }

    #[test]
    fn point_errors_are_recorded() {
        let inst = preset("hyperbolic3sym").unwrap();
        let rec = evaluate_point(&inst, [-1.0, 0.0, 0.0, 0.0], &BTreeSet::from([Group::Gray]), 1.0);
        assert!(rec.error.is_some());
        assert!(rec.scalars.is_none());
        assert!(matches!(rec.residuals["g3_iv"], Outcome::Error { .. }));
    }
}

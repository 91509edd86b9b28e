//! Run configuration: flags, optional JSON config file, instance lookup.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use akv_core::almost_hermitian::catalogue::{Group, Tier};
use akv_core::family::{preset, preset_names, Instance};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

/// A preset name or a full instance definition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InstanceRef {
    Name(String),
    Inline(Box<Instance>),
}

/// The JSON config file. Every field is optional; command-line flags win.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub instance: Option<InstanceRef>,
    pub checks: Option<Vec<String>>,
    pub points: Option<usize>,
    pub seed: Option<u64>,
    pub tol_scale: Option<f64>,
    #[serde(default)]
    pub tolerances: BTreeMap<Tier, f64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub instance: Instance,
    pub groups: BTreeSet<Group>,
    pub points: usize,
    pub seed: u64,
    pub tol_scale: f64,
    pub tolerances: BTreeMap<Tier, f64>,
    pub out: Option<PathBuf>,
    pub format: Format,
}

pub const DEFAULT_POINTS: usize = 25;
pub const DEFAULT_SEED: u64 = 0;
const ALL: &str = "all";

impl RunConfig {
    /// Tolerance of a tier after overrides, before `tol_scale`.
    pub fn tier_tolerance(&self, t: Tier) -> f64 {
        self.tolerances.get(&t).copied().unwrap_or_else(|| t.tolerance())
    }

    pub fn with_instance(instance: Instance) -> Self {
        RunConfig {
            instance,
            groups: akv_core::almost_hermitian::catalogue::ALL_GROUPS.into_iter().collect(),
            points: DEFAULT_POINTS,
            seed: DEFAULT_SEED,
            tol_scale: 1.0,
            tolerances: BTreeMap::new(),
            out: None,
            format: Format::Json,
        }
    }
}

/// Parses a comma-separated group list; `all` selects every group and an
/// empty list leaves only the preflight.
pub fn parse_groups<S: AsRef<str>>(items: &[S]) -> Result<BTreeSet<Group>, CliError> {
    let mut out = BTreeSet::new();
    for item in items {
        for name in item.as_ref().split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if name == ALL {
                out.extend(akv_core::almost_hermitian::catalogue::ALL_GROUPS);
            } else {
                out.insert(name.parse::<Group>().map_err(CliError::Config)?);
            }
        }
    }
    Ok(out)
}

/// Resolves `--instance`: a preset name, else a path to an instance JSON file.
pub fn resolve_instance(arg: &str) -> Result<Instance, CliError> {
    if preset_names().contains(&arg) {
        return preset(arg).map_err(|e| CliError::Config(e.to_string()));
    }
    let path = Path::new(arg);
    if !path.exists() {
        return Err(CliError::Config(format!(
            "`{arg}` is neither a preset ({}) nor a readable file",
            preset_names().join(", ")
        )));
    }
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{arg}: {e}")))?;
    parse_instance(&text).map_err(|e| CliError::Config(format!("{arg}: {e}")))
}

fn parse_instance(text: &str) -> Result<Instance, String> {
    match serde_json::from_str::<InstanceRef>(text).map_err(|e| e.to_string())? {
        InstanceRef::Inline(i) => Ok(*i),
        InstanceRef::Name(n) => preset(&n).map_err(|e| e.to_string()),
    }
}

pub fn read_config_file(path: &Path) -> Result<ConfigFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

/// Command-line values for `verify`; `None` means not given.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub instance: Option<String>,
    pub checks: Option<Vec<String>>,
    pub points: Option<usize>,
    pub seed: Option<u64>,
    pub tol_scale: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

pub fn build(file: Option<ConfigFile>, cli: Overrides) -> Result<RunConfig, CliError> {
    let file = file.unwrap_or_default();
    let instance = match (cli.instance, file.instance) {
        (Some(arg), _) => resolve_instance(&arg)?,
        (None, Some(InstanceRef::Name(n))) => preset(&n).map_err(|e| CliError::Config(e.to_string()))?,
        (None, Some(InstanceRef::Inline(i))) => *i,
        (None, None) => return Err(CliError::Config("no instance given".into())),
    };
    instance.validate().map_err(|e| CliError::Config(e.to_string()))?;
    let checks = cli.checks.or(file.checks).unwrap_or_else(|| vec![ALL.to_string()]);
    let groups = parse_groups(&checks)?;
    let points = cli.points.or(file.points).unwrap_or(DEFAULT_POINTS);
    if points == 0 {
        return Err(CliError::Config("--points must be at least 1".into()));
    }
    let tol_scale = cli.tol_scale.or(file.tol_scale).unwrap_or(1.0);
    if !(tol_scale.is_finite() && tol_scale > 0.0) {
        return Err(CliError::Config("--tol-scale must be positive".into()));
    }
    if let Some((t, v)) = file.tolerances.iter().find(|(_, v)| !(v.is_finite() && **v > 0.0)) {
        return Err(CliError::Config(format!("tolerance for {t:?} must be positive, got {v}")));
    }
    Ok(RunConfig {
        instance,
        groups,
        points,
        seed: cli.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
        tol_scale,
        tolerances: file.tolerances,
        out: cli.out.or(file.out),
        format: cli.format.or(file.format).unwrap_or(Format::Json),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_parse_and_reject_unknown() {
        let g = parse_groups(&["gray,u2"]).unwrap();
        assert_eq!(g, BTreeSet::from([Group::Gray, Group::U2]));
        assert_eq!(parse_groups(&["all"]).unwrap().len(), 7);
        assert!(parse_groups::<&str>(&[]).unwrap().is_empty());
        assert!(matches!(parse_groups(&["gray,nope"]), Err(CliError::Config(_))));
    }

    #[test]
    fn flags_override_file() {
        let file: ConfigFile = serde_json::from_str(
            r#"{"instance": "poly2", "points": 3, "seed": 9, "tolerances": {"first_order": 1e-6}}"#,
        )
        .unwrap();
        let cfg = build(
            Some(file),
            Overrides {
                points: Some(5),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(cfg.instance.name, "poly2");
        assert_eq!((cfg.points, cfg.seed), (5, 9));
        assert_eq!(cfg.tier_tolerance(Tier::FirstOrder), 1e-6);
        assert_eq!(cfg.tier_tolerance(Tier::Algebraic), 1e-10);
    }

    #[test]
    fn bad_values_are_config_errors() {
        let o = |f: fn(&mut Overrides)| {
            let mut o = Overrides {
                instance: Some("poly2".into()),
                ..Default::default()
            };
            f(&mut o);
            build(None, o)
        };
        assert!(matches!(o(|o| o.points = Some(0)), Err(CliError::Config(_))));
        assert!(matches!(o(|o| o.tol_scale = Some(-1.0)), Err(CliError::Config(_))));
        assert!(matches!(o(|o| o.instance = Some("no_such".into())), Err(CliError::Config(_))));
        assert!(matches!(build(None, Overrides::default()), Err(CliError::Config(_))));
    }
}

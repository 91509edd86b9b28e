use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use akv_core::almost_hermitian::catalogue::CATALOGUE;
use akv_core::family::{preset, preset_names, random_almost_kahler, Geometry, Instance};
use clap::{Parser, Subcommand};

use akv_cli::config::{self, Format, Overrides};
use akv_cli::error::{CliError, EXIT_FAIL, EXIT_PASS};

#[derive(Parser)]
#[command(name = "akv", version, about = "Pointwise residuals of almost Kähler curvature identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate identity checks at sample points of an instance.
    Verify {
        /// Preset name or path to an instance JSON file.
        #[arg(long)]
        instance: Option<String>,
        /// JSON run configuration; flags override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Comma-separated groups (compat, gray, u2, bianchi, weitzenbock,
        /// section4, chern) or `all`. An empty list runs the preflight only.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        checks: Option<Vec<String>>,
        #[arg(long)]
        points: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Multiplies every tolerance.
        #[arg(long)]
        tol_scale: Option<f64>,
    },
    /// Print the check catalogue.
    ListChecks {
        #[arg(long)]
        json: bool,
    },
    /// List presets, or print one as instance JSON.
    Presets {
        #[arg(long)]
        show: Option<String>,
    },
    /// Print a random almost Kähler raw-metric instance as JSON.
    RandomSpec {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn verify(file: Option<PathBuf>, overrides: Overrides) -> Result<bool, CliError> {
    let file = file.as_deref().map(config::read_config_file).transpose()?;
    let cfg = config::build(file, overrides)?;
    let report = akv_cli::run(&cfg)?;
    report.emit(cfg.format, cfg.out.as_deref())?;
    let failed: Vec<&str> = report
        .summary
        .checks
        .iter()
        .filter(|(_, c)| c.pass == Some(false))
        .map(|(n, _)| n.as_str())
        .collect();
    if report.summary.pass {
        eprintln!("pass: {} ({} points)", cfg.instance.name, cfg.points);
    } else {
        eprintln!(
            "FAIL: {} ({} point errors; failing checks: {})",
            cfg.instance.name,
            report.meta.point_errors,
            failed.join(", ")
        );
    }
    Ok(report.summary.pass)
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Writes listing output; a closed pipe (`akv list-checks | head`) is not an error.
fn print(text: &str) -> Result<(), CliError> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io(e.to_string())),
        _ => Ok(()),
    }
}

fn dispatch(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Verify {
            instance,
            config,
            checks,
            points,
            seed,
            out,
            format,
            tol_scale,
        } => verify(
            config,
            Overrides {
                instance,
                checks,
                points,
                seed,
                tol_scale,
                out,
                format,
            },
        ),
        Command::ListChecks { json } => {
            let mut text = String::new();
            if json {
                text = to_json(&CATALOGUE);
            } else {
                for c in CATALOGUE {
                    let requires: Vec<String> = c.requires.iter().map(|h| format!("{h:?}").to_lowercase()).collect();
                    let _ = writeln!(
                        text,
                        "{} → {}  [{}; {:?} {:e}{}]",
                        c.name,
                        c.formula,
                        c.group,
                        c.tier,
                        c.tier.tolerance(),
                        if requires.is_empty() {
                            String::new()
                        } else {
                            format!("; requires {}", requires.join("+"))
                        }
                    );
                }
            }
            print(&text)?;
            Ok(true)
        }
        Command::Presets { show } => {
            let text = match show {
                Some(name) => to_json(&preset(&name).map_err(|e| CliError::Config(e.to_string()))?),
                None => preset_names()
                    .iter()
                    .map(|name| {
                        let inst = preset(name).expect("known preset");
                        let hs: Vec<String> = inst.hypotheses.iter().map(|h| format!("{h:?}").to_lowercase()).collect();
                        format!("{name}  [{}]\n", hs.join(", "))
                    })
                    .collect(),
            };
            print(&text)?;
            Ok(true)
        }
        Command::RandomSpec { seed } => {
            let inst = Instance::new(format!("random_{seed}"), Geometry::Raw(random_almost_kahler(seed)));
            print(&to_json(&inst))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(true) => ExitCode::from(EXIT_PASS as u8),
        Ok(false) => ExitCode::from(EXIT_FAIL as u8),
        Err(e) => {
            eprintln!("akv: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

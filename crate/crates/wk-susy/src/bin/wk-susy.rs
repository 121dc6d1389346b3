//! Thin command-line front end over the scenario runner.
//!
//! Exit codes: 0 when every check passes, 1 when any check fails,
//! 2 on usage or configuration errors.

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use wk_susy::report::{emit, ReportFormat, RunReport};
use wk_susy::scenario::{run_scenario, ScenarioConfig};

#[derive(Parser)]
#[command(name = "wk-susy", version, about = "Graded ladder-algebra model verifier")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario described by a JSON config file.
    Run {
        /// Path to the scenario config.
        #[arg(long)]
        config: std::path::PathBuf,
        /// Output format: json, csv or text.
        #[arg(long)]
        format: Option<String>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Shorthand: verify a catalog model without a config file.
    Verify {
        /// Model name: oscillator, c_lambda, linear, uq_sl2.
        #[arg(long)]
        model: String,
        /// Grading order.
        #[arg(long)]
        k: usize,
        /// Boson truncation depth.
        #[arg(long)]
        d: usize,
        /// Single-parameter coupling for c_lambda.
        #[arg(long)]
        c: Option<f64>,
        /// Linear-model slope.
        #[arg(long)]
        a: Option<f64>,
        /// Linear-model offset.
        #[arg(long)]
        b: Option<f64>,
        /// Scenario to run (defaults to verify-wk).
        #[arg(long, default_value = "verify-wk")]
        scenario: String,
        /// Output format: json, csv or text.
        #[arg(long, default_value = "text")]
        format: String,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

fn write_report(
    report: &RunReport,
    format: ReportFormat,
    out: Option<&std::path::Path>,
) -> std::io::Result<()> {
    let rendered = emit(report, format);
    match out {
        Some(path) => std::fs::write(path, rendered)?,
        None => std::io::stdout().write_all(rendered.as_bytes())?,
    }
    Ok(())
}

fn fail(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { config, format, out } => {
            let text = match std::fs::read_to_string(&config) {
                Ok(t) => t,
                Err(e) => return fail(format!("cannot read {}: {e}", config.display())),
            };
            let parsed = match ScenarioConfig::from_json(&text) {
                Ok(p) => p,
                Err(e) => return fail(e),
            };
            let format = match format {
                Some(f) => match f.parse::<ReportFormat>() {
                    Ok(f) => f,
                    Err(e) => return fail(e),
                },
                None => match parsed.format() {
                    Ok(f) => f,
                    Err(e) => return fail(e),
                },
            };
            let out = out.or_else(|| {
                parsed
                    .output
                    .as_ref()
                    .and_then(|o| o.path.clone())
                    .map(std::path::PathBuf::from)
            });
            let report = match run_scenario(&parsed) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            if let Err(e) = write_report(&report, format, out.as_deref()) {
                return fail(e);
            }
            if report.overall_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Verify { model, k, d, c, a, b, scenario, format, out } => {
            let mut params = serde_json::Map::new();
            if let Some(c) = c {
                params.insert("c".into(), serde_json::json!(c));
            }
            if let Some(a) = a {
                params.insert("a".into(), serde_json::json!(a));
            }
            if let Some(b) = b {
                params.insert("b".into(), serde_json::json!(b));
            }
            let config_json = serde_json::json!({
                "scenario": scenario,
                "model": {
                    "model": model,
                    "k": k,
                    "d": d,
                    "params": if params.is_empty() {
                        serde_json::Value::Null
                    } else {
                        serde_json::Value::Object(params)
                    },
                },
            });
            let parsed = match ScenarioConfig::from_json(&config_json.to_string()) {
                Ok(p) => p,
                Err(e) => return fail(e),
            };
            let format = match format.parse::<ReportFormat>() {
                Ok(f) => f,
                Err(e) => return fail(e),
            };
            let report = match run_scenario(&parsed) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            if let Err(e) = write_report(&report, format, out.as_deref()) {
                return fail(e);
            }
            if report.overall_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}

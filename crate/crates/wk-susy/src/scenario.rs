//! Config-driven scenario runner: parses a JSON scenario description,
//! dispatches to the owning module and aggregates a run report.

use num_complex::Complex64 as C64;
use serde::Deserialize;

use crate::error::{Result, WkError};
use crate::fock::{GradedBasis, ToleranceConfig};
use crate::operator::RelationReport;
use crate::report::{CheckRecord, ReportFormat, RunReport};
use crate::wk::{build_generators, build_generators_balanced, StructureSpec, WkGenerators};

/// Scenario description as read from a config file.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: String,
    pub model: ModelConfig,
    #[serde(default)]
    pub tolerances: Option<ToleranceConfig>,
    #[serde(default)]
    pub output: Option<OutputConfig>,
    #[serde(default)]
    pub spectrum: Option<SpectrumConfig>,
    #[serde(default)]
    pub coherent: Option<CoherentConfig>,
    #[serde(default)]
    pub quon: Option<QuonConfig>,
    #[serde(default)]
    pub diffreal: Option<DiffrealConfig>,
    #[serde(default)]
    pub fd: Option<FdConfig>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub model: String,
    pub k: usize,
    pub d: usize,
    #[serde(default)]
    pub params: Option<serde_json::Value>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default)]
    pub format: Option<String>,
    #[serde(default)]
    pub path: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumConfig {
    #[serde(default)]
    pub discard_top: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoherentConfig {
    pub z: [f64; 2],
    #[serde(default)]
    pub t: Vec<f64>,
    #[serde(default)]
    pub depth: Option<usize>,
    #[serde(default)]
    pub margin: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuonConfig {
    #[serde(default)]
    pub epsilons: Option<Vec<f64>>,
    #[serde(default)]
    pub depth: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiffrealConfig {
    #[serde(default)]
    pub c: Option<f64>,
    #[serde(default)]
    pub half_width: Option<i64>,
    #[serde(default)]
    pub variant: Option<String>,
    #[serde(default)]
    pub margin: Option<i64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FdConfig {
    #[serde(default)]
    pub domain: Option<f64>,
    #[serde(default)]
    pub points: Option<usize>,
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: ScenarioConfig = serde_json::from_str(text).map_err(|e| WkError::Config {
            path: e.to_string(),
            message: "scenario config does not match the schema".into(),
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        const SCENARIOS: &[&str] = &[
            "verify-wk",
            "verify-susy",
            "spectrum",
            "subsystems",
            "realization-crosscheck",
            "uqsl2",
            "quon-limit",
            "grassmann",
            "diffreal",
            "fd-spectrum",
            "coherent",
        ];
        if !SCENARIOS.contains(&self.scenario.as_str()) {
            return Err(WkError::Config {
                path: "scenario".into(),
                message: format!("unknown scenario `{}`", self.scenario),
            });
        }
        if !(2..=8).contains(&self.model.k) {
            return Err(WkError::Config {
                path: "model.k".into(),
                message: format!("grading order {} outside 2..=8", self.model.k),
            });
        }
        if !(4..=200).contains(&self.model.d) {
            return Err(WkError::Config {
                path: "model.d".into(),
                message: format!("depth {} outside 4..=200", self.model.d),
            });
        }
        if let Some(t) = &self.tolerances {
            t.validate()?;
        }
        Ok(())
    }

    pub fn tolerances(&self) -> ToleranceConfig {
        self.tolerances.unwrap_or_default()
    }

    pub fn format(&self) -> Result<ReportFormat> {
        match self.output.as_ref().and_then(|o| o.format.as_deref()) {
            None => Ok(ReportFormat::Json),
            Some(f) => f.parse().map_err(|e: String| WkError::Config {
                path: "output.format".into(),
                message: e,
            }),
        }
    }
}

impl ModelConfig {
    pub fn to_spec(&self) -> Result<StructureSpec> {
        let params = self.params.clone().unwrap_or(serde_json::Value::Null);
        let get_f64 = |key: &str| -> Option<f64> { params.get(key).and_then(|v| v.as_f64()) };
        match self.model.as_str() {
            "oscillator" => Ok(StructureSpec::Oscillator),
            "c_lambda" => {
                if let Some(list) = params.get("coeffs").and_then(|v| v.as_array()) {
                    let coeffs = list
                        .iter()
                        .map(|v| {
                            v.as_f64().ok_or_else(|| WkError::Config {
                                path: "model.params.coeffs".into(),
                                message: "coefficients must be numbers".into(),
                            })
                        })
                        .collect::<Result<Vec<f64>>>()?;
                    Ok(StructureSpec::CLambda { coeffs })
                } else if let Some(c) = get_f64("c") {
                    Ok(StructureSpec::c_lambda_single(self.k, c))
                } else {
                    Err(WkError::Config {
                        path: "model.params".into(),
                        message: "c_lambda needs `c` or `coeffs`".into(),
                    })
                }
            }
            "linear" => {
                let a = get_f64("a").ok_or_else(|| WkError::Config {
                    path: "model.params.a".into(),
                    message: "linear model needs `a`".into(),
                })?;
                let b = get_f64("b").ok_or_else(|| WkError::Config {
                    path: "model.params.b".into(),
                    message: "linear model needs `b`".into(),
                })?;
                Ok(StructureSpec::LinearG { a, b })
            }
            "uq_sl2" => Ok(StructureSpec::UqSl2),
            "custom" => {
                let n_min = params.get("n_min").and_then(|v| v.as_i64()).unwrap_or(0);
                let rows = params
                    .get("rows")
                    .and_then(|v| v.as_array())
                    .ok_or_else(|| WkError::Config {
                        path: "model.params.rows".into(),
                        message: "custom model needs `rows`".into(),
                    })?
                    .iter()
                    .map(|row| {
                        row.as_array()
                            .map(|xs| xs.iter().filter_map(|x| x.as_f64()).collect::<Vec<f64>>())
                            .ok_or_else(|| WkError::Config {
                                path: "model.params.rows".into(),
                                message: "rows must be arrays of numbers".into(),
                            })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(StructureSpec::CustomTable { n_min, rows })
            }
            other => Err(WkError::Config {
                path: "model.model".into(),
                message: format!("unknown model `{other}`"),
            }),
        }
    }

    /// Sign-indefinite structure functions need the balanced amplitude
    /// convention; everything else goes through the strict builder so that
    /// out-of-domain models fail loudly.
    pub fn build(&self, basis: &GradedBasis) -> Result<WkGenerators> {
        let spec = self.to_spec()?;
        if matches!(spec, StructureSpec::UqSl2) {
            build_generators_balanced(&spec, basis)
        } else {
            build_generators(&spec, basis)
        }
    }
}

/// Override the relative tolerance from the conventional environment string.
pub fn apply_env_tolerance(tol: &mut ToleranceConfig, env_value: Option<String>) -> Result<()> {
    if let Some(text) = env_value {
        let parsed: f64 = text.parse().map_err(|_| WkError::Config {
            path: "WK_SUSY_TOL".into(),
            message: format!("`{text}` is not a number"),
        })?;
        if parsed <= 0.0 {
            return Err(WkError::Config {
                path: "WK_SUSY_TOL".into(),
                message: "tolerance must be positive".into(),
            });
        }
        tol.rel_tol = parsed;
    }
    Ok(())
}

fn prefixed(prefix: &str, relations: RelationReport) -> RelationReport {
    let mut out = RelationReport::default();
    for mut c in relations.checks {
        c.name = format!("{prefix}.{}", c.name);
        out.checks.push(c);
    }
    out
}

/// Run one scenario to completion.
pub fn run_scenario(config: &ScenarioConfig) -> Result<RunReport> {
    let started = std::time::Instant::now();
    let mut tol = config.tolerances();
    apply_env_tolerance(&mut tol, std::env::var("WK_SUSY_TOL").ok())?;
    let mut report = RunReport::new(config.scenario.clone());

    let outcome = dispatch(config, &tol, &mut report);
    report.wall_time_s = started.elapsed().as_secs_f64();
    match outcome {
        Ok(()) => Ok(report),
        Err(e) => Err(WkError::Config {
            path: format!("scenario `{}`", config.scenario),
            message: e.to_string(),
        }),
    }
}

fn dispatch(config: &ScenarioConfig, tol: &ToleranceConfig, report: &mut RunReport) -> Result<()> {
    let k = config.model.k;
    let d = config.model.d;
    match config.scenario.as_str() {
        "verify-wk" => {
            let basis = GradedBasis::new(k, d)?;
            let gen = config.model.build(&basis)?;
            report.absorb_relations(crate::wk::verify_wk_relations(&gen, tol)?);
        }
        "verify-susy" => {
            let basis = GradedBasis::new(k, d)?;
            let gen = config.model.build(&basis)?;
            let doublet = crate::susy::build_susy_doublet(&gen, tol)?;
            report.absorb_relations(doublet.axiom_report.clone());
        }
        "spectrum" => {
            let basis = GradedBasis::new(k, d)?;
            let gen = config.model.build(&basis)?;
            let (h, _, _) = crate::susy::build_hamiltonian_general(&gen)?;
            let discard = config
                .spectrum
                .as_ref()
                .and_then(|s| s.discard_top)
                .unwrap_or(2 * k);
            let pattern = crate::susy::degeneracy_pattern(&h, &basis, discard, tol)?;
            let increasing = pattern.levels.windows(2).all(|w| w[1].0 > w[0].0);
            report.push(CheckRecord::value(
                "spectrum.levels_strictly_increasing",
                if increasing { 1.0 } else { 0.0 },
                Some(1.0),
                increasing,
            ));
            if matches!(gen.spec, StructureSpec::Oscillator) {
                // multiplicity ladder 1, 2, ..., k-1 followed by k everywhere
                let mults = pattern.multiplicities();
                let ok = mults.iter().enumerate().all(|(i, &m)| m == (i + 1).min(k));
                report.push(CheckRecord::value(
                    "spectrum.oscillator_multiplicity_ladder",
                    if ok { 1.0 } else { 0.0 },
                    Some(1.0),
                    ok,
                ));
            }
            report.pattern = Some(pattern.levels.clone());
            report.refresh();
        }
        "subsystems" => {
            let basis = GradedBasis::new(k, d)?;
            let gen = config.model.build(&basis)?;
            let doublet = crate::susy::build_susy_doublet(&gen, tol)?;
            let subs = crate::susy::factorize_subsystems_balanced(&gen, &doublet.table)?;
            report.absorb_relations(crate::susy::verify_subsystems(&gen, &doublet, &subs, tol)?);
        }
        "realization-crosscheck" => {
            let basis = GradedBasis::new(k, d)?;
            let spec = config.model.to_spec()?;
            let realized = crate::kfermion::build_realized_generators(&spec, &basis)?;
            let abstract_gen = build_generators_balanced(&spec, &basis)?;
            for (name, a, b) in [
                ("realization.lowering_match", &realized.x_minus, &abstract_gen.x_minus),
                ("realization.raising_match", &realized.x_plus, &abstract_gen.x_plus),
                ("realization.grading_match", &realized.grading, &abstract_gen.grading),
                ("realization.number_match", &realized.number, &abstract_gen.number),
            ] {
                let diff = a.max_abs_diff(b)?;
                report.push(CheckRecord::residual(name, diff, diff <= tol.rel_tol));
            }
            report.absorb_relations(crate::wk::verify_wk_relations(&realized, tol)?);
        }
        "uqsl2" => {
            for (tag, rep_type) in [
                ("nilpotent", crate::uqsl2::RepType::Nilpotent),
                ("cyclic", crate::uqsl2::RepType::Cyclic),
                ("semiperiodic", crate::uqsl2::RepType::SemiPeriodic),
            ] {
                let rep = crate::uqsl2::build_uqsl2_rep(k, rep_type)?;
                report.absorb_relations(prefixed(tag, crate::uqsl2::verify_uqsl2_relations(&rep, tol)?));
                report.absorb_relations(prefixed(tag, crate::uqsl2::verify_uqsl2_embedding(&rep, tol)?));
            }
        }
        "quon-limit" => {
            let depth = config.quon.as_ref().and_then(|q| q.depth).unwrap_or(24);
            let epsilons = config
                .quon
                .as_ref()
                .and_then(|q| q.epsilons.clone())
                .unwrap_or_else(|| vec![1e-1, 1e-2, 1e-3]);
            let study = crate::quon::quon_limit_study(k, depth, &epsilons)?;
            for row in &study.rows {
                report.push(CheckRecord::value(
                    format!("quon.residual_eps_{:e}", row.epsilon),
                    row.residual,
                    None,
                    true,
                ));
            }
            report.push(CheckRecord::value(
                "quon.residual_strictly_decreasing",
                if study.strictly_decreasing { 1.0 } else { 0.0 },
                Some(1.0),
                study.strictly_decreasing,
            ));
            report.push(CheckRecord::value(
                "quon.convergence_order_estimate",
                study.order_estimate,
                None,
                true,
            ));
        }
        "grassmann" => {
            report.absorb_relations(crate::grassmann::verify_grassmann_relations(k, tol)?);
        }
        "diffreal" => {
            let cfg = config.diffreal.clone().unwrap_or(DiffrealConfig {
                c: None,
                half_width: None,
                variant: None,
                margin: None,
            });
            let c = cfg.c.unwrap_or(0.0);
            let half_width = cfg.half_width.unwrap_or(12);
            let margin = cfg.margin.unwrap_or(3);
            let variant = match cfg.variant.as_deref() {
                None | Some("first") => crate::diffreal::RealizationVariant::First,
                Some("canonical") => crate::diffreal::RealizationVariant::Canonical,
                Some(other) => {
                    return Err(WkError::Config {
                        path: "diffreal.variant".into(),
                        message: format!("unknown variant `{other}`"),
                    })
                }
            };
            let real = crate::diffreal::build_differential_realization(k, c, half_width, variant)?;
            report.absorb_relations(crate::diffreal::verify_differential_realization(
                &real, margin, tol,
            )?);
            if k == 2 && variant == crate::diffreal::RealizationVariant::First {
                report.absorb_relations(crate::diffreal::verify_k2_supercharges(&real, margin, tol)?);
            }
        }
        "fd-spectrum" => {
            let cfg = config.fd.clone().unwrap_or(FdConfig { domain: None, points: None });
            let grid =
                crate::fd::FdGrid::new(cfg.domain.unwrap_or(8.0), cfg.points.unwrap_or(2001))?;
            let levels = crate::fd::fd_spectrum_super_oscillator(grid, 5)?;
            let exact = crate::fd::exact_super_oscillator_levels(5);
            for (i, (got, want)) in levels.iter().zip(exact.iter()).enumerate() {
                let ok = (got - want).abs() <= 1e-3;
                report.push(CheckRecord::value(format!("fd.level{i}"), *got, Some(*want), ok));
            }
            let conv = crate::fd::fd_convergence_study(grid, 5)?;
            let ok = conv.ratio >= 3.5 && conv.ratio <= 4.5;
            report.push(CheckRecord::value("fd.grid_doubling_ratio", conv.ratio, Some(4.0), ok));
        }
        "coherent" => {
            let cfg = config.coherent.as_ref().ok_or_else(|| WkError::Config {
                path: "coherent".into(),
                message: "coherent scenario needs a `coherent` block with `z`".into(),
            })?;
            let depth = cfg.depth.unwrap_or(24);
            let margin = cfg.margin.unwrap_or(4);
            let z = C64::new(cfg.z[0], cfg.z[1]);
            let state = crate::coherent::construct_supercoherent(z, k, depth)?;
            report.absorb_relations(crate::coherent::lowering_eigen_check(&state, margin, tol)?);
            if !cfg.t.is_empty() {
                let basis = GradedBasis::new(k, depth)?;
                let gen = build_generators(&StructureSpec::Oscillator, &basis)?;
                let (_, table, _) = crate::susy::build_hamiltonian_general(&gen)?;
                for &t in &cfg.t {
                    let rel = crate::coherent::evolution_check(&state, &table, t, tol)?;
                    report.absorb_relations(prefixed(&format!("t_{t:e}"), rel));
                }
            }
        }
        other => {
            return Err(WkError::Config {
                path: "scenario".into(),
                message: format!("unknown scenario `{other}`"),
            })
        }
    }
    report.refresh();
    Ok(())
}

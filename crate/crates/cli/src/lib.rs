//! Subcommands of the `spectral-fe` experiment driver.
//!
//! Every command reads the same JSON config, writes its artifacts into the
//! output directory and prints the main report on stdout. Each artifact
//! carries the config hash and seed. Exit codes: 0 success, 1 invalid input
//! or runtime error, 2 when a computed pass flag is false.

pub mod config;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use spectral_fe::estimate::{reconstruct_dos, report_from, estimate_partition, EstimateReport};
use spectral_fe::io::{samples_from_csv, samples_to_csv, PlanDescriptor};
use spectral_fe::lattice::bandwidth_bound;
use spectral_fe::noise::{
    failure_probability, monte_carlo_with_plan, predict_variance, required_sigma_g, VarianceOptions,
};
use spectral_fe::plan::{kappa, kappa_prime, mu, plan_for_spectrum, scaling_study, SamplingPlan};
use spectral_fe::sampler::sample_series;
use spectral_fe::spectrum::{exact_spectrum, partition_function, Spectrum};
use spectral_fe::window::check_lemmas;

use config::ExperimentConfig;

pub const ENV_OUT_DIR: &str = "SPECTRAL_FE_OUT_DIR";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] config::ConfigError),
    #[error(transparent)]
    Core(#[from] spectral_fe::Error),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::Io(format!("{}: {e}", path.display()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// Outcome of a command: its stdout rendering and whether it passed.
pub struct Outcome {
    pub stdout: String,
    pub pass: bool,
}

pub struct Context {
    pub config: ExperimentConfig,
    pub hash: String,
    pub out_dir: PathBuf,
    pub format: Format,
}

impl Context {
    fn provenance(&self) -> Value {
        json!({
            "config_sha256": self.hash,
            "seed": self.config.run.seed,
            "version": env!("CARGO_PKG_VERSION"),
        })
    }

    fn comment_line(&self) -> String {
        format!("# {}\n", self.provenance())
    }

    fn write(&self, name: &str, contents: &str) -> Result<PathBuf, CliError> {
        std::fs::create_dir_all(&self.out_dir).map_err(|e| CliError::io(&self.out_dir, e))?;
        let path = self.out_dir.join(name);
        std::fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
        Ok(path)
    }

    fn write_json(&self, name: &str, value: &Value) -> Result<String, CliError> {
        let text = serde_json::to_string_pretty(value).expect("JSON value serializes") + "\n";
        self.write(name, &text)?;
        Ok(text)
    }

    fn render(&self, value: &Value, json_text: String) -> String {
        match self.format {
            Format::Json => json_text,
            Format::Text => aligned_text(value),
        }
    }
}

/// Human-readable `key  value` rendering of a flat-ish JSON object.
pub fn aligned_text(value: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", value, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
    out
}

fn flatten(prefix: &str, value: &Value, rows: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, rows);
            }
        }
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

/// Spectrum and the plan used for it (exact spread or the lattice bound).
fn spectrum_and_plan(cfg: &ExperimentConfig) -> Result<(Spectrum, SamplingPlan, f64), CliError> {
    let h = cfg.hamiltonian()?;
    let spectrum = exact_spectrum(&h)?;
    let spread = if cfg.run.use_bandwidth_bound {
        bandwidth_bound(&h)
    } else {
        spectrum.bandwidth()
    };
    let plan = plan_for_spectrum(&cfg.budget(), spread, cfg.limits())?;
    Ok((spectrum, plan, spread))
}

fn plan_json(cfg: &ExperimentConfig, plan: &SamplingPlan, spread: f64) -> Value {
    let budget = cfg.budget();
    json!({
        "xi": budget.xi(),
        "delta_e": plan.resolution(),
        "theta": plan.order(),
        "T0": plan.base_width(),
        "dt": plan.dt(),
        "N": plan.total_samples(),
        "delta_E": plan.bandwidth(),
        "spectral_spread": spread,
        "energy_offset": plan.energy_offset(),
        "mu": mu(),
        "kappa": kappa(),
        "kappa_prime": kappa_prime(),
        "bandwidth_source": if cfg.run.use_bandwidth_bound { "lattice_bound" } else { "exact_spread" },
    })
}

fn with_provenance(ctx: &Context, mut v: Value) -> Value {
    v.as_object_mut()
        .expect("reports are objects")
        .insert("provenance".into(), ctx.provenance());
    v
}

pub fn cmd_plan(ctx: &Context) -> Result<Outcome, CliError> {
    let (_, plan, spread) = spectrum_and_plan(&ctx.config)?;
    let v = with_provenance(ctx, plan_json(&ctx.config, &plan, spread));
    let text = ctx.write_json("plan.json", &v)?;
    Ok(Outcome {
        stdout: ctx.render(&v, text),
        pass: true,
    })
}

pub fn cmd_sample(ctx: &Context) -> Result<Outcome, CliError> {
    let cfg = &ctx.config;
    let (spectrum, plan, spread) = spectrum_and_plan(cfg)?;
    let set = sample_series(&spectrum, &plan, cfg.noise, cfg.run.seed)?;
    let csv = samples_to_csv(&set, Some(ctx.provenance()));
    let path = ctx.write("samples.csv", &csv)?;
    ctx.write_json("plan.json", &with_provenance(ctx, plan_json(cfg, &plan, spread)))?;
    let v = with_provenance(
        ctx,
        json!({
            "samples": set.samples.len(),
            "path": path.display().to_string(),
            "noise": to_value(&cfg.noise),
        }),
    );
    let text = serde_json::to_string_pretty(&v).expect("serializes") + "\n";
    Ok(Outcome {
        stdout: ctx.render(&v, text),
        pass: true,
    })
}

fn write_estimate(ctx: &Context, report: &EstimateReport, dos_csv: String) -> Result<Outcome, CliError> {
    let mut v = to_value(report);
    if let Some(obj) = v.as_object_mut() {
        obj.insert("gamma".into(), json!(ctx.config.budget.gamma));
        obj.insert("beta".into(), json!(ctx.config.budget.beta));
    }
    let v = with_provenance(ctx, v);
    let text = ctx.write_json("report.json", &v)?;
    ctx.write("dos.csv", &(ctx.comment_line() + &dos_csv))?;
    Ok(Outcome {
        stdout: ctx.render(&v, text),
        pass: report.pass,
    })
}

/// Estimates from a sample file; the plan comes from the file header and is
/// checked against `plan_file` when given.
pub fn cmd_estimate(ctx: &Context, samples: &Path, plan_file: Option<&Path>) -> Result<Outcome, CliError> {
    let cfg = &ctx.config;
    let text = std::fs::read_to_string(samples).map_err(|e| CliError::io(samples, e))?;
    let (set, _) = samples_from_csv(&text)?;
    if let Some(pf) = plan_file {
        let raw = std::fs::read_to_string(pf).map_err(|e| CliError::io(pf, e))?;
        let pj: Value = serde_json::from_str(&raw).map_err(|e| CliError::Io(format!("{}: {e}", pf.display())))?;
        let d = PlanDescriptor::of(&set.plan);
        let same = pj["theta"].as_u64() == Some(d.order as u64)
            && pj["N"].as_u64() == Some(d.total_samples)
            && pj["delta_e"].as_f64() == Some(d.resolution)
            && pj["delta_E"].as_f64() == Some(d.bandwidth);
        if !same {
            return Err(CliError::Io(format!(
                "{}: plan does not match the sample file header",
                pf.display()
            )));
        }
    }
    let budget = cfg.budget();
    let spectrum = exact_spectrum(&cfg.hamiltonian()?)?;
    if spectrum.dimension() != set.dimension {
        return Err(CliError::Io(format!(
            "sample file dimension {} does not match the configured model ({})",
            set.dimension,
            spectrum.dimension()
        )));
    }
    let z_tilde = estimate_partition(&set, budget.beta)?;
    let report = report_from(z_tilde, partition_function(&spectrum, budget.beta)?, &budget)?;
    let dos = reconstruct_dos(&set, cfg.run.dos_points)?;
    write_estimate(ctx, &report, dos.to_csv())
}

pub fn cmd_pipeline(ctx: &Context) -> Result<Outcome, CliError> {
    let cfg = &ctx.config;
    let (spectrum, plan, spread) = spectrum_and_plan(cfg)?;
    ctx.write_json("plan.json", &with_provenance(ctx, plan_json(cfg, &plan, spread)))?;
    let set = sample_series(&spectrum, &plan, cfg.noise, cfg.run.seed)?;
    ctx.write("samples.csv", &samples_to_csv(&set, Some(ctx.provenance())))?;
    let budget = cfg.budget();
    let z_tilde = estimate_partition(&set, budget.beta)?;
    let report = report_from(z_tilde, partition_function(&spectrum, budget.beta)?, &budget)?;
    let dos = reconstruct_dos(&set, cfg.run.dos_points)?;
    write_estimate(ctx, &report, dos.to_csv())
}

pub fn cmd_verify_lemmas(ctx: &Context) -> Result<Outcome, CliError> {
    let mut csv = ctx.comment_line();
    csv.push_str("theta,alpha,alpha_bound,A_side,A_side_bound,margin\n");
    let mut min_margin = f64::INFINITY;
    let mut rows = 0;
    for order in (2..=ctx.config.run.lemma_max_order).step_by(2) {
        let r = check_lemmas(order)?;
        min_margin = min_margin.min(r.margin);
        rows += 1;
        let _ = writeln!(
            csv,
            "{},{:?},{:?},{:?},{:?},{:?}",
            r.order, r.alpha, r.alpha_bound, r.side_area, r.side_bound, r.margin
        );
    }
    let path = ctx.write("lemmas.csv", &csv)?;
    let v = with_provenance(
        ctx,
        json!({
            "orders": rows,
            "min_margin": min_margin,
            "pass": min_margin > 0.0,
            "path": path.display().to_string(),
        }),
    );
    let text = serde_json::to_string_pretty(&v).expect("serializes") + "\n";
    Ok(Outcome {
        stdout: ctx.render(&v, text),
        pass: min_margin > 0.0,
    })
}

pub fn cmd_noise_mc(ctx: &Context) -> Result<Outcome, CliError> {
    let cfg = &ctx.config;
    let (spectrum, plan, _) = spectrum_and_plan(cfg)?;
    let budget = cfg.budget();
    let study = monte_carlo_with_plan(&spectrum, &plan, &budget, cfg.noise, cfg.run.trials, cfg.run.seed)?;
    let dim = spectrum.dimension() as f64;
    let opts = VarianceOptions {
        include_l0: cfg.run.include_l0_variance,
        integral_band_factor: false,
    };
    let prediction = predict_variance(&plan, budget.beta, study.effective_sigma_sq.sqrt(), dim, opts);
    let required = required_sigma_g(study.z_exact, &budget, &plan, dim, cfg.run.include_l0_variance).ok();
    let fp = failure_probability(study.z_exact, study.predicted_var.sqrt(), budget.gamma, budget.spins);
    let v = with_provenance(
        ctx,
        json!({
            "trials": study.trials,
            "seed": study.seed,
            "noise": to_value(&cfg.noise),
            "Z_exact": study.z_exact,
            "F_exact": study.f_exact,
            "Z_tilde_mean": study.empirical_mean,
            "variance": {
                "empirical": study.empirical_var,
                "predicted": study.predicted_var,
                "predicted_sum": prediction.sum,
                "predicted_integral": prediction.integral,
                "nu_squared": prediction.nu_squared,
                "includes_l0": prediction.includes_l0,
            },
            "failure": {
                "empirical": study.empirical_failure_rate,
                "predicted": fp.exact,
                "predicted_symmetric": fp.symmetric,
                "non_positive_trials": study.non_positive,
            },
            "effective_sigma_g": study.effective_sigma_sq.sqrt(),
            "required_sigma_g": required.map(|r| r.sigma_g),
            "required_sigma_g_closed_form": required.map(|r| r.closed_form),
            "sigma_over_Z": study.empirical_var.sqrt() / study.z_exact,
        }),
    );
    let text = ctx.write_json("noise_mc.json", &v)?;
    ctx.write("noise_mc_trials.csv", &(ctx.comment_line() + &study.records_csv()))?;
    Ok(Outcome {
        stdout: ctx.render(&v, text),
        pass: true,
    })
}

pub fn cmd_sweep(ctx: &Context) -> Result<Outcome, CliError> {
    let cfg = &ctx.config;
    let sweep = cfg.sweep.clone().ok_or_else(|| {
        CliError::Config(config::ConfigError::Field {
            path: "sweep".into(),
            message: "the sweep command needs a sweep block".into(),
        })
    })?;
    let per = sweep.bandwidth_per_spin;
    let study = scaling_study(&cfg.budget(), &sweep.spins, |n| per * n as f64)?;
    let mut csv = ctx.comment_line();
    csv.push_str("n,delta_E,theta,delta_e,N\n");
    for r in &study.rows {
        let _ = writeln!(csv, "{},{:?},{},{:?},{}", r.spins, r.bandwidth, r.order, r.resolution, r.samples);
    }
    ctx.write("sweep.csv", &csv)?;
    let v = with_provenance(
        ctx,
        json!({
            "rows": study.rows.len(),
            "exponent": study.exponent,
        }),
    );
    let text = ctx.write_json("sweep.json", &v)?;
    Ok(Outcome {
        stdout: ctx.render(&v, text),
        pass: true,
    })
}

/// Output directory: explicit flag, then the environment, then the config.
pub fn resolve_out_dir(flag: Option<PathBuf>, cfg: &ExperimentConfig) -> PathBuf {
    flag.or_else(|| std::env::var_os(ENV_OUT_DIR).map(PathBuf::from))
        .or_else(|| cfg.run.output_dir.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

//! Propagation of readout noise on `g̃` into `Z̃`, and the resulting failure
//! probability of the free-energy criterion.
//!
//! `Z̃` is linear in the samples, so independent noise of variance `σ_g²` on
//! each real and imaginary part gives
//!
//! ```text
//! Var Z̃ = dim²(Δt/2πβ)²(1 − e^{−βΔE})² σ_g² [b₀² + 4 Σ_{ℓ>0} b_ℓ²/(1 + τ_ℓ²)].
//! ```
//!
//! The `b₀²` term is optional (the usual analysis drops it). Modelling the
//! window as a Gaussian of variance `ν² = ΘT₀²/12` turns the sum into
//! `(dim² σ_g²/βΔE)·e^{β²/ν²} erfc(β/ν)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::estimate::{estimate_free_energy, estimate_partition};
use crate::lattice::Hamiltonian;
use crate::numeric::{erfc, erfc_inv, erfcx, splitmix64, CompensatedSum};
use crate::plan::{plan_for_spectrum, ErrorBudget, PlanLimits, SamplingPlan};
use crate::sampler::{exact_series, sample_from_exact, shot_variances, NoiseModel};
use crate::spectrum::{exact_spectrum, partition_function};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct VarianceOptions {
    /// Add the `ℓ = 0` term to the discrete sum.
    pub include_l0: bool,
    /// Keep `(1 − e^{−βΔE})²` in the Gaussian-window integral.
    pub integral_band_factor: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VariancePrediction {
    pub sum: f64,
    pub integral: f64,
    pub nu_squared: f64,
    pub includes_l0: bool,
}

fn prefactor(plan: &SamplingPlan, beta: f64, dimension: f64) -> f64 {
    dimension * plan.dt() / (2.0 * PI * beta) * -(-beta * plan.bandwidth()).exp_m1() * (beta * plan.energy_offset()).exp()
}

/// Variance of `Z̃` from the discrete sum over samples.
pub fn variance_sum(plan: &SamplingPlan, beta: f64, sigma_g: f64, dimension: f64, include_l0: bool) -> f64 {
    if sigma_g == 0.0 {
        return 0.0;
    }
    let w = plan.window().weights();
    let mut acc: CompensatedSum = (1..=plan.max_index())
        .map(|l| {
            let b = w.get(l).copied().unwrap_or(0.0);
            let tau = plan.time(l) / beta;
            4.0 * b * b / (1.0 + tau * tau)
        })
        .collect();
    if include_l0 {
        acc.add(w[0] * w[0]);
    }
    prefactor(plan, beta, dimension).powi(2) * sigma_g * sigma_g * acc.value()
}

/// Variance of `Z̃` when the real and imaginary parts of each sample carry
/// their own variances (shot noise). `component_vars[ℓ] = (Var Re, Var Im)`.
pub fn variance_from_components(plan: &SamplingPlan, beta: f64, component_vars: &[(f64, f64)], dimension: f64) -> f64 {
    let w = plan.window().weights();
    let mut acc = CompensatedSum::new();
    for (l, &(vr, vi)) in component_vars.iter().enumerate() {
        let b = w.get(l).copied().unwrap_or(0.0);
        if l == 0 {
            acc.add(b * b * vr);
        } else {
            let tau = plan.time(l) / beta;
            let d = 1.0 + tau * tau;
            acc.add(4.0 * b * b * (vr + tau * tau * vi) / (d * d));
        }
    }
    prefactor(plan, beta, dimension).powi(2) * acc.value()
}

/// `ν² = ΘT₀²/12`, the variance of the window viewed as a Gaussian.
pub fn window_nu_squared(plan: &SamplingPlan) -> f64 {
    plan.order() as f64 * plan.base_width().powi(2) / 12.0
}

/// Gaussian-window approximation of [`variance_sum`] (without the `ℓ = 0` term).
pub fn variance_integral(
    plan: &SamplingPlan,
    beta: f64,
    sigma_g: f64,
    dimension: f64,
    band_factor: bool,
) -> f64 {
    if sigma_g == 0.0 {
        return 0.0;
    }
    let nu = window_nu_squared(plan).sqrt();
    let mut v = dimension * dimension * sigma_g * sigma_g / (beta * plan.bandwidth()) * erfcx(beta / nu);
    if band_factor {
        v *= (-beta * plan.bandwidth()).exp_m1().powi(2);
    }
    v * (2.0 * beta * plan.energy_offset()).exp()
}

/// True when `βΔE/2π ≥ 1`, the regime where the integral form is meant to hold.
pub fn integral_regime_ok(plan: &SamplingPlan, beta: f64) -> bool {
    beta * plan.bandwidth() / (2.0 * PI) >= 1.0
}

pub fn predict_variance(plan: &SamplingPlan, beta: f64, sigma_g: f64, dimension: f64, opts: VarianceOptions) -> VariancePrediction {
    VariancePrediction {
        sum: variance_sum(plan, beta, sigma_g, dimension, opts.include_l0),
        integral: variance_integral(plan, beta, sigma_g, dimension, opts.integral_band_factor),
        nu_squared: window_nu_squared(plan),
        includes_l0: opts.include_l0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FailureProbability {
    /// Two-sided Gaussian tail outside `Z e^{−γn} < Z̃ < Z e^{γn}`.
    pub exact: f64,
    /// Small-`γn` symmetric form `erfc(Zγn/√2σ)`.
    pub symmetric: f64,
}

pub fn failure_probability(z: f64, sigma_z: f64, gamma: f64, spins: usize) -> FailureProbability {
    if sigma_z == 0.0 {
        return FailureProbability {
            exact: 0.0,
            symmetric: 0.0,
        };
    }
    let gn = gamma * spins as f64;
    let s = std::f64::consts::SQRT_2 * sigma_z;
    FailureProbability {
        exact: 0.5 * (erfc(z * gn.exp_m1() / s) + erfc(-z * (-gn).exp_m1() / s)),
        symmetric: erfc(z * gn / s),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RequiredSigma {
    /// Largest `σ_g` with exact failure probability at most `ε`.
    pub sigma_g: f64,
    /// `√(βΔE/2)·Zγn/(dim·erfc⁻¹(ε))`.
    pub closed_form: f64,
}

/// Inverts the failure probability for the readout noise level.
pub fn required_sigma_g(
    z: f64,
    budget: &ErrorBudget,
    plan: &SamplingPlan,
    dimension: f64,
    include_l0: bool,
) -> Result<RequiredSigma> {
    budget.validate()?;
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::param("Z", format!("must be positive, got {z}")));
    }
    let eps = budget.epsilon;
    let unit = variance_sum(plan, budget.beta, 1.0, dimension, include_l0).sqrt();
    if !(unit > 0.0 && unit.is_finite()) {
        return Err(Error::NoSolution(format!("noise does not reach Z̃ (unit σ_Z = {unit})")));
    }
    let fail = |sigma_g: f64| failure_probability(z, unit * sigma_g, budget.gamma, budget.spins).exact;
    // failure is increasing in σ_g: walk the bracket out geometrically
    let mut lo = z / unit * 1e-3;
    let mut hi = z / unit;
    let mut guard = 0;
    while fail(lo) > eps {
        lo *= 1e-3;
        guard += 1;
        if guard > 100 || lo == 0.0 {
            return Err(Error::NoSolution(format!("ε = {eps} unreachable at small σ_g")));
        }
    }
    guard = 0;
    while fail(hi) < eps {
        hi *= 1e3;
        guard += 1;
        if guard > 100 || !hi.is_finite() {
            return Err(Error::NoSolution(format!("ε = {eps} unreachable at large σ_g")));
        }
    }
    for _ in 0..200 {
        let mid = (lo * hi).sqrt();
        if fail(mid) <= eps {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi / lo - 1.0 < 1e-14 {
            break;
        }
    }
    let gn = budget.gamma * budget.spins as f64;
    let inv = erfc_inv(eps).ok_or_else(|| Error::NoSolution(format!("erfc⁻¹({eps}) undefined")))?;
    let closed_form = (budget.beta * plan.bandwidth() / 2.0).sqrt() * z * gn / (dimension * inv);
    Ok(RequiredSigma { sigma_g: lo, closed_form })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub z_tilde: f64,
    /// `None` when `Z̃ ≤ 0`.
    pub f_tilde: Option<f64>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseStudyResult {
    pub trials: usize,
    pub seed: u64,
    pub z_exact: f64,
    pub f_exact: f64,
    pub empirical_mean: f64,
    pub empirical_var: f64,
    pub empirical_failure_rate: f64,
    /// Trials with `Z̃ ≤ 0`, counted as failures.
    pub non_positive: usize,
    /// Per-component noise variance used for the prediction (mean over
    /// samples for shot noise).
    pub effective_sigma_sq: f64,
    pub predicted_var: f64,
    pub predicted_failure: f64,
    pub records: Vec<TrialRecord>,
}

impl NoiseStudyResult {
    pub fn records_csv(&self) -> String {
        let mut out = String::from("trial,Z_tilde,F_tilde,pass\n");
        for r in &self.records {
            let f = r.f_tilde.map(|f| f.to_string()).unwrap_or_else(|| "NaN".into());
            out.push_str(&format!("{},{},{},{}\n", r.trial, r.z_tilde, f, r.pass));
        }
        out
    }
}

/// Seed of trial `k` derived from the study seed.
pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    splitmix64(seed ^ splitmix64(trial as u64 + 1))
}

/// Repeats the full estimate with fresh noise and compares the spread of
/// `Z̃` and the failure rate with the linear-propagation predictions.
pub fn monte_carlo_study(
    h: &Hamiltonian,
    budget: &ErrorBudget,
    noise: NoiseModel,
    trials: usize,
    seed: u64,
    limits: PlanLimits,
) -> Result<NoiseStudyResult> {
    let spectrum = exact_spectrum(h)?;
    let plan = plan_for_spectrum(budget, spectrum.bandwidth(), limits)?;
    monte_carlo_with_plan(&spectrum, &plan, budget, noise, trials, seed)
}

pub fn monte_carlo_with_plan(
    spectrum: &crate::spectrum::Spectrum,
    plan: &SamplingPlan,
    budget: &ErrorBudget,
    noise: NoiseModel,
    trials: usize,
    seed: u64,
) -> Result<NoiseStudyResult> {
    budget.validate()?;
    noise.validate()?;
    if trials == 0 {
        return Err(Error::param("trials", "need at least one trial"));
    }
    let n = budget.spins;
    let beta = budget.beta;
    let dim = spectrum.dimension();
    let exact = exact_series(spectrum, plan);
    let z_exact = partition_function(spectrum, beta)?;
    let f_exact = estimate_free_energy(z_exact, n, beta)?;
    let run = |k: usize| -> Result<TrialRecord> {
        let set = sample_from_exact(&exact, plan, noise, trial_seed(seed, k), dim, spectrum.spins())?;
        let z_tilde = estimate_partition(&set, beta)?;
        let f_tilde = estimate_free_energy(z_tilde, n, beta).ok();
        let pass = f_tilde.is_some_and(|f| (f - f_exact).abs() < budget.gamma / beta);
        Ok(TrialRecord {
            trial: k,
            z_tilde,
            f_tilde,
            pass,
        })
    };
    #[cfg(feature = "parallel")]
    let records: Result<Vec<TrialRecord>> = (0..trials).into_par_iter().map(run).collect();
    #[cfg(not(feature = "parallel"))]
    let records: Result<Vec<TrialRecord>> = (0..trials).map(run).collect();
    let records = records?;

    let mean = records.iter().map(|r| r.z_tilde).collect::<CompensatedSum>().value() / trials as f64;
    let var = if trials > 1 {
        records
            .iter()
            .map(|r| (r.z_tilde - mean).powi(2))
            .collect::<CompensatedSum>()
            .value()
            / (trials - 1) as f64
    } else {
        0.0
    };
    let failures = records.iter().filter(|r| !r.pass).count();
    let non_positive = records.iter().filter(|r| r.z_tilde <= 0.0).count();

    let (effective_sigma_sq, predicted_var) = match noise {
        NoiseModel::Exact => (0.0, 0.0),
        NoiseModel::AdditiveGaussian { sigma } => (sigma * sigma, variance_sum(plan, beta, sigma, dim as f64, true)),
        NoiseModel::Shots { repetitions } => {
            let comps = exact
                .iter()
                .map(|&g| shot_variances(g, repetitions))
                .collect::<Result<Vec<_>>>()?;
            let mean_var = comps[1..].iter().map(|&(a, b)| 0.5 * (a + b)).sum::<f64>() / (comps.len() - 1).max(1) as f64;
            (mean_var, variance_sum(plan, beta, mean_var.sqrt(), dim as f64, true))
        }
    };
    let predicted_failure = failure_probability(z_exact, predicted_var.sqrt(), budget.gamma, n).exact;
    Ok(NoiseStudyResult {
        trials,
        seed,
        z_exact,
        f_exact,
        empirical_mean: mean,
        empirical_var: var,
        empirical_failure_rate: failures as f64 / trials as f64,
        non_positive,
        effective_sigma_sq,
        predicted_var,
        predicted_failure,
        records,
    })
}

//! Deterministic sample planning from a free-energy error budget.
//!
//! Given `(n, β, γ)` and a bandwidth `ΔE`, the planner picks
//!
//! ```text
//! Δe  = ln(1 + ξ/2) / β,                 ξ = 1 − e^{−γn}
//! Θ/2 = ⌈μβΔE + μ ln(1/ξ) + κ'⌉,         μ = 1/(2 ln π − 1), κ' = μκ ln π
//! Δt  = 2π/ΔE,  T₀ = 2π/Δe,  N = ⌈ΘΔE/Δe⌉ (rounded up to even)
//! ```
//!
//! which keeps the relative error of the partition-function estimate below
//! `ξ` when the Fourier components are exact.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::log_log_slope;
use crate::window::{lemma_constant, sample_window, WindowSamples, WindowSpec};

/// Default resource guard on the total number of samples.
pub const DEFAULT_MAX_SAMPLES: u64 = 100_000_000;
/// Default guard on the window order.
pub const DEFAULT_MAX_ORDER: u32 = 100_000;

pub fn mu() -> f64 {
    1.0 / (2.0 * PI.ln() - 1.0)
}

/// `κ = 5/2 + ln(2c/√6)/ln π ≈ 2.9443`.
pub fn kappa() -> f64 {
    2.5 + (2.0 * lemma_constant() / 6f64.sqrt()).ln() / PI.ln()
}

pub fn kappa_prime() -> f64 {
    mu() * kappa() * PI.ln()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorBudget {
    pub spins: usize,
    pub beta: f64,
    /// Free-energy tolerance as a fraction of the thermal energy.
    pub gamma: f64,
    /// Allowed failure probability.
    pub epsilon: f64,
}

impl ErrorBudget {
    pub fn new(spins: usize, beta: f64, gamma: f64, epsilon: f64) -> Result<Self> {
        let b = Self {
            spins,
            beta,
            gamma,
            epsilon,
        };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        if self.spins == 0 {
            return Err(Error::param("n", "spin count must be at least 1"));
        }
        if !(self.beta > 0.0 && self.beta.is_finite()) {
            return Err(Error::param("beta", format!("must be positive and finite, got {}", self.beta)));
        }
        if !(self.gamma > 0.0 && self.gamma.is_finite()) {
            return Err(Error::param("gamma", format!("must be positive and finite, got {}", self.gamma)));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::param("epsilon", format!("must lie in (0, 1), got {}", self.epsilon)));
        }
        Ok(())
    }

    /// `ξ = 1 − e^{−γn}`, the partition-function relative-error target.
    pub fn xi(&self) -> f64 {
        -(-self.gamma * self.spins as f64).exp_m1()
    }

    /// Energy resolution `Δe = ln(1 + ξ/2)/β`.
    pub fn resolution(&self) -> f64 {
        (self.xi() / 2.0).ln_1p() / self.beta
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanLimits {
    pub max_samples: u64,
    pub max_order: u32,
    pub force: bool,
}

impl Default for PlanLimits {
    fn default() -> Self {
        Self {
            max_samples: DEFAULT_MAX_SAMPLES,
            max_order: DEFAULT_MAX_ORDER,
            force: false,
        }
    }
}

/// Sampling parameters plus the window weights at the plan's `Δt`.
///
/// `energy_offset` is a guard band: the spectrum is placed at
/// `[offset, offset + spread]` inside the sampled band `[0, ΔE]`, so no
/// main lobe straddles the band edges (where `E = 0` and `E = ΔE` alias).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplingPlan {
    bandwidth: f64,
    dt: f64,
    resolution: f64,
    base_width: f64,
    order: u32,
    total_samples: u64,
    energy_offset: f64,
    window: WindowSamples,
}

impl SamplingPlan {
    /// Builds a plan from explicit parameters. Odd orders are allowed here.
    pub fn custom(bandwidth: f64, resolution: f64, order: u32, energy_offset: f64, limits: PlanLimits) -> Result<Self> {
        if !(bandwidth > 0.0 && bandwidth.is_finite()) {
            return Err(Error::param("delta_E", format!("must be positive and finite, got {bandwidth}")));
        }
        if !(energy_offset >= 0.0 && energy_offset.is_finite()) {
            return Err(Error::param("energy_offset", format!("must be non-negative, got {energy_offset}")));
        }
        let spec = WindowSpec::from_resolution(order, resolution)?;
        if order > limits.max_order && !limits.force {
            return Err(Error::ResourceGuard(format!(
                "window order {order} exceeds the configured maximum {}",
                limits.max_order
            )));
        }
        let exact = order as f64 * bandwidth / resolution;
        if !exact.is_finite() || exact > 1e15 {
            return Err(Error::ResourceGuard(format!("sample count {exact:e} is not representable")));
        }
        let mut total = exact.ceil() as u64;
        total += total % 2;
        if total > limits.max_samples && !limits.force {
            return Err(Error::ResourceGuard(format!(
                "plan needs {total} samples, above the limit {} (force to override)",
                limits.max_samples
            )));
        }
        let dt = 2.0 * PI / bandwidth;
        let window = sample_window(&spec, dt, (total / 2) as usize + 1);
        Ok(Self {
            bandwidth,
            dt,
            resolution,
            base_width: spec.base_width(),
            order,
            total_samples: total,
            energy_offset,
            window,
        })
    }

    /// Same window, sampled at a different interval. The sampled band
    /// becomes `2π/dt`; choosing `dt > 2π/ΔE` undersamples the spectrum.
    pub fn with_sampling_interval(&self, dt: f64, limits: PlanLimits) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::param("dt", format!("must be positive and finite, got {dt}")));
        }
        Self::custom(2.0 * PI / dt, self.resolution, self.order, self.energy_offset, limits)
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }
    pub fn dt(&self) -> f64 {
        self.dt
    }
    pub fn resolution(&self) -> f64 {
        self.resolution
    }
    pub fn base_width(&self) -> f64 {
        self.base_width
    }
    pub fn order(&self) -> u32 {
        self.order
    }
    pub fn total_samples(&self) -> u64 {
        self.total_samples
    }
    /// Largest sampled index, `N/2`.
    pub fn max_index(&self) -> usize {
        (self.total_samples / 2) as usize
    }
    pub fn energy_offset(&self) -> f64 {
        self.energy_offset
    }
    pub fn window(&self) -> &WindowSamples {
        &self.window
    }
    pub fn time(&self, l: usize) -> f64 {
        l as f64 * self.dt
    }
}

/// Planner with the default resource guard and no guard band.
pub fn plan_deterministic(budget: &ErrorBudget, bandwidth: f64) -> Result<SamplingPlan> {
    plan_deterministic_with(budget, bandwidth, PlanLimits::default())
}

/// Order `Θ` from the closed-form sufficient condition.
pub fn planned_order(budget: &ErrorBudget, bandwidth: f64) -> Result<u32> {
    let xi = budget.xi();
    if !(xi > 0.0) {
        return Err(Error::param("gamma", format!("ξ = 1 − e^{{−γn}} underflows to {xi}")));
    }
    let half = (mu() * budget.beta * bandwidth + mu() * (1.0 / xi).ln() + kappa_prime()).ceil();
    if !(half.is_finite() && half < u32::MAX as f64 / 2.0) {
        return Err(Error::ResourceGuard(format!("window order 2·{half} is not representable")));
    }
    Ok(2 * (half.max(1.0) as u32))
}

pub fn plan_deterministic_with(budget: &ErrorBudget, bandwidth: f64, limits: PlanLimits) -> Result<SamplingPlan> {
    budget.validate()?;
    let order = planned_order(budget, bandwidth)?;
    SamplingPlan::custom(bandwidth, budget.resolution(), order, 0.0, limits)
}

/// Plan for a spectrum of spread `spread`: a guard band of width `Δe` is
/// added below and above, so the sampled bandwidth is `spread + 2Δe`.
pub fn plan_for_spectrum(budget: &ErrorBudget, spread: f64, limits: PlanLimits) -> Result<SamplingPlan> {
    budget.validate()?;
    if !(spread >= 0.0 && spread.is_finite()) {
        return Err(Error::param("delta_E", format!("spread must be non-negative, got {spread}")));
    }
    let guard = budget.resolution();
    let bandwidth = spread + 2.0 * guard;
    let order = planned_order(budget, bandwidth)?;
    SamplingPlan::custom(bandwidth, guard, order, guard, limits)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingRow {
    pub spins: usize,
    pub bandwidth: f64,
    pub order: u32,
    pub resolution: f64,
    pub samples: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingStudy {
    pub rows: Vec<ScalingRow>,
    /// Least-squares slope of ln N against ln n.
    pub exponent: Option<f64>,
}

/// Planner outputs `(Θ, Δe, N)` without sampling the window.
pub fn plan_row(budget: &ErrorBudget, bandwidth: f64) -> Result<ScalingRow> {
    budget.validate()?;
    if !(bandwidth > 0.0 && bandwidth.is_finite()) {
        return Err(Error::param("delta_E", format!("must be positive and finite, got {bandwidth}")));
    }
    let order = planned_order(budget, bandwidth)?;
    let resolution = budget.resolution();
    let mut samples = (order as f64 * bandwidth / resolution).ceil() as u64;
    samples += samples % 2;
    Ok(ScalingRow {
        spins: budget.spins,
        bandwidth,
        order,
        resolution,
        samples,
    })
}

/// Planner outputs over a range of spin counts with `ΔE = rule(n)`. Only
/// `(Θ, Δe, N)` are evaluated, no window weights.
pub fn scaling_study(
    template: &ErrorBudget,
    spins: &[usize],
    rule: impl Fn(usize) -> f64,
) -> Result<ScalingStudy> {
    let mut rows = Vec::with_capacity(spins.len());
    for &n in spins {
        let budget = ErrorBudget { spins: n, ..*template };
        rows.push(plan_row(&budget, rule(n))?);
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.spins as f64).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.samples as f64).collect();
    Ok(ScalingStudy {
        exponent: log_log_slope(&xs, &ys),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        assert!((kappa() - 2.9443).abs() < 5e-5);
        assert!((mu() - 0.775_518_571_380_128_3).abs() < 1e-15);
    }

    #[test]
    fn xi_small_limit() {
        let b = ErrorBudget::new(3, 1.0, 1e-4, 0.1).unwrap();
        let gn = 3e-4;
        assert!(((b.xi() - gn) / gn).abs() < gn);
    }

    #[test]
    fn validation() {
        assert!(ErrorBudget::new(4, 1.0, 0.0, 0.1).is_err());
        assert!(ErrorBudget::new(4, 1.0, 0.1, 1.0).is_err());
        assert!(ErrorBudget::new(0, 1.0, 0.1, 0.1).is_err());
        assert!(ErrorBudget::new(4, -1.0, 0.1, 0.1).is_err());
        let b = ErrorBudget {
            spins: 1,
            beta: 1.0,
            gamma: 1e-320,
            epsilon: 0.1,
        };
        assert!(plan_deterministic(&b, 10.0).is_err());
    }

    #[test]
    fn resource_guard() {
        let b = ErrorBudget::new(2, 50.0, 1e-3, 0.1).unwrap();
        assert!(matches!(plan_deterministic(&b, 1e3), Err(Error::ResourceGuard(_))));
        let limits = PlanLimits {
            max_samples: 10,
            ..PlanLimits::default()
        };
        let b = ErrorBudget::new(4, 1.0, 0.1, 0.1).unwrap();
        assert!(plan_deterministic_with(&b, 10.0, limits).is_err());
        let forced = PlanLimits { force: true, ..limits };
        assert!(plan_deterministic_with(&b, 10.0, forced).is_ok());
    }

    #[test]
    fn guard_band_layout() {
        let b = ErrorBudget::new(6, 1.0, 0.1, 0.1).unwrap();
        let p = plan_for_spectrum(&b, 12.0, PlanLimits::default()).unwrap();
        assert_eq!(p.energy_offset(), b.resolution());
        assert!((p.bandwidth() - 12.0 - 2.0 * b.resolution()).abs() < 1e-12);
        assert_eq!(p.order() % 2, 0);
        // degenerate spectrum still gets a positive band
        assert!(plan_for_spectrum(&b, 0.0, PlanLimits::default()).unwrap().bandwidth() > 0.0);
    }

    #[test]
    fn undersampled_plan_keeps_window() {
        let b = ErrorBudget::new(4, 1.0, 0.1, 0.1).unwrap();
        let p = plan_deterministic(&b, 16.0).unwrap();
        let q = p.with_sampling_interval(2.0 * p.dt(), PlanLimits::default()).unwrap();
        assert_eq!(q.order(), p.order());
        assert!((q.bandwidth() - 8.0).abs() < 1e-12);
        assert!((q.base_width() - p.base_width()).abs() < 1e-12);
    }
}

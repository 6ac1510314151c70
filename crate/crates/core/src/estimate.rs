//! Partition function and free energy from samples of `g(t)`.
//!
//! The windowed samples define a broadened density of states
//!
//! ```text
//! ρ̃'(E) = (Δt/2π)·dim·[b₀ Re g̃₀ + 2 Σ_{ℓ>0} b_ℓ Re(g̃_ℓ e^{iEt_ℓ})]
//! ```
//!
//! and integrating it against `e^{−βE}` over `[0, ΔE]` gives the closed form
//!
//! ```text
//! Z̃ = (dim·Δt/2πβ)(1 − e^{−βΔE})·{b₀ Re g̃₀ + 2 Σ_{ℓ>0} b_ℓ [Re g̃_ℓ − τ_ℓ Im g̃_ℓ]/(1 + τ_ℓ²)},
//! ```
//!
//! with `τ_ℓ = t_ℓ/β`. The closed form uses `e^{it_ℓΔE} = 1`, so it is only
//! valid at `Δt = 2π/ΔE`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;
use crate::plan::ErrorBudget;
use crate::sampler::SampleSet;
use crate::spectrum::{partition_function, Spectrum};
use crate::window::{lemma_bounds, side_lobe_area, WindowSpec};

/// Orders up to this use the quadrature side-lobe area, larger ones the bound.
pub const SIDE_LOBE_QUADRATURE_MAX_ORDER: u32 = 60;

pub const DEFAULT_DOS_POINTS: usize = 2048;

/// Broadened density of states on a uniform grid over the sampled band
/// `[0, ΔE]`. Spectral energies sit at `grid − energy_offset`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DosCurve {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub energy_offset: f64,
}

impl DosCurve {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("energy,dos\n");
        for (e, v) in self.grid.iter().zip(&self.values) {
            out.push_str(&format!("{},{}\n", e - self.energy_offset, v));
        }
        out
    }
}

fn check_nyquist(samples: &SampleSet) -> Result<()> {
    let plan = &samples.plan;
    let product = plan.dt() * plan.bandwidth();
    if (product / (2.0 * PI) - 1.0).abs() > 1e-12 {
        return Err(Error::Consistency(format!("Δt·ΔE = {product}, closed form needs 2π")));
    }
    Ok(())
}

/// `ρ̃'(E)` at one energy of the sampled band.
pub fn dos_value(samples: &SampleSet, energy: f64) -> f64 {
    let plan = &samples.plan;
    let w = plan.window().weights();
    let mut acc = CompensatedSum::new();
    acc.add(w[0] * samples.samples[0].g.re);
    for s in &samples.samples[1..] {
        let b = w.get(s.l).copied().unwrap_or(0.0);
        if b != 0.0 {
            let phase = Complex64::new(0.0, energy * s.t).exp();
            acc.add(2.0 * b * (s.g * phase).re);
        }
    }
    plan.dt() / (2.0 * PI) * samples.dimension as f64 * acc.value()
}

pub fn reconstruct_dos(samples: &SampleSet, grid_points: usize) -> Result<DosCurve> {
    samples.check_complete()?;
    if grid_points < 2 {
        return Err(Error::param("grid_points", "need at least 2 points"));
    }
    let top = samples.plan.bandwidth();
    let step = top / (grid_points - 1) as f64;
    let grid: Vec<f64> = (0..grid_points).map(|k| k as f64 * step).collect();
    #[cfg(feature = "parallel")]
    let values = grid.par_iter().map(|&e| dos_value(samples, e)).collect();
    #[cfg(not(feature = "parallel"))]
    let values = grid.iter().map(|&e| dos_value(samples, e)).collect();
    Ok(DosCurve {
        grid,
        values,
        energy_offset: samples.plan.energy_offset(),
    })
}

/// Closed-form `Z̃` on the spectral scale (ground state at zero).
pub fn estimate_partition(samples: &SampleSet, beta: f64) -> Result<f64> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::param("beta", format!("must be positive and finite, got {beta}")));
    }
    samples.check_complete()?;
    check_nyquist(samples)?;
    let plan = &samples.plan;
    let w = plan.window().weights();
    let term = |s: &crate::sampler::Sample| -> f64 {
        let b = w.get(s.l).copied().unwrap_or(0.0);
        if b == 0.0 {
            return 0.0;
        }
        let tau = s.t / beta;
        2.0 * b * (s.g.re - tau * s.g.im) / (1.0 + tau * tau)
    };
    let rest = &samples.samples[1..];
    #[cfg(feature = "parallel")]
    let terms: Vec<f64> = rest.par_iter().map(term).collect();
    #[cfg(not(feature = "parallel"))]
    let terms: Vec<f64> = rest.iter().map(term).collect();
    let mut acc: CompensatedSum = terms.into_iter().collect();
    acc.add(w[0] * samples.samples[0].g.re);
    let prefactor = samples.dimension as f64 * plan.dt() / (2.0 * PI * beta) * -(-beta * plan.bandwidth()).exp_m1();
    Ok(prefactor * acc.value() * (beta * plan.energy_offset()).exp())
}

/// `F̃ = −ln Z̃/(nβ)`.
pub fn estimate_free_energy(z_tilde: f64, spins: usize, beta: f64) -> Result<f64> {
    if !(z_tilde > 0.0) {
        return Err(Error::NonPositivePartition(z_tilde));
    }
    if spins == 0 {
        return Err(Error::param("n", "spin count must be at least 1"));
    }
    Ok(-z_tilde.ln() / (spins as f64 * beta))
}

pub fn relative_error(z_tilde: f64, z: f64) -> f64 {
    (z_tilde - z).abs() / z
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingleStateBound {
    pub z_min: f64,
    pub z_max: f64,
    pub side_area: f64,
    pub r_bound: f64,
}

/// Worst-case relative error for a spectrum with a single level at `E_m`.
///
/// The main lobe moves weight by at most `Δe`, the side lobes (fraction
/// `A_side` of the kernel) can land anywhere in the band.
pub fn single_state_error_bound(
    energy: f64,
    bandwidth: f64,
    beta: f64,
    order: u32,
    resolution: f64,
) -> Result<SingleStateBound> {
    let side = if order <= SIDE_LOBE_QUADRATURE_MAX_ORDER {
        side_lobe_area(&WindowSpec::from_resolution(order, resolution)?)?
    } else {
        lemma_bounds(order, resolution).side_bound
    };
    Ok(single_state_error_bound_with(energy, bandwidth, beta, resolution, side))
}

/// Same as [`single_state_error_bound`] with a given side-lobe fraction.
pub fn single_state_error_bound_with(
    energy: f64,
    bandwidth: f64,
    beta: f64,
    resolution: f64,
    side_area: f64,
) -> SingleStateBound {
    let main = 1.0 - side_area;
    let z_min = main * (-beta * (energy + resolution)).exp() + side_area * (-beta * bandwidth).exp();
    let z_max = main * (-beta * (energy - resolution)).exp() + side_area;
    let z_m = (-beta * energy).exp();
    let r_bound = (z_min / z_m - 1.0).abs().max((z_max / z_m - 1.0).abs());
    SingleStateBound {
        z_min,
        z_max,
        side_area,
        r_bound,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    #[serde(rename = "Z_tilde")]
    pub z_tilde: f64,
    /// `None` when `Z̃ ≤ 0`.
    #[serde(rename = "F_tilde")]
    pub f_tilde: Option<f64>,
    #[serde(rename = "Z_exact")]
    pub z_exact: f64,
    #[serde(rename = "F_exact")]
    pub f_exact: f64,
    pub r: f64,
    pub xi: f64,
    pub pass: bool,
    pub free_energy_pass: bool,
}

/// Estimates `Z̃`, `F̃` and compares them with the exact spectrum.
pub fn evaluate(samples: &SampleSet, spectrum: &Spectrum, budget: &ErrorBudget) -> Result<EstimateReport> {
    budget.validate()?;
    let beta = budget.beta;
    let z_tilde = estimate_partition(samples, beta)?;
    let z_exact = partition_function(spectrum, beta)?;
    report_from(z_tilde, z_exact, budget)
}

/// Report for a precomputed `Z̃` against the exact `Z`.
pub fn report_from(z_tilde: f64, z_exact: f64, budget: &ErrorBudget) -> Result<EstimateReport> {
    let n = budget.spins;
    let beta = budget.beta;
    let f_exact = estimate_free_energy(z_exact, n, beta)?;
    let f_tilde = estimate_free_energy(z_tilde, n, beta).ok();
    let r = relative_error(z_tilde, z_exact);
    let xi = budget.xi();
    let free_energy_pass = f_tilde.is_some_and(|f| (f - f_exact).abs() < budget.gamma / beta);
    Ok(EstimateReport {
        z_tilde,
        f_tilde,
        z_exact,
        f_exact,
        r,
        xi,
        pass: r < xi,
        free_energy_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plan::{PlanLimits, SamplingPlan};
    use crate::sampler::{NoiseModel, Sample};

    fn impulse_set(order: u32, bandwidth: f64, dimension: usize) -> SampleSet {
        let plan = SamplingPlan::custom(bandwidth, 0.5, order, 0.0, PlanLimits::default()).unwrap();
        let samples = (0..=plan.max_index())
            .map(|l| Sample {
                l,
                t: plan.time(l),
                g: Complex64::new(if l == 0 { 1.0 } else { 0.0 }, 0.0),
            })
            .collect();
        SampleSet {
            plan,
            samples,
            noise: NoiseModel::Exact,
            seed: 0,
            dimension,
            spins: dimension.trailing_zeros() as usize,
        }
    }

    #[test]
    fn impulse_gives_uniform_dos() {
        let set = impulse_set(1, 6.0, 8);
        let dos = reconstruct_dos(&set, 33).unwrap();
        for v in &dos.values {
            assert!((v - 8.0 / 6.0).abs() < 1e-14);
        }
        let beta = 0.7;
        let z = estimate_partition(&set, beta).unwrap();
        let want = 8.0 / (beta * 6.0) * (1.0 - (-beta * 6.0f64).exp());
        assert!((z / want - 1.0).abs() < 1e-14);
    }

    #[test]
    fn free_energy_identities() {
        let n = 5;
        let beta = 1.3;
        let f = estimate_free_energy(32.0, n, beta).unwrap();
        assert!((f + 2f64.ln() / beta).abs() < 1e-15);
        assert_eq!(estimate_free_energy(1.0, 7, beta).unwrap(), 0.0);
        let z = 3.7;
        let gamma = 0.02;
        let f0 = estimate_free_energy(z, n, beta).unwrap();
        let f1 = estimate_free_energy(z * (gamma * n as f64).exp(), n, beta).unwrap();
        assert!((f0 - f1 - gamma / beta).abs() < 1e-14);
        assert!(matches!(estimate_free_energy(0.0, n, beta), Err(Error::NonPositivePartition(_))));
        assert!(estimate_free_energy(-1.0, n, beta).is_err());
    }

    #[test]
    fn relative_error_examples() {
        assert_eq!(relative_error(2.0, 2.0), 0.0);
        assert_eq!(relative_error(0.5, 1.0), 0.5);
        let g: f64 = 0.3;
        assert!((relative_error(1.5 * g.exp(), 1.5) - g.exp_m1()).abs() < 1e-15);
    }

    #[test]
    fn single_state_limits() {
        let beta = 0.8;
        let de = 0.05;
        let b = single_state_error_bound_with(0.0, 10.0, beta, de, 0.0);
        assert!((b.r_bound - (beta * de).exp_m1()).abs() < 1e-15);
        let b = single_state_error_bound_with(3.0, 10.0, beta, 0.0, 0.0);
        assert_eq!(b.r_bound, 0.0);
        let coarse = single_state_error_bound(2.0, 10.0, beta, 10, 0.5).unwrap();
        let fine = single_state_error_bound(2.0, 10.0, beta, 10, 0.05).unwrap();
        assert!(fine.r_bound < coarse.r_bound);
        let big = single_state_error_bound(2.0, 10.0, beta, 80, 0.05).unwrap();
        assert!(big.side_area < 1e-30);
    }

    #[test]
    fn invalid_inputs_rejected() {
        let mut set = impulse_set(2, 6.0, 4);
        assert!(estimate_partition(&set, 1.0).is_ok());
        assert!(estimate_partition(&set, 0.0).is_err());
        set.samples.truncate(1);
        assert!(estimate_partition(&set, 1.0).is_err());
        assert!(reconstruct_dos(&set, 10).is_err());
    }
}

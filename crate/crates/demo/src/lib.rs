//! Browser bindings for three interactive views: the window and its
//! broadening kernel, DOS reconstruction for an Ising ring, and the
//! sensitivity of the estimate to readout noise.
//!
//! The plain functions do the work and are tested natively; the
//! `#[wasm_bindgen]` wrappers only convert errors.

use wasm_bindgen::prelude::*;

use spectral_fe::estimate::{estimate_partition, reconstruct_dos, relative_error};
use spectral_fe::noise::{failure_probability, required_sigma_g, variance_sum};
use spectral_fe::window::{lemma_bounds, side_lobe_area, BroadeningKernel};
use spectral_fe::{
    alpha_theta, build_hamiltonian, exact_spectrum, partition_function, plan_for_spectrum, sample_series,
    ErrorBudget, Hamiltonian, LatticeGraph, ModelSpec, NoiseModel, PlanLimits, Spectrum, WindowSpec,
};

/// Largest ring offered in the page; beyond this a single click takes seconds.
pub const MAX_DEMO_SPINS: usize = 14;

fn js(e: spectral_fe::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Time window and energy kernel of order Θ with resolution Δe.
#[wasm_bindgen]
pub struct WindowView {
    times: Vec<f64>,
    window: Vec<f64>,
    energies: Vec<f64>,
    kernel: Vec<f64>,
    alpha: f64,
    alpha_bound: f64,
    side_area: f64,
    side_bound: f64,
}

#[wasm_bindgen]
impl WindowView {
    #[wasm_bindgen(getter)]
    pub fn times(&self) -> Vec<f64> {
        self.times.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn window(&self) -> Vec<f64> {
        self.window.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn energies(&self) -> Vec<f64> {
        self.energies.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn kernel(&self) -> Vec<f64> {
        self.kernel.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    #[wasm_bindgen(getter)]
    pub fn alpha_bound(&self) -> f64 {
        self.alpha_bound
    }
    #[wasm_bindgen(getter)]
    pub fn side_area(&self) -> f64 {
        self.side_area
    }
    #[wasm_bindgen(getter)]
    pub fn side_bound(&self) -> f64 {
        self.side_bound
    }
}

pub fn window_view(order: u32, resolution: f64, points: usize) -> spectral_fe::Result<WindowView> {
    let spec = WindowSpec::from_resolution(order, resolution)?;
    let points = points.clamp(16, 4096);
    let half = spec.support();
    let times: Vec<f64> = (0..points)
        .map(|i| -half + 2.0 * half * i as f64 / (points - 1) as f64)
        .collect();
    let window = times.iter().map(|&t| spec.value(t)).collect();
    let kernel_fn = BroadeningKernel::new(&spec)?;
    let span = 4.0 * resolution;
    let energies: Vec<f64> = (0..points)
        .map(|i| -span + 2.0 * span * i as f64 / (points - 1) as f64)
        .collect();
    let kernel = energies.iter().map(|&e| kernel_fn.eval(e)).collect();
    let bounds = lemma_bounds(order, resolution);
    Ok(WindowView {
        times,
        window,
        energies,
        kernel,
        alpha: alpha_theta(&spec)?,
        alpha_bound: bounds.alpha_bound,
        side_area: side_lobe_area(&spec)?,
        side_bound: bounds.side_bound,
    })
}

#[wasm_bindgen(js_name = windowView)]
pub fn window_view_js(order: u32, resolution: f64, points: usize) -> Result<WindowView, JsError> {
    window_view(order, resolution, points).map_err(js)
}

fn ising_ring(n: usize, jz: f64, h: f64) -> spectral_fe::Result<(Hamiltonian, Spectrum)> {
    if n > MAX_DEMO_SPINS {
        return Err(spectral_fe::Error::SizeLimit {
            what: format!("{n} spins in the browser demo"),
            limit: MAX_DEMO_SPINS,
        });
    }
    let graph = if n >= 3 { LatticeGraph::ring(n)? } else { LatticeGraph::chain(n)? };
    let h = build_hamiltonian(graph, ModelSpec::IsingLongitudinal { jz, h })?;
    let s = exact_spectrum(&h)?;
    Ok((h, s))
}

/// Reconstructed density of states next to the exact levels.
#[wasm_bindgen]
pub struct DosView {
    energies: Vec<f64>,
    dos: Vec<f64>,
    level_energies: Vec<f64>,
    level_degeneracies: Vec<f64>,
    z_tilde: f64,
    z_exact: f64,
    r: f64,
    xi: f64,
    order: u32,
    samples: f64,
    resolution: f64,
}

#[wasm_bindgen]
impl DosView {
    #[wasm_bindgen(getter)]
    pub fn energies(&self) -> Vec<f64> {
        self.energies.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn dos(&self) -> Vec<f64> {
        self.dos.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn level_energies(&self) -> Vec<f64> {
        self.level_energies.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn level_degeneracies(&self) -> Vec<f64> {
        self.level_degeneracies.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn z_tilde(&self) -> f64 {
        self.z_tilde
    }
    #[wasm_bindgen(getter)]
    pub fn z_exact(&self) -> f64 {
        self.z_exact
    }
    #[wasm_bindgen(getter)]
    pub fn r(&self) -> f64 {
        self.r
    }
    #[wasm_bindgen(getter)]
    pub fn xi(&self) -> f64 {
        self.xi
    }
    #[wasm_bindgen(getter)]
    pub fn order(&self) -> u32 {
        self.order
    }
    #[wasm_bindgen(getter)]
    pub fn samples(&self) -> f64 {
        self.samples
    }
    #[wasm_bindgen(getter)]
    pub fn resolution(&self) -> f64 {
        self.resolution
    }
}

/// Plans, samples (with Gaussian readout noise `sigma`, 0 for exact) and
/// reconstructs the DOS of an `n`-site Ising ring.
#[allow(clippy::too_many_arguments)]
pub fn ising_dos(
    n: usize,
    jz: f64,
    h: f64,
    beta: f64,
    gamma: f64,
    sigma: f64,
    seed: u64,
    points: usize,
) -> spectral_fe::Result<DosView> {
    let (_, spectrum) = ising_ring(n, jz, h)?;
    let budget = ErrorBudget::new(n, beta, gamma, 0.1)?;
    let plan = plan_for_spectrum(&budget, spectrum.bandwidth(), PlanLimits::default())?;
    let noise = if sigma > 0.0 {
        NoiseModel::AdditiveGaussian { sigma }
    } else {
        NoiseModel::Exact
    };
    let set = sample_series(&spectrum, &plan, noise, seed)?;
    let z_tilde = estimate_partition(&set, beta)?;
    let z_exact = partition_function(&spectrum, beta)?;
    let curve = reconstruct_dos(&set, points.clamp(64, 8192))?;
    Ok(DosView {
        energies: curve.grid.iter().map(|e| e - curve.energy_offset).collect(),
        dos: curve.values,
        level_energies: spectrum.levels().iter().map(|l| l.0).collect(),
        level_degeneracies: spectrum.levels().iter().map(|l| l.1 as f64).collect(),
        z_tilde,
        z_exact,
        r: relative_error(z_tilde, z_exact),
        xi: budget.xi(),
        order: plan.order(),
        samples: plan.total_samples() as f64,
        resolution: plan.resolution(),
    })
}

#[wasm_bindgen(js_name = isingDos)]
#[allow(clippy::too_many_arguments)]
pub fn ising_dos_js(
    n: usize,
    jz: f64,
    h: f64,
    beta: f64,
    gamma: f64,
    sigma: f64,
    seed: u64,
    points: usize,
) -> Result<DosView, JsError> {
    ising_dos(n, jz, h, beta, gamma, sigma, seed, points).map_err(js)
}

/// Predicted failure probability as a function of the readout noise level.
#[wasm_bindgen]
pub struct NoiseView {
    sigmas: Vec<f64>,
    failure: Vec<f64>,
    required: f64,
    closed_form: f64,
}

#[wasm_bindgen]
impl NoiseView {
    #[wasm_bindgen(getter)]
    pub fn sigmas(&self) -> Vec<f64> {
        self.sigmas.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn failure(&self) -> Vec<f64> {
        self.failure.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn required(&self) -> f64 {
        self.required
    }
    #[wasm_bindgen(getter)]
    pub fn closed_form(&self) -> f64 {
        self.closed_form
    }
}

/// Failure probability on a log grid of `σ_g` spanning two decades around
/// the level that meets the target `epsilon`.
pub fn noise_sensitivity(
    n: usize,
    jz: f64,
    h: f64,
    beta: f64,
    gamma: f64,
    epsilon: f64,
    points: usize,
) -> spectral_fe::Result<NoiseView> {
    let (_, spectrum) = ising_ring(n, jz, h)?;
    let budget = ErrorBudget::new(n, beta, gamma, epsilon)?;
    let plan = plan_for_spectrum(&budget, spectrum.bandwidth(), PlanLimits::default())?;
    let z = partition_function(&spectrum, beta)?;
    let dim = spectrum.dimension() as f64;
    let req = required_sigma_g(z, &budget, &plan, dim, true)?;
    let unit = variance_sum(&plan, beta, 1.0, dim, true).sqrt();
    let points = points.clamp(8, 1024);
    let sigmas: Vec<f64> = (0..points)
        .map(|i| req.sigma_g * 10f64.powf(-1.0 + 2.0 * i as f64 / (points - 1) as f64))
        .collect();
    let failure = sigmas
        .iter()
        .map(|&s| failure_probability(z, unit * s, gamma, n).exact)
        .collect();
    Ok(NoiseView {
        sigmas,
        failure,
        required: req.sigma_g,
        closed_form: req.closed_form,
    })
}

#[wasm_bindgen(js_name = noiseSensitivity)]
pub fn noise_sensitivity_js(
    n: usize,
    jz: f64,
    h: f64,
    beta: f64,
    gamma: f64,
    epsilon: f64,
    points: usize,
) -> Result<NoiseView, JsError> {
    noise_sensitivity(n, jz, h, beta, gamma, epsilon, points).map_err(js)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_kernel_peaks_at_alpha() {
        let v = window_view(4, 0.5, 201).unwrap();
        let peak = v.kernel.iter().cloned().fold(0.0, f64::max);
        assert!((peak - v.alpha).abs() < 1e-12);
        assert!(v.alpha < v.alpha_bound && v.side_area < v.side_bound);
        assert!(v.window.iter().all(|w| *w >= 0.0));
    }

    #[test]
    fn dos_view_meets_budget_without_noise() {
        let v = ising_dos(6, 1.0, 0.5, 1.0, 0.1, 0.0, 1, 512).unwrap();
        assert!(v.r < v.xi);
        assert_eq!(v.energies.len(), v.dos.len());
        assert_eq!(v.level_degeneracies.iter().sum::<f64>(), 64.0);
    }

    #[test]
    fn failure_crosses_epsilon_at_required_sigma() {
        let v = noise_sensitivity(6, 1.0, 0.5, 1.0, 0.1, 0.1, 101).unwrap();
        assert!(v.failure.windows(2).all(|w| w[1] >= w[0]));
        let mid = v.failure[50];
        assert!((mid - 0.1).abs() < 1e-6, "{mid}");
    }

    #[test]
    fn oversized_rings_rejected() {
        assert!(ising_dos(MAX_DEMO_SPINS + 1, 1.0, 0.0, 1.0, 0.1, 0.0, 0, 100).is_err());
    }
}

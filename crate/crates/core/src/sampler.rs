//! Exact and noisy samples of the normalized trace `g(t) = dim⁻¹ Tr e^{−iHt}`.
//!
//! Two readout models are simulated. `Shots` draws single-qubit outcomes
//! from the interferometric circuit (a third "other" outcome absorbs the
//! probability of the orthogonal components); `AdditiveGaussian` adds
//! independent Gaussian noise to the exact real and imaginary parts, as in
//! an ensemble measurement of the probe magnetization.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, Normal};
use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;
use crate::plan::SamplingPlan;
use crate::spectrum::Spectrum;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum NoiseModel {
    Exact,
    Shots { repetitions: u64 },
    AdditiveGaussian { sigma: f64 },
}

impl NoiseModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            NoiseModel::Exact => Ok(()),
            NoiseModel::Shots { repetitions } if repetitions >= 1 => Ok(()),
            NoiseModel::Shots { .. } => Err(Error::param("R", "repetitions must be at least 1")),
            NoiseModel::AdditiveGaussian { sigma } if sigma >= 0.0 && sigma.is_finite() => Ok(()),
            NoiseModel::AdditiveGaussian { sigma } => {
                Err(Error::param("sigma_g", format!("must be non-negative and finite, got {sigma}")))
            }
        }
    }

    /// Loose bound on `|g̃|` for this noise model.
    pub fn magnitude_slack(&self) -> f64 {
        match *self {
            NoiseModel::Exact => 1.0,
            NoiseModel::Shots { .. } => 2f64.sqrt(),
            NoiseModel::AdditiveGaussian { sigma } => 1.0 + 12.0 * sigma,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub l: usize,
    pub t: f64,
    pub g: Complex64,
}

/// Samples `g̃_ℓ` for `ℓ = 0..=N/2` together with the plan that produced them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    pub plan: SamplingPlan,
    pub samples: Vec<Sample>,
    pub noise: NoiseModel,
    pub seed: u64,
    /// Hilbert-space dimension, `2^n` for lattice models.
    pub dimension: usize,
    pub spins: usize,
}

impl SampleSet {
    /// Checks that every index `0..=N/2` appears exactly once, in order,
    /// with times consistent with the plan.
    pub fn check_complete(&self) -> Result<()> {
        let want = self.plan.max_index() + 1;
        if self.samples.len() != want {
            return Err(Error::IncompleteSamples(format!(
                "expected {want} samples (ℓ = 0..={}), found {}",
                want - 1,
                self.samples.len()
            )));
        }
        for (i, s) in self.samples.iter().enumerate() {
            if s.l != i {
                return Err(Error::IncompleteSamples(format!("sample {i} carries index ℓ = {}", s.l)));
            }
            let t = self.plan.time(i);
            if (s.t - t).abs() > 1e-9 * t.abs().max(1.0) {
                return Err(Error::IncompleteSamples(format!(
                    "time for ℓ = {i} is {}, plan gives {t}",
                    s.t
                )));
            }
            if !(s.g.re.is_finite() && s.g.im.is_finite()) {
                return Err(Error::IncompleteSamples(format!("non-finite value at ℓ = {i}")));
            }
        }
        if self.dimension == 0 {
            return Err(Error::IncompleteSamples("dimension is zero".into()));
        }
        Ok(())
    }

    pub fn values(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.samples.iter().map(|s| s.g)
    }
}

/// `g(t) = dim⁻¹ Σ_m e^{−iE_m t}` over the shifted energies.
pub fn exact_g(s: &Spectrum, t: f64) -> Complex64 {
    shifted_g(s, t, 0.0)
}

/// `g(t)` for the spectrum moved up by `offset`: `e^{−i·offset·t} g(t)`.
pub fn shifted_g(s: &Spectrum, t: f64, offset: f64) -> Complex64 {
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    for &(e, d) in s.levels() {
        let (sin, cos) = ((e + offset) * t).sin_cos();
        re.add(d as f64 * cos);
        im.add(-(d as f64) * sin);
    }
    Complex64::new(re.value(), im.value()) / s.dimension() as f64
}

/// Exact `g(t_ℓ)` for `ℓ = 0..=N/2`, with the plan's guard offset applied.
pub fn exact_series(s: &Spectrum, plan: &SamplingPlan) -> Vec<Complex64> {
    let offset = plan.energy_offset();
    let at = |l: usize| {
        if l == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            shifted_g(s, plan.time(l), offset)
        }
    };
    #[cfg(feature = "parallel")]
    return (0..=plan.max_index()).into_par_iter().map(at).collect();
    #[cfg(not(feature = "parallel"))]
    return (0..=plan.max_index()).map(at).collect();
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircuitProbabilities {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

/// Outcome probabilities of the probe qubit for the two circuit variants.
pub fn circuit_probabilities(g: Complex64) -> Result<CircuitProbabilities> {
    let mag = g.norm();
    if !(mag <= 1.0 + 1e-12) {
        return Err(Error::param("g", format!("|g| = {mag} exceeds 1")));
    }
    let i = Complex64::i();
    let one = Complex64::new(1.0, 0.0);
    let clamp = |p: f64| p.clamp(0.0, 1.0);
    Ok(CircuitProbabilities {
        x0: clamp((one + i * g).norm_sqr() / 4.0),
        x1: clamp((one - i * g).norm_sqr() / 4.0),
        y0: clamp((one + g).norm_sqr() / 4.0),
        y1: clamp((one - g).norm_sqr() / 4.0),
    })
}

/// Per-component variances of the single-setting shot estimator with `R`
/// repetitions: `Var(p̃₀ − p̃₁) = [p₀ + p₁ − (p₀ − p₁)²]/R`.
pub fn shot_variances(g: Complex64, repetitions: u64) -> Result<(f64, f64)> {
    let p = circuit_probabilities(g)?;
    let r = repetitions as f64;
    let var = |a: f64, b: f64| (a + b - (a - b) * (a - b)) / r;
    Ok((var(p.y0, p.y1), var(p.x1, p.x0)))
}

/// Independent substream for sample `l` of a series seeded with `seed`.
pub(crate) fn stream_rng(seed: u64, l: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(l as u64);
    rng
}

fn trinomial<R: Rng>(rng: &mut R, trials: u64, p0: f64, p1: f64) -> (u64, u64) {
    let k0 = Binomial::new(trials, p0.clamp(0.0, 1.0)).expect("valid probability").sample(rng);
    let rest = trials - k0;
    let cond = if p0 >= 1.0 { 0.0 } else { (p1 / (1.0 - p0)).clamp(0.0, 1.0) };
    let k1 = if rest == 0 {
        0
    } else {
        Binomial::new(rest, cond).expect("valid probability").sample(rng)
    };
    (k0, k1)
}

fn noisy_value(g: Complex64, noise: &NoiseModel, rng: &mut ChaCha8Rng) -> Result<Complex64> {
    match *noise {
        NoiseModel::Exact => Ok(g),
        NoiseModel::AdditiveGaussian { sigma } => {
            if sigma == 0.0 {
                return Ok(g);
            }
            let normal = Normal::new(0.0, sigma).expect("validated sigma");
            let re = normal.sample(rng);
            let im = normal.sample(rng);
            Ok(g + Complex64::new(re, im))
        }
        NoiseModel::Shots { repetitions } => {
            let p = circuit_probabilities(g)?;
            let r = repetitions as f64;
            let (y0, y1) = trinomial(rng, repetitions, p.y0, p.y1);
            let (x0, x1) = trinomial(rng, repetitions, p.x0, p.x1);
            Ok(Complex64::new(
                (y0 as f64 - y1 as f64) / r,
                (x1 as f64 - x0 as f64) / r,
            ))
        }
    }
}

/// Applies the noise model to precomputed exact values `g(t_ℓ)`.
///
/// Each index draws from its own stream, so the output does not depend on
/// the thread count.
pub fn sample_from_exact(
    exact: &[Complex64],
    plan: &SamplingPlan,
    noise: NoiseModel,
    seed: u64,
    dimension: usize,
    spins: usize,
) -> Result<SampleSet> {
    noise.validate()?;
    if exact.len() != plan.max_index() + 1 {
        return Err(Error::IncompleteSamples(format!(
            "{} exact values for a plan with {} indices",
            exact.len(),
            plan.max_index() + 1
        )));
    }
    let draw = |l: usize| -> Result<Sample> {
        let mut rng = stream_rng(seed, l);
        Ok(Sample {
            l,
            t: plan.time(l),
            g: noisy_value(exact[l], &noise, &mut rng)?,
        })
    };
    #[cfg(feature = "parallel")]
    let samples: Result<Vec<Sample>> = (0..exact.len()).into_par_iter().map(draw).collect();
    #[cfg(not(feature = "parallel"))]
    let samples: Result<Vec<Sample>> = (0..exact.len()).map(draw).collect();
    Ok(SampleSet {
        plan: plan.clone(),
        samples: samples?,
        noise,
        seed,
        dimension,
        spins,
    })
}

pub fn sample_series(s: &Spectrum, plan: &SamplingPlan, noise: NoiseModel, seed: u64) -> Result<SampleSet> {
    noise.validate()?;
    let exact = exact_series(s, plan);
    sample_from_exact(&exact, plan, noise, seed, s.dimension(), s.spins())
}

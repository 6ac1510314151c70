//! Free-energy estimation from samples of the trace of the time-evolution
//! operator.
//!
//! The pipeline is: build a lattice Hamiltonian, get its exact spectrum,
//! plan a windowed sampling of `g(t) = dim⁻¹ Tr e^{−iHt}` from an error
//! budget, draw exact or noisy samples, and turn them into an estimate of the
//! partition function and free energy per spin. The noise module predicts
//! how readout noise on `g` propagates into `Z̃`.

pub mod error;
pub mod estimate;
pub mod io;
pub mod lattice;
pub mod noise;
pub mod numeric;
pub mod plan;
pub mod quad;
pub mod sampler;
pub mod spectrum;
pub mod window;

pub use error::{Error, Result};
pub use estimate::{
    estimate_free_energy, estimate_partition, evaluate, reconstruct_dos, relative_error, single_state_error_bound,
    DosCurve, EstimateReport,
};
pub use lattice::{bandwidth_bound, build_hamiltonian, Hamiltonian, LatticeGraph, ModelSpec};
pub use noise::{
    failure_probability, monte_carlo_study, required_sigma_g, variance_integral, variance_sum, NoiseStudyResult,
    VarianceOptions, VariancePrediction,
};
pub use plan::{plan_deterministic, plan_for_spectrum, ErrorBudget, PlanLimits, SamplingPlan};
pub use sampler::{circuit_probabilities, exact_g, sample_series, NoiseModel, SampleSet};
pub use spectrum::{exact_spectrum, free_energy_per_spin, partition_function, Spectrum};
pub use window::{alpha_theta, check_lemmas, cardinal_bspline, side_lobe_area, window_value, WindowSpec};

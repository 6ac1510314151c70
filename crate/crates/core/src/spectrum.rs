//! Exact spectra: eigenenergies shifted onto `[0, ΔE]`, and the partition
//! function and free energy they imply.

use nalgebra::SymmetricEigen;
use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{Hamiltonian, ModelSpec, DENSE_SPIN_LIMIT, DIAGONAL_SPIN_LIMIT};
use crate::numeric::CompensatedSum;

/// Shifted eigenenergies of a Hamiltonian.
///
/// `energies` is sorted, starts at exactly 0 and ends at the bandwidth;
/// degenerate values are repeated. `levels` groups bit-identical energies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    energies: Vec<f64>,
    levels: Vec<(f64, usize)>,
    e_min_original: f64,
    spins: usize,
}

impl Spectrum {
    /// Shifts raw eigenvalues so the minimum is 0. `spins = 0` marks a
    /// spectrum whose dimension is not `2^n`.
    pub fn from_energies(mut raw: Vec<f64>, spins: usize) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::InvalidModel("empty spectrum".into()));
        }
        if raw.iter().any(|e| !e.is_finite()) {
            return Err(Error::Consistency("non-finite eigenvalue".into()));
        }
        raw.sort_by(f64::total_cmp);
        let e_min = raw[0];
        for e in raw.iter_mut() {
            *e -= e_min;
        }
        let mut levels: Vec<(f64, usize)> = Vec::new();
        for &e in &raw {
            match levels.last_mut() {
                Some((last, count)) if *last == e => *count += 1,
                _ => levels.push((e, 1)),
            }
        }
        Ok(Self {
            energies: raw,
            levels,
            e_min_original: e_min,
            spins,
        })
    }

    pub fn from_levels(levels: &[(f64, usize)], spins: usize) -> Result<Self> {
        if levels.iter().any(|&(_, d)| d == 0) {
            return Err(Error::InvalidModel("zero degeneracy".into()));
        }
        let raw = levels
            .iter()
            .flat_map(|&(e, d)| std::iter::repeat_n(e, d))
            .collect();
        Self::from_energies(raw, spins)
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// Distinct energies with their multiplicities, ascending.
    pub fn levels(&self) -> &[(f64, usize)] {
        &self.levels
    }

    pub fn dimension(&self) -> usize {
        self.energies.len()
    }

    pub fn bandwidth(&self) -> f64 {
        *self.energies.last().expect("non-empty")
    }

    pub fn e_min_original(&self) -> f64 {
        self.e_min_original
    }

    pub fn spins(&self) -> usize {
        self.spins
    }

    /// Levels as CSV rows `energy,degeneracy` (with header).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("energy,degeneracy\n");
        for &(e, d) in &self.levels {
            out.push_str(&format!("{e},{d}\n"));
        }
        out
    }
}

pub fn exact_spectrum(h: &Hamiltonian) -> Result<Spectrum> {
    let n = h.sites();
    match h.model() {
        ModelSpec::Synthetic { levels } => {
            let dim: usize = levels.iter().map(|&(_, d)| d).sum();
            let spins = if dim.is_power_of_two() && dim.trailing_zeros() as usize == n { n } else { 0 };
            Spectrum::from_levels(levels, spins)
        }
        ModelSpec::Xxz { .. } => dense_spectrum(h),
        _ => {
            if n > DIAGONAL_SPIN_LIMIT {
                return Err(Error::SizeLimit {
                    what: format!("diagonal enumeration over {n} spins"),
                    limit: DIAGONAL_SPIN_LIMIT,
                });
            }
            let dim = 1u64 << n;
            let energy = |c: u64| h.configuration_energy(c).expect("diagonal lattice model");
            #[cfg(feature = "parallel")]
            let raw: Vec<f64> = (0..dim).into_par_iter().map(energy).collect();
            #[cfg(not(feature = "parallel"))]
            let raw: Vec<f64> = (0..dim).map(energy).collect();
            Spectrum::from_energies(raw, n)
        }
    }
}

/// Dense symmetric eigensolve of the computational-basis matrix.
pub fn dense_spectrum(h: &Hamiltonian) -> Result<Spectrum> {
    let n = h.sites();
    if n > DENSE_SPIN_LIMIT {
        return Err(Error::SizeLimit {
            what: format!("dense diagonalization over {n} spins"),
            limit: DENSE_SPIN_LIMIT,
        });
    }
    let m = h.dense_matrix()?;
    let asym = (&m - m.transpose()).amax();
    if asym > 1e-12 * m.amax().max(1.0) {
        return Err(Error::Consistency(format!("Hamiltonian matrix not symmetric (|H − Hᵀ| = {asym:e})")));
    }
    let eig = SymmetricEigen::new(m);
    Spectrum::from_energies(eig.eigenvalues.iter().copied().collect(), n)
}

fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta.is_finite() {
        Ok(())
    } else {
        Err(Error::param("beta", format!("must be positive and finite, got {beta}")))
    }
}

/// `Z = Σ_m e^{−βE_m}` on the shifted scale.
pub fn partition_function(s: &Spectrum, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    let z: CompensatedSum = s
        .levels
        .iter()
        .map(|&(e, d)| d as f64 * (-beta * e).exp())
        .collect();
    Ok(z.value())
}

/// `F = −ln Z / (nβ)` on the shifted scale; add `e_min_original / n` for
/// the unshifted value.
pub fn free_energy_per_spin(s: &Spectrum, beta: f64) -> Result<f64> {
    if s.spins == 0 {
        return Err(Error::param("spins", "free energy per spin needs a spin count"));
    }
    let z = partition_function(s, beta)?;
    Ok(-z.ln() / (s.spins as f64 * beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_hamiltonian, LatticeGraph};

    fn ising(graph: LatticeGraph, jz: f64, h: f64) -> Hamiltonian {
        build_hamiltonian(graph, ModelSpec::IsingLongitudinal { jz, h }).unwrap()
    }

    #[test]
    fn ising_ring_four_levels() {
        let s = exact_spectrum(&ising(LatticeGraph::ring(4).unwrap(), 1.0, 0.0)).unwrap();
        assert_eq!(s.levels(), &[(0.0, 2), (4.0, 12), (8.0, 2)]);
        assert_eq!(s.bandwidth(), 8.0);
        assert_eq!(s.dimension(), 16);
    }

    #[test]
    fn free_spins_two_sites() {
        let h = build_hamiltonian(LatticeGraph::chain(2).unwrap(), ModelSpec::FreeSpins { h: 1.0 }).unwrap();
        let s = exact_spectrum(&h).unwrap();
        assert_eq!(s.energies(), &[0.0, 2.0, 2.0, 4.0]);
    }

    #[test]
    fn heisenberg_pair_singlet_triplet() {
        let h = build_hamiltonian(LatticeGraph::chain(2).unwrap(), ModelSpec::Xxz { jx: 1.0, jz: 1.0 }).unwrap();
        let s = exact_spectrum(&h).unwrap();
        assert!((s.e_min_original() + 3.0).abs() < 1e-12);
        for (e, want) in s.energies().iter().zip([0.0, 4.0, 4.0, 4.0]) {
            assert!((e - want).abs() < 1e-12);
        }
    }

    #[test]
    fn synthetic_single_zero_level() {
        let s = Spectrum::from_levels(&[(0.0, 1)], 0).unwrap();
        for beta in [0.1, 1.0, 50.0] {
            assert_eq!(partition_function(&s, beta).unwrap(), 1.0);
        }
        assert!(free_energy_per_spin(&s, 1.0).is_err());
    }

    #[test]
    fn ring_matches_transfer_matrix() {
        // Z = λ₊ⁿ + λ₋ⁿ with λ± = 1 ± e^{−2βJ}; the leading term alone is (1+x)ⁿ.
        for (n, beta, j) in [(6, 0.7, 1.0), (6, 2.0, 0.4), (8, 1.0, 1.0)] {
            let s = exact_spectrum(&ising(LatticeGraph::ring(n).unwrap(), j, 0.0)).unwrap();
            let x = (-2.0 * beta * j).exp();
            let exact = (1.0 + x).powi(n as i32) + (1.0 - x).powi(n as i32);
            let z = partition_function(&s, beta).unwrap();
            assert!((z / exact - 1.0).abs() < 1e-13);
            let leading = (1.0 + x).powi(n as i32);
            let gap = ((1.0 - x) / (1.0 + x)).powi(n as i32);
            assert!(((z - leading) / leading - gap).abs() < 1e-12);
        }
        let s = exact_spectrum(&ising(LatticeGraph::ring(8).unwrap(), 1.0, 0.0)).unwrap();
        let x = (-2.0f64).exp();
        let f = free_energy_per_spin(&s, 1.0).unwrap();
        assert!((f + ((1.0 + x).powi(8) + (1.0 - x).powi(8)).ln() / 8.0).abs() < 1e-14);
    }

    #[test]
    fn high_temperature_limit_is_dimension() {
        let s = exact_spectrum(&ising(LatticeGraph::ring(5).unwrap(), 1.3, 0.4)).unwrap();
        let z = partition_function(&s, 1e-9).unwrap();
        assert!((z - 32.0).abs() < 1e-6);
    }

    #[test]
    fn free_spin_free_energy() {
        for n in 1..6 {
            let h = build_hamiltonian(LatticeGraph::chain(n).unwrap(), ModelSpec::FreeSpins { h: 0.35 }).unwrap();
            let s = exact_spectrum(&h).unwrap();
            let beta = 1.7;
            let splitting = 0.7;
            let f = free_energy_per_spin(&s, beta).unwrap();
            assert!((f + (1.0 + (-beta * splitting).exp()).ln() / beta).abs() < 1e-14);
        }
    }

    #[test]
    fn ground_state_dominates_at_low_temperature() {
        let s = exact_spectrum(&ising(LatticeGraph::chain(5).unwrap(), 1.0, 0.5)).unwrap();
        assert_eq!(s.levels()[0].1, 1);
        assert!(free_energy_per_spin(&s, 200.0).unwrap().abs() < 1e-12);
    }

    #[test]
    fn beta_must_be_positive() {
        let s = Spectrum::from_levels(&[(0.0, 1), (1.0, 1)], 1).unwrap();
        assert!(partition_function(&s, 0.0).is_err());
        assert!(partition_function(&s, -1.0).is_err());
    }

    #[test]
    fn csv_export() {
        let s = Spectrum::from_levels(&[(1.0, 1), (3.0, 2)], 0).unwrap();
        assert_eq!(s.to_csv(), "energy,degeneracy\n0,1\n2,2\n");
    }
}

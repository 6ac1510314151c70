//! Spin-1/2 lattice graphs and model Hamiltonians.
//!
//! Conventions: site `i` is spin up (σ_z = +1) when bit `i` of the basis
//! index is 0. The longitudinal Ising model is
//!
//! ```text
//! H = J_z Σ_⟨ij⟩ (1 − σ_z^i σ_z^j) + h Σ_i (1 − σ_z^i)
//! ```
//!
//! so every domain wall costs `2 J_z` and every down spin costs `2 h`.
//! The XXZ model is `Σ_⟨ij⟩ [J_x (σ_x σ_x + σ_y σ_y) + J_z σ_z σ_z]`.

use std::collections::HashSet;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest spin count handled by the dense Hermitian eigensolver.
pub const DENSE_SPIN_LIMIT: usize = 12;
/// Largest spin count handled by basis enumeration of diagonal models.
pub const DIAGONAL_SPIN_LIMIT: usize = 24;
/// Largest explicit dimension accepted for synthetic level lists.
pub const SYNTHETIC_DIMENSION_LIMIT: usize = 1 << DIAGONAL_SPIN_LIMIT;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    periodic: bool,
}

impl LatticeGraph {
    /// Validates and normalizes an explicit edge list; each edge is stored as `(i, j)` with `i < j`.
    pub fn new(n: usize, edges: Vec<(usize, usize)>, periodic: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("a lattice needs at least one site".into()));
        }
        let mut seen = HashSet::with_capacity(edges.len());
        let mut normalized = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at site {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) references a site outside 0..{n}"
                )));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({}, {})", e.0, e.1)));
            }
            normalized.push(e);
        }
        Ok(Self {
            n,
            edges: normalized,
            periodic,
        })
    }

    pub fn chain(n: usize) -> Result<Self> {
        let edges = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, edges, false)
    }

    /// Periodic chain; needs `n ≥ 3` so the closing bond is distinct.
    pub fn ring(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph(format!("a ring needs at least 3 sites, got {n}")));
        }
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((0, n - 1));
        Self::new(n, edges, true)
    }

    /// Rectangular grid in row-major order. With `periodic`, each direction
    /// of length ≥ 3 is wrapped.
    pub fn grid(rows: usize, cols: usize, periodic: bool) -> Result<Self> {
        let site = |r: usize, c: usize| r * cols + c;
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                if c + 1 < cols {
                    edges.push((site(r, c), site(r, c + 1)));
                } else if periodic && cols >= 3 {
                    edges.push((site(r, 0), site(r, c)));
                }
                if r + 1 < rows {
                    edges.push((site(r, c), site(r + 1, c)));
                } else if periodic && rows >= 3 {
                    edges.push((site(0, c), site(r, c)));
                }
            }
        }
        Self::new(rows * cols, edges, periodic)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Self::new(n, edges, false)
    }

    pub fn sites(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_periodic(&self) -> bool {
        self.periodic
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ModelSpec {
    IsingLongitudinal { jz: f64, h: f64 },
    Xxz { jx: f64, jz: f64 },
    FreeSpins { h: f64 },
    /// Explicit level list `(energy, degeneracy)`; the dimension is the
    /// sum of degeneracies.
    Synthetic { levels: Vec<(f64, usize)> },
}

impl ModelSpec {
    pub fn is_diagonal(&self) -> bool {
        !matches!(self, ModelSpec::Xxz { .. })
    }

    fn validate(&self) -> Result<()> {
        let finite = |name: &str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidModel(format!("{name} must be finite, got {v}")))
            }
        };
        match self {
            ModelSpec::IsingLongitudinal { jz, h } => {
                finite("J_z", *jz)?;
                finite("h", *h)
            }
            ModelSpec::Xxz { jx, jz } => {
                finite("J_x", *jx)?;
                finite("J_z", *jz)
            }
            ModelSpec::FreeSpins { h } => finite("h", *h),
            ModelSpec::Synthetic { levels } => {
                if levels.is_empty() {
                    return Err(Error::InvalidModel("synthetic spectrum has no levels".into()));
                }
                let mut dim = 0usize;
                for &(e, d) in levels {
                    finite("level energy", e)?;
                    if d == 0 {
                        return Err(Error::InvalidModel(format!("level {e} has zero degeneracy")));
                    }
                    dim = dim.saturating_add(d);
                }
                if dim > SYNTHETIC_DIMENSION_LIMIT {
                    return Err(Error::SizeLimit {
                        what: format!("synthetic dimension {dim}"),
                        limit: SYNTHETIC_DIMENSION_LIMIT,
                    });
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hamiltonian {
    graph: LatticeGraph,
    model: ModelSpec,
    diagonal: bool,
}

pub fn build_hamiltonian(graph: LatticeGraph, model: ModelSpec) -> Result<Hamiltonian> {
    model.validate()?;
    if let ModelSpec::Xxz { .. } = model {
        if graph.sites() > DENSE_SPIN_LIMIT {
            return Err(Error::SizeLimit {
                what: format!("XXZ model with {} spins", graph.sites()),
                limit: DENSE_SPIN_LIMIT,
            });
        }
    }
    let diagonal = model.is_diagonal();
    Ok(Hamiltonian {
        graph,
        model,
        diagonal,
    })
}

impl Hamiltonian {
    pub fn graph(&self) -> &LatticeGraph {
        &self.graph
    }

    pub fn model(&self) -> &ModelSpec {
        &self.model
    }

    pub fn is_diagonal(&self) -> bool {
        self.diagonal
    }

    pub fn sites(&self) -> usize {
        self.graph.sites()
    }

    /// Energy of a computational basis state for the diagonal lattice models.
    /// `None` for XXZ and synthetic spectra, which have no per-configuration energy.
    pub fn configuration_energy(&self, config: u64) -> Option<f64> {
        match self.model {
            ModelSpec::IsingLongitudinal { jz, h } => {
                let walls = self.domain_walls(config);
                let downs = down_spins(config, self.sites());
                Some(2.0 * jz * walls as f64 + 2.0 * h * downs as f64)
            }
            ModelSpec::FreeSpins { h } => Some(2.0 * h * down_spins(config, self.sites()) as f64),
            _ => None,
        }
    }

    fn domain_walls(&self, config: u64) -> u32 {
        self.graph
            .edges
            .iter()
            .map(|&(i, j)| (((config >> i) ^ (config >> j)) & 1) as u32)
            .sum()
    }

    /// Dense real-symmetric matrix in the computational basis. Valid for the
    /// lattice models up to [`DENSE_SPIN_LIMIT`] spins.
    pub fn dense_matrix(&self) -> Result<DMatrix<f64>> {
        let n = self.sites();
        if n > DENSE_SPIN_LIMIT {
            return Err(Error::SizeLimit {
                what: format!("dense matrix for {n} spins"),
                limit: DENSE_SPIN_LIMIT,
            });
        }
        let dim = 1usize << n;
        let mut m = DMatrix::<f64>::zeros(dim, dim);
        match self.model {
            ModelSpec::IsingLongitudinal { .. } | ModelSpec::FreeSpins { .. } => {
                for c in 0..dim {
                    m[(c, c)] = self.configuration_energy(c as u64).expect("diagonal model");
                }
            }
            ModelSpec::Xxz { jx, jz } => {
                for c in 0..dim {
                    for &(i, j) in &self.graph.edges {
                        let si = (c >> i) & 1;
                        let sj = (c >> j) & 1;
                        if si == sj {
                            m[(c, c)] += jz;
                        } else {
                            m[(c, c)] -= jz;
                            // σxσx + σyσy = 2(σ+σ− + σ−σ+): flips an antiparallel pair.
                            let flipped = c ^ (1 << i) ^ (1 << j);
                            m[(flipped, c)] += 2.0 * jx;
                        }
                    }
                }
            }
            ModelSpec::Synthetic { .. } => {
                return Err(Error::InvalidModel(
                    "synthetic spectra have no matrix representation".into(),
                ))
            }
        }
        Ok(m)
    }
}

fn down_spins(config: u64, n: usize) -> u32 {
    let mask = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
    (config & mask).count_ones()
}

/// Rigorous upper bound on `E_max − E_min`.
pub fn bandwidth_bound(h: &Hamiltonian) -> f64 {
    let edges = h.graph.edges.len() as f64;
    let n = h.sites() as f64;
    match &h.model {
        ModelSpec::IsingLongitudinal { jz, h: field } => 2.0 * jz.abs() * edges + 2.0 * field.abs() * n,
        ModelSpec::Xxz { jx, jz } => 2.0 * (2.0 * jx.abs() + jz.abs()) * edges,
        ModelSpec::FreeSpins { h: field } => 2.0 * field.abs() * n,
        ModelSpec::Synthetic { levels } => {
            let (lo, hi) = levels
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(e, _)| (lo.min(e), hi.max(e)));
            hi - lo
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn energies(h: &Hamiltonian) -> Vec<f64> {
        (0..1u64 << h.sites())
            .map(|c| h.configuration_energy(c).unwrap())
            .collect()
    }

    #[test]
    fn two_site_ising_chain() {
        let h = build_hamiltonian(
            LatticeGraph::chain(2).unwrap(),
            ModelSpec::IsingLongitudinal { jz: 1.0, h: 0.0 },
        )
        .unwrap();
        assert!(h.is_diagonal());
        assert_eq!(energies(&h), vec![0.0, 2.0, 2.0, 0.0]);
    }

    #[test]
    fn single_free_spin() {
        let h = build_hamiltonian(LatticeGraph::chain(1).unwrap(), ModelSpec::FreeSpins { h: 0.5 }).unwrap();
        assert_eq!(energies(&h), vec![0.0, 1.0]);
    }

    #[test]
    fn zero_xxz_is_zero_matrix() {
        let h = build_hamiltonian(LatticeGraph::ring(4).unwrap(), ModelSpec::Xxz { jx: 0.0, jz: 0.0 }).unwrap();
        assert!(!h.is_diagonal());
        assert!(h.dense_matrix().unwrap().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn graph_validation() {
        assert!(matches!(LatticeGraph::new(3, vec![(1, 1)], false), Err(Error::InvalidGraph(_))));
        assert!(matches!(
            LatticeGraph::new(3, vec![(0, 1), (1, 0)], false),
            Err(Error::InvalidGraph(_))
        ));
        assert!(matches!(LatticeGraph::new(3, vec![(0, 3)], false), Err(Error::InvalidGraph(_))));
        assert!(LatticeGraph::ring(2).is_err());
        let g = LatticeGraph::grid(3, 3, true).unwrap();
        assert_eq!(g.edges().len(), 18);
        let g = LatticeGraph::grid(2, 3, true).unwrap();
        assert_eq!(g.edges().len(), 2 * 3 + 3);
    }

    #[test]
    fn xxz_size_limit() {
        let g = LatticeGraph::chain(DENSE_SPIN_LIMIT + 1).unwrap();
        assert!(matches!(
            build_hamiltonian(g, ModelSpec::Xxz { jx: 1.0, jz: 1.0 }),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn synthetic_validation() {
        let g = LatticeGraph::chain(1).unwrap();
        assert!(build_hamiltonian(g.clone(), ModelSpec::Synthetic { levels: vec![] }).is_err());
        assert!(build_hamiltonian(g.clone(), ModelSpec::Synthetic { levels: vec![(0.0, 0)] }).is_err());
        assert!(build_hamiltonian(g, ModelSpec::Synthetic { levels: vec![(f64::NAN, 1)] }).is_err());
    }

    #[test]
    fn bandwidth_examples() {
        let single = LatticeGraph::chain(2).unwrap();
        let h = build_hamiltonian(single, ModelSpec::Xxz { jx: 1.0, jz: 1.0 }).unwrap();
        assert_eq!(bandwidth_bound(&h), 6.0);

        let ring = LatticeGraph::ring(4).unwrap();
        let h = build_hamiltonian(ring, ModelSpec::IsingLongitudinal { jz: 1.0, h: 0.0 }).unwrap();
        assert_eq!(bandwidth_bound(&h), 8.0);
        let e = energies(&h);
        let spread = e.iter().cloned().fold(f64::MIN, f64::max) - e.iter().cloned().fold(f64::MAX, f64::min);
        assert_eq!(spread, 8.0);

        let h = build_hamiltonian(
            LatticeGraph::chain(1).unwrap(),
            ModelSpec::Synthetic {
                levels: vec![(0.0, 1), (5.0, 3)],
            },
        )
        .unwrap();
        assert_eq!(bandwidth_bound(&h), 5.0);
    }

    #[test]
    fn bound_is_linear_in_edge_count() {
        for n in 3..9 {
            let model = ModelSpec::Xxz { jx: 0.7, jz: -1.3 };
            let chain = build_hamiltonian(LatticeGraph::ring(n).unwrap(), model.clone()).unwrap();
            let full = build_hamiltonian(LatticeGraph::complete(n).unwrap(), model).unwrap();
            let per_edge = 2.0 * (2.0 * 0.7 + 1.3);
            assert!((bandwidth_bound(&chain) - per_edge * n as f64).abs() < 1e-12);
            assert!((bandwidth_bound(&full) - per_edge * (n * (n - 1) / 2) as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn ising_ground_state_is_all_up() {
        let h = build_hamiltonian(
            LatticeGraph::grid(2, 3, false).unwrap(),
            ModelSpec::IsingLongitudinal { jz: 0.8, h: 0.3 },
        )
        .unwrap();
        let e = energies(&h);
        assert_eq!(e[0], 0.0);
        assert!(e.iter().all(|&v| v >= 0.0));
    }
}

//! Labeled tensor-product basis: qubit level ⊗ Fock occupations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_DIMENSION_BUDGET: usize = 6000;

/// Qubit levels and per-mode photon cutoffs (maximum occupation).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationSettings {
    pub qubit_levels: usize,
    pub photon_cutoffs: Vec<usize>,
    pub dimension_budget: usize,
}

impl TruncationSettings {
    pub fn new(qubit_levels: usize, photon_cutoffs: Vec<usize>) -> Self {
        Self {
            qubit_levels,
            photon_cutoffs,
            dimension_budget: DEFAULT_DIMENSION_BUDGET,
        }
    }

    pub fn dimension(&self) -> usize {
        self.qubit_levels * self.photon_cutoffs.iter().map(|c| c + 1).product::<usize>()
    }

    pub fn validate(&self) -> Result<()> {
        if self.qubit_levels < 2 {
            return Err(Error::invalid("qubit_levels", "at least two qubit levels are required"));
        }
        let dimension = self.dimension();
        if dimension > self.dimension_budget {
            return Err(Error::DimensionBudget {
                dimension,
                budget: self.dimension_budget,
            });
        }
        Ok(())
    }
}

/// One product state `|q⟩ ⊗ |n₁, …, n_N⟩`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BasisLabel {
    pub qubit: usize,
    pub photons: Vec<usize>,
}

impl BasisLabel {
    pub fn total_photons(&self) -> usize {
        self.photons.iter().sum()
    }
}

/// Product basis ordered with the qubit index slowest and the last mode
/// fastest, which is lexicographic order of the labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductBasis {
    qubit_levels: usize,
    cutoffs: Vec<usize>,
    labels: Vec<BasisLabel>,
}

impl ProductBasis {
    pub fn new(qubit_levels: usize, cutoffs: &[usize]) -> Self {
        let mode_dim: usize = cutoffs.iter().map(|c| c + 1).product();
        let mut labels = Vec::with_capacity(qubit_levels * mode_dim);
        for qubit in 0..qubit_levels {
            let mut photons = vec![0; cutoffs.len()];
            for _ in 0..mode_dim {
                labels.push(BasisLabel {
                    qubit,
                    photons: photons.clone(),
                });
                for k in (0..cutoffs.len()).rev() {
                    if photons[k] < cutoffs[k] {
                        photons[k] += 1;
                        break;
                    }
                    photons[k] = 0;
                }
            }
        }
        Self {
            qubit_levels,
            cutoffs: cutoffs.to_vec(),
            labels,
        }
    }

    pub fn from_truncation(t: &TruncationSettings) -> Self {
        Self::new(t.qubit_levels, &t.photon_cutoffs)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn qubit_levels(&self) -> usize {
        self.qubit_levels
    }

    pub fn cutoffs(&self) -> &[usize] {
        &self.cutoffs
    }

    /// Dimension of the Fock part.
    pub fn mode_dim(&self) -> usize {
        self.cutoffs.iter().map(|c| c + 1).product()
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn index_of(&self, label: &BasisLabel) -> Option<usize> {
        self.labels.binary_search(label).ok()
    }

    /// Same Fock space with fewer qubit levels; its labels are a prefix of ours.
    pub fn with_qubit_levels(&self, qubit_levels: usize) -> Self {
        Self::new(qubit_levels, &self.cutoffs)
    }
}

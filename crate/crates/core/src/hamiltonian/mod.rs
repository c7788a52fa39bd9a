//! Two-excitation Hamiltonian: fixed-K builder, real-space oracle and
//! eigenstate extraction.

mod basis;
mod fixed_k;
mod real_space;
mod state;

pub use basis::{BasisVector, Field, FixedKBasis, Sector};
pub use fixed_k::{build_fixed_k, build_full, embedding, photon_kernel, project};
pub use real_space::{build_real_space, PairState, RealSpace, MAX_ORACLE_SITES};
pub use state::{from_kspace, to_kspace, TwoExcitationState};

use crate::error::Result;
use crate::linalg::{eigh, Eigen};
use crate::model::Params;

/// Diagonalised fixed-K problem.
#[derive(Clone, Debug)]
pub struct FixedKSolution {
    pub params: Params,
    pub basis: FixedKBasis,
    pub eigen: Eigen,
}

impl FixedKSolution {
    pub fn energies(&self) -> &[f64] {
        &self.eigen.values
    }

    pub fn len(&self) -> usize {
        self.eigen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigen.is_empty()
    }

    pub fn state(&self, j: usize) -> TwoExcitationState {
        extract_state(self.eigen.values[j], &self.eigen.vector(j), &self.basis, &self.params)
    }
}

pub fn solve_fixed_k(p: &Params) -> Result<FixedKSolution> {
    let (h, basis) = build_fixed_k(p);
    let eigen = eigh(&h)?;
    Ok(FixedKSolution { params: p.clone(), basis, eigen })
}

pub fn eigenvalues_fixed_k(p: &Params) -> Result<Vec<f64>> {
    Ok(solve_fixed_k(p)?.eigen.values)
}

pub fn extract_state(
    energy: f64,
    v: &[num_complex::Complex64],
    basis: &FixedKBasis,
    p: &Params,
) -> TwoExcitationState {
    TwoExcitationState::from_vector(energy, v, basis, p)
}

/// Spectrum restricted to the chosen sectors. Meaningful when the other
/// sectors decouple, e.g. B_A at K = 0.
pub fn sector_eigenvalues(p: &Params, keep: &[Sector]) -> Result<Vec<f64>> {
    let (h, basis) = build_fixed_k(p);
    let idx: Vec<usize> = (0..basis.dim()).filter(|&i| keep.contains(&basis.vectors[i].sector)).collect();
    let sub = nalgebra::DMatrix::from_fn(idx.len(), idx.len(), |r, c| h[(idx[r], idx[c])]);
    Ok(eigh(&sub)?.values)
}

/// Union of the fixed-K spectra over every total momentum ν′ = −N/2+1 … N/2.
pub fn all_k_eigenvalues(p: &Params) -> Result<Vec<f64>> {
    let mut all = Vec::new();
    for nu in p.nu_range() {
        all.extend(eigenvalues_fixed_k(&p.at_k(nu))?);
    }
    all.sort_by(f64::total_cmp);
    Ok(all)
}

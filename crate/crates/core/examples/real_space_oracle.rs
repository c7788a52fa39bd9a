//! The union of all fixed-K spectra equals the spectrum of the full
//! real-space two-excitation Hamiltonian.
use bipolariton::oracle::real_space_residual;
use bipolariton::{derive_params, ParamsConfig, PotentialKind};

fn main() -> bipolariton::Result<()> {
    let p = derive_params(&ParamsConfig {
        n_sites: Some(12),
        blockade_cells: Some(1),
        potential_kind: Some(PotentialKind::Nna),
        d_strength: Some(-1.0),
        ..Default::default()
    })?;
    println!("max eigenvalue mismatch: {:.2e}", real_space_residual(&p)?);
    Ok(())
}

//! States inside the LL/LU gap: kinematic (constraint only) and with a
//! repulsive van der Waals tail.
use bipolariton::bound_states::{detect_gap_states, gap_splitting};
use bipolariton::hamiltonian::solve_fixed_k;
use bipolariton::{derive_params, ParamsConfig, PotentialKind};

fn main() -> bipolariton::Result<()> {
    for ell in 0..=4 {
        let p = derive_params(&ParamsConfig { blockade_cells: Some(ell), ..Default::default() })?;
        let g = detect_gap_states(&solve_fixed_k(&p)?);
        println!("ell={ell}: {} gap state(s), splitting {:.4} G", g.len(), gap_splitting(&g));
    }
    for d in [0.0, 0.5, 1.5] {
        let p = derive_params(&ParamsConfig {
            detuning: Some(0.5),
            potential_kind: Some(PotentialKind::Vdw),
            d_strength: Some(d),
            ..Default::default()
        })?;
        for g in detect_gap_states(&solve_fixed_k(&p)?) {
            println!("delta=0.5, D={d}: E = {:.5}, splitting {:.4}, dA = {:.3} {}", g.energy, g.splitting, g.delta_a, g.flag);
        }
    }
    Ok(())
}

//! Diagonalise one total-momentum sector and classify its states.
use bipolariton::analysis::analyze;
use bipolariton::{derive_params, ParamsConfig, PotentialKind};

fn main() -> bipolariton::Result<()> {
    let p = derive_params(&ParamsConfig {
        blockade_cells: Some(3),
        potential_kind: Some(PotentialKind::Vdw),
        d_strength: Some(-1.0),
        ..Default::default()
    })?;
    for nu in [0, 5] {
        let r = analyze(&p.at_k(nu))?;
        println!("K index {nu}: {} states, {} LL, {} in the gap", r.states.len(), r.ll_states().len(), r.gap_states().len());
        for s in r.states.iter().take(5) {
            println!(
                "  #{:<3} E = {:.6}  {:<6} w = ({:.3}, {:.3}, {:.3})  dA = {:.3} {}",
                s.index, s.energy, s.class.to_string(), s.w_aa, s.w_ab, s.w_cc, s.delta_a, s.flag
            );
        }
    }
    Ok(())
}

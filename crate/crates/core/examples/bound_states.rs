//! Bipolariton split below the LL band by an attractive nearest-shell
//! interaction, from the separable condition and from diagonalisation.
use bipolariton::bound_states::{find_bipolariton, Window};
use bipolariton::{derive_params, ParamsConfig, PotentialKind};

fn main() -> bipolariton::Result<()> {
    for d in [-1.0, -2.5, -5.0, -8.0] {
        let p = derive_params(&ParamsConfig {
            potential_kind: Some(PotentialKind::Nna),
            d_strength: Some(d),
            ..Default::default()
        })?;
        let rep = find_bipolariton(&p, Window::BelowLl)?;
        print!("D = {d:5.1} ({}): {} eigenvalue(s) below LL", rep.regime, rep.eigenvalues.len());
        if let Some(s) = rep.states.first() {
            print!(", root {:.5}, eigenvalue {:.5}, asymptote gap {:.4}", s.root_energy, s.eig_energy, rep.asymptote_gap(&p).unwrap());
        }
        println!();
    }
    Ok(())
}

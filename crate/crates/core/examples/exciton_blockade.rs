//! Closed-form two-exciton states with a blockade window, checked against
//! the brute-force relative chain.
use bipolariton::blockade::{distinct_mu, exciton_state, orthonormality_residuals};
use bipolariton::oracle::exciton_equivalence;
use bipolariton::{derive_params, ParamsConfig};

fn main() -> bipolariton::Result<()> {
    for ell in [0, 2, 4] {
        let p = derive_params(&ParamsConfig { n_sites: Some(40), blockade_cells: Some(ell), ..Default::default() })?;
        let (de, overlap) = exciton_equivalence(&p)?;
        let (r1, r2) = orthonormality_residuals(&p);
        println!(
            "ell={ell}: {} states, max |dE| = {de:.2e}, min overlap = {overlap:.12}, orthonormality {:.1e}",
            distinct_mu(&p).len(),
            r1.max(r2)
        );
    }
    let p = derive_params(&ParamsConfig { n_sites: Some(40), blockade_cells: Some(4), ..Default::default() })?;
    let s = exciton_state(2.5, &p);
    println!("mu = 2.5: kappa = {:.5}/a, E = {:.6}", s.kappa, s.energy);
    println!("g(n) for n = 0..=8: {:?}", s.amplitude[19..28].iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>());
    Ok(())
}

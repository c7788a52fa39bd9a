//! Virtual-polariton reduction at K = 0: exact (p,e) rewrite, the coupling
//! profile, effective wave vectors and the contact amplitude.
use bipolariton::analysis::analyze;
use bipolariton::oracle::pe_rewrite_residual;
use bipolariton::virtual_basis::{effective_wavevector_matching, lambda_coupling, photon_contact_amplitude, ContactMode};
use bipolariton::{derive_params, ParamsConfig};

fn main() -> bipolariton::Result<()> {
    let p = derive_params(&ParamsConfig { n_sites: Some(40), blockade_cells: Some(4), ..Default::default() })?;
    println!("(p,e) vs fixed-K: {:.2e}", pe_rewrite_residual(&p)?);
    let mu = 9.5;
    let lam: Vec<String> = (0..=20).step_by(2).map(|nu| format!("{:.2}", lambda_coupling(nu, mu, &p))).collect();
    println!("Lambda(|nu|, mu = {mu}) = {}", lam.join(" "));
    for (rho, (k, e, a)) in effective_wavevector_matching(&p)?.into_iter().enumerate().step_by(3) {
        println!("rho {:2}: k_eff = {k:.4}, E = {e:.5}, 2E_L(k_eff) = {a:.5}", rho + 1);
    }
    let r = analyze(&p)?;
    for s in r.ll_states().into_iter().take(3) {
        let st = r.solution.state(s.index);
        let exact = photon_contact_amplitude(&st, &p, ContactMode::Exact)?;
        let near = photon_contact_amplitude(&st, &p, ContactMode::NearestMu { rho: s.index + 1 })?;
        println!("state {}: |A(0)| = {:.5}, exact {:.5}, nearest-mu {:.5}", s.index, st.a[st.index_of(0)].norm(), exact.norm(), near.norm());
    }
    Ok(())
}

//! Photon, exciton and polariton dispersions, and the two-polariton band
//! windows at a few total momenta.
use bipolariton::analysis::BandEdges;
use bipolariton::{derive_params, ParamsConfig};

fn main() -> bipolariton::Result<()> {
    let p = derive_params(&ParamsConfig::default())?;
    println!("k_SC = {:.4}/a, q_perp = {:.4}/a", p.strong_coupling_edge(), p.q_perp());
    println!("{:>8} {:>12} {:>12} {:>12} {:>12}", "k", "E_p", "E_e", "E_L", "E_U");
    for nu in (0..=p.n_sites as i64 / 2).step_by(5) {
        let k = p.k_of(nu as f64);
        let (l, u) = p.branches(k);
        println!("{k:8.4} {:12.5} {:12.5} {l:12.5} {u:12.5}", p.photon_energy(k), p.exciton_energy(k));
    }
    for nu in [0, 10, 25] {
        let b = BandEdges::new(&p.at_k(nu));
        println!("K index {nu:3}: LL [{:.4}, {:.4}]  LU [{:.4}, {:.4}]  gap {:.4} G", b.ll.0, b.ll.1, b.lu.0, b.lu.1, b.gap());
    }
    Ok(())
}

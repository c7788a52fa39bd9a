//! Two-photon bunching figure of merit across the LL band for several
//! blockade radii.
use bipolariton::analysis::{analyze, Flag};
use bipolariton::{derive_params, ParamsConfig};

fn main() -> bipolariton::Result<()> {
    for ell in [0, 3, 10] {
        let r = analyze(&derive_params(&ParamsConfig { blockade_cells: Some(ell), ..Default::default() })?)?;
        let ll = r.ll_states();
        let count = |f: Flag| ll.iter().filter(|s| s.flag == f).count();
        let top = ll.last().map_or(0.0, |s| s.delta_a);
        let peak = ll.iter().map(|s| s.delta_a).fold(0.0, f64::max);
        println!(
            "ell={ell:2}: {} LL states, {} bunched, {} antibunched, max dA = {peak:.3}, band-top dA = {top:.3}, window {:?}",
            ll.len(),
            count(Flag::Bunching),
            count(Flag::Antibunching),
            r.bunching_window().map(|(a, b)| b - a)
        );
    }
    Ok(())
}

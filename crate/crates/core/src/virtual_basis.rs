//! K = 0 reduction onto virtual photon-photon/photon-exciton pairs (ξ) and
//! interacting exciton pairs (χ).
//!
//! The ξ and χ states are parity-adapted and orthonormal: ξ runs over
//! |ν| = 0 … N/2 with weight c_ν = √2 in the interior and 1 at the two ends,
//! χ over the distinct |μ|. In this basis the (p,e) eigenproblem is an
//! exact rewrite of the symmetric K = 0 sector.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::blockade::{distinct_mu, exciton_level, g_vector, separations};
use crate::error::{Error, Result};
use crate::hamiltonian::{Sector, TwoExcitationState};
use crate::linalg::eigh_real;
use crate::model::{Params, Species};

/// Below this |sin| the closed form of Λ is replaced by the overlap sum.
pub const LAMBDA_SINGULAR: f64 = 1e-9;

/// Branch index: 0 is the "−" root (L), 1 the "+" root (U).
pub const BRANCHES: [usize; 2] = [0, 1];

#[derive(Clone, Debug)]
pub struct VirtualPolaritonBasis {
    /// |ν| = 0 … N/2.
    pub nu: Vec<i64>,
    /// c_ν: √2 for 0 < |ν| < N/2, otherwise 1.
    pub weight: Vec<f64>,
    /// E^(p,i)_ν for i = L, U.
    pub energy: [Vec<f64>; 2],
    /// Photon-photon weight, signed like E^(p,i) − E_p − E_e.
    pub x_alpha: [Vec<f64>; 2],
    /// Photon-exciton weight, ≥ 0.
    pub x_beta: [Vec<f64>; 2],
    /// Distinct |μ| = 1/2, 3/2, ….
    pub mu: Vec<f64>,
    pub exciton: Vec<f64>,
}

fn require_k0(p: &Params) -> Result<()> {
    if p.k_total_index != 0 {
        return Err(Error::config("k_total_index", "the virtual-pair reduction is defined at K = 0"));
    }
    if !p.hard_core {
        return Err(Error::config("hard_core", "the virtual-pair reduction needs the exclusion constraint"));
    }
    Ok(())
}

pub fn virtual_pair_basis(p: &Params) -> Result<VirtualPolaritonBasis> {
    require_k0(p)?;
    let half = (p.n_sites / 2) as i64;
    let nu: Vec<i64> = (0..=half).collect();
    let weight = nu.iter().map(|&v| if v == 0 || v == half { 1.0 } else { 2f64.sqrt() }).collect();
    let g2 = p.coupling_g * p.coupling_g;
    let mut energy = [Vec::new(), Vec::new()];
    let mut x_alpha = [Vec::new(), Vec::new()];
    let mut x_beta = [Vec::new(), Vec::new()];
    for &v in &nu {
        let k = p.k_of(v as f64);
        let ep = p.photon_energy(k);
        let ee = p.exciton_energy(k);
        let r = ((ep - ee).powi(2) + 8.0 * g2).sqrt();
        for (i, s) in [(0, -1.0), (1, 1.0)] {
            let e = ep + 0.5 * (ee + ep + s * r);
            let d = e - ep - ee;
            let norm = (d * d + 2.0 * g2).sqrt();
            energy[i].push(e);
            x_alpha[i].push(d / norm);
            x_beta[i].push((2.0 * g2).sqrt() / norm);
        }
    }
    let mu = distinct_mu(p);
    let exciton = mu.iter().map(|&m| exciton_level(m, p)).collect();
    Ok(VirtualPolaritonBasis { nu, weight, energy, x_alpha, x_beta, mu, exciton })
}

/// Σ_{|n|>ℓ} sin κ_μ(|n|−ℓ) cos(k_ν n): the overlap of a plane wave with an
/// unnormalised blockade exciton.
#[cfg(test)]
fn raw_overlap(nu: i64, mu: f64, p: &Params) -> f64 {
    let h = p.halfwidth() as i64;
    let k = p.k_of(nu as f64) * p.lattice_const;
    let kap = crate::blockade::kappa(mu, p) * p.lattice_const;
    separations(p.n_sites)
        .into_iter()
        .filter(|n| n.abs() > h)
        .map(|n| (kap * (n.abs() - h) as f64).sin() * (k * n as f64).cos())
        .sum()
}

/// Σ_s [1−θ(s)] e^{−ik_ν s} g_s(μ).
pub fn overlap_sum(nu: i64, mu: f64, p: &Params) -> f64 {
    let k = p.k_of(nu as f64) * p.lattice_const;
    separations(p.n_sites)
        .into_iter()
        .zip(g_vector(mu, p))
        .filter(|&(n, _)| p.blockade_mask(n) == 0)
        .map(|(n, g)| g * (k * n as f64).cos())
        .sum()
}

/// Closed form of Λ_νμ, or `None` when a denominator is within
/// [`LAMBDA_SINGULAR`] of zero.
pub fn lambda_closed(nu: i64, mu: f64, p: &Params) -> Option<f64> {
    let n = p.n_sites as f64;
    let h = p.halfwidth() as f64;
    let a = PI * nu as f64 * (2.0 * h + 1.0) / n;
    let b = PI * mu.abs() / (n - 2.0 * h);
    let c = PI * nu as f64 / n;
    let (s1, s2) = ((c + b).sin(), (c - b).sin());
    if s1.abs() < LAMBDA_SINGULAR || s2.abs() < LAMBDA_SINGULAR {
        return None;
    }
    Some((a + b).cos() / (2.0 * s1) - (a - b).cos() / (2.0 * s2))
}

/// Ratio overlap_sum / Λ, fitted at the regular point with the largest |Λ|.
pub fn overlap_scale(p: &Params) -> f64 {
    let mut best = (0.0f64, 1.0f64);
    for nu in 0..=(p.n_sites / 2) as i64 {
        for &mu in distinct_mu(p).iter().take(4) {
            if let Some(l) = lambda_closed(nu, mu, p) {
                if l.abs() > best.0.abs() {
                    best = (l, overlap_sum(nu, mu, p));
                }
            }
        }
    }
    best.1 / best.0
}

/// Λ_νμ by the closed form, falling back to the scaled overlap sum.
pub fn lambda_coupling(nu: i64, mu: f64, p: &Params) -> f64 {
    lambda_closed(nu, mu, p).unwrap_or_else(|| overlap_sum(nu, mu, p) / overlap_scale(p))
}

/// Normalised transform of the blockade mask: (1/N) Σ_{|s|≤ℓ} cos(k s).
pub fn theta_hat(k: f64, p: &Params) -> f64 {
    let h = p.halfwidth() as i64;
    (-h..=h).map(|s| (k * p.lattice_const * s as f64).cos()).sum::<f64>() / p.n_sites as f64
}

/// Mixing kernel between free components ν and ν′; the mask enters as
/// N·θ̂ so that eliminating e_μ is exact.
pub fn f_kernel(nu: i64, nu2: i64, p: &Params) -> f64 {
    let n = p.n_sites as i64;
    let nf = n as f64;
    let dk = |m: i64| 2.0 * PI * m as f64 / (nf * p.lattice_const);
    let delta = |m: i64| if m.rem_euclid(n) == 0 { nf } else { 0.0 };
    delta(nu - nu2) + delta(nu + nu2) - nf * theta_hat(dk(nu - nu2), p) - nf * theta_hat(dk(nu + nu2), p)
}

/// Eigenpairs of the (p,e) problem. Vector layout: p^(L) over |ν|, then
/// p^(U) over |ν|, then e over |μ|.
#[derive(Clone, Debug)]
pub struct PeSolution {
    pub basis: VirtualPolaritonBasis,
    pub energies: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

impl PeSolution {
    fn nv(&self) -> usize {
        self.basis.nu.len()
    }

    pub fn p_amplitudes(&self, j: usize, branch: usize) -> Vec<f64> {
        let nv = self.nv();
        (0..nv).map(|r| self.vectors[(branch * nv + r, j)]).collect()
    }

    pub fn e_amplitudes(&self, j: usize) -> Vec<f64> {
        let nv = self.nv();
        (2 * nv..self.vectors.nrows()).map(|r| self.vectors[(r, j)]).collect()
    }

    /// A(0) = Σ_{i,|ν|} c_ν X^(i,α) p^(i)_ν / √N.
    pub fn contact_amplitude(&self, j: usize, n_sites: usize) -> f64 {
        let b = &self.basis;
        BRANCHES
            .iter()
            .map(|&i| {
                let pv = self.p_amplitudes(j, i);
                (0..self.nv()).map(|r| b.weight[r] * b.x_alpha[i][r] * pv[r]).sum::<f64>()
            })
            .sum::<f64>()
            / (n_sites as f64).sqrt()
    }
}

/// Coupling matrix element between ξ^(i)_ν and χ_μ.
fn pe_coupling(b: &VirtualPolaritonBasis, i: usize, r: usize, lam: f64, p: &Params) -> f64 {
    let n = p.n_sites as f64;
    let red = (p.n_sites - 2 * p.halfwidth()) as f64;
    b.weight[r] * p.coupling_g * b.x_beta[i][r] * 2.0 * lam / (n * red).sqrt()
}

/// Λ over (|ν|, |μ|).
pub fn lambda_table(p: &Params) -> DMatrix<f64> {
    let half = p.n_sites / 2;
    let mu = distinct_mu(p);
    DMatrix::from_fn(half + 1, mu.len(), |r, m| lambda_coupling(r as i64, mu[m], p))
}

pub fn pe_hamiltonian(p: &Params) -> Result<(DMatrix<f64>, VirtualPolaritonBasis)> {
    let b = virtual_pair_basis(p)?;
    let nv = b.nu.len();
    let nm = b.mu.len();
    let lam = lambda_table(p);
    let dim = 2 * nv + nm;
    let mut h = DMatrix::<f64>::zeros(dim, dim);
    for i in BRANCHES {
        for r in 0..nv {
            let row = i * nv + r;
            h[(row, row)] = b.energy[i][r];
            for m in 0..nm {
                let v = pe_coupling(&b, i, r, lam[(r, m)], p);
                h[(row, 2 * nv + m)] = v;
                h[(2 * nv + m, row)] = v;
            }
        }
    }
    for m in 0..nm {
        h[(2 * nv + m, 2 * nv + m)] = b.exciton[m];
    }
    Ok((h, b))
}

pub fn solve_pe_system(p: &Params) -> Result<PeSolution> {
    let (h, basis) = pe_hamiltonian(p)?;
    let e = eigh_real(&h)?;
    let vectors = e.vectors.map(|z| z.re);
    Ok(PeSolution { basis, energies: e.values, vectors })
}

/// Largest residual of the closed p-only equation
/// (E − E^p) p = G²/(N(E − 2E₀)) c X^β Σ F c′ X′^β p′
/// on eigenpair `j`. Exact when the exciton levels are all 2E₀ (t = 0).
pub fn f_system_residual(sol: &PeSolution, j: usize, p: &Params) -> f64 {
    let b = &sol.basis;
    let nv = b.nu.len();
    let e = sol.energies[j];
    let n = p.n_sites as f64;
    let pref = p.coupling_g.powi(2) / (n * (e - 2.0 * p.e0));
    let pv: Vec<Vec<f64>> = BRANCHES.iter().map(|&i| sol.p_amplitudes(j, i)).collect();
    let f = DMatrix::from_fn(nv, nv, |r, s| f_kernel(b.nu[r], b.nu[s], p));
    let src: Vec<f64> = (0..nv)
        .map(|s| BRANCHES.iter().map(|&i| b.weight[s] * b.x_beta[i][s] * pv[i][s]).sum())
        .collect();
    let mut worst = 0.0f64;
    for i in BRANCHES {
        for r in 0..nv {
            let conv: f64 = (0..nv).map(|s| f[(r, s)] * src[s]).sum();
            let lhs = (e - b.energy[i][r]) * pv[i][r];
            let rhs = pref * b.weight[r] * b.x_beta[i][r] * conv;
            worst = worst.max((lhs - rhs).abs());
        }
    }
    worst
}

/// k^eff_ρ for ρ = 1 … N/2 − ℓ.
pub fn effective_wavevectors(p: &Params) -> Vec<f64> {
    let a = p.lattice_const;
    let n = p.n_sites as f64;
    let h = p.halfwidth() as f64;
    let count = p.n_sites / 2 - p.halfwidth();
    let pre = (n * a - 2.0 * h * a - a) / (n * a - 2.0 * h * a);
    (1..=count).map(|rho| pre * PI * (rho as f64 - 1.0) / (n * a / 2.0 - h * a - a)).collect()
}

/// Even-parity LL eigenvalues at K = 0 matched in order to the k^eff_ρ
/// points, as (k^eff, eigenvalue, 2E_L(k^eff)). The LL window can hold more
/// states than there are ρ; the surplus is left unmatched, with the
/// assignment chosen to minimise the summed deviation.
pub fn effective_wavevector_matching(p: &Params) -> Result<Vec<(f64, f64, f64)>> {
    require_k0(p)?;
    let top = crate::analysis::BandEdges::new(p).ll.1 + crate::analysis::EDGE_TOL;
    let ev: Vec<f64> = crate::hamiltonian::sector_eigenvalues(p, &[Sector::A, Sector::BS, Sector::C])?
        .into_iter()
        .filter(|&e| e <= top)
        .collect();
    let ke = effective_wavevectors(p);
    let m = ke.len().min(ev.len());
    let target: Vec<f64> = ke[..m].iter().map(|&k| 2.0 * p.energy(Species::Lower, k)).collect();
    let l = ev.len();
    let mut dp = vec![vec![f64::INFINITY; l + 1]; m + 1];
    dp[0].iter_mut().for_each(|x| *x = 0.0);
    for i in 1..=m {
        for j in i..=l {
            dp[i][j] = dp[i][j - 1].min(dp[i - 1][j - 1] + (ev[j - 1] - target[i - 1]).abs());
        }
    }
    let mut out = Vec::with_capacity(m);
    let (mut i, mut j) = (m, l);
    while i > 0 {
        if j > i && dp[i][j] == dp[i][j - 1] {
            j -= 1;
        } else {
            out.push((ke[i - 1], ev[j - 1], target[i - 1]));
            i -= 1;
            j -= 1;
        }
    }
    out.reverse();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ContactMode {
    /// Every exciton-pair component of the state.
    Exact,
    /// Only the bare exciton pair closest in energy, |μ| = ρ − 1/2, with
    /// weight X^γ = sign(e_μ)·√w_CC.
    NearestMu { rho: usize },
}

/// e_μ = Σ_n g_n(μ) C(n) over the distinct |μ|.
pub fn exciton_projections(state: &TwoExcitationState, p: &Params) -> Vec<C64> {
    distinct_mu(p)
        .into_iter()
        .map(|mu| g_vector(mu, p).iter().zip(&state.c).map(|(g, c)| c * *g).sum())
        .collect()
}

/// Two-photon amplitude at zero separation, rebuilt from the exciton-pair
/// content of a K = 0 state.
/// ρ of the bare exciton pair (|μ| = ρ − 1/2) carrying most of the state's
/// exciton-pair weight.
pub fn dominant_rho(state: &TwoExcitationState, p: &Params) -> usize {
    exciton_projections(state, p)
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .map_or(1, |(m, _)| m + 1)
}

pub fn photon_contact_amplitude(state: &TwoExcitationState, p: &Params, mode: ContactMode) -> Result<C64> {
    require_k0(p)?;
    if state.k_index != 0 {
        return Err(Error::config("k_total_index", "contact amplitude needs a K = 0 state"));
    }
    let b = virtual_pair_basis(p)?;
    let e = exciton_projections(state, p);
    let lam = lambda_table(p);
    let n = p.n_sites as f64;
    let red = (p.n_sites - 2 * p.halfwidth()) as f64;
    let pref = 2.0 * p.coupling_g / (n * red.sqrt());
    let eproj = |r: usize| -> C64 {
        match mode {
            ContactMode::Exact => (0..b.mu.len()).map(|m| e[m] * lam[(r, m)]).sum(),
            ContactMode::NearestMu { rho } => {
                let m = rho.saturating_sub(1).min(b.mu.len() - 1);
                let sign = if e[m].re < 0.0 { -1.0 } else { 1.0 };
                C64::new(sign * state.w_cc.sqrt() * lam[(r, m)], 0.0)
            }
        }
    };
    let mut total = C64::new(0.0, 0.0);
    for r in 0..b.nu.len() {
        let er = eproj(r);
        for i in BRANCHES {
            let w = b.weight[r].powi(2) * b.x_alpha[i][r] * b.x_beta[i][r] / (state.energy - b.energy[i][r]);
            total += er * w;
        }
    }
    Ok(total * pref)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::solve_fixed_k;
    use crate::linalg::multiset_distance;
    use crate::model::{derive_params, ParamsConfig};

    fn params(n: usize, ell: usize) -> Params {
        derive_params(&ParamsConfig { n_sites: Some(n), blockade_cells: Some(ell), ..Default::default() }).unwrap()
    }

    #[test]
    fn weights_are_normalised_and_ordered() {
        let p = params(40, 2);
        let b = virtual_pair_basis(&p).unwrap();
        for r in 0..b.nu.len() {
            assert!(b.energy[0][r] <= b.energy[1][r]);
            for i in BRANCHES {
                assert!((b.x_alpha[i][r].powi(2) + b.x_beta[i][r].powi(2) - 1.0).abs() < 1e-14);
                assert!(b.x_beta[i][r] >= 0.0);
            }
        }
    }

    #[test]
    fn pair_energies_solve_the_two_by_two_block() {
        let p = params(20, 0);
        let b = virtual_pair_basis(&p).unwrap();
        for r in 0..b.nu.len() {
            let k = p.k_of(r as f64);
            let (ep, ee) = (p.photon_energy(k), p.exciton_energy(k));
            let s = 2f64.sqrt() * p.coupling_g;
            let m = DMatrix::from_row_slice(2, 2, &[2.0 * ep, s, s, ep + ee]);
            let ev = eigh_real(&m).unwrap();
            for i in BRANCHES {
                assert!((ev.values[i] - b.energy[i][r]).abs() < 1e-9);
                // The eigenvector is (X^α, X^β) up to sign.
                let v = (ev.vectors[(0, i)].re, ev.vectors[(1, i)].re);
                let dot = v.0 * b.x_alpha[i][r] + v.1 * b.x_beta[i][r];
                assert!((dot.abs() - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn resonance_gives_equal_weights() {
        // t = 0 and δ = 0 put the photon and exciton in resonance at ν = 0.
        let p = derive_params(&ParamsConfig { n_sites: Some(20), hop_t: Some(0.0), detuning: Some(0.0), ..Default::default() }).unwrap();
        let b = virtual_pair_basis(&p).unwrap();
        for i in BRANCHES {
            assert!((b.x_alpha[i][0].powi(2) - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn decoupled_limit() {
        let p = Params { coupling_g: 1e-9, ..params(20, 1) };
        let b = virtual_pair_basis(&p).unwrap();
        let k = p.k_of(3.0);
        let (ep, ee) = (p.photon_energy(k), p.exciton_energy(k));
        assert!((b.energy[0][3] - (ep + ep.min(ee))).abs() < 1e-9);
        let sol = solve_pe_system(&p).unwrap();
        let mut bare: Vec<f64> = b.energy.concat();
        bare.extend(&b.exciton);
        assert!(multiset_distance(&sol.energies, &bare) < 1e-9);
    }

    #[test]
    fn lambda_closed_form_equals_overlap() {
        for ell in [0, 2, 5] {
            let p = params(40, ell);
            let scale = overlap_scale(&p);
            assert!((scale - crate::blockade::closed_form_scale(&p)).abs() < 1e-12);
            for nu in -19..=20 {
                for mu in distinct_mu(&p) {
                    let raw = raw_overlap(nu, mu, &p);
                    if let Some(l) = lambda_closed(nu, mu, &p) {
                        assert!((l - raw).abs() < 1e-8 * (1.0 + raw.abs()), "ell {ell} nu {nu} mu {mu}");
                        assert!((overlap_sum(nu, mu, &p) - scale * l).abs() < 1e-8);
                    } else {
                        assert!(ell > 0);
                        assert!((lambda_coupling(nu, mu, &p) - raw).abs() < 1e-8);
                    }
                }
            }
        }
    }

    #[test]
    fn lambda_is_regular_without_blockade() {
        let p = params(40, 0);
        for nu in -19..=20 {
            for mu in distinct_mu(&p) {
                assert!(lambda_closed(nu, mu, &p).is_some());
            }
        }
    }

    #[test]
    fn lambda_peaks_at_the_resonance() {
        for ell in [0, 10] {
            let p = params(100, ell);
            let mu = 24.5;
            let (best, _) = (0..=50i64).fold((0, 0.0), |acc, nu| {
                let l = lambda_coupling(nu, mu, &p).abs();
                if l > acc.1 { (nu, l) } else { acc }
            });
            let target = mu * 100.0 / (100.0 - 2.0 * ell as f64);
            assert!((best as f64 - target).abs() <= 1.0, "ell {ell}: {best} vs {target}");
        }
    }

    #[test]
    fn theta_hat_and_kernel() {
        let p = params(40, 3);
        assert!((theta_hat(0.0, &p) - 7.0 / 40.0).abs() < 1e-15);
        let p0 = params(40, 0);
        for nu in 0..40 {
            assert!((theta_hat(p0.k_of(nu as f64), &p0) - 1.0 / 40.0).abs() < 1e-15);
        }
        for a in -5..6 {
            for b in -5..6 {
                assert!((f_kernel(a, b, &p) - f_kernel(b, a, &p)).abs() < 1e-12);
                assert!((f_kernel(a, b, &p) - f_kernel(-a, b, &p)).abs() < 1e-12);
            }
        }
    }

    fn symmetric_sector(p: &Params) -> Vec<f64> {
        crate::hamiltonian::sector_eigenvalues(p, &[
            crate::hamiltonian::Sector::A,
            crate::hamiltonian::Sector::BS,
            crate::hamiltonian::Sector::C,
        ])
        .unwrap()
    }

    #[test]
    fn pe_system_is_an_exact_rewrite() {
        for (n, ell) in [(20, 0), (20, 2), (40, 0), (40, 2)] {
            let p = params(n, ell);
            let sol = solve_pe_system(&p).unwrap();
            let direct = symmetric_sector(&p);
            assert_eq!(sol.energies.len(), direct.len());
            assert_eq!(sol.energies.len(), 2 * (n / 2 + 1) + n / 2 - ell);
            assert!(multiset_distance(&sol.energies, &direct) < 1e-8, "N {n} ell {ell}");
        }
    }

    #[test]
    fn eliminating_excitons_gives_the_f_system() {
        for (n, ell) in [(20, 0), (40, 2), (40, 5)] {
            let p = Params { hop_t: 0.0, ..params(n, ell) };
            let sol = solve_pe_system(&p).unwrap();
            for j in 0..sol.energies.len() {
                if (sol.energies[j] - 2.0 * p.e0).abs() < 1e-6 {
                    continue;
                }
                assert!(f_system_residual(&sol, j, &p) < 1e-8, "N {n} ell {ell} state {j}");
            }
        }
    }

    #[test]
    fn effective_wavevector_endpoints() {
        let p = params(100, 10);
        let k = effective_wavevectors(&p);
        assert_eq!(k.len(), 40);
        assert_eq!(k[0], 0.0);
        assert!((k[39] - PI * 79.0 / 80.0).abs() < 1e-14);
    }

    #[test]
    fn exact_contact_amplitude_matches_state() {
        for (n, ell) in [(40, 2), (40, 0)] {
            let p = params(n, ell);
            let sol = solve_fixed_k(&p).unwrap();
            for j in 0..sol.len() {
                let s = sol.state(j);
                if s.b_a.iter().any(|z| z.norm() > 1e-9) {
                    continue;
                }
                let a0 = s.a[s.index_of(0)];
                let got = photon_contact_amplitude(&s, &p, ContactMode::Exact).unwrap();
                let scale = a0.norm().max(1e-6);
                assert!((got - a0).norm() <= 1e-8 * scale, "N {n} ell {ell} state {j}: {got} vs {a0}");
            }
        }
    }

    #[test]
    fn pe_contact_amplitude_matches_state() {
        let p = params(40, 2);
        let pe = solve_pe_system(&p).unwrap();
        let sol = solve_fixed_k(&p).unwrap();
        let mut checked = 0;
        for j in 0..pe.energies.len() {
            let e = pe.energies[j];
            let near: Vec<usize> = (0..sol.len()).filter(|&i| (sol.energies()[i] - e).abs() < 1e-7).collect();
            if near.len() != 1 {
                continue;
            }
            let s = sol.state(near[0]);
            let a0 = s.a[s.index_of(0)].norm();
            assert!((pe.contact_amplitude(j, p.n_sites).abs() - a0).abs() < 1e-8);
            checked += 1;
        }
        assert!(checked > 50);
    }
}

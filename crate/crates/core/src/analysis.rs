//! Band classification, component weights and the two-photon bunching
//! figure of merit ΔA.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::Result;
use crate::hamiltonian::{solve_fixed_k, FixedKSolution, TwoExcitationState};
use crate::linalg::eigh_real;
use crate::model::{Params, Species};

/// Relative tolerance of the strict max/min tests on |A(n)|.
pub const STRICT_TOL: f64 = 1e-12;
/// Absolute slack on band windows.
pub const EDGE_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flag {
    Bunching,
    Antibunching,
    None,
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flag::Bunching => "bunching",
            Flag::Antibunching => "antibunching",
            Flag::None => "none",
        })
    }
}

/// ΔA from |A(n)| with the n = 0 entry at `zero`. The mean runs over all
/// N separations, n = 0 included.
pub fn bunching_from_profile(abs_a: &[f64], zero: usize) -> (f64, Flag) {
    let peak = abs_a.iter().cloned().fold(0.0f64, f64::max);
    if peak == 0.0 {
        return (0.0, Flag::None);
    }
    let tol = STRICT_TOL * peak;
    let a0 = abs_a[zero];
    let others = abs_a.iter().enumerate().filter(|&(i, _)| i != zero).map(|(_, &x)| x);
    let (hi, lo) = others.fold((f64::NEG_INFINITY, f64::INFINITY), |(h, l), x| (h.max(x), l.min(x)));
    if a0 > hi + tol {
        let mean = abs_a.iter().sum::<f64>() / abs_a.len() as f64;
        ((a0 - mean) / mean, Flag::Bunching)
    } else if a0 < lo - tol {
        (0.0, Flag::Antibunching)
    } else {
        (0.0, Flag::None)
    }
}

pub fn bunching_figure(state: &TwoExcitationState) -> (f64, Flag) {
    let abs_a: Vec<f64> = state.a.iter().map(|z| z.norm()).collect();
    bunching_from_profile(&abs_a, state.index_of(0))
}

/// Noninteracting two-polariton band windows at the K of `p`, taken over
/// the discrete relative grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BandEdges {
    pub ll: (f64, f64),
    /// LU and UL together.
    pub lu: (f64, f64),
    pub uu: (f64, f64),
}

impl BandEdges {
    pub fn new(p: &Params) -> Self {
        let kt = p.k_total();
        let mut ll = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut lu, mut uu) = (ll, ll);
        let upd = |w: &mut (f64, f64), e: f64| {
            w.0 = w.0.min(e);
            w.1 = w.1.max(e);
        };
        for k in p.relative_k() {
            upd(&mut ll, p.pair_energy(Species::Lower, Species::Lower, kt, k));
            upd(&mut lu, p.pair_energy(Species::Lower, Species::Upper, kt, k));
            upd(&mut uu, p.pair_energy(Species::Upper, Species::Upper, kt, k));
        }
        BandEdges { ll, lu, uu }
    }

    /// Width of the LL/LU gap; negative when the bands overlap.
    pub fn gap(&self) -> f64 {
        self.lu.0 - self.ll.1
    }

    pub fn in_gap(&self, e: f64) -> bool {
        e > self.ll.1 + EDGE_TOL && e < self.lu.0 - EDGE_TOL
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Band {
    Ll,
    Lu,
    Uu,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BandClass {
    /// Inside one or more continua; several when windows overlap.
    Continuum(Vec<Band>),
    /// Below the LL band or above the UU band.
    Bound,
    /// Between two continua.
    Gap,
}

impl fmt::Display for BandClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BandClass::Continuum(bs) => {
                let names: Vec<&str> = bs
                    .iter()
                    .map(|b| match b {
                        Band::Ll => "LL",
                        Band::Lu => "LU",
                        Band::Uu => "UU",
                    })
                    .collect();
                f.write_str(&names.join("+"))
            }
            BandClass::Bound => f.write_str("bound"),
            BandClass::Gap => f.write_str("gap"),
        }
    }
}

pub fn classify_energy(e: f64, edges: &BandEdges) -> BandClass {
    let inside = |w: (f64, f64)| e >= w.0 - EDGE_TOL && e <= w.1 + EDGE_TOL;
    let bands: Vec<Band> = [(Band::Ll, edges.ll), (Band::Lu, edges.lu), (Band::Uu, edges.uu)]
        .into_iter()
        .filter(|&(_, w)| inside(w))
        .map(|(b, _)| b)
        .collect();
    if !bands.is_empty() {
        BandClass::Continuum(bands)
    } else if e < edges.ll.0 || e > edges.uu.1 {
        BandClass::Bound
    } else {
        BandClass::Gap
    }
}

pub fn classify(energies: &[f64], p: &Params) -> Vec<BandClass> {
    let edges = BandEdges::new(p);
    energies.iter().map(|&e| classify_energy(e, &edges)).collect()
}

#[derive(Clone, Debug)]
pub struct ClassifiedState {
    pub index: usize,
    pub energy: f64,
    pub class: BandClass,
    pub w_aa: f64,
    pub w_ab: f64,
    pub w_cc: f64,
    pub delta_a: f64,
    pub flag: Flag,
}

/// A diagonalised K sector with every state classified and scored.
#[derive(Clone, Debug)]
pub struct SpectrumResult {
    pub k_index: i64,
    pub edges: BandEdges,
    pub states: Vec<ClassifiedState>,
    pub solution: FixedKSolution,
}

pub fn analyze(p: &Params) -> Result<SpectrumResult> {
    let solution = solve_fixed_k(p)?;
    Ok(analyze_solution(solution))
}

pub fn analyze_solution(solution: FixedKSolution) -> SpectrumResult {
    let p = &solution.params;
    let edges = BandEdges::new(p);
    let states = (0..solution.len())
        .map(|j| {
            let s = solution.state(j);
            let (delta_a, flag) = bunching_figure(&s);
            ClassifiedState {
                index: j,
                energy: s.energy,
                class: classify_energy(s.energy, &edges),
                w_aa: s.w_aa,
                w_ab: s.w_ab,
                w_cc: s.w_cc,
                delta_a,
                flag,
            }
        })
        .collect();
    SpectrumResult { k_index: p.k_total_index, edges, states, solution }
}

impl SpectrumResult {
    /// States at or below the LL band top, ascending.
    pub fn ll_states(&self) -> Vec<&ClassifiedState> {
        self.states.iter().filter(|s| s.energy <= self.edges.ll.1 + EDGE_TOL).collect()
    }

    pub fn gap_states(&self) -> Vec<&ClassifiedState> {
        self.states.iter().filter(|s| self.edges.in_gap(s.energy)).collect()
    }

    /// Lowest, middle and top LL states; the middle one is ρ = (N/2 − ℓ)/2.
    pub fn representative_ll_states(&self) -> Option<[&ClassifiedState; 3]> {
        let ll = self.ll_states();
        let p = &self.solution.params;
        let mid = ((p.n_sites / 2 - p.halfwidth()) / 2).max(1) - 1;
        (ll.len() > mid).then(|| [ll[0], ll[mid], ll[ll.len() - 1]])
    }

    /// Energy span of the bunched LL states, if any.
    pub fn bunching_window(&self) -> Option<(f64, f64)> {
        let e: Vec<f64> = self.ll_states().iter().filter(|s| s.flag == Flag::Bunching).map(|s| s.energy).collect();
        let lo = e.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = e.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        (!e.is_empty()).then_some((lo, hi))
    }
}

/// (A₀², B₀², C₀²) of the lowest eigenvector of the noninteracting K = 0
/// block at relative wave vector k.
pub fn component_weights(p: &Params, k: f64) -> Result<(f64, f64, f64)> {
    let ep = p.photon_energy(k);
    let ee = p.exciton_energy(k);
    let s = 2f64.sqrt() * p.coupling_g;
    let m = DMatrix::from_row_slice(3, 3, &[2.0 * ep, s, 0.0, s, ep + ee, s, 0.0, s, 2.0 * ee]);
    let e = eigh_real(&m)?;
    let w = |r: usize| e.vectors[(r, 0)].norm_sqr();
    Ok((w(0), w(1), w(2)))
}

/// |A(n)| centred on n = 0, the layout of the amplitude figures.
pub fn photon_profile(state: &TwoExcitationState) -> Vec<(i64, f64)> {
    state.n.iter().zip(&state.a).map(|(&n, z): (&i64, &C64)| (n, z.norm())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{derive_params, ParamsConfig};

    #[test]
    fn flat_profile_is_neutral() {
        assert_eq!(bunching_from_profile(&[0.3; 8], 3), (0.0, Flag::None));
        assert_eq!(bunching_from_profile(&[0.0; 8], 3), (0.0, Flag::None));
    }

    #[test]
    fn peak_and_dip() {
        let mut a = vec![1.0; 10];
        a[4] = 3.0;
        let (d, f) = bunching_from_profile(&a, 4);
        assert_eq!(f, Flag::Bunching);
        assert!((d - (3.0 - 1.2) / 1.2).abs() < 1e-14);
        a[4] = 0.5;
        assert_eq!(bunching_from_profile(&a, 4), (0.0, Flag::Antibunching));
        // A tie with another maximum is not bunching.
        a[4] = 2.0;
        a[7] = 2.0;
        assert_eq!(bunching_from_profile(&a, 4).1, Flag::None);
    }

    #[test]
    fn scale_and_phase_do_not_matter() {
        let p = derive_params(&ParamsConfig { n_sites: Some(30), blockade_cells: Some(2), ..Default::default() }).unwrap();
        let sol = solve_fixed_k(&p).unwrap();
        for j in [3, 10, 20] {
            let s = sol.state(j);
            let (d0, f0) = bunching_figure(&s);
            let mut t = s.clone();
            let ph = C64::from_polar(2.5, 0.7);
            t.a.iter_mut().for_each(|z| *z *= ph);
            let (d1, f1) = bunching_figure(&t);
            assert_eq!(f0, f1);
            assert!((d0 - d1).abs() < 1e-12 * (1.0 + d0));
        }
    }

    #[test]
    fn noninteracting_spectrum_has_no_bound_or_gap_states() {
        let p = derive_params(&ParamsConfig { n_sites: Some(30), hard_core: Some(false), ..Default::default() }).unwrap();
        for nu in [0, 3] {
            let r = analyze(&p.at_k(nu)).unwrap();
            assert!(r.states.iter().all(|s| matches!(s.class, BandClass::Continuum(_))));
        }
    }

    #[test]
    fn overlapping_windows_carry_every_label() {
        let p = derive_params(&ParamsConfig { n_sites: Some(30), detuning: Some(-0.5), ..Default::default() }).unwrap();
        let edges = BandEdges::new(&p);
        assert!(edges.gap() < 0.0);
        let e = 0.5 * (edges.lu.0 + edges.ll.1);
        assert_eq!(classify_energy(e, &edges), BandClass::Continuum(vec![Band::Ll, Band::Lu]));
        assert_eq!(classify_energy(e, &edges).to_string(), "LL+LU");
    }

    #[test]
    fn weights_at_resonance_and_far_out() {
        let p = derive_params(&ParamsConfig { detuning: Some(0.0), hop_t: Some(0.0), ..Default::default() }).unwrap();
        let (a, b, c) = component_weights(&p, 0.0).unwrap();
        assert!((a + b + c - 1.0).abs() < 1e-12);
        assert!((a - c).abs() < 1e-12);
        // Far outside the strong-coupling region the pair is mostly excitonic.
        let (_, _, c1) = component_weights(&p, 1.0).unwrap();
        let (_, _, c3) = component_weights(&p, 3.0).unwrap();
        assert!(c3 > 0.95 && c3 > c1);
    }
}

//! Bound two-polariton states: biexciton levels, the separable bipolariton
//! condition, an exact secular determinant, root search and gap states.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::analysis::{bunching_figure, BandEdges, Flag};
use crate::error::{Error, Result};
use crate::hamiltonian::{build_fixed_k, solve_fixed_k, Field, FixedKSolution, Sector};
use crate::linalg::{eigh, eigh_real};
use crate::model::{Params, PotentialKind};

/// |D| above which the split state is called strongly bound.
pub const STRONG_D: f64 = 1.5;
/// Scan resolution and bisection tolerance of the root search.
pub const SCAN_POINTS: usize = 1000;
pub const ROOT_TOL: f64 = 1e-10;
/// Largest root/eigenvalue distance still reported as a match.
pub const MATCH_TOL: f64 = 1e-6;

/// 2E₀ + D(n) for each allowed |n| with D(n) ≠ 0, ordered by |n|.
pub fn biexciton_levels(p: &Params) -> Result<Vec<f64>> {
    if p.potential_kind == PotentialKind::None {
        return Err(Error::config("potential_kind", "biexciton levels need a dynamical interaction"));
    }
    Ok(((p.halfwidth() as i64 + 1)..=(p.n_sites / 2) as i64)
        .map(|n| p.potential(n))
        .filter(|&d| d != 0.0)
        .map(|d| 2.0 * p.e0 + d)
        .collect())
}

/// Bare energies entering the elimination at relative k:
/// E_pp, Ē_pe, c = half the E_pe(k) − E_pe(−k) splitting, E_ee.
#[derive(Clone, Copy, Debug)]
pub struct PairChannel {
    pub e_pp: f64,
    pub e_pe_mean: f64,
    pub e_pe_half: f64,
    pub e_ee: f64,
}

impl PairChannel {
    pub fn new(p: &Params, k: f64) -> Self {
        let kt = p.k_total();
        let (q1, q2) = (p.wrap(0.5 * kt + k), p.wrap(0.5 * kt - k));
        let pe1 = p.photon_energy(q1) + p.exciton_energy(q2);
        let pe2 = p.photon_energy(q2) + p.exciton_energy(q1);
        PairChannel {
            e_pp: p.photon_energy(q1) + p.photon_energy(q2),
            e_pe_mean: 0.5 * (pe1 + pe2),
            e_pe_half: 0.5 * (pe1 - pe2),
            e_ee: p.exciton_energy(q1) + p.exciton_energy(q2),
        }
    }

    /// The unconstrained 4×4 block over (A, B(k), B(−k), C).
    pub fn block(&self, g: f64) -> DMatrix<f64> {
        let (ep, em) = (self.e_pe_mean + self.e_pe_half, self.e_pe_mean - self.e_pe_half);
        DMatrix::from_row_slice(4, 4, &[
            self.e_pp, g, g, 0.0,
            g, ep, 0.0, g,
            g, 0.0, em, g,
            0.0, g, g, self.e_ee,
        ])
    }
}

/// Δ_K(E, k): the (A, B, C) determinant with the photon-bearing amplitudes
/// eliminated, divided by E − Ē_pe. At K = 0 this is
/// (E − 2E_L)(E − E_L − E_U)(E − 2E_U).
pub fn delta_k(e: f64, k: f64, p: &Params) -> f64 {
    let ch = PairChannel::new(p, k);
    let g2 = p.coupling_g * p.coupling_g;
    let x = e - ch.e_pe_mean;
    let inner = if ch.e_pe_half == 0.0 {
        (e - ch.e_pp) * x - 2.0 * g2
    } else {
        ((e - ch.e_pp) * (x * x - ch.e_pe_half.powi(2)) - 2.0 * g2 * x) / x
    };
    (e - ch.e_ee) * inner - 2.0 * g2 * (e - ch.e_pp)
}

/// φ_K(E, k) = 2G²[E − E_pp]/Δ_K; `None` on a pole.
pub fn phi(e: f64, k: f64, p: &Params) -> Option<f64> {
    let d = delta_k(e, k, p);
    let ch = PairChannel::new(p, k);
    let v = 2.0 * p.coupling_g.powi(2) * (e - ch.e_pp) / d;
    (d != 0.0 && v.is_finite()).then_some(v)
}

/// Energies where some φ_K(·, k) diverges: eigenvalues of the 4×4 blocks.
pub fn pole_energies(p: &Params) -> Vec<f64> {
    let mut out = Vec::new();
    for k in p.relative_k() {
        if let Ok(e) = eigh_real(&PairChannel::new(p, k).block(p.coupling_g)) {
            out.extend(e.values);
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    out
}

/// Σ_k φ_K cos²(rk), Σ_k φ_K sin²(rk), Σ_k φ_K sin(rk) cos(rk) at the
/// reference separation r = 2ℓ+1.
#[derive(Clone, Copy, Debug)]
pub struct SeparableSums {
    pub cc: f64,
    pub ss: f64,
    pub sc: f64,
}

pub fn separable_sums(e: f64, p: &Params) -> Option<SeparableSums> {
    let r = p.reference_separation() as f64 * p.lattice_const;
    let mut out = SeparableSums { cc: 0.0, ss: 0.0, sc: 0.0 };
    for k in p.relative_k() {
        let f = phi(e, k, p)?;
        let (s, c) = (r * k).sin_cos();
        out.cc += f * c * c;
        out.ss += f * s * s;
        out.sc += f * s * c;
    }
    Some(out)
}

/// E − 2E₀ − D[1 + (2/N) Σ_k φ_K cos²(rk)]: the bracket carrying the
/// symmetric exciton-pair solution.
pub fn symmetric_bracket(e: f64, p: &Params) -> Option<f64> {
    let s = separable_sums(e, p)?;
    Some(e - 2.0 * p.e0 - p.d_strength * (1.0 + 2.0 / p.n_sites as f64 * s.cc))
}

/// Separable bipolariton condition with the interaction at the reference
/// separation r = 2ℓ+1, D(k) = 2D cos(rk). At K = 0 only the symmetric
/// bracket is returned; otherwise the full 2×2 determinant.
pub fn bipolariton_determinant(e: f64, p: &Params) -> Option<f64> {
    let s = separable_sums(e, p)?;
    let n = p.n_sites as f64;
    let d = p.d_strength;
    let sym = e - 2.0 * p.e0 - d * (1.0 + 2.0 / n * s.cc);
    if p.k_total_index == 0 {
        return Some(sym);
    }
    let asym = e - 2.0 * p.e0 - d * (1.0 + 2.0 / n * s.ss);
    Some(sym * asym - (2.0 * d / n * s.sc).powi(2))
}

/// Resolvent form of the exact condition: det[1 − V G₀(E)] over the
/// interacting exciton-pair separations, with G₀ the resolvent of the
/// constrained D = 0 problem at the same K.
pub struct SecularDeterminant {
    poles: Vec<f64>,
    /// Rows of the D = 0 eigenvectors on the interacting C basis vectors.
    rows: DMatrix<C64>,
    v: Vec<f64>,
}

impl SecularDeterminant {
    pub fn new(p: &Params) -> Result<Self> {
        let free = Params { potential_kind: PotentialKind::None, d_strength: 0.0, ..p.clone() };
        let (h0, basis) = build_fixed_k(&free);
        let eig = eigh(&h0)?;
        let mut picks = Vec::new();
        let mut v = Vec::new();
        for (i, bv) in basis.vectors.iter().enumerate() {
            if bv.sector == Sector::C {
                let m = bv.parts.iter().find(|x| x.0 == Field::C).map(|x| x.1).unwrap_or(bv.m);
                let d = p.potential(m);
                if d != 0.0 {
                    picks.push(i);
                    v.push(d);
                }
            }
        }
        let rows = DMatrix::from_fn(picks.len(), eig.len(), |r, c| eig.vectors[(picks[r], c)]);
        Ok(SecularDeterminant { poles: eig.values, rows, v })
    }

    pub fn poles(&self) -> &[f64] {
        &self.poles
    }

    pub fn eval(&self, e: f64) -> f64 {
        let m = self.v.len();
        if m == 0 {
            return 1.0;
        }
        let w: Vec<f64> = self.poles.iter().map(|l| 1.0 / (e - l)).collect();
        let mut a = DMatrix::<C64>::identity(m, m);
        for i in 0..m {
            for j in 0..m {
                let g: C64 = (0..w.len()).map(|c| self.rows[(i, c)] * self.rows[(j, c)].conj() * w[c]).sum();
                a[(i, j)] -= g * self.v[i];
            }
        }
        a.determinant().re
    }
}

/// Sign-change roots of `f` on [lo, hi]: a uniform scan refined by
/// bisection. Intervals are cut at `poles`; a bracket whose value grows
/// under bisection is a pole and is dropped.
pub fn scan_roots(f: impl Fn(f64) -> Option<f64>, lo: f64, hi: f64, poles: &[f64]) -> Vec<f64> {
    if hi.is_nan() || lo.is_nan() || hi <= lo {
        return Vec::new();
    }
    let mut cuts = vec![lo];
    cuts.extend(poles.iter().copied().filter(|&x| x > lo && x < hi));
    cuts.push(hi);
    let span = hi - lo;
    let mut roots = Vec::new();
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let pad = 1e-9 * span.max(1.0);
        let (a, b) = (if a > lo { a + pad } else { a }, if b < hi { b - pad } else { b });
        if b <= a {
            continue;
        }
        let steps = ((SCAN_POINTS as f64 * (b - a) / span).ceil() as usize).max(4);
        let xs: Vec<f64> = (0..=steps).map(|i| a + (b - a) * i as f64 / steps as f64).collect();
        let ys: Vec<Option<f64>> = xs.iter().map(|&x| f(x)).collect();
        for i in 0..steps {
            let (Some(y0), Some(y1)) = (ys[i], ys[i + 1]) else { continue };
            if y0 == 0.0 {
                roots.push(xs[i]);
                continue;
            }
            if y0.signum() == y1.signum() {
                continue;
            }
            if let Some(r) = bisect(&f, xs[i], xs[i + 1], y0, y1) {
                roots.push(r);
            }
        }
        if let Some(Some(0.0)) = ys.last() {
            roots.push(b);
        }
    }
    roots.dedup_by(|x, y| (*x - *y).abs() < 10.0 * ROOT_TOL);
    roots
}

fn bisect(f: &impl Fn(f64) -> Option<f64>, mut a: f64, mut b: f64, mut fa: f64, fb: f64) -> Option<f64> {
    let start = fa.abs().min(fb.abs());
    while b - a > ROOT_TOL {
        let m = 0.5 * (a + b);
        let fm = f(m)?;
        if fm == 0.0 {
            return Some(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    let m = 0.5 * (a + b);
    let fm = f(m)?;
    // Across a divergence |f| blows up instead of shrinking.
    (fm.abs() <= start.max(1e-300) * 10.0).then_some(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    StrongD,
    WeakD,
}

impl Regime {
    pub fn of(p: &Params) -> Self {
        if p.d_strength.abs() > STRONG_D * p.coupling_g {
            Regime::StrongD
        } else {
            Regime::WeakD
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::StrongD => "strong_D",
            Regime::WeakD => "weak_D",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    BelowLl,
    InGap,
    Other,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Location::BelowLl => "below_LL",
            Location::InGap => "in_gap",
            Location::Other => "other",
        })
    }
}

fn locate(e: f64, edges: &BandEdges) -> Location {
    if e < edges.ll.0 {
        Location::BelowLl
    } else if edges.in_gap(e) {
        Location::InGap
    } else {
        Location::Other
    }
}

/// Where to look for split states.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Window {
    /// From well below the biexciton level up to the LL band bottom.
    BelowLl,
    /// Strictly inside the LL/LU gap.
    Gap,
    Range(f64, f64),
}

impl Window {
    pub fn bounds(&self, p: &Params, edges: &BandEdges) -> (f64, f64) {
        match *self {
            Window::BelowLl => {
                let lo = edges.ll.0.min(2.0 * p.e0) - 2.0 * p.d_strength.abs() - 4.0 * p.coupling_g;
                (lo, edges.ll.0 - 1e-9)
            }
            Window::Gap => (edges.ll.1 + 1e-9, edges.lu.0 - 1e-9),
            Window::Range(a, b) => (a, b),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BoundState {
    /// Root of the separable condition.
    pub root_energy: f64,
    /// Nearest diagonalisation eigenvalue and its index.
    pub eig_energy: f64,
    pub eig_index: usize,
    pub match_residual: f64,
    pub matched: bool,
    pub location: Location,
    pub delta_a: f64,
    pub flag: Flag,
    /// |A(n)| and |C(n)| of the matched eigenstate over n = −N/2+1 … N/2.
    pub photon_profile: Vec<f64>,
    pub exciton_profile: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct BoundStateReport {
    pub k_index: i64,
    pub d_strength: f64,
    pub ell: usize,
    pub regime: Regime,
    pub window: (f64, f64),
    pub states: Vec<BoundState>,
    /// Roots of the exact secular determinant in the same window.
    pub exact_roots: Vec<f64>,
    /// Diagonalisation eigenvalues in the window.
    pub eigenvalues: Vec<f64>,
}

impl BoundStateReport {
    /// Distance of the strong-coupling asymptote 2E₀ − |D| from the lowest root.
    pub fn asymptote_gap(&self, p: &Params) -> Option<f64> {
        self.states.first().map(|s| s.root_energy - (2.0 * p.e0 - p.d_strength.abs()))
    }
}

pub fn find_bipolariton(p: &Params, window: Window) -> Result<BoundStateReport> {
    let sol = solve_fixed_k(p)?;
    find_bipolariton_with(p, window, &sol)
}

pub fn find_bipolariton_with(p: &Params, window: Window, sol: &FixedKSolution) -> Result<BoundStateReport> {
    let edges = BandEdges::new(p);
    let (lo, hi) = window.bounds(p, &edges);
    let poles = pole_energies(p);
    // φ_K is even in k at every K, so the cross sum vanishes and the
    // determinant factorises; the antisymmetric factor has no bosonic state.
    let roots = scan_roots(|e| symmetric_bracket(e, p), lo, hi, &poles);
    let sec = SecularDeterminant::new(p)?;
    let exact_roots = scan_roots(|e| Some(sec.eval(e)), lo, hi, sec.poles());
    let eigs = sol.energies();
    let eigenvalues: Vec<f64> = eigs.iter().copied().filter(|&e| e >= lo && e <= hi).collect();
    let mut states = Vec::new();
    for r in roots {
        let (idx, eig) = eigs
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - r).abs().total_cmp(&(b.1 - r).abs()))
            .map(|(i, &e)| (i, e))
            .ok_or_else(|| Error::Numeric("empty spectrum".into()))?;
        let st = sol.state(idx);
        let (delta_a, flag) = bunching_figure(&st);
        let residual = (r - eig).abs();
        states.push(BoundState {
            root_energy: r,
            eig_energy: eig,
            eig_index: idx,
            match_residual: residual,
            matched: residual <= MATCH_TOL * p.coupling_g,
            location: locate(r, &edges),
            delta_a,
            flag,
            photon_profile: st.a.iter().map(|z| z.norm()).collect(),
            exciton_profile: st.c.iter().map(|z| z.norm()).collect(),
        });
    }
    Ok(BoundStateReport {
        k_index: p.k_total_index,
        d_strength: p.d_strength,
        ell: p.blockade_cells,
        regime: Regime::of(p),
        window: (lo, hi),
        states,
        exact_roots,
        eigenvalues,
    })
}

#[derive(Clone, Debug)]
pub struct GapState {
    pub index: usize,
    pub energy: f64,
    /// Distance below the LU band bottom.
    pub splitting: f64,
    pub delta_a: f64,
    pub flag: Flag,
    /// Produced by the exclusion constraint alone (D = 0).
    pub kinematic: bool,
    pub photon_profile: Vec<f64>,
}

/// Eigenstates strictly between the LL band top and the LU band bottom.
pub fn detect_gap_states(sol: &FixedKSolution) -> Vec<GapState> {
    let p = &sol.params;
    let edges = BandEdges::new(p);
    let kinematic = p.d_strength == 0.0 || p.potential_kind == PotentialKind::None;
    (0..sol.len())
        .filter(|&j| edges.in_gap(sol.energies()[j]))
        .map(|j| {
            let st = sol.state(j);
            let (delta_a, flag) = bunching_figure(&st);
            GapState {
                index: j,
                energy: st.energy,
                splitting: edges.lu.0 - st.energy,
                delta_a,
                flag,
                kinematic,
                photon_profile: st.a.iter().map(|z| z.norm()).collect(),
            }
        })
        .collect()
}

/// Largest distance of a gap state below the LU band bottom; 0 if none.
pub fn gap_splitting(states: &[GapState]) -> f64 {
    states.iter().map(|s| s.splitting).fold(0.0, f64::max)
}

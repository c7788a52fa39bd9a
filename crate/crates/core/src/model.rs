//! Physical parameters, dispersions and wave-vector grids.
//!
//! Units: hbar = 1, energies in units of the collective coupling G, lengths in
//! units of the lattice constant a (both default to 1).

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PotentialKind {
    #[default]
    None,
    /// Single shell at separation 2*ell + 1.
    Nna,
    /// D * ((2*ell + 1)/|n|)^6 on allowed separations.
    Vdw,
}

impl FromStr for PotentialKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "none" => Ok(Self::None),
            "nna" => Ok(Self::Nna),
            "vdw" => Ok(Self::Vdw),
            other => Err(Error::config("potential_kind", format!("unknown potential '{other}'"))),
        }
    }
}

impl fmt::Display for PotentialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::None => "none",
            Self::Nna => "nna",
            Self::Vdw => "vdw",
        })
    }
}

/// Single-particle species and polariton branches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Species {
    Photon,
    Exciton,
    Lower,
    Upper,
}

/// Raw scenario values; anything left out takes the default.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ParamsConfig {
    pub n_sites: Option<usize>,
    pub lattice_const: Option<f64>,
    pub e0: Option<f64>,
    pub hop_t: Option<f64>,
    pub coupling_g: Option<f64>,
    pub detuning: Option<f64>,
    /// Defaults to the value placing a*k_SC at pi/2.
    pub c_hbar: Option<f64>,
    pub blockade_cells: Option<usize>,
    pub exclusion_halfwidth: Option<usize>,
    pub hard_core: Option<bool>,
    pub d_strength: Option<f64>,
    pub potential_kind: Option<PotentialKind>,
    pub k_total_index: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub n_sites: usize,
    pub lattice_const: f64,
    pub e0: f64,
    pub hop_t: f64,
    pub coupling_g: f64,
    pub detuning: f64,
    pub c_hbar: f64,
    /// ell = r_B / a
    pub blockade_cells: usize,
    /// Excluded half-width of the exciton-pair mask; `None` means ell.
    pub exclusion_halfwidth: Option<usize>,
    /// With `false` the pair mask is switched off entirely and excitons
    /// behave as bosons (noninteracting limit).
    pub hard_core: bool,
    pub d_strength: f64,
    pub potential_kind: PotentialKind,
    pub k_total_index: i64,
}

pub const DEFAULT_N: usize = 100;
pub const DEFAULT_E0: f64 = 1000.0;
pub const DEFAULT_DELTA: f64 = 0.1;
pub const DEFAULT_T: f64 = 0.01;

/// cħ that puts a·k_SC at π/2.
pub fn default_c_hbar(e0: f64, g: f64, a: f64) -> f64 {
    4.0 * a * (e0 * g).sqrt() / PI
}

impl Default for Params {
    fn default() -> Self {
        derive_params(&ParamsConfig::default()).expect("defaults are valid")
    }
}

/// Fill defaults and validate.
pub fn derive_params(cfg: &ParamsConfig) -> Result<Params> {
    let a = cfg.lattice_const.unwrap_or(1.0);
    let e0 = cfg.e0.unwrap_or(DEFAULT_E0);
    let g = cfg.coupling_g.unwrap_or(1.0);
    let p = Params {
        n_sites: cfg.n_sites.unwrap_or(DEFAULT_N),
        lattice_const: a,
        e0,
        hop_t: cfg.hop_t.unwrap_or(DEFAULT_T),
        coupling_g: g,
        detuning: cfg.detuning.unwrap_or(DEFAULT_DELTA),
        c_hbar: cfg.c_hbar.unwrap_or_else(|| default_c_hbar(e0, g.max(0.0), a)),
        blockade_cells: cfg.blockade_cells.unwrap_or(0),
        exclusion_halfwidth: cfg.exclusion_halfwidth,
        hard_core: cfg.hard_core.unwrap_or(true),
        d_strength: cfg.d_strength.unwrap_or(0.0),
        potential_kind: cfg.potential_kind.unwrap_or_default(),
        k_total_index: cfg.k_total_index.unwrap_or(0),
    };
    p.validate()?;
    Ok(p)
}

impl Params {
    pub fn validate(&self) -> Result<()> {
        let n = self.n_sites;
        if !n.is_multiple_of(2) {
            return Err(Error::config("n_sites", "n_sites must be even"));
        }
        if n < 8 {
            return Err(Error::config("n_sites", "n_sites must be at least 8"));
        }
        if n < 2 * self.halfwidth() + 4 {
            return Err(Error::config(
                "blockade_cells",
                format!("N − 2ℓ ≥ 4 violated (N={n}, ℓ={})", self.halfwidth()),
            ));
        }
        if self.coupling_g.is_nan() || self.coupling_g <= 0.0 {
            return Err(Error::config("coupling_g", "must be positive"));
        }
        if self.c_hbar.is_nan() || self.c_hbar <= 0.0 {
            return Err(Error::config("c_hbar", "must be positive"));
        }
        if self.lattice_const.is_nan() || self.lattice_const <= 0.0 {
            return Err(Error::config("lattice_const", "must be positive"));
        }
        if self.q_perp().is_nan() || self.q_perp() <= 0.0 {
            return Err(Error::config("detuning", "q_perp = (e0 + detuning)/c_hbar must be positive"));
        }
        for (name, v) in [("e0", self.e0), ("hop_t", self.hop_t), ("d_strength", self.d_strength)] {
            if !v.is_finite() {
                return Err(Error::config(name, "must be finite"));
            }
        }
        if self.k_total_index.unsigned_abs() as usize > n {
            return Err(Error::config("k_total_index", format!("|ν′| must not exceed N={n}")));
        }
        Ok(())
    }

    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if self.hop_t.abs() > 0.1 * self.coupling_g {
            w.push(format!(
                "hop_t = {} exceeds 0.1·G; the virtual-polariton reduction assumes t ≪ G",
                self.hop_t
            ));
        }
        w
    }

    /// Copy with a different total-momentum index.
    pub fn at_k(&self, k_index: i64) -> Params {
        Params { k_total_index: k_index, ..self.clone() }
    }

    pub fn n(&self) -> usize {
        self.n_sites
    }

    pub fn ell(&self) -> usize {
        self.blockade_cells
    }

    /// Half-width of the excluded exciton-pair window.
    pub fn halfwidth(&self) -> usize {
        self.exclusion_halfwidth.unwrap_or(self.blockade_cells)
    }

    pub fn q_perp(&self) -> f64 {
        (self.e0 + self.detuning) / self.c_hbar
    }

    /// Single-atom coupling g = G/√N.
    pub fn g_single(&self) -> f64 {
        self.coupling_g / (self.n_sites as f64).sqrt()
    }

    /// Total momentum K = 2πν′/(Na).
    pub fn k_total(&self) -> f64 {
        2.0 * PI * self.k_total_index as f64 / (self.n_sites as f64 * self.lattice_const)
    }

    /// Wrap into the first Brillouin zone (−π/a, π/a].
    pub fn wrap(&self, k: f64) -> f64 {
        let a = self.lattice_const;
        let p = 2.0 * PI / a;
        let mut x = (k + PI / a).rem_euclid(p) - PI / a;
        if x <= -PI / a + 1e-14 / a {
            x += p;
        }
        x
    }

    pub fn photon_energy(&self, k: f64) -> f64 {
        let k = self.wrap(k);
        self.c_hbar * (k * k + self.q_perp().powi(2)).sqrt()
    }

    pub fn exciton_energy(&self, k: f64) -> f64 {
        self.e0 + 2.0 * self.hop_t * (self.lattice_const * k).cos()
    }

    /// Lower and upper polariton energies.
    pub fn branches(&self, k: f64) -> (f64, f64) {
        let ee = self.exciton_energy(k);
        let ep = self.photon_energy(k);
        let r = ((ee - ep).powi(2) + 4.0 * self.coupling_g.powi(2)).sqrt();
        (0.5 * (ee + ep - r), 0.5 * (ee + ep + r))
    }

    pub fn energy(&self, s: Species, k: f64) -> f64 {
        match s {
            Species::Photon => self.photon_energy(k),
            Species::Exciton => self.exciton_energy(k),
            Species::Lower => self.branches(k).0,
            Species::Upper => self.branches(k).1,
        }
    }

    /// E_i(K/2 + k) + E_j(K/2 − k).
    pub fn pair_energy(&self, i: Species, j: Species, k_tot: f64, k: f64) -> f64 {
        self.energy(i, self.wrap(0.5 * k_tot + k)) + self.energy(j, self.wrap(0.5 * k_tot - k))
    }

    pub fn strong_coupling_edge(&self) -> f64 {
        2.0 * (self.e0 * self.coupling_g).sqrt() / self.c_hbar
    }

    /// Free grid indices ν = −N/2+1 … N/2.
    pub fn nu_range(&self) -> std::ops::RangeInclusive<i64> {
        let h = (self.n_sites / 2) as i64;
        (-h + 1)..=h
    }

    pub fn k_of(&self, nu: f64) -> f64 {
        2.0 * PI * nu / (self.n_sites as f64 * self.lattice_const)
    }

    /// Relative wave vectors at the current K: q1 = K/2 + k sits on the free
    /// grid, so k is shifted by half a step when ν′ is odd.
    pub fn relative_k(&self) -> Vec<f64> {
        let shift = 0.5 * self.k_total_index as f64;
        self.nu_range().map(|nu| self.k_of(nu as f64 - shift)).collect()
    }

    /// Minimal-image separation in (−N/2, N/2].
    pub fn min_image(&self, n: i64) -> i64 {
        min_image(n, self.n_sites)
    }

    /// 1 when the exciton pair at separation n is excluded.
    pub fn blockade_mask(&self, n: i64) -> u8 {
        (self.hard_core && self.min_image(n).unsigned_abs() as usize <= self.halfwidth()) as u8
    }

    /// Reference separation 2ℓ + 1 of the dynamical interaction.
    pub fn reference_separation(&self) -> usize {
        2 * self.blockade_cells + 1
    }

    /// Dynamical interaction D(n); zero on excluded separations.
    pub fn potential(&self, n: i64) -> f64 {
        if self.blockade_mask(n) == 1 {
            return 0.0;
        }
        let m = self.min_image(n).unsigned_abs() as usize;
        let r = self.reference_separation();
        match self.potential_kind {
            PotentialKind::None => 0.0,
            PotentialKind::Nna => {
                if m == r {
                    self.d_strength
                } else {
                    0.0
                }
            }
            PotentialKind::Vdw => {
                if m == 0 {
                    0.0
                } else {
                    self.d_strength * (r as f64 / m as f64).powi(6)
                }
            }
        }
    }
}

pub fn min_image(n: i64, n_sites: usize) -> i64 {
    let nn = n_sites as i64;
    let mut m = n.rem_euclid(nn);
    if m > nn / 2 {
        m -= nn;
    }
    m
}

/// Free grid k_ν and the reduced blockade grid κ_μ.
#[derive(Clone, Debug)]
pub struct WaveGrid {
    pub free_k: Vec<f64>,
    /// (μ, κ_μ) over signed half-odd μ.
    pub reduced_k: Vec<(f64, f64)>,
}

impl WaveGrid {
    pub fn new(p: &Params) -> Self {
        WaveGrid {
            free_k: p.nu_range().map(|nu| p.k_of(nu as f64)).collect(),
            reduced_k: crate::blockade::reduced_grid(p),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_derive_q_perp() {
        let p = Params::default();
        assert!((p.c_hbar - 40.26).abs() < 0.01);
        assert!((p.q_perp() - 1000.1 / p.c_hbar).abs() < 1e-12 && (p.q_perp() - 24.84).abs() < 0.01);
        assert!((p.strong_coupling_edge() - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn invariant_violations_name_the_field() {
        let e = derive_params(&ParamsConfig { n_sites: Some(7), ..Default::default() }).unwrap_err();
        assert!(e.to_string().contains("n_sites must be even"));
        let e = derive_params(&ParamsConfig { blockade_cells: Some(49), ..Default::default() })
            .unwrap_err();
        assert!(e.to_string().contains("N − 2ℓ ≥ 4 violated"));
        assert!(derive_params(&ParamsConfig { coupling_g: Some(0.0), ..Default::default() }).is_err());
        assert!(derive_params(&ParamsConfig { k_total_index: Some(101), ..Default::default() }).is_err());
    }

    #[test]
    fn dispersions() {
        let p = Params::default();
        assert!((p.photon_energy(0.0) - 1000.1).abs() < 1e-10);
        assert!((p.photon_energy(PI) - 1008.0).abs() < 0.5);
        assert!((p.exciton_energy(0.0) - 1000.02).abs() < 1e-12);
        assert!((p.exciton_energy(PI / 2.0) - 1000.0).abs() < 1e-12);
        let flat = Params { hop_t: 0.0, ..Params::default() };
        assert_eq!(flat.exciton_energy(1.234), 1000.0);
    }

    #[test]
    fn resonance_splitting_is_2g() {
        // δ = 0, t = 0: resonance at k = 0.
        let p = derive_params(&ParamsConfig { detuning: Some(0.0), hop_t: Some(0.0), ..Default::default() })
            .unwrap();
        let (l, u) = p.branches(0.0);
        assert!((u - l - 2.0).abs() < 1e-12);
    }

    #[test]
    fn wrap_lands_in_zone() {
        let p = Params::default();
        assert!((p.wrap(PI) - PI).abs() < 1e-15);
        assert!((p.wrap(-PI) - PI).abs() < 1e-12);
        assert!((p.wrap(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn pair_energy_minimum_at_half_k() {
        let p = Params::default().at_k(4);
        let kt = p.k_total();
        let ks = p.relative_k();
        let (mut best, mut arg) = (f64::INFINITY, 0.0);
        for &k in &ks {
            let e = p.pair_energy(Species::Lower, Species::Lower, kt, k);
            if e < best {
                best = e;
                arg = k;
            }
        }
        // Both partners at K/2.
        assert!(arg.abs() < 1e-12 && kt > 0.0);
    }

    #[test]
    fn mask_and_potential() {
        let p = derive_params(&ParamsConfig { blockade_cells: Some(3), ..Default::default() }).unwrap();
        assert_eq!(p.blockade_mask(3), 1);
        assert_eq!(p.blockade_mask(-3), 1);
        assert_eq!(p.blockade_mask(4), 0);
        assert_eq!(p.blockade_mask(98), 1);
        let v = Params { potential_kind: PotentialKind::Vdw, d_strength: 2.0, blockade_cells: 0, ..Params::default() };
        assert_eq!(v.potential(1), 2.0);
        assert!((v.potential(2) - 2.0 / 64.0).abs() < 1e-15);
        assert_eq!(v.potential(0), 0.0);
        let nna = Params { potential_kind: PotentialKind::Nna, d_strength: -1.0, blockade_cells: 2, ..Params::default() };
        assert_eq!(nna.potential(5), -1.0);
        assert_eq!(nna.potential(-5), -1.0);
        assert_eq!(nna.potential(6), 0.0);
        let vdw3 = Params { potential_kind: PotentialKind::Vdw, d_strength: 1.5, blockade_cells: 3, ..Params::default() };
        assert_eq!(vdw3.potential(7), 1.5);
    }

    #[test]
    fn natural_solid_regime() {
        // Semiconductor-like numbers: E0 ~ 1.5 eV, G ~ 5 meV, a ~ 0.5 nm,
        // cħ ~ 200 eV·nm (energies in G, lengths in a).
        let e0 = 1500.0 / 5.0;
        let c_hbar = 200e3 / 5.0 / 0.5;
        let p = derive_params(&ParamsConfig { e0: Some(e0), c_hbar: Some(c_hbar), ..Default::default() })
            .unwrap();
        let aks = p.strong_coupling_edge();
        assert!(aks > 1e-5 && aks < 1e-3, "{aks}");
    }
}

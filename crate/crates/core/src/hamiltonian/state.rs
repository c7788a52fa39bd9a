//! One eigenstate unpacked into amplitude profiles.

use num_complex::Complex64 as C64;

use super::basis::{Field, FixedKBasis, Sector};
use crate::blockade::separations;
use crate::model::Params;

#[derive(Clone, Debug)]
pub struct TwoExcitationState {
    pub energy: f64,
    pub k_index: i64,
    /// Separations n = −N/2+1 … N/2; all profiles are indexed alike.
    pub n: Vec<i64>,
    pub a: Vec<C64>,
    pub b_s: Vec<C64>,
    pub b_a: Vec<C64>,
    pub c: Vec<C64>,
    /// Relative wave vectors of the k-space views.
    pub k: Vec<f64>,
    pub a_k: Vec<C64>,
    pub b_k: Vec<C64>,
    pub c_k: Vec<C64>,
    pub w_aa: f64,
    pub w_ab: f64,
    pub w_cc: f64,
}

fn norm2(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// (1/√N) Σ_n f(n) e^{−ikn}.
pub fn to_kspace(f: &[C64], n: &[i64], k: &[f64]) -> Vec<C64> {
    let s = 1.0 / (n.len() as f64).sqrt();
    k.iter()
        .map(|&kk| n.iter().zip(f).map(|(&m, &x)| x * C64::from_polar(s, -kk * m as f64)).sum())
        .collect()
}

/// (1/√N) Σ_k f(k) e^{ikn}.
pub fn from_kspace(f: &[C64], n: &[i64], k: &[f64]) -> Vec<C64> {
    let s = 1.0 / (n.len() as f64).sqrt();
    n.iter()
        .map(|&m| k.iter().zip(f).map(|(&kk, &x)| x * C64::from_polar(s, kk * m as f64)).sum())
        .collect()
}

impl TwoExcitationState {
    /// Unpack a reduced-basis eigenvector.
    pub fn from_vector(energy: f64, v: &[C64], basis: &FixedKBasis, p: &Params) -> Self {
        let nn = basis.n_sites;
        let half = (nn / 2) as i64;
        let n = separations(nn);
        let idx = |m: i64| (m + half - 1) as usize;
        let z = vec![C64::new(0.0, 0.0); nn];
        let (mut a, mut b_s, mut b_a, mut c) = (z.clone(), z.clone(), z.clone(), z);
        for (coef, bv) in v.iter().zip(&basis.vectors) {
            for &(f, m, w) in &bv.parts {
                let target = match (f, bv.sector) {
                    (Field::A, _) => &mut a,
                    (Field::C, _) => &mut c,
                    (Field::B, Sector::BA) => &mut b_a,
                    (Field::B, _) => &mut b_s,
                };
                target[idx(m)] += coef * w;
            }
        }
        let b: Vec<C64> = b_s.iter().zip(&b_a).map(|(x, y)| x + y).collect();
        // Momentum views use the atom-lattice phase k·a·n.
        let k: Vec<f64> = p.relative_k();
        let ka: Vec<f64> = k.iter().map(|x| x * p.lattice_const).collect();
        let w_aa = norm2(&a);
        let w_ab = norm2(&b);
        let w_cc = norm2(&c);
        TwoExcitationState {
            energy,
            k_index: basis.k_index,
            a_k: to_kspace(&a, &n, &ka),
            b_k: to_kspace(&b, &n, &ka),
            c_k: to_kspace(&c, &n, &ka),
            n,
            a,
            b_s,
            b_a,
            c,
            k,
            w_aa,
            w_ab,
            w_cc,
        }
    }

    pub fn b(&self) -> Vec<C64> {
        self.b_s.iter().zip(&self.b_a).map(|(x, y)| x + y).collect()
    }

    pub fn index_of(&self, n: i64) -> usize {
        (crate::model::min_image(n, self.n.len()) + (self.n.len() / 2) as i64 - 1) as usize
    }

    /// X(n) − ⟨X⟩ with ⟨X⟩ = Σ_n X(n)/N.
    pub fn centered(profile: &[C64]) -> Vec<C64> {
        let mean: C64 = profile.iter().sum::<C64>() / profile.len() as f64;
        profile.iter().map(|x| x - mean).collect()
    }

    /// Checks the weight sum, the blockade zeros and the parities; returns
    /// the first violation.
    pub fn check_invariants(&self, p: &Params, tol: f64) -> Result<(), String> {
        let s = self.w_aa + self.w_ab + self.w_cc;
        if (s - 1.0).abs() > tol {
            return Err(format!("weights sum to {s}"));
        }
        for (i, &m) in self.n.iter().enumerate() {
            if p.blockade_mask(m) == 1 && self.c[i].norm() != 0.0 {
                return Err(format!("C({m}) = {} inside the blockade", self.c[i]));
            }
        }
        let odd_k = self.k_index.rem_euclid(2) == 1;
        let nn = self.n.len() as i64;
        for (i, &m) in self.n.iter().enumerate() {
            // −m folded back onto the grid picks up the twist once per winding.
            let mirror = if m == nn / 2 { m } else { -m };
            let tw = if odd_k && m == nn / 2 { -1.0 } else { 1.0 };
            let j = self.index_of(mirror);
            for (name, f, sign) in [("A", &self.a, 1.0), ("C", &self.c, 1.0), ("B_S", &self.b_s, 1.0), ("B_A", &self.b_a, -1.0)] {
                let d = (f[i] - f[j] * (sign * tw)).norm();
                if d > tol {
                    return Err(format!("{name} parity broken at n = {m}: {d:e}"));
                }
            }
        }
        Ok(())
    }
}

//! Two-excitation Hamiltonian at fixed total momentum, in the symmetric
//! gauge on relative separations n ∈ (−N/2, N/2].

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::basis::{Field, FixedKBasis};
use crate::model::Params;

/// Photon hopping kernel E_p(d) = (1/N) Σ_q E_p(q) e^{iqd}, d = 0 … N−1.
pub fn photon_kernel(p: &Params) -> Vec<f64> {
    let n = p.n_sites;
    let eq: Vec<(f64, f64)> = p
        .nu_range()
        .map(|nu| {
            let k = p.k_of(nu as f64);
            (k * p.lattice_const, p.photon_energy(k))
        })
        .collect();
    (0..n)
        .map(|d| eq.iter().map(|&(qa, e)| e * (qa * d as f64).cos()).sum::<f64>() / n as f64)
        .collect()
}

/// Fold into (−N/2, N/2]; also returns the number of ring windings removed.
pub(crate) fn fold(mut n: i64, n_sites: usize) -> (i64, i64) {
    let nn = n_sites as i64;
    let mut w = 0;
    while n > nn / 2 {
        n -= nn;
        w += 1;
    }
    while n <= -nn / 2 {
        n += nn;
        w -= 1;
    }
    (n, w)
}

/// Hamiltonian on the full grid of A(n), B(n), C(n) (3N × 3N). Only its
/// restriction to the parity-adapted basis is physical.
pub fn build_full(p: &Params) -> DMatrix<C64> {
    let n = p.n_sites;
    let half = (n / 2) as i64;
    let kt = 2.0 * PI * p.k_total_index as f64 / n as f64;
    let tw = |w: i64| if p.k_total_index.rem_euclid(2) == 1 && w.rem_euclid(2) == 1 { -1.0 } else { 1.0 };
    let kern = photon_kernel(p);
    let ek = |d: i64| kern[d.rem_euclid(n as i64) as usize];
    let idx = |m: i64| (m + half - 1) as usize;
    let ns: Vec<i64> = ((-half + 1)..=half).collect();
    let (oa, ob, oc) = (Field::A.offset(n), Field::B.offset(n), Field::C.offset(n));
    let mut h = DMatrix::<C64>::zeros(3 * n, 3 * n);
    let g2 = p.coupling_g * std::f64::consts::SQRT_2 / 2.0;

    for &nr in &ns {
        for &nc in &ns {
            let d = nr - nc;
            let (i, j) = (idx(nr), idx(nc));
            h[(oa + i, oa + j)] = C64::new(ek(d) * 2.0 * (kt * d as f64 / 2.0).cos(), 0.0);
            h[(ob + i, ob + j)] = ek(d) * C64::from_polar(1.0, -kt * d as f64 / 2.0);
        }
    }
    for &nc in &ns {
        let j = idx(nc);
        h[(ob + j, ob + j)] += p.e0;
        for dl in [1i64, -1] {
            // Exciton moves by dl, so n = x_photon − x_exciton drops by dl.
            let (tf, _) = fold(nc - dl, n);
            let phase = -kt * dl as f64 + kt * (nc - tf) as f64 / 2.0;
            h[(ob + idx(tf), ob + j)] += C64::from_polar(p.hop_t, phase);
        }
        h[(oc + j, oc + j)] += 2.0 * p.e0 + p.potential(nc);
        for dl in [1i64, -1] {
            let (tf, w) = fold(nc + dl, n);
            h[(oc + idx(tf), oc + j)] += 2.0 * p.hop_t * (kt / 2.0).cos() * tw(w);
        }
        // Photon ↔ exciton conversion couples B to the even parts of A and C.
        let (mf, w) = fold(-nc, n);
        for (row, val) in [(j, g2), (idx(mf), g2 * tw(w))] {
            for off in [oa, oc] {
                h[(off + row, ob + j)] += val;
                h[(ob + j, off + row)] += val;
            }
        }
    }
    h
}

/// Restriction of the full-grid operator to the parity-adapted basis.
pub fn project(full: &DMatrix<C64>, basis: &FixedKBasis) -> DMatrix<C64> {
    let n = basis.n_sites;
    let half = (n / 2) as i64;
    let pos = |f: Field, m: i64| f.offset(n) + (m + half - 1) as usize;
    let dim = basis.dim();
    let mut h = DMatrix::<C64>::zeros(dim, dim);
    for (i, vi) in basis.vectors.iter().enumerate() {
        for (j, vj) in basis.vectors.iter().enumerate().skip(i) {
            let mut s = C64::new(0.0, 0.0);
            for &(fa, na, ca) in &vi.parts {
                for &(fb, nb, cb) in &vj.parts {
                    s += full[(pos(fa, na), pos(fb, nb))] * (ca * cb);
                }
            }
            h[(i, j)] = s;
            h[(j, i)] = s.conj();
        }
    }
    h
}

/// Hermitian matrix over the parity-adapted basis at K = 2πν′/(Na).
pub fn build_fixed_k(p: &Params) -> (DMatrix<C64>, FixedKBasis) {
    let basis = FixedKBasis::new(p);
    (project(&build_full(p), &basis), basis)
}

/// Columns of U mapping reduced coefficients onto the full grid.
pub fn embedding(basis: &FixedKBasis) -> DMatrix<f64> {
    let n = basis.n_sites;
    let half = (n / 2) as i64;
    let mut u = DMatrix::<f64>::zeros(3 * n, basis.dim());
    for (j, v) in basis.vectors.iter().enumerate() {
        for &(f, m, c) in &v.parts {
            u[(f.offset(n) + (m + half - 1) as usize, j)] += c;
        }
    }
    u
}

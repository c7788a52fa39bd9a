//! Small-N real-space oracle: the full two-excitation Hamiltonian on site
//! pairs, with no use of translation symmetry.

use std::collections::HashMap;

use nalgebra::DMatrix;

use super::fixed_k::photon_kernel;
use crate::error::{Error, Result};
use crate::model::Params;

pub const MAX_ORACLE_SITES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairState {
    /// Two photons at sites x ≤ y.
    PhotonPhoton(usize, usize),
    /// Photon at x, exciton at y.
    PhotonExciton(usize, usize),
    /// Two excitons at x ≤ y (x < y with the hard-core mask).
    ExcitonExciton(usize, usize),
}

#[derive(Clone, Debug)]
pub struct RealSpace {
    pub matrix: DMatrix<f64>,
    pub states: Vec<PairState>,
}

pub fn build_real_space(p: &Params) -> Result<RealSpace> {
    let n = p.n_sites;
    if n > MAX_ORACLE_SITES {
        return Err(Error::config(
            "n_sites",
            format!("real-space oracle refuses N = {n} (limit {MAX_ORACLE_SITES})"),
        ));
    }
    let dist = |a: usize, b: usize| {
        let d = (a as i64 - b as i64).rem_euclid(n as i64) as usize;
        d.min(n - d)
    };
    let mut states = Vec::new();
    for x in 0..n {
        for y in x..n {
            states.push(PairState::PhotonPhoton(x, y));
        }
    }
    for x in 0..n {
        for y in 0..n {
            states.push(PairState::PhotonExciton(x, y));
        }
    }
    for x in 0..n {
        let y0 = if p.hard_core { x + 1 } else { x };
        for y in y0..n {
            if p.hard_core && dist(x, y) <= p.halfwidth() {
                continue;
            }
            states.push(PairState::ExcitonExciton(x, y));
        }
    }
    let index: HashMap<PairState, usize> = states.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let pp = |a: usize, b: usize| index.get(&PairState::PhotonPhoton(a.min(b), a.max(b))).copied();
    let ee = |a: usize, b: usize| index.get(&PairState::ExcitonExciton(a.min(b), a.max(b))).copied();
    let pe = |a: usize, b: usize| index[&PairState::PhotonExciton(a, b)];
    let kern = photon_kernel(p);
    let hop = |from: usize, to: usize| kern[(to as i64 - from as i64).rem_euclid(n as i64) as usize];
    let g = p.coupling_g;
    let occ = |a: usize, b: usize, x: usize| ((a == x) as u8 + (b == x) as u8) as f64;

    let dim = states.len();
    let mut h = DMatrix::<f64>::zeros(dim, dim);
    for (i, s) in states.iter().enumerate() {
        match *s {
            PairState::PhotonPhoton(a, b) => {
                let sources = if a == b { vec![a] } else { vec![a, b] };
                for src in sources {
                    let rest = if src == a { b } else { a };
                    let amp = occ(a, b, src).sqrt();
                    for y in 0..n {
                        let j = pp(y, rest).unwrap();
                        h[(j, i)] += hop(src, y) * amp * (1.0 + (y == rest) as u8 as f64).sqrt();
                    }
                    h[(pe(rest, src), i)] += g * amp;
                }
            }
            PairState::PhotonExciton(xp, xe) => {
                for y in 0..n {
                    h[(pe(y, xe), i)] += hop(xp, y);
                }
                h[(i, i)] += p.e0;
                for d in [1i64, -1] {
                    let y = (xe as i64 + d).rem_euclid(n as i64) as usize;
                    h[(pe(xp, y), i)] += p.hop_t;
                }
                let f = if xp == xe { std::f64::consts::SQRT_2 } else { 1.0 };
                h[(pp(xp, xe).unwrap(), i)] += g * f;
                if let Some(j) = ee(xp, xe) {
                    h[(j, i)] += g * f;
                }
            }
            PairState::ExcitonExciton(a, b) => {
                h[(i, i)] += 2.0 * p.e0 + p.potential(a as i64 - b as i64);
                let sources = if a == b { vec![a] } else { vec![a, b] };
                for src in sources {
                    let rest = if src == a { b } else { a };
                    let amp = occ(a, b, src).sqrt();
                    for d in [1i64, -1] {
                        let y = (src as i64 + d).rem_euclid(n as i64) as usize;
                        if y == rest && p.hard_core {
                            continue;
                        }
                        if let Some(j) = ee(y, rest) {
                            h[(j, i)] += p.hop_t * amp * (1.0 + (y == rest) as u8 as f64).sqrt();
                        }
                    }
                    h[(pe(src, rest), i)] += g * amp;
                }
            }
        }
    }
    Ok(RealSpace { matrix: h, states })
}

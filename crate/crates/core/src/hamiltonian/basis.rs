//! Parity-adapted basis of the fixed-K problem.

use std::fmt;

use crate::model::Params;

/// Reduced-basis sectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sector {
    A,
    BS,
    BA,
    C,
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sector::A => "A",
            Sector::BS => "B_S",
            Sector::BA => "B_A",
            Sector::C => "C",
        })
    }
}

/// Amplitude fields on the full separation grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    A,
    B,
    C,
}

impl Field {
    pub fn offset(self, n_sites: usize) -> usize {
        match self {
            Field::A => 0,
            Field::B => n_sites,
            Field::C => 2 * n_sites,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BasisVector {
    pub sector: Sector,
    /// |n| of the parity pair.
    pub m: i64,
    /// (field, separation, coefficient); one or two entries.
    pub parts: Vec<(Field, i64, f64)>,
}

#[derive(Clone, Debug)]
pub struct FixedKBasis {
    pub n_sites: usize,
    pub k_index: i64,
    pub vectors: Vec<BasisVector>,
}

impl FixedKBasis {
    /// A, B_S, C even in n; B_A odd. C keeps only |n| beyond the mask. For
    /// odd ν′ the twisted boundary forces A and C to vanish at n = N/2, and
    /// B there is odd.
    pub fn new(p: &Params) -> Self {
        let n = p.n_sites as i64;
        let half = n / 2;
        let even = p.k_total_index.rem_euclid(2) == 0;
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let mut v = Vec::new();
        let pair = |sector, field, m: i64, sign: f64| BasisVector {
            sector,
            m,
            parts: vec![(field, m, r), (field, -m, sign * r)],
        };
        let single = |sector, field, m: i64| BasisVector { sector, m, parts: vec![(field, m, 1.0)] };

        for m in 0..=half {
            if m == half && !even {
                continue;
            }
            v.push(if m == 0 || m == half { single(Sector::A, Field::A, m) } else { pair(Sector::A, Field::A, m, 1.0) });
        }
        for m in 0..=half {
            if m == 0 {
                v.push(single(Sector::BS, Field::B, 0));
            } else if m == half {
                v.push(single(if even { Sector::BS } else { Sector::BA }, Field::B, m));
            } else {
                v.push(pair(Sector::BS, Field::B, m, 1.0));
            }
        }
        for m in 1..half {
            v.push(pair(Sector::BA, Field::B, m, -1.0));
        }
        let lo = if p.hard_core { p.halfwidth() as i64 + 1 } else { 0 };
        for m in lo..=half {
            if m == half && !even {
                continue;
            }
            v.push(if m == 0 || m == half { single(Sector::C, Field::C, m) } else { pair(Sector::C, Field::C, m, 1.0) });
        }
        FixedKBasis { n_sites: p.n_sites, k_index: p.k_total_index, vectors: v }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn sector_dim(&self, s: Sector) -> usize {
        self.vectors.iter().filter(|b| b.sector == s).count()
    }

    pub fn index_of(&self, s: Sector, m: i64) -> Option<usize> {
        self.vectors.iter().position(|b| b.sector == s && b.m == m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        for (nu, expect) in [(0i64, 2 * 20 + 1 - 3), (1, 2 * 20 - 1 - 3)] {
            let p = Params { n_sites: 20, blockade_cells: 3, k_total_index: nu, ..Params::default() };
            let b = FixedKBasis::new(&p);
            assert_eq!(b.dim(), expect as usize);
            let total: usize = [Sector::A, Sector::BS, Sector::BA, Sector::C].iter().map(|&s| b.sector_dim(s)).sum();
            assert_eq!(total, b.dim());
        }
    }

    #[test]
    fn label_map_is_bijective() {
        let p = Params { n_sites: 16, blockade_cells: 1, k_total_index: 3, ..Params::default() };
        let b = FixedKBasis::new(&p);
        for (i, v) in b.vectors.iter().enumerate() {
            assert_eq!(b.index_of(v.sector, v.m), Some(i));
        }
    }

    #[test]
    fn c_sector_shrinks_with_ell() {
        let mut last = usize::MAX;
        for ell in 0..6 {
            let p = Params { n_sites: 30, blockade_cells: ell, ..Params::default() };
            let d = FixedKBasis::new(&p).sector_dim(Sector::C);
            assert!(d <= last);
            last = d;
        }
    }
}

//! Dense Hermitian eigensolver wrapper.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

const EPS: f64 = 1e-15;
const MAX_ITER: usize = 0; // 0 = no limit in nalgebra

#[derive(Clone, Debug)]
pub struct Eigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column j belongs to values[j].
    pub vectors: DMatrix<C64>,
}

impl Eigen {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn vector(&self, j: usize) -> Vec<C64> {
        self.vectors.column(j).iter().copied().collect()
    }
}

fn mean_diag(d: impl Iterator<Item = f64>, n: usize) -> f64 {
    if n == 0 {
        0.0
    } else {
        d.sum::<f64>() / n as f64
    }
}

fn failure<T: std::fmt::Debug>(h: &DMatrix<T>, norm: f64) -> Error {
    Error::Numeric(format!(
        "eigensolver did not converge: dim={}x{}, max|H|={norm:e}",
        h.nrows(),
        h.ncols()
    ))
}

/// Eigen-decomposition of a real symmetric matrix.
pub fn eigh_real(h: &DMatrix<f64>) -> Result<Eigen> {
    let n = h.nrows();
    if n != h.ncols() {
        return Err(Error::Numeric(format!("matrix not square: {}x{}", n, h.ncols())));
    }
    // Shifting by the mean diagonal keeps rounding relative to the spread,
    // not to the large common offset 2E0.
    let shift = mean_diag((0..n).map(|i| h[(i, i)]), n);
    let mut m = h.clone();
    for i in 0..n {
        m[(i, i)] -= shift;
    }
    let norm = m.amax();
    let se = SymmetricEigen::try_new(m, EPS, MAX_ITER).ok_or_else(|| failure(h, norm))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[a].total_cmp(&se.eigenvalues[b]));
    let values = order.iter().map(|&j| se.eigenvalues[j] + shift).collect();
    let vectors = DMatrix::from_fn(n, n, |i, j| C64::new(se.eigenvectors[(i, order[j])], 0.0));
    Ok(Eigen { values, vectors })
}

/// Eigen-decomposition of a Hermitian matrix; takes the real path when the
/// imaginary parts vanish identically.
pub fn eigh(h: &DMatrix<C64>) -> Result<Eigen> {
    let n = h.nrows();
    if n != h.ncols() {
        return Err(Error::Numeric(format!("matrix not square: {}x{}", n, h.ncols())));
    }
    if h.iter().all(|z| z.im == 0.0) {
        return eigh_real(&h.map(|z| z.re));
    }
    let shift = mean_diag((0..n).map(|i| h[(i, i)].re), n);
    let mut m = h.clone();
    for i in 0..n {
        m[(i, i)] -= C64::new(shift, 0.0);
    }
    let norm = m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()));
    let se = SymmetricEigen::try_new(m, EPS, MAX_ITER).ok_or_else(|| failure(h, norm))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[a].total_cmp(&se.eigenvalues[b]));
    let values = order.iter().map(|&j| se.eigenvalues[j] + shift).collect();
    let vectors = DMatrix::from_fn(n, n, |i, j| se.eigenvectors[(i, order[j])]);
    Ok(Eigen { values, vectors })
}

/// Largest |H − H†| entry.
pub fn hermiticity_residual(h: &DMatrix<C64>) -> f64 {
    let n = h.nrows();
    let mut r = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            r = r.max((h[(i, j)] - h[(j, i)].conj()).norm());
        }
    }
    r
}

/// Sorted eigenvalues only.
pub fn eigvals(h: &DMatrix<C64>) -> Result<Vec<f64>> {
    Ok(eigh(h)?.values)
}

/// Max |a_i − b_i| of two sorted lists, infinity when lengths differ.
pub fn multiset_distance(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort_by(f64::total_cmp);
    y.sort_by(f64::total_cmp);
    x.iter().zip(&y).fold(0.0, |m, (p, q)| m.max((p - q).abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_x() {
        let h = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]).map(|x| C64::new(x, 0.0));
        let e = eigh(&h).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-14 && (e.values[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn diagonal_is_its_own_decomposition() {
        let h = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![3.0, -1.0, 2.0]));
        let e = eigh_real(&h).unwrap();
        assert!(multiset_distance(&e.values, &[-1.0, 2.0, 3.0]) < 1e-14);
        for (j, &row) in [1usize, 2, 0].iter().enumerate() {
            assert!((e.vectors[(row, j)].norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn complex_hermitian_residual() {
        let h = DMatrix::from_row_slice(2, 2, &[C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(0.0, -1.0), C64::new(1.0, 0.0)]);
        let e = eigh(&h).unwrap();
        assert!((e.values[0]).abs() < 1e-14 && (e.values[1] - 2.0).abs() < 1e-14);
        let v = e.vectors.column(1);
        let r = &h * v - v * C64::new(e.values[1], 0.0);
        assert!(r.norm() < 1e-14);
    }
}

//! Thin SVD for the small matrices that show up here (at most `r × r`
//! products of eigenvector blocks), built on the symmetric eigensolver.

use alloc::vec;
use alloc::vec::Vec;

use super::{eig_sym, Matrix, SymMatrix};
use crate::{Error, Result};

/// `m = U · diag(values) · Vᵀ` with `k = min(rows, cols)` singular triplets.
#[derive(Debug, Clone, PartialEq)]
pub struct Svd {
    /// Singular values, descending and nonnegative.
    pub values: Vec<f64>,
    /// `rows × k`, orthonormal columns.
    pub u: Matrix,
    /// `cols × k`, orthonormal columns.
    pub v: Matrix,
}

impl Svd {
    pub fn reconstruct(&self) -> Matrix {
        let k = self.values.len();
        let mut us = self.u.clone();
        for i in 0..us.rows() {
            for j in 0..k {
                us[(i, j)] *= self.values[j];
            }
        }
        us.matmul(&self.v.transpose()).expect("svd factor shapes")
    }
}

/// Singular value decomposition via the eigendecomposition of `mᵀm`.
///
/// Singular values are recomputed as `‖m vᵢ‖` rather than `√λᵢ`, which keeps
/// small values accurate in absolute terms.
pub fn svd_small(m: &Matrix) -> Result<Svd> {
    if m.rows() == 0 || m.cols() == 0 {
        return Err(Error::invalid("svd of an empty matrix"));
    }
    if !m.is_finite() {
        return Err(Error::invalid("matrix has non-finite entries"));
    }
    if m.rows() < m.cols() {
        let t = svd_tall(&m.transpose())?;
        return Ok(Svd { values: t.values, u: t.v, v: t.u });
    }
    svd_tall(m)
}

/// Requires `rows >= cols`.
fn svd_tall(m: &Matrix) -> Result<Svd> {
    let (rows, cols) = (m.rows(), m.cols());
    let gram = SymMatrix::symmetrized(m.tr_matmul(m)?);
    let eig = eig_sym(&gram)?;

    let mut triplets: Vec<(f64, Vec<f64>, Vec<f64>)> = (0..cols)
        .map(|k| {
            let v = eig.eigenvectors().column(k);
            let mv: Vec<f64> = (0..rows).map(|i| m.row(i).iter().zip(&v).map(|(a, b)| a * b).sum()).collect();
            let sigma = norm(&mv);
            (sigma, mv, v)
        })
        .collect();
    // descending by value; ties keep eigensolver order
    triplets.sort_by(|a, b| b.0.total_cmp(&a.0));

    let sigma_max = triplets.first().map_or(0.0, |t| t.0);
    let mut u_cols: Vec<Vec<f64>> = Vec::with_capacity(cols);
    let mut values = Vec::with_capacity(cols);
    let mut v_cols = Vec::with_capacity(cols);
    for (sigma, mv, v) in triplets {
        let candidate = if sigma > 1e-300 && sigma > 1e-14 * sigma_max {
            let mut u: Vec<f64> = mv.iter().map(|x| x / sigma).collect();
            orthogonalize(&mut u, &u_cols);
            let len = norm(&u);
            if len > 0.5 {
                u.iter_mut().for_each(|x| *x /= len);
                Some(u)
            } else {
                None
            }
        } else {
            None
        };
        let u = match candidate {
            Some(u) => u,
            None => complete_basis(rows, &u_cols),
        };
        u_cols.push(u);
        values.push(sigma);
        v_cols.push(v);
    }

    Ok(Svd { values, u: Matrix::from_columns(rows, &u_cols)?, v: Matrix::from_columns(cols, &v_cols)? })
}

fn norm(x: &[f64]) -> f64 {
    libm::sqrt(x.iter().map(|a| a * a).sum())
}

/// Two passes of modified Gram-Schmidt against `basis`.
fn orthogonalize(u: &mut [f64], basis: &[Vec<f64>]) {
    for _ in 0..2 {
        for b in basis {
            let dot: f64 = u.iter().zip(b).map(|(x, y)| x * y).sum();
            u.iter_mut().zip(b).for_each(|(x, y)| *x -= dot * y);
        }
    }
}

/// First standard basis vector that survives orthogonalisation against `basis`.
fn complete_basis(rows: usize, basis: &[Vec<f64>]) -> Vec<f64> {
    let mut best: Option<(f64, Vec<f64>)> = None;
    for i in 0..rows {
        let mut e = vec![0.0; rows];
        e[i] = 1.0;
        orthogonalize(&mut e, basis);
        let len = norm(&e);
        if len > 0.5 {
            e.iter_mut().for_each(|x| *x /= len);
            return e;
        }
        if best.as_ref().is_none_or(|(l, _)| len > *l) {
            best = Some((len, e));
        }
    }
    let (len, mut e) = best.expect("rows >= 1");
    e.iter_mut().for_each(|x| *x /= len);
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &Matrix) -> Svd {
        let s = svd_small(m).unwrap();
        let scale = m.max_abs().max(1.0);
        assert!(s.reconstruct().sub(m).unwrap().max_abs() <= 1e-9 * scale);
        assert!(s.u.orthonormality_residual() < 1e-10);
        assert!(s.v.orthonormality_residual() < 1e-10);
        assert!(s.values.windows(2).all(|w| w[0] >= w[1]));
        assert!(s.values.iter().all(|&x| x >= 0.0));
        s
    }

    #[test]
    fn identity_two() {
        assert_eq!(check(&Matrix::identity(2)).values, [1.0, 1.0]);
    }

    #[test]
    fn scalar() {
        let s = check(&Matrix::from_rows(&[[0.5]]).unwrap());
        assert_eq!(s.values, [0.5]);
    }

    #[test]
    fn rank_one_column() {
        // mᵀm = diag(25, 0) so the singular values are 5 and 0
        let s = check(&Matrix::from_rows(&[[3.0, 0.0], [4.0, 0.0]]).unwrap());
        assert!((s.values[0] - 5.0).abs() < 1e-14);
        assert!(s.values[1].abs() < 1e-14);
    }

    #[test]
    fn wide_and_tall() {
        let wide = Matrix::from_rows(&[[1.0, 2.0, 3.0], [-1.0, 0.5, 2.0]]).unwrap();
        let s = check(&wide);
        assert_eq!(s.values.len(), 2);
        check(&wide.transpose());
    }

    #[test]
    fn zero_matrix() {
        let s = check(&Matrix::zeros(3, 2));
        assert_eq!(s.values, [0.0, 0.0]);
    }

    #[test]
    fn rejects_non_finite() {
        let m = Matrix::from_rows(&[[f64::INFINITY, 0.0]]).unwrap();
        assert!(matches!(svd_small(&m), Err(Error::InvalidInput(_))));
    }
}

#![allow(dead_code)]

use dkbound_core::{Matrix, SymMatrix};
use nalgebra::DMatrix;
use proptest::prelude::*;

pub fn to_na(m: &Matrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.as_slice())
}

pub fn from_na(m: &DMatrix<f64>) -> Matrix {
    Matrix::from_rows(&m.row_iter().map(|r| r.iter().copied().collect::<Vec<_>>()).collect::<Vec<_>>()).unwrap()
}

/// Symmetric matrix whose upper triangle (row by row) is taken from `vals`.
pub fn sym_from(n: usize, vals: &[f64]) -> SymMatrix {
    let mut m = Matrix::zeros(n, n);
    let mut it = vals.iter().copied();
    for i in 0..n {
        for j in i..n {
            let x = it.next().expect("enough values");
            m[(i, j)] = x;
            m[(j, i)] = x;
        }
    }
    SymMatrix::new(m).unwrap()
}

/// Orthonormal `n × r` matrix from the Q factor of a full-rank fill.
pub fn orthonormal(n: usize, r: usize, vals: &[f64]) -> Matrix {
    let a = DMatrix::from_row_slice(n, r, &vals[..n * r]);
    let q = a.qr().q();
    from_na(&q.columns(0, r).into_owned())
}

/// Sorted eigenvalues from nalgebra.
pub fn oracle_eigenvalues(m: &SymMatrix) -> Vec<f64> {
    let mut ev: Vec<f64> = to_na(m.as_matrix()).symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

pub fn oracle_spectral_norm(m: &Matrix) -> f64 {
    to_na(m).singular_values().max()
}

pub fn sym_matrix(dims: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = SymMatrix> {
    dims.prop_flat_map(|n| prop::collection::vec(-1.0f64..1.0, n * (n + 1) / 2).prop_map(move |v| sym_from(n, &v)))
}

pub fn sym_pair(dims: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (SymMatrix, SymMatrix)> {
    dims.prop_flat_map(|n| {
        let len = n * (n + 1) / 2;
        (prop::collection::vec(-1.0f64..1.0, len), prop::collection::vec(-1.0f64..1.0, len))
            .prop_map(move |(a, b)| (sym_from(n, &a), sym_from(n, &b)))
    })
}

/// `(n, r, W, V)` with orthonormal blocks.
pub fn block_pair(dims: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (usize, usize, Matrix, Matrix)> {
    dims.prop_flat_map(|n| {
        (1..=n, prop::collection::vec(-1.0f64..1.0, n * n), prop::collection::vec(-1.0f64..1.0, n * n))
            .prop_map(move |(r, a, b)| (n, r, orthonormal(n, r, &a), orthonormal(n, r, &b)))
    })
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

//! Cyclic Jacobi eigensolver.

use alloc::format;
use alloc::vec::Vec;

use super::{frobenius_norm, Matrix, Spectrum, SymMatrix};
use crate::{Error, Result};

const MAX_SWEEPS: usize = 100;
/// Stop once the off-diagonal Frobenius mass is below this fraction of `‖M‖_F`.
const OFF_DIAGONAL_TOL: f64 = 1e-12;

/// Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Eigenvalues are returned ascending. Each eigenvector is scaled so that its
/// largest-magnitude component is positive (ties: first nonzero component
/// positive), which makes the output deterministic.
pub fn eig_sym(m: &SymMatrix) -> Result<Spectrum> {
    let n = m.n();
    if !m.as_matrix().is_finite() {
        return Err(Error::invalid("matrix has non-finite entries"));
    }
    let mut a: Vec<f64> = m.as_matrix().as_slice().to_vec();
    // eigenvectors are kept as the rows of `vt` so both updates are contiguous
    let mut vt: Vec<f64> = Matrix::identity(n).as_slice().to_vec();

    let threshold = OFF_DIAGONAL_TOL * frobenius_norm(m.as_matrix());
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a, n) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                rotate(&mut a, &mut vt, n, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&a, n) > threshold {
        return Err(Error::NoConvergence(format!("jacobi did not converge in {MAX_SWEEPS} sweeps")));
    }

    let mut order: Vec<usize> = (0..n).collect();
    // stable: ties keep the order the rotations produced
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));

    let values: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        let mut v: Vec<f64> = vt[src * n..(src + 1) * n].to_vec();
        canonical_sign(&mut v);
        for (i, x) in v.into_iter().enumerate() {
            vectors[(i, col)] = x;
        }
    }
    Ok(Spectrum::from_parts(values, vectors))
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[i * n + j] * a[i * n + j];
            }
        }
    }
    libm::sqrt(sum)
}

/// Applies the rotation in the `(p, q)` plane that annihilates `a[p][q]`.
#[inline]
fn rotate(a: &mut [f64], vt: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    if apq == 0.0 {
        return;
    }
    let app = a[p * n + p];
    let aqq = a[q * n + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = if libm::fabs(theta) > 1e150 {
        0.5 / theta
    } else {
        let t = 1.0 / (libm::fabs(theta) + libm::sqrt(theta * theta + 1.0));
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / libm::sqrt(t * t + 1.0);
    let s = t * c;

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        let new_p = c * apk - s * aqk;
        let new_q = s * apk + c * aqk;
        a[p * n + k] = new_p;
        a[q * n + k] = new_q;
        a[k * n + p] = new_p;
        a[k * n + q] = new_q;
    }
    a[p * n + p] = app - t * apq;
    a[q * n + q] = aqq + t * apq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;

    let (head, tail) = vt.split_at_mut(q * n);
    let row_p = &mut head[p * n..(p + 1) * n];
    let row_q = &mut tail[..n];
    for (vp, vq) in row_p.iter_mut().zip(row_q.iter_mut()) {
        let x = *vp;
        let y = *vq;
        *vp = c * x - s * y;
        *vq = s * x + c * y;
    }
}

/// Largest-magnitude component positive; if several components share the
/// largest magnitude, the first nonzero component is made positive instead.
pub(crate) fn canonical_sign(v: &mut [f64]) {
    let max = v.iter().fold(0.0f64, |m, x| m.max(libm::fabs(*x)));
    if max == 0.0 {
        return;
    }
    let tie_tol = max * 1e-12;
    let mut leaders = v.iter().enumerate().filter(|(_, x)| max - libm::fabs(**x) <= tie_tol);
    let first_leader = leaders.next().map(|(i, _)| i);
    let pivot = if leaders.next().is_none() { first_leader } else { v.iter().position(|x| libm::fabs(*x) > tie_tol) };
    if let Some(i) = pivot {
        if v[i] < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_three() {
        let m = SymMatrix::identity(3).unwrap();
        let s = eig_sym(&m).unwrap();
        assert_eq!(s.eigenvalues(), &[1.0, 1.0, 1.0]);
        assert!(s.eigenvectors().orthonormality_residual() < 1e-12);
        assert!(s.reconstruction_residual(&m) < 1e-12);
    }

    #[test]
    fn diagonal_is_sorted_with_permuted_basis() {
        let m = SymMatrix::diag(&[3.0, 1.0, 2.0]).unwrap();
        let s = eig_sym(&m).unwrap();
        assert_eq!(s.eigenvalues(), &[1.0, 2.0, 3.0]);
        let u = s.eigenvectors();
        // eigenvalue 1 lives on e2, 2 on e3, 3 on e1
        assert_eq!(u.column(0), [0.0, 1.0, 0.0]);
        assert_eq!(u.column(1), [0.0, 0.0, 1.0]);
        assert_eq!(u.column(2), [1.0, 0.0, 0.0]);
    }

    #[test]
    fn swap_matrix_closed_form() {
        let m = SymMatrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        let s = eig_sym(&m).unwrap();
        assert!((s.eigenvalues()[0] + 1.0).abs() < 1e-14);
        assert!((s.eigenvalues()[1] - 1.0).abs() < 1e-14);
        let h = core::f64::consts::FRAC_1_SQRT_2;
        let v0 = s.eigenvectors().column(0);
        let v1 = s.eigenvectors().column(1);
        // (1,-1)/√2 up to sign, and (1,1)/√2
        assert!((v0[0].abs() - h).abs() < 1e-14 && (v0[0] + v0[1]).abs() < 1e-14);
        assert!((v1[0] - h).abs() < 1e-14 && (v1[1] - h).abs() < 1e-14);
        // tie in magnitude: first component positive
        assert!(v0[0] > 0.0);
    }

    #[test]
    fn sign_convention() {
        let mut v = [0.1, -0.9, 0.2];
        canonical_sign(&mut v);
        assert_eq!(v, [-0.1, 0.9, -0.2]);
        let mut w = [0.0, -0.5, 0.5];
        canonical_sign(&mut w);
        assert_eq!(w, [0.0, 0.5, -0.5]);
    }
}

//! Canonical angles and the two subspace distances.
//!
//! For `W, V` with orthonormal columns spanning `r`-dimensional subspaces:
//!
//! * `rho1(W, V) = min_{R ∈ O(r)} ‖W − V R‖_F = [2 Σ (1 − αᵢ)]^{1/2}`
//! * `rho2(W, V) = ‖W Wᵀ (I − V Vᵀ)‖₂ = sin θ_max`
//!
//! where `αᵢ = cos θᵢ` are the singular values of `VᵀW`.

use alloc::format;
use alloc::vec::Vec;

use crate::linalg::{eig_sym, svd_small, Matrix, Spectrum, SymMatrix};
use crate::{Error, Result};

/// Stiefel membership tolerance for block bases.
const ORTHONORMAL_TOL: f64 = 1e-9;
/// Cosines outside `[-COSINE_TOL, 1 + COSINE_TOL]` indicate a broken basis.
const COSINE_TOL: f64 = 1e-8;
/// `rho2` at or below this means the spans coincide.
pub const COINCIDENCE_TOL: f64 = 1e-8;

/// `n × r` basis of `r` consecutive eigenvectors starting after offset `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenvectorBlock {
    offset: usize,
    basis: Matrix,
}

impl EigenvectorBlock {
    /// Wraps an arbitrary basis; its columns must be orthonormal.
    pub fn new(basis: Matrix, offset: usize) -> Result<Self> {
        let (n, r) = (basis.rows(), basis.cols());
        if r == 0 || r > n {
            return Err(Error::invalid(format!("block width {r} must be in 1..={n}")));
        }
        if offset + r > n {
            return Err(Error::invalid(format!("offset {offset} + width {r} exceeds dimension {n}")));
        }
        if !basis.is_finite() {
            return Err(Error::invalid("block basis has non-finite entries"));
        }
        let residual = basis.orthonormality_residual();
        if residual > ORTHONORMAL_TOL {
            return Err(Error::invalid(format!("block columns are not orthonormal (residual {residual:.3e})")));
        }
        Ok(EigenvectorBlock { offset, basis })
    }

    /// Columns `j+1 ..= j+r` (1-based) of the spectrum's eigenvector matrix.
    pub fn from_spectrum(spectrum: &Spectrum, offset: usize, width: usize) -> Result<Self> {
        let n = spectrum.n();
        if width == 0 || offset + width > n {
            return Err(Error::invalid(format!("block (j={offset}, r={width}) out of range for n={n}")));
        }
        Ok(EigenvectorBlock { offset, basis: spectrum.eigenvectors().column_block(offset, width) })
    }

    pub fn n(&self) -> usize {
        self.basis.rows()
    }

    pub fn r(&self) -> usize {
        self.basis.cols()
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Same block with its basis replaced by `basis · q` for `q ∈ O(r)`.
    pub fn rotated(&self, q: &Matrix) -> Result<Self> {
        EigenvectorBlock::new(self.basis.matmul(q)?, self.offset)
    }
}

/// Cosines and sines of the canonical angles that can be nonzero.
///
/// Only `min(r, n − r)` angles are kept: when `r > n − r` the remaining
/// `2r − n` angles are zero for any pair of subspaces.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalAngles {
    /// Descending, clamped to `[0, 1]`.
    pub cosines: Vec<f64>,
    /// Ascending; `sines[i]` pairs with `cosines[i]`.
    pub sines: Vec<f64>,
}

impl CanonicalAngles {
    /// `1 − αᵢ` summed, evaluated as `βᵢ² / (1 + αᵢ)` near `αᵢ = 1` to avoid
    /// cancellation.
    fn one_minus_cosine_sum(&self) -> f64 {
        self.cosines.iter().zip(&self.sines).map(|(&a, &b)| if a > 0.5 { b * b / (1.0 + a) } else { 1.0 - a }).sum()
    }

    pub fn angles(&self) -> Vec<f64> {
        self.sines.iter().zip(&self.cosines).map(|(&s, &c)| libm::atan2(s, c)).collect()
    }
}

fn check_compatible(w: &EigenvectorBlock, v: &EigenvectorBlock) -> Result<()> {
    if w.n() != v.n() || w.r() != v.r() {
        return Err(Error::shape(format!("blocks are {}x{} and {}x{}", w.n(), w.r(), v.n(), v.r())));
    }
    Ok(())
}

/// Cosines are the singular values of `VᵀW`; sines are the singular values
/// of `(I − VVᵀ)W`, computed directly so that small angles stay accurate.
pub fn canonical_angle_cosines(w: &EigenvectorBlock, v: &EigenvectorBlock) -> Result<CanonicalAngles> {
    check_compatible(w, v)?;
    let (n, r) = (w.n(), w.r());
    let keep = r.min(n - r);

    let cross = v.basis.tr_matmul(&w.basis)?;
    let mut cosines = svd_small(&cross)?.values;
    if let Some(&worst) = cosines.iter().find(|&&c| !(-COSINE_TOL..=1.0 + COSINE_TOL).contains(&c)) {
        return Err(Error::invalid(format!("canonical cosine {worst} outside [0, 1]")));
    }
    cosines.iter_mut().for_each(|c| *c = c.clamp(0.0, 1.0));

    let residual = w.basis.sub(&v.basis.matmul(&cross)?)?;
    let gram = SymMatrix::symmetrized(residual.tr_matmul(&residual)?);
    let mut sines: Vec<f64> = eig_sym(&gram)?.eigenvalues().iter().map(|&l| libm::sqrt(l.max(0.0)).min(1.0)).collect();
    sines.sort_by(f64::total_cmp);

    // the first r - keep cosines are 1 (and sines 0) in exact arithmetic
    let cosines = cosines.split_off(r - keep);
    let sines = sines.split_off(r - keep);
    Ok(CanonicalAngles { cosines, sines })
}

/// Procrustes distance `min_{R ∈ O(r)} ‖W − VR‖_F`, via the canonical cosines.
pub fn rho1(w: &EigenvectorBlock, v: &EigenvectorBlock) -> Result<f64> {
    let angles = canonical_angle_cosines(w, v)?;
    Ok(libm::sqrt(2.0 * angles.one_minus_cosine_sum().max(0.0)))
}

/// `‖WWᵀ(I − VVᵀ)‖₂`, the sine of the largest canonical angle.
pub fn rho2(w: &EigenvectorBlock, v: &EigenvectorBlock) -> Result<f64> {
    let angles = canonical_angle_cosines(w, v)?;
    Ok(angles.sines.last().copied().unwrap_or(0.0))
}

pub fn spans_coincide(w: &EigenvectorBlock, v: &EigenvectorBlock) -> Result<bool> {
    Ok(rho2(w, v)? <= COINCIDENCE_TOL)
}

/// `c_{n,r} = √(2 min(r, n − r))`.
pub fn c_factor(n: usize, r: usize) -> Result<f64> {
    if r == 0 || r > n {
        return Err(Error::invalid(format!("block width {r} must be in 1..={n}")));
    }
    Ok(libm::sqrt(2.0 * r.min(n - r) as f64))
}

/// The `Q ∈ O(r)` minimising `‖W − VQ‖_F`.
///
/// With `VᵀW = Y Σ Uᵀ`, the minimiser is `Q = Y Uᵀ`; when the spans coincide
/// this gives `W = VQ` exactly.
pub fn alignment_matrix(w: &EigenvectorBlock, v: &EigenvectorBlock) -> Result<Matrix> {
    check_compatible(w, v)?;
    let cross = v.basis.tr_matmul(&w.basis)?;
    let svd = svd_small(&cross)?;
    svd.u.matmul(&svd.v.transpose())
}

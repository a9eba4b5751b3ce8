//! Polynomial spectral transforms `p(Φ) = c_l Φ^l + … + c₁Φ + c₀I`.
//!
//! A polynomial keeps the eigenvectors of `Φ` and maps each eigenvalue `φᵢ`
//! to `p(φᵢ)`; the ordering of the mapped values can change.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{Matrix, Spectrum, SymMatrix};
use crate::{Error, Result};

pub const MAX_DEGREE: usize = 6;

/// Coefficients `c₀, c₁, …, c_l` in ascending powers.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PolynomialTransform {
    coefficients: Vec<f64>,
}

impl PolynomialTransform {
    /// Trailing zero coefficients are dropped, so the stated degree always has
    /// a nonzero leading coefficient (except for the zero polynomial).
    pub fn new(mut coefficients: Vec<f64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::invalid("polynomial needs at least one coefficient"));
        }
        if coefficients.iter().any(|c| !c.is_finite()) {
            return Err(Error::invalid("polynomial coefficients must be finite"));
        }
        while coefficients.len() > 1 && coefficients.last() == Some(&0.0) {
            coefficients.pop();
        }
        if coefficients.len() - 1 > MAX_DEGREE {
            return Err(Error::invalid(format!(
                "polynomial degree {} exceeds the cap of {MAX_DEGREE}",
                coefficients.len() - 1
            )));
        }
        Ok(PolynomialTransform { coefficients })
    }

    pub fn identity() -> Self {
        PolynomialTransform { coefficients: vec![0.0, 1.0] }
    }

    /// `f(x) = slope·x + offset`.
    pub fn affine(slope: f64, offset: f64) -> Result<Self> {
        PolynomialTransform::new(vec![offset, slope])
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// `(c₁, c₀)` when the degree is at most one.
    pub fn as_affine(&self) -> Option<(f64, f64)> {
        match self.coefficients.as_slice() {
            [c0] => Some((0.0, *c0)),
            [c0, c1] => Some((*c1, *c0)),
            _ => None,
        }
    }

    /// Horner evaluation.
    pub fn eval_scalar(&self, x: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// `p(m)` by Horner's scheme, symmetrising after every product.
    pub fn eval_matrix(&self, m: &SymMatrix) -> Result<SymMatrix> {
        let n = m.n();
        let mut iter = self.coefficients.iter().rev();
        let leading = *iter.next().expect("at least one coefficient");
        let mut acc = Matrix::identity(n).scale(leading);
        for &c in iter {
            acc = acc.matmul(m.as_matrix())?;
            for i in 0..n {
                acc[(i, i)] += c;
            }
            acc = SymMatrix::symmetrized(acc).into_matrix();
        }
        SymMatrix::new(acc)
    }
}

/// `p(φᵢ)` kept in the original index order of the spectrum (not re-sorted).
#[derive(Debug, Clone, PartialEq)]
pub struct TransformedSpectrum {
    values: Vec<f64>,
    transform: PolynomialTransform,
}

impl TransformedSpectrum {
    /// Builds from already-mapped values (index `i` ↔ eigenvalue `i`).
    pub fn from_values(values: Vec<f64>, transform: PolynomialTransform) -> Self {
        TransformedSpectrum { values, transform }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `p(φ_k)` for 1-based `k`.
    pub fn value(&self, k: usize) -> f64 {
        self.values[k - 1]
    }

    pub fn transform(&self) -> &PolynomialTransform {
        &self.transform
    }
}

pub fn eval_scalar(p: &PolynomialTransform, x: f64) -> f64 {
    p.eval_scalar(x)
}

pub fn eval_matrix(p: &PolynomialTransform, m: &SymMatrix) -> Result<SymMatrix> {
    p.eval_matrix(m)
}

pub fn transform_spectrum(p: &PolynomialTransform, s: &Spectrum) -> TransformedSpectrum {
    TransformedSpectrum { values: s.eigenvalues().iter().map(|&x| p.eval_scalar(x)).collect(), transform: p.clone() }
}

/// Transformed eigenvalues that delimit the block `j+1 ..= j+r` under an
/// affine map, in the roles they play in the interval constructions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineEndpoints {
    /// Largest transformed value below the block.
    pub below_max: f64,
    /// Smallest transformed value inside the block.
    pub inner_min: f64,
    /// Largest transformed value inside the block.
    pub inner_max: f64,
    /// Smallest transformed value above the block.
    pub above_min: f64,
}

/// Closed-form endpoints for `f(x) = c₁x + c₀`.
///
/// For `c₁ > 0`: `(f(φ_j), f(φ_{j+1}), f(φ_{j+r}), f(φ_{j+r+1}))`; for `c₁ < 0`
/// the roles reverse to `(f(φ_{j+r+1}), f(φ_{j+r}), f(φ_{j+1}), f(φ_j))`.
/// Out-of-range neighbours use `φ₀ = −∞`, `φ_{n+1} = +∞`.
pub fn affine_endpoints(f: &PolynomialTransform, s: &Spectrum, j: usize, r: usize) -> Result<AffineEndpoints> {
    let (c1, c0) = f
        .as_affine()
        .ok_or_else(|| Error::invalid(format!("expected an affine transform, got degree {}", f.degree())))?;
    if c1 == 0.0 {
        return Err(Error::DegenerateTransform("slope c1 = 0 maps every eigenvalue to c0".into()));
    }
    if r == 0 || j + r > s.n() {
        return Err(Error::invalid(format!("block (j={j}, r={r}) out of range for n={}", s.n())));
    }
    let at = |k: usize| c1 * s.value_or_boundary(k) + c0;
    let (lo, first, last, hi) = (at(j), at(j + 1), at(j + r), at(j + r + 1));
    Ok(if c1 > 0.0 {
        AffineEndpoints { below_max: lo, inner_min: first, inner_max: last, above_min: hi }
    } else {
        AffineEndpoints { below_max: hi, inner_min: last, inner_max: first, above_min: lo }
    })
}

//! Interval constructions, constraint checks and the bounds built on them.
//!
//! A comparison selects `r` consecutive eigenvectors of `Φ` (after offset
//! `j_Φ`) and of `Ψ` (after offset `j_Ψ`). Usually both offsets are equal;
//! comparing opposite ends of two spectra is done by choosing different
//! offsets together with an order-reversing transform.
//!
//! Indices are 1-based throughout, with `λ₀ = −∞` and `λ_{n+1} = +∞`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::linalg::{eig_sym, eigvals_sym, extreme_abs, Spectrum, SymMatrix};
use crate::subspace::{c_factor, rho1, rho2, EigenvectorBlock};
use crate::transform::{affine_endpoints, transform_spectrum, PolynomialTransform, TransformedSpectrum};
use crate::{Error, Result};

/// Constraint margins below this are reported as numerically fragile.
pub const FRAGILE_MARGIN: f64 = 1e-10;
/// Relative eigengap tolerance used when a comparison checks its own gaps.
pub const GAP_TOL: f64 = 1e-10;

/// Which eigenvector blocks are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BlockPair {
    pub phi_offset: usize,
    pub psi_offset: usize,
    pub width: usize,
}

impl BlockPair {
    /// `W_j` against `V_j`.
    pub fn aligned(j: usize, r: usize) -> Self {
        BlockPair { phi_offset: j, psi_offset: j, width: r }
    }

    pub fn is_aligned(&self) -> bool {
        self.phi_offset == self.psi_offset
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let r = self.width;
        if r == 0 || r > n {
            return Err(Error::invalid(format!("block width r={r} must be in 1..={n}")));
        }
        for (name, j) in [("j_phi", self.phi_offset), ("j_psi", self.psi_offset)] {
            if j + r > n {
                return Err(Error::invalid(format!("{name}={j} with r={r} exceeds n={n}")));
            }
        }
        Ok(())
    }

    /// 1-based indices of the compared `Φ` eigenvalues.
    fn phi_inner(&self) -> core::ops::RangeInclusive<usize> {
        self.phi_offset + 1..=self.phi_offset + self.width
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum IntervalChoice {
    /// `S₁` spans the transformed `Φ` block.
    TransformedPhi,
    /// `S₁` spans the `Ψ` block.
    Psi,
}

impl IntervalChoice {
    pub fn number(self) -> u8 {
        match self {
            IntervalChoice::TransformedPhi => 1,
            IntervalChoice::Psi => 2,
        }
    }
}

/// `S₁ = [a, b]`, `S₂ = ℝ \ (a − δ, b + δ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IntervalTriplet {
    pub a: f64,
    pub b: f64,
    pub delta: f64,
    pub choice: IntervalChoice,
}

impl IntervalTriplet {
    pub fn has_positive_separation(&self) -> bool {
        self.delta > 0.0
    }
}

/// Split of the transformed eigenvalues outside the compared block.
#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IndexPartition {
    /// Indices with `p(φᵢ) > b`.
    pub above: Vec<usize>,
    /// Indices with `p(φᵢ) < a`.
    pub below: Vec<usize>,
    /// Indices with `p(φᵢ) ∈ [a, b]`; any entry here breaks Constraints 1.
    pub inside: Vec<usize>,
    /// Subset of `inside` landing exactly on `a` or `b`.
    pub endpoint_collisions: Vec<usize>,
}

impl IndexPartition {
    /// Constraints 1: every outside index is strictly above or strictly below.
    pub fn covers_all(&self) -> bool {
        self.inside.is_empty()
    }
}

pub fn index_partition(ts: &TransformedSpectrum, blocks: &BlockPair, interval: &IntervalTriplet) -> IndexPartition {
    let mut part = IndexPartition::default();
    let inner = blocks.phi_inner();
    for i in (1..=ts.n()).filter(|i| !inner.contains(i)) {
        let x = ts.value(i);
        if x > interval.b {
            part.above.push(i);
        } else if x < interval.a {
            part.below.push(i);
        } else {
            part.inside.push(i);
            if x == interval.a || x == interval.b {
                part.endpoint_collisions.push(i);
            }
        }
    }
    part
}

fn inner_extremes(ts: &TransformedSpectrum, blocks: &BlockPair) -> (f64, f64) {
    blocks
        .phi_inner()
        .map(|i| ts.value(i))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)))
}

/// `a₁ = min p(φᵢ)`, `b₁ = max p(φᵢ)` over the block,
/// `δ₁ = min(ψ_{j+r+1} − b₁, a₁ − ψ_j)`.
pub fn interval_choice1(ts: &TransformedSpectrum, psi: &Spectrum, blocks: &BlockPair) -> IntervalTriplet {
    let (a, b) = inner_extremes(ts, blocks);
    let j = blocks.psi_offset;
    let delta = (psi.value_or_boundary(j + blocks.width + 1) - b).min(a - psi.value_or_boundary(j));
    IntervalTriplet { a, b, delta, choice: IntervalChoice::TransformedPhi }
}

/// `a₂ = ψ_{j+1}`, `b₂ = ψ_{j+r}`,
/// `δ₂ = min(min_{𝒜₁} p(φᵢ) − b₂, a₂ − max_{𝒜₂} p(φᵢ))` with `min ∅ = +∞`, `max ∅ = −∞`.
pub fn interval_choice2(
    ts: &TransformedSpectrum,
    psi: &Spectrum,
    blocks: &BlockPair,
) -> (IntervalTriplet, IndexPartition) {
    let j = blocks.psi_offset;
    let a = psi.value_or_boundary(j + 1);
    let b = psi.value_or_boundary(j + blocks.width);
    let provisional = IntervalTriplet { a, b, delta: 0.0, choice: IntervalChoice::Psi };
    let part = index_partition(ts, blocks, &provisional);
    let above_min = part.above.iter().map(|&i| ts.value(i)).fold(f64::INFINITY, f64::min);
    let below_max = part.below.iter().map(|&i| ts.value(i)).fold(f64::NEG_INFINITY, f64::max);
    let delta = (above_min - b).min(a - below_max);
    (IntervalTriplet { delta, ..provisional }, part)
}

/// Outcome of one interval choice for one transform.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ChoiceEvaluation {
    pub interval: IntervalTriplet,
    pub partition: IndexPartition,
    /// Constraints 1 for this interval.
    pub constraints1: bool,
    /// Constraints 2A (choice 1) or 2B (choice 2), strict inequalities.
    pub constraints2: bool,
    /// Left overlap check waived: nothing of either spectrum lies below the block.
    pub left_open: bool,
    /// Right overlap check waived: nothing of either spectrum lies above the block.
    pub right_open: bool,
    /// Smallest slack among the strict inequalities that were checked.
    pub margin: f64,
    pub fragile: bool,
}

impl ChoiceEvaluation {
    pub fn is_valid(&self) -> bool {
        self.constraints1 && self.constraints2
    }

    fn describe_failure(&self) -> String {
        let n = self.interval.choice.number();
        if !self.constraints1 {
            let mut msg = format!(
                "choice {n}: Constraints 1 fails, transformed indices {:?} fall inside [{}, {}]",
                self.partition.inside, self.interval.a, self.interval.b
            );
            if !self.partition.endpoint_collisions.is_empty() {
                msg.push_str(&format!(" (endpoint collisions {:?})", self.partition.endpoint_collisions));
            }
            msg
        } else if !self.interval.has_positive_separation() {
            format!("choice {n}: separation delta = {} is not positive", self.interval.delta)
        } else {
            let label = if n == 1 { "2A" } else { "2B" };
            format!("choice {n}: Constraints {label} overlap condition fails (slack {})", self.margin)
        }
    }
}

/// The waiver applies when the `Ψ` block starts at the bottom (end) of its
/// spectrum and no transformed `Φ` value lies below (above) the interval:
/// the interval can then be extended to `−∞` (`+∞`) without affecting `δ`.
fn open_sides(psi: &Spectrum, blocks: &BlockPair, part: &IndexPartition) -> (bool, bool) {
    let left = blocks.psi_offset == 0 && part.below.is_empty();
    let right = blocks.psi_offset + blocks.width == psi.n() && part.above.is_empty();
    (left, right)
}

/// Strict check of `δ > 0`, `left_gap < δ`, `right_gap < δ` (waived sides skipped).
fn strict_checks(delta: f64, left_gap: Option<f64>, right_gap: Option<f64>) -> (bool, f64) {
    let mut ok = delta > 0.0;
    let mut margin = delta;
    for gap in [left_gap, right_gap].into_iter().flatten() {
        ok &= gap < delta;
        margin = margin.min(delta - gap);
    }
    (ok, margin)
}

fn evaluate_choice1(ts: &TransformedSpectrum, psi: &Spectrum, blocks: &BlockPair) -> ChoiceEvaluation {
    let interval = interval_choice1(ts, psi, blocks);
    let partition = index_partition(ts, blocks, &interval);
    let (left_open, right_open) = open_sides(psi, blocks, &partition);
    let j = blocks.psi_offset;
    let left = (!left_open).then(|| interval.a - psi.value_or_boundary(j + 1));
    let right = (!right_open).then(|| psi.value_or_boundary(j + blocks.width) - interval.b);
    let (constraints2, margin) = strict_checks(interval.delta, left, right);
    let constraints1 = partition.covers_all();
    ChoiceEvaluation {
        interval,
        fragile: constraints1 && constraints2 && margin < FRAGILE_MARGIN,
        constraints1,
        constraints2,
        left_open,
        right_open,
        margin,
        partition,
    }
}

fn evaluate_choice2(ts: &TransformedSpectrum, psi: &Spectrum, blocks: &BlockPair) -> ChoiceEvaluation {
    let (interval, partition) = interval_choice2(ts, psi, blocks);
    let (left_open, right_open) = open_sides(psi, blocks, &partition);
    let (inner_min, inner_max) = inner_extremes(ts, blocks);
    let left = (!left_open).then_some(interval.a - inner_min);
    let right = (!right_open).then_some(inner_max - interval.b);
    let (constraints2, margin) = strict_checks(interval.delta, left, right);
    let constraints1 = partition.covers_all();
    ChoiceEvaluation {
        interval,
        fragile: constraints1 && constraints2 && margin < FRAGILE_MARGIN,
        constraints1,
        constraints2,
        left_open,
        right_open,
        margin,
        partition,
    }
}

/// Constraints 2A for interval choice 1: `δ₁ > 0`, `a₁ − ψ_{j+1} < δ₁`, `ψ_{j+r} − b₁ < δ₁`.
pub fn check_constraints2a(ts: &TransformedSpectrum, psi: &Spectrum, blocks: &BlockPair, t1: &IntervalTriplet) -> bool {
    let partition = index_partition(ts, blocks, t1);
    let (left_open, right_open) = open_sides(psi, blocks, &partition);
    let j = blocks.psi_offset;
    let left = (!left_open).then(|| t1.a - psi.value_or_boundary(j + 1));
    let right = (!right_open).then(|| psi.value_or_boundary(j + blocks.width) - t1.b);
    strict_checks(t1.delta, left, right).0
}

/// Constraints 2B for interval choice 2: `δ₂ > 0`, `a₂ − min p(φᵢ) < δ₂`, `max p(φᵢ) − b₂ < δ₂`.
pub fn check_constraints2b(ts: &TransformedSpectrum, psi: &Spectrum, blocks: &BlockPair, t2: &IntervalTriplet) -> bool {
    let partition = index_partition(ts, blocks, t2);
    let (left_open, right_open) = open_sides(psi, blocks, &partition);
    let (inner_min, inner_max) = inner_extremes(ts, blocks);
    let left = (!left_open).then_some(t2.a - inner_min);
    let right = (!right_open).then_some(inner_max - t2.b);
    strict_checks(t2.delta, left, right).0
}

/// Nonzero eigengaps on both sides of both blocks (gaps must exceed `tol`).
pub fn check_gap_assumption(phi: &Spectrum, psi: &Spectrum, blocks: &BlockPair, tol: f64) -> Result<bool> {
    if phi.n() != psi.n() {
        return Err(Error::shape(format!("spectra have sizes {} and {}", phi.n(), psi.n())));
    }
    blocks.validate(phi.n())?;
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::invalid("gap tolerance must be nonnegative"));
    }
    let r = blocks.width;
    let gaps_ok = |s: &Spectrum, j: usize| {
        s.value_or_boundary(j + 1) - s.value_or_boundary(j) > tol
            && s.value_or_boundary(j + r + 1) - s.value_or_boundary(j + r) > tol
    };
    Ok(gaps_ok(phi, blocks.phi_offset) && gaps_ok(psi, blocks.psi_offset))
}

fn relative_gap_tol(phi: &Spectrum, psi: &Spectrum) -> f64 {
    GAP_TOL * extreme_abs(phi.eigenvalues()).max(extreme_abs(psi.eigenvalues())).max(1.0)
}

/// The first-`r` bound with the between-matrix eigengap.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StandardBound {
    /// `max(φ_{r+1} − ψ_r, ψ_{r+1} − φ_r)`.
    pub delta: f64,
    /// `‖Φ − Ψ‖₂`.
    pub numerator: f64,
    pub bound_rho2: f64,
    /// `c_{n,r} ‖Φ − Ψ‖₂ / δ`.
    pub bound_rho1: f64,
    pub feasible: bool,
}

/// Bound on the first `r` eigenvectors (`j = 0`) without any transform.
pub fn theorem4_bound(
    phi: &Spectrum,
    psi: &Spectrum,
    mat_phi: &SymMatrix,
    mat_psi: &SymMatrix,
    r: usize,
) -> Result<StandardBound> {
    let blocks = BlockPair::aligned(0, r);
    if !check_gap_assumption(phi, psi, &blocks, 0.0)? {
        return Err(Error::GapViolation(format!("r-th eigengap is zero for r={r}")));
    }
    let numerator = extreme_abs(&eigvals_sym(&mat_phi.sub(mat_psi)?)?);
    Ok(standard_from_spectra(phi, psi, r, numerator))
}

fn standard_from_spectra(phi: &Spectrum, psi: &Spectrum, r: usize, numerator: f64) -> StandardBound {
    let delta = (phi.value_or_boundary(r + 1) - psi.value_or_boundary(r))
        .max(psi.value_or_boundary(r + 1) - phi.value_or_boundary(r));
    let c = c_factor(phi.n(), r).expect("validated width");
    let bound_rho2 = numerator / delta;
    StandardBound { delta, numerator, bound_rho2, bound_rho1: c * bound_rho2, feasible: delta > 0.0 }
}

/// Closed-form separations for an affine map (both interval choices, one slope sign).
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AffineDeltas {
    pub positive_slope: bool,
    /// `δ_{1,±}`.
    pub delta1: f64,
    /// `δ_{2,±}`.
    pub delta2: f64,
}

pub fn affine_deltas(
    f: &PolynomialTransform,
    phi: &Spectrum,
    psi: &Spectrum,
    j: usize,
    r: usize,
) -> Result<AffineDeltas> {
    let e = affine_endpoints(f, phi, j, r)?;
    let delta1 = (psi.value_or_boundary(j + r + 1) - e.inner_max).min(e.inner_min - psi.value_or_boundary(j));
    let delta2 = (e.above_min - psi.value_or_boundary(j + r)).min(psi.value_or_boundary(j + 1) - e.below_max);
    let positive_slope = f.as_affine().is_some_and(|(c1, _)| c1 > 0.0);
    Ok(AffineDeltas { positive_slope, delta1, delta2 })
}

/// Everything known about one transformed comparison.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundReport {
    pub blocks: BlockPair,
    pub transform: PolynomialTransform,
    pub rho1_attained: f64,
    pub rho2_attained: f64,
    /// `‖p(Φ) − Ψ‖₂`.
    pub numerator: f64,
    pub c_factor: f64,
    /// Largest separation among the valid interval choices.
    pub delta_used: Option<f64>,
    pub interval: Option<IntervalTriplet>,
    /// `‖p(Φ) − Ψ‖₂ / δ`.
    pub bound_rho2: Option<f64>,
    /// `c_{n,r} ‖p(Φ) − Ψ‖₂ / δ`.
    pub bound_rho1: Option<f64>,
    pub choice1: ChoiceEvaluation,
    pub choice2: ChoiceEvaluation,
    /// Untransformed first-`r` bound, present for aligned `j = 0` comparisons.
    pub standard_bound: Option<StandardBound>,
}

impl BoundReport {
    /// At least one interval choice satisfies its constraints.
    pub fn constraints_ok(&self) -> bool {
        self.delta_used.is_some()
    }

    pub fn constraints1_choice1(&self) -> bool {
        self.choice1.constraints1
    }

    pub fn constraints2a(&self) -> bool {
        self.choice1.constraints2
    }

    pub fn constraints1_choice2(&self) -> bool {
        self.choice2.constraints1
    }

    pub fn constraints2b(&self) -> bool {
        self.choice2.constraints2
    }

    pub fn fragile(&self) -> bool {
        (self.choice1.is_valid() && self.choice1.fragile) || (self.choice2.is_valid() && self.choice2.fragile)
    }

    pub fn failure_reason(&self) -> Option<String> {
        if self.constraints_ok() {
            return None;
        }
        Some(format!("{}; {}", self.choice1.describe_failure(), self.choice2.describe_failure()))
    }
}

/// Spectra, attained distances and the standard bound of a matrix pair,
/// computed once and reused for any number of transforms.
#[derive(Debug, Clone)]
pub struct SpectralComparison {
    mat_phi: SymMatrix,
    mat_psi: SymMatrix,
    phi: Spectrum,
    psi: Spectrum,
    blocks: BlockPair,
    rho1: f64,
    rho2: f64,
    c_factor: f64,
    standard: Option<StandardBound>,
}

impl SpectralComparison {
    /// Fails with `GapViolation` when either block lacks a nonzero eigengap
    /// on one of its sides.
    pub fn new(mat_phi: &SymMatrix, mat_psi: &SymMatrix, blocks: BlockPair) -> Result<Self> {
        if mat_phi.n() != mat_psi.n() {
            return Err(Error::shape(format!("matrices are {0}x{0} and {1}x{1}", mat_phi.n(), mat_psi.n())));
        }
        let n = mat_phi.n();
        blocks.validate(n)?;
        let phi = eig_sym(mat_phi)?;
        let psi = eig_sym(mat_psi)?;
        let tol = relative_gap_tol(&phi, &psi);
        if !check_gap_assumption(&phi, &psi, &blocks, tol)? {
            return Err(Error::GapViolation(format!(
                "blocks (j_phi={}, j_psi={}, r={}) need nonzero eigengaps on both sides",
                blocks.phi_offset, blocks.psi_offset, blocks.width
            )));
        }
        let w = EigenvectorBlock::from_spectrum(&phi, blocks.phi_offset, blocks.width)?;
        let v = EigenvectorBlock::from_spectrum(&psi, blocks.psi_offset, blocks.width)?;
        let standard = if blocks.phi_offset == 0 && blocks.psi_offset == 0 {
            let numerator = extreme_abs(&eigvals_sym(&mat_phi.sub(mat_psi)?)?);
            Some(standard_from_spectra(&phi, &psi, blocks.width, numerator))
        } else {
            None
        };
        Ok(SpectralComparison {
            mat_phi: mat_phi.clone(),
            mat_psi: mat_psi.clone(),
            rho1: rho1(&w, &v)?,
            rho2: rho2(&w, &v)?,
            c_factor: c_factor(n, blocks.width)?,
            phi,
            psi,
            blocks,
            standard,
        })
    }

    pub fn phi(&self) -> &Spectrum {
        &self.phi
    }

    pub fn psi(&self) -> &Spectrum {
        &self.psi
    }

    pub fn mat_phi(&self) -> &SymMatrix {
        &self.mat_phi
    }

    pub fn mat_psi(&self) -> &SymMatrix {
        &self.mat_psi
    }

    pub fn blocks(&self) -> BlockPair {
        self.blocks
    }

    pub fn rho1_attained(&self) -> f64 {
        self.rho1
    }

    pub fn rho2_attained(&self) -> f64 {
        self.rho2
    }

    pub fn standard_bound(&self) -> Option<StandardBound> {
        self.standard
    }

    /// `‖p(Φ) − Ψ‖₂`.
    pub fn numerator(&self, p: &PolynomialTransform) -> Result<f64> {
        let diff = match p.as_affine() {
            Some((c1, c0)) => self.mat_phi.combine(c1, &self.mat_psi, -1.0)?.shifted(c0),
            None => p.eval_matrix(&self.mat_phi)?.sub(&self.mat_psi)?,
        };
        Ok(extreme_abs(&eigvals_sym(&diff)?))
    }

    pub fn report(&self, p: &PolynomialTransform) -> Result<BoundReport> {
        let ts = transform_spectrum(p, &self.phi);
        Ok(self.report_with_numerator(ts, self.numerator(p)?))
    }

    /// Assembles the report when `‖p(Φ) − Ψ‖₂` is already known.
    pub fn report_with_numerator(&self, ts: TransformedSpectrum, numerator: f64) -> BoundReport {
        let choice1 = evaluate_choice1(&ts, &self.psi, &self.blocks);
        let choice2 = evaluate_choice2(&ts, &self.psi, &self.blocks);
        let best = [&choice1, &choice2].into_iter().filter(|c| c.is_valid()).map(|c| c.interval).reduce(|x, y| {
            if y.delta > x.delta {
                y
            } else {
                x
            }
        });
        let bound_rho2 = best.map(|t| numerator / t.delta);
        BoundReport {
            blocks: self.blocks,
            transform: ts.transform().clone(),
            rho1_attained: self.rho1,
            rho2_attained: self.rho2,
            numerator,
            c_factor: self.c_factor,
            delta_used: best.map(|t| t.delta),
            interval: best,
            bound_rho2,
            bound_rho1: bound_rho2.map(|b| self.c_factor * b),
            choice1,
            choice2,
            standard_bound: self.standard,
        }
    }

    /// Whether the identity transform admits valid intervals.
    pub fn standard_feasible(&self) -> bool {
        let ts = transform_spectrum(&PolynomialTransform::identity(), &self.phi);
        evaluate_choice1(&ts, &self.psi, &self.blocks).is_valid()
            || evaluate_choice2(&ts, &self.psi, &self.blocks).is_valid()
    }
}

/// Report for `p`, with absent bounds when no interval choice is valid.
pub fn extended_report(
    mat_phi: &SymMatrix,
    mat_psi: &SymMatrix,
    p: &PolynomialTransform,
    blocks: BlockPair,
) -> Result<BoundReport> {
    SpectralComparison::new(mat_phi, mat_psi, blocks)?.report(p)
}

/// Like [`extended_report`] but infeasibility is an error.
pub fn extended_bound(
    mat_phi: &SymMatrix,
    mat_psi: &SymMatrix,
    p: &PolynomialTransform,
    blocks: BlockPair,
) -> Result<BoundReport> {
    let report = extended_report(mat_phi, mat_psi, p, blocks)?;
    match report.failure_reason() {
        None => Ok(report),
        Some(reason) => Err(Error::NoValidInterval(reason)),
    }
}

/// Whether valid intervals exist for the untransformed spectra. Missing
/// eigengaps count as infeasible.
pub fn standard_requirements_feasible(phi: &Spectrum, psi: &Spectrum, blocks: &BlockPair) -> bool {
    match check_gap_assumption(phi, psi, blocks, 0.0) {
        Ok(true) => {}
        _ => return false,
    }
    let ts = transform_spectrum(&PolynomialTransform::identity(), phi);
    evaluate_choice1(&ts, psi, blocks).is_valid() || evaluate_choice2(&ts, psi, blocks).is_valid()
}

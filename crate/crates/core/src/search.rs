//! Grid search over affine transforms `f(x) = c₁x + c₀` minimising the
//! extended bound, with the two interval choices tracked separately.
//!
//! For fixed `c₁` the numerator `‖c₁Φ + c₀I − Ψ‖₂` only depends on the extreme
//! eigenvalues `λ_min`, `λ_max` of `c₁Φ − Ψ`: it equals
//! `max(|λ_max + c₀|, |λ_min + c₀|)`. One eigenvalue solve per distinct `c₁`
//! therefore serves a whole column of the grid.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::bounds::{BlockPair, BoundReport, SpectralComparison};
use crate::linalg::{eigvals_sym, extreme_abs, SymMatrix};
use crate::transform::{transform_spectrum, PolynomialTransform};
use crate::{Error, Result};

const GOLDEN_ITERATIONS: usize = 80;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SearchConfig {
    pub c1_range: (f64, f64),
    pub c0_range: (f64, f64),
    pub grid_points: usize,
    pub refinement_rounds: usize,
    /// Grid points with `|c₁|` below this are skipped.
    pub exclude_zero_band: f64,
    /// Finish with a one-dimensional minimisation of the numerator over `c₁`
    /// (with the optimal `c₀` for each `c₁`) around the incumbent.
    pub polish: bool,
}

impl SearchConfig {
    /// `c₁ ∈ ±2‖Ψ‖/‖Φ‖`, `c₀ ∈ ±‖Ψ‖`, 41 points per axis, 3 refinement rounds.
    pub fn scaled(phi_norm: f64, psi_norm: f64) -> Self {
        let ratio = if phi_norm > 0.0 && psi_norm > 0.0 { psi_norm / phi_norm } else { 1.0 };
        let offset = if psi_norm > 0.0 { psi_norm } else { 1.0 };
        SearchConfig {
            c1_range: (-2.0 * ratio, 2.0 * ratio),
            c0_range: (-offset, offset),
            grid_points: 41,
            refinement_rounds: 3,
            exclude_zero_band: 1e-6,
            polish: true,
        }
    }

    pub fn for_comparison(cmp: &SpectralComparison) -> Self {
        SearchConfig::scaled(extreme_abs(cmp.phi().eigenvalues()), extreme_abs(cmp.psi().eigenvalues()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid_points < 3 {
            return Err(Error::invalid(format!("grid_points = {} must be at least 3", self.grid_points)));
        }
        if !self.exclude_zero_band.is_finite() || self.exclude_zero_band <= 0.0 {
            return Err(Error::invalid("exclude_zero_band must be positive and finite"));
        }
        for (name, (lo, hi)) in [("c1_range", self.c1_range), ("c0_range", self.c0_range)] {
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return Err(Error::invalid(format!("{name} = [{lo}, {hi}] is not a finite interval")));
            }
        }
        Ok(())
    }
}

/// Best transform found for one interval choice.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ChoiceBest {
    pub c1: f64,
    pub c0: f64,
    pub delta: f64,
    pub numerator: f64,
    pub bound_rho2: f64,
    pub bound_rho1: f64,
}

impl ChoiceBest {
    fn key(&self) -> (f64, f64, f64) {
        (self.bound_rho2, libm::fabs(self.c0), libm::fabs(self.c1 - 1.0))
    }

    fn beats(&self, other: &ChoiceBest) -> bool {
        let (a, b) = (self.key(), other.key());
        a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)).then(a.2.total_cmp(&b.2)).is_lt()
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SearchResult {
    pub best_transform: PolynomialTransform,
    pub best_report: BoundReport,
    pub choice1: Option<ChoiceBest>,
    pub choice2: Option<ChoiceBest>,
    pub evaluations: usize,
    /// Incumbent `bound_rho2` after the initial grid and after each refinement round.
    pub history: Vec<f64>,
}

/// One cell of [`bound_landscape`].
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LandscapeCell {
    pub c1: f64,
    pub c0: f64,
    /// `ρ1` bound when some interval choice is valid.
    pub bound: Option<f64>,
    /// Why the cell is infeasible.
    pub failure: Option<String>,
}

struct Evaluator<'a> {
    cmp: &'a SpectralComparison,
    extremes: BTreeMap<u64, (f64, f64)>,
    evaluations: usize,
}

impl<'a> Evaluator<'a> {
    fn new(cmp: &'a SpectralComparison) -> Self {
        Evaluator { cmp, extremes: BTreeMap::new(), evaluations: 0 }
    }

    /// `(λ_min, λ_max)` of `c₁Φ − Ψ`.
    fn extremes(&mut self, c1: f64) -> Result<(f64, f64)> {
        if let Some(&e) = self.extremes.get(&c1.to_bits()) {
            return Ok(e);
        }
        let diff: SymMatrix = self.cmp.mat_phi().combine(c1, self.cmp.mat_psi(), -1.0)?;
        let ev = eigvals_sym(&diff)?;
        let e = (ev[0], ev[ev.len() - 1]);
        self.extremes.insert(c1.to_bits(), e);
        Ok(e)
    }

    fn report(&mut self, c1: f64, c0: f64) -> Result<BoundReport> {
        let (lo, hi) = self.extremes(c1)?;
        let numerator = libm::fabs(hi + c0).max(libm::fabs(lo + c0));
        let p = PolynomialTransform::affine(c1, c0)?;
        self.evaluations += 1;
        Ok(self.cmp.report_with_numerator(transform_spectrum(&p, self.cmp.phi()), numerator))
    }
}

fn grid_value((lo, hi): (f64, f64), k: usize, points: usize) -> f64 {
    if k == points - 1 {
        hi
    } else {
        lo + (hi - lo) * (k as f64) / ((points - 1) as f64)
    }
}

fn candidates(report: &BoundReport, c1: f64, c0: f64) -> [Option<ChoiceBest>; 2] {
    [&report.choice1, &report.choice2].map(|choice| {
        choice.is_valid().then(|| {
            let bound_rho2 = report.numerator / choice.interval.delta;
            ChoiceBest {
                c1,
                c0,
                delta: choice.interval.delta,
                numerator: report.numerator,
                bound_rho2,
                bound_rho1: report.c_factor * bound_rho2,
            }
        })
    })
}

struct Incumbents {
    best: [Option<ChoiceBest>; 2],
}

impl Incumbents {
    fn offer(&mut self, report: &BoundReport, c1: f64, c0: f64) {
        for (slot, cand) in self.best.iter_mut().zip(candidates(report, c1, c0)) {
            if let Some(cand) = cand {
                if slot.as_ref().is_none_or(|cur| cand.beats(cur)) {
                    *slot = Some(cand);
                }
            }
        }
    }

    fn overall(&self) -> Option<ChoiceBest> {
        match self.best {
            [Some(a), Some(b)] => Some(if b.beats(&a) { b } else { a }),
            [a, b] => a.or(b),
        }
    }
}

fn scan_grid(
    ev: &mut Evaluator<'_>,
    inc: &mut Incumbents,
    c1_range: (f64, f64),
    c0_range: (f64, f64),
    cfg: &SearchConfig,
) -> Result<()> {
    for k1 in 0..cfg.grid_points {
        let c1 = grid_value(c1_range, k1, cfg.grid_points);
        if libm::fabs(c1) < cfg.exclude_zero_band {
            continue;
        }
        for k0 in 0..cfg.grid_points {
            let c0 = grid_value(c0_range, k0, cfg.grid_points);
            let report = ev.report(c1, c0)?;
            inc.offer(&report, c1, c0);
        }
    }
    Ok(())
}

fn centred(centre: f64, width: f64) -> (f64, f64) {
    (centre - 0.5 * width, centre + 0.5 * width)
}

/// Golden-section minimisation of the convex spread `λ_max − λ_min` of
/// `c₁Φ − Ψ` over `c₁`; the matching `c₀` centres the spectrum on zero.
fn polish(ev: &mut Evaluator<'_>, inc: &mut Incumbents, window: (f64, f64), band: f64) -> Result<()> {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let spread = |ev: &mut Evaluator<'_>, c1: f64| ev.extremes(c1).map(|(lo, hi)| hi - lo);
    let (mut a, mut b) = window;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = spread(ev, x1)?;
    let mut f2 = spread(ev, x2)?;
    for _ in 0..GOLDEN_ITERATIONS {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = spread(ev, x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = spread(ev, x2)?;
        }
        if b - a <= f64::EPSILON * libm::fabs(a).max(libm::fabs(b)) {
            break;
        }
    }
    let c1 = if f1 <= f2 { x1 } else { x2 };
    if libm::fabs(c1) < band {
        return Ok(());
    }
    let (lo, hi) = ev.extremes(c1)?;
    let c0 = -0.5 * (lo + hi);
    let report = ev.report(c1, c0)?;
    inc.offer(&report, c1, c0);
    Ok(())
}

/// Affine transform minimising the extended bound over the configured grid.
pub fn search_affine(
    mat_phi: &SymMatrix,
    mat_psi: &SymMatrix,
    blocks: BlockPair,
    cfg: Option<&SearchConfig>,
) -> Result<SearchResult> {
    let cmp = SpectralComparison::new(mat_phi, mat_psi, blocks)?;
    match cfg {
        Some(cfg) => search_affine_with(&cmp, cfg),
        None => search_affine_with(&cmp, &SearchConfig::for_comparison(&cmp)),
    }
}

/// [`search_affine`] on a prepared comparison.
pub fn search_affine_with(cmp: &SpectralComparison, cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    let mut ev = Evaluator::new(cmp);
    let mut inc = Incumbents { best: [None, None] };
    let mut history = Vec::with_capacity(cfg.refinement_rounds + 1);

    scan_grid(&mut ev, &mut inc, cfg.c1_range, cfg.c0_range, cfg)?;
    history.push(inc.overall().map_or(f64::INFINITY, |b| b.bound_rho2));

    let (mut w1, mut w0) = (cfg.c1_range.1 - cfg.c1_range.0, cfg.c0_range.1 - cfg.c0_range.0);
    for _ in 0..cfg.refinement_rounds {
        w1 /= 5.0;
        w0 /= 5.0;
        let centres: Vec<ChoiceBest> = inc.best.iter().flatten().copied().collect();
        let mut seen: Vec<(u64, u64)> = Vec::new();
        for b in centres {
            let key = (b.c1.to_bits(), b.c0.to_bits());
            if seen.contains(&key) {
                continue;
            }
            seen.push(key);
            scan_grid(&mut ev, &mut inc, centred(b.c1, w1), centred(b.c0, w0), cfg)?;
        }
        history.push(inc.overall().map_or(f64::INFINITY, |b| b.bound_rho2));
    }

    if cfg.polish {
        // nothing left to gain once the numerator is at rounding level
        let floor = 1e-12 * extreme_abs(cmp.psi().eigenvalues()).max(1.0);
        let centres: Vec<f64> = inc.best.iter().flatten().filter(|b| b.numerator > floor).map(|b| b.c1).collect();
        let mut seen: Vec<u64> = Vec::new();
        for c1 in centres {
            if seen.contains(&c1.to_bits()) {
                continue;
            }
            seen.push(c1.to_bits());
            polish(&mut ev, &mut inc, centred(c1, w1), cfg.exclude_zero_band)?;
        }
    }

    let best = inc.overall().ok_or(Error::NoFeasibleTransform { evaluations: ev.evaluations })?;
    let best_report = ev.report(best.c1, best.c0)?;
    Ok(SearchResult {
        best_transform: best_report.transform.clone(),
        best_report,
        choice1: inc.best[0],
        choice2: inc.best[1],
        evaluations: ev.evaluations - 1,
        history,
    })
}

/// Full grid without refinement, row-major in `c₁` then `c₀`.
pub fn bound_landscape(
    mat_phi: &SymMatrix,
    mat_psi: &SymMatrix,
    blocks: BlockPair,
    cfg: &SearchConfig,
) -> Result<Vec<LandscapeCell>> {
    cfg.validate()?;
    let cmp = SpectralComparison::new(mat_phi, mat_psi, blocks)?;
    let mut ev = Evaluator::new(&cmp);
    let mut cells = Vec::with_capacity(cfg.grid_points * cfg.grid_points);
    for k1 in 0..cfg.grid_points {
        let c1 = grid_value(cfg.c1_range, k1, cfg.grid_points);
        for k0 in 0..cfg.grid_points {
            let c0 = grid_value(cfg.c0_range, k0, cfg.grid_points);
            let cell = if libm::fabs(c1) < cfg.exclude_zero_band {
                LandscapeCell { c1, c0, bound: None, failure: Some("c1 inside the excluded zero band".into()) }
            } else {
                let report = ev.report(c1, c0)?;
                LandscapeCell { c1, c0, bound: report.bound_rho1, failure: report.failure_reason() }
            };
            cells.push(cell);
        }
    }
    Ok(cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_cfg() -> SearchConfig {
        SearchConfig {
            c1_range: (-4.0, 4.0),
            c0_range: (-2.0, 2.0),
            grid_points: 9,
            refinement_rounds: 2,
            exclude_zero_band: 1e-6,
            polish: true,
        }
    }

    #[test]
    fn identical_pair_finds_identity() {
        let m = SymMatrix::from_rows(&[[2.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 5.0]]).unwrap();
        let res = search_affine(&m, &m, BlockPair::aligned(0, 1), None).unwrap();
        assert_eq!(res.best_transform.as_affine(), Some((1.0, 0.0)));
        assert_eq!(res.best_report.bound_rho1, Some(0.0));
    }

    #[test]
    fn exact_scaling_is_recovered() {
        let phi = SymMatrix::diag(&[0.0, 1.0, 2.0, 3.0]).unwrap();
        let psi = SymMatrix::diag(&[0.0, 2.0, 4.0, 6.0]).unwrap();
        let res = search_affine(&phi, &psi, BlockPair::aligned(0, 2), Some(&small_cfg())).unwrap();
        let (c1, c0) = res.best_transform.as_affine().unwrap();
        assert!((c1 - 2.0).abs() < 1e-9 && c0.abs() < 1e-9, "({c1}, {c0})");
        assert!(res.best_report.bound_rho1.unwrap() < 1e-9);
    }

    #[test]
    fn history_never_increases() {
        let phi = SymMatrix::from_rows(&[[1.0, 0.3, 0.0], [0.3, 2.0, 0.1], [0.0, 0.1, 4.0]]).unwrap();
        let psi = SymMatrix::from_rows(&[[0.8, 0.0, 0.2], [0.0, 2.5, 0.0], [0.2, 0.0, 3.0]]).unwrap();
        let res = search_affine(&phi, &psi, BlockPair::aligned(1, 1), Some(&small_cfg())).unwrap();
        assert!(res.history.windows(2).all(|w| w[1] <= w[0]));
        assert!(res.best_report.constraints_ok());
    }

    #[test]
    fn config_validation() {
        let mut cfg = small_cfg();
        cfg.grid_points = 2;
        assert!(cfg.validate().is_err());
        let mut cfg = small_cfg();
        cfg.exclude_zero_band = 0.0;
        assert!(cfg.validate().is_err());
        let mut cfg = small_cfg();
        cfg.c0_range = (1.0, -1.0);
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn landscape_zero_and_band() {
        let m = SymMatrix::diag(&[0.0, 1.0, 3.0]).unwrap();
        let cfg = SearchConfig { c1_range: (-1.0, 1.0), c0_range: (-1.0, 1.0), grid_points: 5, ..small_cfg() };
        let cells = bound_landscape(&m, &m, BlockPair::aligned(0, 1), &cfg).unwrap();
        assert_eq!(cells.len(), 25);
        let at = |c1: f64, c0: f64| cells.iter().find(|c| c.c1 == c1 && c.c0 == c0).unwrap();
        assert_eq!(at(1.0, 0.0).bound, Some(0.0));
        assert!(at(0.0, 0.0).failure.as_deref().unwrap().contains("zero band"));
        assert!(at(1.0, 0.5).bound.unwrap() > 0.0);
    }
}

//! Subspace distances and perturbation bounds for eigenvector blocks of
//! two symmetric matrices, extended with polynomial (and affine) spectral
//! transforms.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of its inputs; file formats, the command line and experiment
//! drivers live in the `dkbound` companion crate.
//!
//! Layout:
//!
//! * [`linalg`]: dense symmetric eigensolvers, small SVD, norms.
//! * [`subspace`]: canonical angles, the distances `rho1` / `rho2`, Procrustes alignment.
//! * [`transform`]: polynomial transforms of matrices and spectra.
//! * [`bounds`]: interval constructions, constraint checks and the bounds themselves.
//! * [`search`]: grid search over affine transforms minimising the bound.
//! * [`graph`]: graph shift operators and random regular graphs.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bounds;
mod error;
pub mod graph;
pub mod linalg;
pub mod rng;
pub mod search;
pub mod subspace;
pub mod transform;

pub use error::{Error, Result};

pub use bounds::{
    affine_deltas, check_constraints2a, check_constraints2b, check_gap_assumption, extended_bound, extended_report,
    index_partition, interval_choice1, interval_choice2, standard_requirements_feasible, theorem4_bound, AffineDeltas,
    BlockPair, BoundReport, ChoiceEvaluation, IndexPartition, IntervalChoice, IntervalTriplet, SpectralComparison,
    StandardBound,
};
pub use graph::{random_regular, regularity_check, shift_operators, Graph, ShiftOperatorSet};
pub use linalg::{eig_sym, eigvals_sym, frobenius_norm, spectral_norm, svd_small, Matrix, Spectrum, Svd, SymMatrix};
pub use search::{
    bound_landscape, search_affine, search_affine_with, ChoiceBest, LandscapeCell, SearchConfig, SearchResult,
};
pub use subspace::{
    alignment_matrix, c_factor, canonical_angle_cosines, rho1, rho2, CanonicalAngles, EigenvectorBlock,
};
pub use transform::{affine_endpoints, transform_spectrum, AffineEndpoints, PolynomialTransform, TransformedSpectrum};

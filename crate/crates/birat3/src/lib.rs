//! Exact symbolic toolkit for weighted blow-ups of terminal threefold
//! singularities embedded in cyclic quotients of affine space.
//!
//! The crate is organised around a small pipeline:
//!
//! * [`qlattice`] — cyclic quotient actions, blow-up weights, and the lattice
//!   arithmetic that decomposes each blow-up chart into a cyclic quotient.
//! * [`polyring`] — sparse multivariate polynomials over the rationals with
//!   weights, leading forms, semi-invariance and strict transforms.
//! * [`models`] — singularity models (normal forms) and the registry of
//!   divisorial-contraction table rows with per-row constraint predicates.
//! * [`blowup`] — weighted blow-ups of models: chart atlases, discrepancies,
//!   w-morphism tests and enumeration.
//! * [`depth`] — generalized depth invariants (`gdep`, `dep`, `dep_gor`),
//!   feasible-resolution trees, and chain inequality checks.
//! * [`links`] — link predicates between divisorial contractions and the
//!   explicit linked contraction over cA/r points.
//! * [`flopatlas`] — the explicit chart atlases for the cA/r flop family,
//!   flip bookkeeping, and Omega-type diagram labels.
//! * [`cli`] — JSON job ingestion, command dispatch, and JSON/DOT emission
//!   with deterministic byte-stable output.
//!
//! All arithmetic is exact (rationals); no floating point is used anywhere.
//! Every value is immutable after construction and every operation is a pure
//! function, so the whole crate is safe to use concurrently.

pub mod blowup;
pub mod cli;
pub mod depth;
pub mod flopatlas;
pub mod links;
pub mod models;
pub mod polyring;
pub mod qlattice;

/// Exact rational number used throughout the crate.
///
/// `i128` limbs comfortably cover the magnitudes arising from the table
/// sweeps and chart computations; arithmetic is exact and `Copy`.
pub type Rat = num::rational::Ratio<i128>;

/// Construct a `Rat` from an integer.
pub fn rat(n: i128) -> Rat {
    Rat::from_integer(n)
}

/// Construct a `Rat` from numerator and denominator (`d != 0`).
pub fn ratio(n: i128, d: i128) -> Rat {
    Rat::new(n, d)
}

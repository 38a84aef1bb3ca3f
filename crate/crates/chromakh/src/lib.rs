//! Exact computation of categorified colored Jones invariants of framed
//! colored links, together with independent skein-theoretic oracles.
//!
//! The crate is organized around nine subsystems:
//!
//! * [`algebra`] — Laurent polynomials, quantum integers, exact fields,
//!   sparse matrices, based chain complexes and Gaussian-elimination
//!   reductions onto homology.
//! * [`diagram`] — combinatorial planar link diagrams (rotation-system
//!   graphs with signed crossings), PD-code parsing, cabling, sub-cable
//!   extraction, Reidemeister/Morse moves and contraction movies.
//! * [`khovanov`] — the cube of resolutions of a diagram over a field and
//!   its bigraded homology with reduction data.
//! * [`cobordism`] — chain maps induced by elementary cobordisms and
//!   Reidemeister moves, movie composition, annulus-contraction maps, and
//!   the saddle-merge map of colored complexes.
//! * [`pairings`] — k-pairings of n dots, the arrow poset, the sign rule,
//!   and the satisfactory-sign solver.
//! * [`colored`] — assembly of the colored complexes from cable homologies
//!   and annulus maps, in four variants.
//! * [`sl2res`] — the resolution of an irreducible sl(2) representation by
//!   tensor powers of the defining representation.
//! * [`reduced`] — the reduced colored theory over F2 via the marked cube
//!   of a cut-open cable tangle.
//! * [`oracle`] — Kauffman bracket state sums, the cabling formula for the
//!   colored Jones polynomial, and a Temperley–Lieb engine with
//!   Jones–Wenzl projectors.

pub mod algebra;
pub mod cobordism;
pub mod colored;
pub mod diagram;
pub mod khovanov;
pub mod oracle;
pub mod pairings;
pub mod reduced;
pub mod sl2res;
pub mod verify;

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed PD code: {0}")]
    MalformedPD(String),
    #[error("diagram is not planar: {0}")]
    NonPlanar(String),
    #[error("inconsistent edge orientations: {0}")]
    OrientationInconsistent(String),
    #[error("exact division failed: {0}")]
    NonDivisible(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("unknown component: {0}")]
    UnknownComponent(String),
    #[error("pairing does not match cable colors: {0}")]
    PairingMismatch(String),
    #[error("strands are not an adjacent pair: {0}")]
    NonAdjacentPair(String),
    #[error("generated move does not apply: {0}")]
    MoveValidationFailed(String),
    #[error("invalid move site: {0}")]
    InvalidSite(String),
    #[error("saddle between components of unequal color: {0}")]
    ColorMismatch(String),
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("not a cover in the pairing poset: {0}")]
    NotACover(String),
    #[error("square constraints are inconsistent: {0}")]
    InconsistentSquares(String),
    #[error("square composites are not proportional: {0}")]
    NonProportionalSquare(String),
    #[error("projector couples nontrivially with more than one matching: {0}")]
    AmbiguousE(String),
    #[error("position out of range: {0}")]
    OutOfRange(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("computation exceeds the configured size limit: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;

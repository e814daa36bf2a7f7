//! Exact-arithmetic toolkit for point configurations in the projective plane
//! whose connecting lines are pierced by a small point set.
//!
//! Everything verdict-bearing runs over exact fields (arbitrary-precision
//! rationals or prime fields); floating point appears only in SVG rendering.
//!
//! The main pieces:
//!
//! * [`plane`] — projective incidence geometry: collinearity, general
//!   position, determined lines, piercing checks.
//! * [`group`] — abelian-group algebra: sumsets, restricted sumsets,
//!   stabilizers, coset recovery, and exhaustive small-group oracles.
//! * [`cubic`] — short Weierstrass curves with the chord–tangent group law.
//! * [`conic`] — the quadric-plus-line group: exact parametrizations of the
//!   circle, parabola and hyperbola with their collinearity bridges.
//! * [`constructions`] — generators for the extremal configurations
//!   (rotated polygon unions, bipartite direction-saturating families,
//!   small sporadic instances, curve-coset instances over prime fields).
//! * [`analyzer`] — the structure-recovery pipelines: piercing verdicts,
//!   sumset gates, subgroup and coset recovery, exact minimum piercing.
//! * [`doc`] / [`svg`] — the JSON configuration format and figure output
//!   used by the `pierce` command-line tool.

pub mod analyzer;
pub mod conic;
pub mod constructions;
pub mod cubic;
pub mod doc;
pub mod field;
pub mod group;
pub mod plane;
pub mod selftest;
pub mod svg;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Arguments belong to different fields (e.g. F_5 vs F_7).
    #[error("arguments come from different fields")]
    MixedFields,
    /// Structurally invalid input for the requested operation.
    #[error("degenerate input: {0}")]
    Degenerate(String),
    /// Caller violated a documented precondition.
    #[error("usage error: {0}")]
    Usage(String),
    /// Group-valued arguments come from different groups.
    #[error("sets come from different groups")]
    GroupMismatch,
    /// A point claimed to be on a curve is not.
    #[error("point is not on the curve")]
    OffCurve,
    /// The operation is not available for this field or representation.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Configuration document failed to parse or validate.
    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;

//! Exact enumeration of maximal independent sets (MIS) on rectangular grid
//! graphs.
//!
//! The engine converts each MIS of an m x n grid into a tiling by 16
//! edge-labeled unit tiles, encodes one row of edge labels as a base-3 word,
//! and counts tilings by iterating a sparse 3^m x 3^m transfer matrix whose
//! entries are monomials in z. The result is the partition function
//! P(z) = sum of k(t) z^t where k(t) counts the MISs with t vertices; its
//! value at z = 1 is the total number of MISs, and the low-order term gives
//! the minimum independent dominating sets.
//!
//! Modules:
//! - [`poly`]: sparse big-integer counting polynomials
//! - [`states`]: base-3 edge-label words and their two orderings
//! - [`mosaic`]: the tile system, MIS <-> tiling conversion, brute-force oracle
//! - [`barmatrix`]: single-row state matrices and boundary vectors
//! - [`engine`]: partition function and MIS counts via vector iteration
//! - [`entropy`]: growth-rate estimates for the MIS count per site

pub mod barmatrix;
pub mod engine;
pub mod entropy;
pub mod mosaic;
pub mod poly;
pub mod states;

pub use barmatrix::{BarMatrices, BoundaryVector, StateMonomialMatrix};
pub use engine::Transfer;
pub use entropy::EntropyEstimate;
pub use mosaic::{Mosaic, MosaicTile, VertexSet};
pub use poly::CountPolynomial;
pub use states::{BarState, Letter};

use std::fmt;

/// Grid position as (column, row), both 1-based; column 1 is leftmost and
/// row 1 is the bottom row.
pub type Cell = (u32, u32);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// The zero polynomial has no minimum term; a zero partition function
    /// would mean "no MIS exists", which cannot happen for a valid grid.
    ZeroPolynomial,
    /// State rank outside 1..=3^width, or unsupported width.
    IndexOutOfRange { width: u32, index: u64 },
    /// Width exceeds the matrix budget; 3^width rows would be materialized.
    WidthLimit { width: u32, limit: u32 },
    /// Width exceeds what the tile-chain enumeration oracle accepts.
    BarOracleWidthLimit { width: u32, limit: u32 },
    /// Grid has more cells than the brute-force enumeration cap.
    OracleCellLimit { cells: u64, limit: u64 },
    /// Two selected vertices are adjacent; the set is not independent.
    NotIndependent { at: Cell },
    /// An unselected vertex has no selected neighbor; the set is not maximal.
    NotDominated { at: Cell },
    /// A pair of adjacent tile edges is not labeled a/c or b/b.
    MosaicAdjacency { between: (Cell, Cell) },
    /// A boundary edge is labeled c.
    MosaicBoundary { at: Cell },
    /// Joined tilings must have equal height.
    HeightMismatch { left: u32, right: u32 },
    /// Malformed polynomial JSON.
    PolyFormat(String),
    /// Malformed bar-state text.
    StateFormat(String),
    /// Malformed mosaic / vertex-set / digit-array text, with 1-based
    /// position of the first violation.
    TextFormat { line: usize, col: usize, msg: String },
}

impl Error {
    /// Distinguishes "refused for resource reasons" from invalid input, so
    /// callers can map the two to different exit codes.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::WidthLimit { .. }
                | Error::BarOracleWidthLimit { .. }
                | Error::OracleCellLimit { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroPolynomial => {
                write!(f, "zero polynomial has no terms (no MIS exists)")
            }
            Error::IndexOutOfRange { width, index } => {
                write!(f, "state index {index} out of range for width {width}")
            }
            Error::WidthLimit { width, limit } => write!(
                f,
                "width {width} exceeds the matrix budget (limit {limit}; 3^{width} = {} rows requested)",
                if *width <= 40 { 3u128.pow(*width) } else { u128::MAX }
            ),
            Error::BarOracleWidthLimit { width, limit } => write!(
                f,
                "width {width} exceeds the tile-chain oracle limit {limit}"
            ),
            Error::OracleCellLimit { cells, limit } => write!(
                f,
                "grid with {cells} cells exceeds the brute-force oracle limit {limit}"
            ),
            Error::NotIndependent { at } => write!(
                f,
                "not independent: selected vertex ({}, {}) has a selected neighbor",
                at.0, at.1
            ),
            Error::NotDominated { at } => write!(
                f,
                "not maximal: vertex ({}, {}) is unselected and has no selected neighbor",
                at.0, at.1
            ),
            Error::MosaicAdjacency { between } => write!(
                f,
                "adjacency rule violated between tiles ({}, {}) and ({}, {})",
                between.0 .0, between.0 .1, between.1 .0, between.1 .1
            ),
            Error::MosaicBoundary { at } => write!(
                f,
                "boundary state requirement violated: tile ({}, {}) has a boundary edge labeled c",
                at.0, at.1
            ),
            Error::HeightMismatch { left, right } => {
                write!(f, "cannot join tilings of heights {left} and {right}")
            }
            Error::PolyFormat(msg) => write!(f, "polynomial format: {msg}"),
            Error::StateFormat(msg) => write!(f, "state format: {msg}"),
            Error::TextFormat { line, col, msg } => {
                write!(f, "line {line}, column {col}: {msg}")
            }
        }
    }
}

impl std::error::Error for Error {}

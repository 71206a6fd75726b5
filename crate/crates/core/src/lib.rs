//! Desk-scale analysis of extreme points of the closed unit ball in direct
//! sums of matrix factors and shift factors.
//!
//! The crate classifies contractions (extreme / not extreme, with central
//! projection data or an explicit midpoint certificate), decomposes
//! isometries into unitary and shift parts, upgrades similarity of
//! isometries to unitary equivalence, compares projections, and writes any
//! contraction as the average of two extreme points. Shift factors are
//! modeled by the computable class of Laurent-polynomial Toeplitz operators
//! with finitely supported corrections.

pub mod algebra;
pub mod error;
pub mod numerics;
pub mod shift;

pub use algebra::{
    central_projection_element, compress, ideal_distance, operator_norm, operator_norm_report,
    quotient_map, AlgebraElement, AlgebraShape, BlockIdeal, BlockPayload, BlockShape,
    CentralProjection, NormReport,
};
pub use error::{CoreError, Result};
pub use numerics::{CMat, SvdResult, Tolerance, C64};
pub use shift::{FinitePerturbation, LaurentSymbol, ShiftClassOperator};

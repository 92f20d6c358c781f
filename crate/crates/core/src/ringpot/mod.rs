//! Ring potential of an axisymmetric vortex ring and the reduced-problem
//! residuals of configurations placed near the common radius `α₀`.

mod elliptic;
mod potential;
mod reduced;

pub use elliptic::{ellip_e, ellip_e_comp, ellip_k, ellip_k_comp};
pub use potential::{
    kappa_sq, near_field_asymptote, near_field_report, potential_a, radial_derivative,
    HalfPlanePoint, NearFieldRow,
};
pub use reduced::{
    alpha0, embed, reduced_residual, reduced_residual_elliptic, ReducedInstance, ReducedResidual,
};

use crate::balance::BalanceError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RingError {
    #[error("{func}({s}) is outside the domain")]
    OutOfDomain { func: &'static str, s: f64 },
    #[error("points must lie in the open half plane x1 > 0")]
    NotInHalfPlane,
    #[error("evaluation point coincides with the ring center")]
    AtCenter,
    #[error("alpha0 is undefined for m = n")]
    EqualCounts,
    #[error("eps must lie in (0, 1), got {0}")]
    InvalidEps(f64),
    #[error("embedded point {index} has first coordinate {value} <= 0")]
    LeavesHalfPlane { index: usize, value: f64 },
    #[error("embedded points {0} and {1} coincide")]
    CoincidentEmbedded(usize, usize),
    #[error(transparent)]
    Balance(#[from] BalanceError),
}

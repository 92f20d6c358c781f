//! The generalized Adler–Moser sequence and its exact identities.

mod darboux;
mod identities;
mod normalize;
mod sequence;

pub use darboux::{darboux_transform, DarbouxOde, DarbouxResult};
pub use identities::{
    jacobi_residual, ode_residual, refi_residual, verify_ode_solution, verify_pq, verify_refi,
    verify_three_term, w_one_residual,
};
pub use normalize::{normalized_pair, normalizing_shift, translation_between, NormalizedPair};
pub use sequence::{
    gen_recurrence, gen_wronskian, norm_const, omega, shift_sequence, wronskian_k, AMSequence,
    Route, DEFAULT_MAX_INDEX,
};

use crate::exactalg::ExactError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("index {0} is out of range")]
    IndexOutOfRange(usize),
    #[error("recurrence has no polynomial solution for these inputs")]
    NoPolynomialSolution,
    #[error("Wronskian and recurrence routes disagree at n = {0}")]
    RouteMismatch(usize),
    #[error("polynomial must be nonzero")]
    ZeroPolynomial,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal arithmetic inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

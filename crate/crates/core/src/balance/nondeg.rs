use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use super::{jacobian, BalanceError, VortexConfig};

/// Relative threshold under which a singular value counts as zero.
pub const DEFAULT_KERNEL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NondegReport {
    /// Descending.
    pub singular_values: Vec<f64>,
    /// Number of `σ_k < tol·σ_max`.
    pub kernel_dim: usize,
    /// `‖J·(1,…,1)‖ / ‖J‖`.
    pub translation_residual: f64,
    pub translation_aligned: bool,
    /// `‖Jᵀ·(1,…,1)‖ / ‖J‖`.
    pub transpose_kernel_residual: f64,
    pub transpose_kernel_aligned: bool,
    /// `‖Jᵀ·τ‖ / ‖J‖` with `τ = (1,…,1,−1,…,−1)`.
    pub signed_transpose_kernel_residual: f64,
    pub signed_transpose_kernel_aligned: bool,
}

impl NondegReport {
    /// A single translation direction in the kernel.
    pub fn is_nondegenerate(&self) -> bool {
        self.kernel_dim == 1
    }
}

pub fn nondegeneracy(cfg: &VortexConfig, tol: f64) -> Result<NondegReport, BalanceError> {
    let j = jacobian(cfg)?;
    Ok(nondegeneracy_of_matrix(&j, &cfg.orientations(), tol))
}

/// Spectrum and kernel checks for any square complex matrix; `tau` is the
/// signed vector tested against the transposed kernel.
pub fn nondegeneracy_of_matrix(j: &DMatrix<Complex64>, tau: &[f64], tol: f64) -> NondegReport {
    let n = j.nrows();
    let mut sv: Vec<f64> = j.clone().singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let sigma_max = sv.first().copied().unwrap_or(0.0);
    let kernel_dim = sv.iter().filter(|&&s| s < tol * sigma_max).count();

    let ones = DVector::from_element(n, Complex64::new(1.0, 0.0));
    let signed = DVector::from_iterator(n, tau.iter().map(|&t| Complex64::new(t, 0.0)));
    let scale = if sigma_max > 0.0 { sigma_max } else { 1.0 };
    let jt = j.transpose();
    let translation_residual = (j * &ones).norm() / scale;
    let transpose_kernel_residual = (&jt * &ones).norm() / scale;
    let signed_transpose_kernel_residual = (&jt * &signed).norm() / scale;

    NondegReport {
        singular_values: sv,
        kernel_dim,
        translation_residual,
        translation_aligned: translation_residual < tol,
        transpose_kernel_residual,
        transpose_kernel_aligned: transpose_kernel_residual < tol,
        signed_transpose_kernel_residual,
        signed_transpose_kernel_aligned: signed_transpose_kernel_residual < tol,
    }
}

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{BalanceError, VortexConfig};

fn check_distinct(z: &[Complex64]) -> Result<(), BalanceError> {
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            if z[i] == z[j] {
                return Err(BalanceError::CoincidentPoints(i, j));
            }
        }
    }
    Ok(())
}

/// `F_k` for every equation, `a`-equations first.
pub fn lhs(cfg: &VortexConfig) -> Result<Vec<Complex64>, BalanceError> {
    let z = cfg.points();
    check_distinct(&z)?;
    let tau = cfg.orientations();
    Ok((0..z.len())
        .map(|k| {
            (0..z.len())
                .filter(|&j| j != k)
                .map(|j| tau[j] / (z[k] - z[j]))
                .sum()
        })
        .collect())
}

/// `F_k − rhs_k`.
pub fn residual(cfg: &VortexConfig) -> Result<Vec<Complex64>, BalanceError> {
    Ok(lhs(cfg)?
        .into_iter()
        .zip(cfg.rhs())
        .map(|(f, r)| f - r)
        .collect())
}

/// `Σ_k τ_k F_k`, which vanishes identically (pairwise cancellation).
pub fn tau_weighted_sum(cfg: &VortexConfig) -> Result<Complex64, BalanceError> {
    Ok(lhs(cfg)?
        .iter()
        .zip(cfg.orientations())
        .map(|(f, t)| f * t)
        .sum())
}

/// Complex Jacobian `∂F_k/∂z_j`. Off-diagonal entries are
/// `τ_j/(z_k − z_j)²`; the diagonal is minus the sum of its row, so every
/// row sums to zero.
pub fn jacobian(cfg: &VortexConfig) -> Result<DMatrix<Complex64>, BalanceError> {
    let z = cfg.points();
    check_distinct(&z)?;
    let tau = cfg.orientations();
    let n = z.len();
    let mut j = DMatrix::<Complex64>::zeros(n, n);
    for k in 0..n {
        let mut diag = Complex64::new(0.0, 0.0);
        for l in 0..n {
            if l == k {
                continue;
            }
            let d = z[k] - z[l];
            let e = tau[l] / (d * d);
            j[(k, l)] = e;
            diag -= e;
        }
        j[(k, k)] = diag;
    }
    Ok(j)
}

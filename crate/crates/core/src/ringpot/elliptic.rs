//! Complete elliptic integrals in parameter form,
//! `K(s) = ∫₀^{π/2} (1 − s sin²θ)^{−1/2} dθ` and likewise `E` with the
//! exponent `+1/2`, evaluated by the arithmetic-geometric mean.
//!
//! The `_comp` variants take the complementary parameter `s' = 1 − s`,
//! which keeps full relative accuracy when `s` is close to 1.

use std::f64::consts::FRAC_PI_2;

use super::RingError;

/// Returns `(AGM(1, √s'), Σ 2^{k−1} c_k²)` with `c_0² = 1 − s'`.
fn agm(sc: f64) -> (f64, f64) {
    let mut a = 1.0f64;
    let mut b = sc.sqrt();
    let mut sum = 0.5 * (1.0 - sc);
    let mut pow = 0.5;
    for _ in 0..64 {
        let c = 0.5 * (a - b);
        let next_a = 0.5 * (a + b);
        let next_b = (a * b).sqrt();
        pow *= 2.0;
        sum += pow * c * c;
        a = next_a;
        b = next_b;
        if (a - b).abs() <= 1e-15 * a {
            break;
        }
    }
    (a, sum)
}

pub fn ellip_k_comp(sc: f64) -> Result<f64, RingError> {
    if !(sc > 0.0 && sc <= 1.0) {
        return Err(RingError::OutOfDomain {
            func: "K",
            s: 1.0 - sc,
        });
    }
    Ok(FRAC_PI_2 / agm(sc).0)
}

pub fn ellip_e_comp(sc: f64) -> Result<f64, RingError> {
    if !(0.0..=1.0).contains(&sc) {
        return Err(RingError::OutOfDomain {
            func: "E",
            s: 1.0 - sc,
        });
    }
    if sc == 0.0 {
        return Ok(1.0);
    }
    let (a, sum) = agm(sc);
    Ok(FRAC_PI_2 / a * (1.0 - sum))
}

/// `K(s)` for `0 ≤ s < 1`.
pub fn ellip_k(s: f64) -> Result<f64, RingError> {
    if !(0.0..1.0).contains(&s) {
        return Err(RingError::OutOfDomain { func: "K", s });
    }
    ellip_k_comp(1.0 - s)
}

/// `E(s)` for `0 ≤ s ≤ 1`.
pub fn ellip_e(s: f64) -> Result<f64, RingError> {
    if !(0.0..=1.0).contains(&s) {
        return Err(RingError::OutOfDomain { func: "E", s });
    }
    ellip_e_comp(1.0 - s)
}

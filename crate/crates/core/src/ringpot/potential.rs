use std::f64::consts::{FRAC_PI_2, LN_2};

use serde::Serialize;

use super::{ellip_e_comp, ellip_k_comp, RingError};

/// A point of the meridian half plane: `x1` is the distance to the axis,
/// `x2` the axial coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HalfPlanePoint {
    pub x1: f64,
    pub x2: f64,
}

impl HalfPlanePoint {
    pub fn new(x1: f64, x2: f64) -> Self {
        Self { x1, x2 }
    }

    pub fn scaled(self, lambda: f64) -> Self {
        Self::new(lambda * self.x1, lambda * self.x2)
    }

    pub fn dist(self, other: Self) -> f64 {
        (self.x1 - other.x1).hypot(self.x2 - other.x2)
    }
}

/// `(κ², 1 − κ²)`, both computed without cancellation.
fn kappa_pair(a: HalfPlanePoint, x: HalfPlanePoint) -> (f64, f64) {
    let d2 = (x.x2 - a.x2).powi(2);
    let far = (x.x1 + a.x1).powi(2) + d2;
    let near = (x.x1 - a.x1).powi(2) + d2;
    (4.0 * a.x1 * x.x1 / far, near / far)
}

pub fn kappa_sq(a: HalfPlanePoint, x: HalfPlanePoint) -> f64 {
    kappa_pair(a, x).0
}

/// `(2 − m)K(m) − 2E(m)`. Below `m = 1/2` the closed form cancels to
/// `O(m²)`, so the power series `(π/2) Σ_{n≥2} a_{n−1}(n−1)/n · mⁿ` with
/// `a_k = ((1/2)_k / k!)²` is summed instead; all its terms are positive.
fn ring_bracket(m: f64, mc: f64) -> Result<f64, RingError> {
    if m < 0.5 {
        let mut a = 0.25;
        let mut pow = m * m;
        let mut sum = 0.0;
        for n in 2..200 {
            let nf = n as f64;
            let t = a * (nf - 1.0) / nf * pow;
            sum += t;
            if t <= 1e-17 * sum {
                break;
            }
            a *= ((2.0 * nf - 1.0) / (2.0 * nf)).powi(2);
            pow *= m;
        }
        return Ok(FRAC_PI_2 * sum);
    }
    Ok((2.0 - m) * ellip_k_comp(mc)? - 2.0 * ellip_e_comp(mc)?)
}

/// Potential at `x` of the ring through `a`.
pub fn potential_a(a: HalfPlanePoint, x: HalfPlanePoint) -> Result<f64, RingError> {
    if !(a.x1 > 0.0 && x.x1 > 0.0) {
        return Err(RingError::NotInHalfPlane);
    }
    let (k2, kc) = kappa_pair(a, x);
    if kc == 0.0 {
        return Err(RingError::AtCenter);
    }
    Ok((a.x1 / x.x1).sqrt() / k2.sqrt() * ring_bracket(k2, kc)?)
}

/// `ln(a₁/r) + 3 ln 2 − 2`.
pub fn near_field_asymptote(a1: f64, r: f64) -> f64 {
    (a1 / r).ln() + 3.0 * LN_2 - 2.0
}

/// `∂_r A` at distance `r` from `a` in direction `theta`, by central
/// differences with step `r·1e−4`.
pub fn radial_derivative(a: HalfPlanePoint, r: f64, theta: f64) -> Result<f64, RingError> {
    let h = r * 1e-4;
    let at = |rr: f64| {
        potential_a(
            a,
            HalfPlanePoint::new(a.x1 + rr * theta.cos(), a.x2 + rr * theta.sin()),
        )
    };
    Ok((at(r + h)? - at(r - h)?) / (2.0 * h))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NearFieldRow {
    pub r: f64,
    pub a_value: f64,
    pub asymptote: f64,
    pub error: f64,
    /// `error / ((r/a₁)·|ln(r/a₁)|)`.
    pub ratio: f64,
    pub radial_derivative: f64,
}

/// Compares `A` with its logarithmic asymptote along the ray `x2 = a2`
/// pointing away from the axis.
pub fn near_field_report(a: HalfPlanePoint, rs: &[f64]) -> Result<Vec<NearFieldRow>, RingError> {
    rs.iter()
        .map(|&r| {
            let x = HalfPlanePoint::new(a.x1 + r, a.x2);
            let a_value = potential_a(a, x)?;
            let asymptote = near_field_asymptote(a.x1, r);
            let error = (a_value - asymptote).abs();
            let t = r / a.x1;
            Ok(NearFieldRow {
                r,
                a_value,
                asymptote,
                error,
                ratio: error / (t * t.ln().abs()),
                radial_derivative: radial_derivative(a, r, 0.0)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x1: f64, x2: f64) -> HalfPlanePoint {
        HalfPlanePoint::new(x1, x2)
    }

    #[test]
    fn bracket_branches_meet() {
        use crate::ringpot::{ellip_e, ellip_k};
        for m in [0.3, 0.45, 0.4999, 0.5001] {
            let closed = (2.0 - m) * ellip_k(m).unwrap() - 2.0 * ellip_e(m).unwrap();
            let v = ring_bracket(m, 1.0 - m).unwrap();
            assert!((v - closed).abs() <= 1e-14 * closed, "m = {m}");
        }
        // leading term π m²/16
        let m = 1e-6;
        assert!(
            (ring_bracket(m, 1.0 - m).unwrap() / (std::f64::consts::PI * m * m / 16.0) - 1.0).abs()
                < 1e-6
        );
    }

    #[test]
    fn kappa_is_one_at_center() {
        assert_eq!(kappa_sq(p(1.3, -0.4), p(1.3, -0.4)), 1.0);
        assert!(kappa_sq(p(1.0, 0.0), p(1.0, 0.1)) < 1.0);
    }

    #[test]
    fn scaling_example() {
        let big = potential_a(p(2.0, 0.0), p(2.2, 0.4)).unwrap();
        let small = potential_a(p(1.0, 0.0), p(1.1, 0.2)).unwrap();
        assert!((big - small).abs() <= 1e-12 * small.abs());
    }

    #[test]
    fn near_field_value() {
        let v = potential_a(p(1.0, 0.0), p(1.001, 0.0)).unwrap();
        assert!((v - near_field_asymptote(1.0, 1e-3)).abs() <= 0.05);
        assert!((v - 6.987).abs() < 0.05);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(
            potential_a(p(1.0, 0.0), p(1.0, 0.0)),
            Err(RingError::AtCenter)
        );
        assert_eq!(
            potential_a(p(0.0, 0.0), p(1.0, 0.0)),
            Err(RingError::NotInHalfPlane)
        );
        assert_eq!(
            potential_a(p(1.0, 0.0), p(-1.0, 0.0)),
            Err(RingError::NotInHalfPlane)
        );
    }
}

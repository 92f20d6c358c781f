//! Generalized Adler–Moser polynomials and the multi-vortex-ring
//! configurations built from their roots.
//!
//! * [`exactalg`]: exact rationals, polynomials, rational functions,
//!   exponential polynomials and Wronskians.
//! * [`genpoly`]: the polynomial sequence (Wronskian and recurrence routes),
//!   normalized generating pairs and the exact identity checks.
//! * [`rootfind`]: square-freeness, common roots and simultaneous root
//!   iteration.
//! * [`balance`]: the balancing map, its Jacobian, nondegeneracy, Newton
//!   and random search.
//! * [`ringpot`]: complete elliptic integrals, the ring potential and the
//!   reduced-problem residuals.

pub mod balance;
pub mod exactalg;
pub mod genpoly;
pub mod ringpot;
pub mod rootfind;

pub use num_complex::Complex64;

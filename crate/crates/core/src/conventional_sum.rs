//! Second-order sum over excited states for the infinite square well of
//! width `2a`, and the calibration of the homogeneous coefficient `C'`
//! against it.
//!
//! Box states are indexed from `n = 1` (ground). Energies are in units of
//! `hbar^2 / (2 m a^2)`, positions in units of `a`, so each transition adds
//! `4 |<1|x'|n>|^2 / (E'_n - E'_1)` to `alpha'`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::dalgarno_lewis::{chi_bracket, trial_bracket};
use crate::error::{Error, Result};

/// One-term value as printed alongside the calibration.
pub const ONE_TERM_PRINTED: f64 = 0.070_137_1;

/// `16384 / (243 pi^6)`: the `1 -> 2` transition alone.
pub fn one_term_analytic() -> f64 {
    16384.0 / (243.0 * PI.powi(6))
}

/// Dipole matrix element `<1| x' |n>` for the box `-1 < x' < 1`.
pub fn dipole_element(n: u32) -> f64 {
    if n % 2 == 1 {
        return 0.0;
    }
    let nf = f64::from(n);
    let d = nf * nf - 1.0;
    // -8 L n / (pi^2 (n^2-1)^2) with L = 2
    -16.0 * nf / (PI * PI * d * d)
}

/// `E'_n = (n pi / 2)^2`.
pub fn box_energy(n: u32) -> f64 {
    let k = f64::from(n) * PI / 2.0;
    k * k
}

/// Contribution of the `1 -> n` transition to `alpha'`.
pub fn infinite_well_term(n: u32) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain(format!("excited-state index must be >= 2, got {n}")));
    }
    let x = dipole_element(n);
    Ok(4.0 * x * x / (box_energy(n) - box_energy(1)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InfiniteWellSum {
    /// Number of contributing (even-`n`) transitions included.
    pub num_terms: usize,
    pub partial_alpha_prime: f64,
    /// Contributions for `n = 2, 4, 6, ...`.
    pub term_values: Vec<f64>,
}

impl InfiniteWellSum {
    pub fn leading_fraction(&self) -> f64 {
        self.term_values[0] / self.partial_alpha_prime
    }
}

/// Partial sum over the first `num_terms` non-vanishing transitions.
pub fn infinite_well_alpha(num_terms: usize) -> Result<InfiniteWellSum> {
    if num_terms == 0 {
        return Err(Error::domain("at least one transition is required"));
    }
    let term_values = (1..=num_terms)
        .map(|k| infinite_well_term(2 * k as u32))
        .collect::<Result<Vec<_>>>()?;
    // ascending summation order: smallest terms first
    let partial_alpha_prime = term_values.iter().rev().sum();
    Ok(InfiniteWellSum { num_terms, partial_alpha_prime, term_values })
}

/// Coefficient `C'` for which the Dalgarno-Lewis `alpha'` at the
/// infinite-well point equals `target`. `alpha'` is affine in `C'` there.
pub fn calibrate_c(target_alpha_prime: f64) -> Result<f64> {
    if !target_alpha_prime.is_finite() {
        return Err(Error::domain(format!("target must be finite, got {target_alpha_prime}")));
    }
    let g = std::f64::consts::FRAC_PI_2;
    let offset = trial_bracket(g);
    let slope = chi_bracket(g, 1.0);
    if !(slope.abs() > 1e-300) {
        return Err(Error::numerical(format!("degenerate affine coefficient {slope}")));
    }
    Ok((target_alpha_prime - offset) / slope)
}

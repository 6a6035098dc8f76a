//! The two limiting cases of the finite well: the attractive delta potential
//! (`a -> 0`, `V0 -> inf` with `a V0` fixed) and the infinite well
//! (`gamma0 -> pi/2`).

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::dalgarno_lewis::{alpha1_prime, alpha2_prime, alpha2_t_prime, dimensionful};
use crate::error::{Error, Result};
use crate::numerics::extrapolate::{polynomial_limit_at_zero, richardson};
use crate::well_spectrum::{GroundState, WellSpec};

/// Halving schedule toward the delta potential, in `hbar = m = q = 1` units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaLimitConfig {
    pub initial_half_width: f64,
    pub initial_depth: f64,
    pub steps: usize,
}

impl Default for DeltaLimitConfig {
    fn default() -> Self {
        // R = 1 at the start
        Self { initial_half_width: 1.0, initial_depth: 0.5, steps: 12 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeltaLimitSequence {
    pub steps: usize,
    pub a_values: Vec<f64>,
    pub v0_values: Vec<f64>,
    pub strengths: Vec<f64>,
    /// `alpha1 hbar^2 k0^4 / (m q^2)` per step.
    pub alpha1_scaled: Vec<f64>,
    /// `alpha2` in the same scaling.
    pub alpha2_scaled: Vec<f64>,
    pub alpha2_t_scaled: Vec<f64>,
    /// `N^2 cos^2(K0 a) / k0` per step; tends to 1.
    pub edge_density_ratio: Vec<f64>,
    /// Successive-difference ratios of `alpha1_scaled`; about 1/2 for
    /// first-order convergence in `a`.
    pub difference_ratios: Vec<f64>,
    pub alpha1_extrapolated: f64,
    pub alpha2_extrapolated: f64,
    pub alpha2_t_extrapolated: f64,
    pub edge_density_extrapolated: f64,
}

pub fn delta_limit(config: &DeltaLimitConfig) -> Result<DeltaLimitSequence> {
    let DeltaLimitConfig { initial_half_width: a0, initial_depth: v0, steps } = *config;
    let start = WellSpec::natural(a0, v0).map_err(|e| Error::config(e.to_string()))?;
    if start.strength() < 0.01 {
        return Err(Error::config(format!(
            "initial strength R = {} is below 0.01",
            start.strength()
        )));
    }
    if steps < 8 {
        return Err(Error::config(format!("need at least 8 halving steps, got {steps}")));
    }
    let final_a = a0 / 2f64.powi(steps as i32 - 1);
    if final_a < 1e-12 * a0 {
        return Err(Error::config(format!(
            "{steps} halvings drive the half-width below 1e-12 of its start"
        )));
    }

    let mut seq = DeltaLimitSequence {
        steps,
        a_values: Vec::with_capacity(steps),
        v0_values: Vec::with_capacity(steps),
        strengths: Vec::with_capacity(steps),
        alpha1_scaled: Vec::with_capacity(steps),
        alpha2_scaled: Vec::with_capacity(steps),
        alpha2_t_scaled: Vec::with_capacity(steps),
        edge_density_ratio: Vec::with_capacity(steps),
        difference_ratios: Vec::new(),
        alpha1_extrapolated: f64::NAN,
        alpha2_extrapolated: f64::NAN,
        alpha2_t_extrapolated: f64::NAN,
        edge_density_extrapolated: f64::NAN,
    };

    for i in 0..steps {
        let scale = 2f64.powi(i as i32);
        let spec = WellSpec::natural(a0 / scale, v0 * scale)?;
        let state = spec.ground_state()?;
        let k_out = state.beta0 / spec.half_width;
        let to_scaled = k_out.powi(4) * spec.hbar * spec.hbar / (spec.mass * spec.charge * spec.charge);
        let n_sq = state.n_prime_sq / spec.half_width;
        let c = state.gamma0.cos();

        seq.a_values.push(spec.half_width);
        seq.v0_values.push(spec.depth);
        seq.strengths.push(state.strength);
        seq.alpha1_scaled.push(dimensionful::alpha1(&spec, &state) * to_scaled);
        seq.alpha2_scaled.push(dimensionful::alpha2(&spec, &state) * to_scaled);
        seq.alpha2_t_scaled.push(dimensionful::alpha2_t(&spec, &state) * to_scaled);
        seq.edge_density_ratio.push(n_sq * c * c / k_out);
    }

    seq.difference_ratios = seq
        .alpha1_scaled
        .windows(3)
        .map(|w| (w[1] - w[2]) / (w[0] - w[1]))
        .collect();

    let last_two = |v: &[f64]| richardson(v[v.len() - 2], v[v.len() - 1], 2.0, 1.0);
    seq.alpha1_extrapolated = last_two(&seq.alpha1_scaled);
    seq.alpha2_extrapolated = last_two(&seq.alpha2_scaled);
    seq.alpha2_t_extrapolated = last_two(&seq.alpha2_t_scaled);
    seq.edge_density_extrapolated = last_two(&seq.edge_density_ratio);
    Ok(seq)
}

pub const DEFAULT_EPSILONS: [f64; 4] = [1e-3, 5e-4, 2.5e-4, 1.25e-4];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InfiniteWellLimit {
    /// Offsets `pi/2 - gamma0`.
    pub epsilons: Vec<f64>,
    pub alpha1: Vec<f64>,
    pub alpha2: Vec<f64>,
    pub alpha2_t: Vec<f64>,
    pub alpha1_limit: f64,
    pub alpha2_limit: f64,
    pub alpha2_t_limit: f64,
}

/// Evaluates the closed forms at `gamma0 = pi/2 - eps` and extrapolates to
/// `eps = 0` through the full Richardson tableau.
pub fn infinite_well_limit(epsilons: &[f64]) -> Result<InfiniteWellLimit> {
    if epsilons.len() < 3 {
        return Err(Error::config(format!("need at least 3 offsets, got {}", epsilons.len())));
    }
    if epsilons.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
        return Err(Error::config("offsets must be finite and positive"));
    }
    if epsilons.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::config("offsets must be strictly decreasing"));
    }
    let smallest = epsilons[epsilons.len() - 1];
    if smallest < 1e-9 {
        return Err(Error::numerical(format!(
            "offset {smallest:e} is too small for a stable tan(gamma0)"
        )));
    }

    let mut out = InfiniteWellLimit {
        epsilons: epsilons.to_vec(),
        alpha1: Vec::new(),
        alpha2: Vec::new(),
        alpha2_t: Vec::new(),
        alpha1_limit: f64::NAN,
        alpha2_limit: f64::NAN,
        alpha2_t_limit: f64::NAN,
    };
    for &eps in epsilons {
        let state = GroundState::from_gamma(FRAC_PI_2 - eps)?;
        out.alpha1.push(alpha1_prime(&state));
        out.alpha2.push(alpha2_prime(&state));
        out.alpha2_t.push(alpha2_t_prime(&state));
    }
    out.alpha1_limit = polynomial_limit_at_zero(epsilons, &out.alpha1);
    out.alpha2_limit = polynomial_limit_at_zero(epsilons, &out.alpha2);
    out.alpha2_t_limit = polynomial_limit_at_zero(epsilons, &out.alpha2_t);
    Ok(out)
}

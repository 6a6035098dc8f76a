//! Dalgarno-Lewis construction of the first-order response function and the
//! closed-form polarizabilities that follow from it.
//!
//! The response function is kept in reduced form: with `x' = x / a`,
//!
//! ```text
//! phi(x) = (m q eps a^3 N / (2 hbar^2)) * phi'(x'),
//! ```
//!
//! so the field strength never enters numerically. `phi'` is odd and piecewise:
//!
//! ```text
//! x' > 1 :   cos(g) e^{-b (x'-1)} [x'^2 / b + x' / b^2]
//! |x'| < 1:  -[x'^2 sin(g x') / g + x' cos(g x') / g^2 + C' sin(g x') / g]
//! ```
//!
//! with `g = gamma0`, `b = beta0`. The inner piece is the particular solution
//! plus a multiple `C'` of the homogeneous odd solution; the default
//! `C' = -(pi/2)^2 / g^2` is the value calibrated on the infinite well.
//!
//! All polarizabilities are in units of `g_unit = m q^2 a^4 / hbar^2`, and
//! `alpha' = N'^2 * integral of x' u(x') phi'(x')` where `u` is the
//! unnormalized ground-state profile.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::quadrature::{integrate, QuadOptions};
use crate::numerics::sum::compensated_sum;
use crate::well_spectrum::{GroundState, WellSpec};

/// `(pi/2)^2`.
pub const HALF_PI_SQ: f64 = FRAC_PI_2 * FRAC_PI_2;

/// Printed infinite-well polarizability used by the wide-well approximation.
pub const INFINITE_WELL_ALPHA_PRINTED: f64 = 0.070_224_7;

/// The calibrated homogeneous-term coefficient `C' = -(pi/2)^2 / gamma0^2`.
pub fn default_c_prime(gamma0: f64) -> f64 {
    -HALF_PI_SQ / (gamma0 * gamma0)
}

/// How [`PhiReduced::ode_residual_outer`] and friends obtain `d^2 phi'/dx'^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SecondDerivative {
    Analytic,
    /// Plain three-point central difference with the given step.
    CentralDifference { step: f64 },
    /// Central differences at `step` and `step / 2` combined to cancel the
    /// `O(h^2)` term.
    RichardsonDifference { step: f64 },
}

/// Reduced Dalgarno-Lewis response function for one ground state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhiReduced {
    state: GroundState,
    c_prime: f64,
}

impl PhiReduced {
    pub fn new(state: GroundState) -> Self {
        Self { state, c_prime: default_c_prime(state.gamma0) }
    }

    /// Same construction with an explicit homogeneous coefficient.
    pub fn with_c_prime(state: GroundState, c_prime: f64) -> Self {
        Self { state, c_prime }
    }

    pub fn state(&self) -> &GroundState {
        &self.state
    }

    pub fn c_prime(&self) -> f64 {
        self.c_prime
    }

    /// `phi'(x')`.
    pub fn eval(&self, x: f64) -> f64 {
        if x.abs() <= 1.0 {
            self.trial_inner(x) + self.chi(x)
        } else if x > 1.0 {
            self.outer(x)
        } else {
            -self.outer(-x)
        }
    }

    /// Particular solution inside the well (no homogeneous part).
    pub fn trial_inner(&self, x: f64) -> f64 {
        let g = self.state.gamma0;
        let (s, c) = (g * x).sin_cos();
        -(x * x * s / g + x * c / (g * g))
    }

    /// Homogeneous odd term `-C' sin(g x') / g`.
    pub fn chi(&self, x: f64) -> f64 {
        let g = self.state.gamma0;
        -self.c_prime * (g * x).sin() / g
    }

    /// Outer solution for `x' > 1`.
    fn outer(&self, x: f64) -> f64 {
        let GroundState { gamma0: g, beta0: b, .. } = self.state;
        g.cos() * (-b * (x - 1.0)).exp() * (x * x / b + x / (b * b))
    }

    fn outer_d1(&self, x: f64) -> f64 {
        let GroundState { gamma0: g, beta0: b, .. } = self.state;
        let p = x * x / b + x / (b * b);
        let dp = 2.0 * x / b + 1.0 / (b * b);
        g.cos() * (-b * (x - 1.0)).exp() * (dp - b * p)
    }

    fn outer_d2(&self, x: f64) -> f64 {
        let GroundState { gamma0: g, beta0: b, .. } = self.state;
        let p = x * x / b + x / (b * b);
        let dp = 2.0 * x / b + 1.0 / (b * b);
        let d2p = 2.0 / b;
        g.cos() * (-b * (x - 1.0)).exp() * (d2p - 2.0 * b * dp + b * b * p)
    }

    fn inner_d1(&self, x: f64) -> f64 {
        let g = self.state.gamma0;
        let (s, c) = (g * x).sin_cos();
        let d_x2s = 2.0 * x * s + g * x * x * c;
        let d_xc = c - g * x * s;
        -(d_x2s / g + d_xc / (g * g)) - self.c_prime * c
    }

    fn inner_d2(&self, x: f64) -> f64 {
        let g = self.state.gamma0;
        let (s, c) = (g * x).sin_cos();
        let d2_x2s = 2.0 * s + 4.0 * g * x * c - g * g * x * x * s;
        let d2_xc = -2.0 * g * s - g * g * x * c;
        -(d2_x2s / g + d2_xc / (g * g)) + self.c_prime * g * s
    }

    fn analytic_d2(&self, x: f64) -> f64 {
        if x.abs() < 1.0 {
            self.inner_d2(x)
        } else if x > 1.0 {
            self.outer_d2(x)
        } else {
            -self.outer_d2(-x)
        }
    }

    fn second_derivative<F: Fn(f64) -> f64>(f: F, x: f64, how: SecondDerivative, analytic: f64) -> f64 {
        let central = |h: f64| (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
        match how {
            SecondDerivative::Analytic => analytic,
            SecondDerivative::CentralDifference { step } => central(step),
            SecondDerivative::RichardsonDifference { step } => {
                (4.0 * central(0.5 * step) - central(step)) / 3.0
            }
        }
    }

    /// Residual of `(d^2/dx'^2 - beta0^2) phi' + 4 x' u(x') = 0` for `|x'| > 1`.
    pub fn ode_residual_outer(&self, x: f64, how: SecondDerivative) -> Result<f64> {
        if !(x.abs() > 1.0) {
            return Err(Error::domain(format!("outer residual needs |x'| > 1, got {x}")));
        }
        if let SecondDerivative::CentralDifference { step } | SecondDerivative::RichardsonDifference { step } = how {
            if x.abs() - step <= 1.0 {
                return Err(Error::domain(format!("difference stencil at {x} crosses the well edge")));
            }
        }
        let b = self.state.beta0;
        let d2 = Self::second_derivative(|t| self.eval(t), x, how, self.analytic_d2(x));
        Ok(d2 - b * b * self.eval(x) + 4.0 * x * self.state.psi0_shape(x))
    }

    /// Residual of `(d^2/dx'^2 + gamma0^2) phi' + 4 x' cos(gamma0 x') = 0` for
    /// `|x'| < 1`, covering both the particular and the homogeneous part.
    pub fn ode_residual_inner(&self, x: f64, how: SecondDerivative) -> Result<f64> {
        if !(x.abs() < 1.0) {
            return Err(Error::domain(format!("inner residual needs |x'| < 1, got {x}")));
        }
        let g = self.state.gamma0;
        let inner = |t: f64| self.trial_inner(t) + self.chi(t);
        let d2 = Self::second_derivative(inner, x, how, self.inner_d2(x));
        Ok(d2 + g * g * inner(x) + 4.0 * x * (g * x).cos())
    }

    /// Residual of the homogeneous equation `(d^2/dx'^2 + gamma0^2) chi = 0`.
    pub fn chi_residual(&self, x: f64, how: SecondDerivative) -> Result<f64> {
        if !(x.abs() < 1.0) {
            return Err(Error::domain(format!("chi residual needs |x'| < 1, got {x}")));
        }
        let g = self.state.gamma0;
        let analytic = self.c_prime * g * (g * x).sin();
        let d2 = Self::second_derivative(|t| self.chi(t), x, how, analytic);
        Ok(d2 + g * g * self.chi(x))
    }

    /// Value and slope discontinuity of `phi'` across `x' = 1`. The
    /// construction never enforces matching, so this is a diagnostic only.
    pub fn edge_jump(&self) -> EdgeJump {
        EdgeJump {
            value: self.outer(1.0) - (self.trial_inner(1.0) + self.chi(1.0)),
            slope: self.outer_d1(1.0) - self.inner_d1(1.0),
        }
    }

    /// `alpha2'` for the stored `C'`: trial bracket plus homogeneous bracket.
    pub fn alpha2_prime(&self) -> f64 {
        let g = self.state.gamma0;
        self.state.n_prime_sq * (trial_bracket(g) + chi_bracket(g, self.c_prime))
    }

    /// Fraction of `alpha2'` carried by the homogeneous term,
    /// `(alpha2' - alpha2_t') / alpha2'`.
    pub fn t_ratio(&self) -> Result<f64> {
        let g = self.state.gamma0;
        let chi = chi_bracket(g, self.c_prime);
        let total = trial_bracket(g) + chi;
        if total == 0.0 || !total.is_finite() {
            return Err(Error::UndefinedRatio(format!(
                "alpha2' vanishes at gamma0 = {g} with C' = {}",
                self.c_prime
            )));
        }
        Ok(chi / total)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EdgeJump {
    pub value: f64,
    pub slope: f64,
}

/// Inner-region bracket of the particular solution (multiplies `N'^2`).
pub fn trial_bracket(g: f64) -> f64 {
    let (s2, c2) = (2.0 * g).sin_cos();
    let g2 = g * g;
    let g3 = g2 * g;
    let g4 = g2 * g2;
    let g5 = g4 * g;
    compensated_sum([
        -1.0 / (3.0 * g2),
        c2 / (2.0 * g2),
        -5.0 * s2 / (4.0 * g3),
        -5.0 * c2 / (4.0 * g4),
        5.0 * s2 / (8.0 * g5),
    ])
}

/// Inner-region bracket of the homogeneous term `-C' sin(g x') / g`.
pub fn chi_bracket(g: f64, c_prime: f64) -> f64 {
    let (s2, c2) = (2.0 * g).sin_cos();
    c_prime * compensated_sum([c2 / (2.0 * g * g), -s2 / (4.0 * g * g * g)])
}

/// Full inner bracket with the calibrated `C'`, in the
/// `-1/(3g^2) + f1 cos 2g + f2 sin 2g` arrangement.
pub fn alpha2_bracket(g: f64) -> f64 {
    let (s2, c2) = (2.0 * g).sin_cos();
    let g2 = g * g;
    let g3 = g2 * g;
    let g4 = g2 * g2;
    let g5 = g4 * g;
    let f1 = compensated_sum([1.0 / (2.0 * g2), -5.0 / (4.0 * g4), -HALF_PI_SQ / (2.0 * g4)]);
    let f2 = compensated_sum([-5.0 / (4.0 * g3), 5.0 / (8.0 * g5), HALF_PI_SQ / (4.0 * g5)]);
    compensated_sum([-1.0 / (3.0 * g2), f1 * c2, f2 * s2])
}

/// Outer-region contribution `alpha1'`.
pub fn alpha1_prime(state: &GroundState) -> f64 {
    let b = state.beta0;
    let c = state.gamma0.cos();
    let bracket = 1.0 / (b * b) + 5.0 / (2.0 * b.powi(3)) + 5.0 / (2.0 * b.powi(4)) + 5.0 / (4.0 * b.powi(5));
    state.n_prime_sq * c * c * bracket
}

/// Inner-region contribution of the particular solution alone.
pub fn alpha2_t_prime(state: &GroundState) -> f64 {
    state.n_prime_sq * trial_bracket(state.gamma0)
}

/// Inner-region contribution with the calibrated homogeneous term.
pub fn alpha2_prime(state: &GroundState) -> f64 {
    state.n_prime_sq * alpha2_bracket(state.gamma0)
}

/// Total `alpha' = alpha1' + alpha2'`.
pub fn alpha_prime(state: &GroundState) -> f64 {
    alpha1_prime(state) + alpha2_prime(state)
}

/// Wide-infinite-well estimate `0.0702247 (1 + 1/R)^4`.
pub fn alpha_apr_prime(strength: f64) -> Result<f64> {
    if !(strength.is_finite() && strength > 0.0) {
        return Err(Error::domain(format!("well strength must be > 0, got {strength}")));
    }
    Ok(INFINITE_WELL_ALPHA_PRINTED * (1.0 + 1.0 / strength).powi(4))
}

pub fn t_ratio(state: &GroundState) -> Result<f64> {
    PhiReduced::new(*state).t_ratio()
}

/// Dalgarno-Lewis `alpha'` at the infinite-well point `gamma0 = pi/2`
/// (`N'^2 = 1`, no outer contribution) for a given homogeneous coefficient.
pub fn infinite_well_alpha_prime(c_prime: f64) -> f64 {
    trial_bracket(FRAC_PI_2) + chi_bracket(FRAC_PI_2, c_prime)
}

/// All closed-form quantities for one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolarizabilityBreakdown {
    pub gamma0: f64,
    pub beta0: f64,
    pub strength: f64,
    pub alpha1_prime: f64,
    pub alpha2_prime: f64,
    pub alpha2_t_prime: f64,
    pub alpha_prime: f64,
    pub alpha_apr_prime: f64,
    pub t_ratio: Option<f64>,
}

pub fn breakdown(state: &GroundState) -> PolarizabilityBreakdown {
    let alpha1 = alpha1_prime(state);
    let alpha2 = alpha2_prime(state);
    PolarizabilityBreakdown {
        gamma0: state.gamma0,
        beta0: state.beta0,
        strength: state.strength,
        alpha1_prime: alpha1,
        alpha2_prime: alpha2,
        alpha2_t_prime: alpha2_t_prime(state),
        alpha_prime: alpha1 + alpha2,
        alpha_apr_prime: alpha_apr_prime(state.strength).expect("solved states have R > 0"),
        t_ratio: t_ratio(state).ok(),
    }
}

/// Region-resolved result of integrating `<psi0| x' |phi'>` numerically.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureAlpha {
    pub left: f64,
    pub inner: f64,
    pub right: f64,
    /// Outer truncation point `1 + 40 / beta0`.
    pub cutoff: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

impl QuadratureAlpha {
    pub fn outer(&self) -> f64 {
        self.left + self.right
    }

    pub fn total(&self) -> f64 {
        self.left + self.inner + self.right
    }
}

fn quad_opts() -> QuadOptions {
    QuadOptions { abs_tol: 1e-300, rel_tol: 1e-13, max_intervals: 4000 }
}

fn three_region_integral<F>(state: &GroundState, f: F) -> Result<QuadratureAlpha>
where
    F: Fn(f64) -> f64,
{
    let cutoff = 1.0 + 40.0 / state.beta0;
    let region = |a: f64, b: f64, name: &str| {
        integrate(&f, a, b, quad_opts()).map_err(|e| {
            Error::numerical(format!(
                "{name} region [{a}, {b}] at gamma0 = {}: {e}",
                state.gamma0
            ))
        })
    };
    let left = region(-cutoff, -1.0, "left")?;
    let inner = region(-1.0, 1.0, "inner")?;
    let right = region(1.0, cutoff, "right")?;
    Ok(QuadratureAlpha {
        left: left.value,
        inner: inner.value,
        right: right.value,
        cutoff,
        error_estimate: left.error + inner.error + right.error,
        evaluations: left.evaluations + inner.evaluations + right.evaluations,
    })
}

/// `alpha'` of a response function by direct quadrature.
pub fn alpha_via_quadrature_of(phi: &PhiReduced) -> Result<QuadratureAlpha> {
    let s = *phi.state();
    let n = s.n_prime();
    three_region_integral(&s, |x| n * x * s.psi0(x) * phi.eval(x))
}

/// `alpha'` for the calibrated response function by direct quadrature.
pub fn alpha_via_quadrature(state: &GroundState) -> Result<QuadratureAlpha> {
    alpha_via_quadrature_of(&PhiReduced::new(*state))
}

/// `<psi0 | f>` over the whole line, with the same region split as the
/// polarizability integral.
pub fn overlap_with_psi0<F: Fn(f64) -> f64>(state: &GroundState, f: F) -> Result<f64> {
    Ok(three_region_integral(state, |x| state.psi0(x) * f(x))?.total())
}

/// `<psi0 | phi'>`; zero by parity.
pub fn orthogonality(phi: &PhiReduced) -> Result<f64> {
    overlap_with_psi0(phi.state(), |x| phi.eval(x))
}

/// Dimensionful forms for a concrete [`WellSpec`].
pub mod dimensionful {
    use super::*;

    struct Parts {
        a: f64,
        k_in: f64,
        k_out: f64,
        /// `m q^2 N^2 / hbar^2`
        prefactor: f64,
    }

    fn parts(spec: &WellSpec, state: &GroundState) -> Parts {
        let a = spec.half_width;
        let n_sq = state.n_prime_sq / a;
        Parts {
            a,
            k_in: state.gamma0 / a,
            k_out: state.beta0 / a,
            prefactor: spec.mass * spec.charge * spec.charge * n_sq / (spec.hbar * spec.hbar),
        }
    }

    /// Outer-region polarizability.
    pub fn alpha1(spec: &WellSpec, state: &GroundState) -> f64 {
        let Parts { a, k_in, k_out: k, prefactor } = parts(spec, state);
        let c = (k_in * a).cos();
        prefactor
            * c
            * c
            * (a.powi(3) / (k * k) + 5.0 * a * a / (2.0 * k.powi(3)) + 5.0 * a / (2.0 * k.powi(4))
                + 5.0 / (4.0 * k.powi(5)))
    }

    /// Inner-region polarizability of the particular solution alone.
    pub fn alpha2_t(spec: &WellSpec, state: &GroundState) -> f64 {
        let Parts { a, k_in: k, prefactor, .. } = parts(spec, state);
        let (s2, c2) = (2.0 * k * a).sin_cos();
        prefactor
            * compensated_sum([
                -a.powi(3) / (3.0 * k * k),
                a.powi(3) * c2 / (2.0 * k * k),
                -5.0 * a * a * s2 / (4.0 * k.powi(3)),
                -5.0 * a * c2 / (4.0 * k.powi(4)),
                5.0 * s2 / (8.0 * k.powi(5)),
            ])
    }

    /// Inner-region polarizability with `C = -(pi/2)^2 / K0^2`.
    pub fn alpha2(spec: &WellSpec, state: &GroundState) -> f64 {
        let Parts { a, k_in: k, prefactor, .. } = parts(spec, state);
        let (s2, c2) = (2.0 * k * a).sin_cos();
        let f1 = compensated_sum([
            a.powi(3) / (2.0 * k * k),
            -5.0 * a / (4.0 * k.powi(4)),
            -HALF_PI_SQ * a / (2.0 * k.powi(4)),
        ]);
        let f2 = compensated_sum([
            -5.0 * a * a / (4.0 * k.powi(3)),
            5.0 / (8.0 * k.powi(5)),
            HALF_PI_SQ / (4.0 * k.powi(5)),
        ]);
        prefactor * compensated_sum([-a.powi(3) / (3.0 * k * k), f1 * c2, f2 * s2])
    }

    /// Second-order ground-state energy shift `-alpha eps^2 / 2` in a field `eps`.
    pub fn energy_shift(spec: &WellSpec, state: &GroundState, field: f64) -> f64 {
        -0.5 * (alpha1(spec, state) + alpha2(spec, state)) * field * field
    }
}

//! Even-parity ground state of the finite square well.
//!
//! Everything is dimensionless: lengths in units of the half-width `a`
//! (`x' = x / a`), energies in units of `hbar^2 / (2 m a^2)`. The state is
//! fixed by the inner and outer wavenumbers `gamma0 = K0 a` and
//! `beta0 = k0 a`, tied together by
//!
//! ```text
//! gamma0 * tan(gamma0) = beta0,    gamma0^2 + beta0^2 = R^2,
//! ```
//!
//! where `R = sqrt(2 m a^2 V0) / hbar` is the well strength.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::roots::{find_root, RootOptions};

/// Largest inner wavenumber accepted by [`GroundState::from_gamma`]. Closer to
/// `pi/2` the tangent overflows useful precision; use the `limits` module.
pub const MAX_GAMMA: f64 = FRAC_PI_2 - 1e-9;

/// Dimensionful well parameters in any consistent unit system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WellSpec {
    /// Half-width `a`; the well occupies `-a < x < a`.
    pub half_width: f64,
    /// Depth `V0 > 0` of the attractive potential `-V0`.
    pub depth: f64,
    pub mass: f64,
    pub charge: f64,
    pub hbar: f64,
}

impl WellSpec {
    pub fn new(half_width: f64, depth: f64, mass: f64, charge: f64, hbar: f64) -> Result<Self> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::domain(format!("{name} must be finite and > 0, got {v}")))
            }
        };
        positive("half-width", half_width)?;
        positive("depth", depth)?;
        positive("mass", mass)?;
        positive("hbar", hbar)?;
        if !charge.is_finite() || charge == 0.0 {
            return Err(Error::domain(format!("charge must be finite and non-zero, got {charge}")));
        }
        let spec = Self { half_width, depth, mass, charge, hbar };
        let r = spec.strength();
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::domain(format!("well strength R = {r} is not finite and positive")));
        }
        Ok(spec)
    }

    /// Well in units with `hbar = m = q = 1`.
    pub fn natural(half_width: f64, depth: f64) -> Result<Self> {
        Self::new(half_width, depth, 1.0, 1.0, 1.0)
    }

    /// Dimensionless strength `R = sqrt(2 m a^2 V0) / hbar`.
    pub fn strength(&self) -> f64 {
        (2.0 * self.mass * self.depth).sqrt() * self.half_width / self.hbar
    }

    /// Polarizability unit `g = m q^2 a^4 / hbar^2`.
    pub fn polarizability_unit(&self) -> f64 {
        self.mass * self.charge * self.charge * self.half_width.powi(4) / (self.hbar * self.hbar)
    }

    /// Energy unit `hbar^2 / (2 m a^2)`.
    pub fn energy_unit(&self) -> f64 {
        self.hbar * self.hbar / (2.0 * self.mass * self.half_width * self.half_width)
    }

    pub fn ground_state(&self) -> Result<GroundState> {
        GroundState::from_strength(self.strength())
    }
}

/// Solved even-parity ground state in reduced units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GroundState {
    /// `K0 a`, in `(0, pi/2)`.
    pub gamma0: f64,
    /// `k0 a > 0`.
    pub beta0: f64,
    /// Well strength `R`.
    pub strength: f64,
    /// `N'^2 = a N^2`.
    pub n_prime_sq: f64,
    /// `E0 * 2 m a^2 / hbar^2 = -beta0^2`.
    pub energy_dimless: f64,
}

impl GroundState {
    /// Solves the transcendental system for a given well strength `R`.
    pub fn from_strength(r: f64) -> Result<Self> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::domain(format!("well strength must be finite and > 0, got {r}")));
        }
        // f(0) = -R < 0 and f -> +inf at min(R, pi/2): the even ground state
        // is the unique sign change on this bracket.
        let hi = r.min(FRAC_PI_2 - 1e-12);
        let f = |g: f64| g * g.tan() - ((r - g) * (r + g)).max(0.0).sqrt();
        // run to the last bit: near pi/2, beta0 moves by beta0^2 / gamma0
        // per unit change in gamma0
        let opts = RootOptions { abs_tol: 0.0, max_iter: 400 };
        let root = find_root(f, 0.0, hi, opts)?;
        let gamma0 = root.x;
        if gamma0 <= 0.0 {
            return Err(Error::numerical(format!("ground-state root collapsed to zero for R = {r}")));
        }
        // from the circle, so the strength residual is pure rounding
        let beta0 = ((r - gamma0) * (r + gamma0)).sqrt();
        Self::assemble(gamma0, beta0, r)
    }

    /// Builds the state from the inner wavenumber, `0 < gamma0 <= MAX_GAMMA`.
    pub fn from_gamma(gamma0: f64) -> Result<Self> {
        if !(gamma0.is_finite() && gamma0 > 0.0 && gamma0 <= MAX_GAMMA) {
            return Err(Error::domain(format!(
                "gamma0 must lie in (0, pi/2 - 1e-9], got {gamma0}"
            )));
        }
        let beta0 = gamma0 * gamma0.tan();
        Self::assemble(gamma0, beta0, gamma0.hypot(beta0))
    }

    fn assemble(gamma0: f64, beta0: f64, strength: f64) -> Result<Self> {
        let n_prime_sq = normalization_sq(gamma0, beta0)?;
        Ok(Self {
            gamma0,
            beta0,
            strength,
            n_prime_sq,
            energy_dimless: -beta0 * beta0,
        })
    }

    pub fn n_prime(&self) -> f64 {
        self.n_prime_sq.sqrt()
    }

    /// `gamma0 tan(gamma0) - beta0`.
    pub fn matching_residual(&self) -> f64 {
        self.gamma0 * self.gamma0.tan() - self.beta0
    }

    /// `gamma0^2 + beta0^2 - R^2`.
    pub fn strength_residual(&self) -> f64 {
        self.gamma0 * self.gamma0 + self.beta0 * self.beta0 - self.strength * self.strength
    }

    /// Reduced wavefunction `sqrt(a) psi0(x' a)`.
    pub fn psi0(&self, x: f64) -> f64 {
        self.n_prime() * self.psi0_shape(x)
    }

    /// Unnormalized profile: `cos(gamma0 x')` inside, matched exponential outside.
    pub fn psi0_shape(&self, x: f64) -> f64 {
        let ax = x.abs();
        if ax <= 1.0 {
            (self.gamma0 * x).cos()
        } else {
            self.gamma0.cos() * (-self.beta0 * (ax - 1.0)).exp()
        }
    }

    /// Logarithmic derivative of the inner solution at `x' = 1^-`.
    pub fn inner_log_slope(&self) -> f64 {
        -self.gamma0 * self.gamma0.tan()
    }

    /// Logarithmic derivative of the outer solution at `x' = 1^+`.
    pub fn outer_log_slope(&self) -> f64 {
        -self.beta0
    }
}

/// `N'^2 = 1 / [1 + sin(g) cos(g) / g + cos^2(g) / b]`.
pub fn normalization_sq(gamma0: f64, beta0: f64) -> Result<f64> {
    if !(gamma0.is_finite() && gamma0 > 0.0) {
        return Err(Error::domain(format!("gamma0 must be > 0, got {gamma0}")));
    }
    if !(beta0.is_finite() && beta0 > 0.0) {
        return Err(Error::domain(format!("beta0 must be > 0, got {beta0}")));
    }
    let (s, c) = gamma0.sin_cos();
    Ok(1.0 / (1.0 + s * c / gamma0 + c * c / beta0))
}

//! Brute-force cross-check: discretize `H0` on a box, diagonalize, and get
//! `alpha'` both from a finite sum over the discrete spectrum and from the
//! curvature of the ground energy in an applied field.
//!
//! Reduced units throughout: `x' = x / a`, energies in `hbar^2 / (2 m a^2)`,
//! so `H0 = -d^2/dx'^2 - R^2 [|x'| < 1]` and the dipole term is `-eps' x'`
//! with `eps' = 2 m q eps a^3 / hbar^2`. Then
//! `E0(eps') = E0 - alpha' eps'^2 / 4`.
//!
//! The grid always places the well edges on nodes, where the potential takes
//! its mean value `-R^2 / 2`; that keeps the scheme cleanly second order.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::extrapolate::{observed_order, richardson};
use crate::numerics::polyfit::fit_quadratic;
use crate::numerics::tridiagonal::SymTridiagonal;
use crate::well_spectrum::GroundState;

pub const DEFAULT_FIELDS: [f64; 5] = [-1e-2, -5e-3, 0.0, 5e-3, 1e-2];
pub const DEFAULT_POINTS: usize = 4000;
pub const DEFAULT_STATES: usize = 200;
pub const MAX_FIELD_HALVINGS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OracleWell {
    /// Finite well of strength `R` inside a hard-wall box.
    Finite { strength: f64 },
    /// Empty box of half-width 1: the infinite well itself.
    HardWall,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridOracleConfig {
    pub well: OracleWell,
    /// Box half-width `L` in units of `a`; ignored for [`OracleWell::HardWall`].
    pub box_half_width: f64,
    /// Requested number of grid intervals on `[-L, L]`; rounded so the well
    /// edges fall on nodes.
    pub num_points: usize,
    pub num_states: usize,
    pub field_values: Vec<f64>,
}

impl GridOracleConfig {
    /// Defaults for a finite well: `L = max(12, 1 + 40 / beta0)`.
    pub fn finite(strength: f64) -> Result<Self> {
        let state = GroundState::from_strength(strength)?;
        Ok(Self {
            well: OracleWell::Finite { strength },
            box_half_width: 12f64.max(1.0 + 40.0 / state.beta0),
            num_points: DEFAULT_POINTS,
            num_states: DEFAULT_STATES,
            field_values: DEFAULT_FIELDS.to_vec(),
        })
    }

    pub fn hard_wall() -> Self {
        Self {
            well: OracleWell::HardWall,
            box_half_width: 1.0,
            num_points: DEFAULT_POINTS,
            num_states: DEFAULT_STATES,
            field_values: DEFAULT_FIELDS.to_vec(),
        }
    }

    pub fn with_points(mut self, num_points: usize) -> Self {
        self.num_points = num_points;
        self
    }

    pub fn with_states(mut self, num_states: usize) -> Self {
        self.num_states = num_states;
        self
    }

    pub fn with_box(mut self, box_half_width: f64) -> Self {
        self.box_half_width = box_half_width;
        self
    }

    pub fn with_fields(mut self, field_values: Vec<f64>) -> Self {
        self.field_values = field_values;
        self
    }

    pub fn validate(&self) -> Result<Grid> {
        if self.num_points < 500 {
            return Err(Error::config(format!("num_points must be >= 500, got {}", self.num_points)));
        }
        if self.num_states < 50 {
            return Err(Error::config(format!("num_states must be >= 50, got {}", self.num_states)));
        }
        let mut sorted = self.field_values.clone();
        sorted.sort_by(f64::total_cmp);
        let symmetric = sorted
            .iter()
            .zip(sorted.iter().rev())
            .all(|(a, b)| (a + b).abs() <= 1e-15);
        if sorted.len() < 3 || !symmetric {
            return Err(Error::config("field values must be >= 3 values symmetric about 0"));
        }
        if sorted.iter().any(|f| !f.is_finite() || f.abs() > 1e-2) {
            return Err(Error::config("field values must satisfy |eps'| <= 1e-2"));
        }

        let (strength, half_width) = match self.well {
            OracleWell::HardWall => (0.0, 1usize),
            OracleWell::Finite { strength } => {
                let state = GroundState::from_strength(strength)?;
                let min_box = 1.0 + 30.0 / state.beta0;
                if !(self.box_half_width >= min_box) {
                    return Err(Error::config(format!(
                        "box half-width {} does not contain the tail (need >= {min_box:.3})",
                        self.box_half_width
                    )));
                }
                (strength, self.box_half_width.ceil() as usize)
            }
        };
        let span = 2 * half_width;
        let blocks = ((self.num_points as f64 / span as f64).round() as usize).max(1);
        let intervals = blocks * span;
        if self.num_states + 1 > intervals {
            return Err(Error::config(format!(
                "{} states requested from {} interior nodes",
                self.num_states,
                intervals - 1
            )));
        }
        Ok(Grid { strength, half_width, nodes_per_unit: blocks, intervals })
    }
}

/// Discretization actually used for a configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub strength: f64,
    /// Box half-width (integer multiple of `a`).
    pub half_width: usize,
    pub nodes_per_unit: usize,
    pub intervals: usize,
}

impl Grid {
    pub fn spacing(&self) -> f64 {
        1.0 / self.nodes_per_unit as f64
    }

    /// Same box with `nodes_per_unit` scaled by `2^k` (`k < 0` coarsens).
    fn doubled(&self, k: i32) -> Grid {
        let npu = if k >= 0 { self.nodes_per_unit << k } else { self.nodes_per_unit >> -k };
        Grid { nodes_per_unit: npu, intervals: 2 * self.half_width * npu, ..*self }
    }

    fn interior(&self) -> usize {
        self.intervals - 1
    }

    /// Signed node offset from the centre, in units of `h`.
    fn offset(&self, i: usize) -> i64 {
        (i + 1) as i64 - (self.half_width * self.nodes_per_unit) as i64
    }

    pub fn positions(&self) -> Vec<f64> {
        let m = self.nodes_per_unit as f64;
        (0..self.interior()).map(|i| self.offset(i) as f64 / m).collect()
    }

    pub fn potential(&self) -> Vec<f64> {
        let edge = self.nodes_per_unit as i64;
        let depth = self.strength * self.strength;
        (0..self.interior())
            .map(|i| {
                let j = self.offset(i).abs();
                match j.cmp(&edge) {
                    std::cmp::Ordering::Less => -depth,
                    std::cmp::Ordering::Equal => -0.5 * depth,
                    std::cmp::Ordering::Greater => 0.0,
                }
            })
            .collect()
    }

    fn hamiltonian(&self, field: f64) -> Result<SymTridiagonal> {
        let h = self.spacing();
        let kinetic = 1.0 / (h * h);
        let diag = self
            .potential()
            .into_iter()
            .zip(self.positions())
            .map(|(v, x)| 2.0 * kinetic + v - field * x)
            .collect();
        SymTridiagonal::new(diag, vec![-kinetic; self.interior() - 1])
    }

    /// Rayleigh quotient of `v` in gradient form. Unlike the bisection value,
    /// whose error is set by the matrix norm `~4/h^2`, this has no large
    /// cancelling terms, so its rounding error scales with the energy itself.
    fn rayleigh(&self, potential: &[f64], positions: &[f64], field: f64, v: &[f64]) -> f64 {
        let h2 = self.spacing() * self.spacing();
        let n = v.len();
        let mut kinetic = v[0] * v[0] + v[n - 1] * v[n - 1];
        let mut pot = 0.0;
        let mut norm = 0.0;
        for i in 0..n {
            if i + 1 < n {
                let d = v[i + 1] - v[i];
                kinetic += d * d;
            }
            pot += (potential[i] - field * positions[i]) * v[i] * v[i];
            norm += v[i] * v[i];
        }
        (kinetic / h2 + pot) / norm
    }

    /// Ground energy with field `eps'`, refined by the Rayleigh quotient.
    fn ground_energy(&self, field: f64) -> Result<f64> {
        let pair = self.hamiltonian(field)?.lowest_eigenpairs(1)?.remove(0);
        Ok(self.rayleigh(&self.potential(), &self.positions(), field, &pair.vector))
    }

    /// Largest field for which the tilt across the box stays a small
    /// fraction of the binding energy (or of the first gap in a hard box).
    fn tilt_limit(&self) -> Result<f64> {
        let low = self.hamiltonian(0.0)?.lowest_eigenvalues(2)?;
        let mut scale = low[1] - low[0];
        if low[0] < 0.0 {
            scale = scale.min(-low[0]);
        }
        Ok(TILT_FRACTION * scale / self.half_width as f64)
    }
}

/// Fraction of the binding energy the applied tilt `eps' L` may reach.
pub const TILT_FRACTION: f64 = 0.1;

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub grid: Grid,
    pub positions: Vec<f64>,
    pub energies: Vec<f64>,
    /// Normalized under the trapezoid rule (`h * sum v^2 = 1`).
    pub states: Vec<Vec<f64>>,
}

impl Spectrum {
    /// `<m| x' |n>` with the trapezoid inner product.
    pub fn dipole(&self, m: usize, n: usize) -> f64 {
        let h = self.grid.spacing();
        h * self
            .positions
            .iter()
            .zip(&self.states[m])
            .zip(&self.states[n])
            .map(|((x, a), b)| x * a * b)
            .sum::<f64>()
    }
}

pub fn solve_spectrum(config: &GridOracleConfig) -> Result<Spectrum> {
    spectrum_on(config.validate()?, config.num_states)
}

fn spectrum_on(grid: Grid, num_states: usize) -> Result<Spectrum> {
    if num_states + 1 > grid.intervals {
        return Err(Error::config(format!(
            "{num_states} states requested from {} interior nodes",
            grid.intervals - 1
        )));
    }
    let t = grid.hamiltonian(0.0)?;
    let pairs = t.lowest_eigenpairs(num_states).map_err(|e| {
        Error::numerical(format!(
            "eigensolver failed on {}x{} matrix (h = {}): {e}",
            t.len(),
            t.len(),
            grid.spacing()
        ))
    })?;
    let scale = 1.0 / grid.spacing().sqrt();
    let (potential, positions) = (grid.potential(), grid.positions());
    let (energies, states) = pairs
        .into_iter()
        .map(|p| {
            let e = grid.rayleigh(&potential, &positions, 0.0, &p.vector);
            (e, p.vector.into_iter().map(|v| v * scale).collect())
        })
        .unzip();
    Ok(Spectrum { grid, positions, energies, states })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SumOverStates {
    pub alpha: f64,
    pub ground_energy: f64,
    /// Per excited state `4 |<n|x'|0>|^2 / (E'_n - E'_0)`, `n = 1, 2, ...`.
    pub contributions: Vec<f64>,
    /// Sum of the top tenth of included contributions.
    pub tail_estimate: f64,
    /// Largest contribution from an even excited state (parity-forbidden).
    pub max_forbidden: f64,
    pub grid: Grid,
}

pub fn alpha_sum_over_states(config: &GridOracleConfig) -> Result<SumOverStates> {
    let spectrum = solve_spectrum(config)?;
    sum_over_states(&spectrum)
}

pub fn sum_over_states(spectrum: &Spectrum) -> Result<SumOverStates> {
    let e0 = spectrum.energies[0];
    let mut contributions = Vec::with_capacity(spectrum.energies.len() - 1);
    for n in 1..spectrum.energies.len() {
        let gap = spectrum.energies[n] - e0;
        if !(gap > 0.0) {
            return Err(Error::numerical(format!(
                "degenerate level {n}: E'_n - E'_0 = {gap:e}"
            )));
        }
        let d = spectrum.dipole(n, 0);
        contributions.push(4.0 * d * d / gap);
    }
    let tail_len = (contributions.len() / 10).max(1);
    let tail_estimate = contributions[contributions.len() - tail_len..].iter().sum();
    let max_forbidden = contributions
        .iter()
        .skip(1)
        .step_by(2)
        .fold(0.0f64, |m, c| m.max(c.abs()));
    Ok(SumOverStates {
        alpha: contributions.iter().rev().sum(),
        ground_energy: e0,
        contributions,
        tail_estimate,
        max_forbidden,
        grid: spectrum.grid,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvatureFit {
    pub alpha: f64,
    pub fields: Vec<f64>,
    pub energies: Vec<f64>,
    /// `[c0, c1, c2]` of `E0(eps') = c0 + c1 eps' + c2 eps'^2`.
    pub coefficients: [f64; 3],
    pub rms_residual: f64,
    /// Times the configured fields were halved before the fit was accepted.
    pub halvings: usize,
    /// Largest admissible `|eps'|` for this grid.
    pub tilt_limit: f64,
    pub grid: Grid,
}

impl CurvatureFit {
    /// Residual within `1e-8` of the curvature and fields below the tilt limit.
    pub fn is_quadratic(&self) -> bool {
        let max_field = self.fields.iter().fold(0.0f64, |m, f| m.max(f.abs()));
        max_field <= self.tilt_limit && self.rms_residual <= 1e-8 * self.coefficients[2].abs()
    }
}

pub fn alpha_from_curvature(config: &GridOracleConfig) -> Result<CurvatureFit> {
    let grid = config.validate()?;
    let fit = fit_fields(&grid, &config.field_values, grid.tilt_limit()?)?;
    if !fit.is_quadratic() {
        return Err(field_too_large(&fit));
    }
    Ok(fit)
}

/// Like [`alpha_from_curvature`], but halves the field set (up to
/// `max_halvings` times) while the quartic response is still visible.
/// Strongly polarizable states need much weaker fields than the defaults.
pub fn alpha_from_curvature_adaptive(config: &GridOracleConfig, max_halvings: usize) -> Result<CurvatureFit> {
    curvature_on(&config.validate()?, &config.field_values, max_halvings)
}

fn curvature_on(grid: &Grid, fields: &[f64], max_halvings: usize) -> Result<CurvatureFit> {
    let tilt_limit = grid.tilt_limit()?;
    let mut fields = fields.to_vec();
    let mut fit = fit_fields(grid, &fields, tilt_limit)?;
    while !fit.is_quadratic() && fit.halvings < max_halvings {
        fields.iter_mut().for_each(|f| *f *= 0.5);
        let halvings = fit.halvings + 1;
        fit = fit_fields(grid, &fields, tilt_limit)?;
        fit.halvings = halvings;
    }
    if !fit.is_quadratic() {
        return Err(field_too_large(&fit));
    }
    Ok(fit)
}

fn fit_fields(grid: &Grid, fields: &[f64], tilt_limit: f64) -> Result<CurvatureFit> {
    let energies = fields
        .par_iter()
        .map(|&f| grid.ground_energy(f))
        .collect::<Result<Vec<_>>>()?;
    let fit = fit_quadratic(fields, &energies).ok_or_else(|| Error::numerical("singular quadratic fit"))?;
    Ok(CurvatureFit {
        alpha: -4.0 * fit.coefficients[2],
        fields: fields.to_vec(),
        energies,
        coefficients: fit.coefficients,
        rms_residual: fit.rms_residual,
        halvings: 0,
        tilt_limit,
        grid: *grid,
    })
}

fn field_too_large(fit: &CurvatureFit) -> Error {
    let max_field = fit.fields.iter().fold(0.0f64, |m, f| m.max(f.abs()));
    Error::numerical(format!(
        "field too large: |eps'| up to {max_field:e} (tilt limit {:e}), quadratic fit residual {:e} \
         against curvature {:e}",
        fit.tilt_limit, fit.rms_residual, fit.coefficients[2]
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RefinementLevel {
    pub intervals: usize,
    pub spacing: f64,
    pub alpha: f64,
    pub ground_energy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Refinement {
    pub levels: Vec<RefinementLevel>,
    /// Second-order Richardson value from the two finest grids.
    pub extrapolated: f64,
    pub observed_order: Option<f64>,
    pub warning: Option<String>,
}

/// Sum-over-states `alpha'` on `levels + 1` grids, each twice as fine as the
/// last, extrapolated assuming `O(h^2)` error.
pub fn refine(config: &GridOracleConfig, levels: usize) -> Result<Refinement> {
    if levels < 2 {
        return Err(Error::config(format!("need at least 2 grid doublings, got {levels}")));
    }
    ladder(config.validate()?, config.num_states, levels)
}

fn ladder(coarsest: Grid, num_states: usize, levels: usize) -> Result<Refinement> {
    let results = (0..=levels)
        .into_par_iter()
        .map(|k| {
            let s = sum_over_states(&spectrum_on(coarsest.doubled(k as i32), num_states)?)?;
            Ok(RefinementLevel {
                intervals: s.grid.intervals,
                spacing: s.grid.spacing(),
                alpha: s.alpha,
                ground_energy: s.ground_energy,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let n = results.len();
    let extrapolated = richardson(results[n - 2].alpha, results[n - 1].alpha, 2.0, 2.0);
    let order = observed_order(results[n - 3].alpha, results[n - 2].alpha, results[n - 1].alpha, 2.0);
    let warning = match order {
        Some(p) if (1.5..=2.5).contains(&p) => None,
        Some(p) => Some(format!("observed order {p:.3} outside [1.5, 2.5]")),
        None => Some("differences between levels change sign; no asymptotic order".to_string()),
    };
    Ok(Refinement { levels: results, extrapolated, observed_order: order, warning })
}

/// Both routes on the configured grid, plus a refinement study whose finest
/// level is that grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    pub alpha_sum: f64,
    pub alpha_curvature: f64,
    pub ground_energy_dimless: f64,
    pub richardson_alpha: f64,
    pub diagnostics: OracleDiagnostics,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleDiagnostics {
    pub grid: Grid,
    pub route_relative_gap: f64,
    pub tail_estimate: f64,
    pub max_forbidden: f64,
    pub fit_rms_residual: f64,
    pub fit_fields: Vec<f64>,
    pub fit_linear_coefficient: f64,
    pub refinement: Refinement,
}

/// The configured grid's nodes per unit are rounded to a multiple of
/// `2^levels` so every coarser level keeps the edges on nodes. Only that
/// finest grid is held to the minimum point count.
pub fn run_oracle(config: &GridOracleConfig, levels: usize) -> Result<OracleResult> {
    if !(2..=8).contains(&levels) {
        return Err(Error::config(format!("need 2 to 8 grid doublings, got {levels}")));
    }
    let configured = config.validate()?;
    let step = 1usize << levels;
    let blocks = ((configured.nodes_per_unit as f64 / step as f64).round() as usize).max(1) * step;
    let finest = Grid { nodes_per_unit: blocks, intervals: 2 * configured.half_width * blocks, ..configured };
    let (sum, curvature) = rayon::join(
        || spectrum_on(finest, config.num_states).and_then(|s| sum_over_states(&s)),
        || curvature_on(&finest, &config.field_values, MAX_FIELD_HALVINGS),
    );
    let (sum, curvature) = (sum?, curvature?);
    let refinement = ladder(finest.doubled(-(levels as i32)), config.num_states, levels)?;
    Ok(OracleResult {
        alpha_sum: sum.alpha,
        alpha_curvature: curvature.alpha,
        ground_energy_dimless: sum.ground_energy,
        richardson_alpha: refinement.extrapolated,
        diagnostics: OracleDiagnostics {
            grid: sum.grid,
            route_relative_gap: (sum.alpha - curvature.alpha).abs() / sum.alpha,
            tail_estimate: sum.tail_estimate,
            max_forbidden: sum.max_forbidden,
            fit_rms_residual: curvature.rms_residual,
            fit_fields: curvature.fields.clone(),
            fit_linear_coefficient: curvature.coefficients[1],
            refinement,
        },
    })
}

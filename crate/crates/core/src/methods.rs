//! Interchangeable routes to `alpha'`, selectable by name at runtime.

use std::collections::BTreeMap;

use crate::dalgarno_lewis::{alpha_apr_prime, alpha_prime, alpha_via_quadrature};
use crate::error::{Error, Result};
use crate::grid_oracle::{
    alpha_from_curvature_adaptive, alpha_sum_over_states, refine, GridOracleConfig, MAX_FIELD_HALVINGS,
};
use crate::well_spectrum::GroundState;

pub trait PolarizabilityMethod: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    /// Dimensionless polarizability `alpha / (m q^2 a^4 / hbar^2)`.
    fn alpha_prime(&self, state: &GroundState) -> Result<f64>;
}

struct ClosedForm;

impl PolarizabilityMethod for ClosedForm {
    fn name(&self) -> &'static str {
        "dalgarno-lewis"
    }
    fn description(&self) -> &'static str {
        "closed-form alpha1' + alpha2' with the infinite-well homogeneous coefficient"
    }
    fn alpha_prime(&self, state: &GroundState) -> Result<f64> {
        Ok(alpha_prime(state))
    }
}

struct Quadrature;

impl PolarizabilityMethod for Quadrature {
    fn name(&self) -> &'static str {
        "dl-quadrature"
    }
    fn description(&self) -> &'static str {
        "adaptive quadrature of <psi0| x' |phi'> over the three regions"
    }
    fn alpha_prime(&self, state: &GroundState) -> Result<f64> {
        Ok(alpha_via_quadrature(state)?.total())
    }
}

struct WidenedBox;

impl PolarizabilityMethod for WidenedBox {
    fn name(&self) -> &'static str {
        "wide-box"
    }
    fn description(&self) -> &'static str {
        "infinite well of half-width a (1 + 1/R)"
    }
    fn alpha_prime(&self, state: &GroundState) -> Result<f64> {
        alpha_apr_prime(state.strength)
    }
}

struct GridSum;

impl PolarizabilityMethod for GridSum {
    fn name(&self) -> &'static str {
        "grid-sum"
    }
    fn description(&self) -> &'static str {
        "finite-difference spectrum, truncated sum over states"
    }
    fn alpha_prime(&self, state: &GroundState) -> Result<f64> {
        Ok(alpha_sum_over_states(&GridOracleConfig::finite(state.strength)?)?.alpha)
    }
}

struct GridCurvature;

impl PolarizabilityMethod for GridCurvature {
    fn name(&self) -> &'static str {
        "grid-curvature"
    }
    fn description(&self) -> &'static str {
        "finite-difference ground energy versus field, quadratic fit"
    }
    fn alpha_prime(&self, state: &GroundState) -> Result<f64> {
        let cfg = GridOracleConfig::finite(state.strength)?;
        Ok(alpha_from_curvature_adaptive(&cfg, MAX_FIELD_HALVINGS)?.alpha)
    }
}

struct GridExtrapolated;

impl PolarizabilityMethod for GridExtrapolated {
    fn name(&self) -> &'static str {
        "grid-richardson"
    }
    fn description(&self) -> &'static str {
        "sum over states on three grids, extrapolated to zero spacing"
    }
    fn alpha_prime(&self, state: &GroundState) -> Result<f64> {
        let cfg = GridOracleConfig::finite(state.strength)?.with_points(2000);
        Ok(refine(&cfg, 2)?.extrapolated)
    }
}

pub struct MethodRegistry {
    methods: BTreeMap<&'static str, Box<dyn PolarizabilityMethod>>,
}

impl MethodRegistry {
    pub fn empty() -> Self {
        Self { methods: BTreeMap::new() }
    }

    pub fn with_builtin() -> Self {
        let mut reg = Self::empty();
        let builtin: [Box<dyn PolarizabilityMethod>; 6] = [
            Box::new(ClosedForm),
            Box::new(Quadrature),
            Box::new(WidenedBox),
            Box::new(GridSum),
            Box::new(GridCurvature),
            Box::new(GridExtrapolated),
        ];
        for m in builtin {
            reg.register(m).expect("builtin names are distinct");
        }
        reg
    }

    pub fn register(&mut self, method: Box<dyn PolarizabilityMethod>) -> Result<()> {
        let name = method.name();
        if self.methods.contains_key(name) {
            return Err(Error::config(format!("method '{name}' is already registered")));
        }
        self.methods.insert(name, method);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&dyn PolarizabilityMethod> {
        self.methods.get(name).map(|m| m.as_ref()).ok_or_else(|| {
            Error::Usage(format!(
                "unknown method '{name}'; available: {}",
                self.names().join(", ")
            ))
        })
    }

    /// Sorted names.
    pub fn names(&self) -> Vec<&'static str> {
        self.methods.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn PolarizabilityMethod> {
        self.methods.values().map(|m| m.as_ref())
    }
}

impl Default for MethodRegistry {
    fn default() -> Self {
        Self::with_builtin()
    }
}

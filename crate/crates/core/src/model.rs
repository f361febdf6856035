//! Physical parameters, unit conventions, the two energy spectra and the
//! degeneracy of each level.
//!
//! Levels are labelled by a single quantum number `k = n + |m_j| >= 1`. Only the
//! branch with positive energy (`sigma = s = +1`) bound to a negatively charged
//! cylinder (`delta = -1`) is represented; that is the branch with finite
//! degeneracy `k (k + 2)`.

use crate::error::{Error, Result};

/// Boltzmann constant in J/K (exact in the 2019 SI).
pub const BOLTZMANN_SI: f64 = 1.380649e-23;

/// Electron rest energy `m_e c^2` in joules.
pub const ELECTRON_REST_ENERGY_SI: f64 = 8.1871057769e-14;

/// Relative tolerance for the `xi_bar = xi * m0c2` consistency check.
const COUPLING_CONSISTENCY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regime {
    Relativistic,
    NonRelativistic,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::Relativistic => "rel",
            Regime::NonRelativistic => "nonrel",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitMode {
    /// hbar = c = k_B = 1 and unit rest mass.
    Natural,
    /// Energies in joules, temperatures in kelvin.
    Si,
}

/// Energy and temperature conventions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitsSystem {
    mode: UnitMode,
    k_b: f64,
}

impl UnitsSystem {
    pub const fn natural() -> Self {
        UnitsSystem {
            mode: UnitMode::Natural,
            k_b: 1.0,
        }
    }

    pub const fn si() -> Self {
        UnitsSystem {
            mode: UnitMode::Si,
            k_b: BOLTZMANN_SI,
        }
    }

    pub fn mode(&self) -> UnitMode {
        self.mode
    }

    /// Boltzmann constant in this system.
    pub fn k_b(&self) -> f64 {
        self.k_b
    }

    /// Expresses an energy in units of the rest energy.
    pub fn energy_to_natural(&self, energy: f64, m0c2: f64) -> f64 {
        energy / m0c2
    }

    pub fn energy_from_natural(&self, energy: f64, m0c2: f64) -> f64 {
        energy * m0c2
    }

    /// Converts a temperature to the dimensionless `tau = k_B T / m0c2`.
    pub fn temperature_to_natural(&self, t: f64, m0c2: f64) -> f64 {
        self.k_b * t / m0c2
    }

    pub fn temperature_from_natural(&self, tau: f64, m0c2: f64) -> f64 {
        tau * m0c2 / self.k_b
    }
}

impl Default for UnitsSystem {
    fn default() -> Self {
        Self::natural()
    }
}

/// Physical inputs of the model. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    mu: f64,
    b_field: f64,
    m0c2: f64,
    xi: f64,
    xi_bar: f64,
    n_particles: u64,
    regime: Regime,
    units: UnitsSystem,
}

impl ModelParams {
    pub fn builder() -> ModelParamsBuilder {
        ModelParamsBuilder::default()
    }

    /// Natural units, unit rest mass, no magnetic shift, one particle.
    pub fn natural(regime: Regime, xi: f64) -> Result<Self> {
        Self::builder().regime(regime).xi(xi).build()
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }
    pub fn b_field(&self) -> f64 {
        self.b_field
    }
    /// Zeeman-like shift `mu B` common to every level.
    pub fn mu_b(&self) -> f64 {
        self.mu * self.b_field
    }
    pub fn m0c2(&self) -> f64 {
        self.m0c2
    }
    pub fn xi(&self) -> f64 {
        self.xi
    }
    pub fn xi_bar(&self) -> f64 {
        self.xi_bar
    }
    pub fn n_particles(&self) -> u64 {
        self.n_particles
    }
    pub fn regime(&self) -> Regime {
        self.regime
    }
    pub fn units(&self) -> UnitsSystem {
        self.units
    }
    pub fn sigma(&self) -> Sign {
        Sign::Plus
    }
    pub fn s(&self) -> Sign {
        Sign::Plus
    }
    pub fn delta(&self) -> Sign {
        Sign::Minus
    }

    /// Same physics in the other regime.
    pub fn with_regime(&self, regime: Regime) -> Self {
        ModelParams {
            regime,
            ..self.clone()
        }
    }

    /// Same parameters with the magnetic field replaced.
    pub fn with_b_field(&self, b_field: f64) -> Result<Self> {
        if !(self.mu * b_field >= 0.0) || !b_field.is_finite() {
            return Err(Error::domain(format!(
                "mu*B must be finite and non-negative, got {}",
                self.mu * b_field
            )));
        }
        Ok(ModelParams {
            b_field,
            ..self.clone()
        })
    }

    /// Characteristic temperature `T0 = m0c2 / k_B`.
    pub fn characteristic_temperature(&self) -> f64 {
        self.m0c2 / self.units.k_b()
    }
}

#[derive(Debug, Clone)]
pub struct ModelParamsBuilder {
    mu: f64,
    b_field: f64,
    m0c2: Option<f64>,
    xi: Option<f64>,
    xi_bar: Option<f64>,
    n_particles: u64,
    regime: Regime,
    units: UnitsSystem,
    branch: (Sign, Sign, Sign),
}

impl Default for ModelParamsBuilder {
    fn default() -> Self {
        ModelParamsBuilder {
            mu: 0.0,
            b_field: 0.0,
            m0c2: None,
            xi: None,
            xi_bar: None,
            n_particles: 1,
            regime: Regime::Relativistic,
            units: UnitsSystem::natural(),
            branch: (Sign::Plus, Sign::Plus, Sign::Minus),
        }
    }
}

impl ModelParamsBuilder {
    pub fn mu(mut self, mu: f64) -> Self {
        self.mu = mu;
        self
    }
    pub fn b_field(mut self, b: f64) -> Self {
        self.b_field = b;
        self
    }
    /// Sets `mu = 1` and `B = mu_b`, for callers that only care about the shift.
    pub fn mu_b(mut self, mu_b: f64) -> Self {
        self.mu = 1.0;
        self.b_field = mu_b;
        self
    }
    pub fn m0c2(mut self, m0c2: f64) -> Self {
        self.m0c2 = Some(m0c2);
        self
    }
    pub fn xi(mut self, xi: f64) -> Self {
        self.xi = Some(xi);
        self
    }
    pub fn xi_bar(mut self, xi_bar: f64) -> Self {
        self.xi_bar = Some(xi_bar);
        self
    }
    pub fn n_particles(mut self, n: u64) -> Self {
        self.n_particles = n;
        self
    }
    pub fn regime(mut self, regime: Regime) -> Self {
        self.regime = regime;
        self
    }
    pub fn units(mut self, units: UnitsSystem) -> Self {
        self.units = units;
        self
    }
    /// Energy-branch sign, spinor component and cylinder charge sign.
    pub fn branch(mut self, sigma: Sign, s: Sign, delta: Sign) -> Self {
        self.branch = (sigma, s, delta);
        self
    }

    pub fn build(self) -> Result<ModelParams> {
        if self.branch != (Sign::Plus, Sign::Plus, Sign::Minus) {
            return Err(Error::domain(
                "only the sigma = s = +1, delta = -1 branch (finite degeneracy) is supported",
            ));
        }
        let m0c2 = match (self.units.mode(), self.m0c2) {
            (UnitMode::Natural, None) => 1.0,
            (UnitMode::Natural, Some(m)) if m == 1.0 => 1.0,
            (UnitMode::Natural, Some(m)) => {
                return Err(Error::domain(format!(
                    "natural units fix m0c2 = 1, got {m}"
                )))
            }
            (UnitMode::Si, Some(m)) => m,
            (UnitMode::Si, None) => {
                return Err(Error::domain("SI units require an explicit rest energy"))
            }
        };
        if !(m0c2 > 0.0 && m0c2.is_finite()) {
            return Err(Error::domain(format!("m0c2 must be positive, got {m0c2}")));
        }
        let (xi, xi_bar) = match (self.xi, self.xi_bar) {
            (Some(xi), None) => (xi, xi * m0c2),
            (None, Some(xb)) => (xb / m0c2, xb),
            (Some(xi), Some(xb)) => {
                let expected = xi * m0c2;
                if (xb - expected).abs() > COUPLING_CONSISTENCY_TOL * expected.abs() {
                    return Err(Error::domain(format!(
                        "inconsistent couplings: xi_bar = {xb} but xi * m0c2 = {expected}"
                    )));
                }
                (xi, xb)
            }
            (None, None) => return Err(Error::domain("a field coupling xi or xi_bar is required")),
        };
        if !(xi > 0.0 && xi.is_finite()) || !(xi_bar > 0.0 && xi_bar.is_finite()) {
            return Err(Error::domain(format!(
                "couplings must be positive, got xi = {xi}, xi_bar = {xi_bar}"
            )));
        }
        if self.n_particles == 0 {
            return Err(Error::domain("particle count must be at least 1"));
        }
        let mu_b = self.mu * self.b_field;
        if !(mu_b >= 0.0 && mu_b.is_finite()) {
            return Err(Error::domain(format!(
                "mu*B must be finite and non-negative, got {mu_b}"
            )));
        }
        Ok(ModelParams {
            mu: self.mu,
            b_field: self.b_field,
            m0c2,
            xi,
            xi_bar,
            n_particles: self.n_particles,
            regime: self.regime,
            units: self.units,
        })
    }
}

/// Dimensionless thermal variables at one temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedState {
    pub t: f64,
    pub beta: f64,
    pub tau: f64,
    pub t0: f64,
    /// `beta * mu * B`
    pub a: f64,
    /// `beta * m0c2 = 1 / tau`
    pub b: f64,
    /// `beta * xi_bar = xi * b`
    pub b_bar: f64,
    /// Boltzmann ratio `exp(-b_bar)`; underflows to zero once `b_bar` exceeds ~745.
    pub x: f64,
}

pub fn reduced_state(params: &ModelParams, t: f64) -> Result<ReducedState> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::domain(format!(
            "temperature must be positive and finite, got {t}"
        )));
    }
    let k_b = params.units.k_b();
    let beta = 1.0 / (k_b * t);
    let tau = k_b * t / params.m0c2;
    let b = 1.0 / tau;
    let b_bar = params.xi * b;
    Ok(ReducedState {
        t,
        beta,
        tau,
        t0: params.characteristic_temperature(),
        a: params.mu_b() * beta,
        b,
        b_bar,
        x: (-b_bar).exp(),
    })
}

fn check_level(k: u64) -> Result<()> {
    if k == 0 {
        Err(Error::domain("the spectrum starts at k = 1"))
    } else {
        Ok(())
    }
}

/// Relativistic level `E_k = mu B + m0c2 sqrt(1 + 2 xi k)`.
pub fn energy_rel(k: u64, params: &ModelParams) -> Result<f64> {
    check_level(k)?;
    Ok(params.mu_b() + params.m0c2 * (1.0 + 2.0 * params.xi * k as f64).sqrt())
}

/// Non-relativistic level `eps_k = mu B + xi_bar k`.
pub fn energy_nonrel(k: u64, params: &ModelParams) -> Result<f64> {
    check_level(k)?;
    Ok(params.mu_b() + params.xi_bar * k as f64)
}

/// Number of states on level `k`: `sum_{|m_j|=1..k} (2|m_j| + 1) = k (k + 2)`.
pub fn degeneracy(k: u64) -> Result<u64> {
    check_level(k)?;
    k.checked_add(2)
        .and_then(|k2| k.checked_mul(k2))
        .ok_or_else(|| Error::domain(format!("degeneracy of level {k} overflows u64")))
}

//! The four separable systems: parameters, reductions to hypergeometric
//! form, closed-form spectra and wavefunctions.
//!
//! Angular couplings `B` and `C` are dimensionless: the potential term is
//! `(ħ²/2μ)·(B + C cosθ)/(r² sin²θ)`, so they enter the polar equation as
//! `m² + B + C cosθ` directly.

mod forms;
mod table;
mod wavefunction;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::nu::NuError;
use crate::specfun::SpecFunError;

pub(crate) use forms::polar_numerator;
pub use forms::{
    ab_regime, angular_form, angular_reduction, effective_l, energy_bracket, energy_closed_form,
    energy_rootfind, radial_form, radial_reduction, AbRegime, AngularReduction, RadialReduction,
};
pub use table::{spectrum_table, FailedEntry, SpectrumTable};
pub use wavefunction::{
    angular_wavefunction, radial_wavefunction, Wavefunction, WavefunctionSample,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SystemError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("energy {energy} has the wrong sign for a bound state of this system")]
    EnergySign { energy: f64 },
    #[error("angular equation unsolvable: (m² + B)² = {lhs} < C² = {rhs}")]
    UnsolvableAngular { lhs: f64, rhs: f64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Nu(#[from] NuError),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
}

/// `ħ`, reduced mass `μ` and charge unit `e`; atomic units by default.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitSystem {
    pub hbar: f64,
    pub mu: f64,
    pub e_charge: f64,
}

impl Default for UnitSystem {
    fn default() -> Self {
        UnitSystem::ATOMIC
    }
}

impl UnitSystem {
    pub const ATOMIC: UnitSystem = UnitSystem {
        hbar: 1.0,
        mu: 1.0,
        e_charge: 1.0,
    };

    pub fn validate(&self) -> Result<(), SystemError> {
        for (name, v) in [
            ("hbar", self.hbar),
            ("mu", self.mu),
            ("e_charge", self.e_charge),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(SystemError::InvalidParams(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// `ħ²/2μ`.
    pub fn kinetic(&self) -> f64 {
        self.hbar * self.hbar / (2.0 * self.mu)
    }

    /// Bohr radius `ħ²/(μe²)`.
    pub fn bohr_radius(&self) -> f64 {
        self.hbar * self.hbar / (self.mu * self.e_charge * self.e_charge)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SystemParams {
    /// `−Ze²/r + (ħ²/2μ)(B + C cosθ)/(r² sin²θ)`.
    CoulombRing { z: f64, b: f64, c: f64 },
    /// Hartmann's ring potential, i.e. `Z = ησ²`, `B = η²σ²`, `C = 0`.
    Hartmann { eta: f64, sigma: f64 },
    /// Coulomb field with Aharonov–Bohm flux `Φ` and monopole strength `g`.
    AbMonopole { z: f64, flux: f64, monopole_g: f64 },
    /// `A²r² + (ħ²/2μ)·B/(r² sin²θ)`.
    RingOscillator { a: f64, b: f64 },
}

impl SystemParams {
    pub fn name(&self) -> &'static str {
        match self {
            SystemParams::CoulombRing { .. } => "coulomb-ring",
            SystemParams::Hartmann { .. } => "hartmann",
            SystemParams::AbMonopole { .. } => "ab-monopole",
            SystemParams::RingOscillator { .. } => "oscillator",
        }
    }

    /// Builds the AB + monopole system that has the given effective
    /// `q = −g·e` and `m̃ = eΦ/2π − q − m` for azimuthal number `m`.
    pub fn ab_from_effective(z: f64, q: f64, m_tilde: f64, m: i32, units: &UnitSystem) -> Self {
        let e = units.e_charge;
        SystemParams::AbMonopole {
            z,
            flux: 2.0 * PI * (m_tilde + q + m as f64) / e,
            monopole_g: -q / e,
        }
    }

    /// Hartmann as the general ring-shaped Coulomb system.
    pub fn as_coulomb_ring(&self) -> Option<SystemParams> {
        match *self {
            SystemParams::Hartmann { eta, sigma } => Some(SystemParams::CoulombRing {
                z: eta * sigma * sigma,
                b: eta * eta * sigma * sigma,
                c: 0.0,
            }),
            SystemParams::CoulombRing { .. } => Some(*self),
            _ => None,
        }
    }

    pub fn is_coulomb_family(&self) -> bool {
        !matches!(self, SystemParams::RingOscillator { .. })
    }

    /// Nuclear charge for the Coulomb family.
    pub fn charge(&self) -> Option<f64> {
        match *self {
            SystemParams::CoulombRing { z, .. } | SystemParams::AbMonopole { z, .. } => Some(z),
            SystemParams::Hartmann { eta, sigma } => Some(eta * sigma * sigma),
            SystemParams::RingOscillator { .. } => None,
        }
    }

    /// Checks the positivity constraints of each variant. The angular
    /// solvability condition depends on `m` and is checked separately.
    pub fn validate(&self) -> Result<(), SystemError> {
        let bad = |msg: String| Err(SystemError::InvalidParams(msg));
        let finite = |vals: &[f64]| vals.iter().all(|v| v.is_finite());
        match *self {
            SystemParams::CoulombRing { z, b, c } => {
                if !finite(&[z, b, c]) {
                    return bad("non-finite parameter".into());
                }
                if z <= 0.0 {
                    return bad(format!("Z must be positive, got {z}"));
                }
                if b < 0.0 {
                    return bad(format!("B must be non-negative, got {b}"));
                }
            }
            SystemParams::Hartmann { eta, sigma } => {
                if !(eta > 0.0 && sigma > 0.0 && finite(&[eta, sigma])) {
                    return bad(format!(
                        "eta and sigma must be positive, got {eta}, {sigma}"
                    ));
                }
            }
            SystemParams::AbMonopole {
                z,
                flux,
                monopole_g,
            } => {
                if !finite(&[z, flux, monopole_g]) {
                    return bad("non-finite parameter".into());
                }
                if z <= 0.0 {
                    return bad(format!("Z must be positive, got {z}"));
                }
            }
            SystemParams::RingOscillator { a, b } => {
                if !finite(&[a, b]) {
                    return bad("non-finite parameter".into());
                }
                if a <= 0.0 {
                    return bad(format!("A must be positive, got {a}"));
                }
                if b < 0.0 {
                    return bad(format!("B must be non-negative, got {b}"));
                }
            }
        }
        Ok(())
    }
}

/// Which `k` root of the polar equation supplies the effective `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AngularCase {
    /// `l = ñ + √A₁`; singular at one pole when `C ≠ 0`.
    I,
    /// `l = ñ + √A₂`.
    #[default]
    Ii,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub n: u32,
    pub ntilde: u32,
    pub m: i32,
    #[serde(default)]
    pub angular_case: AngularCase,
}

impl QuantumNumbers {
    pub fn new(n: u32, ntilde: u32, m: i32) -> Self {
        QuantumNumbers {
            n,
            ntilde,
            m,
            angular_case: AngularCase::Ii,
        }
    }

    pub fn with_case(mut self, case: AngularCase) -> Self {
        self.angular_case = case;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    NuRootfind,
    FdOracle,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::NuRootfind => "nu_rootfind",
            Method::FdOracle => "fd_oracle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    #[serde(flatten)]
    pub qn: QuantumNumbers,
    pub l_eff: f64,
    pub energy: f64,
    pub method: Method,
    /// Whether the azimuthal factor `e^{±i√A₂φ}` is single-valued.
    pub single_valued: bool,
}

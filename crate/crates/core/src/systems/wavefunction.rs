use serde::{Deserialize, Serialize};

use super::forms::{
    angular_reduction, energy_closed_form, radial_reduction, AngularReduction, RadialReduction,
};
use super::{AngularCase, QuantumNumbers, SpectrumEntry, SystemError, SystemParams, UnitSystem};
use crate::nu::pow0;
use crate::specfun::{integrate_adaptive, jacobi, laguerre, DEFAULT_QUAD_POINTS};

const NORM_TOL: f64 = 1e-10;

/// Unnormalized `R(r)`:
/// `r^l e^{−κr} Lₙ^(2l+1)(2κr)` for the Coulomb family,
/// `r^l e^{−αr²/2} Lₙ^(l+½)(αr²)` for the oscillator.
pub fn radial_wavefunction(
    params: &SystemParams,
    n: u32,
    l_eff: f64,
    energy: f64,
    r: f64,
    units: &UnitSystem,
) -> Result<f64, SystemError> {
    let red = radial_reduction(params, energy, units)?;
    Ok(radial_value(&red, n as usize, l_eff, r)?)
}

fn radial_value(
    red: &RadialReduction,
    n: usize,
    l: f64,
    r: f64,
) -> Result<f64, crate::specfun::SpecFunError> {
    Ok(match *red {
        RadialReduction::Coulomb { kappa, .. } => {
            pow0(r, l) * (-kappa * r).exp() * laguerre(n, 2.0 * l + 1.0, 2.0 * kappa * r)?
        }
        RadialReduction::Oscillator { alpha, .. } => {
            let x = alpha * r * r;
            pow0(r, l) * (-0.5 * x).exp() * laguerre(n, l + 0.5, x)?
        }
    })
}

/// Unnormalized `Θ(θ) = (1 − cosθ)^(a/2) (1 + cosθ)^(b/2) P_ñ^(a,b)(cosθ)`.
///
/// For case ii, `a = √A₂ + sgn(C)·√A₁` and `b = √A₂ − sgn(C)·√A₁`; the
/// sign follows from the behaviour `(1 ∓ cosθ)^(√(m²+B±C)/2)` at the poles.
pub fn angular_wavefunction(
    params: &SystemParams,
    qn: QuantumNumbers,
    theta: f64,
    units: &UnitSystem,
) -> Result<f64, SystemError> {
    let red = angular_reduction(params, qn.m, units)?;
    Ok(angular_value(
        &red,
        qn.angular_case,
        qn.ntilde as usize,
        theta.cos(),
    )?)
}

fn angular_value(
    red: &AngularReduction,
    case: AngularCase,
    ntilde: usize,
    s: f64,
) -> Result<f64, crate::specfun::SpecFunError> {
    let (a, b) = red.jacobi_params(case);
    Ok(pow0(1.0 - s, 0.5 * a) * pow0(1.0 + s, 0.5 * b) * jacobi(ntilde, a, b, s)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WavefunctionSample {
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
    pub radial_value: f64,
    pub angular_value: f64,
    /// `R(r)·Θ(θ)`; the azimuthal factor has unit modulus.
    pub total_value: f64,
    /// Azimuthal phase `ν·φ`.
    pub phase: f64,
    pub radial_norm: f64,
    pub angular_norm: f64,
}

/// A normalized separated eigenfunction `R(r)Θ(θ)e^{iνφ}`.
#[derive(Debug, Clone)]
pub struct Wavefunction {
    pub params: SystemParams,
    pub entry: SpectrumEntry,
    pub units: UnitSystem,
    radial: RadialReduction,
    angular: AngularReduction,
    /// `∫R²r²dr = 1` after scaling by this.
    pub radial_norm: f64,
    /// `∫Θ² sinθ dθ = 1` after scaling by this.
    pub angular_norm: f64,
    pub azimuthal_index: f64,
}

impl Wavefunction {
    /// Eigenfunction at the closed-form energy.
    pub fn new(
        params: &SystemParams,
        qn: QuantumNumbers,
        units: &UnitSystem,
    ) -> Result<Self, SystemError> {
        let entry = energy_closed_form(params, qn, units)?;
        Self::from_entry(params, &entry, units)
    }

    /// Builds the functions from whatever energy and `l` the entry carries.
    pub fn from_entry(
        params: &SystemParams,
        entry: &SpectrumEntry,
        units: &UnitSystem,
    ) -> Result<Self, SystemError> {
        let params = params.as_coulomb_ring().unwrap_or(*params);
        let radial = radial_reduction(&params, entry.energy, units)?;
        let angular = angular_reduction(&params, entry.qn.m, units)?;
        let qn = entry.qn;
        let l = entry.l_eff;
        let n = qn.n as usize;
        let nt = qn.ntilde as usize;

        // fail early on out-of-domain polynomial indices
        radial_value(&radial, n, l, 1.0)?;
        angular_value(&angular, qn.angular_case, nt, 0.0)?;

        let scale = match radial {
            RadialReduction::Coulomb { .. } => {
                let z = params.charge().expect("coulomb family");
                (qn.n as f64 + l + 1.0) * units.bohr_radius() / z
            }
            RadialReduction::Oscillator { alpha, .. } => 2.0 / alpha.sqrt(),
        };
        let r_int = integrate_adaptive(DEFAULT_QUAD_POINTS, NORM_TOL, |q| {
            q.integrate_semi_infinite(scale, |r| {
                let v = radial_value(&radial, n, l, r).unwrap_or(0.0);
                v * v * r * r
            })
        })?;
        let case = qn.angular_case;
        let a_int = integrate_adaptive(DEFAULT_QUAD_POINTS, NORM_TOL, |q| {
            q.integrate_endpoint_smoothed(|s| {
                let v = angular_value(&angular, case, nt, s).unwrap_or(0.0);
                v * v
            })
        })?;
        if !(r_int > 0.0 && r_int.is_finite() && a_int > 0.0 && a_int.is_finite()) {
            return Err(SystemError::Precondition(format!(
                "state {qn:?} is not normalizable (∫R²r² = {r_int}, ∫Θ² = {a_int})"
            )));
        }
        let azimuthal_index = match angular.q {
            Some(_) => qn.m as f64,
            None => angular.sqrt_a(case),
        };
        Ok(Wavefunction {
            params,
            entry: *entry,
            units: *units,
            radial,
            angular,
            radial_norm: 1.0 / r_int.sqrt(),
            angular_norm: 1.0 / a_int.sqrt(),
            azimuthal_index,
        })
    }

    pub fn radial(&self, r: f64) -> f64 {
        self.radial_norm
            * radial_value(&self.radial, self.entry.qn.n as usize, self.entry.l_eff, r)
                .expect("indices validated at construction")
    }

    /// Normalized `Θ` as a function of `s = cosθ`.
    pub fn angular_at_cos(&self, s: f64) -> f64 {
        let qn = self.entry.qn;
        self.angular_norm
            * angular_value(&self.angular, qn.angular_case, qn.ntilde as usize, s)
                .expect("indices validated at construction")
    }

    pub fn angular(&self, theta: f64) -> f64 {
        self.angular_at_cos(theta.cos())
    }

    /// `g(r) = r·R(r)`.
    pub fn reduced_radial(&self, r: f64) -> f64 {
        r * self.radial(r)
    }

    /// Mapping scale suited to radial integrals of this state.
    pub fn radial_scale(&self) -> f64 {
        match self.radial {
            RadialReduction::Coulomb { kappa, .. } => 1.0 / kappa,
            RadialReduction::Oscillator { alpha, .. } => 2.0 / alpha.sqrt(),
        }
    }

    pub fn sample(&self, r: f64, theta: f64, phi: f64) -> WavefunctionSample {
        let radial_value = self.radial(r);
        let angular_value = self.angular(theta);
        WavefunctionSample {
            r,
            theta,
            phi,
            radial_value,
            angular_value,
            total_value: radial_value * angular_value,
            phase: self.azimuthal_index * phi,
            radial_norm: self.radial_norm,
            angular_norm: self.angular_norm,
        }
    }
}

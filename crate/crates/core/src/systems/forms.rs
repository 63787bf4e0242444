use log::warn;
use serde::{Deserialize, Serialize};

use super::{
    AngularCase, Method, QuantumNumbers, SpectrumEntry, SystemError, SystemParams, UnitSystem,
};
use crate::nu::{self, HypergeometricForm};
use crate::poly::Poly;

/// The constants `A₁ ≤ A₂` that factor the polar equation, i.e. the roots
/// of `A² − (m² + B)·A + C²/4 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngularReduction {
    pub a1: f64,
    pub a2: f64,
    /// Sign of the `cosθ` coupling (`+1` when it vanishes).
    pub c_sign: f64,
    pub q: Option<f64>,
    pub m_tilde: Option<f64>,
}

impl AngularReduction {
    pub fn sqrt_a1(&self) -> f64 {
        self.a1.max(0.0).sqrt()
    }

    pub fn sqrt_a2(&self) -> f64 {
        self.a2.max(0.0).sqrt()
    }

    /// `√A` for the chosen case.
    pub fn sqrt_a(&self, case: AngularCase) -> f64 {
        match case {
            AngularCase::I => self.sqrt_a1(),
            AngularCase::Ii => self.sqrt_a2(),
        }
    }

    /// Jacobi parameters `(a, b)` of the polar polynomial. The factor
    /// multiplying it is `(1 − cosθ)^(a/2) (1 + cosθ)^(b/2)`.
    pub fn jacobi_params(&self, case: AngularCase) -> (f64, f64) {
        let (lead, other) = match case {
            AngularCase::Ii => (self.sqrt_a2(), self.sqrt_a1()),
            AngularCase::I => (self.sqrt_a1(), self.sqrt_a2()),
        };
        (lead + self.c_sign * other, lead - self.c_sign * other)
    }
}

/// Regime of the AB + monopole polar equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AbRegime {
    /// `|q| < |m̃|`
    FluxDominated,
    /// `|q| > |m̃|`
    MonopoleDominated,
    /// `|q| = |m̃|`: both closed forms coincide.
    Boundary,
}

fn ab_effective(params: &SystemParams, m: i32, units: &UnitSystem) -> Option<(f64, f64)> {
    match *params {
        SystemParams::AbMonopole {
            flux, monopole_g, ..
        } => {
            let e = units.e_charge;
            let q = -monopole_g * e;
            let m_tilde = e * flux / (2.0 * std::f64::consts::PI) - q - m as f64;
            Some((q, m_tilde))
        }
        _ => None,
    }
}

pub fn ab_regime(params: &SystemParams, m: i32, units: &UnitSystem) -> Option<AbRegime> {
    let (q, mt) = ab_effective(params, m, units)?;
    let (q, mt) = (q.abs(), mt.abs());
    let tol = 1e-12 * q.max(mt).max(1.0);
    Some(if (q - mt).abs() <= tol {
        AbRegime::Boundary
    } else if q < mt {
        AbRegime::FluxDominated
    } else {
        AbRegime::MonopoleDominated
    })
}

/// Numerator `N(s)` of the polar potential term `N(s)/(1 − s²)`.
pub(crate) fn polar_numerator(
    params: &SystemParams,
    m: i32,
    units: &UnitSystem,
) -> Result<Poly, SystemError> {
    let m2 = (m as f64) * (m as f64);
    Ok(match *params {
        SystemParams::CoulombRing { b, c, .. } => Poly::linear(m2 + b, c),
        SystemParams::Hartmann { .. } => {
            let ring = params.as_coulomb_ring().expect("hartmann maps to a ring");
            return polar_numerator(&ring, m, units);
        }
        SystemParams::RingOscillator { b, .. } => Poly::constant(m2 + b),
        SystemParams::AbMonopole { .. } => {
            let (q, mt) = ab_effective(params, m, units).expect("ab variant");
            Poly::new(mt * mt, 2.0 * q * mt, q * q)
        }
    })
}

pub fn angular_reduction(
    params: &SystemParams,
    m: i32,
    units: &UnitSystem,
) -> Result<AngularReduction, SystemError> {
    params.validate()?;
    if let Some((q, mt)) = ab_effective(params, m, units) {
        let (q2, mt2) = (q * q, mt * mt);
        return Ok(AngularReduction {
            a1: q2.min(mt2),
            a2: q2.max(mt2),
            c_sign: if q * mt >= 0.0 { 1.0 } else { -1.0 },
            q: Some(q),
            m_tilde: Some(mt),
        });
    }
    let num = polar_numerator(params, m, units)?;
    let (mb, c) = (num.c[0], num.c[1]);
    let (lhs, rhs) = (mb * mb, c * c);
    if lhs < rhs {
        return Err(SystemError::UnsolvableAngular { lhs, rhs });
    }
    let a2 = 0.5 * (mb + (lhs - rhs).sqrt());
    // A₁A₂ = C²/4 avoids cancellation in the smaller root
    let a1 = if a2 > 0.0 { 0.25 * rhs / a2 } else { 0.0 };
    Ok(AngularReduction {
        a1,
        a2,
        c_sign: if c >= 0.0 { 1.0 } else { -1.0 },
        q: None,
        m_tilde: None,
    })
}

/// Polar equation in `s = cosθ` on `(−1, 1)`.
pub fn angular_form(
    params: &SystemParams,
    m: i32,
    l_eff: f64,
    units: &UnitSystem,
) -> Result<HypergeometricForm, SystemError> {
    angular_reduction(params, m, units)?;
    let num = polar_numerator(params, m, units)?;
    let ll = l_eff * (l_eff + 1.0);
    let sigma = Poly::new(1.0, 0.0, -1.0);
    let sigma_tilde = sigma.scale(ll) - num;
    Ok(HypergeometricForm::new(
        sigma,
        sigma_tilde,
        Poly::linear(0.0, -2.0),
        (-1.0, 1.0),
    )?)
}

/// Effective (generally irrational) orbital number feeding the radial
/// equation through `l(l + 1)`.
pub fn effective_l(
    params: &SystemParams,
    ntilde: u32,
    m: i32,
    case: AngularCase,
    units: &UnitSystem,
) -> Result<f64, SystemError> {
    let red = angular_reduction(params, m, units)?;
    let nt = ntilde as f64;
    if let (Some(q), Some(mt)) = (red.q, red.m_tilde) {
        let regime = ab_regime(params, m, units).expect("ab variant");
        if regime == AbRegime::Boundary {
            warn!(
                "|q| = |m̃| = {}: flux- and monopole-dominated forms coincide",
                q.abs()
            );
        }
        let dominant = match regime {
            AbRegime::FluxDominated => mt.abs(),
            AbRegime::MonopoleDominated | AbRegime::Boundary => q.abs(),
        };
        let t = nt + dominant + 0.5;
        return Ok(-0.5 + (t * t - q * q).sqrt());
    }
    Ok(nt + red.sqrt_a(case))
}

/// Coulomb family: `κ = √(−2μE)/ħ` and signed `β² = 2μA/ħ²` with `A = −Ze²`.
/// Oscillator: `α = √(2μ)A/ħ` and `ε² = 2μE/ħ²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum RadialReduction {
    Coulomb { kappa: f64, beta_sq: f64 },
    Oscillator { alpha: f64, eps_sq: f64 },
}

pub fn radial_reduction(
    params: &SystemParams,
    energy: f64,
    units: &UnitSystem,
) -> Result<RadialReduction, SystemError> {
    params.validate()?;
    units.validate()?;
    let UnitSystem { hbar, mu, e_charge } = *units;
    match *params {
        SystemParams::RingOscillator { a, .. } => {
            if energy.is_nan() || energy <= 0.0 {
                return Err(SystemError::EnergySign { energy });
            }
            Ok(RadialReduction::Oscillator {
                alpha: (2.0 * mu).sqrt() * a / hbar,
                eps_sq: 2.0 * mu * energy / (hbar * hbar),
            })
        }
        _ => {
            if energy.is_nan() || energy >= 0.0 {
                return Err(SystemError::EnergySign { energy });
            }
            let z = params.charge().expect("coulomb family");
            let coupling = -z * e_charge * e_charge;
            Ok(RadialReduction::Coulomb {
                kappa: (-2.0 * mu * energy).sqrt() / hbar,
                beta_sq: 2.0 * mu * coupling / (hbar * hbar),
            })
        }
    }
}

/// Radial equation in hypergeometric form: `s = r` for the Coulomb family
/// (acting on `R`), `s = r²` for the oscillator (acting on `g = rR`).
pub fn radial_form(
    params: &SystemParams,
    l_eff: f64,
    energy: f64,
    units: &UnitSystem,
) -> Result<HypergeometricForm, SystemError> {
    let ll = l_eff * (l_eff + 1.0);
    let form = match radial_reduction(params, energy, units)? {
        RadialReduction::Coulomb { kappa, beta_sq } => HypergeometricForm::new(
            Poly::linear(0.0, 1.0),
            Poly::new(-ll, -beta_sq, -kappa * kappa),
            Poly::constant(2.0),
            (0.0, f64::INFINITY),
        )?,
        RadialReduction::Oscillator { alpha, eps_sq } => HypergeometricForm::new(
            Poly::linear(0.0, 2.0),
            Poly::new(-ll, eps_sq, -alpha * alpha),
            Poly::constant(1.0),
            (0.0, f64::INFINITY),
        )?,
    };
    Ok(form)
}

fn closed_form_energy(params: &SystemParams, n: u32, l_eff: f64, units: &UnitSystem) -> f64 {
    let UnitSystem { hbar, mu, e_charge } = *units;
    let n = n as f64;
    match *params {
        SystemParams::RingOscillator { a, .. } => {
            units.kinetic().sqrt() * (4.0 * n + 2.0 * l_eff + 3.0) * a
        }
        _ => {
            let z = params.charge().expect("coulomb family");
            let ze2 = z * e_charge * e_charge;
            let principal = n + l_eff + 1.0;
            -mu * ze2 * ze2 / (2.0 * hbar * hbar * principal * principal)
        }
    }
}

fn single_valued(red: &AngularReduction, case: AngularCase) -> bool {
    if red.q.is_some() {
        return true;
    }
    let v = red.sqrt_a(case);
    (v - v.round()).abs() <= 1e-9 * v.max(1.0)
}

pub fn energy_closed_form(
    params: &SystemParams,
    qn: QuantumNumbers,
    units: &UnitSystem,
) -> Result<SpectrumEntry, SystemError> {
    units.validate()?;
    // Hartmann goes through the general ring path.
    let params = params.as_coulomb_ring().unwrap_or(*params);
    let red = angular_reduction(&params, qn.m, units)?;
    let l_eff = effective_l(&params, qn.ntilde, qn.m, qn.angular_case, units)?;
    Ok(SpectrumEntry {
        qn,
        l_eff,
        energy: closed_form_energy(&params, qn.n, l_eff, units),
        method: Method::ClosedForm,
        single_valued: single_valued(&red, qn.angular_case),
    })
}

/// A bracket that straddles the `n`-th radial root, built from the
/// monotone mismatch `λ(E) − λₙ(E)` without using the closed form.
pub fn energy_bracket(
    params: &SystemParams,
    n: u32,
    l_eff: f64,
    units: &UnitSystem,
) -> Result<(f64, f64), SystemError> {
    let mismatch = |e: f64| -> Result<f64, SystemError> {
        Ok(nu::solve(&radial_form(params, l_eff, e, units)?)?.mismatch(n))
    };
    let UnitSystem { hbar, mu, e_charge } = *units;
    let (mut near, mut far, grow) = match *params {
        SystemParams::RingOscillator { a, .. } => {
            let unit = units.kinetic().sqrt() * a;
            (1e-8 * unit, unit, 2.0)
        }
        _ => {
            let z = params.charge().expect("coulomb family");
            let unit = mu * (z * e_charge * e_charge).powi(2) / (hbar * hbar);
            (-1e-10 * unit, -unit, 2.0)
        }
    };
    // extremely weak binding can push the quadratic coefficient of the
    // under-root polynomial below the degree tolerance; step outward
    let mut f_near = mismatch(near);
    for _ in 0..8 {
        if f_near.is_ok() {
            break;
        }
        near *= 10.0;
        f_near = mismatch(near);
    }
    let f_near = f_near?;
    if far.abs() <= near.abs() {
        far = near * grow;
    }
    for _ in 0..200 {
        let f_far = mismatch(far)?;
        if f_far.signum() != f_near.signum() {
            return Ok(if near < far { (near, far) } else { (far, near) });
        }
        near = far;
        far *= grow;
    }
    Err(SystemError::Precondition(format!(
        "no sign change of the quantization mismatch for n = {n}, l = {l_eff}"
    )))
}

/// Energy from solving `λ(E) = λₙ(E)` numerically on the radial equation.
pub fn energy_rootfind(
    params: &SystemParams,
    qn: QuantumNumbers,
    units: &UnitSystem,
) -> Result<SpectrumEntry, SystemError> {
    let params = params.as_coulomb_ring().unwrap_or(*params);
    let mut entry = energy_closed_form(&params, qn, units)?;
    let l = entry.l_eff;
    let bracket = energy_bracket(&params, qn.n, l, units)?;
    let energy = nu::quantize(|e| radial_form(&params, l, e, units), qn.n, bracket, 1e-13)?;
    entry.energy = energy;
    entry.method = Method::NuRootfind;
    Ok(entry)
}

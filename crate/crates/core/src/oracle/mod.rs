//! Finite-difference eigensolvers for the separated radial and polar
//! equations, a Schrödinger residual, and Gram-matrix checks. None of this
//! touches the NU machinery, so it serves as an independent reference.

mod tridiag;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use tridiag::SymTridiag;

use crate::poly::Poly;
use crate::specfun::{gauss_legendre, SpecFunError};
use crate::systems::{
    angular_reduction, polar_numerator, SpectrumEntry, SystemError, SystemParams, UnitSystem,
    Wavefunction,
};

pub const MIN_GRID_POINTS: usize = 16;
pub const DEFAULT_GRID_POINTS: usize = 16000;
/// Largest tail amplitude, relative to the peak, tolerated at `r_max`.
pub const TAIL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("grid too small: eigenfunction {index} has tail amplitude {ratio:e} of its peak at r_max = {r_max}")]
    GridTooSmall {
        index: usize,
        ratio: f64,
        r_max: f64,
    },
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
}

/// Uniform grid. For radial problems `n_points` interior nodes fill
/// `(0, r_max)`; for the polar problem they fill `(−1, 1)` in `s = cosθ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n_points: usize,
    /// Radial cutoff; `None` picks a default from the state being solved.
    pub r_max: Option<f64>,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            n_points: DEFAULT_GRID_POINTS,
            r_max: None,
        }
    }
}

impl GridSpec {
    pub fn radial(n_points: usize, r_max: f64) -> Self {
        GridSpec {
            n_points,
            r_max: Some(r_max),
        }
    }

    pub fn points(n_points: usize) -> Self {
        GridSpec {
            n_points,
            r_max: None,
        }
    }

    pub fn validate(&self) -> Result<(), OracleError> {
        if self.n_points < MIN_GRID_POINTS {
            return Err(OracleError::InvalidGrid(format!(
                "n_points = {} is below {MIN_GRID_POINTS}",
                self.n_points
            )));
        }
        if let Some(r) = self.r_max {
            if !(r > 0.0 && r.is_finite()) {
                return Err(OracleError::InvalidGrid(format!(
                    "r_max must be positive, got {r}"
                )));
            }
        }
        Ok(())
    }

    /// Same extent with the spacing halved.
    pub fn refined(&self) -> Self {
        GridSpec {
            n_points: 2 * (self.n_points + 1) - 1,
            r_max: self.r_max,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub eigenvalues: Vec<f64>,
    /// The grid actually used, with any default `r_max` filled in.
    pub grid: GridSpec,
    /// `(4E(h/2) − E(h))/3` when a refined grid was also solved.
    pub richardson_estimate: Option<Vec<f64>>,
}

/// Default cutoff for the `n`-th radial state at orbital number `l`:
/// `40(n+l+2)²a₀/Z` in a Coulomb field, `√((2E+10)/α) + 5` for the oscillator.
pub fn default_r_max(params: &SystemParams, n: u32, l_eff: f64, units: &UnitSystem) -> f64 {
    let nl = n as f64 + l_eff;
    match *params {
        SystemParams::RingOscillator { a, .. } => {
            let e_est = units.kinetic().sqrt() * (4.0 * n as f64 + 2.0 * l_eff + 3.0) * a;
            let alpha = (2.0 * units.mu).sqrt() * a / units.hbar;
            ((2.0 * e_est + 10.0) / alpha).sqrt() + 5.0
        }
        _ => {
            let z = params.charge().expect("coulomb family");
            40.0 * (nl + 2.0).powi(2) * units.bohr_radius() / z
        }
    }
}

fn radial_potential(params: &SystemParams, units: &UnitSystem) -> impl Fn(f64) -> f64 {
    let (coulomb, harmonic) = match *params {
        SystemParams::RingOscillator { a, .. } => (0.0, a * a),
        _ => (
            params.charge().expect("coulomb family") * units.e_charge * units.e_charge,
            0.0,
        ),
    };
    move |r| harmonic * r * r - coulomb / r
}

fn radial_matrix(
    params: &SystemParams,
    l_eff: f64,
    n: usize,
    r_max: f64,
    units: &UnitSystem,
) -> (SymTridiag, f64) {
    let h = r_max / (n + 1) as f64;
    let kin = units.kinetic();
    let ll = l_eff * (l_eff + 1.0);
    let v = radial_potential(params, units);
    let d = (1..=n)
        .map(|i| {
            let r = i as f64 * h;
            2.0 * kin / (h * h) + kin * ll / (r * r) + v(r)
        })
        .collect();
    (SymTridiag::new(d, vec![-kin / (h * h); n - 1]), h)
}

fn tail_ratio(vec: &[f64]) -> f64 {
    let peak = vec.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let tail_len = (vec.len() / 100).max(1);
    let tail = vec[vec.len() - tail_len..]
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()));
    tail / peak
}

fn radial_solve(
    params: &SystemParams,
    l_eff: f64,
    count: usize,
    grid: GridSpec,
    units: &UnitSystem,
) -> Result<Vec<f64>, OracleError> {
    let r_max = grid.r_max.expect("resolved grid");
    if count > grid.n_points {
        return Err(OracleError::InvalidGrid(format!(
            "{count} eigenvalues requested from {} points",
            grid.n_points
        )));
    }
    let (t, _) = radial_matrix(params, l_eff, grid.n_points, r_max, units);
    let ev = t.lowest(count);
    let top = *ev.last().expect("count ≥ 1");
    let ratio = tail_ratio(&t.eigenvector(top));
    if ratio.is_nan() || ratio > TAIL_TOL {
        return Err(OracleError::GridTooSmall {
            index: count - 1,
            ratio,
            r_max,
        });
    }
    Ok(ev)
}

fn check_radial_inputs(
    params: &SystemParams,
    l_eff: f64,
    count: usize,
    grid: GridSpec,
    units: &UnitSystem,
) -> Result<GridSpec, OracleError> {
    params.validate()?;
    units.validate()?;
    grid.validate()?;
    if count == 0 {
        return Err(OracleError::InvalidGrid("count must be at least 1".into()));
    }
    if !(l_eff > -0.5 && l_eff.is_finite()) {
        return Err(
            SystemError::Precondition(format!("l_eff must exceed -1/2, got {l_eff}")).into(),
        );
    }
    let r_max = grid
        .r_max
        .unwrap_or_else(|| default_r_max(params, count as u32 - 1, l_eff, units));
    Ok(GridSpec {
        n_points: grid.n_points,
        r_max: Some(r_max),
    })
}

/// Lowest `count` eigenvalues of
/// `−(ħ²/2μ)g″ + [ħ²l(l+1)/(2μr²) + V(r)]g = Eg`, `g(0) = g(r_max) = 0`,
/// with second-order central differences.
pub fn radial_eigen(
    params: &SystemParams,
    l_eff: f64,
    count: usize,
    grid: GridSpec,
    units: &UnitSystem,
) -> Result<OracleResult, OracleError> {
    let params = params.as_coulomb_ring().unwrap_or(*params);
    let grid = check_radial_inputs(&params, l_eff, count, grid, units)?;
    Ok(OracleResult {
        eigenvalues: radial_solve(&params, l_eff, count, grid, units)?,
        grid,
        richardson_estimate: None,
    })
}

/// As [`radial_eigen`], also solving on the grid with half the spacing and
/// extrapolating the pair.
pub fn radial_eigen_richardson(
    params: &SystemParams,
    l_eff: f64,
    count: usize,
    grid: GridSpec,
    units: &UnitSystem,
) -> Result<OracleResult, OracleError> {
    let params = params.as_coulomb_ring().unwrap_or(*params);
    let grid = check_radial_inputs(&params, l_eff, count, grid, units)?;
    let (coarse, fine) = rayon::join(
        || radial_solve(&params, l_eff, count, grid, units),
        || radial_solve(&params, l_eff, count, grid.refined(), units),
    );
    let (coarse, fine) = (coarse?, fine?);
    let extrapolated = coarse
        .iter()
        .zip(&fine)
        .map(|(c, f)| (4.0 * f - c) / 3.0)
        .collect();
    Ok(OracleResult {
        eigenvalues: coarse,
        grid,
        richardson_estimate: Some(extrapolated),
    })
}

/// Finite-volume discretization in `θ` of
/// `−(sinθ Θ′)′ + N(cosθ)/sinθ·Θ = Λ sinθ·Θ` on a uniform grid, returned
/// in symmetric form `M^(−1/2) A M^(−1/2)`.
///
/// A pole where `N` vanishes carries a finite mode, so its node is kept
/// with a half cell (natural condition); elsewhere the mode vanishes like
/// `θ^√N` and the pole node is dropped (Dirichlet).
fn angular_matrix(num: Poly, n: usize) -> SymTridiag {
    let k = std::f64::consts::PI / (n + 1) as f64;
    let scale = num.max_abs().max(1.0);
    let [_, c1, c2] = num.c;
    let natural_north = num.eval(1.0).abs() <= 1e-12 * scale;
    let natural_south = num.eval(-1.0).abs() <= 1e-12 * scale;
    // ∫ tan(θ/2) dθ over a half cell
    let half_cell = -2.0 * (0.25 * k).cos().ln();
    let edge = (0.5 * k).sin() / k;

    let first = if natural_north { 0 } else { 1 };
    let last = if natural_south { n + 1 } else { n };
    let mut diag = Vec::with_capacity(last - first + 1);
    let mut mass = Vec::with_capacity(last - first + 1);
    let mut off = Vec::with_capacity(last - first);
    // θ = half·k/2, reflected so that mirrored nodes get identical values
    let total = 2 * (n + 1);
    let sin_at = |half: usize| (half.min(total - half) as f64 * 0.5 * k).sin();
    let cos_at = |half: usize| {
        let c = (half.min(total - half) as f64 * 0.5 * k).cos();
        if 2 * half > total {
            -c
        } else {
            c
        }
    };
    for j in first..=last {
        let (a, m) = if j == 0 {
            // N(s) = (s − 1)(c₂s + c₁ + c₂)
            (edge - (c1 + 2.0 * c2) * half_cell, 1.0 - (0.5 * k).cos())
        } else if j == n + 1 {
            // N(s) = (s + 1)(c₂s + c₁ − c₂)
            (edge + (c1 - 2.0 * c2) * half_cell, 1.0 - (0.5 * k).cos())
        } else {
            let sin = sin_at(2 * j);
            let flux = (sin_at(2 * j - 1) + sin_at(2 * j + 1)) / k;
            (flux + k * num.eval(cos_at(2 * j)) / sin, k * sin)
        };
        diag.push(a);
        mass.push(m);
        if j < last {
            off.push(-sin_at(2 * j + 1) / k);
        }
    }
    let d = diag.iter().zip(&mass).map(|(a, m)| a / m).collect();
    let e = off
        .iter()
        .enumerate()
        .map(|(i, v)| v / (mass[i] * mass[i + 1]).sqrt())
        .collect();
    SymTridiag::new(d, e)
}

/// Lowest `count` eigenvalues `Λ` of
/// `−d/ds[(1−s²)dΘ/ds] + N(s)/(1−s²)·Θ = ΛΘ` on `(−1, 1)`, where
/// `N(s) = m² + B + Cs` for the ring family and `(m̃ + qs)²` with AB flux.
/// The grid is uniform in `θ = arccos s`.
pub fn angular_eigen(
    params: &SystemParams,
    m: i32,
    count: usize,
    grid: GridSpec,
    units: &UnitSystem,
) -> Result<OracleResult, OracleError> {
    let params = params.as_coulomb_ring().unwrap_or(*params);
    grid.validate()?;
    if count == 0 || count > grid.n_points {
        return Err(OracleError::InvalidGrid(format!(
            "count must be in 1..={}, got {count}",
            grid.n_points
        )));
    }
    angular_reduction(&params, m, units)?;
    let num = polar_numerator(&params, m, units)?;
    let t = angular_matrix(num, grid.n_points);
    Ok(OracleResult {
        eigenvalues: t.lowest(count),
        grid: GridSpec::points(grid.n_points),
        richardson_estimate: None,
    })
}

/// As [`angular_eigen`] with a two-grid extrapolation of the eigenvalues.
pub fn angular_eigen_richardson(
    params: &SystemParams,
    m: i32,
    count: usize,
    grid: GridSpec,
    units: &UnitSystem,
) -> Result<OracleResult, OracleError> {
    let mut coarse = angular_eigen(params, m, count, grid, units)?;
    let fine = angular_eigen(params, m, count, grid.refined(), units)?;
    coarse.richardson_estimate = Some(
        coarse
            .eigenvalues
            .iter()
            .zip(&fine.eigenvalues)
            .map(|(c, f)| (4.0 * f - c) / 3.0)
            .collect(),
    );
    Ok(coarse)
}

/// Relative residual `‖(H − E)Ψ‖ / (|E|·‖Ψ‖)` of a separated state on a
/// uniform `(r, θ)` grid, with weight `r² sinθ`.
///
/// The Laplacian is applied with second-order differences: `−g″/r` for the
/// radial part (`g = rR`) and the self-adjoint stencil for
/// `−(1/sinθ)(sinθ Θ′)′ + N(cosθ)/sin²θ·Θ`. No `l(l+1)` enters, so the
/// closed-form `l`, energy and both factors are all tested at once.
pub fn residual_norm(
    params: &SystemParams,
    entry: &SpectrumEntry,
    grid: GridSpec,
    units: &UnitSystem,
) -> Result<f64, OracleError> {
    grid.validate()?;
    let params = params.as_coulomb_ring().unwrap_or(*params);
    let wf = Wavefunction::from_entry(&params, entry, units)?;
    let n = grid.n_points;
    let r_max = grid
        .r_max
        .unwrap_or_else(|| default_r_max(&params, entry.qn.n, entry.l_eff, units));
    let kin = units.kinetic();
    let v = radial_potential(&params, units);
    let energy = entry.energy;

    // radial: a(r) = −kin·g″/r + (V − E)R and b(r) = kin·R/r²
    let h = r_max / (n + 1) as f64;
    let g: Vec<f64> = (0..=n + 1)
        .map(|i| wf.reduced_radial(i as f64 * h))
        .collect();
    let (mut aa, mut ab, mut bb, mut rr) = (0.0, 0.0, 0.0, 0.0);
    for i in 1..=n {
        let r = i as f64 * h;
        let big_r = g[i] / r;
        let g2 = (g[i + 1] - 2.0 * g[i] + g[i - 1]) / (h * h);
        let a = -kin * g2 / r + (v(r) - energy) * big_r;
        let b = kin * big_r / (r * r);
        let w = r * r * h;
        aa += a * a * w;
        ab += a * b * w;
        bb += b * b * w;
        rr += big_r * big_r * w;
    }

    // polar: c(θ) = angular operator applied to Θ
    let num = polar_numerator(&params, entry.qn.m, units)?;
    let k = std::f64::consts::PI / (n + 1) as f64;
    let th: Vec<f64> = (0..=n + 1).map(|j| wf.angular(j as f64 * k)).collect();
    let (mut tt, mut tc, mut cc) = (0.0, 0.0, 0.0);
    for j in 1..=n {
        let t = j as f64 * k;
        let sin = t.sin();
        let sp = (t + 0.5 * k).sin();
        let sm = (t - 0.5 * k).sin();
        let lap = (sp * (th[j + 1] - th[j]) - sm * (th[j] - th[j - 1])) / (k * k * sin);
        let c = -lap + num.eval(t.cos()) / (sin * sin) * th[j];
        let w = sin * k;
        tt += th[j] * th[j] * w;
        tc += th[j] * c * w;
        cc += c * c * w;
    }

    let residual = (aa * tt + 2.0 * ab * tc + bb * cc).max(0.0).sqrt();
    let norm = (rr * tt).sqrt();
    Ok(residual / (energy.abs() * norm))
}

/// Gram matrix of the normalized states `R Θ e^{imφ}/√(2π)` by Gauss–Legendre
/// quadrature with `quad_points` nodes per factor. States with different
/// `m` are orthogonal through the azimuthal factor; otherwise the entry is
/// the product of the radial and polar overlaps.
pub fn orthonormality_check(
    params: &SystemParams,
    entries: &[SpectrumEntry],
    quad_points: usize,
    units: &UnitSystem,
) -> Result<Vec<Vec<f64>>, OracleError> {
    if quad_points == 0 {
        return Err(OracleError::InvalidGrid(
            "quad_points must be positive".into(),
        ));
    }
    let wfs = entries
        .iter()
        .map(|e| Wavefunction::from_entry(params, e, units))
        .collect::<Result<Vec<_>, _>>()?;
    let rule = gauss_legendre(quad_points);
    let scale = wfs.iter().map(|w| w.radial_scale()).fold(0.0, f64::max);
    let k = wfs.len();
    let mut gram = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in i..k {
            let (a, b) = (&wfs[i], &wfs[j]);
            let value = if a.entry.qn.m != b.entry.qn.m {
                0.0
            } else {
                let radial =
                    rule.integrate_semi_infinite(scale, |r| a.radial(r) * b.radial(r) * r * r);
                let polar =
                    rule.integrate_endpoint_smoothed(|s| a.angular_at_cos(s) * b.angular_at_cos(s));
                radial * polar
            };
            gram[i][j] = value;
            gram[j][i] = value;
        }
    }
    Ok(gram)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::{effective_l, energy_closed_form, AngularCase, QuantumNumbers};
    use approx::assert_abs_diff_eq;

    const AU: UnitSystem = UnitSystem::ATOMIC;
    const HYDROGEN: SystemParams = SystemParams::CoulombRing {
        z: 1.0,
        b: 0.0,
        c: 0.0,
    };
    const OSC: SystemParams = SystemParams::RingOscillator { a: 1.0, b: 0.0 };

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn radial_examples() {
        let res = radial_eigen(&HYDROGEN, 0.0, 2, GridSpec::radial(16000, 200.0), &AU).unwrap();
        assert!(
            rel(res.eigenvalues[0], -0.5) < 1e-4,
            "{:?}",
            res.eigenvalues
        );
        assert!(
            rel(res.eigenvalues[1], -0.125) < 1e-4,
            "{:?}",
            res.eigenvalues
        );

        let res = radial_eigen(&OSC, 0.0, 1, GridSpec::radial(8000, 10.0), &AU).unwrap();
        assert!(rel(res.eigenvalues[0], 3.0 / 2f64.sqrt()) < 1e-4);

        let h = SystemParams::Hartmann {
            eta: 1.0,
            sigma: 1.0,
        };
        let res = radial_eigen(&h, 2f64.sqrt(), 1, GridSpec::default(), &AU).unwrap();
        let target = -1.0 / (2.0 * (1.0 + 2f64.sqrt()).powi(2));
        assert!(
            rel(res.eigenvalues[0], target) < 1e-4,
            "{:?}",
            res.eigenvalues
        );
    }

    #[test]
    fn grid_too_small_detected() {
        let err = radial_eigen(&HYDROGEN, 0.0, 3, GridSpec::radial(2000, 8.0), &AU).unwrap_err();
        assert!(
            matches!(err, OracleError::GridTooSmall { index: 2, .. }),
            "{err:?}"
        );
        assert!(matches!(
            radial_eigen(&HYDROGEN, 0.0, 1, GridSpec::radial(8, 8.0), &AU),
            Err(OracleError::InvalidGrid(_))
        ));
    }

    #[test]
    fn richardson_improves_hydrogen() {
        let res = radial_eigen_richardson(&HYDROGEN, 0.0, 1, GridSpec::points(4000), &AU).unwrap();
        let plain = rel(res.eigenvalues[0], -0.5);
        let extrapolated = rel(res.richardson_estimate.unwrap()[0], -0.5);
        assert!(extrapolated < plain / 10.0, "{plain} vs {extrapolated}");
    }

    #[test]
    fn second_order_convergence() {
        for (p, target) in [(HYDROGEN, -0.5), (OSC, 3.0 / 2f64.sqrt())] {
            let grid = GridSpec::points(2000);
            let e1 = radial_eigen(&p, 0.0, 1, grid, &AU).unwrap();
            let e2 = radial_eigen(&p, 0.0, 1, grid.refined(), &AU).unwrap();
            let ratio = (e1.eigenvalues[0] - target) / (e2.eigenvalues[0] - target);
            assert!((3.5..=4.5).contains(&ratio), "{p:?}: ratio {ratio}");
        }
    }

    #[test]
    fn angular_examples() {
        let grid = GridSpec::points(4000);
        let lam = |b, c, m| {
            angular_eigen(&SystemParams::CoulombRing { z: 1.0, b, c }, m, 2, grid, &AU)
                .unwrap()
                .eigenvalues
        };
        assert_abs_diff_eq!(lam(0.0, 0.0, 0)[0], 0.0, epsilon = 1e-6);
        assert_abs_diff_eq!(lam(1.0, 0.0, 0)[0], 2.0, epsilon = 1e-4);
        let l = (0.5 * (2.0 + 3f64.sqrt())).sqrt();
        let got = lam(1.0, 1.0, 1);
        assert_abs_diff_eq!(got[0], l * (l + 1.0), epsilon = 1e-4);
        assert_abs_diff_eq!(got[0], 3.2320508, epsilon = 1e-4);
        assert_abs_diff_eq!(got[1], (l + 1.0) * (l + 2.0), epsilon = 1e-4);
    }

    #[test]
    fn angular_matches_effective_l_for_ab() {
        for (q, mt) in [(0.5, 1.0), (1.5, 0.75), (-0.8, 0.3), (0.75, -0.75)] {
            let p = SystemParams::ab_from_effective(1.0, q, mt, 0, &AU);
            let ev = angular_eigen(&p, 0, 2, GridSpec::default(), &AU)
                .unwrap()
                .eigenvalues;
            for (nt, v) in ev.iter().enumerate() {
                let l = effective_l(&p, nt as u32, 0, AngularCase::Ii, &AU).unwrap();
                assert_abs_diff_eq!(*v, l * (l + 1.0), epsilon = 1e-4);
            }
        }
    }

    #[test]
    fn angular_mirror_symmetry() {
        for (b, c, m) in [(1.0, 1.0, 1), (0.3, -0.2, 0), (2.0, 3.5, 2)] {
            let a = angular_eigen(
                &SystemParams::CoulombRing { z: 1.0, b, c },
                m,
                3,
                GridSpec::points(500),
                &AU,
            )
            .unwrap()
            .eigenvalues;
            let b2 = angular_eigen(
                &SystemParams::CoulombRing { z: 1.0, b, c: -c },
                m,
                3,
                GridSpec::points(500),
                &AU,
            )
            .unwrap()
            .eigenvalues;
            for (x, y) in a.iter().zip(&b2) {
                assert_abs_diff_eq!(x, y, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn residual_examples() {
        let grid = GridSpec::points(4000);
        let h = energy_closed_form(&HYDROGEN, QuantumNumbers::new(0, 0, 0), &AU).unwrap();
        assert!(residual_norm(&HYDROGEN, &h, grid, &AU).unwrap() < 1e-3);
        let o = energy_closed_form(&OSC, QuantumNumbers::new(0, 0, 0), &AU).unwrap();
        assert!(residual_norm(&OSC, &o, grid, &AU).unwrap() < 1e-3);
        let mut wrong = h;
        wrong.energy += 0.1;
        assert!(residual_norm(&HYDROGEN, &wrong, grid, &AU).unwrap() > 1e-1);
    }

    #[test]
    fn gram_examples() {
        let entries: Vec<_> = (0..3)
            .map(|n| energy_closed_form(&HYDROGEN, QuantumNumbers::new(n, 0, 0), &AU).unwrap())
            .collect();
        let g = orthonormality_check(&HYDROGEN, &entries, 128, &AU).unwrap();
        for (i, row) in g.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                let tol = if i == j { 1e-8 } else { 1e-6 };
                assert_abs_diff_eq!(v, expect, epsilon = tol);
            }
        }
        let single = orthonormality_check(&OSC, &entries_osc(1), 128, &AU).unwrap();
        assert_abs_diff_eq!(single[0][0], 1.0, epsilon = 1e-8);
        let two = orthonormality_check(&OSC, &entries_osc(2), 128, &AU).unwrap();
        assert_abs_diff_eq!(two[0][1], 0.0, epsilon = 1e-6);
        assert_abs_diff_eq!(two[1][1], 1.0, epsilon = 1e-8);
    }

    fn entries_osc(k: u32) -> Vec<SpectrumEntry> {
        (0..k)
            .map(|n| energy_closed_form(&OSC, QuantumNumbers::new(n, 0, 0), &AU).unwrap())
            .collect()
    }
}

//! The Nikiforov–Uvarov reduction.
//!
//! A hypergeometric-type equation
//!
//! ```text
//! ψ'' + (τ̃/σ) ψ' + (σ̃/σ²) ψ = 0
//! ```
//!
//! is turned into `σ y'' + τ y' + λ y = 0` by the substitution `ψ = φ·y`.
//! The engine enumerates the constants `k` that make
//! `((σ'−τ̃)/2)² − σ̃ + kσ` a perfect square, builds the two `π` branches for
//! each, keeps the branch with `τ' < 0` and an integrable weight, and
//! exposes the quantization `λ = λₙ`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{Poly, PolyError, SQUARE_TOL, ZERO_TOL};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NuError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("invalid hypergeometric form: {0}")]
    InvalidForm(String),
    #[error("the k equation has no real roots")]
    NoRealK,
    #[error("no branch has τ' < 0 with an integrable weight")]
    NoPhysicalBranch,
    #[error("σ = {0} is neither c·s nor c·(1 − s²)")]
    UnsupportedSigmaShape(Poly),
    #[error("weight fails (σρ)' = τρ at s = {s} (relative error {err:e})")]
    WeightCheck { s: f64, err: f64 },
    #[error("mismatch does not change sign on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("selected branch changes identity at E = {at}")]
    BranchFlip { at: f64 },
    #[error("equation family failed at E = {at}: {msg}")]
    Family { at: f64, msg: String },
}

/// Coefficient polynomials of `ψ'' + (τ̃/σ)ψ' + (σ̃/σ²)ψ = 0` on an open
/// interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HypergeometricForm {
    pub sigma: Poly,
    pub sigma_tilde: Poly,
    pub tau_tilde: Poly,
    pub domain: (f64, f64),
}

impl HypergeometricForm {
    pub fn new(
        sigma: Poly,
        sigma_tilde: Poly,
        tau_tilde: Poly,
        domain: (f64, f64),
    ) -> Result<Self, NuError> {
        let form = HypergeometricForm {
            sigma,
            sigma_tilde,
            tau_tilde,
            domain,
        };
        form.validate()?;
        Ok(form)
    }

    pub fn validate(&self) -> Result<(), NuError> {
        let (lo, hi) = self.domain;
        if lo.is_nan() || hi.is_nan() || lo >= hi {
            return Err(NuError::InvalidForm(format!("empty domain ({lo}, {hi})")));
        }
        if self.tau_tilde.degree() > 1 && !self.tau_tilde.is_zero(0.0) {
            return Err(NuError::InvalidForm("τ̃ must have degree ≤ 1".into()));
        }
        for s in interior_samples(self.domain, 33) {
            if self.sigma.eval(s) <= 0.0 {
                return Err(NuError::InvalidForm(format!(
                    "σ({s}) ≤ 0 inside the domain"
                )));
            }
        }
        Ok(())
    }

    /// `(σ' − τ̃)/2`.
    pub fn half_shift(&self) -> Poly {
        (self.sigma.derivative() - self.tau_tilde).scale(0.5)
    }

    /// The polynomial under the square root for a given `k`.
    pub fn under_root(&self, k: f64) -> Poly {
        let h = self.half_shift();
        let h2 = h.checked_mul(&h).expect("linear squared stays quadratic");
        h2 - self.sigma_tilde + self.sigma.scale(k)
    }
}

/// Points strictly inside `domain`; a semi-infinite domain is sampled on
/// `(lo, lo + 20]`.
fn interior_samples(domain: (f64, f64), count: usize) -> impl Iterator<Item = f64> {
    let (lo, hi) = domain;
    let hi = if hi.is_finite() { hi } else { lo + 20.0 };
    (1..=count).map(move |i| lo + (hi - lo) * i as f64 / (count + 1) as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Identifies a branch independently of the parameter values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BranchKey {
    pub k_index: u8,
    pub sign: Sign,
}

/// One `(k, π, τ)` row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NuBranch {
    pub k: f64,
    /// 1 for the larger root of the k equation, 2 for the smaller.
    pub k_index: u8,
    pub sign: Sign,
    pub pi: Poly,
    pub tau: Poly,
    /// `λ = k + π'`.
    pub lambda: f64,
    /// `τ'`.
    pub tau_slope: f64,
}

impl NuBranch {
    pub fn key(&self) -> BranchKey {
        BranchKey {
            k_index: self.k_index,
            sign: self.sign,
        }
    }
}

/// Roots of the k equation, sorted descending.
pub fn k_candidates(eq: &HypergeometricForm) -> Result<Vec<f64>, NuError> {
    // under_root(k) = u + k·σ, and its discriminant is quadratic in k.
    let u = eq.under_root(0.0);
    let (u0, u1, u2) = (u.c[0], u.c[1], u.c[2]);
    let (s0, s1, s2) = (eq.sigma.c[0], eq.sigma.c[1], eq.sigma.c[2]);
    let qa = s1 * s1 - 4.0 * s2 * s0;
    let qb = 2.0 * u1 * s1 - 4.0 * (u2 * s0 + u0 * s2);
    let qc = u1 * u1 - 4.0 * u2 * u0;
    let scale = qa.abs().max(qb.abs()).max(qc.abs());
    if scale == 0.0 {
        return Err(NuError::NoRealK);
    }
    if qa.abs() <= ZERO_TOL * scale {
        if qb.abs() <= ZERO_TOL * scale {
            return Err(NuError::NoRealK);
        }
        return Ok(vec![-qc / qb]);
    }
    let disc = qb * qb - 4.0 * qa * qc;
    let disc_scale = (qb * qb).max((4.0 * qa * qc).abs()).max(f64::MIN_POSITIVE);
    if disc < 0.0 {
        if -disc > 1e-12 * disc_scale {
            return Err(NuError::NoRealK);
        }
        return Ok(vec![-qb / (2.0 * qa)]);
    }
    if disc <= 1e-14 * disc_scale {
        return Ok(vec![-qb / (2.0 * qa)]);
    }
    // cancellation-free quadratic roots
    let sq = disc.sqrt();
    let q = -0.5 * (qb + qb.signum() * sq);
    let (r1, r2) = if q == 0.0 {
        let r = (-qc / qa).sqrt();
        (r, -r)
    } else {
        (q / qa, qc / q)
    };
    let (hi, lo) = if r1 >= r2 { (r1, r2) } else { (r2, r1) };
    Ok(vec![hi, lo])
}

fn branch_pair(eq: &HypergeometricForm, k: f64, k_index: u8) -> Result<[NuBranch; 2], NuError> {
    let root = eq.under_root(k).perfect_square_root(SQUARE_TOL)?;
    let h = eq.half_shift();
    let make = |sign: Sign| {
        let pi = h + root.scale(sign.factor());
        let tau = eq.tau_tilde + pi.scale(2.0);
        NuBranch {
            k,
            k_index,
            sign,
            pi,
            tau,
            lambda: k + pi.c[1],
            tau_slope: tau.c[1],
        }
    };
    Ok([make(Sign::Plus), make(Sign::Minus)])
}

/// Both sign choices of `π` for a given `k`.
pub fn branches(eq: &HypergeometricForm, k: f64) -> Result<[NuBranch; 2], NuError> {
    let k_index = match k_candidates(eq) {
        Ok(ks) => ks
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - k).abs().total_cmp(&(b.1 - k).abs()))
            .map(|(i, _)| i as u8 + 1)
            .unwrap_or(1),
        Err(_) => 1,
    };
    branch_pair(eq, k, k_index)
}

/// Every branch, ordered by `(k_index, sign)`.
pub fn all_branches(eq: &HypergeometricForm) -> Result<Vec<NuBranch>, NuError> {
    let mut out = Vec::with_capacity(4);
    for (i, k) in k_candidates(eq)?.into_iter().enumerate() {
        out.extend(branch_pair(eq, k, i as u8 + 1)?);
    }
    Ok(out)
}

/// Canonical shape of `σ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "lowercase")]
pub enum SigmaShape {
    /// `σ = scale·s` on `(0, ∞)`.
    Laguerre { scale: f64 },
    /// `σ = scale·(1 − s²)` on `(−1, 1)`.
    Jacobi { scale: f64 },
}

impl SigmaShape {
    pub fn classify(sigma: &Poly) -> Result<Self, NuError> {
        let tol = ZERO_TOL * sigma.max_abs();
        let [c0, c1, c2] = sigma.c;
        if c0.abs() <= tol && c2.abs() <= tol && c1 > 0.0 {
            return Ok(SigmaShape::Laguerre { scale: c1 });
        }
        if c1.abs() <= tol && (c0 + c2).abs() <= tol && c0 > 0.0 {
            return Ok(SigmaShape::Jacobi { scale: c0 });
        }
        Err(NuError::UnsupportedSigmaShape(*sigma))
    }
}

/// `ρ(s)` (or `φ(s)`) up to a constant factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum PowerExp {
    /// `s^power · e^(rate·s)`.
    Laguerre { power: f64, rate: f64 },
    /// `(1 − s)^a · (1 + s)^b`.
    Jacobi { a: f64, b: f64 },
}

impl PowerExp {
    /// Solves `f'/f = p/σ` for a linear `p`.
    fn from_log_derivative(shape: SigmaShape, p: &Poly) -> Self {
        match shape {
            SigmaShape::Laguerre { scale } => PowerExp::Laguerre {
                power: p.c[0] / scale,
                rate: p.c[1] / scale,
            },
            SigmaShape::Jacobi { scale } => PowerExp::Jacobi {
                a: -p.eval(1.0) / (2.0 * scale),
                b: p.eval(-1.0) / (2.0 * scale),
            },
        }
    }

    pub fn eval(&self, s: f64) -> f64 {
        match *self {
            PowerExp::Laguerre { power, rate } => pow0(s, power) * (rate * s).exp(),
            PowerExp::Jacobi { a, b } => pow0(1.0 - s, a) * pow0(1.0 + s, b),
        }
    }

    /// `d ln f / ds`.
    pub fn log_derivative(&self, s: f64) -> f64 {
        match *self {
            PowerExp::Laguerre { power, rate } => power / s + rate,
            PowerExp::Jacobi { a, b } => -a / (1.0 - s) + b / (1.0 + s),
        }
    }

    /// Finite integral over the natural domain.
    pub fn is_integrable(&self) -> bool {
        match *self {
            PowerExp::Laguerre { power, rate } => power > -1.0 && rate < 0.0,
            PowerExp::Jacobi { a, b } => a > -1.0 && b > -1.0,
        }
    }
}

/// `x^p` with `0^0 = 1`.
pub(crate) fn pow0(x: f64, p: f64) -> f64 {
    if p == 0.0 {
        1.0
    } else {
        x.powf(p)
    }
}

/// The selected branch together with its weight, `φ` factor and `λₙ` map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NuSolution {
    pub branch: NuBranch,
    pub sigma: Poly,
    pub shape: SigmaShape,
    pub weight: PowerExp,
    pub phi: PowerExp,
    /// `(−τ', −σ''/2)`, so `λₙ = n·c₀ + n(n−1)·c₁`.
    pub lambda_n_coeffs: (f64, f64),
}

impl NuSolution {
    /// `λₙ = −n·τ' − n(n−1)·σ''/2`.
    pub fn lambda_n(&self, n: u32) -> f64 {
        let n = n as f64;
        n * self.lambda_n_coeffs.0 + n * (n - 1.0) * self.lambda_n_coeffs.1
    }

    /// `λ − λₙ`; zero exactly at a bound state.
    pub fn mismatch(&self, n: u32) -> f64 {
        self.branch.lambda - self.lambda_n(n)
    }

    /// Monomial coefficients of the degree-`n` polynomial solution of
    /// `σy'' + τy' + λₙy = 0`, normalized to a unit leading coefficient.
    pub fn polynomial(&self, n: u32) -> Vec<f64> {
        let n = n as usize;
        let [s0, s1, s2] = self.sigma.c;
        let [t0, t1, _] = self.branch.tau.c;
        let lam_n = self.lambda_n(n as u32);
        let mut a = vec![0.0; n + 3];
        a[n] = 1.0;
        for j in (0..n).rev() {
            let jf = j as f64;
            let diag = s2 * jf * (jf - 1.0) + t1 * jf + lam_n;
            let rhs = (s1 * (jf + 1.0) * jf + t0 * (jf + 1.0)) * a[j + 1]
                + s0 * (jf + 2.0) * (jf + 1.0) * a[j + 2];
            a[j] = -rhs / diag;
        }
        a.truncate(n + 1);
        a
    }

    pub fn eval_polynomial(&self, n: u32, s: f64) -> f64 {
        self.polynomial(n)
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * s + c)
    }
}

fn branch_weight(shape: SigmaShape, branch: &NuBranch) -> PowerExp {
    // ρ = w/σ with w'/w = τ/σ
    match PowerExp::from_log_derivative(shape, &branch.tau) {
        PowerExp::Laguerre { power, rate } => PowerExp::Laguerre {
            power: power - 1.0,
            rate,
        },
        PowerExp::Jacobi { a, b } => PowerExp::Jacobi {
            a: a - 1.0,
            b: b - 1.0,
        },
    }
}

/// Picks the branch with `τ' < 0` and integrable weight. Ties prefer a
/// strictly decreasing `π`, then the smaller `λ`.
pub fn select_physical(all: &[NuBranch], eq: &HypergeometricForm) -> Result<NuBranch, NuError> {
    let shape = SigmaShape::classify(&eq.sigma)?;
    let slope_tol = ZERO_TOL * eq.sigma.max_abs().max(1.0);
    all.iter()
        .filter(|b| b.tau_slope < -slope_tol)
        .filter(|b| branch_weight(shape, b).is_integrable())
        .min_by(|a, b| {
            let rank = |x: &NuBranch| if x.pi.c[1] < -slope_tol { 0 } else { 1 };
            rank(a).cmp(&rank(b)).then(a.lambda.total_cmp(&b.lambda))
        })
        .copied()
        .ok_or(NuError::NoPhysicalBranch)
}

/// Weight and `φ` of a branch, checked against `(σρ)' = τρ` at 64 points.
pub fn weight_and_phi(eq: &HypergeometricForm, branch: &NuBranch) -> Result<NuSolution, NuError> {
    let shape = SigmaShape::classify(&eq.sigma)?;
    let weight = branch_weight(shape, branch);
    let phi = PowerExp::from_log_derivative(shape, &branch.pi);
    let domain = match shape {
        SigmaShape::Laguerre { .. } => (0.0, f64::INFINITY),
        SigmaShape::Jacobi { .. } => (-1.0, 1.0),
    };
    let dsigma = eq.sigma.derivative();
    for s in interior_samples(domain, 64) {
        // (σρ)'/ρ = σ' + σ·(ln ρ)'
        let lhs = dsigma.eval(s) + eq.sigma.eval(s) * weight.log_derivative(s);
        let rhs = branch.tau.eval(s);
        let scale = rhs.abs().max(dsigma.eval(s).abs()).max(1.0);
        let err = (lhs - rhs).abs() / scale;
        if err > 1e-8 {
            return Err(NuError::WeightCheck { s, err });
        }
    }
    Ok(NuSolution {
        branch: *branch,
        sigma: eq.sigma,
        shape,
        weight,
        phi,
        lambda_n_coeffs: (-branch.tau_slope, -0.5 * eq.sigma.second_derivative()),
    })
}

/// Full pipeline: candidates, branches, selection, weight.
pub fn solve(eq: &HypergeometricForm) -> Result<NuSolution, NuError> {
    let all = all_branches(eq)?;
    let chosen = select_physical(&all, eq)?;
    weight_and_phi(eq, &chosen)
}

pub fn lambda_n(sol: &NuSolution, n: u32) -> f64 {
    sol.lambda_n(n)
}

/// Everything the engine derives from one equation, for display.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NuTrace {
    pub form: HypergeometricForm,
    pub k_candidates: Vec<f64>,
    pub branches: Vec<NuBranch>,
    pub selected: NuBranch,
    pub weight: PowerExp,
    pub phi: PowerExp,
}

pub fn trace(eq: &HypergeometricForm) -> Result<NuTrace, NuError> {
    let ks = k_candidates(eq)?;
    let all = all_branches(eq)?;
    let selected = select_physical(&all, eq)?;
    let sol = weight_and_phi(eq, &selected)?;
    Ok(NuTrace {
        form: *eq,
        k_candidates: ks,
        branches: all,
        selected,
        weight: sol.weight,
        phi: sol.phi,
    })
}

pub const QUANTIZE_ABS_TOL: f64 = 1e-12;
pub const QUANTIZE_REL_TOL: f64 = 1e-10;

/// Solves `λ(E) = λₙ(E)` by bisection over a one-parameter family of
/// equations, re-running the whole branch pipeline at every trial value.
pub fn quantize<F, E>(family: F, n: u32, bracket: (f64, f64), tol: f64) -> Result<f64, NuError>
where
    F: Fn(f64) -> Result<HypergeometricForm, E>,
    E: std::fmt::Display,
{
    let eval = |e: f64| -> Result<(f64, BranchKey), NuError> {
        let form = family(e).map_err(|err| NuError::Family {
            at: e,
            msg: err.to_string(),
        })?;
        let sol = solve(&form)?;
        Ok((sol.mismatch(n), sol.branch.key()))
    };
    let (mut lo, mut hi) = if bracket.0 <= bracket.1 {
        bracket
    } else {
        (bracket.1, bracket.0)
    };
    let (mut f_lo, key) = eval(lo)?;
    let (f_hi, key_hi) = eval(hi)?;
    if key_hi != key {
        return Err(NuError::BranchFlip { at: hi });
    }
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(NuError::NoSignChange { lo, hi });
    }
    for _ in 0..300 {
        let mid = 0.5 * (lo + hi);
        let (f_mid, key_mid) = eval(mid)?;
        if key_mid != key {
            return Err(NuError::BranchFlip { at: mid });
        }
        let width = hi - lo;
        let e_tol = QUANTIZE_ABS_TOL.max(QUANTIZE_REL_TOL * mid.abs());
        if f_mid == 0.0 || (f_mid.abs() < tol && width < e_tol) || mid == lo || mid == hi {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

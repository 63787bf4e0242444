//! Laguerre and Jacobi polynomials with real (possibly irrational) indices,
//! and Gauss–Legendre quadrature.

use std::f64::consts::PI;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    #[error("parameter {name} = {value} must exceed -1")]
    Domain { name: &'static str, value: f64 },
    #[error("quadrature did not converge to {tol:e} within {points} points")]
    NoConvergence { tol: f64, points: usize },
}

/// Generalized Laguerre polynomial `L_n^(α)(x)` by forward recurrence.
pub fn laguerre(n: usize, alpha: f64, x: f64) -> Result<f64, SpecFunError> {
    if alpha <= -1.0 || alpha.is_nan() {
        return Err(SpecFunError::Domain {
            name: "alpha",
            value: alpha,
        });
    }
    if n == 0 {
        return Ok(1.0);
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Jacobi polynomial `P_n^(a,b)(x)` by the standard three-term recurrence.
pub fn jacobi(n: usize, a: f64, b: f64, x: f64) -> Result<f64, SpecFunError> {
    if a <= -1.0 || a.is_nan() {
        return Err(SpecFunError::Domain {
            name: "a",
            value: a,
        });
    }
    if b <= -1.0 || b.is_nan() {
        return Err(SpecFunError::Domain {
            name: "b",
            value: b,
        });
    }
    if n == 0 {
        return Ok(1.0);
    }
    let mut prev = 1.0;
    let mut cur = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0);
    for k in 2..=n {
        let k = k as f64;
        let c = 2.0 * k + a + b;
        let a1 = 2.0 * k * (k + a + b) * (c - 2.0);
        let a2 = (c - 1.0) * (c * (c - 2.0) * x + a * a - b * b);
        let a3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c;
        let next = (a2 * cur - a3 * prev) / a1;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Legendre `P_n(x)` and its derivative.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let dp = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `∫₋₁¹ f(x) dx`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// `∫₀^∞ f(r) dr` through `r = L(1+x)/(1−x)`.
    pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(&self, scale: f64, f: F) -> f64 {
        self.integrate(|x| {
            let r = scale * (1.0 + x) / (1.0 - x);
            let jac = 2.0 * scale / ((1.0 - x) * (1.0 - x));
            f(r) * jac
        })
    }

    /// `∫₋₁¹ f(s) ds` through a twice-applied `s = sin(πx/2)` map, which
    /// flattens algebraic endpoint behaviour such as `(1 − s)^p`.
    pub fn integrate_endpoint_smoothed<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        let half_pi = 0.5 * PI;
        self.integrate(|x| {
            let u = (half_pi * x).sin();
            let du = half_pi * (half_pi * x).cos();
            let s = (half_pi * u).sin();
            let ds = half_pi * (half_pi * u).cos() * du;
            f(s) * ds
        })
    }
}

/// `N`-point Gauss–Legendre rule on (−1, 1), nodes ascending.
pub fn gauss_legendre(n: usize) -> QuadratureRule {
    assert!(n >= 1, "quadrature needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = n.div_ceil(2);
    for i in 0..half {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-14 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    QuadratureRule { nodes, weights }
}

/// Default starting size for adaptive integrals.
pub const DEFAULT_QUAD_POINTS: usize = 128;
const MAX_QUAD_POINTS: usize = 16384;

/// Doubles the rule size from `start` until two successive estimates agree
/// to `rel_tol`.
pub fn integrate_adaptive<F>(start: usize, rel_tol: f64, estimate: F) -> Result<f64, SpecFunError>
where
    F: Fn(&QuadratureRule) -> f64,
{
    let mut n = start.max(1);
    let mut last = estimate(&gauss_legendre(n));
    while n < MAX_QUAD_POINTS {
        n *= 2;
        let next = estimate(&gauss_legendre(n));
        if (next - last).abs() <= rel_tol * next.abs().max(f64::MIN_POSITIVE) {
            return Ok(next);
        }
        last = next;
    }
    Err(SpecFunError::NoConvergence {
        tol: rel_tol,
        points: n,
    })
}

//! Real polynomials of degree at most two.
//!
//! Every coefficient polynomial handled by the NU engine (σ, σ̃, τ̃, π, τ)
//! fits in this representation, so products are only defined where the
//! result stays within degree two.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative threshold below which a coefficient counts as zero.
pub const ZERO_TOL: f64 = 1e-12;

/// Default relative tolerance for [`Poly::perfect_square_root`].
pub const SQUARE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("polynomial has degree {found}, expected {expected}")]
    Degree {
        found: usize,
        expected: &'static str,
    },
    #[error("polynomial {0} is not a perfect square (discriminant {1:e})")]
    NotPerfectSquare(Poly, f64),
    #[error("product of degree {0} exceeds the supported degree 2")]
    Overflow(usize),
}

/// `c[0] + c[1]·s + c[2]·s²`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly {
    pub c: [f64; 3],
}

impl Poly {
    pub const ZERO: Poly = Poly { c: [0.0; 3] };

    pub const fn new(c0: f64, c1: f64, c2: f64) -> Self {
        Poly { c: [c0, c1, c2] }
    }

    pub const fn constant(c0: f64) -> Self {
        Poly::new(c0, 0.0, 0.0)
    }

    pub const fn linear(c0: f64, c1: f64) -> Self {
        Poly::new(c0, c1, 0.0)
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn norm(&self) -> f64 {
        self.c.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Highest index whose coefficient is not negligible relative to the
    /// largest one. The zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        let scale = self.max_abs();
        if scale == 0.0 {
            return 0;
        }
        (0..3)
            .rev()
            .find(|&i| self.c[i].abs() > ZERO_TOL * scale)
            .unwrap_or(0)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_abs() <= tol
    }

    pub fn eval(&self, s: f64) -> f64 {
        self.c[0] + s * (self.c[1] + s * self.c[2])
    }

    pub fn derivative(&self) -> Poly {
        Poly::linear(self.c[1], 2.0 * self.c[2])
    }

    /// Constant first derivative of a polynomial of degree ≤ 1, or the
    /// constant second derivative of a quadratic: `p''`.
    pub fn second_derivative(&self) -> f64 {
        2.0 * self.c[2]
    }

    pub fn scale(&self, k: f64) -> Poly {
        Poly::new(k * self.c[0], k * self.c[1], k * self.c[2])
    }

    /// `c1² − 4·c2·c0`; only meaningful for a genuine quadratic.
    pub fn discriminant(&self) -> Result<f64, PolyError> {
        let d = self.degree();
        if d < 2 {
            return Err(PolyError::Degree {
                found: d,
                expected: "2",
            });
        }
        Ok(self.raw_discriminant())
    }

    fn raw_discriminant(&self) -> f64 {
        self.c[1] * self.c[1] - 4.0 * self.c[2] * self.c[0]
    }

    /// Linear `q` with `q² = self` and non-negative leading coefficient.
    ///
    /// The constant term is rebuilt as `sign(c1)·√c0` rather than
    /// `c1 / (2√c2)`, which stays accurate when `c2` is tiny.
    pub fn perfect_square_root(&self, tol: f64) -> Result<Poly, PolyError> {
        match self.degree() {
            0 => {
                let c0 = self.c[0];
                if c0 < 0.0 {
                    return Err(PolyError::NotPerfectSquare(*self, 0.0));
                }
                Ok(Poly::constant(c0.sqrt()))
            }
            2 => {
                let disc = self.raw_discriminant();
                if disc.abs() > tol * self.norm().max(1.0) || self.c[2] < 0.0 {
                    return Err(PolyError::NotPerfectSquare(*self, disc));
                }
                if self.c[0] < 0.0 && self.c[0].abs() > tol * self.norm().max(1.0) {
                    return Err(PolyError::NotPerfectSquare(*self, disc));
                }
                let lead = self.c[2].sqrt();
                let tail = self.c[0].max(0.0).sqrt();
                let c0 = if self.c[1] < 0.0 { -tail } else { tail };
                Ok(Poly::linear(c0, lead))
            }
            found => Err(PolyError::Degree {
                found,
                expected: "0 or 2",
            }),
        }
    }

    /// Product, provided the result still has degree ≤ 2.
    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        let mut out = [0.0; 5];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in other.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        let scale = out.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        if let Some(deg) = (3..5).rev().find(|&i| out[i].abs() > ZERO_TOL * scale) {
            return Err(PolyError::Overflow(deg));
        }
        Ok(Poly::new(out[0], out[1], out[2]))
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        Poly::new(self.c[0] + o.c[0], self.c[1] + o.c[1], self.c[2] + o.c[2])
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        Poly::new(self.c[0] - o.c[0], self.c[1] - o.c[1], self.c[2] - o.c[2])
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-1.0)
    }
}

impl Mul<Poly> for f64 {
    type Output = Poly;
    fn mul(self, p: Poly) -> Poly {
        p.scale(self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}·s + {}·s²", self.c[0], self.c[1], self.c[2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_examples() {
        assert_eq!(Poly::new(5.0, 0.0, 0.0).derivative(), Poly::ZERO);
        assert_eq!(
            Poly::new(0.0, 2.0, 0.0).derivative(),
            Poly::new(2.0, 0.0, 0.0)
        );
        assert_eq!(
            Poly::new(1.0, -2.0, 3.0).derivative(),
            Poly::new(-2.0, 6.0, 0.0)
        );
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(Poly::new(1.0, -2.0, 1.0).discriminant().unwrap(), 0.0);
        assert_eq!(Poly::new(0.0, 0.0, 1.0).discriminant().unwrap(), 0.0);
        assert_eq!(Poly::new(-3.0, 2.0, 1.0).discriminant().unwrap(), 16.0);
    }

    #[test]
    fn discriminant_rejects_low_degree() {
        assert!(matches!(
            Poly::new(1.0, 2.0, 0.0).discriminant(),
            Err(PolyError::Degree { found: 1, .. })
        ));
    }

    #[test]
    fn perfect_square_examples() {
        let q = Poly::new(1.0, -2.0, 1.0).perfect_square_root(1e-9).unwrap();
        assert_eq!(q, Poly::new(-1.0, 1.0, 0.0));
        let q = Poly::new(4.0, 0.0, 0.0).perfect_square_root(1e-9).unwrap();
        assert_eq!(q, Poly::new(2.0, 0.0, 0.0));
        assert!(matches!(
            Poly::new(-3.0, 2.0, 1.0).perfect_square_root(1e-9),
            Err(PolyError::NotPerfectSquare(..))
        ));
    }

    #[test]
    fn perfect_square_rejects_linear_and_negative() {
        assert!(Poly::new(1.0, 1.0, 0.0).perfect_square_root(1e-9).is_err());
        assert!(Poly::new(-4.0, 0.0, 0.0).perfect_square_root(1e-9).is_err());
        assert!(Poly::new(-1.0, 0.0, -1.0)
            .perfect_square_root(1e-9)
            .is_err());
    }

    #[test]
    fn degree_uses_relative_tolerance() {
        assert_eq!(Poly::new(1.0, 1e-14, 1e-13).degree(), 0);
        assert_eq!(Poly::new(1.0, 0.0, 1e-11).degree(), 2);
        assert_eq!(Poly::ZERO.degree(), 0);
    }

    #[test]
    fn checked_mul_overflow() {
        let a = Poly::linear(1.0, 1.0);
        assert_eq!(a.checked_mul(&a).unwrap(), Poly::new(1.0, 2.0, 1.0));
        assert!(matches!(
            a.checked_mul(&Poly::new(0.0, 0.0, 1.0)),
            Err(PolyError::Overflow(3))
        ));
    }
}

//! Symmetric tridiagonal eigenvalues by Sturm-sequence bisection and
//! eigenvectors by inverse iteration.

/// Symmetric tridiagonal matrix with diagonal `d` and off-diagonal `e`
/// (`e.len() == d.len() - 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiag {
    pub d: Vec<f64>,
    pub e: Vec<f64>,
}

impl SymTridiag {
    pub fn new(d: Vec<f64>, e: Vec<f64>) -> Self {
        assert_eq!(e.len() + 1, d.len(), "off-diagonal length must be n - 1");
        SymTridiag { d, e }
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.d.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.e[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.e[i].abs() } else { 0.0 };
            lo = lo.min(self.d[i] - left - right);
            hi = hi.max(self.d[i] + left + right);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: f64) -> usize {
        let (lo, hi) = self.gershgorin();
        let tiny = f64::EPSILON * (lo.abs().max(hi.abs())).max(f64::MIN_POSITIVE);
        let mut count = 0;
        let mut q = self.d[0] - x;
        for i in 0..self.d.len() {
            if i > 0 {
                q = self.d[i] - x - self.e[i - 1] * self.e[i - 1] / q;
            }
            if q == 0.0 {
                q = -tiny;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `k`-th smallest eigenvalue (0-based).
    pub fn eigenvalue(&self, k: usize) -> f64 {
        assert!(k < self.len(), "eigenvalue index out of range");
        let (mut lo, mut hi) = self.gershgorin();
        // graded matrices have a Gershgorin scale far above the low
        // eigenvalues, so the stopping rule is relative to the bracket
        let floor = f64::MIN_POSITIVE * lo.abs().max(hi.abs()).max(1.0);
        for _ in 0..2200 {
            let mid = 0.5 * (lo + hi);
            let width = 2.0 * f64::EPSILON * lo.abs().max(hi.abs());
            if hi - lo <= width + floor || mid == lo || mid == hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// The `count` smallest eigenvalues in ascending order.
    pub fn lowest(&self, count: usize) -> Vec<f64> {
        (0..count.min(self.len()))
            .map(|k| self.eigenvalue(k))
            .collect()
    }

    /// Eigenvector for an (approximate) eigenvalue, normalized to unit
    /// Euclidean norm with a positive component of largest magnitude.
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.len();
        let (lo, hi) = self.gershgorin();
        let scale = lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
        let shift = lambda + 1e3 * f64::EPSILON * scale;
        let mut x = vec![1.0 / (n as f64).sqrt(); n];
        for _ in 0..3 {
            x = self.solve_shifted(shift, &x, scale);
            let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            x.iter_mut().for_each(|v| *v /= norm);
        }
        let peak = x
            .iter()
            .cloned()
            .fold(0.0, |m: f64, v| if v.abs() > m.abs() { v } else { m });
        if peak < 0.0 {
            x.iter_mut().for_each(|v| *v = -*v);
        }
        x
    }

    /// Solves `(T − σI)x = b` by Gaussian elimination with partial pivoting.
    fn solve_shifted(&self, sigma: f64, b: &[f64], scale: f64) -> Vec<f64> {
        let n = self.len();
        let tiny = f64::EPSILON * scale;
        let mut dl: Vec<f64> = self.e.clone();
        let mut dm: Vec<f64> = self.d.iter().map(|v| v - sigma).collect();
        let mut du: Vec<f64> = self.e.clone();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut rhs = b.to_vec();
        for i in 0..n.saturating_sub(1) {
            if dm[i].abs() >= dl[i].abs() {
                if dm[i] == 0.0 {
                    dm[i] = tiny;
                }
                let f = dl[i] / dm[i];
                dm[i + 1] -= f * du[i];
                rhs[i + 1] -= f * rhs[i];
                dl[i] = 0.0;
            } else {
                let f = dm[i] / dl[i];
                dm[i] = dl[i];
                let tmp = dm[i + 1];
                dm[i + 1] = du[i] - f * tmp;
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -f;
                }
                du[i] = tmp;
                rhs.swap(i, i + 1);
                rhs[i + 1] -= f * rhs[i];
            }
        }
        if dm[n - 1] == 0.0 {
            dm[n - 1] = tiny;
        }
        let mut x = vec![0.0; n];
        x[n - 1] = rhs[n - 1] / dm[n - 1];
        if n > 1 {
            x[n - 2] = (rhs[n - 2] - du[n - 2] * x[n - 1]) / dm[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            x[i] = (rhs[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / dm[i];
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn laplacian(n: usize) -> SymTridiag {
        SymTridiag::new(vec![2.0; n], vec![-1.0; n - 1])
    }

    #[test]
    fn discrete_laplacian_spectrum() {
        let n = 50;
        let t = laplacian(n);
        let ev = t.lowest(5);
        for (k, v) in ev.iter().enumerate() {
            let exact = 2.0 - 2.0 * (PI * (k + 1) as f64 / (n + 1) as f64).cos();
            assert_abs_diff_eq!(*v, exact, epsilon = 1e-13);
        }
        assert_eq!(t.count_below(0.0), 0);
        assert_eq!(t.count_below(4.5), n);
    }

    #[test]
    fn eigenvector_is_discrete_sine() {
        let n = 40;
        let t = laplacian(n);
        let lam = t.eigenvalue(1);
        let v = t.eigenvector(lam);
        let norm: f64 = (1..=n)
            .map(|j| (2.0 * PI * j as f64 / (n + 1) as f64).sin().powi(2))
            .sum::<f64>()
            .sqrt();
        let sign = v[0].signum();
        for (j, vj) in v.iter().enumerate() {
            let exact = (2.0 * PI * (j + 1) as f64 / (n + 1) as f64).sin() / norm;
            assert_abs_diff_eq!(*vj, sign * exact, epsilon = 1e-10);
        }
    }

    #[test]
    fn pivoting_path_with_dominant_offdiagonal() {
        let t = SymTridiag::new(vec![0.0, 0.0, 0.0], vec![1.0, 1.0]);
        // eigenvalues −√2, 0, √2
        let ev = t.lowest(3);
        assert_abs_diff_eq!(ev[0], -2f64.sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(ev[1], 0.0, epsilon = 1e-14);
        let v = t.eigenvector(ev[0]);
        let r: Vec<f64> = (0..3)
            .map(|i| {
                let mut s = t.d[i] * v[i];
                if i > 0 {
                    s += t.e[i - 1] * v[i - 1];
                }
                if i < 2 {
                    s += t.e[i] * v[i + 1];
                }
                s - ev[0] * v[i]
            })
            .collect();
        assert!(r.iter().all(|x| x.abs() < 1e-10), "{r:?}");
    }
}

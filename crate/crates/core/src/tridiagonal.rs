//! Tridiagonal systems and pivot-free elimination.

use serde::Serialize;

use crate::error::{Result, SplineError};

/// Rows `a_i x_{i-1} + b_i x_i + c_i x_{i+1} = d_i` for `i = 0..=N`.
///
/// `sub[i - 1]` holds `a_i` (i >= 1) and `sup[i]` holds `c_i` (i < N).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TridiagonalSystem {
    pub sub: Vec<f64>,
    pub diag: Vec<f64>,
    pub sup: Vec<f64>,
    pub rhs: Vec<f64>,
    /// `min_i (|b_i| - |a_i| - |c_i|)`; positive means strictly dominant.
    pub dominance_margin: f64,
}

impl TridiagonalSystem {
    pub fn new(sub: Vec<f64>, diag: Vec<f64>, sup: Vec<f64>, rhs: Vec<f64>) -> Result<Self> {
        let n = diag.len();
        if n == 0 {
            return Err(SplineError::InvalidArgument("empty tridiagonal system".into()));
        }
        for (len, expected) in [(sub.len(), n - 1), (sup.len(), n - 1), (rhs.len(), n)] {
            if len != expected {
                return Err(SplineError::LengthMismatch { expected, got: len });
            }
        }
        let entries = sub.iter().chain(&diag).chain(&sup).chain(&rhs);
        if let Some(index) = entries.clone().position(|v| !v.is_finite()) {
            return Err(SplineError::NonFinite { index });
        }
        let mut sys = Self { sub, diag, sup, rhs, dominance_margin: 0.0 };
        sys.dominance_margin = sys.compute_margin();
        Ok(sys)
    }

    fn compute_margin(&self) -> f64 {
        (0..self.len())
            .map(|i| self.diag[i].abs() - self.a(i).abs() - self.c(i).abs())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    fn a(&self, i: usize) -> f64 {
        if i == 0 { 0.0 } else { self.sub[i - 1] }
    }

    fn c(&self, i: usize) -> f64 {
        if i + 1 == self.len() { 0.0 } else { self.sup[i] }
    }

    /// `A x` for this system's matrix.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut v = self.diag[i] * x[i];
                if i > 0 {
                    v += self.a(i) * x[i - 1];
                }
                if i + 1 < n {
                    v += self.c(i) * x[i + 1];
                }
                v
            })
            .collect()
    }

    /// `||A x - d||_inf`.
    pub fn residual(&self, x: &[f64]) -> f64 {
        self.apply(x)
            .iter()
            .zip(&self.rhs)
            .map(|(ax, d)| (ax - d).abs())
            .fold(0.0, f64::max)
    }
}

/// Solves a diagonally dominant tridiagonal system by forward elimination
/// and back substitution.
///
/// Rows may be weakly dominant as long as at least one row is strictly
/// dominant; anything less is refused since elimination runs without pivoting.
pub fn thomas_solve(system: &TridiagonalSystem) -> Result<Vec<f64>> {
    let strict_row = (0..system.len())
        .any(|i| system.diag[i].abs() > system.a(i).abs() + system.c(i).abs());
    if !(system.dominance_margin >= 0.0 && strict_row) {
        return Err(SplineError::NotDominant { margin: system.dominance_margin });
    }
    let n = system.len();
    let mut c_prime = vec![0.0; n];
    let mut d_prime = vec![0.0; n];

    c_prime[0] = system.c(0) / system.diag[0];
    d_prime[0] = system.rhs[0] / system.diag[0];
    for i in 1..n {
        let a = system.a(i);
        let denom = system.diag[i] - a * c_prime[i - 1];
        c_prime[i] = system.c(i) / denom;
        d_prime[i] = (system.rhs[i] - a * d_prime[i - 1]) / denom;
    }

    let mut x = d_prime;
    for i in (0..n - 1).rev() {
        x[i] -= c_prime[i] * x[i + 1];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn identity_system() {
        let sys = TridiagonalSystem::new(vec![0.0; 3], vec![1.0; 4], vec![0.0; 3], vec![1.0, -2.0, 3.5, 0.0])
            .unwrap();
        assert_eq!(thomas_solve(&sys).unwrap(), vec![1.0, -2.0, 3.5, 0.0]);
    }

    fn det3(m: [[f64; 3]; 3]) -> f64 {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    #[test]
    fn three_by_three_matches_cramer() {
        let m = [[2.0, 1.0, 0.0], [1.0, 2.0, 1.0], [0.0, 1.0, 2.0]];
        let d = [1.0, 0.0, 1.0];
        let expected: Vec<f64> = (0..3)
            .map(|k| {
                let mut mk = m;
                for i in 0..3 {
                    mk[i][k] = d[i];
                }
                det3(mk) / det3(m)
            })
            .collect();
        assert_eq!(expected, vec![1.0, -1.0, 1.0]);
        let sys = TridiagonalSystem::new(vec![1.0, 1.0], vec![2.0, 2.0, 2.0], vec![1.0, 1.0], d.to_vec()).unwrap();
        // the middle row is only weakly dominant, the end rows strictly
        assert_eq!(sys.dominance_margin, 0.0);
        let x = thomas_solve(&sys).unwrap();
        for (xi, ei) in x.iter().zip(&expected) {
            assert_relative_eq!(*xi, *ei, epsilon = 1e-15);
        }
    }

    #[test]
    fn refuses_non_dominant() {
        let sys = TridiagonalSystem::new(vec![3.0], vec![1.0, 1.0], vec![0.5], vec![1.0, 1.0]).unwrap();
        assert!(sys.dominance_margin < 0.0);
        assert!(matches!(thomas_solve(&sys), Err(SplineError::NotDominant { .. })));
        let weak = TridiagonalSystem::new(vec![1.0], vec![1.0, 1.0], vec![1.0], vec![1.0, 1.0]).unwrap();
        assert!(matches!(thomas_solve(&weak), Err(SplineError::NotDominant { .. })));
    }

    #[test]
    fn rejects_inconsistent_lengths() {
        let err = TridiagonalSystem::new(vec![0.0], vec![1.0; 3], vec![0.0; 2], vec![0.0; 3]);
        assert!(matches!(err, Err(SplineError::LengthMismatch { .. })));
    }

    proptest! {
        #[test]
        fn dominant_systems_have_small_residual(
            rows in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0, 0.1f64..2.0, -5.0f64..5.0), 2..40)
        ) {
            let n = rows.len();
            let sub: Vec<f64> = rows[1..].iter().map(|r| r.0).collect();
            let sup: Vec<f64> = rows[..n - 1].iter().map(|r| r.1).collect();
            let diag: Vec<f64> = (0..n)
                .map(|i| {
                    let a = if i > 0 { sub[i - 1].abs() } else { 0.0 };
                    let c = if i + 1 < n { sup[i].abs() } else { 0.0 };
                    a + c + rows[i].2
                })
                .collect();
            let rhs: Vec<f64> = rows.iter().map(|r| r.3).collect();
            let sys = TridiagonalSystem::new(sub, diag, sup, rhs.clone()).unwrap();
            prop_assert!(sys.dominance_margin > 0.0);
            let x = thomas_solve(&sys).unwrap();
            let dnorm = rhs.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            prop_assert!(sys.residual(&x) <= 1e-12 * (dnorm + 1.0));
        }
    }
}

//! Dense reference fit: every interval's four exponential coefficients are
//! unknowns of one square system, built from interpolation, derivative
//! continuity and end rows, and solved by Gaussian elimination with partial
//! pivoting. Slow and independent of the tridiagonal pipeline on purpose.

use serde::Serialize;

use crate::domain::{DataSet, EndCondition, Partition, TensionParam};
use crate::error::{Result, SplineError};
use crate::spline_k2::{ExpPiece, ExpSpline2, Smoothness};

/// Largest interval count the dense fit accepts.
pub const MAX_DENSE_INTERVALS: usize = 200;

/// Solves `matrix x = rhs` by LU elimination with partial pivoting.
///
/// `matrix` is row-major and square.
pub fn dense_solve(matrix: &[Vec<f64>], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = matrix.len();
    if rhs.len() != n {
        return Err(SplineError::LengthMismatch { expected: n, got: rhs.len() });
    }
    if let Some(bad) = matrix.iter().find(|row| row.len() != n) {
        return Err(SplineError::LengthMismatch { expected: n, got: bad.len() });
    }
    if let Some(index) = matrix.iter().flatten().chain(rhs).position(|v| !v.is_finite()) {
        return Err(SplineError::NonFinite { index });
    }
    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    let mut b = rhs.to_vec();
    let mut scale: Vec<f64> = a.iter().map(|r| r.iter().fold(0.0f64, |m, v| m.max(v.abs()))).collect();
    let (mut pmax, mut pmin) = (0.0f64, f64::INFINITY);

    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))
            .unwrap_or(k);
        a.swap(k, p);
        b.swap(k, p);
        scale.swap(k, p);
        let pivot = a[k][k];
        pmax = pmax.max(pivot.abs());
        pmin = pmin.min(pivot.abs());
        if !(pivot.abs() >= 1e-13 * scale[k]) || pivot == 0.0 {
            return Err(SplineError::SingularSystem { condition: pmax / pmin });
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for (i, row) in rest.iter_mut().enumerate() {
            let f = row[k] / pivot;
            if f == 0.0 {
                continue;
            }
            row[k] = 0.0;
            for c in k + 1..n {
                row[c] -= f * pivot_row[c];
            }
            b[k + 1 + i] -= f * b[k];
        }
    }

    let mut x = vec![0.0; n];
    for k in (0..n).rev() {
        let s: f64 = (k + 1..n).map(|c| a[k][c] * x[c]).sum();
        x[k] = (b[k] - s) / a[k][k];
    }
    Ok(x)
}

/// Coordinates of the exponential basis on each interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Basis {
    /// `e^{-alpha u}, u e^{-alpha u}, e^{alpha u}, u e^{alpha u}` with `u = x - x_j`.
    #[default]
    Local,
    /// The same functions of the global `x`; badly conditioned unless `alpha |x|` is small.
    Global,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RowKind {
    Interpolation,
    Continuity,
    End,
}

/// The assembled dense system with each row's role.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GlobalSystem {
    pub matrix: Vec<Vec<f64>>,
    pub rhs: Vec<f64>,
    pub kinds: Vec<RowKind>,
}

impl GlobalSystem {
    pub fn count(&self, kind: RowKind) -> usize {
        self.kinds.iter().filter(|&&k| k == kind).count()
    }
}

/// Value of derivative `k` of basis function `f` (0..4) at local offset `u`,
/// on an interval starting at `xl`.
fn basis_eval(basis: Basis, alpha: f64, xl: f64, f: usize, u: f64, k: usize) -> f64 {
    let mut c = [0.0; 4];
    c[f] = 1.0;
    let (origin, shift) = match basis {
        Basis::Local => (0.0, 0.0),
        Basis::Global => (xl, xl),
    };
    // global x e^{+-alpha x} is (xl + u) e^{+-alpha xl} e^{+-alpha u}
    let piece = ExpPiece::Exponential {
        a: c[0] * (-alpha * shift).exp() + c[1] * origin * (-alpha * shift).exp(),
        b: c[1] * (-alpha * shift).exp(),
        c: c[2] * (alpha * shift).exp() + c[3] * origin * (alpha * shift).exp(),
        d: c[3] * (alpha * shift).exp(),
    };
    piece.eval(alpha, u, k)
}

pub fn assemble_global(
    partition: &Partition,
    data: &DataSet,
    alpha: TensionParam,
    end: EndCondition,
    basis: Basis,
) -> Result<GlobalSystem> {
    data.check(partition)?;
    alpha.check_partition(partition)?;
    end.validate()?;
    let n = partition.intervals();
    if n > MAX_DENSE_INTERVALS {
        return Err(SplineError::DenseTooLarge { intervals: n, limit: MAX_DENSE_INTERVALS });
    }
    let al = alpha.value();
    let x = partition.nodes();
    let h = partition.widths();
    let y = &data.values;
    let size = 4 * n;
    let mut sys = GlobalSystem { matrix: Vec::with_capacity(size), rhs: Vec::with_capacity(size), kinds: Vec::new() };
    let row = |j: usize, u: f64, k: usize, sign: f64, out: &mut Vec<f64>| {
        for f in 0..4 {
            out[4 * j + f] += sign * basis_eval(basis, al, x[j], f, u, k);
        }
    };

    for j in 0..n {
        for (u, v) in [(0.0, y[j]), (h[j], y[j + 1])] {
            let mut r = vec![0.0; size];
            row(j, u, 0, 1.0, &mut r);
            sys.matrix.push(r);
            sys.rhs.push(v);
            sys.kinds.push(RowKind::Interpolation);
        }
    }
    for j in 0..n - 1 {
        for k in [1, 2] {
            let mut r = vec![0.0; size];
            row(j, h[j], k, 1.0, &mut r);
            row(j + 1, 0.0, k, -1.0, &mut r);
            sys.matrix.push(r);
            sys.rhs.push(0.0);
            sys.kinds.push(RowKind::Continuity);
        }
    }
    let k = match end {
        EndCondition::TypeI { .. } => 1,
        _ => 2,
    };
    let (left, right) = end.payload();
    for (j, u, v) in [(0, 0.0, left), (n - 1, h[n - 1], right)] {
        let mut r = vec![0.0; size];
        row(j, u, k, 1.0, &mut r);
        sys.matrix.push(r);
        sys.rhs.push(v);
        sys.kinds.push(RowKind::End);
    }
    Ok(sys)
}

/// Dense reference for [`crate::spline_k2::fit_s2`].
pub fn fit_s2_global(partition: &Partition, data: &DataSet, alpha: TensionParam, end: EndCondition) -> Result<ExpSpline2> {
    fit_s2_global_with(partition, data, alpha, end, Basis::Local)
}

pub fn fit_s2_global_with(
    partition: &Partition,
    data: &DataSet,
    alpha: TensionParam,
    end: EndCondition,
    basis: Basis,
) -> Result<ExpSpline2> {
    let sys = assemble_global(partition, data, alpha, end, basis)?;
    let coef = dense_solve(&sys.matrix, &sys.rhs)?;
    let al = alpha.value();
    let pieces = coef
        .chunks(4)
        .zip(partition.nodes())
        .map(|(c, &xl)| match basis {
            Basis::Local => ExpPiece::Exponential { a: c[0], b: c[1], c: c[2], d: c[3] },
            Basis::Global => {
                let (em, ep) = ((-al * xl).exp(), (al * xl).exp());
                ExpPiece::Exponential { a: em * (c[0] + c[1] * xl), b: em * c[1], c: ep * (c[2] + c[3] * xl), d: ep * c[3] }
            }
        })
        .collect();
    ExpSpline2::new(alpha, partition.clone(), pieces, Smoothness::C2)
}

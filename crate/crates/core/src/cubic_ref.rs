//! Classical piecewise polynomials: the limits of the hyperbolic families as
//! the tension goes to zero, and the baselines they are measured against.

use serde::Serialize;

use crate::domain::{DataSet, EndCondition, Partition};
use crate::error::{Result, SplineError};
use crate::interpolant::Interpolant;
use crate::spline_k2::Smoothness;
use crate::tridiagonal::{thomas_solve, TridiagonalSystem};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearSpline {
    partition: Partition,
    values: Vec<f64>,
}

pub fn fit_linear(partition: &Partition, data: &DataSet) -> Result<LinearSpline> {
    data.check(partition)?;
    Ok(LinearSpline { partition: partition.clone(), values: data.values.clone() })
}

impl LinearSpline {
    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

impl Interpolant for LinearSpline {
    fn partition(&self) -> &Partition {
        &self.partition
    }

    fn max_deriv(&self) -> usize {
        1
    }

    fn piece_at(&self, x: f64) -> usize {
        self.partition.locate_left(x)
    }

    fn eval_piece(&self, j: usize, x: f64, deriv: usize) -> f64 {
        let (xl, xr) = (self.partition.nodes()[j], self.partition.nodes()[j + 1]);
        let (yl, yr) = (self.values[j], self.values[j + 1]);
        let slope = (yr - yl) / (xr - xl);
        match deriv {
            0 if x == xr => yr,
            0 => yl + slope * (x - xl),
            _ => slope,
        }
    }
}

/// Piecewise cubic; piece `j` is `c0 + c1 u + c2 u^2 + c3 u^3` with `u = x - x_j`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CubicSpline {
    partition: Partition,
    pieces: Vec<[f64; 4]>,
    smoothness: Smoothness,
}

impl CubicSpline {
    pub fn pieces(&self) -> &[[f64; 4]] {
        &self.pieces
    }

    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }
}

impl Interpolant for CubicSpline {
    fn partition(&self) -> &Partition {
        &self.partition
    }

    fn max_deriv(&self) -> usize {
        3
    }

    fn eval_piece(&self, j: usize, x: f64, deriv: usize) -> f64 {
        let c = self.pieces[j];
        let u = x - self.partition.nodes()[j];
        match deriv {
            0 => c[0] + u * (c[1] + u * (c[2] + u * c[3])),
            1 => c[1] + u * (2.0 * c[2] + 3.0 * u * c[3]),
            2 => 2.0 * c[2] + 6.0 * u * c[3],
            _ => 6.0 * c[3],
        }
    }
}

/// Second-derivative system of the interpolating cubic spline.
pub fn cubic_system(partition: &Partition, data: &DataSet, end: EndCondition) -> Result<TridiagonalSystem> {
    data.check(partition)?;
    end.validate()?;
    let h = partition.widths();
    let y = &data.values;
    let n = partition.intervals();
    let delta: Vec<f64> = (0..n).map(|j| (y[j + 1] - y[j]) / h[j]).collect();

    let mut sub = vec![0.0; n];
    let mut diag = vec![0.0; n + 1];
    let mut sup = vec![0.0; n];
    let mut rhs = vec![0.0; n + 1];
    for i in 1..n {
        sub[i - 1] = h[i - 1] / 6.0;
        diag[i] = (h[i - 1] + h[i]) / 3.0;
        sup[i] = h[i] / 6.0;
        rhs[i] = delta[i] - delta[i - 1];
    }
    match end {
        EndCondition::TypeI { left, right } => {
            diag[0] = h[0] / 3.0;
            sup[0] = h[0] / 6.0;
            rhs[0] = delta[0] - left;
            sub[n - 1] = h[n - 1] / 6.0;
            diag[n] = h[n - 1] / 3.0;
            rhs[n] = right - delta[n - 1];
        }
        cond => {
            let (left, right) = cond.payload();
            diag[0] = 1.0;
            diag[n] = 1.0;
            rhs[0] = left;
            rhs[n] = right;
        }
    }
    TridiagonalSystem::new(sub, diag, sup, rhs)
}

pub fn fit_cubic(partition: &Partition, data: &DataSet, end: EndCondition) -> Result<CubicSpline> {
    let m = thomas_solve(&cubic_system(partition, data, end)?)?;
    let y = &data.values;
    let pieces = partition
        .widths()
        .iter()
        .enumerate()
        .map(|(j, &h)| {
            let delta = (y[j + 1] - y[j]) / h;
            [y[j], delta - h * (2.0 * m[j] + m[j + 1]) / 6.0, 0.5 * m[j], (m[j + 1] - m[j]) / (6.0 * h)]
        })
        .collect();
    Ok(CubicSpline { partition: partition.clone(), pieces, smoothness: Smoothness::C2 })
}

/// Cubic matching value and slope at both ends of every interval.
pub fn fit_cubic_hermite(partition: &Partition, data: &DataSet, slopes: &[f64]) -> Result<CubicSpline> {
    data.check(partition)?;
    check_slopes(partition, slopes)?;
    let y = &data.values;
    let pieces = partition
        .widths()
        .iter()
        .enumerate()
        .map(|(j, &h)| cubic_hermite_piece(h, y[j], y[j + 1], slopes[j], slopes[j + 1]))
        .collect();
    Ok(CubicSpline { partition: partition.clone(), pieces, smoothness: Smoothness::C1 })
}

pub(crate) fn cubic_hermite_piece(h: f64, yl: f64, yr: f64, ml: f64, mr: f64) -> [f64; 4] {
    let delta = (yr - yl) / h;
    [yl, ml, (3.0 * delta - 2.0 * ml - mr) / h, (ml + mr - 2.0 * delta) / (h * h)]
}

pub(crate) fn check_slopes(partition: &Partition, slopes: &[f64]) -> Result<()> {
    let expected = partition.nodes().len();
    if slopes.len() != expected {
        return Err(SplineError::LengthMismatch { expected, got: slopes.len() });
    }
    if let Some(index) = slopes.iter().position(|s| !s.is_finite()) {
        return Err(SplineError::NonFinite { index });
    }
    Ok(())
}

/// Radius the limiter scales slope pairs into; just inside the Fritsch–Carlson circle of radius 3.
const FC_RADIUS: f64 = 2.9;

/// Fritsch–Carlson slopes: harmonic-style initial estimates, zeroed at
/// extrema and flat segments, then limited so every monotone interval's
/// cubic Hermite piece is monotone with some slack.
pub fn monotone_slopes(partition: &Partition, values: &[f64]) -> Vec<f64> {
    let h = partition.widths();
    let n = partition.intervals();
    let delta: Vec<f64> = (0..n).map(|j| (values[j + 1] - values[j]) / h[j]).collect();
    let mut m = vec![0.0; n + 1];
    m[0] = delta[0];
    m[n] = delta[n - 1];
    for i in 1..n {
        m[i] = if delta[i - 1] * delta[i] > 0.0 { 0.5 * (delta[i - 1] + delta[i]) } else { 0.0 };
    }
    for j in 0..n {
        if delta[j] == 0.0 {
            m[j] = 0.0;
            m[j + 1] = 0.0;
        }
    }
    for j in 0..n {
        if delta[j] == 0.0 {
            continue;
        }
        let (a, b) = (m[j] / delta[j], m[j + 1] / delta[j]);
        // opposite-signed slopes cannot occur after the sign rule, but clamp anyway
        if a < 0.0 {
            m[j] = 0.0;
        }
        if b < 0.0 {
            m[j + 1] = 0.0;
        }
        let r = a.hypot(b);
        if r > FC_RADIUS {
            let tau = FC_RADIUS / r;
            m[j] = tau * a * delta[j];
            m[j + 1] = tau * b * delta[j];
        }
    }
    m
}

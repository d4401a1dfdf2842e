//! Hermite polyhyperbolic interpolation and sampled shape checks.
//!
//! Each interval is fitted independently to the value and slope at both of
//! its ends, so the result is C1 but generally not C2. For small tension the
//! pieces approach the cubic Hermite pieces, which is what makes shrinking
//! the tension a way to inherit the shape of a shape-preserving cubic.

use serde::{Deserialize, Serialize};

use crate::cubic_ref::{check_slopes, cubic_hermite_piece};
use crate::domain::{DataSet, Partition, TensionParam};
use crate::error::{Result, SplineError};
use crate::interpolant::Interpolant;
use crate::spline_k2::{hyperbolic_hermite_piece, ExpPiece, ExpSpline2, Smoothness};

/// Below this `alpha h` an interval gets the cubic Hermite piece instead.
pub const CUBIC_FALLBACK: f64 = 1e-4;

pub fn fit_hermite_s2(partition: &Partition, data: &DataSet, slopes: &[f64], alpha: TensionParam) -> Result<ExpSpline2> {
    data.check(partition)?;
    check_slopes(partition, slopes)?;
    alpha.check_partition(partition)?;
    let al = alpha.value();
    let y = &data.values;
    let mut pieces = Vec::with_capacity(partition.intervals());
    for (j, &h) in partition.widths().iter().enumerate() {
        let (yl, yr, ml, mr) = (y[j], y[j + 1], slopes[j], slopes[j + 1]);
        let z = al * h;
        if z < CUBIC_FALLBACK {
            pieces.push(ExpPiece::Cubic { c: cubic_hermite_piece(h, yl, yr, ml, mr) });
            continue;
        }
        let piece = hyperbolic_hermite_piece(al, h, yl, yr, ml, mr)
            .ok_or(SplineError::SingularLocalSystem { interval: j, det: 0.0 })?;
        pieces.push(piece);
    }
    ExpSpline2::new(alpha, partition.clone(), pieces, Smoothness::C1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeProperty {
    Positive,
    MonotoneUp,
    MonotoneDown,
    Convex,
}

impl ShapeProperty {
    fn deriv(self) -> usize {
        match self {
            ShapeProperty::Positive => 0,
            ShapeProperty::MonotoneUp | ShapeProperty::MonotoneDown => 1,
            ShapeProperty::Convex => 2,
        }
    }

    /// Signed amount by which `v` satisfies the property (negative is a violation).
    fn slack(self, v: f64) -> f64 {
        match self {
            ShapeProperty::MonotoneDown => -v,
            _ => v,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShapeReport {
    pub property: ShapeProperty,
    pub holds: bool,
    pub witness: Option<f64>,
    pub resolution: usize,
}

pub const DEFAULT_RESOLUTION: usize = 2048;

/// Samples the relevant derivative at `resolution` points per interval plus
/// the nodes and reports the first point where the property fails by more
/// than `1e-12` times the sampled magnitude.
pub fn shape_check<S: Interpolant + ?Sized>(spline: &S, property: ShapeProperty, resolution: usize) -> Result<ShapeReport> {
    if resolution < 64 {
        return Err(SplineError::InvalidArgument(format!("resolution {resolution} is below 64")));
    }
    let grid = spline.partition().sample_grid(resolution);
    let k = property.deriv();
    let samples = grid.iter().map(|&x| spline.eval(x, k)).collect::<Result<Vec<f64>>>()?;
    let scale = 1.0 + samples.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let witness = grid
        .iter()
        .zip(&samples)
        .find(|(_, &v)| !(property.slack(v) >= -1e-12 * scale))
        .map(|(&x, _)| x);
    Ok(ShapeReport { property, holds: witness.is_none(), witness, resolution })
}

pub const MAX_HALVINGS: usize = 60;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShapeSearch {
    /// First tension that passed, if any.
    pub alpha: Option<f64>,
    pub halvings: usize,
    pub report: ShapeReport,
}

/// Fits at `alpha0` and halves the tension until the shape check passes,
/// giving up after [`MAX_HALVINGS`] halvings.
pub fn shape_search(
    partition: &Partition,
    data: &DataSet,
    slopes: &[f64],
    alpha0: TensionParam,
    property: ShapeProperty,
    resolution: usize,
) -> Result<ShapeSearch> {
    let mut alpha = alpha0.value();
    let mut halvings = 0;
    loop {
        let fit = fit_hermite_s2(partition, data, slopes, TensionParam::new(alpha)?)?;
        let report = shape_check(&fit, property, resolution)?;
        if report.holds {
            return Ok(ShapeSearch { alpha: Some(alpha), halvings, report });
        }
        if halvings == MAX_HALVINGS {
            return Ok(ShapeSearch { alpha: None, halvings, report });
        }
        alpha *= 0.5;
        halvings += 1;
    }
}

//! Second-order splines.
//!
//! A tanh spline is piecewise `p(x) + q(x) tanh(alpha x)` with `p`, `q`
//! linear; multiplying by `cosh(alpha x)` gives the polyhyperbolic spline
//! `p(x) cosh(alpha x) + q(x) sinh(alpha x)`, which solves
//! `(D^2 - alpha^2)^2 s = 0` between nodes.
//!
//! Fitting works on the tanh form. The unknowns are the node second
//! derivatives `t''_j`; continuity of `t'` at interior nodes gives a
//! tridiagonal system. Once it is solved, each piece of `s` is rebuilt from
//! its end values and slopes in a hyperbolic basis, since the `p`, `q`
//! coefficients themselves cancel badly away from the origin. Each interval contributes four numbers (see
//! [`IntervalMoments`]): the excess of the end slopes over the chord slope
//! per unit of `t''` at either end. They are evaluated in a factored form
//! that has no 0/0 as `alpha -> 0` and no overflow for large `alpha x`:
//!
//! ```text
//! D      = sinh(z)/z / (cosh(a x_L) cosh(a x_R)) + tanh(a x_L) tanh(a x_R),  z = a h
//! E      = h K3(z) / (2 D),          K3(z) = (z cosh z - sinh z) / z^3
//! r0     =  cosh(a x_L)/cosh(a x_R) E
//! l1     = -cosh(a x_R)/cosh(a x_L) E
//! r1     =  h cosh(a x_R)/cosh(a x_L) (sinh(z)/z - K3 - z tanh(a x_R) K3) / (2 D)
//! l0     = -h cosh(a x_L)/cosh(a x_R) (sinh(z)/z - K3 + z tanh(a x_L) K3) / (2 D)
//! ```
//!
//! As `alpha -> 0` these tend to `h/6, -h/6, h/3, -h/3`, the cubic spline rows.

use serde::Serialize;

use crate::domain::{DataSet, EndCondition, Partition, TensionParam};
use crate::error::{Result, SplineError};
use crate::interpolant::Interpolant;
use crate::kernels::{cosh_ratio, inv_cosh_product, k3, sech, sinhc};
use crate::tridiagonal::{thomas_solve, TridiagonalSystem};

/// Slope corrections of one interval `[x_L, x_R]` of a tanh spline.
///
/// With `m_L = t''(x_L)`, `m_R = t''(x_R)` and chord slope `delta`:
/// `t'(x_R) = delta + r0 m_L + r1 m_R` and `t'(x_L) = delta + l0 m_L + l1 m_R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntervalMoments {
    pub r0: f64,
    pub r1: f64,
    pub l0: f64,
    pub l1: f64,
    /// Shared factor `E` of the off-diagonal entries.
    pub e: f64,
    /// `(|first term| + |second term|) / |D|` for the shared denominator.
    pub cancellation: f64,
}

/// Relative cancellation in the shared denominator above which a fit is suspect.
pub const CANCELLATION_WARNING: f64 = 1e6;

pub fn interval_moments(alpha: f64, xl: f64, xr: f64) -> IntervalMoments {
    let h = xr - xl;
    let z = alpha * h;
    let (al, ar) = (alpha * xl, alpha * xr);
    let (tl, tr) = (al.tanh(), ar.tanh());
    let first = sinhc(z) * inv_cosh_product(al, ar);
    let second = tl * tr;
    let den = first + second;
    let k = k3(z);
    let shk = sinhc(z) - k;
    let l_over_r = cosh_ratio(al, ar);
    let r_over_l = cosh_ratio(ar, al);
    let e = h * k / (2.0 * den);
    IntervalMoments {
        r0: l_over_r * e,
        l1: -r_over_l * e,
        r1: h * r_over_l * (shk - z * tr * k) / (2.0 * den),
        l0: -h * l_over_r * (shk + z * tl * k) / (2.0 * den),
        e,
        cancellation: (first.abs() + second.abs()) / den.abs(),
    }
}

/// Worst denominator cancellation over the partition.
pub fn max_cancellation(partition: &Partition, alpha: TensionParam) -> f64 {
    partition
        .nodes()
        .windows(2)
        .map(|w| interval_moments(alpha.value(), w[0], w[1]).cancellation)
        .fold(0.0, f64::max)
}

/// How the end rows of the system are written.
#[derive(Debug, Clone, Copy)]
enum EndRows {
    /// The condition constrains `t` itself.
    Tanh(EndCondition),
    /// The condition constrains `s = cosh(alpha x) t`; `values` are already sech-scaled.
    Bridged(EndCondition),
}

/// Builds the tridiagonal system for the node second derivatives of the
/// tanh spline interpolating `values`, with the end condition applied to `t`.
pub fn assemble_t2_system(
    partition: &Partition,
    values: &DataSet,
    alpha: TensionParam,
    end: EndCondition,
) -> Result<TridiagonalSystem> {
    values.check(partition)?;
    alpha.check_partition(partition)?;
    end.validate()?;
    assemble(partition, &values.values, alpha, EndRows::Tanh(end))
}

fn assemble(partition: &Partition, y: &[f64], alpha: TensionParam, end: EndRows) -> Result<TridiagonalSystem> {
    let al = alpha.value();
    let x = partition.nodes();
    let n = partition.intervals();
    let mom: Vec<IntervalMoments> = x.windows(2).map(|w| interval_moments(al, w[0], w[1])).collect();
    let delta: Vec<f64> = (0..n).map(|j| (y[j + 1] - y[j]) / partition.widths()[j]).collect();

    let mut sub = vec![0.0; n];
    let mut diag = vec![0.0; n + 1];
    let mut sup = vec![0.0; n];
    let mut rhs = vec![0.0; n + 1];

    for i in 1..n {
        sub[i - 1] = mom[i - 1].r0;
        diag[i] = mom[i - 1].r1 - mom[i].l0;
        sup[i] = -mom[i].l1;
        rhs[i] = delta[i] - delta[i - 1];
    }

    let (first, last) = (mom[0], mom[n - 1]);
    match end {
        EndRows::Tanh(EndCondition::TypeI { left, right }) | EndRows::Bridged(EndCondition::TypeI { left, right }) => {
            // a Type I condition on s becomes one on t once the payload is transformed
            let (left, right) = match end {
                EndRows::Bridged(_) => {
                    let (a, b) = (partition.a(), partition.b());
                    let s_left = y[0] / sech(al * a);
                    let s_right = y[n] / sech(al * b);
                    (
                        sech(al * a) * (left - al * (al * a).tanh() * s_left),
                        sech(al * b) * (right - al * (al * b).tanh() * s_right),
                    )
                }
                EndRows::Tanh(_) => (left, right),
            };
            diag[0] = -first.l0;
            sup[0] = -first.l1;
            rhs[0] = delta[0] - left;
            sub[n - 1] = last.r0;
            diag[n] = last.r1;
            rhs[n] = right - delta[n - 1];
        }
        EndRows::Tanh(cond) => {
            let (left, right) = cond.payload();
            diag[0] = 1.0;
            diag[n] = 1.0;
            rhs[0] = left;
            rhs[n] = right;
        }
        EndRows::Bridged(cond) => {
            // s''/cosh = t'' + 2 alpha tanh t' + alpha^2 t, with t' at the ends
            // taken from the end intervals' slope corrections
            let (left, right) = cond.payload();
            let (a, b) = (partition.a(), partition.b());
            let (ta, tb) = ((al * a).tanh(), (al * b).tanh());
            diag[0] = 1.0 + 2.0 * al * ta * first.l0;
            sup[0] = 2.0 * al * ta * first.l1;
            rhs[0] = sech(al * a) * left - 2.0 * al * ta * delta[0] - al * al * y[0];
            sub[n - 1] = 2.0 * al * tb * last.r0;
            diag[n] = 1.0 + 2.0 * al * tb * last.r1;
            rhs[n] = sech(al * b) * right - 2.0 * al * tb * delta[n - 1] - al * al * y[n];
        }
    }

    let system = TridiagonalSystem::new(sub, diag, sup, rhs)?;
    if !(system.dominance_margin > 0.0) {
        return Err(SplineError::TensionTooLarge { margin: system.dominance_margin });
    }
    Ok(system)
}

/// Coefficients of one tanh piece: `t(x) = p0 + p1 x + (q0 + q1 x) tanh(alpha x)`.
///
/// Only for export. Away from the origin or for small tension `p` and `q`
/// cancel heavily, so evaluation goes through the hyperbolic pieces instead.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TanhPiece {
    pub p0: f64,
    pub p1: f64,
    pub q0: f64,
    pub q1: f64,
}

/// A tanh spline `t`, stored as the pieces of `s = cosh(alpha x) t` in the
/// hyperbolic basis and evaluated as `t = sech(alpha x) s`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TanhSpline2 {
    alpha: TensionParam,
    partition: Partition,
    pieces: Vec<ExpPiece>,
    node_second_derivs: Vec<f64>,
}

impl TanhSpline2 {
    pub fn alpha(&self) -> TensionParam {
        self.alpha
    }

    pub fn node_second_derivs(&self) -> &[f64] {
        &self.node_second_derivs
    }

    /// Pieces of `cosh(alpha x) t(x)` in local coordinates.
    pub fn scaled_pieces(&self) -> &[ExpPiece] {
        &self.pieces
    }

    /// Global `p`, `q` coefficients of every piece.
    pub fn tanh_pieces(&self) -> Vec<TanhPiece> {
        let al = self.alpha.value();
        self.pieces
            .iter()
            .zip(self.partition.nodes())
            .map(|(piece, &xl)| {
                let [a, b, c, d] = piece.exponential_coefficients(al).unwrap_or([f64::NAN; 4]);
                // s = m(x) e^{-alpha x} + n(x) e^{alpha x}, then p = n + m and q = n - m
                let (ep, em) = ((al * xl).exp(), (-al * xl).exp());
                let (m1, n1) = (ep * b, em * d);
                let (m0, n0) = (ep * a - m1 * xl, em * c - n1 * xl);
                TanhPiece { p0: n0 + m0, p1: n1 + m1, q0: n0 - m0, q1: n1 - m1 }
            })
            .collect()
    }
}

impl Interpolant for TanhSpline2 {
    fn partition(&self) -> &Partition {
        &self.partition
    }

    fn max_deriv(&self) -> usize {
        2
    }

    fn eval_piece(&self, j: usize, x: f64, deriv: usize) -> f64 {
        let al = self.alpha.value();
        let u = x - self.partition.nodes()[j];
        let piece = &self.pieces[j];
        let g = sech(al * x);
        let s = piece.eval(al, u, 0);
        if deriv == 0 {
            return g * s;
        }
        let t = (al * x).tanh();
        let s1 = piece.eval(al, u, 1);
        match deriv {
            1 => g * (s1 - al * t * s),
            _ => g * (piece.eval(al, u, 2) - 2.0 * al * t * s1 + al * al * (2.0 * t * t - 1.0) * s),
        }
    }
}

/// Rebuilds the tanh spline from node values and node second derivatives `tpp`.
///
/// Each interval's slope corrections give `t'` at both of its ends; with the
/// values that is Hermite data for `s = cosh(alpha x) t`, which fixes the piece.
pub fn reconstruct_t2(partition: &Partition, values: &DataSet, alpha: TensionParam, tpp: &[f64]) -> Result<TanhSpline2> {
    values.check(partition)?;
    alpha.check_partition(partition)?;
    let al = alpha.value();
    let s_values: Vec<f64> = partition.nodes().iter().zip(&values.values).map(|(&x, &t)| t / sech(al * x)).collect();
    build(partition, &values.values, &s_values, alpha, tpp)
}

/// `t_values` and `s_values` are the same node data in both frames; passing
/// both keeps the s-frame values exact when they are the input.
fn build(partition: &Partition, t_values: &[f64], s_values: &[f64], alpha: TensionParam, tpp: &[f64]) -> Result<TanhSpline2> {
    let expected = partition.nodes().len();
    if tpp.len() != expected {
        return Err(SplineError::LengthMismatch { expected, got: tpp.len() });
    }
    if let Some(index) = tpp.iter().position(|v| !v.is_finite()) {
        return Err(SplineError::NonFinite { index });
    }
    let al = alpha.value();
    let x = partition.nodes();
    let mut pieces = Vec::with_capacity(partition.intervals());
    for (j, &h) in partition.widths().iter().enumerate() {
        let (xl, xr) = (x[j], x[j + 1]);
        let mom = interval_moments(al, xl, xr);
        if !(mom.cancellation < 1e14) {
            let z = al * h;
            let den = sinhc(z) * inv_cosh_product(al * xl, al * xr) + (al * xl).tanh() * (al * xr).tanh();
            return Err(SplineError::SingularLocalSystem { interval: j, det: al * z * den });
        }
        let delta = (t_values[j + 1] - t_values[j]) / h;
        let tl = delta + mom.l0 * tpp[j] + mom.l1 * tpp[j + 1];
        let tr = delta + mom.r0 * tpp[j] + mom.r1 * tpp[j + 1];
        // s' = alpha tanh s + cosh t'
        let sl = al * (al * xl).tanh() * s_values[j] + tl / sech(al * xl);
        let sr = al * (al * xr).tanh() * s_values[j + 1] + tr / sech(al * xr);
        pieces.push(hyperbolic_hermite_piece(al, h, s_values[j], s_values[j + 1], sl, sr).ok_or(
            SplineError::SingularLocalSystem { interval: j, det: 0.0 },
        )?);
    }
    Ok(TanhSpline2 { alpha, partition: partition.clone(), pieces, node_second_derivs: tpp.to_vec() })
}

/// The piece of the span matching value and slope at both ends of `[0, h]`,
/// in the hyperbolic basis. `None` if the 2x2 for the last two coefficients
/// is numerically singular.
pub(crate) fn hyperbolic_hermite_piece(alpha: f64, h: f64, yl: f64, yr: f64, ml: f64, mr: f64) -> Option<ExpPiece> {
    // cosh(au) and sinh(au)/a carry the left value and slope; the other two
    // basis functions vanish to second order at u = 0
    let z = alpha * h;
    let (shc, ch, kk) = (sinhc(z), z.cosh(), k3(z));
    let r1 = yr - yl * ch - ml * h * shc;
    let r2 = mr - yl * alpha * z.sinh() - ml * ch;
    let (m11, m12) = (h * h * shc, h * h * h * kk);
    let (m21, m22) = (h * (shc + ch), h * h * shc);
    let det = m11 * m22 - m12 * m21;
    let scale = m11.abs().max(m12.abs()) * m21.abs().max(m22.abs());
    if !(det.abs() > 1e-14 * scale) {
        return None;
    }
    let c3 = (r1 * m22 - m12 * r2) / det;
    let c4 = (m11 * r2 - m21 * r1) / det;
    Some(ExpPiece::Hyperbolic { c: [yl, ml, c3, c4] })
}

/// Tanh spline interpolating `data`, end condition applied to `t`.
pub fn fit_t2(partition: &Partition, data: &DataSet, alpha: TensionParam, end: EndCondition) -> Result<TanhSpline2> {
    let system = assemble_t2_system(partition, data, alpha, end)?;
    let tpp = thomas_solve(&system)?;
    reconstruct_t2(partition, data, alpha, &tpp)
}

/// Tanh spline `t` fitted to the sech-scaled data `sech(alpha x_j) y_j` such
/// that `cosh(alpha x) t(x)` interpolates `data` and satisfies `end`.
pub fn fit_t2_sech(
    partition: &Partition,
    data: &DataSet,
    alpha: TensionParam,
    end: EndCondition,
) -> Result<TanhSpline2> {
    data.check(partition)?;
    alpha.check_partition(partition)?;
    end.validate()?;
    let scaled = sech_scale(partition, data, alpha);
    let system = assemble(partition, &scaled.values, alpha, EndRows::Bridged(end))?;
    let tpp = thomas_solve(&system)?;
    build(partition, &scaled.values, &data.values, alpha, &tpp)
}

/// `(sech(alpha x_j) y_j)_j`.
pub fn sech_scale(partition: &Partition, data: &DataSet, alpha: TensionParam) -> DataSet {
    let al = alpha.value();
    DataSet::new(partition.nodes().iter().zip(&data.values).map(|(&x, &y)| sech(al * x) * y).collect())
}

/// Polyhyperbolic spline interpolating `data`, end condition applied to `s`.
pub fn fit_s2(partition: &Partition, data: &DataSet, alpha: TensionParam, end: EndCondition) -> Result<ExpSpline2> {
    to_exp_representation(&fit_t2_sech(partition, data, alpha, end)?)
}

/// One piece of an [`ExpSpline2`] in the local coordinate `u = x - x_L`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "basis", rename_all = "lowercase")]
pub enum ExpPiece {
    /// `(a + b u) e^{-alpha u} + (c + d u) e^{alpha u}`.
    Exponential { a: f64, b: f64, c: f64, d: f64 },
    /// `c0 cosh(alpha u) + c1 sinh(alpha u)/alpha + c2 u sinh(alpha u)/alpha + c3 u^3 K3(alpha u)`.
    ///
    /// Same span as the exponential form, but every basis function stays
    /// O(1) as `alpha u -> 0`; Hermite fits use it.
    Hyperbolic { c: [f64; 4] },
    /// `c0 + c1 u + c2 u^2 + c3 u^3`, the `alpha h -> 0` limit used by Hermite fits.
    Cubic { c: [f64; 4] },
}

impl ExpPiece {
    /// `(a, b, c, d)` of the exponential form, when the piece has one.
    pub fn exponential_coefficients(&self, alpha: f64) -> Option<[f64; 4]> {
        match *self {
            ExpPiece::Exponential { a, b, c, d } => Some([a, b, c, d]),
            ExpPiece::Hyperbolic { c: k } => {
                let (a1, a2, a3) = (2.0 * alpha, 2.0 * alpha * alpha, 2.0 * alpha * alpha * alpha);
                Some([
                    0.5 * k[0] - k[1] / a1 + k[3] / a3,
                    -k[2] / a1 + k[3] / a2,
                    0.5 * k[0] + k[1] / a1 - k[3] / a3,
                    k[2] / a1 + k[3] / a2,
                ])
            }
            ExpPiece::Cubic { .. } => None,
        }
    }

    pub fn eval(&self, alpha: f64, u: f64, deriv: usize) -> f64 {
        match *self {
            ExpPiece::Exponential { a, b, c, d } => {
                let (em, ep) = ((-alpha * u).exp(), (alpha * u).exp());
                let (lm, lp) = (a + b * u, c + d * u);
                match deriv {
                    0 => lm * em + lp * ep,
                    1 => (b - alpha * lm) * em + (d + alpha * lp) * ep,
                    2 => (alpha * alpha * lm - 2.0 * alpha * b) * em + (alpha * alpha * lp + 2.0 * alpha * d) * ep,
                    3 => {
                        let a2 = alpha * alpha;
                        (3.0 * a2 * b - a2 * alpha * lm) * em + (3.0 * a2 * d + a2 * alpha * lp) * ep
                    }
                    _ => {
                        let a3 = alpha * alpha * alpha;
                        (a3 * alpha * lm - 4.0 * a3 * b) * em + (a3 * alpha * lp + 4.0 * a3 * d) * ep
                    }
                }
            }
            ExpPiece::Hyperbolic { c } => {
                let k = deriv.min(4);
                let (ch, sh) = ((alpha * u).cosh(), (alpha * u).sinh());
                let shu = u * sinhc(alpha * u);
                let a = alpha;
                let b1 = [ch, a * sh, a * a * ch, a * a * a * sh, a * a * a * a * ch];
                let b2 = [shu, ch, a * sh, a * a * ch, a * a * a * sh];
                let b3 = [
                    u * shu,
                    shu + u * ch,
                    2.0 * ch + a * u * sh,
                    3.0 * a * sh + a * a * u * ch,
                    4.0 * a * a * ch + a * a * a * u * sh,
                ];
                let b4 = if k == 0 { u * u * u * k3(a * u) } else { b3[k - 1] };
                c[0] * b1[k] + c[1] * b2[k] + c[2] * b3[k] + c[3] * b4
            }
            ExpPiece::Cubic { c } => match deriv {
                0 => c[0] + u * (c[1] + u * (c[2] + u * c[3])),
                1 => c[1] + u * (2.0 * c[2] + 3.0 * u * c[3]),
                2 => 2.0 * c[2] + 6.0 * u * c[3],
                3 => 6.0 * c[3],
                _ => 0.0,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Smoothness {
    C1,
    C2,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpSpline2 {
    alpha: TensionParam,
    partition: Partition,
    pieces: Vec<ExpPiece>,
    smoothness: Smoothness,
}

impl ExpSpline2 {
    pub fn new(alpha: TensionParam, partition: Partition, pieces: Vec<ExpPiece>, smoothness: Smoothness) -> Result<Self> {
        if pieces.len() != partition.intervals() {
            return Err(SplineError::LengthMismatch { expected: partition.intervals(), got: pieces.len() });
        }
        Ok(Self { alpha, partition, pieces, smoothness })
    }

    pub fn alpha(&self) -> TensionParam {
        self.alpha
    }

    pub fn pieces(&self) -> &[ExpPiece] {
        &self.pieces
    }

    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }
}

impl Interpolant for ExpSpline2 {
    fn partition(&self) -> &Partition {
        &self.partition
    }

    fn max_deriv(&self) -> usize {
        4
    }

    fn eval_piece(&self, j: usize, x: f64, deriv: usize) -> f64 {
        self.pieces[j].eval(self.alpha.value(), x - self.partition.nodes()[j], deriv)
    }
}

/// The spline `cosh(alpha x) t(x)`.
pub fn to_exp_representation(t: &TanhSpline2) -> Result<ExpSpline2> {
    t.alpha.check_partition(&t.partition)?;
    ExpSpline2::new(t.alpha, t.partition.clone(), t.pieces.clone(), Smoothness::C2)
}

/// Tolerance scale `1 + ||Y||_inf + ||t''||_inf` for a fitted tanh spline.
pub fn tolerance_scale(values: &[f64], tpp: &[f64]) -> f64 {
    let m = |v: &[f64]| v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    1.0 + m(values) + m(tpp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::EndKind;
    use approx::assert_relative_eq;

    /// Slope corrections straight from the definition: solve the 2x2 for q,
    /// then differentiate q tanh(alpha x) and subtract the chord slope.
    fn moments_by_definition(alpha: f64, xl: f64, xr: f64) -> [f64; 4] {
        let h = xr - xl;
        let d2 = |q0: f64, q1: f64, x: f64| {
            let t = (alpha * x).tanh();
            let s = 1.0 - t * t;
            2.0 * alpha * s * (q1 - alpha * t * (q0 + q1 * x))
        };
        let m = [[d2(1.0, 0.0, xl), d2(0.0, 1.0, xl)], [d2(1.0, 0.0, xr), d2(0.0, 1.0, xr)]];
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let mut out = [0.0; 4];
        for (k, (bl, br)) in [(1.0, 0.0), (0.0, 1.0)].into_iter().enumerate() {
            let q0 = (bl * m[1][1] - m[0][1] * br) / det;
            let q1 = (m[0][0] * br - m[1][0] * bl) / det;
            let phi = |x: f64| (q0 + q1 * x) * (alpha * x).tanh();
            let dphi = |x: f64| {
                let t = (alpha * x).tanh();
                q1 * t + (q0 + q1 * x) * alpha * (1.0 - t * t)
            };
            let chord = (phi(xr) - phi(xl)) / h;
            out[k] = dphi(xr) - chord; // r0, r1
            out[2 + k] = dphi(xl) - chord; // l0, l1
        }
        out
    }

    #[test]
    fn moments_match_definition() {
        for &(al, xl, xr) in &[(0.3, 0.2, 0.7), (1.0, 1.0, 1.25), (0.5, -1.0, -0.5), (1.0, -0.3, 0.4), (2.0, 0.0, 0.6)] {
            let m = interval_moments(al, xl, xr);
            let d = moments_by_definition(al, xl, xr);
            assert_relative_eq!(m.r0, d[0], max_relative = 1e-11);
            assert_relative_eq!(m.r1, d[1], max_relative = 1e-11);
            assert_relative_eq!(m.l0, d[2], max_relative = 1e-11);
            assert_relative_eq!(m.l1, d[3], max_relative = 1e-11);
        }
    }

    #[test]
    fn moments_frozen_values() {
        // 50-digit evaluation of the definition (mpmath), rounded
        let m = interval_moments(0.3, 0.2, 0.7);
        assert_relative_eq!(m.r0, 0.0824650862554, max_relative = 1e-11);
        assert_relative_eq!(m.l0, -0.166042323512, max_relative = 1e-11);
        assert_relative_eq!(m.r1, 0.169413276583, max_relative = 1e-11);
        assert_relative_eq!(m.l1, -0.0858461543465, max_relative = 1e-11);
    }

    #[test]
    fn off_diagonal_matches_closed_form_e() {
        // a_j = cosh(a x_{j-1})/cosh(a x_j) E with
        // E = (z cosh z - sinh z) / (2 a^2 h (tanh(a x_R) - tanh(a x_L) + z tanh(a x_L) tanh(a x_R)))
        let (al, xl, xr) = (0.8, 0.4, 1.1);
        let (h, z) = (xr - xl, al * (xr - xl));
        let (tl, tr) = (f64::tanh(al * xl), f64::tanh(al * xr));
        let e = (z * z.cosh() - z.sinh()) / (2.0 * al * al * h * (tr - tl + z * tl * tr));
        let m = interval_moments(al, xl, xr);
        assert_relative_eq!(m.e, e, max_relative = 1e-12);
        assert_relative_eq!(m.r0, f64::cosh(al * xl) / f64::cosh(al * xr) * e, max_relative = 1e-12);
    }

    #[test]
    fn small_tension_rows_approach_cubic_rows() {
        let h = 0.5;
        for al in [1e-3, 1e-5, 1e-9] {
            let m = interval_moments(al, 2.5, 3.0);
            assert_relative_eq!(m.r0, h / 6.0, max_relative = 1e-5);
            assert_relative_eq!(m.l1, -h / 6.0, max_relative = 1e-5);
            assert_relative_eq!(m.r1, h / 3.0, max_relative = 1e-5);
            assert_relative_eq!(m.l0, -h / 3.0, max_relative = 1e-5);
        }
    }

    #[test]
    fn large_arguments_stay_finite() {
        let m = interval_moments(1.0, 400.0, 400.5);
        for v in [m.r0, m.r1, m.l0, m.l1] {
            assert!(v.is_finite());
        }
        let shifted = interval_moments(1.0, 20.0, 20.5);
        assert_relative_eq!(m.r0, shifted.r0, max_relative = 1e-10);
        assert_relative_eq!(m.r1, shifted.r1, max_relative = 1e-10);
    }

    #[test]
    fn constant_data_type_ii_gives_zero_rhs() {
        let p = Partition::uniform(0.0, 3.0, 6).unwrap();
        let d = DataSet::new(vec![4.0; 7]);
        let a = TensionParam::new(0.5).unwrap();
        let sys = assemble_t2_system(&p, &d, a, EndCondition::TypeII).unwrap();
        assert!(sys.rhs.iter().all(|&v| v == 0.0));
        let t = fit_t2(&p, &d, a, EndCondition::TypeII).unwrap();
        assert!(t.node_second_derivs().iter().all(|&v| v == 0.0));
        for x in p.sample_grid(7) {
            assert_relative_eq!(t.eval(x, 0).unwrap(), 4.0, max_relative = 1e-14);
        }
    }

    #[test]
    fn linear_data_type_i_has_zero_second_derivatives() {
        let p = Partition::new(vec![0.0, 1.0, 2.0]).unwrap();
        let d = DataSet::new(vec![0.0, 1.0, 2.0]);
        let a = TensionParam::new(0.7).unwrap();
        let end = EndCondition::TypeI { left: 1.0, right: 1.0 };
        let sys = assemble_t2_system(&p, &d, a, end).unwrap();
        assert!(sys.rhs.iter().all(|&v| v == 0.0));
        let t = fit_t2(&p, &d, a, end).unwrap();
        for x in p.sample_grid(9) {
            assert_relative_eq!(t.eval(x, 0).unwrap(), x, epsilon = 1e-14);
            assert_relative_eq!(t.eval(x, 1).unwrap(), 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn zero_second_derivatives_reconstruct_linear_interpolant() {
        let p = Partition::new(vec![-1.0, 0.5, 2.0]).unwrap();
        let d = DataSet::new(vec![1.0, -2.0, 0.5]);
        let t = reconstruct_t2(&p, &d, TensionParam::new(0.9).unwrap(), &[0.0; 3]).unwrap();
        for piece in t.tanh_pieces() {
            assert!(piece.q0.abs() < 1e-13 && piece.q1.abs() < 1e-13);
        }
        assert_relative_eq!(t.eval(-0.25, 0).unwrap(), -0.5, epsilon = 1e-14);
    }

    #[test]
    fn reconstruct_hits_prescribed_second_derivatives() {
        let p = Partition::new(vec![0.0, 1.0]).unwrap();
        let d = DataSet::new(vec![0.0, 0.0]);
        let t = reconstruct_t2(&p, &d, TensionParam::new(1.0).unwrap(), &[1.0, 1.0]).unwrap();
        assert_relative_eq!(t.eval(0.0, 2).unwrap(), 1.0, max_relative = 1e-13);
        assert_relative_eq!(t.eval(1.0, 2).unwrap(), 1.0, max_relative = 1e-13);
        assert_relative_eq!(t.eval(0.0, 0).unwrap(), 0.0, epsilon = 1e-14);
        assert_relative_eq!(t.eval(1.0, 0).unwrap(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn exp_representation_of_cosh_and_sinh() {
        let p = Partition::new(vec![0.0, 1.0]).unwrap();
        let a = TensionParam::new(1.0).unwrap();
        // t = 1 and t = tanh x: zero second derivatives at neither end for tanh
        let one = reconstruct_t2(&p, &DataSet::new(vec![1.0, 1.0]), a, &[0.0; 2]).unwrap();
        let s = to_exp_representation(&one).unwrap();
        let c = s.pieces()[0].exponential_coefficients(1.0).unwrap();
        for (got, want) in c.iter().zip([0.5, 0.0, 0.5, 0.0]) {
            assert_relative_eq!(*got, want, epsilon = 1e-14);
        }
        let th = |x: f64, k| match k {
            0 => x.tanh(),
            _ => -2.0 * x.tanh() / x.cosh().powi(2),
        };
        let d = DataSet::new(vec![th(0.0, 0), th(1.0, 0)]);
        let sinh = reconstruct_t2(&p, &d, a, &[th(0.0, 2), th(1.0, 2)]).unwrap();
        let c = to_exp_representation(&sinh).unwrap().pieces()[0].exponential_coefficients(1.0).unwrap();
        for (got, want) in c.iter().zip([-0.5, 0.0, 0.5, 0.0]) {
            assert_relative_eq!(*got, want, epsilon = 1e-13);
        }
        let q = sinh.tanh_pieces()[0];
        assert_relative_eq!(q.q0, 1.0, epsilon = 1e-13);
        assert!(q.p0.abs() < 1e-13 && q.p1.abs() < 1e-13 && q.q1.abs() < 1e-13);
    }

    #[test]
    fn exp_piece_derivatives_match_finite_differences() {
        let piece = ExpPiece::Exponential { a: 0.3, b: -1.2, c: 0.7, d: 0.4 };
        let al = 1.3;
        let h = 1e-3;
        for u in [0.1, 0.4, 0.9] {
            for k in 1..=4 {
                let fd = (piece.eval(al, u + h, k - 1) - piece.eval(al, u - h, k - 1)) / (2.0 * h);
                assert_relative_eq!(piece.eval(al, u, k), fd, max_relative = 1e-5);
            }
        }
    }

    #[test]
    fn hyperbolic_piece_matches_its_exponential_form() {
        let al = 0.9;
        let piece = ExpPiece::Hyperbolic { c: [0.4, -1.1, 0.3, 2.0] };
        let [a, b, c, d] = piece.exponential_coefficients(al).unwrap();
        let exp = ExpPiece::Exponential { a, b, c, d };
        for u in [0.0, 0.2, 0.7, 1.3] {
            for k in 0..=4 {
                assert_relative_eq!(piece.eval(al, u, k), exp.eval(al, u, k), max_relative = 1e-12, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn single_interval_all_end_types() {
        let p = Partition::new(vec![0.0, 1.5]).unwrap();
        let d = DataSet::new(vec![1.0, -0.5]);
        let a = TensionParam::new(0.6).unwrap();
        for kind in EndKind::ALL {
            let end = EndCondition::new(kind, 0.3, -0.2).unwrap();
            let t = fit_t2(&p, &d, a, end).unwrap();
            assert_relative_eq!(t.eval(0.0, 0).unwrap(), 1.0, epsilon = 1e-13);
            assert_relative_eq!(t.eval(1.5, 0).unwrap(), -0.5, epsilon = 1e-13);
            match kind {
                EndKind::TypeI => {
                    assert_relative_eq!(t.eval(0.0, 1).unwrap(), 0.3, epsilon = 1e-12);
                    assert_relative_eq!(t.eval(1.5, 1).unwrap(), -0.2, epsilon = 1e-12);
                }
                EndKind::TypeII => {
                    assert_relative_eq!(t.eval(0.0, 2).unwrap(), 0.0, epsilon = 1e-12);
                }
                EndKind::TypeIII => {
                    assert_relative_eq!(t.eval(0.0, 2).unwrap(), 0.3, epsilon = 1e-12);
                    assert_relative_eq!(t.eval(1.5, 2).unwrap(), -0.2, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn large_tension_breaks_dominance() {
        let p = Partition::uniform(0.0, 3.0, 6).unwrap();
        let d = DataSet::new(vec![0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0]);
        let end = EndCondition::TypeI { left: 0.0, right: 0.0 };
        let err = fit_t2(&p, &d, TensionParam::new(64.0).unwrap(), end).unwrap_err();
        assert!(matches!(err, SplineError::TensionTooLarge { .. }));
    }
}

//! Hyperbolic kernels that stay accurate where the textbook expressions
//! overflow or cancel.
//!
//! Every kernel switches to an exponent-factored or log-space form once an
//! argument exceeds [`LARGE_ARG`]; below that threshold the libm functions
//! are already accurate to a few ulps.

use std::f64::consts::LN_2;

use crate::error::{Result, SplineError};

/// Magnitude above which the factored/log-space paths are used.
pub const LARGE_ARG: f64 = 30.0;

/// Below this magnitude [`k3`] is summed from its Maclaurin series.
pub const K3_SERIES_CUTOFF: f64 = 0.5;

/// `sinh(a) / sinh(b)` without overflowing intermediates.
///
/// For large arguments the ratio is evaluated as
/// `e^{|a|-|b|} (1 - e^{-2|a|}) / (1 - e^{-2|b|})` with the signs restored.
pub fn stable_sinh_ratio(a: f64, b: f64) -> Result<f64> {
    if b == 0.0 {
        return Err(SplineError::DivideByZero);
    }
    if a == 0.0 {
        return Ok(0.0);
    }
    if a.abs() <= LARGE_ARG && b.abs() <= LARGE_ARG {
        return Ok(a.sinh() / b.sinh());
    }
    let (aa, ab) = (a.abs(), b.abs());
    let sign = a.signum() * b.signum();
    let mag = (aa - ab).exp() * (-(-2.0 * aa).exp_m1()) / (-(-2.0 * ab).exp_m1());
    Ok(sign * mag)
}

/// `cosh(a) / sinh(b)`, the derivative companion of [`stable_sinh_ratio`].
pub fn stable_cosh_sinh_ratio(a: f64, b: f64) -> Result<f64> {
    if b == 0.0 {
        return Err(SplineError::DivideByZero);
    }
    if a.abs() <= LARGE_ARG && b.abs() <= LARGE_ARG {
        return Ok(a.cosh() / b.sinh());
    }
    let (aa, ab) = (a.abs(), b.abs());
    let mag = (aa - ab).exp() * (1.0 + (-2.0 * aa).exp()) / (-(-2.0 * ab).exp_m1());
    Ok(b.signum() * mag)
}

/// `ln cosh(x)`, finite for every finite `x`.
pub fn log_cosh(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= LARGE_ARG {
        ax.cosh().ln()
    } else {
        ax - LN_2 + (-2.0 * ax).exp().ln_1p()
    }
}

/// `ln |sinh(x)|`; `-inf` at zero.
fn log_abs_sinh(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= LARGE_ARG {
        ax.sinh().ln()
    } else {
        ax - LN_2 + (-(-2.0 * ax).exp()).ln_1p()
    }
}

/// `cosh(a) / cosh(b)` computed through log-cosh differences.
pub fn cosh_ratio(a: f64, b: f64) -> f64 {
    if a.abs() <= LARGE_ARG && b.abs() <= LARGE_ARG {
        a.cosh() / b.cosh()
    } else {
        (log_cosh(a) - log_cosh(b)).exp()
    }
}

/// `1 / (cosh(a) cosh(b))`.
pub fn inv_cosh_product(a: f64, b: f64) -> f64 {
    if a.abs() <= LARGE_ARG && b.abs() <= LARGE_ARG {
        1.0 / (a.cosh() * b.cosh())
    } else {
        (-log_cosh(a) - log_cosh(b)).exp()
    }
}

/// `sech(x)`, underflowing gracefully to zero.
pub fn sech(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= LARGE_ARG {
        1.0 / ax.cosh()
    } else {
        let e = (-ax).exp();
        2.0 * e / (1.0 + e * e)
    }
}

/// `tanh(a) - tanh(b)` via `sinh(a - b) / (cosh(a) cosh(b))`.
///
/// Exact zero for `a == b`; no cancellation when `a` and `b` are close.
pub fn tanh_diff(a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let d = a - b;
    if a.abs() + b.abs() <= LARGE_ARG {
        return d.sinh() / (a.cosh() * b.cosh());
    }
    d.signum() * (log_abs_sinh(d) - log_cosh(a) - log_cosh(b)).exp()
}

/// `sinh(z) / z`, equal to 1 at the origin.
pub fn sinhc(z: f64) -> f64 {
    if z.abs() < 1e-4 {
        1.0 + z * z / 6.0
    } else {
        z.sinh() / z
    }
}

/// `(z cosh z - sinh z) / z^3`, with limit 1/3 at the origin.
///
/// The direct formula loses about `3 |log10 z|` digits, so small arguments
/// use the series `sum_{n>=1} 2n / (2n+1)! z^{2n-2}`.
pub fn k3(z: f64) -> f64 {
    if z.abs() < K3_SERIES_CUTOFF {
        let z2 = z * z;
        let mut sum = 0.0;
        let mut pow = 1.0;
        // 2n/(2n+1)! for n = 1, 2, ...; ten terms reach 1e-20 at z = 0.5
        let mut fact = 6.0; // (2n+1)! at n = 1
        for n in 1..=10u32 {
            let nf = f64::from(n);
            sum += 2.0 * nf / fact * pow;
            pow *= z2;
            fact *= (2.0 * nf + 2.0) * (2.0 * nf + 3.0);
        }
        sum
    } else {
        (z * z.cosh() - z.sinh()) / (z * z * z)
    }
}

/// Slope of the chord through `(x0, y0)` and `(x1, y1)`.
pub fn divided_difference(x0: f64, x1: f64, y0: f64, y1: f64) -> Result<f64> {
    if x0 == x1 {
        return Err(SplineError::DivideByZero);
    }
    Ok((y1 - y0) / (x1 - x0))
}

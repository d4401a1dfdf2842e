//! Tension splines built from hyperbolic functions.
//!
//! First-order families interpolate with `cosh`/`sinh` or `tanh` pieces;
//! second-order families are piecewise `p cosh(alpha x) + q sinh(alpha x)`
//! (or the equivalent `p + q tanh(alpha x)`) with `p`, `q` linear, fitted
//! through a tridiagonal system. As `alpha -> 0` they reduce to the linear
//! and cubic splines in [`cubic_ref`].
//!
//! ```
//! use hyperspline::{fit_s2, DataSet, EndCondition, Interpolant, Partition, TensionParam};
//!
//! let p = Partition::uniform(0.0, 3.0, 12).unwrap();
//! let y = DataSet::sample(&p, f64::sin);
//! let s = fit_s2(&p, &y, TensionParam::new(0.5).unwrap(), EndCondition::TypeII).unwrap();
//! assert!((s.eval(1.0, 0).unwrap() - 1f64.sin()).abs() < 1e-3);
//! ```

// negated comparisons are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod convergence;
pub mod cubic_ref;
pub mod domain;
pub mod error;
pub mod hermite;
pub mod interpolant;
pub mod kernels;
pub mod oracle;
pub mod spline_k1;
pub mod spline_k2;
pub mod tridiagonal;

pub use convergence::{
    alpha_limit_study, estimate_orders, run_convergence_study, sup_error, ConvergenceReport, Family, LimitPair,
    StudyConfig, TestFunction,
};
pub use cubic_ref::{fit_cubic, fit_cubic_hermite, fit_linear, monotone_slopes, CubicSpline, LinearSpline};
pub use domain::{DataSet, EndCondition, EndKind, Partition, TensionParam};
pub use error::{Result, SplineError};
pub use hermite::{fit_hermite_s2, shape_check, shape_search, ShapeProperty, ShapeReport, ShapeSearch};
pub use interpolant::Interpolant;
pub use oracle::{dense_solve, fit_s2_global};
pub use spline_k1::{fit_s1, fit_t1, Family1, Spline1};
pub use spline_k2::{
    assemble_t2_system, fit_s2, fit_t2, reconstruct_t2, to_exp_representation, ExpPiece, ExpSpline2, Smoothness,
    TanhSpline2,
};
pub use tridiagonal::{thomas_solve, TridiagonalSystem};

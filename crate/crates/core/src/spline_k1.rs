//! First-order interpolants: piecewise `a cosh(alpha x) + b sinh(alpha x)`
//! (family S) and piecewise `a + b tanh(alpha x)` (family T).
//!
//! Both closed forms are barycentric in the two node values of each
//! interval, so a fitted spline is just the node values plus a family tag;
//! the weights are evaluated on demand.

use serde::Serialize;

use crate::domain::{DataSet, Partition, TensionParam};
use crate::error::Result;
use crate::interpolant::Interpolant;
use crate::kernels::{sech, stable_cosh_sinh_ratio, stable_sinh_ratio, tanh_diff};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family1 {
    S,
    T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spline1 {
    family: Family1,
    alpha: TensionParam,
    partition: Partition,
    values: Vec<f64>,
}

pub fn fit_s1(partition: &Partition, data: &DataSet, alpha: TensionParam) -> Result<Spline1> {
    fit1(Family1::S, partition, data, alpha)
}

pub fn fit_t1(partition: &Partition, data: &DataSet, alpha: TensionParam) -> Result<Spline1> {
    fit1(Family1::T, partition, data, alpha)
}

fn fit1(family: Family1, partition: &Partition, data: &DataSet, alpha: TensionParam) -> Result<Spline1> {
    data.check(partition)?;
    alpha.check_partition(partition)?;
    Ok(Spline1 { family, alpha, partition: partition.clone(), values: data.values.clone() })
}

impl Spline1 {
    pub fn family(&self) -> Family1 {
        self.family
    }

    pub fn alpha(&self) -> TensionParam {
        self.alpha
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Barycentric weights `(w_left, w_right)` of piece `j` at `x`.
    pub fn weights(&self, j: usize, x: f64) -> (f64, f64) {
        let al = self.alpha.value();
        let (xl, xr) = (self.partition.nodes()[j], self.partition.nodes()[j + 1]);
        match self.family {
            Family1::S => {
                let ah = al * (xr - xl);
                // ah > 0 for every valid partition, so the ratios cannot fail
                let w0 = stable_sinh_ratio(al * (xr - x), ah).unwrap_or(f64::NAN);
                let w1 = stable_sinh_ratio(al * (x - xl), ah).unwrap_or(f64::NAN);
                (w0, w1)
            }
            Family1::T => {
                let den = tanh_diff(al * xr, al * xl);
                (tanh_diff(al * xr, al * x) / den, tanh_diff(al * x, al * xl) / den)
            }
        }
    }
}

impl Interpolant for Spline1 {
    fn partition(&self) -> &Partition {
        &self.partition
    }

    fn max_deriv(&self) -> usize {
        1
    }

    /// Interior nodes use the left piece; only the value is continuous there.
    fn piece_at(&self, x: f64) -> usize {
        self.partition.locate_left(x)
    }

    fn eval_piece(&self, j: usize, x: f64, deriv: usize) -> f64 {
        let al = self.alpha.value();
        let (xl, xr) = (self.partition.nodes()[j], self.partition.nodes()[j + 1]);
        let (yl, yr) = (self.values[j], self.values[j + 1]);
        match deriv {
            0 => {
                if x == xl {
                    return yl;
                }
                if x == xr {
                    return yr;
                }
                let (w0, w1) = self.weights(j, x);
                w0 * yl + w1 * yr
            }
            _ => match self.family {
                Family1::S => {
                    let ah = al * (xr - xl);
                    let c0 = stable_cosh_sinh_ratio(al * (xr - x), ah).unwrap_or(f64::NAN);
                    let c1 = stable_cosh_sinh_ratio(al * (x - xl), ah).unwrap_or(f64::NAN);
                    al * (c1 * yr - c0 * yl)
                }
                Family1::T => {
                    let den = tanh_diff(al * xr, al * xl);
                    let s = sech(al * x);
                    al * s * s * (yr - yl) / den
                }
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit(y: [f64; 2], alpha: f64, family: Family1) -> Spline1 {
        let p = Partition::new(vec![0.0, 1.0]).unwrap();
        let a = TensionParam::new(alpha).unwrap();
        let d = DataSet::new(y.to_vec());
        match family {
            Family1::S => fit_s1(&p, &d, a).unwrap(),
            Family1::T => fit_t1(&p, &d, a).unwrap(),
        }
    }

    #[test]
    fn zero_data_gives_zero() {
        let s = unit([0.0, 0.0], 2.0, Family1::S);
        for x in [0.0, 0.3, 0.9, 1.0] {
            assert_eq!(s.eval(x, 0).unwrap(), 0.0);
        }
    }

    #[test]
    fn t_family_reproduces_constants() {
        let t = unit([2.5, 2.5], 3.0, Family1::T);
        for x in [0.0, 0.1, 0.5, 0.77, 1.0] {
            assert_relative_eq!(t.eval(x, 0).unwrap(), 2.5, max_relative = 1e-15);
            assert_relative_eq!(t.eval(x, 1).unwrap(), 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn s_family_does_not_reproduce_constants() {
        let s = unit([1.0, 1.0], 1.0, Family1::S);
        let mid = s.eval(0.5, 0).unwrap();
        assert_relative_eq!(mid, 2.0 * 0.5f64.sinh() / 1.0f64.sinh(), max_relative = 1e-15);
        assert!(mid < 1.0);
    }

    #[test]
    fn node_exactness() {
        let s = unit([0.0, 1.0], 1.0, Family1::S);
        assert_eq!(s.eval(1.0, 0).unwrap(), 1.0);
        let p = Partition::new(vec![-1.0, 0.5, 2.0, 2.1]).unwrap();
        let d = DataSet::new(vec![3.0, -1.0, 0.25, 7.0]);
        let t = fit_t1(&p, &d, TensionParam::new(0.7).unwrap()).unwrap();
        for (x, y) in p.nodes().iter().zip(&d.values) {
            assert_eq!(t.eval(*x, 0).unwrap(), *y);
        }
    }

    #[test]
    fn interior_node_derivative_uses_left_piece() {
        let p = Partition::new(vec![0.0, 1.0, 2.0]).unwrap();
        let d = DataSet::new(vec![0.0, 1.0, 0.0]);
        let t = fit_t1(&p, &d, TensionParam::new(0.5).unwrap()).unwrap();
        let at_node = t.eval(1.0, 1).unwrap();
        assert!(at_node > 0.0);
        assert_eq!(at_node, t.eval_piece(0, 1.0, 1));
    }

    #[test]
    fn out_of_domain() {
        let t = unit([0.0, 1.0], 1.0, Family1::T);
        assert!(t.eval(1.0 + 1e-12, 0).is_err());
        assert!(t.eval(-1e-12, 0).is_err());
        assert!(t.eval(0.5, 2).is_err());
    }

    #[test]
    fn length_mismatch() {
        let p = Partition::new(vec![0.0, 1.0, 2.0]).unwrap();
        assert!(fit_s1(&p, &DataSet::new(vec![1.0, 2.0]), TensionParam::new(1.0).unwrap()).is_err());
    }
}

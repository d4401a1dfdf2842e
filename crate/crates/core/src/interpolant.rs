use crate::domain::Partition;
use crate::error::{Result, SplineError};

/// Common evaluation surface for every piecewise interpolant in the crate.
pub trait Interpolant {
    fn partition(&self) -> &Partition;

    /// Highest derivative order [`Interpolant::eval`] supports.
    fn max_deriv(&self) -> usize;

    /// Evaluates piece `j` (0-based) at `x` without domain checks.
    fn eval_piece(&self, j: usize, x: f64, deriv: usize) -> f64;

    /// Picks the piece used at an interior node.
    fn piece_at(&self, x: f64) -> usize {
        self.partition().locate_right(x)
    }

    fn eval(&self, x: f64, deriv: usize) -> Result<f64> {
        self.partition().check_domain(x)?;
        if deriv > self.max_deriv() {
            return Err(SplineError::UnsupportedDerivative { deriv, max: self.max_deriv() });
        }
        Ok(self.eval_piece(self.piece_at(x), x, deriv))
    }

    /// Largest jump in derivative `deriv` across interior nodes.
    fn node_mismatch(&self, deriv: usize) -> f64 {
        let nodes = self.partition().nodes();
        (1..nodes.len() - 1)
            .map(|j| {
                let left = self.eval_piece(j - 1, nodes[j], deriv);
                let right = self.eval_piece(j, nodes[j], deriv);
                (left - right).abs()
            })
            .fold(0.0, f64::max)
    }
}

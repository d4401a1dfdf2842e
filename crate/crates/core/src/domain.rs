//! Partitions, data sets, end conditions and the tension parameter.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SplineError};

/// Largest admissible `alpha * max(|x_0|, |x_N|)`; `cosh` overflows just past 710.
pub const MAX_SCALED_EXTENT: f64 = 700.0;

/// A strictly increasing sequence of nodes `x_0 < ... < x_N`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Partition {
    nodes: Vec<f64>,
    widths: Vec<f64>,
    hbar: f64,
    mesh_ratio: f64,
}

impl Partition {
    pub fn new(nodes: Vec<f64>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(SplineError::TooFewNodes { required: 2, got: nodes.len() });
        }
        if let Some(index) = nodes.iter().position(|x| !x.is_finite()) {
            return Err(SplineError::NonFinite { index });
        }
        let mut widths = Vec::with_capacity(nodes.len() - 1);
        for (i, w) in nodes.windows(2).enumerate() {
            let h = w[1] - w[0];
            if h <= 0.0 {
                return Err(SplineError::NonMonotone { index: i + 1, value: w[1] });
            }
            widths.push(h);
        }
        let hbar = widths.iter().copied().fold(0.0, f64::max);
        let hmin = widths.iter().copied().fold(f64::INFINITY, f64::min);
        Ok(Self { nodes, widths, hbar, mesh_ratio: hbar / hmin })
    }

    /// `n` equal intervals on `[a, b]`; the last node is exactly `b`.
    pub fn uniform(a: f64, b: f64, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(SplineError::TooFewNodes { required: 2, got: 1 });
        }
        let h = (b - a) / n as f64;
        let mut nodes: Vec<f64> = (0..=n).map(|i| a + i as f64 * h).collect();
        nodes[n] = b;
        Self::new(nodes)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// `h_j = x_j - x_{j-1}`, stored at index `j - 1`.
    pub fn widths(&self) -> &[f64] {
        &self.widths
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn mesh_ratio(&self) -> f64 {
        self.mesh_ratio
    }

    /// Number of intervals `N`.
    pub fn intervals(&self) -> usize {
        self.widths.len()
    }

    pub fn a(&self) -> f64 {
        self.nodes[0]
    }

    pub fn b(&self) -> f64 {
        self.nodes[self.nodes.len() - 1]
    }

    pub fn max_abs_node(&self) -> f64 {
        self.a().abs().max(self.b().abs())
    }

    pub fn check_domain(&self, x: f64) -> Result<()> {
        if x.is_nan() || x < self.a() || x > self.b() {
            return Err(SplineError::OutOfDomain { x, lo: self.a(), hi: self.b() });
        }
        Ok(())
    }

    /// Index `j` (0-based) of the interval `[x_j, x_{j+1}]` that owns `x`.
    ///
    /// At an interior node `x_j` this returns the interval to the left of
    /// the node; the right endpoint of the domain belongs to the last interval.
    pub fn locate_left(&self, x: f64) -> usize {
        let k = self.nodes.partition_point(|&n| n < x);
        k.saturating_sub(1).min(self.intervals() - 1)
    }

    /// Like [`Partition::locate_left`] but interior nodes go to the right interval.
    pub fn locate_right(&self, x: f64) -> usize {
        let k = self.nodes.partition_point(|&n| n <= x);
        k.saturating_sub(1).min(self.intervals() - 1)
    }

    /// Exact node index when `x` coincides with a node.
    pub fn node_index(&self, x: f64) -> Option<usize> {
        self.nodes.binary_search_by(|n| n.total_cmp(&x)).ok()
    }

    /// Composite sampling grid: `per_interval` equispaced points on every
    /// interval plus the final node.
    pub fn sample_grid(&self, per_interval: usize) -> Vec<f64> {
        let per = per_interval.max(1);
        let mut out = Vec::with_capacity(per * self.intervals() + 1);
        for (j, h) in self.widths.iter().enumerate() {
            let x0 = self.nodes[j];
            out.push(x0);
            for k in 1..per {
                out.push(x0 + h * k as f64 / per as f64);
            }
        }
        out.push(self.b());
        out
    }
}

/// Ordinates aligned with a partition, plus optional node slopes for Hermite fits.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct DataSet {
    pub values: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slopes: Option<Vec<f64>>,
}

impl DataSet {
    pub fn new(values: Vec<f64>) -> Self {
        Self { values, slopes: None }
    }

    pub fn with_slopes(values: Vec<f64>, slopes: Vec<f64>) -> Self {
        Self { values, slopes: Some(slopes) }
    }

    /// Samples `f` at the nodes of `partition`.
    pub fn sample(partition: &Partition, f: impl Fn(f64) -> f64) -> Self {
        Self::new(partition.nodes().iter().map(|&x| f(x)).collect())
    }

    pub fn check(&self, partition: &Partition) -> Result<()> {
        let expected = partition.nodes().len();
        if self.values.len() != expected {
            return Err(SplineError::LengthMismatch { expected, got: self.values.len() });
        }
        if let Some(index) = self.values.iter().position(|v| !v.is_finite()) {
            return Err(SplineError::NonFinite { index });
        }
        if let Some(slopes) = &self.slopes {
            if slopes.len() != expected {
                return Err(SplineError::LengthMismatch { expected, got: slopes.len() });
            }
        }
        Ok(())
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Which end condition is imposed, without its payload.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EndKind {
    #[serde(rename = "I")]
    TypeI,
    #[serde(rename = "II")]
    TypeII,
    #[serde(rename = "III")]
    TypeIII,
}

impl EndKind {
    pub const ALL: [EndKind; 3] = [EndKind::TypeI, EndKind::TypeII, EndKind::TypeIII];
}

impl std::fmt::Display for EndKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EndKind::TypeI => "I",
            EndKind::TypeII => "II",
            EndKind::TypeIII => "III",
        })
    }
}

/// End conditions for second-order fits.
///
/// * `TypeI` prescribes first derivatives at both ends.
/// * `TypeII` is the natural condition (zero second derivatives).
/// * `TypeIII` prescribes second derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum EndCondition {
    TypeI { left: f64, right: f64 },
    TypeII,
    TypeIII { left: f64, right: f64 },
}

impl EndCondition {
    pub fn new(kind: EndKind, left: f64, right: f64) -> Result<Self> {
        let end = match kind {
            EndKind::TypeI => EndCondition::TypeI { left, right },
            EndKind::TypeII => EndCondition::TypeII,
            EndKind::TypeIII => EndCondition::TypeIII { left, right },
        };
        end.validate()?;
        Ok(end)
    }

    pub fn kind(&self) -> EndKind {
        match self {
            EndCondition::TypeI { .. } => EndKind::TypeI,
            EndCondition::TypeII => EndKind::TypeII,
            EndCondition::TypeIII { .. } => EndKind::TypeIII,
        }
    }

    /// `(left, right)` payload; Type II reports zero second derivatives.
    pub fn payload(&self) -> (f64, f64) {
        match *self {
            EndCondition::TypeI { left, right } | EndCondition::TypeIII { left, right } => (left, right),
            EndCondition::TypeII => (0.0, 0.0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (l, r) = self.payload();
        if !l.is_finite() {
            return Err(SplineError::NonFinite { index: 0 });
        }
        if !r.is_finite() {
            return Err(SplineError::NonFinite { index: 1 });
        }
        Ok(())
    }
}

/// The tension parameter `alpha > 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct TensionParam(f64);

impl TensionParam {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(SplineError::InvalidTension(alpha));
        }
        Ok(Self(alpha))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Rejects tensions for which `cosh(alpha x)` would overflow on the partition.
    pub fn check_partition(self, partition: &Partition) -> Result<()> {
        let scaled = self.0 * partition.max_abs_node();
        if scaled > MAX_SCALED_EXTENT {
            return Err(SplineError::Overflow { scaled, limit: MAX_SCALED_EXTENT });
        }
        Ok(())
    }
}

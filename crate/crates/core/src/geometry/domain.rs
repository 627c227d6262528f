use crate::error::{Error, Result};

/// Largest supported dimension of a box.
pub const MAX_DIM: usize = 8;

/// Axis-aligned closed box `[a₁,b₁] × … × [aₙ,bₙ]` with `aᵢ < bᵢ`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxDomain {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl BoxDomain {
    pub fn new(axes: &[(f64, f64)]) -> Result<Self> {
        if axes.is_empty() || axes.len() > MAX_DIM {
            return Err(Error::UnsupportedDimension(axes.len()));
        }
        for (axis, &(lower, upper)) in axes.iter().enumerate() {
            if !(lower.is_finite() && upper.is_finite() && upper > lower) {
                return Err(Error::DegenerateBox { axis, lower, upper });
            }
        }
        Ok(Self {
            lower: axes.iter().map(|a| a.0).collect(),
            upper: axes.iter().map(|a| a.1).collect(),
        })
    }

    /// The unit cube `[0,1]ⁿ`.
    pub fn unit(dim: usize) -> Result<Self> {
        Self::new(&vec![(0.0, 1.0); dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self, axis: usize) -> f64 {
        self.lower[axis]
    }

    pub fn upper(&self, axis: usize) -> f64 {
        self.upper[axis]
    }

    pub fn width(&self, axis: usize) -> f64 {
        self.upper[axis] - self.lower[axis]
    }

    pub fn axes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.lower.iter().copied().zip(self.upper.iter().copied())
    }

    /// Product of the axis widths.
    pub fn measure(&self) -> f64 {
        (0..self.dim()).map(|i| self.width(i)).product()
    }

    /// Euclidean length of the main diagonal.
    pub fn diameter(&self) -> f64 {
        (0..self.dim())
            .map(|i| self.width(i) * self.width(i))
            .sum::<f64>()
            .sqrt()
    }

    pub fn contains(&self, point: &[f64]) -> bool {
        point.len() == self.dim()
            && self
                .axes()
                .zip(point)
                .all(|((lo, hi), &x)| lo <= x && x <= hi)
    }

    /// Measure of the intersection with `other` (zero when disjoint).
    pub fn overlap_measure(&self, other: &BoxDomain) -> f64 {
        self.axes()
            .zip(other.axes())
            .map(|((a0, a1), (b0, b1))| (a1.min(b1) - a0.max(b0)).max(0.0))
            .product()
    }

    /// Measure of the symmetric difference with `other`.
    pub fn symmetric_difference_measure(&self, other: &BoxDomain) -> f64 {
        symmetric_difference(self.measure(), other.measure(), self.overlap_measure(other))
    }
}

/// `m(A △ B)` from `m(A)`, `m(B)` and `m(A ∩ B)`.
///
/// The overlap is clamped to `min(m(A), m(B))`, which keeps the result
/// at or above `|m(A) − m(B)|` after rounding.
pub(crate) fn symmetric_difference(a: f64, b: f64, overlap: f64) -> f64 {
    let overlap = overlap.min(a).min(b).max(0.0);
    (a - overlap) + (b - overlap)
}

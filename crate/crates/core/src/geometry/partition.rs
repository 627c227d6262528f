use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::domain::BoxDomain;
use crate::error::{Error, Result};

/// Largest number of cells a partition may materialize.
pub const MAX_CELLS: u64 = 100_000_000;

/// How the distinguished point of each cell is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TagRule {
    Midpoint,
    LowerCorner,
    /// Uniform draw inside each cell from a seeded ChaCha8 stream.
    Random(u64),
}

/// Tagged partition of a box induced by per-axis breakpoints.
///
/// Cells are numbered in row-major order: the last axis varies fastest.
/// Tags and cell measures are stored explicitly, one entry per cell.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    parent: BoxDomain,
    breakpoints: Vec<Vec<f64>>,
    strides: Vec<usize>,
    tags: Vec<f64>,
    measures: Vec<f64>,
    is_equal: bool,
    mesh: f64,
    tag_rule: TagRule,
}

impl Partition {
    /// Equal split of every axis into `counts[i]` segments.
    ///
    /// All cells receive the identical measure `Π (bᵢ − aᵢ)/countsᵢ`.
    pub fn uniform(parent: &BoxDomain, counts: &[usize], tag_rule: TagRule) -> Result<Self> {
        check_counts(parent, counts)?;
        let breakpoints = (0..parent.dim())
            .map(|i| {
                let (lo, hi) = (parent.lower(i), parent.upper(i));
                let c = counts[i];
                let width = hi - lo;
                let mut b: Vec<f64> = (0..=c)
                    .map(|j| lo + width * (j as f64) / (c as f64))
                    .collect();
                b[c] = hi;
                b
            })
            .collect::<Vec<_>>();
        for (axis, b) in breakpoints.iter().enumerate() {
            if b.windows(2).any(|w| w[1] <= w[0]) {
                return Err(Error::InvalidBreakpoints {
                    axis,
                    reason: "split is finer than floating-point resolution".into(),
                });
            }
        }
        let cell_measure: f64 = (0..parent.dim())
            .map(|i| parent.width(i) / counts[i] as f64)
            .product();
        let mesh = (0..parent.dim())
            .map(|i| {
                let h = parent.width(i) / counts[i] as f64;
                h * h
            })
            .sum::<f64>()
            .sqrt();
        let m: usize = counts.iter().product();
        Ok(Self::assemble(
            parent.clone(),
            breakpoints,
            vec![cell_measure; m],
            true,
            mesh,
            tag_rule,
        ))
    }

    /// Partition from explicit per-axis breakpoints.
    ///
    /// Each axis must start at the box's lower bound, end at its upper
    /// bound and increase strictly. The partition counts as equal only
    /// when every computed cell measure is bitwise identical.
    pub fn from_breakpoints(
        parent: &BoxDomain,
        breakpoints: Vec<Vec<f64>>,
        tag_rule: TagRule,
    ) -> Result<Self> {
        if breakpoints.len() != parent.dim() {
            return Err(Error::DimensionMismatch {
                expected: parent.dim(),
                got: breakpoints.len(),
            });
        }
        for (axis, b) in breakpoints.iter().enumerate() {
            if b.len() < 2 {
                return Err(Error::InvalidBreakpoints {
                    axis,
                    reason: "need at least two breakpoints".into(),
                });
            }
            if b[0] != parent.lower(axis) || b[b.len() - 1] != parent.upper(axis) {
                return Err(Error::InvalidBreakpoints {
                    axis,
                    reason: "breakpoints must start and end at the box bounds".into(),
                });
            }
            if b.iter().any(|x| !x.is_finite()) || b.windows(2).any(|w| w[1] <= w[0]) {
                return Err(Error::InvalidBreakpoints {
                    axis,
                    reason: "breakpoints must be finite and strictly increasing".into(),
                });
            }
        }
        let counts: Vec<usize> = breakpoints.iter().map(|b| b.len() - 1).collect();
        check_counts(parent, &counts)?;
        let measures = product_measures(&breakpoints, &strides_for(&counts));
        let is_equal = measures.iter().all(|&w| w == measures[0]);
        let mesh = breakpoints
            .iter()
            .map(|b| {
                let g = b.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
                g * g
            })
            .sum::<f64>()
            .sqrt();
        Ok(Self::assemble(
            parent.clone(),
            breakpoints,
            measures,
            is_equal,
            mesh,
            tag_rule,
        ))
    }

    fn assemble(
        parent: BoxDomain,
        breakpoints: Vec<Vec<f64>>,
        measures: Vec<f64>,
        is_equal: bool,
        mesh: f64,
        tag_rule: TagRule,
    ) -> Self {
        let counts: Vec<usize> = breakpoints.iter().map(|b| b.len() - 1).collect();
        let strides = strides_for(&counts);
        let tags = place_tags(&breakpoints, &strides, measures.len(), tag_rule);
        Self {
            parent,
            breakpoints,
            strides,
            tags,
            measures,
            is_equal,
            mesh,
            tag_rule,
        }
    }

    pub fn parent(&self) -> &BoxDomain {
        &self.parent
    }

    pub fn dim(&self) -> usize {
        self.parent.dim()
    }

    /// Number of cells `m`.
    pub fn len(&self) -> usize {
        self.measures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.measures.is_empty()
    }

    /// Segments per axis.
    pub fn counts(&self) -> Vec<usize> {
        self.breakpoints.iter().map(|b| b.len() - 1).collect()
    }

    pub fn breakpoints(&self, axis: usize) -> &[f64] {
        &self.breakpoints[axis]
    }

    pub fn all_breakpoints(&self) -> &[Vec<f64>] {
        &self.breakpoints
    }

    pub fn tag_rule(&self) -> TagRule {
        self.tag_rule
    }

    /// Whether all cells share one measure.
    pub fn is_equal(&self) -> bool {
        self.is_equal
    }

    /// Largest cell diameter λ(P).
    pub fn mesh(&self) -> f64 {
        self.mesh
    }

    pub fn tag(&self, cell: usize) -> &[f64] {
        let n = self.dim();
        &self.tags[cell * n..(cell + 1) * n]
    }

    /// Flattened tags, `dim` coordinates per cell.
    pub fn tags(&self) -> &[f64] {
        &self.tags
    }

    pub fn measure(&self, cell: usize) -> f64 {
        self.measures[cell]
    }

    pub fn measures(&self) -> &[f64] {
        &self.measures
    }

    pub fn max_measure(&self) -> f64 {
        self.measures.iter().copied().fold(0.0, f64::max)
    }

    /// Segment index of `cell` along `axis`.
    #[inline]
    pub fn axis_index(&self, cell: usize, axis: usize) -> usize {
        (cell / self.strides[axis]) % (self.breakpoints[axis].len() - 1)
    }

    pub fn multi_index(&self, cell: usize) -> Vec<usize> {
        (0..self.dim()).map(|i| self.axis_index(cell, i)).collect()
    }

    /// Closed sub-box of `cell`.
    pub fn cell(&self, cell: usize) -> BoxDomain {
        cell_box(&self.breakpoints, &self.multi_index(cell))
    }

    pub fn cell_diameter(&self, cell: usize) -> f64 {
        (0..self.dim())
            .map(|i| {
                let j = self.axis_index(cell, i);
                let w = self.breakpoints[i][j + 1] - self.breakpoints[i][j];
                w * w
            })
            .sum::<f64>()
            .sqrt()
    }
}

pub(crate) fn strides_for(counts: &[usize]) -> Vec<usize> {
    let mut strides = vec![1; counts.len()];
    for i in (0..counts.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * counts[i + 1];
    }
    strides
}

pub(crate) fn cell_box(breakpoints: &[Vec<f64>], index: &[usize]) -> BoxDomain {
    let axes: Vec<(f64, f64)> = index
        .iter()
        .zip(breakpoints)
        .map(|(&j, b)| (b[j], b[j + 1]))
        .collect();
    BoxDomain::new(&axes).expect("breakpoints are strictly increasing")
}

/// Cell measures as products of per-axis gaps, in cell order.
pub(crate) fn product_measures(breakpoints: &[Vec<f64>], strides: &[usize]) -> Vec<f64> {
    let m: usize = breakpoints.iter().map(|b| b.len() - 1).product();
    (0..m)
        .map(|k| {
            breakpoints
                .iter()
                .zip(strides)
                .map(|(b, &s)| {
                    let j = (k / s) % (b.len() - 1);
                    b[j + 1] - b[j]
                })
                .product()
        })
        .collect()
}

fn check_counts(parent: &BoxDomain, counts: &[usize]) -> Result<()> {
    if counts.len() != parent.dim() {
        return Err(Error::DimensionMismatch {
            expected: parent.dim(),
            got: counts.len(),
        });
    }
    if let Some(axis) = counts.iter().position(|&c| c == 0) {
        return Err(Error::InvalidBreakpoints {
            axis,
            reason: "segment count must be at least 1".into(),
        });
    }
    let cells = counts
        .iter()
        .fold(1u128, |acc, &c| acc.saturating_mul(c as u128));
    if cells > MAX_CELLS as u128 {
        return Err(Error::CountOverflow {
            cells,
            cap: MAX_CELLS,
        });
    }
    Ok(())
}

fn place_tags(breakpoints: &[Vec<f64>], strides: &[usize], m: usize, rule: TagRule) -> Vec<f64> {
    let n = breakpoints.len();
    let mut tags = Vec::with_capacity(m * n);
    let mut rng = match rule {
        TagRule::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    for k in 0..m {
        for (b, &s) in breakpoints.iter().zip(strides) {
            let j = (k / s) % (b.len() - 1);
            let (lo, hi) = (b[j], b[j + 1]);
            let x = match rule {
                TagRule::Midpoint => 0.5 * (lo + hi),
                TagRule::LowerCorner => lo,
                TagRule::Random(_) => {
                    let u: f64 = rng.as_mut().expect("seeded").gen();
                    (lo + u * (hi - lo)).min(hi)
                }
            };
            tags.push(x);
        }
    }
    tags
}

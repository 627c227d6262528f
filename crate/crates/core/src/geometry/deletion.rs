use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::partition::Partition;
use crate::error::{Error, Result};

/// How many terms to drop for a partition with `m` cells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Schedule {
    /// A fixed `K`, capped at `m − 1`.
    FixedK(usize),
    /// `K(m) = ⌊m^β⌋` with `0 < β < 1`.
    PowerLaw(f64),
    /// `K(m) = max(1, ⌊ln m⌋)`.
    Logarithmic,
}

impl Schedule {
    /// Schedules whose count grows with `m`; these only make sense on
    /// equal partitions.
    pub fn is_vanishing_fraction(&self) -> bool {
        !matches!(self, Schedule::FixedK(_))
    }

    /// Number of deleted terms for `m ≥ 2` cells.
    pub fn count(&self, m: usize) -> usize {
        let k = match *self {
            Schedule::FixedK(k) => k,
            Schedule::PowerLaw(beta) => {
                let x = (m as f64).powf(beta);
                // guard against powf landing one ulp under an exact integer
                (x * (1.0 + 4.0 * f64::EPSILON)).floor() as usize
            }
            Schedule::Logarithmic => ((m as f64).ln().floor() as usize).max(1),
        };
        k.clamp(1, m.saturating_sub(1).max(1))
    }
}

/// Which indices are dropped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selector {
    /// The first `K` cells in index order.
    Prefix,
    /// `K` distinct cells sampled without replacement.
    Random(u64),
    /// The `K` cells with the largest term magnitude, lowest index first
    /// on ties.
    LargestTerm,
}

/// A deletion schedule plus selector, optionally resolved to a concrete
/// index set for one partition.
#[derive(Debug, Clone, PartialEq)]
pub struct DeletionPlan {
    schedule: Schedule,
    selector: Selector,
    binding: Option<Binding>,
}

#[derive(Debug, Clone, PartialEq)]
struct Binding {
    cells: usize,
    resolved: Vec<usize>,
}

impl DeletionPlan {
    pub fn new(schedule: Schedule, selector: Selector) -> Result<Self> {
        match schedule {
            Schedule::FixedK(0) => {
                return Err(Error::InvalidSchedule("K must be at least 1".into()))
            }
            Schedule::PowerLaw(beta) if !(beta > 0.0 && beta < 1.0) => {
                return Err(Error::InvalidSchedule(format!(
                    "power-law exponent {beta} must lie in (0, 1)"
                )))
            }
            _ => {}
        }
        Ok(Self {
            schedule,
            selector,
            binding: None,
        })
    }

    pub fn schedule(&self) -> Schedule {
        self.schedule
    }

    pub fn selector(&self) -> Selector {
        self.selector
    }

    /// Resolve the deleted index set for `p`.
    ///
    /// `terms` holds one magnitude per cell and is required by
    /// [`Selector::LargestTerm`]; it is ignored otherwise.
    pub fn bind(&self, p: &Partition, terms: Option<&[f64]>) -> Result<DeletionPlan> {
        let m = p.len();
        if m < 2 {
            return Err(Error::TooFewCells(m));
        }
        if self.schedule.is_vanishing_fraction() && !p.is_equal() {
            return Err(Error::NonEqualPartition);
        }
        let k = self.schedule.count(m);
        let mut resolved = match self.selector {
            Selector::Prefix => (0..k).collect(),
            Selector::Random(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rand::seq::index::sample(&mut rng, m, k).into_vec()
            }
            Selector::LargestTerm => {
                let terms = terms.ok_or(Error::MissingTerms)?;
                if terms.len() != m {
                    return Err(Error::TermCountMismatch {
                        expected: m,
                        got: terms.len(),
                    });
                }
                largest(terms, k)
            }
        };
        resolved.sort_unstable();
        Ok(DeletionPlan {
            schedule: self.schedule,
            selector: self.selector,
            binding: Some(Binding { cells: m, resolved }),
        })
    }

    /// Deleted indices (0-based, ascending) once bound.
    pub fn resolved(&self) -> Option<&[usize]> {
        self.binding.as_ref().map(|b| b.resolved.as_slice())
    }

    pub fn deleted_count(&self) -> usize {
        self.resolved().map_or(0, <[usize]>::len)
    }

    /// Number of cells of the partition this plan was bound to.
    pub fn bound_cells(&self) -> Option<usize> {
        self.binding.as_ref().map(|b| b.cells)
    }

    /// Deleted index set for `p`, checking that the plan was bound to a
    /// partition of the same shape.
    pub fn resolved_for(&self, p: &Partition) -> Result<&[usize]> {
        let binding = self.binding.as_ref().ok_or(Error::UnboundPlan)?;
        if binding.cells != p.len() {
            return Err(Error::UnboundPlan);
        }
        if self.schedule.is_vanishing_fraction() && !p.is_equal() {
            return Err(Error::NonEqualPartition);
        }
        Ok(&binding.resolved)
    }
}

/// Free-function form of [`DeletionPlan::bind`].
pub fn bind_deletion(
    plan: &DeletionPlan,
    p: &Partition,
    terms: Option<&[f64]>,
) -> Result<DeletionPlan> {
    plan.bind(p, terms)
}

fn largest(terms: &[f64], k: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..terms.len()).collect();
    order.sort_by(|&a, &b| terms[b].abs().total_cmp(&terms[a].abs()).then(a.cmp(&b)));
    order.truncate(k);
    order
}

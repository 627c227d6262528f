//! Boxes, tagged partitions, mesh perturbations and deletion plans.

mod deletion;
mod domain;
mod partition;
mod perturb;

pub use deletion::{bind_deletion, DeletionPlan, Schedule, Selector};
pub use domain::{BoxDomain, MAX_DIM};
pub use partition::{Partition, TagRule, MAX_CELLS};
pub use perturb::PerturbedPartition;

/// Uniform partition of `parent` into `counts[i]` segments per axis.
pub fn make_uniform_partition(
    parent: &BoxDomain,
    counts: &[usize],
    tag_rule: TagRule,
) -> crate::Result<Partition> {
    Partition::uniform(parent, counts, tag_rule)
}

/// Jittered copy of `p`; see [`PerturbedPartition::jitter`].
pub fn perturb(p: &Partition, gamma: f64, seed: u64) -> crate::Result<PerturbedPartition> {
    PerturbedPartition::jitter(p, gamma, seed)
}

//! The four Riemann-sum variants over tagged box partitions.
//!
//! | variant   | cells        | terms          |
//! |-----------|--------------|----------------|
//! | Full      | `m(I_k)`     | all `k`        |
//! | Deleted   | `m(I_k)`     | `k ∉ J_K`      |
//! | Perturbed | `m(Ĩ_k)`     | all `k`        |
//! | Combined  | `m(Ĩ_k)`     | `k ∉ J_K`      |
//!
//! Tags always come from the base partition. Terms may be evaluated in
//! parallel but are always reduced sequentially in ascending cell order
//! with Neumaier compensation, so every result is bit-reproducible.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::compensated::NeumaierSum;
use crate::error::{Error, Result};
use crate::fields::{ParametricRegion, ScalarField};
use crate::geometry::{DeletionPlan, Partition, PerturbedPartition};

/// Cell count from which [`Execution::Auto`] evaluates terms in parallel.
pub const PARALLEL_THRESHOLD: usize = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Full,
    Deleted,
    Perturbed,
    Combined,
}

impl Variant {
    pub const ALL: [Variant; 4] = [
        Variant::Full,
        Variant::Deleted,
        Variant::Perturbed,
        Variant::Combined,
    ];

    pub fn deletes(self) -> bool {
        matches!(self, Variant::Deleted | Variant::Combined)
    }

    pub fn perturbs(self) -> bool {
        matches!(self, Variant::Perturbed | Variant::Combined)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Full => "full",
            Variant::Deleted => "deleted",
            Variant::Perturbed => "perturbed",
            Variant::Combined => "combined",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Variant::ALL
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| format!("unknown variant `{s}`"))
    }
}

/// How cell terms are evaluated. The reduction order is fixed regardless.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    Parallel,
    /// Parallel from [`PARALLEL_THRESHOLD`] cells on.
    #[default]
    Auto,
}

impl Execution {
    fn parallel_for(self, m: usize) -> bool {
        match self {
            Execution::Sequential => false,
            Execution::Parallel => true,
            Execution::Auto => m >= PARALLEL_THRESHOLD,
        }
    }
}

/// One quadrature result with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct SumEstimate {
    pub value: f64,
    /// Number of cells `m`.
    pub m: usize,
    /// λ(P) of the base partition.
    pub mesh: f64,
    pub deleted_count: usize,
    pub symdiff_total: f64,
    pub variant: Variant,
    pub compensation_residual: f64,
}

impl SumEstimate {
    /// Compensated sum of several estimates of the same variant, e.g. the
    /// pieces of a boundary. Mesh is the largest piece mesh.
    pub fn combine(parts: &[SumEstimate]) -> Option<SumEstimate> {
        let first = parts.first()?;
        let mut acc = NeumaierSum::new();
        let mut symdiff = NeumaierSum::new();
        for p in parts {
            acc.add(p.value);
            symdiff.add(p.symdiff_total);
        }
        Some(SumEstimate {
            value: acc.value(),
            m: parts.iter().map(|p| p.m).sum(),
            mesh: parts.iter().map(|p| p.mesh).fold(0.0, f64::max),
            deleted_count: parts.iter().map(|p| p.deleted_count).sum(),
            symdiff_total: symdiff.value(),
            variant: first.variant,
            compensation_residual: acc.residual()
                + parts.iter().map(|p| p.compensation_residual).sum::<f64>(),
        })
    }
}

/// A borrowed sum configuration: which cells, which measures, which terms
/// are dropped.
#[derive(Debug, Clone, Copy)]
pub enum Scheme<'a> {
    Full(&'a Partition),
    Deleted(&'a Partition, &'a DeletionPlan),
    Perturbed(&'a PerturbedPartition),
    Combined(&'a PerturbedPartition, &'a DeletionPlan),
}

/// View of one cell handed to term closures.
#[derive(Debug, Clone, Copy)]
pub struct CellRef<'a> {
    pub index: usize,
    pub tag: &'a [f64],
    /// Measure used by the sum: `m(I_k)` or `m(Ĩ_k)`.
    pub weight: f64,
    scheme: Scheme<'a>,
}

impl CellRef<'_> {
    /// Bounds along `axis` of the cell the weight refers to (perturbed
    /// cell for perturbed variants).
    pub fn bounds(&self, axis: usize) -> (f64, f64) {
        let p = self.scheme.partition();
        let j = p.axis_index(self.index, axis);
        let b = match self.scheme {
            Scheme::Full(p) | Scheme::Deleted(p, _) => p.breakpoints(axis),
            Scheme::Perturbed(pp) | Scheme::Combined(pp, _) => pp.breakpoints(axis),
        };
        (b[j], b[j + 1])
    }
}

impl<'a> Scheme<'a> {
    /// Base partition (source of tags and of the index set).
    pub fn partition(&self) -> &'a Partition {
        match *self {
            Scheme::Full(p) | Scheme::Deleted(p, _) => p,
            Scheme::Perturbed(pp) | Scheme::Combined(pp, _) => pp.base(),
        }
    }

    pub fn variant(&self) -> Variant {
        match self {
            Scheme::Full(_) => Variant::Full,
            Scheme::Deleted(..) => Variant::Deleted,
            Scheme::Perturbed(_) => Variant::Perturbed,
            Scheme::Combined(..) => Variant::Combined,
        }
    }

    pub fn weights(&self) -> &'a [f64] {
        match *self {
            Scheme::Full(p) | Scheme::Deleted(p, _) => p.measures(),
            Scheme::Perturbed(pp) | Scheme::Combined(pp, _) => pp.measures(),
        }
    }

    pub fn symdiff_total(&self) -> f64 {
        match self {
            Scheme::Perturbed(pp) | Scheme::Combined(pp, _) => pp.symdiff_total(),
            _ => 0.0,
        }
    }

    /// Deleted indices, validated against the base partition.
    pub fn deleted(&self) -> Result<&'a [usize]> {
        match *self {
            Scheme::Full(_) | Scheme::Perturbed(_) => Ok(&[]),
            Scheme::Deleted(p, plan) => plan.resolved_for(p),
            Scheme::Combined(pp, plan) => plan.resolved_for(pp.base()),
        }
    }

    /// `Σ_{k survives} g(ξ_k)·w_k`.
    pub fn evaluate<G>(&self, g: G) -> Result<SumEstimate>
    where
        G: Fn(&[f64]) -> f64 + Sync,
    {
        self.evaluate_with(Execution::default(), g)
    }

    pub fn evaluate_with<G>(&self, exec: Execution, g: G) -> Result<SumEstimate>
    where
        G: Fn(&[f64]) -> f64 + Sync,
    {
        self.accumulate(exec, |c| Ok(g(c.tag) * c.weight))
    }

    /// Every cell's term, deleted cells included, in cell order.
    pub fn terms<T>(&self, exec: Execution, term: T) -> Result<Vec<f64>>
    where
        T: Fn(CellRef<'_>) -> Result<f64> + Sync,
    {
        let p = self.partition();
        let weights = self.weights();
        let scheme = *self;
        let cell = |k: usize| {
            term(CellRef {
                index: k,
                tag: p.tag(k),
                weight: weights[k],
                scheme,
            })
        };
        if exec.parallel_for(p.len()) {
            (0..p.len()).into_par_iter().map(cell).collect()
        } else {
            (0..p.len()).map(cell).collect()
        }
    }

    /// Sum of arbitrary per-cell terms over the surviving cells.
    pub fn accumulate<T>(&self, exec: Execution, term: T) -> Result<SumEstimate>
    where
        T: Fn(CellRef<'_>) -> Result<f64> + Sync,
    {
        let p = self.partition();
        let deleted = self.deleted()?;
        let weights = self.weights();
        let m = p.len();
        let scheme = *self;
        let cell = |k: usize| CellRef {
            index: k,
            tag: p.tag(k),
            weight: weights[k],
            scheme,
        };

        let mut acc = NeumaierSum::new();
        if exec.parallel_for(m) {
            let mut skip = vec![false; m];
            for &k in deleted {
                skip[k] = true;
            }
            let terms: Vec<f64> = (0..m)
                .into_par_iter()
                .map(|k| if skip[k] { Ok(0.0) } else { term(cell(k)) })
                .collect::<Result<_>>()?;
            for (k, t) in terms.into_iter().enumerate() {
                if !skip[k] {
                    acc.add(t);
                }
            }
        } else {
            let mut next = deleted.iter().copied().peekable();
            for k in 0..m {
                if next.peek() == Some(&k) {
                    next.next();
                    continue;
                }
                acc.add(term(cell(k))?);
            }
        }
        let value = acc.value();
        if !value.is_finite() {
            return Err(Error::NonFiniteSum);
        }
        Ok(SumEstimate {
            value,
            m,
            mesh: p.mesh(),
            deleted_count: deleted.len(),
            symdiff_total: self.symdiff_total(),
            variant: self.variant(),
            compensation_residual: acc.residual(),
        })
    }
}

/// Owned counterpart of [`Scheme`].
#[derive(Debug, Clone, PartialEq)]
pub enum Discretization {
    Full(Partition),
    Deleted(Partition, DeletionPlan),
    Perturbed(PerturbedPartition),
    Combined(PerturbedPartition, DeletionPlan),
}

impl Discretization {
    pub fn scheme(&self) -> Scheme<'_> {
        match self {
            Discretization::Full(p) => Scheme::Full(p),
            Discretization::Deleted(p, plan) => Scheme::Deleted(p, plan),
            Discretization::Perturbed(pp) => Scheme::Perturbed(pp),
            Discretization::Combined(pp, plan) => Scheme::Combined(pp, plan),
        }
    }

    pub fn partition(&self) -> &Partition {
        self.scheme().partition()
    }

    pub fn variant(&self) -> Variant {
        self.scheme().variant()
    }
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

/// `Σ_{k survives} f(ξ_k)·w_k` for any scheme over a box.
pub fn box_sum(f: &ScalarField, scheme: Scheme<'_>) -> Result<SumEstimate> {
    box_sum_with(f, scheme, Execution::default())
}

pub fn box_sum_with(f: &ScalarField, scheme: Scheme<'_>, exec: Execution) -> Result<SumEstimate> {
    check_dim(scheme.partition().dim(), f.dim())?;
    scheme.evaluate_with(exec, |x| f.eval(x))
}

/// `σ(f, P, ξ) = Σ_k f(ξ_k)·m(I_k)`.
pub fn riemann_sum(f: &ScalarField, p: &Partition) -> Result<SumEstimate> {
    box_sum(f, Scheme::Full(p))
}

/// `Σ_{k ∉ J_K} f(ξ_k)·m(I_k)`.
pub fn deleted_sum(f: &ScalarField, p: &Partition, plan: &DeletionPlan) -> Result<SumEstimate> {
    box_sum(f, Scheme::Deleted(p, plan))
}

/// `Σ_k f(ξ_k)·m(Ĩ_k)`.
pub fn perturbed_sum(f: &ScalarField, pp: &PerturbedPartition) -> Result<SumEstimate> {
    box_sum(f, Scheme::Perturbed(pp))
}

/// `Σ_{k ∉ J_K} f(ξ_k)·m(Ĩ_k)`.
pub fn combined_sum(
    f: &ScalarField,
    pp: &PerturbedPartition,
    plan: &DeletionPlan,
) -> Result<SumEstimate> {
    box_sum(f, Scheme::Combined(pp, plan))
}

/// Integral of `f` over `Φ(B)` as a box sum of `f(Φ(p))·|det DΦ(p)|`.
pub fn integrate_region(
    f: &ScalarField,
    region: &ParametricRegion,
    scheme: Scheme<'_>,
) -> Result<SumEstimate> {
    integrate_region_with(f, region, scheme, Execution::default())
}

pub fn integrate_region_with(
    f: &ScalarField,
    region: &ParametricRegion,
    scheme: Scheme<'_>,
    exec: Execution,
) -> Result<SumEstimate> {
    check_dim(region.dim(), f.dim())?;
    check_domain(
        scheme.partition(),
        region.param_box(),
        "region parameter box",
    )?;
    scheme.evaluate_with(exec, region_integrand(f, region))
}

/// `p ↦ f(Φ(p))·|det DΦ(p)|`.
pub fn region_integrand<'a>(
    f: &'a ScalarField,
    region: &'a ParametricRegion,
) -> impl Fn(&[f64]) -> f64 + Sync + 'a {
    move |p: &[f64]| {
        let mut x = [0.0; 3];
        let x = &mut x[..region.dim()];
        region.map(p, x);
        f.eval(x) * region.jac_det(p)
    }
}

pub(crate) fn check_domain(
    p: &Partition,
    expected: &crate::geometry::BoxDomain,
    what: &str,
) -> Result<()> {
    if p.parent() == expected {
        Ok(())
    } else {
        Err(Error::DomainMismatch(format!(
            "partition of {:?} does not match the {what} {:?}",
            p.parent(),
            expected
        )))
    }
}

/// `|g(ξ_k)|·m(I_k)` per cell, the magnitudes used by
/// [`crate::geometry::Selector::LargestTerm`].
pub fn term_magnitudes<G: Fn(&[f64]) -> f64>(p: &Partition, g: G) -> Vec<f64> {
    (0..p.len())
        .map(|k| (g(p.tag(k)) * p.measure(k)).abs())
        .collect()
}

/// `max_k |f(ξ_k)|` over the tags of `p`; stands in for an undeclared bound.
pub fn estimate_bound(f: &ScalarField, p: &Partition) -> f64 {
    (0..p.len())
        .map(|k| f.eval(p.tag(k)).abs())
        .fold(0.0, f64::max)
}

/// `|J_K|·M·max_k m(I_k)`, bounding `|deleted − full|`.
pub fn deletion_bound(deleted: usize, bound: f64, p: &Partition) -> f64 {
    deleted as f64 * bound * p.max_measure()
}

/// `M·m(I)·|J_K|/m`, bounding `|deleted − full|` on equal partitions.
pub fn fraction_bound(deleted: usize, bound: f64, p: &Partition) -> f64 {
    bound * p.parent().measure() * deleted as f64 / p.len() as f64
}

/// `M·Σ m(I_k △ Ĩ_k)`, bounding `|perturbed − full|`.
pub fn perturbation_bound(bound: f64, pp: &PerturbedPartition) -> f64 {
    bound * pp.symdiff_total()
}

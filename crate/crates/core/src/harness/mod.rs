//! Named scenarios, single runs, convergence sweeps and CSV output.

mod scenarios;
mod sweep;

use std::fmt;
use std::str::FromStr;

pub use scenarios::{lookup, registry, Scenario, ScenarioKind, Setup};
pub use sweep::{
    emit_csv, emit_csv_file, fit_rate, run_sweep, ConvergenceReport, SweepRow, CSV_HEADER,
};

use crate::curve_surface::{
    scalar_line_term, scalar_surface_term, vector_line_term, vector_surface_term, LineSumConfig,
    SurfaceSumConfig,
};
use crate::error::{Error, Result};
use crate::fields::Boundary;
use crate::geometry::{
    BoxDomain, DeletionPlan, Partition, PerturbedPartition, Schedule, Selector, TagRule,
};
use crate::quadrature::{CellRef, Discretization, Execution, Scheme, SumEstimate, Variant};
use crate::theorems::{
    gauss_check, gauss_lhs_term, green_check, green_lhs_term, stokes_check, stokes_lhs_term,
    CheckOptions, TheoremReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TagKind {
    #[default]
    Midpoint,
    Corner,
    Random,
}

impl TagKind {
    fn rule(self, seed: u64) -> TagRule {
        match self {
            TagKind::Midpoint => TagRule::Midpoint,
            TagKind::Corner => TagRule::LowerCorner,
            TagKind::Random => TagRule::Random(seed),
        }
    }
}

impl fmt::Display for TagKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TagKind::Midpoint => "midpoint",
            TagKind::Corner => "corner",
            TagKind::Random => "random",
        })
    }
}

impl FromStr for TagKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "midpoint" => Ok(TagKind::Midpoint),
            "corner" => Ok(TagKind::Corner),
            "random" => Ok(TagKind::Random),
            _ => Err(format!("unknown tag rule `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SelectorKind {
    #[default]
    Prefix,
    Random,
    Largest,
}

impl fmt::Display for SelectorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SelectorKind::Prefix => "prefix",
            SelectorKind::Random => "random",
            SelectorKind::Largest => "largest",
        })
    }
}

impl FromStr for SelectorKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "prefix" => Ok(SelectorKind::Prefix),
            "random" => Ok(SelectorKind::Random),
            "largest" => Ok(SelectorKind::Largest),
            _ => Err(format!("unknown selector `{s}`")),
        }
    }
}

/// Sum variant and its knobs for one side of a computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariantConfig {
    pub variant: Variant,
    pub schedule: Schedule,
    pub selector: SelectorKind,
    pub gamma: f64,
    pub tags: TagKind,
    pub seed: u64,
}

impl Default for VariantConfig {
    fn default() -> Self {
        Self {
            variant: Variant::Full,
            schedule: Schedule::FixedK(1),
            selector: SelectorKind::Prefix,
            gamma: 0.5,
            tags: TagKind::Midpoint,
            seed: 0,
        }
    }
}

impl VariantConfig {
    pub fn new(variant: Variant) -> Self {
        Self {
            variant,
            ..Self::default()
        }
    }

    pub fn with_schedule(mut self, schedule: Schedule) -> Self {
        self.schedule = schedule;
        self
    }

    pub fn with_selector(mut self, selector: SelectorKind) -> Self {
        self.selector = selector;
        self
    }

    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn with_tags(mut self, tags: TagKind) -> Self {
        self.tags = tags;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Partition `domain` into `counts` cells and apply this variant.
    ///
    /// `stream` separates the random draws of independent sides; `term`
    /// supplies the per-cell terms ranked by [`SelectorKind::Largest`].
    pub fn discretize<T>(
        &self,
        domain: &BoxDomain,
        counts: &[usize],
        stream: u64,
        exec: Execution,
        term: T,
    ) -> Result<Discretization>
    where
        T: Fn(CellRef<'_>) -> Result<f64> + Sync,
    {
        let s = mix(self.seed, stream);
        let p = Partition::uniform(domain, counts, self.tags.rule(mix(s, 1)))?;
        let plan = if self.variant.deletes() {
            let selector = match self.selector {
                SelectorKind::Prefix => Selector::Prefix,
                SelectorKind::Random => Selector::Random(mix(s, 3)),
                SelectorKind::Largest => Selector::LargestTerm,
            };
            let plan = DeletionPlan::new(self.schedule, selector)?;
            let magnitudes = match self.selector {
                SelectorKind::Largest => Some(
                    Scheme::Full(&p)
                        .terms(exec, &term)?
                        .into_iter()
                        .map(f64::abs)
                        .collect::<Vec<_>>(),
                ),
                _ => None,
            };
            Some(plan.bind(&p, magnitudes.as_deref())?)
        } else {
            None
        };
        let perturbed = if self.variant.perturbs() {
            Some(PerturbedPartition::jitter(&p, self.gamma, mix(s, 2))?)
        } else {
            None
        };
        Ok(match (perturbed, plan) {
            (None, None) => Discretization::Full(p),
            (None, Some(plan)) => Discretization::Deleted(p, plan),
            (Some(pp), None) => Discretization::Perturbed(pp),
            (Some(pp), Some(plan)) => Discretization::Combined(pp, plan),
        })
    }
}

/// Independent variant settings for the interior and the boundary side.
/// One-sided scenarios use only `lhs`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SideConfigs {
    pub lhs: VariantConfig,
    pub rhs: VariantConfig,
}

impl SideConfigs {
    pub fn both(cfg: VariantConfig) -> Self {
        Self { lhs: cfg, rhs: cfg }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.lhs.seed = seed;
        self.rhs.seed = seed;
        self
    }

    /// Variant label: the variant name, or `lhs/rhs` when they differ.
    pub fn label(&self, two_sided: bool) -> String {
        if !two_sided || self.lhs.variant == self.rhs.variant {
            self.lhs.variant.to_string()
        } else {
            format!("{}/{}", self.lhs.variant, self.rhs.variant)
        }
    }
}

/// splitmix64 finalizer over `seed + stream`.
fn mix(seed: u64, stream: u64) -> u64 {
    let mut z = seed
        .wrapping_add(stream.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Single(SumEstimate),
    Pair(TheoremReport),
}

/// Resolution of a single run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Resolution {
    pub m: usize,
    pub boundary_m: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub scenario: &'static str,
    pub kind: ScenarioKind,
    pub exact: f64,
    pub resolution: Resolution,
    pub outcome: Outcome,
}

impl Evaluation {
    /// The one-sided value, or the interior side of a theorem check.
    pub fn value(&self) -> f64 {
        match &self.outcome {
            Outcome::Single(s) => s.value,
            Outcome::Pair(r) => r.lhs.value,
        }
    }

    /// Error against the exact value; the worse side for theorem checks.
    pub fn abs_error(&self) -> f64 {
        match &self.outcome {
            Outcome::Single(s) => (s.value - self.exact).abs(),
            Outcome::Pair(r) => (r.lhs.value - self.exact)
                .abs()
                .max((r.rhs.value - self.exact).abs()),
        }
    }

    pub fn gap(&self) -> Option<f64> {
        match &self.outcome {
            Outcome::Single(_) => None,
            Outcome::Pair(r) => Some(r.gap),
        }
    }

    /// Mesh of the (interior) base partition.
    pub fn mesh(&self) -> f64 {
        match &self.outcome {
            Outcome::Single(s) => s.mesh,
            Outcome::Pair(r) => r.lhs.mesh,
        }
    }

    pub fn symdiff_total(&self) -> f64 {
        match &self.outcome {
            Outcome::Single(s) => s.symdiff_total,
            Outcome::Pair(r) => r.lhs.symdiff_total + r.rhs.symdiff_total,
        }
    }

    pub fn deleted_count(&self) -> usize {
        match &self.outcome {
            Outcome::Single(s) => s.deleted_count,
            Outcome::Pair(r) => r.lhs.deleted_count + r.rhs.deleted_count,
        }
    }

    /// Error, and gap when present, within `tol`.
    pub fn passes(&self, tol: f64) -> bool {
        self.abs_error() <= tol && self.gap().is_none_or(|g| g <= tol)
    }
}

/// Evaluate `scenario` once at `m` cells per axis.
pub fn run(
    scenario: &Scenario,
    sides: &SideConfigs,
    m: usize,
    boundary_m: Option<usize>,
    exec: Execution,
) -> Result<Evaluation> {
    let bm = boundary_m.or_else(|| scenario.default_boundary_m(m));
    let grid = |b: &BoxDomain, m: usize| vec![m; b.dim()];
    let (l, r) = (&sides.lhs, &sides.rhs);
    let opts = CheckOptions {
        reference: Some(scenario.exact),
        exec,
        ..CheckOptions::default()
    };

    let outcome = match &scenario.setup {
        Setup::Box { domain, field } => {
            let d = l.discretize(domain, &grid(domain, m), 0, exec, |c: CellRef<'_>| {
                Ok(field.eval(c.tag) * c.weight)
            })?;
            Outcome::Single(crate::quadrature::box_sum_with(field, d.scheme(), exec)?)
        }
        Setup::ScalarLine { path, field } => {
            let term = scalar_line_term(field, path, Default::default());
            let d = l.discretize(&path.domain(), &[m], 0, exec, &term)?;
            let cfg = LineSumConfig::new(path, d.scheme())?.with_execution(exec);
            Outcome::Single(crate::curve_surface::scalar_line_sum(field, &cfg)?)
        }
        Setup::VectorLine { path, field } => {
            let term = vector_line_term(field, path, Default::default());
            let d = l.discretize(&path.domain(), &[m], 0, exec, &term)?;
            let cfg = LineSumConfig::new(path, d.scheme())?.with_execution(exec);
            Outcome::Single(crate::curve_surface::vector_line_sum(field, &cfg)?)
        }
        Setup::ScalarSurface { surface, field } => {
            let term = scalar_surface_term(field, surface);
            let d = l.discretize(surface.domain(), &[m, m], 0, exec, &term)?;
            let cfg = SurfaceSumConfig::new(surface, d.scheme())?.with_execution(exec);
            Outcome::Single(crate::curve_surface::scalar_surface_sum(field, &cfg)?)
        }
        Setup::VectorSurface { surface, field } => {
            let term = vector_surface_term(field, surface);
            let d = l.discretize(surface.domain(), &[m, m], 0, exec, &term)?;
            let cfg = SurfaceSumConfig::new(surface, d.scheme())?.with_execution(exec);
            Outcome::Single(crate::curve_surface::vector_surface_sum(field, &cfg)?)
        }
        Setup::Green { region, field } => {
            let bm = bm.unwrap_or(16 * m);
            let Boundary::Curves(paths) = region.boundary() else {
                return Err(Error::DimensionMismatch {
                    expected: 2,
                    got: 3,
                });
            };
            let pb = region.param_box();
            let interior =
                l.discretize(pb, &grid(pb, m), 0, exec, green_lhs_term(field, region))?;
            let pieces = paths
                .iter()
                .enumerate()
                .map(|(j, path)| {
                    let term = vector_line_term(field, path, Default::default());
                    r.discretize(&path.domain(), &[bm], 1 + j as u64, exec, &term)
                })
                .collect::<Result<Vec<_>>>()?;
            let schemes: Vec<Scheme<'_>> = pieces.iter().map(Discretization::scheme).collect();
            Outcome::Pair(green_check(
                field,
                region,
                interior.scheme(),
                &schemes,
                &opts,
            )?)
        }
        Setup::Gauss { region, field } => {
            let bm = bm.unwrap_or(2 * m);
            let Boundary::Surfaces(surfaces) = region.boundary() else {
                return Err(Error::DimensionMismatch {
                    expected: 3,
                    got: 2,
                });
            };
            let pb = region.param_box();
            let interior =
                l.discretize(pb, &grid(pb, m), 0, exec, gauss_lhs_term(field, region))?;
            let pieces = surfaces
                .iter()
                .enumerate()
                .map(|(j, s)| {
                    let term = vector_surface_term(field, s);
                    r.discretize(s.domain(), &[bm, bm], 1 + j as u64, exec, &term)
                })
                .collect::<Result<Vec<_>>>()?;
            let schemes: Vec<Scheme<'_>> = pieces.iter().map(Discretization::scheme).collect();
            Outcome::Pair(gauss_check(
                field,
                region,
                interior.scheme(),
                &schemes,
                &opts,
            )?)
        }
        Setup::Stokes {
            surface,
            boundary,
            field,
        } => {
            let bm = bm.unwrap_or(16 * m);
            let inner = l.discretize(
                surface.domain(),
                &[m, m],
                0,
                exec,
                stokes_lhs_term(field, surface),
            )?;
            let term = vector_line_term(field, boundary, Default::default());
            let outer = r.discretize(&boundary.domain(), &[bm], 1, exec, &term)?;
            Outcome::Pair(stokes_check(
                field,
                surface,
                boundary,
                inner.scheme(),
                outer.scheme(),
                &opts,
            )?)
        }
    };
    Ok(Evaluation {
        scenario: scenario.name,
        kind: scenario.kind(),
        exact: scenario.exact,
        resolution: Resolution {
            m,
            boundary_m: if scenario.kind().is_two_sided() {
                bm
            } else {
                None
            },
        },
        outcome,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_scenario_meets_its_tolerance_at_default_resolution() {
        for s in registry() {
            let m = s.default_m.min(64);
            let e = run(s, &SideConfigs::default(), m, None, Execution::Auto).unwrap();
            assert!(
                e.abs_error() < s.tolerance.max(1e-2) * 4.0,
                "{}: {:?}",
                s.name,
                e.abs_error()
            );
        }
    }

    #[test]
    fn sub_seeds_differ_per_stream() {
        assert_ne!(mix(0, 0), mix(0, 1));
        assert_ne!(mix(0, 1), mix(1, 0));
    }

    #[test]
    fn largest_selector_drops_the_largest_terms() {
        let cfg = VariantConfig::new(Variant::Deleted)
            .with_schedule(Schedule::FixedK(3))
            .with_selector(SelectorKind::Largest);
        let d = cfg
            .discretize(
                &BoxDomain::unit(1).unwrap(),
                &[10],
                0,
                Execution::Sequential,
                |c: CellRef<'_>| Ok(c.tag[0].sin() * c.weight),
            )
            .unwrap();
        let Discretization::Deleted(_, plan) = &d else {
            panic!()
        };
        assert_eq!(plan.resolved(), Some(&[7, 8, 9][..]));
    }

    #[test]
    fn side_configs_label() {
        let mut sides = SideConfigs::both(VariantConfig::new(Variant::Deleted));
        assert_eq!(sides.label(true), "deleted");
        sides.rhs.variant = Variant::Perturbed;
        assert_eq!(sides.label(true), "deleted/perturbed");
        assert_eq!(sides.label(false), "deleted");
    }
}

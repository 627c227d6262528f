//! Two-sided checks of Green's, Gauss's and Stokes' theorems.
//!
//! Each side is an independent sum over its own discretization, so the
//! interior may be perturbed while the boundary drops cells, and so on.
//! Before summing, the declared boundary orientation is confirmed with a
//! probe field whose answer has a known sign.

use std::fmt;

use crate::curve_surface::{
    flux_term, vector_line_sum, vector_line_term, vector_surface_sum, ArcLength, LineSumConfig,
    SurfaceSumConfig,
};
use crate::error::{Error, Result};
use crate::fields::{
    curl, divergence, planar_curl, Boundary, ParametricRegion, ParametricSurface, Path, VectorField,
};
use crate::quadrature::{check_domain, CellRef, Execution, Scheme, SumEstimate, Variant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    Green,
    Gauss,
    Stokes,
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::Green => "green",
            Theorem::Gauss => "gauss",
            Theorem::Stokes => "stokes",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremReport {
    pub theorem: Theorem,
    /// Interior (differential) side.
    pub lhs: SumEstimate,
    /// Boundary side, summed over all boundary pieces.
    pub rhs: SumEstimate,
    pub reference: Option<f64>,
    /// `|lhs − rhs|`.
    pub gap: f64,
    pub lhs_error: Option<f64>,
    pub rhs_error: Option<f64>,
    pub variant_lhs: Variant,
    pub variant_rhs: Variant,
}

impl TheoremReport {
    fn new(
        theorem: Theorem,
        lhs: SumEstimate,
        rhs: SumEstimate,
        reference: Option<f64>,
    ) -> Result<Self> {
        let gap = (lhs.value - rhs.value).abs();
        if !gap.is_finite() {
            return Err(Error::NonFiniteSum);
        }
        Ok(Self {
            theorem,
            variant_lhs: lhs.variant,
            variant_rhs: rhs.variant,
            lhs_error: reference.map(|r| (lhs.value - r).abs()),
            rhs_error: reference.map(|r| (rhs.value - r).abs()),
            lhs,
            rhs,
            reference,
            gap,
        })
    }

    /// Larger of the two side errors, when a reference is known.
    pub fn max_error(&self) -> Option<f64> {
        Some(self.lhs_error?.max(self.rhs_error?))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CheckOptions {
    pub reference: Option<f64>,
    pub exec: Execution,
    pub arc_length: ArcLength,
}

impl CheckOptions {
    pub fn with_reference(reference: f64) -> Self {
        Self {
            reference: Some(reference),
            ..Self::default()
        }
    }
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

fn boundary_count(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::BoundaryCountMismatch { expected, got })
    }
}

/// `p ↦ (∂Q/∂x − ∂P/∂y)(Φ(p))·|det DΦ(p)|`.
pub(crate) fn green_lhs_term<'a>(
    field: &'a VectorField,
    region: &'a ParametricRegion,
) -> impl Fn(CellRef<'_>) -> Result<f64> + Sync + 'a {
    move |c: CellRef<'_>| {
        let mut x = [0.0; 2];
        region.map(c.tag, &mut x);
        Ok(planar_curl(field, &x)? * region.jac_det(c.tag) * c.weight)
    }
}

/// `p ↦ (∇·F)(Φ(p))·|det DΦ(p)|`.
pub(crate) fn gauss_lhs_term<'a>(
    field: &'a VectorField,
    region: &'a ParametricRegion,
) -> impl Fn(CellRef<'_>) -> Result<f64> + Sync + 'a {
    move |c: CellRef<'_>| {
        let mut x = [0.0; 3];
        region.map(c.tag, &mut x);
        Ok(divergence(field, &x) * region.jac_det(c.tag) * c.weight)
    }
}

/// `(∇×F)(X(ξ))·N(ξ)·ΔD`.
pub(crate) fn stokes_lhs_term<'a>(
    field: &'a VectorField,
    surface: &'a ParametricSurface,
) -> impl Fn(CellRef<'_>) -> Result<f64> + Sync + 'a {
    flux_term(
        move |x: &[f64], out: &mut [f64]| {
            out.copy_from_slice(&curl(field, x)?);
            Ok(())
        },
        surface,
    )
}

fn line_side(
    field: &VectorField,
    paths: &[Path],
    schemes: &[Scheme<'_>],
    opts: &CheckOptions,
) -> Result<SumEstimate> {
    let parts = paths
        .iter()
        .zip(schemes)
        .map(|(path, &s)| {
            let cfg = LineSumConfig::new(path, s)?
                .with_arc_length(opts.arc_length)
                .with_execution(opts.exec);
            vector_line_sum(field, &cfg)
        })
        .collect::<Result<Vec<_>>>()?;
    SumEstimate::combine(&parts).ok_or(Error::BoundaryCountMismatch {
        expected: 1,
        got: 0,
    })
}

/// Circulation of `probe` around `paths` on the undeleted base partitions.
fn probe_circulation(
    probe: &VectorField,
    paths: &[Path],
    schemes: &[Scheme<'_>],
    exec: Execution,
) -> Result<f64> {
    let mut total = 0.0;
    for (path, s) in paths.iter().zip(schemes) {
        let full = Scheme::Full(s.partition());
        total += full
            .accumulate(exec, vector_line_term(probe, path, ArcLength::Tangent))?
            .value;
    }
    Ok(total)
}

fn rotation_probe(axis: usize) -> VectorField {
    VectorField::new(3, move |x, o| {
        let (a, b) = ((axis + 1) % 3, (axis + 2) % 3);
        o[axis] = 0.0;
        o[a] = -0.5 * x[b];
        o[b] = 0.5 * x[a];
    })
}

/// `∬_D (∂Q/∂x − ∂P/∂y) = ∮_{∂D} P dx + Q dy`.
///
/// `boundary` holds one scheme per boundary curve of `region`, in order.
pub fn green_check(
    field: &VectorField,
    region: &ParametricRegion,
    interior: Scheme<'_>,
    boundary: &[Scheme<'_>],
    opts: &CheckOptions,
) -> Result<TheoremReport> {
    check_dim(2, field.dim())?;
    check_dim(2, region.dim())?;
    let Boundary::Curves(paths) = region.boundary() else {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: 3,
        });
    };
    boundary_count(paths.len(), boundary.len())?;
    check_domain(
        interior.partition(),
        region.param_box(),
        "region parameter box",
    )?;

    let probe = VectorField::new(2, |x, o| {
        o[0] = -0.5 * x[1];
        o[1] = 0.5 * x[0];
    });
    let area = probe_circulation(&probe, paths, boundary, opts.exec)?;
    if !(area > 0.0) {
        return Err(Error::OrientationCheckFailed(format!(
            "circulation of (-y, x)/2 around the boundary is {area}, expected a positive area"
        )));
    }

    let lhs = interior.accumulate(opts.exec, green_lhs_term(field, region))?;
    let rhs = line_side(field, paths, boundary, opts)?;
    TheoremReport::new(Theorem::Green, lhs, rhs, opts.reference)
}

/// `∭_V ∇·F = ∯_{∂V} F·dS`.
///
/// `boundary` holds one scheme per boundary surface of `solid`, in order.
pub fn gauss_check(
    field: &VectorField,
    solid: &ParametricRegion,
    interior: Scheme<'_>,
    boundary: &[Scheme<'_>],
    opts: &CheckOptions,
) -> Result<TheoremReport> {
    check_dim(3, field.dim())?;
    check_dim(3, solid.dim())?;
    let Boundary::Surfaces(surfaces) = solid.boundary() else {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: 2,
        });
    };
    boundary_count(surfaces.len(), boundary.len())?;
    check_domain(
        interior.partition(),
        solid.param_box(),
        "region parameter box",
    )?;
    let configs = surfaces
        .iter()
        .zip(boundary)
        .map(|(s, &scheme)| Ok(SurfaceSumConfig::new(s, scheme)?.with_execution(opts.exec)))
        .collect::<Result<Vec<_>>>()?;

    let probe = VectorField::new(3, |x, o| {
        for (o, x) in o.iter_mut().zip(x) {
            *o = x / 3.0;
        }
    });
    let mut volume = 0.0;
    for cfg in &configs {
        let full = SurfaceSumConfig {
            scheme: Scheme::Full(cfg.scheme.partition()),
            ..*cfg
        };
        volume += vector_surface_sum(&probe, &full)?.value;
    }
    if !(volume > 0.0) {
        return Err(Error::OrientationCheckFailed(format!(
            "flux of (x, y, z)/3 through the boundary is {volume}, expected a positive volume"
        )));
    }

    let lhs = interior.accumulate(opts.exec, gauss_lhs_term(field, solid))?;
    let parts = configs
        .iter()
        .map(|cfg| vector_surface_sum(field, cfg))
        .collect::<Result<Vec<_>>>()?;
    let rhs = SumEstimate::combine(&parts).ok_or(Error::BoundaryCountMismatch {
        expected: 1,
        got: 0,
    })?;
    TheoremReport::new(Theorem::Gauss, lhs, rhs, opts.reference)
}

/// `∬_S (∇×F)·dS = ∮_{∂S} F·ds`.
pub fn stokes_check(
    field: &VectorField,
    surface: &ParametricSurface,
    boundary: &Path,
    surface_scheme: Scheme<'_>,
    boundary_scheme: Scheme<'_>,
    opts: &CheckOptions,
) -> Result<TheoremReport> {
    check_dim(3, field.dim())?;
    check_dim(3, boundary.dim())?;
    SurfaceSumConfig::new(surface, surface_scheme)?;
    let paths = std::slice::from_ref(boundary);
    let bschemes = [boundary_scheme];

    // the rotation about the axis most aligned with the surface gives the
    // strongest signal; its circulation and its curl flux must agree in sign
    let mut best = (0.0_f64, 0.0_f64);
    for axis in 0..3 {
        let probe = rotation_probe(axis);
        let circ = probe_circulation(&probe, paths, &bschemes, opts.exec)?;
        if circ.abs() > best.0.abs() {
            let full = Scheme::Full(surface_scheme.partition());
            let flux = full
                .accumulate(opts.exec, |c: CellRef<'_>| {
                    Ok(surface.normal(c.tag[0], c.tag[1])[axis] * c.weight)
                })?
                .value;
            best = (circ, flux);
        }
    }
    let (circ, flux) = best;
    if circ == 0.0 || circ.signum() != flux.signum() {
        return Err(Error::OrientationCheckFailed(format!(
            "probe circulation {circ} and curl flux {flux} disagree in sign"
        )));
    }

    let lhs = surface_scheme.accumulate(opts.exec, stokes_lhs_term(field, surface))?;
    let rhs = line_side(field, paths, &bschemes, opts)?;
    TheoremReport::new(Theorem::Stokes, lhs, rhs, opts.reference)
}

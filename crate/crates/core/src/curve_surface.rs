//! Line and surface integrals as parameter-domain sums.
//!
//! A path `x: [a,b] → ℝⁿ` contributes `f(x(t*_k))·‖x′(t*_k)‖·Δt_k` (scalar)
//! or `F(x(t*_k))·x′(t*_k)·Δt_k` (vector). A surface `X: D → ℝ³` contributes
//! `f(X(ξ_k))·‖N(ξ_k)‖·ΔD_k` or `F(X(ξ_k))·N(ξ_k)·ΔD_k` with
//! `N = X_u × X_v`. Any [`Scheme`] supplies the tags, the measures `Δt_k`
//! (or `Δt̃_k`) and the deleted cells.

use crate::error::{Error, Result};
use crate::fields::{ParametricSurface, Path, ScalarField, VectorField};
use crate::quadrature::{check_domain, CellRef, Execution, Scheme, SumEstimate};

/// How the length element `Δs_k` of a line cell is formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ArcLength {
    /// `‖x′(t*_k)‖·Δt_k`, and `x′(t*_k)·Δt_k` for vector sums.
    #[default]
    Tangent,
    /// `∫_{I_k} ‖x′‖` by 5-point Gauss–Legendre, and the chord
    /// `x(t_k) − x(t_{k−1})` for vector sums.
    Exact,
}

/// A path together with a discretization of its parameter interval.
#[derive(Debug, Clone, Copy)]
pub struct LineSumConfig<'a> {
    pub path: &'a Path,
    pub scheme: Scheme<'a>,
    pub arc_length: ArcLength,
    pub exec: Execution,
}

impl<'a> LineSumConfig<'a> {
    /// Fails unless the partition covers exactly `path.domain()` and every
    /// corner parameter of the path is a breakpoint.
    pub fn new(path: &'a Path, scheme: Scheme<'a>) -> Result<Self> {
        let p = scheme.partition();
        check_domain(p, &path.domain(), "path parameter interval")?;
        let b = p.breakpoints(0);
        let (a, z) = path.bounds();
        let tol = 1e-9 * (z - a);
        for &c in path.corners() {
            if !b.iter().any(|&t| (t - c).abs() <= tol) {
                return Err(Error::CornerNotBreakpoint(c));
            }
        }
        Ok(Self {
            path,
            scheme,
            arc_length: ArcLength::Tangent,
            exec: Execution::default(),
        })
    }

    pub fn with_arc_length(mut self, arc_length: ArcLength) -> Self {
        self.arc_length = arc_length;
        self
    }

    pub fn with_execution(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }
}

/// A surface together with a discretization of its parameter box.
#[derive(Debug, Clone, Copy)]
pub struct SurfaceSumConfig<'a> {
    pub surface: &'a ParametricSurface,
    pub scheme: Scheme<'a>,
    pub exec: Execution,
}

impl<'a> SurfaceSumConfig<'a> {
    pub fn new(surface: &'a ParametricSurface, scheme: Scheme<'a>) -> Result<Self> {
        check_domain(
            scheme.partition(),
            surface.domain(),
            "surface parameter box",
        )?;
        Ok(Self {
            surface,
            scheme,
            exec: Execution::default(),
        })
    }

    pub fn with_execution(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

const GL5: [(f64, f64); 5] = [
    (0.0, 0.568_888_888_888_888_9),
    (-0.538_469_310_105_683_1, 0.478_628_670_499_366_47),
    (0.538_469_310_105_683_1, 0.478_628_670_499_366_47),
    (-0.906_179_845_938_664, 0.236_926_885_056_189_08),
    (0.906_179_845_938_664, 0.236_926_885_056_189_08),
];

fn segment_length(path: &Path, lo: f64, hi: f64) -> f64 {
    let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
    let mut v = [0.0; 8];
    let v = &mut v[..path.dim()];
    GL5.iter()
        .map(|&(x, w)| {
            path.vel(mid + half * x, v);
            w * norm(v)
        })
        .sum::<f64>()
        * half
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Per-cell term of [`scalar_line_sum`], for use with [`Scheme::accumulate`]
/// or [`Scheme::terms`].
pub fn scalar_line_term<'a>(
    f: &'a ScalarField,
    path: &'a Path,
    arc: ArcLength,
) -> impl Fn(CellRef<'_>) -> Result<f64> + Sync + 'a {
    move |c: CellRef<'_>| {
        let t = c.tag[0];
        let mut buf = [0.0; 16];
        let (x, v) = buf.split_at_mut(8);
        let (x, v) = (&mut x[..path.dim()], &mut v[..path.dim()]);
        path.pos(t, x);
        let ds = match arc {
            ArcLength::Tangent => {
                path.vel(t, v);
                norm(v) * c.weight
            }
            ArcLength::Exact => {
                let (lo, hi) = c.bounds(0);
                segment_length(path, lo, hi)
            }
        };
        Ok(f.eval(x) * ds)
    }
}

pub fn vector_line_term<'a>(
    field: &'a VectorField,
    path: &'a Path,
    arc: ArcLength,
) -> impl Fn(CellRef<'_>) -> Result<f64> + Sync + 'a {
    move |c: CellRef<'_>| {
        let n = path.dim();
        let t = c.tag[0];
        let mut buf = [0.0; 24];
        let (x, rest) = buf.split_at_mut(8);
        let (fx, ds) = rest.split_at_mut(8);
        let (x, fx, ds) = (&mut x[..n], &mut fx[..n], &mut ds[..n]);
        path.pos(t, x);
        field.eval(x, fx);
        match arc {
            ArcLength::Tangent => {
                path.vel(t, ds);
                Ok(dot(fx, ds) * c.weight)
            }
            ArcLength::Exact => {
                let (lo, hi) = c.bounds(0);
                let mut a = [0.0; 8];
                path.pos(lo, &mut a[..n]);
                path.pos(hi, ds);
                for (d, a) in ds.iter_mut().zip(&a) {
                    *d -= a;
                }
                Ok(dot(fx, ds))
            }
        }
    }
}

pub fn scalar_surface_term<'a>(
    f: &'a ScalarField,
    surface: &'a ParametricSurface,
) -> impl Fn(CellRef<'_>) -> Result<f64> + Sync + 'a {
    move |c: CellRef<'_>| {
        let (u, v) = (c.tag[0], c.tag[1]);
        let n = norm(&surface.normal(u, v));
        if n == 0.0 {
            return Err(Error::DegenerateNormal(u, v));
        }
        Ok(f.eval(&surface.pos(u, v)) * n * c.weight)
    }
}

/// `F(X(ξ))·N(ξ)·ΔD` for any fallible field evaluation `F`.
pub fn flux_term<'a, F>(
    field: F,
    surface: &'a ParametricSurface,
) -> impl Fn(CellRef<'_>) -> Result<f64> + Sync + 'a
where
    F: Fn(&[f64], &mut [f64]) -> Result<()> + Sync + 'a,
{
    move |c: CellRef<'_>| {
        let (u, v) = (c.tag[0], c.tag[1]);
        let mut fx = [0.0; 3];
        field(&surface.pos(u, v), &mut fx)?;
        Ok(dot(&fx, &surface.normal(u, v)) * c.weight)
    }
}

pub fn vector_surface_term<'a>(
    field: &'a VectorField,
    surface: &'a ParametricSurface,
) -> impl Fn(CellRef<'_>) -> Result<f64> + Sync + 'a {
    flux_term(
        move |x: &[f64], out: &mut [f64]| {
            field.eval(x, out);
            Ok(())
        },
        surface,
    )
}

/// `Σ f(x(t*_k))·Δs_k` over the surviving cells.
pub fn scalar_line_sum(f: &ScalarField, cfg: &LineSumConfig<'_>) -> Result<SumEstimate> {
    check_dim(cfg.path.dim(), f.dim())?;
    cfg.scheme
        .accumulate(cfg.exec, scalar_line_term(f, cfg.path, cfg.arc_length))
}

/// `Σ F(x(t*_k))·Δ𝐬_k` over the surviving cells.
pub fn vector_line_sum(field: &VectorField, cfg: &LineSumConfig<'_>) -> Result<SumEstimate> {
    check_dim(cfg.path.dim(), field.dim())?;
    cfg.scheme
        .accumulate(cfg.exec, vector_line_term(field, cfg.path, cfg.arc_length))
}

/// `Σ f(X(ξ_k))·‖N(ξ_k)‖·ΔD_k` over the surviving cells.
pub fn scalar_surface_sum(f: &ScalarField, cfg: &SurfaceSumConfig<'_>) -> Result<SumEstimate> {
    check_dim(3, f.dim())?;
    cfg.scheme
        .accumulate(cfg.exec, scalar_surface_term(f, cfg.surface))
}

/// `Σ F(X(ξ_k))·N(ξ_k)·ΔD_k` over the surviving cells.
pub fn vector_surface_sum(field: &VectorField, cfg: &SurfaceSumConfig<'_>) -> Result<SumEstimate> {
    check_dim(3, field.dim())?;
    cfg.scheme
        .accumulate(cfg.exec, vector_surface_term(field, cfg.surface))
}

//! Single randomized instances, each checked against an independent
//! reference. Every function draws all of its choices from `seed`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use riemann_lab::curve_surface::{
    scalar_line_sum, scalar_surface_sum, vector_line_sum, vector_surface_sum, LineSumConfig,
    SurfaceSumConfig,
};
use riemann_lab::fields::shapes;
use riemann_lab::quadrature::{
    box_sum, deleted_sum, deletion_bound, integrate_region, perturbation_bound, perturbed_sum,
    riemann_sum, term_magnitudes,
};
use riemann_lab::{
    BoxDomain, ParametricSurface, Partition, Path, Result, Scheme, SumEstimate, TagRule, Variant,
};

use super::*;

pub type CaseResult = std::result::Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

/// Rounding allowance for an inequality between two compensated sums.
pub fn slack(bound: f64, p: &Partition) -> f64 {
    1e-12 * bound * p.parent().measure()
}

/// `|deleted − full| ≤ |J|·M·max m(I_k)` on a random box instance.
pub fn deletion_bound_case(seed: u64, equal: bool) -> CaseResult {
    let mut r = rng(seed);
    let case = random_box_case(&mut r, 2000, equal);
    let (p, f) = (&case.partition, &case.field);
    let mags = term_magnitudes(p, |x| f.eval(x));
    let plan = random_plan(&mut r, p, &mags);
    let full = riemann_sum(f, p).map_err(|e| e.to_string())?.value;
    let del = deleted_sum(f, p, &plan).map_err(|e| e.to_string())?;
    let bound = deletion_bound(del.deleted_count, case.bound, p);
    ensure!(
        (del.value - full).abs() <= bound + slack(case.bound, p),
        "seed {seed}: |{} - {full}| > {bound}",
        del.value
    );
    Ok(())
}

/// `|perturbed − full| ≤ M·Σ m(I_k △ Ĩ_k)` on a random box instance.
pub fn perturbation_bound_case(seed: u64, equal: bool) -> CaseResult {
    let mut r = rng(seed);
    let case = random_box_case(&mut r, 2000, equal);
    let p = &case.partition;
    let pp = random_perturbation(&mut r, p);
    let full = riemann_sum(&case.field, p)
        .map_err(|e| e.to_string())?
        .value;
    let per = perturbed_sum(&case.field, &pp).map_err(|e| e.to_string())?;
    ensure!(
        per.symdiff_total == pp.symdiff_total(),
        "seed {seed}: symdiff total not reported"
    );
    let bound = perturbation_bound(case.bound, &pp);
    ensure!(
        (per.value - full).abs() <= bound + slack(case.bound, p),
        "seed {seed}: |{} - {full}| > {bound}",
        per.value
    );
    Ok(())
}

/// Run `variant` through the engine and through a naive loop over
/// `term(tag, weight)`.
fn compare(
    rng: &mut ChaCha8Rng,
    p: &Partition,
    variant: Variant,
    term: &dyn Fn(&[f64], f64) -> f64,
    engine: &dyn Fn(Scheme<'_>) -> Result<SumEstimate>,
) -> CaseResult {
    let base_terms: Vec<f64> = (0..p.len()).map(|k| term(p.tag(k), p.measure(k))).collect();
    let magnitudes: Vec<f64> = base_terms.iter().map(|t| t.abs()).collect();
    let plan = random_plan(rng, p, &magnitudes);
    let pp = random_perturbation(rng, p);
    if variant.deletes() {
        check_resolved(&plan, p.len(), &magnitudes)?;
    }
    let (scheme, weights) = match variant {
        Variant::Full => (Scheme::Full(p), p.measures()),
        Variant::Deleted => (Scheme::Deleted(p, &plan), p.measures()),
        Variant::Perturbed => (Scheme::Perturbed(&pp), pp.measures()),
        Variant::Combined => (Scheme::Combined(&pp, &plan), pp.measures()),
    };
    let deleted = if variant.deletes() {
        plan.resolved().unwrap()
    } else {
        &[]
    };
    let terms: Vec<f64> = (0..p.len()).map(|k| term(p.tag(k), weights[k])).collect();
    let (reference, magnitude) = naive_sum(&terms, deleted);
    let got = engine(scheme).map_err(|e| e.to_string())?;
    ensure!(
        got.variant == variant,
        "variant {:?} reported as {:?}",
        variant,
        got.variant
    );
    ensure!(
        got.deleted_count == deleted.len(),
        "deleted count {} != {}",
        got.deleted_count,
        deleted.len()
    );
    ensure!(got.value.is_finite(), "non-finite value");
    ensure!(
        variant.perturbs() || got.symdiff_total == 0.0,
        "symdiff on unperturbed sum"
    );
    ensure!(
        within_4_eps(got.value, reference, magnitude),
        "{variant:?}: engine {} vs naive {reference} (magnitude {magnitude})",
        got.value
    );
    Ok(())
}

fn helix() -> Path {
    Path::new(
        (0.0, 3.0),
        3,
        |t, o| {
            o[0] = t.cos();
            o[1] = t.sin();
            o[2] = 0.5 * t;
        },
        |t, o| {
            o[0] = -t.sin();
            o[1] = t.cos();
            o[2] = 0.5;
        },
    )
    .unwrap()
}

fn paraboloid(a: f64, b: f64) -> ParametricSurface {
    ParametricSurface::new(
        BoxDomain::new(&[(-1.0, 1.0), (-0.5, 1.5)]).unwrap(),
        move |u, v| [u, v, a * u * u + b * v * v],
        move |u, _| [1.0, 0.0, 2.0 * a * u],
        move |_, v| [0.0, 1.0, 2.0 * b * v],
    )
    .unwrap()
}

pub fn oracle_box(seed: u64, variant: Variant) -> CaseResult {
    let mut r = rng(seed);
    let equal = r.gen_bool(0.5);
    let case = random_box_case(&mut r, 16, equal);
    let f = &case.field;
    compare(
        &mut r,
        &case.partition,
        variant,
        &|x, w| f.eval(x) * w,
        &|s| box_sum(f, s),
    )
}

pub fn oracle_region(seed: u64, variant: Variant) -> CaseResult {
    let mut r = rng(seed);
    let region = match r.gen_range(0..3) {
        0 => shapes::unit_disk(),
        1 => shapes::unit_ball(),
        _ => shapes::unit_cube(),
    };
    let dim = region.dim();
    let counts = random_counts(&mut r, dim, 16);
    let p = random_partition(&mut r, region.param_box(), &counts, true);
    let (f, _) = random_field(&mut r, dim);
    let term = |q: &[f64], w: f64| {
        let mut x = vec![0.0; dim];
        region.map(q, &mut x);
        f.eval(&x) * region.jac_det(q) * w
    };
    compare(&mut r, &p, variant, &term, &|s| {
        integrate_region(&f, &region, s)
    })
}

pub fn oracle_line(seed: u64, variant: Variant) -> CaseResult {
    let mut r = rng(seed);
    let path = match r.gen_range(0..3) {
        0 => shapes::unit_circle(),
        1 => {
            let a: Vec<f64> = (0..3).map(|_| r.gen_range(-1.0..1.0)).collect();
            let b: Vec<f64> = (0..3).map(|_| r.gen_range(-1.0..1.0)).collect();
            shapes::segment(&a, &b)
        }
        _ => helix(),
    };
    let n = path.dim();
    let m = r.gen_range(2..=16);
    let equal = r.gen_bool(0.5);
    let p = random_partition(&mut r, &path.domain(), &[m], equal);
    if r.gen_bool(0.5) {
        let field = random_vector_field(&mut r, n);
        let term = |t: &[f64], w: f64| {
            dot(&field.eval_vec(&path.position(t[0])), &path.velocity(t[0])) * w
        };
        compare(&mut r, &p, variant, &term, &|s| {
            vector_line_sum(&field, &LineSumConfig::new(&path, s)?)
        })
    } else {
        let (f, _) = random_field(&mut r, n);
        let term =
            |t: &[f64], w: f64| f.eval(&path.position(t[0])) * (norm(&path.velocity(t[0])) * w);
        compare(&mut r, &p, variant, &term, &|s| {
            scalar_line_sum(&f, &LineSumConfig::new(&path, s)?)
        })
    }
}

pub fn oracle_surface(seed: u64, variant: Variant) -> CaseResult {
    let mut r = rng(seed);
    let which = r.gen_range(0..3);
    let surface = match which {
        0 => shapes::unit_sphere(),
        1 => shapes::flat_square_patch(),
        _ => paraboloid(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)),
    };
    let counts = random_counts(&mut r, 2, 16);
    let equal = r.gen_bool(0.5);
    let mut p = random_partition(&mut r, surface.domain(), &counts, equal);
    if p.tag_rule() == TagRule::LowerCorner && which == 0 {
        // the pole row has a vanishing normal
        p = Partition::uniform(surface.domain(), &counts, TagRule::Midpoint).unwrap();
    }
    let normal = |q: &[f64]| cross(surface.du(q[0], q[1]), surface.dv(q[0], q[1]));
    if r.gen_bool(0.5) {
        let field = random_vector_field(&mut r, 3);
        let term =
            |q: &[f64], w: f64| dot(&field.eval_vec(&surface.pos(q[0], q[1])), &normal(q)) * w;
        compare(&mut r, &p, variant, &term, &|s| {
            vector_surface_sum(&field, &SurfaceSumConfig::new(&surface, s)?)
        })
    } else {
        let (f, _) = random_field(&mut r, 3);
        let term = |q: &[f64], w: f64| f.eval(&surface.pos(q[0], q[1])) * norm(&normal(q)) * w;
        compare(&mut r, &p, variant, &term, &|s| {
            scalar_surface_sum(&f, &SurfaceSumConfig::new(&surface, s)?)
        })
    }
}

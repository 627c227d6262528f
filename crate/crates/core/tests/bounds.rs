//! The error bounds behind the deleted and perturbed sums, checked on
//! random instances.

mod support;

use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use rand::Rng;
use riemann_lab::curve_surface::{
    scalar_line_sum, scalar_surface_sum, LineSumConfig, SurfaceSumConfig,
};
use riemann_lab::fields::shapes;
use riemann_lab::quadrature::{deleted_sum, fraction_bound, riemann_sum, term_magnitudes};
use riemann_lab::{Partition, Scheme, TagRule};
use support::cases::{deletion_bound_case, perturbation_bound_case, slack};
use support::*;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 200,
        rng_seed: RngSeed::Fixed(0xb0_0d),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn deletion_bound_holds(seed in any::<u64>(), equal in any::<bool>()) {
        deletion_bound_case(seed, equal).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn fraction_bound_holds_on_equal_partitions(seed in any::<u64>()) {
        let mut r = rng(seed);
        let case = random_box_case(&mut r, 2000, true);
        let p = &case.partition;
        prop_assert!(p.is_equal());
        let f = &case.field;
        let mags = term_magnitudes(p, |x| f.eval(x));
        let plan = random_plan(&mut r, p, &mags);
        let full = riemann_sum(f, p).unwrap().value;
        let del = deleted_sum(f, p, &plan).unwrap();
        let bound = fraction_bound(del.deleted_count, case.bound, p);
        prop_assert!((del.value - full).abs() <= bound + slack(case.bound, p));
    }

    #[test]
    fn perturbation_bound_holds(seed in any::<u64>(), equal in any::<bool>()) {
        perturbation_bound_case(seed, equal).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn line_deletion_bound(seed in any::<u64>()) {
        let mut r = rng(seed);
        let path = shapes::unit_circle_3d();
        let m = r.gen_range(4..400);
        let equal = r.gen_bool(0.5);
        let p = random_partition(&mut r, &path.domain(), &[m], equal);
        let (f, bound) = random_field(&mut r, 3);
        let weights: Vec<f64> = (0..m).map(|k| norm(&path.velocity(p.tag(k)[0])) * p.measure(k)).collect();
        let mags: Vec<f64> = (0..m).map(|k| (f.eval(&path.position(p.tag(k)[0])) * weights[k]).abs()).collect();
        let plan = random_plan(&mut r, &p, &mags);
        let full = scalar_line_sum(&f, &LineSumConfig::new(&path, Scheme::Full(&p)).unwrap()).unwrap().value;
        let del = scalar_line_sum(&f, &LineSumConfig::new(&path, Scheme::Deleted(&p, &plan)).unwrap()).unwrap();
        let max_w = weights.iter().cloned().fold(0.0, f64::max);
        let limit = del.deleted_count as f64 * bound * max_w;
        prop_assert!((del.value - full).abs() <= limit * (1.0 + 1e-12) + 1e-14);
    }

    #[test]
    fn surface_deletion_bound(seed in any::<u64>()) {
        let mut r = rng(seed);
        let surface = shapes::unit_sphere();
        let counts = random_counts(&mut r, 2, 900);
        let p = Partition::uniform(surface.domain(), &counts, TagRule::Midpoint).unwrap();
        let (f, bound) = random_field(&mut r, 3);
        let weights: Vec<f64> = (0..p.len()).map(|k| {
            let q = p.tag(k);
            norm(&cross(surface.du(q[0], q[1]), surface.dv(q[0], q[1]))) * p.measure(k)
        }).collect();
        let mags: Vec<f64> = (0..p.len()).map(|k| {
            let q = p.tag(k);
            (f.eval(&surface.pos(q[0], q[1])) * weights[k]).abs()
        }).collect();
        let plan = random_plan(&mut r, &p, &mags);
        let full = scalar_surface_sum(&f, &SurfaceSumConfig::new(&surface, Scheme::Full(&p)).unwrap()).unwrap().value;
        let del = scalar_surface_sum(&f, &SurfaceSumConfig::new(&surface, Scheme::Deleted(&p, &plan)).unwrap()).unwrap();
        let max_w = weights.iter().cloned().fold(0.0, f64::max);
        let limit = del.deleted_count as f64 * bound * max_w;
        prop_assert!((del.value - full).abs() <= limit * (1.0 + 1e-12) + 1e-14);
    }
}

#[test]
fn jitter_symdiff_within_two_m_gamma_lambda_squared() {
    // in 1D each interior breakpoint shifts by at most γλ², touching two cells
    let mut r = rng(11);
    for m in [2usize, 10, 100, 1000] {
        let p = Partition::uniform(
            &riemann_lab::BoxDomain::unit(1).unwrap(),
            &[m],
            TagRule::Midpoint,
        )
        .unwrap();
        let gamma = r.gen_range(0.0..0.99);
        let pp = riemann_lab::PerturbedPartition::jitter(&p, gamma, r.gen()).unwrap();
        let lambda = p.mesh();
        assert!(pp.symdiff_total() <= 2.0 * m as f64 * gamma * lambda * lambda * (1.0 + 1e-12));
    }
}

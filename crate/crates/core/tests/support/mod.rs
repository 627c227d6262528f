//! Random instances and naive term-by-term references shared by the
//! integration tests.
#![allow(dead_code, clippy::neg_cmp_op_on_partial_ord)]

use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use riemann_lab::{
    BoxDomain, DeletionPlan, Partition, PerturbedPartition, ScalarField, Schedule, Selector,
    TagRule, VectorField,
};

pub use rand::SeedableRng;

pub mod cases;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub struct BoxCase {
    pub partition: Partition,
    pub field: ScalarField,
    pub bound: f64,
}

pub fn random_box(rng: &mut ChaCha8Rng, dim: usize) -> BoxDomain {
    let axes: Vec<(f64, f64)> = (0..dim)
        .map(|_| {
            let lo = rng.gen_range(-2.0..2.0);
            (lo, lo + rng.gen_range(0.2..3.0))
        })
        .collect();
    BoxDomain::new(&axes).unwrap()
}

pub fn random_tags(rng: &mut ChaCha8Rng) -> TagRule {
    match rng.gen_range(0..3) {
        0 => TagRule::Midpoint,
        1 => TagRule::LowerCorner,
        _ => TagRule::Random(rng.gen()),
    }
}

/// Per-axis counts with product in `2..=max_cells`.
pub fn random_counts(rng: &mut ChaCha8Rng, dim: usize, max_cells: usize) -> Vec<usize> {
    let cap = ((max_cells as f64).powf(1.0 / dim as f64).floor() as usize).max(1);
    let mut counts: Vec<usize> = (0..dim).map(|_| rng.gen_range(1..=cap)).collect();
    if counts.iter().product::<usize>() < 2 {
        counts[0] = 2;
    }
    counts
}

/// Uniform partition, or strictly increasing random breakpoints when
/// `equal` is false.
pub fn random_partition(
    rng: &mut ChaCha8Rng,
    domain: &BoxDomain,
    counts: &[usize],
    equal: bool,
) -> Partition {
    let tags = random_tags(rng);
    if equal {
        return Partition::uniform(domain, counts, tags).unwrap();
    }
    let breakpoints = counts
        .iter()
        .enumerate()
        .map(|(axis, &c)| {
            let (lo, hi) = (domain.lower(axis), domain.upper(axis));
            // cumulative random gaps, each at least a fifth of the average
            let gaps: Vec<f64> = (0..c).map(|_| rng.gen_range(0.2..1.8)).collect();
            let total: f64 = gaps.iter().sum();
            let mut b = vec![lo];
            let mut acc = 0.0;
            for g in &gaps[..c - 1] {
                acc += g;
                b.push(lo + (hi - lo) * acc / total);
            }
            b.push(hi);
            b
        })
        .collect();
    Partition::from_breakpoints(domain, breakpoints, tags).unwrap()
}

/// `c + A·Π sin(ωᵢ xᵢ + φᵢ)` with declared bound `|c| + |A|`.
pub fn random_field(rng: &mut ChaCha8Rng, dim: usize) -> (ScalarField, f64) {
    let c: f64 = if rng.gen_bool(0.3) {
        rng.gen_range(-2.0..2.0)
    } else {
        0.0
    };
    let a: f64 = rng.gen_range(0.5..3.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let w: Vec<(f64, f64)> = (0..dim)
        .map(|_| (rng.gen_range(0.5..4.0), rng.gen_range(0.0..2.0 * PI)))
        .collect();
    let bound = c.abs() + a.abs();
    let f = ScalarField::new(dim, move |x| {
        c + a * x
            .iter()
            .zip(&w)
            .map(|(x, (om, ph))| (om * x + ph).sin())
            .product::<f64>()
    })
    .with_bound(bound);
    (f, bound)
}

pub fn random_vector_field(rng: &mut ChaCha8Rng, dim: usize) -> VectorField {
    let coef: Vec<f64> = (0..dim * (dim + 1))
        .map(|_| rng.gen_range(-2.0..2.0))
        .collect();
    VectorField::new(dim, move |x, out| {
        for (i, o) in out.iter_mut().enumerate() {
            let row = &coef[i * (dim + 1)..(i + 1) * (dim + 1)];
            *o = row[dim]
                + row[..dim]
                    .iter()
                    .zip(x)
                    .map(|(c, x)| c * (x + 0.3 * x * x).sin())
                    .sum::<f64>();
        }
    })
}

pub fn random_box_case(rng: &mut ChaCha8Rng, max_cells: usize, equal: bool) -> BoxCase {
    let dim = rng.gen_range(1..=3);
    let domain = random_box(rng, dim);
    let counts = random_counts(rng, dim, max_cells);
    let partition = random_partition(rng, &domain, &counts, equal);
    let (field, bound) = random_field(rng, dim);
    BoxCase {
        partition,
        field,
        bound,
    }
}

/// A schedule valid for `p`: vanishing-fraction schedules only on equal
/// partitions.
pub fn random_schedule(rng: &mut ChaCha8Rng, p: &Partition) -> Schedule {
    let m = p.len();
    match rng.gen_range(0..if p.is_equal() { 3 } else { 1 }) {
        0 => Schedule::FixedK(rng.gen_range(1..=(m - 1).min(8))),
        1 => Schedule::PowerLaw(rng.gen_range(0.1..0.9)),
        _ => Schedule::Logarithmic,
    }
}

/// Selector index: 0 prefix, 1 random, 2 largest.
pub fn random_plan(rng: &mut ChaCha8Rng, p: &Partition, magnitudes: &[f64]) -> DeletionPlan {
    let schedule = random_schedule(rng, p);
    let selector = match rng.gen_range(0..3) {
        0 => Selector::Prefix,
        1 => Selector::Random(rng.gen()),
        _ => Selector::LargestTerm,
    };
    DeletionPlan::new(schedule, selector)
        .unwrap()
        .bind(p, Some(magnitudes))
        .unwrap()
}

pub fn random_perturbation(rng: &mut ChaCha8Rng, p: &Partition) -> PerturbedPartition {
    PerturbedPartition::jitter(p, rng.gen_range(0.0..0.95), rng.gen()).unwrap()
}

/// `K` from the schedule definitions, independent of the library.
pub fn expected_count(schedule: Schedule, m: usize) -> usize {
    let k = match schedule {
        Schedule::FixedK(k) => k,
        Schedule::PowerLaw(beta) => {
            let mut k = 0usize;
            while ((k + 1) as f64) <= (m as f64).powf(beta) * (1.0 + 1e-12) {
                k += 1;
            }
            k
        }
        Schedule::Logarithmic => {
            let mut k = 0usize;
            while ((k + 1) as f64) <= (m as f64).ln() {
                k += 1;
            }
            k.max(1)
        }
    };
    k.min(m - 1).max(1)
}

/// Check a resolved index set against the selector's definition.
pub fn check_resolved(plan: &DeletionPlan, m: usize, magnitudes: &[f64]) -> Result<(), String> {
    let got = plan.resolved().ok_or("plan not bound")?;
    let k = expected_count(plan.schedule(), m);
    if got.len() != k {
        return Err(format!("expected {k} deleted cells, got {}", got.len()));
    }
    if got.windows(2).any(|w| w[0] >= w[1]) || got.iter().any(|&i| i >= m) {
        return Err(format!(
            "index set {got:?} not sorted, distinct and in range"
        ));
    }
    match plan.selector() {
        Selector::Prefix => {
            if got != (0..k).collect::<Vec<_>>() {
                return Err(format!("prefix set {got:?}"));
            }
        }
        Selector::LargestTerm => {
            let mut order: Vec<usize> = (0..m).collect();
            order.sort_by(|&a, &b| magnitudes[b].total_cmp(&magnitudes[a]).then(a.cmp(&b)));
            let mut want = order[..k].to_vec();
            want.sort_unstable();
            if got != want {
                return Err(format!("largest set {got:?}, expected {want:?}"));
            }
        }
        Selector::Random(_) => {}
    }
    Ok(())
}

/// Plain left-to-right sum over the surviving cells and `Σ|term|`.
pub fn naive_sum(terms: &[f64], deleted: &[usize]) -> (f64, f64) {
    let mut sum = 0.0;
    let mut magnitude = 0.0;
    for (k, t) in terms.iter().enumerate() {
        if deleted.contains(&k) {
            continue;
        }
        sum += t;
        magnitude += t.abs();
    }
    (sum, magnitude)
}

/// `|a − b| ≤ 4·ε·magnitude`.
pub fn within_4_eps(a: f64, b: f64, magnitude: f64) -> bool {
    (a - b).abs() <= 4.0 * f64::EPSILON * magnitude
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

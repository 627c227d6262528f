//! Every sum kind and variant against a naive loop on small instances.

mod support;

use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use riemann_lab::Variant;
use support::cases::{oracle_box, oracle_line, oracle_region, oracle_surface};

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 96,
        rng_seed: RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn variant_strategy() -> impl Strategy<Value = Variant> {
    prop::sample::select(Variant::ALL.to_vec())
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn box_sums(seed in any::<u64>(), variant in variant_strategy()) {
        oracle_box(seed, variant).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn region_sums(seed in any::<u64>(), variant in variant_strategy()) {
        oracle_region(seed, variant).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn line_sums(seed in any::<u64>(), variant in variant_strategy()) {
        oracle_line(seed, variant).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn surface_sums(seed in any::<u64>(), variant in variant_strategy()) {
        oracle_surface(seed, variant).map_err(TestCaseError::fail)?;
    }
}

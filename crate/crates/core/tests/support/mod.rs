//! Shared proptest configuration and the invariant suite. Each property is a
//! plain function so that both the `properties` test target and the
//! acceptance runner execute the same definitions.
#![allow(dead_code)]

pub mod props;

use proptest::test_runner::{Config, RngSeed};

pub const CASES: u32 = 256;
pub const SEED: u64 = 0x5eed_c0ff_ee15_2024;

pub fn config() -> Config {
    Config {
        cases: CASES,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..Config::default()
    }
}

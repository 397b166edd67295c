//! Fixtures shared by the benchmarks.

use ifsa_core::harness::{Instance, SamplerParams, Source, SourceParams, DEFAULT_CAP};
use ifsa_core::GroupSpec;

/// A reproducible random instance over `group` with two letters and
/// degrees in steps of 1/4.
pub fn instance(group: &str) -> Instance {
    let params =
        SamplerParams { group: GroupSpec::Family(group.into()), alphabet: 2, denominator: 4, count: 1, seed: 7 };
    Source::build(SourceParams::Sampler(params), DEFAULT_CAP)
        .expect("sampler builds")
        .instance(0)
        .expect("index 0 exists")
}

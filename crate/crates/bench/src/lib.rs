//! Benchmark inputs shared by the criterion targets.

use seifert_core::seifert::fixtures;
use seifert_core::SeifertData;

/// Named inputs, cheapest first.
pub fn workloads() -> Vec<(&'static str, SeifertData)> {
    vec![
        ("e6", fixtures::e6()),
        ("2345", fixtures::ex_2345()),
        ("223377_b3", fixtures::ex_223377(3)),
        ("223377_b2", fixtures::ex_223377(2)),
    ]
}

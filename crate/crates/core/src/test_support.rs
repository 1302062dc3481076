//! Shared strategies for unit tests.

use proptest::prelude::*;

use crate::seifert::SeifertData;

/// Valid Seifert data with `3 <= nu <= max_nu` and `lcm(alpha_i) <= max_lcm`.
/// Every `alpha_i` is drawn among the divisors of one bound `L <= max_lcm`.
pub fn arb_seifert(max_lcm: i64, max_nu: usize) -> impl Strategy<Value = SeifertData> {
    (2..=max_lcm, 3..=max_nu)
        .prop_flat_map(|(l, nu)| {
            let divisors: Vec<i64> = (2..=l).filter(|d| l % d == 0).collect();
            (
                1i64..6,
                proptest::collection::vec((proptest::sample::select(divisors), 1i64..1000), nu),
            )
        })
        .prop_filter_map("invalid Seifert data", |(b0, raw)| {
            let alphas: Vec<i64> = raw.iter().map(|r| r.0).collect();
            let omegas: Vec<i64> = raw.iter().map(|r| 1 + r.1 % (r.0 - 1)).collect();
            SeifertData::from_parts(b0, &alphas, &omegas).ok()
        })
}

//! Explicit values of the free parameters `p_3..p_nu`.
//!
//! The points of `P^1` attached to the legs are `P_1 = [1:0]`,
//! `P_2 = [0:1]` and `P_i = [p_i:1]`; the linear forms cutting `A` down to
//! `C[a_1, a_2]` are then `a_i = p_i a_1 + a_2`. An assignment is admissible
//! when every `p_i` is nonzero and the values are pairwise distinct.

use std::collections::BTreeSet;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::arith::{parse_rational, rat_int, rat_to_string, Rational};
use crate::error::{Error, Result};

/// How parameter names are printed. `FromOne` names the parameter of leg 3
/// `p1`, the convention of the six-leg examples; `ByLeg` names it `p3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Labeling {
    FromOne,
    ByLeg,
}

impl Labeling {
    pub fn offset(self) -> usize {
        match self {
            Labeling::FromOne => 1,
            Labeling::ByLeg => 3,
        }
    }

    /// Name of parameter `k` (0-based, belonging to leg `k + 3`).
    pub fn name(self, k: usize) -> String {
        format!("p{}", k + self.offset())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params(Vec<Rational>);

impl Params {
    /// Values for legs `3..=nu` in order; checked for admissibility.
    pub fn new(nu: usize, values: Vec<Rational>) -> Result<Self> {
        if values.len() + 2 != nu {
            return Err(Error::InadmissibleParams(format!(
                "expected {} parameters for {nu} legs, got {}",
                nu.saturating_sub(2),
                values.len()
            )));
        }
        check_admissible(&values)?;
        Ok(Self(values))
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    /// Parses `p3=2,p4=-1/3,...`; every parameter must be given exactly once.
    pub fn parse(nu: usize, text: &str, labeling: Labeling) -> Result<Self> {
        let count = nu.saturating_sub(2);
        let mut values: Vec<Option<Rational>> = vec![None; count];
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, value) = item.split_once('=').ok_or_else(|| {
                Error::Domain(format!("parameter `{item}` is not of the form pK=value"))
            })?;
            let index: usize = name
                .trim()
                .strip_prefix('p')
                .and_then(|k| k.parse().ok())
                .filter(|&k| k >= labeling.offset() && k < labeling.offset() + count)
                .ok_or_else(|| Error::Domain(format!("unknown parameter `{}`", name.trim())))?;
            let slot = &mut values[index - labeling.offset()];
            if slot.is_some() {
                return Err(Error::Domain(format!("parameter `{}` given twice", name.trim())));
            }
            *slot = Some(parse_rational(value.trim())?);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(k, v)| {
                v.ok_or_else(|| Error::Domain(format!("missing parameter {}", labeling.name(k))))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(nu, values)
    }

    pub fn labeled(&self, labeling: Labeling) -> LabeledParams<'_> {
        LabeledParams {
            params: self,
            labeling,
        }
    }
}

pub fn check_admissible(values: &[Rational]) -> Result<()> {
    if let Some(k) = values.iter().position(Zero::is_zero) {
        return Err(Error::InadmissibleParams(format!("p{} is zero", k + 3)));
    }
    let distinct: BTreeSet<&Rational> = values.iter().collect();
    if distinct.len() != values.len() {
        return Err(Error::InadmissibleParams("parameters are not pairwise distinct".into()));
    }
    Ok(())
}

/// Serializes as an ordered map `{"p1": "2", ...}`.
pub struct LabeledParams<'a> {
    params: &'a Params,
    labeling: Labeling,
}

impl Serialize for LabeledParams<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.params.0.len()))?;
        for (k, v) in self.params.0.iter().enumerate() {
            map.serialize_entry(&self.labeling.name(k), &rat_to_string(v))?;
        }
        map.end()
    }
}

const PRIME_POOL: [i64; 32] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131,
];

/// One RNG stream per `(seed, degree, trial)`, so results do not depend on
/// scheduling.
pub fn stream(seed: u64, l: i64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((l as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ trial);
    rng
}

/// Distinct primes with random signs, optionally divided by a small
/// positive integer.
pub fn random_params(nu: usize, rng: &mut ChaCha8Rng) -> Params {
    let count = nu - 2;
    let mut pool = PRIME_POOL.to_vec();
    pool.shuffle(rng);
    let den = rng.gen_range(1..=3);
    let values = pool[..count]
        .iter()
        .map(|&p| {
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            rat_int(sign * p) / rat_int(den)
        })
        .collect();
    Params::new(nu, values).expect("distinct nonzero primes are admissible")
}

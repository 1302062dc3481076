//! Seifert invariants `(b0, (alpha_i, omega_i))` of a star-shaped graph.

use std::fmt;

use num_integer::Integer;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::arith::{lcm_checked, rat, rat_int, rat_to_i64, rat_to_string, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Leg {
    pub alpha: i64,
    pub omega: i64,
}

impl Leg {
    pub fn new(alpha: i64, omega: i64) -> Self {
        Self { alpha, omega }
    }

    /// `beta = alpha - omega`.
    pub fn beta(&self) -> i64 {
        self.alpha - self.omega
    }
}

/// Validated Seifert invariants. Every derived quantity in the crate is a
/// function of this value alone.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeifertData {
    b0: i64,
    legs: Vec<Leg>,
    alpha: i64,
    o: i64,
}

/// Entries above this are rejected so that `l * b0`, `l * omega` and similar
/// products stay far from `i64` limits for every degree we ever visit.
const MAX_ENTRY: i64 = 1 << 24;

impl SeifertData {
    pub fn new(b0: i64, legs: Vec<Leg>) -> Result<Self> {
        if legs.len() < 3 {
            return Err(Error::TooFewLegs(legs.len()));
        }
        if b0 < 1 {
            return Err(Error::InvalidB0(b0));
        }
        if b0 > MAX_ENTRY {
            return Err(Error::Overflow(format!("b0 = {b0}")));
        }
        for (i, leg) in legs.iter().enumerate() {
            let bad = |reason| Error::InvalidLeg {
                index: i + 1,
                alpha: leg.alpha,
                omega: leg.omega,
                reason,
            };
            if leg.alpha < 2 {
                return Err(bad("alpha must be >= 2"));
            }
            if leg.alpha > MAX_ENTRY {
                return Err(Error::Overflow(format!("alpha = {}", leg.alpha)));
            }
            if !(0 < leg.omega && leg.omega < leg.alpha) {
                return Err(bad("need 0 < omega < alpha"));
            }
            if leg.alpha.gcd(&leg.omega) != 1 {
                return Err(bad("gcd(alpha, omega) must be 1"));
            }
        }
        let alpha = legs
            .iter()
            .try_fold(1i64, |acc, leg| lcm_checked(acc, leg.alpha).filter(|&v| v <= MAX_ENTRY))
            .ok_or_else(|| Error::Overflow("lcm of the alphas".into()))?;
        let e = euler(b0, &legs);
        if !e.is_negative() {
            return Err(Error::NotNegativeDefinite { e: rat_to_string(&e) });
        }
        let o = rat_to_i64(&(-&e * rat_int(alpha))).ok_or_else(|| {
            Error::Consistency(format!("|e| * alpha is not an integer for e = {}", rat_to_string(&e)))
        })?;
        Ok(Self { b0, legs, alpha, o })
    }

    /// Convenience constructor from parallel `alpha` / `omega` slices.
    pub fn from_parts(b0: i64, alphas: &[i64], omegas: &[i64]) -> Result<Self> {
        if alphas.len() != omegas.len() {
            return Err(Error::Domain("alpha and omega lists differ in length".into()));
        }
        let legs = alphas.iter().zip(omegas).map(|(&a, &w)| Leg::new(a, w)).collect();
        Self::new(b0, legs)
    }

    pub fn b0(&self) -> i64 {
        self.b0
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    pub fn nu(&self) -> usize {
        self.legs.len()
    }

    pub fn alphas(&self) -> Vec<i64> {
        self.legs.iter().map(|l| l.alpha).collect()
    }

    pub fn omegas(&self) -> Vec<i64> {
        self.legs.iter().map(|l| l.omega).collect()
    }

    pub fn betas(&self) -> Vec<i64> {
        self.legs.iter().map(Leg::beta).collect()
    }

    /// Orbifold Euler number `e = -b0 + sum omega_i / alpha_i`.
    pub fn euler_number(&self) -> Rational {
        euler(self.b0, &self.legs)
    }

    pub fn abs_e(&self) -> Rational {
        -self.euler_number()
    }

    /// `alpha = lcm(alpha_i)`.
    pub fn lcm_alpha(&self) -> i64 {
        self.alpha
    }

    /// `o = |e| * alpha`, the order of `[E_0^*]` in `H`.
    pub fn order_o(&self) -> i64 {
        self.o
    }

    /// `lcm` of all alphas except the `i`-th (0-based).
    pub fn lcm_without(&self, i: usize) -> i64 {
        self.legs
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(1i64, |acc, (_, leg)| lcm_checked(acc, leg.alpha).expect("bounded by alpha"))
    }

    pub fn all_omegas_one(&self) -> bool {
        self.legs.iter().all(|l| l.omega == 1)
    }

    pub fn is_minimal_rational(&self) -> bool {
        self.b0 >= self.nu() as i64
    }
}

fn euler(b0: i64, legs: &[Leg]) -> Rational {
    legs.iter()
        .fold(rat_int(-b0), |acc, leg| acc + rat(leg.omega, leg.alpha))
}

impl fmt::Display for SeifertData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: Vec<i64>| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({},({}),({}))", self.b0, join(self.alphas()), join(self.omegas()))
    }
}

impl Serialize for SeifertData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            b0: i64,
            legs: Vec<[i64; 2]>,
        }
        Wire {
            b0: self.b0,
            legs: self.legs.iter().map(|l| [l.alpha, l.omega]).collect(),
        }
        .serialize(s)
    }
}

/// A few named inputs used throughout tests, docs and benchmarks.
pub mod fixtures {
    use super::SeifertData;

    pub fn e6() -> SeifertData {
        SeifertData::from_parts(2, &[2, 3, 3], &[1, 2, 2]).unwrap()
    }

    pub fn ex_2345() -> SeifertData {
        SeifertData::from_parts(2, &[2, 3, 4, 5], &[1, 1, 1, 4]).unwrap()
    }

    pub fn ex_223377(b0: i64) -> SeifertData {
        SeifertData::from_parts(b0, &[2, 2, 3, 3, 7, 7], &[1; 6]).unwrap()
    }

    pub fn ex_linbig() -> SeifertData {
        SeifertData::from_parts(1, &[3, 4, 5, 6, 21], &[1; 5]).unwrap()
    }
}

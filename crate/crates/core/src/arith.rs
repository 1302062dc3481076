//! Exact integers and rationals, plus negative (Hirzebruch-Jung) continued
//! fractions.
//!
//! Integers and rationals are `num-bigint` / `num-rational` values; this
//! module adds the handful of helpers the rest of the crate needs on top of
//! them (floor/ceil/fractional part, reporting format, parsing).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rational = BigRational;

pub fn int(n: i64) -> Int {
    BigInt::from(n)
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `(floor(q), ceil(q), q - floor(q))`.
pub fn floor_ceil_frac(q: &Rational) -> (Int, Int, Rational) {
    let floor = q.numer().div_floor(q.denom());
    let ceil = -((-q.numer()).div_floor(q.denom()));
    let frac = q - Rational::from_integer(floor.clone());
    (floor, ceil, frac)
}

/// Fractional part `{q}` in `[0, 1)`.
pub fn frac(q: &Rational) -> Rational {
    floor_ceil_frac(q).2
}

/// `"num/den"`, or `"num"` when the denominator is 1.
pub fn rat_to_string(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Domain(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn rat_to_i64(q: &Rational) -> Option<i64> {
    if q.denom().is_one() {
        q.numer().to_i64()
    } else {
        None
    }
}

pub fn serialize_rational<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rat_to_string(q))
}

pub fn serialize_rationals<S: Serializer>(
    qs: &[Rational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let strings: Vec<String> = qs.iter().map(rat_to_string).collect();
    strings.serialize(s)
}

pub fn serialize_rational_matrix<S: Serializer>(
    m: &[Vec<Rational>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(rat_to_string).collect()).collect();
    rows.serialize(s)
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn lcm_checked(a: i64, b: i64) -> Option<i64> {
    let g = a.gcd(&b);
    (a / g).checked_mul(b).map(|v| v.abs())
}

/// Binomial coefficient `C(n, k)`; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> Int {
    if k < 0 || n < 0 || k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::one();
    for i in 0..k {
        acc = acc * Int::from(n - i) / Int::from(i + 1);
    }
    acc
}

/// Negative continued fraction `[u1, ..., ur]` = `u1 - 1/(u2 - 1/(... - 1/ur))`
/// with every entry at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NegContinuedFraction {
    entries: Vec<i64>,
}

impl NegContinuedFraction {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() || entries.iter().any(|&u| u < 2) {
            return Err(Error::Domain(format!(
                "negative continued fraction entries must be >= 2: {entries:?}"
            )));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Folds the fraction from the tail.
    pub fn evaluate(&self) -> Rational {
        let mut it = self.entries.iter().rev();
        let mut acc = rat_int(*it.next().expect("non-empty"));
        for &u in it {
            acc = rat_int(u) - acc.recip();
        }
        acc
    }
}

impl fmt::Display for NegContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|u| u.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

fn check_cf_domain(alpha: i64, beta: i64) -> Result<()> {
    if !(0 < beta && beta < alpha) || alpha.gcd(&beta) != 1 {
        return Err(Error::Domain(format!(
            "need 0 < beta < alpha with gcd 1, got alpha={alpha}, beta={beta}"
        )));
    }
    Ok(())
}

pub fn neg_cf_expand(alpha: i64, beta: i64) -> Result<NegContinuedFraction> {
    check_cf_domain(alpha, beta)?;
    let (mut num, mut den) = (alpha, beta);
    let mut entries = Vec::new();
    while den != 0 {
        // ceil(num / den)
        let u = Integer::div_ceil(&num, &den);
        entries.push(u);
        let rem = u * den - num;
        num = den;
        den = rem;
    }
    NegContinuedFraction::new(entries)
}

/// `(r_k, t_k)` with `r_k / t_k = [u1, ..., uk]` in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Convergent {
    pub r: i64,
    pub t: i64,
}

pub type ConvergentList = Vec<Convergent>;

pub fn convergents(alpha: i64, beta: i64) -> Result<ConvergentList> {
    let cf = neg_cf_expand(alpha, beta)?;
    // r_k = u_k r_{k-1} - r_{k-2}, seeded with r_0 = 1, r_{-1} = 0 and
    // t_0 = 0, t_{-1} = -1.
    let (mut r_prev, mut r_prev2) = (1i64, 0i64);
    let (mut t_prev, mut t_prev2) = (0i64, -1i64);
    let mut out = Vec::with_capacity(cf.len());
    for &u in cf.entries() {
        let r = u * r_prev - r_prev2;
        let t = u * t_prev - t_prev2;
        out.push(Convergent { r, t });
        (r_prev2, r_prev) = (r_prev, r);
        (t_prev2, t_prev) = (t_prev, t);
    }
    debug_assert_eq!(out.last().map(|c| (c.r, c.t)), Some((alpha, beta)));
    Ok(out)
}

pub fn is_nonneg_integer(q: &Rational) -> bool {
    q.denom().is_one() && !q.numer().is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent evaluation: left fold with explicit rational nesting.
    fn eval_nested(us: &[i64]) -> Rational {
        if us.len() == 1 {
            return rat_int(us[0]);
        }
        rat_int(us[0]) - eval_nested(&us[1..]).recip()
    }

    #[test]
    fn expands_small_fractions() {
        assert_eq!(neg_cf_expand(3, 2).unwrap().entries(), &[2, 2]);
        assert_eq!(neg_cf_expand(2, 1).unwrap().entries(), &[2]);
        assert_eq!(neg_cf_expand(7, 3).unwrap().entries(), &[3, 2, 2]);
        assert_eq!(eval_nested(&[3, 2, 2]), rat(7, 3));
        assert_eq!(neg_cf_expand(5, 4).unwrap().entries(), &[2, 2, 2, 2]);
    }

    #[test]
    fn rejects_bad_domain() {
        assert!(neg_cf_expand(4, 2).is_err());
        assert!(neg_cf_expand(3, 3).is_err());
        assert!(neg_cf_expand(3, 0).is_err());
        assert!(convergents(6, 4).is_err());
    }

    #[test]
    fn convergents_of_seven_thirds() {
        let c: Vec<_> = convergents(7, 3).unwrap().iter().map(|c| (c.r, c.t)).collect();
        assert_eq!(c, vec![(3, 1), (5, 2), (7, 3)]);
        // prefix evaluation oracle
        let cf = neg_cf_expand(7, 3).unwrap();
        for (k, conv) in convergents(7, 3).unwrap().iter().enumerate() {
            assert_eq!(eval_nested(&cf.entries()[..=k]), rat(conv.r, conv.t));
        }
        assert_eq!(convergents(2, 1).unwrap(), vec![Convergent { r: 2, t: 1 }]);
    }

    #[test]
    fn convergents_of_alpha_over_alpha_minus_one() {
        for alpha in 2..=50 {
            let cf = neg_cf_expand(alpha, alpha - 1).unwrap();
            assert_eq!(cf.len() as i64, alpha - 1);
            assert!(cf.entries().iter().all(|&u| u == 2));
            let conv = convergents(alpha, alpha - 1).unwrap();
            for (k, c) in conv.iter().enumerate() {
                let k = k as i64 + 1;
                assert_eq!((c.r, c.t), (k + 1, k));
            }
        }
    }

    #[test]
    fn floor_ceil_frac_examples() {
        let (f, c, r) = floor_ceil_frac(&rat(7, 3));
        assert_eq!((f, c, r), (int(2), int(3), rat(1, 3)));
        let (f, c, r) = floor_ceil_frac(&rat(-7, 3));
        assert_eq!((f, c, r), (int(-3), int(-2), rat(2, 3)));
        let (f, c, r) = floor_ceil_frac(&rat_int(4));
        assert_eq!((f, c, r), (int(4), int(4), rat_int(0)));
    }

    #[test]
    fn formats_and_parses() {
        assert_eq!(rat_to_string(&rat(-7, 60)), "-7/60");
        assert_eq!(rat_to_string(&rat(86, 2)), "43");
        assert_eq!(parse_rational(" -7/60 ").unwrap(), rat(-7, 60));
        assert_eq!(parse_rational("12").unwrap(), rat_int(12));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 3), int(120));
        assert_eq!(binomial(3, 5), int(0));
        assert_eq!(binomial(0, 0), int(1));
        assert_eq!(binomial(5, -1), int(0));
    }

    #[test]
    fn every_coprime_pair_round_trips() {
        for alpha in 2..=500i64 {
            for beta in 1..alpha {
                if alpha.gcd(&beta) != 1 {
                    continue;
                }
                let cf = neg_cf_expand(alpha, beta).unwrap();
                assert_eq!(cf.evaluate(), rat(alpha, beta));
            }
        }
    }

    #[test]
    fn consecutive_convergents_are_unimodular() {
        for alpha in 2..=300i64 {
            for beta in 1..alpha {
                if alpha.gcd(&beta) != 1 {
                    continue;
                }
                let conv = convergents(alpha, beta).unwrap();
                for w in conv.windows(2) {
                    assert_eq!(w[0].r * w[1].t - w[1].r * w[0].t, 1);
                    assert!(w[0].r < w[1].r);
                }
                assert_eq!(conv.last().map(|c| (c.r, c.t)), Some((alpha, beta)));
            }
        }
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-200i64..200, 1i64..60).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn rational_arithmetic_is_reduced_and_lawful(a in small_rat(), b in small_rat(), c in small_rat()) {
            let sum = &a + &b;
            prop_assert_eq!(sum.numer().gcd(sum.denom()), if sum.is_zero() { sum.denom().clone() } else { Int::one() });
            prop_assert!(sum.denom().is_positive());
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            let (fl, ce, fr) = floor_ceil_frac(&a);
            prop_assert!(Rational::from_integer(fl.clone()) <= a);
            prop_assert!(a < Rational::from_integer(fl + 1));
            prop_assert!(fr >= rat_int(0) && fr < rat_int(1));
            prop_assert_eq!(ce, -floor_ceil_frac(&-a).0);
        }
    }
}

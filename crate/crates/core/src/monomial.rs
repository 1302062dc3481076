//! Square-free monomials in `A = C[a_1..a_nu]`, the sets `X_l` and the
//! graded pieces of `A / J(l)`.

use std::fmt;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::arith::{binomial, Int};
use crate::error::{Error, Result};
use crate::poly::PoincarePolynomial;
use crate::seifert::SeifertData;
use crate::series::{l_max, SValues};

/// Largest number of legs the combinatorial layer accepts; subsets of the
/// legs are enumerated exhaustively.
pub const MAX_LEGS: usize = 12;

/// `prod_{i in S} a_i`, stored as a bitmask over 0-based leg indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareFreeMonomial(u32);

impl SquareFreeMonomial {
    pub const ONE: Self = Self(0);

    pub fn from_mask(mask: u32) -> Self {
        Self(mask)
    }

    /// From 1-based variable indices.
    pub fn from_indices(indices: &[usize]) -> Self {
        Self(indices.iter().fold(0, |m, &i| m | (1 << (i - 1))))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains_var(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    /// `self | other`.
    pub fn divides(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn lcm(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    /// Sorted 1-based indices.
    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|&i| self.contains_var(i)).map(|i| i + 1).collect()
    }

    /// `a1a3`, or the letter form `a+c` when `letters` is set and `nu <= 26`.
    pub fn render(self, letters: bool) -> String {
        if self.is_one() {
            return "1".into();
        }
        let idx = self.indices();
        if letters && idx.iter().all(|&i| i <= 26) {
            idx.iter()
                .map(|&i| ((b'a' + (i - 1) as u8) as char).to_string())
                .collect::<Vec<_>>()
                .join("+")
        } else {
            idx.iter().map(|i| format!("a{i}")).collect()
        }
    }

    /// Ordering used for reports: by degree, then by index list.
    fn report_key(self) -> (usize, Vec<usize>) {
        (self.degree(), self.indices())
    }
}

impl fmt::Display for SquareFreeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl Serialize for SquareFreeMonomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.indices().serialize(s)
    }
}

/// Minimal generators of a square-free monomial ideal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct MonomialSet {
    gens: Vec<SquareFreeMonomial>,
}

impl MonomialSet {
    /// Minimalizes under divisibility; output is in report order.
    pub fn minimal<I: IntoIterator<Item = SquareFreeMonomial>>(items: I) -> Self {
        let mut all: Vec<SquareFreeMonomial> = items.into_iter().collect();
        all.sort_by_key(|m| m.report_key());
        all.dedup();
        let mut gens: Vec<SquareFreeMonomial> = Vec::new();
        for m in all {
            // sorted by degree, so any divisor of m is already present
            if !gens.iter().any(|g| g.divides(m)) {
                gens.push(m);
            }
        }
        Self { gens }
    }

    pub fn gens(&self) -> &[SquareFreeMonomial] {
        &self.gens
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    /// Ideal membership of a square-free monomial.
    pub fn ideal_contains(&self, m: SquareFreeMonomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn contains_one(&self) -> bool {
        self.gens.first().is_some_and(|g| g.is_one())
    }
}

/// The `l`-th row of the combinatorial data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCombinatorics {
    pub l: i64,
    pub s: i64,
    /// `(l beta_i) mod alpha_i`, the exponents of `M_l`.
    pub m_exponents: Vec<i64>,
    pub lambda_nonempty: bool,
    /// `X_l` before minimalization, in report order.
    pub x_raw: Vec<SquareFreeMonomial>,
    /// Minimal generators of `J(l)`.
    pub x: MonomialSet,
    pub n_l: usize,
    pub m_l: usize,
    pub contains_one: bool,
}

/// `epsilon_{i,(l1,l2)}`: 1 iff `{l1 beta/alpha} + {l2 beta/alpha} >= 1`.
pub fn epsilon(sd: &SeifertData, i: usize, l1: i64, l2: i64) -> u8 {
    let leg = sd.legs()[i];
    let r1 = (l1 * leg.beta()).rem_euclid(leg.alpha);
    let r2 = (l2 * leg.beta()).rem_euclid(leg.alpha);
    u8::from(r1 + r2 >= leg.alpha)
}

fn check_legs(sd: &SeifertData) -> Result<()> {
    if sd.nu() > MAX_LEGS {
        return Err(Error::TooManyLegs {
            nu: sd.nu(),
            max: MAX_LEGS,
        });
    }
    Ok(())
}

/// Combinatorial data of one degree, with precomputed `s` values.
pub fn x_set_with(sd: &SeifertData, s: &SValues, l: i64) -> Result<DegreeCombinatorics> {
    check_legs(sd)?;
    if l < 1 {
        return Err(Error::Domain(format!("degree must be >= 1, got {l}")));
    }
    let nu = sd.nu();
    let legs = sd.legs();
    let residue = |k: i64, i: usize| (k * legs[i].beta()).rem_euclid(legs[i].alpha);
    let mut raw = Vec::new();
    let mut lambda_nonempty = false;
    for l1 in 1..=l / 2 {
        let l2 = l - l1;
        if s.get(l1) < 0 || s.get(l2) < 0 {
            continue;
        }
        lambda_nonempty = true;
        let mut mask = 0u32;
        for i in 0..nu {
            if residue(l1, i) + residue(l2, i) >= legs[i].alpha {
                mask |= 1 << i;
            }
        }
        raw.push(SquareFreeMonomial(mask));
    }
    raw.sort_by_key(|m| m.report_key());
    raw.dedup();
    let x = MonomialSet::minimal(raw.iter().copied());
    let (n_l, m_l) = if x.is_empty() {
        (0, nu)
    } else {
        let common = x.gens().iter().fold(u32::MAX, |acc, g| acc & g.0);
        let used = x.gens().iter().fold(0u32, |acc, g| acc | g.0);
        (common.count_ones() as usize, nu - used.count_ones() as usize)
    };
    let contains_one = x.contains_one();
    Ok(DegreeCombinatorics {
        l,
        s: s.get(l),
        m_exponents: (0..nu).map(|i| residue(l, i)).collect(),
        lambda_nonempty,
        x_raw: raw,
        x,
        n_l,
        m_l,
        contains_one,
    })
}

pub fn x_set(sd: &SeifertData, l: i64) -> Result<DegreeCombinatorics> {
    x_set_with(sd, &SValues::new(sd), l)
}

/// Combinatorial data for `1 <= l <= l_max`, computed in parallel.
pub fn all_combinatorics(sd: &SeifertData, l_max: i64) -> Result<Vec<DegreeCombinatorics>> {
    check_legs(sd)?;
    let s = SValues::new(sd);
    (1..=l_max).into_par_iter().map(|l| x_set_with(sd, &s, l)).collect()
}

fn to_i64(x: Int) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::Overflow("coefficient does not fit in 64 bits".into()))
}

/// `dim (A / J)_s` for a square-free monomial ideal in `nu` variables.
///
/// A degree-`s` monomial is outside `J` iff its support `W` contains no
/// generator, and there are `C(s-1, |W|-1)` monomials with support exactly
/// `W`, so the count runs over the independent sets of the ideal.
pub fn quotient_dimension(nu: usize, gens: &MonomialSet, s: i64) -> Result<i64> {
    if s < 0 || gens.contains_one() {
        return Ok(0);
    }
    if s == 0 {
        return Ok(1);
    }
    let mut total = Int::from(0);
    for w in 1u32..(1u32 << nu) {
        let size = w.count_ones() as i64;
        if size > s || gens.ideal_contains(SquareFreeMonomial(w)) {
            continue;
        }
        total += binomial(s - 1, size - 1);
    }
    to_i64(total)
}

/// Coefficient of `t^l` in `P_{m/m^2}`.
pub fn m_mod_m2_coefficient(sd: &SeifertData, l: i64) -> Result<i64> {
    let c = x_set(sd, l)?;
    quotient_dimension(sd.nu(), &c.x, c.s)
}

/// `P_{m/m^2}` from precomputed combinatorics.
pub fn m_poincare_from(nu: usize, rows: &[DegreeCombinatorics]) -> Result<PoincarePolynomial> {
    let coeffs: Vec<(i64, i64)> = rows
        .par_iter()
        .map(|c| Ok((c.l, quotient_dimension(nu, &c.x, c.s)?)))
        .collect::<Result<_>>()?;
    Ok(PoincarePolynomial::from_pairs(coeffs))
}

/// `P_{m/m^2}`; degrees above `L_max` contribute nothing since `1 in X_l` there.
pub fn m_poincare(sd: &SeifertData) -> Result<PoincarePolynomial> {
    let rows = all_combinatorics(sd, l_max(sd))?;
    m_poincare_from(sd.nu(), &rows)
}

//! Sparse integer polynomials in one variable `t`, used for every Poincaré
//! series the crate reports.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Degree -> coefficient, with no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PoincarePolynomial {
    terms: BTreeMap<i64, i64>,
}

impl PoincarePolynomial {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (i64, i64)>>(pairs: I) -> Self {
        let mut p = Self::new();
        for (d, c) in pairs {
            p.add_term(d, c);
        }
        p
    }

    /// `sum_k t^{degrees[k]}`, repeats allowed.
    pub fn from_degrees(degrees: &[i64]) -> Self {
        Self::from_pairs(degrees.iter().map(|&d| (d, 1)))
    }

    pub fn monomial(degree: i64, coeff: i64) -> Self {
        Self::from_pairs([(degree, coeff)])
    }

    pub fn add_term(&mut self, degree: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(degree).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&degree);
        }
    }

    pub fn coeff(&self, degree: i64) -> i64 {
        self.terms.get(&degree).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&d, &c)| (d, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Value at `t = 1`.
    pub fn eval_one(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Terms of degree at most `max_degree`.
    pub fn truncated(&self, max_degree: i64) -> Self {
        Self {
            terms: self.terms.range(..=max_degree).map(|(&d, &c)| (d, c)).collect(),
        }
    }

    /// Degrees with nonzero coefficient, each repeated `|coeff|` times.
    pub fn degree_multiset(&self) -> Vec<i64> {
        self.terms
            .iter()
            .flat_map(|(&d, &c)| std::iter::repeat(d).take(c.unsigned_abs() as usize))
            .collect()
    }

    /// `self <= other` coefficientwise.
    pub fn le_coefficientwise(&self, other: &Self) -> bool {
        let degrees = self.terms.keys().chain(other.terms.keys());
        degrees.into_iter().all(|&d| self.coeff(d) <= other.coeff(d))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in other.terms() {
            out.add_term(d, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in other.terms() {
            out.add_term(d, -c);
        }
        out
    }
}

impl fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (&d, &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else if k > 0 { "+" } else { "" };
            let a = c.unsigned_abs();
            let var = match d {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{d}"),
            };
            if d == 0 {
                write!(f, "{sign}{a}")?;
            } else if a == 1 {
                write!(f, "{sign}{var}")?;
            } else {
                write!(f, "{sign}{a}{var}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for PoincarePolynomial {
    type Err = Error;

    /// Parses the `Display` form, e.g. `"1+t^6-2t^8+t"`. Whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |why: &str| Error::Domain(format!("cannot parse polynomial {s:?}: {why}"));
        if compact.is_empty() {
            return Err(bad("empty"));
        }
        if compact == "0" {
            return Ok(Self::new());
        }
        let mut out = Self::new();
        let bytes = compact.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = 1;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -1;
                }
                i += 1;
            } else if i > 0 {
                return Err(bad("missing sign between terms"));
            }
            let start = i;
            while i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
                i += 1;
            }
            let term = &compact[start..i];
            let (coef, degree) = match term.find('t') {
                None => (term.parse::<i64>().map_err(|_| bad(term))?, 0),
                Some(p) => {
                    let coef = match &term[..p] {
                        "" => 1,
                        c => c.trim_end_matches('*').parse::<i64>().map_err(|_| bad(term))?,
                    };
                    let degree = match &term[p + 1..] {
                        "" => 1,
                        rest => rest
                            .strip_prefix('^')
                            .ok_or_else(|| bad(term))?
                            .parse::<i64>()
                            .map_err(|_| bad(term))?,
                    };
                    (coef, degree)
                }
            };
            out.add_term(degree, sign * coef);
        }
        Ok(out)
    }
}

impl Serialize for PoincarePolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[i64; 2]> = self.terms().map(|(d, c)| [d, c]).collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PoincarePolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<[i64; 2]>::deserialize(d)?;
        let mut seen = std::collections::BTreeSet::new();
        for p in &pairs {
            if !seen.insert(p[0]) {
                return Err(D::Error::custom(format!("degree {} listed twice", p[0])));
            }
        }
        Ok(Self::from_pairs(pairs.into_iter().map(|[d, c]| (d, c))))
    }
}

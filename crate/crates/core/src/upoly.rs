//! Dense univariate polynomials over `Q`, just enough for reducing a
//! rational function and expanding it at a point.

use num_traits::{One, Signed, Zero};

use crate::arith::{rat_int, Int, Rational};

/// Coefficients in increasing degree; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly(Vec<Rational>);

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, d: usize) -> Rational {
        self.0.get(d).cloned().unwrap_or_else(Rational::zero)
    }

    fn lead(&self) -> &Rational {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self(Vec::new());
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.0.iter().map(|c| c * k).collect())
    }

    /// `(q, r)` with `self = q * d + r`, `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap_or(0);
        let mut r = self.0.clone();
        let mut q = vec![Rational::zero(); self.0.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap() / d.lead();
            for (i, dc) in d.0.iter().enumerate() {
                r[k + i] -= &c * dc;
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (Self::new(q), Self::new(r))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead().recip();
        self.scale(&l)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat_int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Integer coefficients, if all coefficients are integral.
    pub fn to_ints(&self) -> Option<Vec<Int>> {
        self.0
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn one() -> Self {
        Self(vec![Rational::one()])
    }

    /// Display in the same style as the sparse series, `1-2t+t^3`.
    pub fn to_string_t(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (d, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let a = c.abs();
            let coef = crate::arith::rat_to_string(&a);
            match (d, a.is_one()) {
                (0, _) => out.push_str(&coef),
                (_, true) => {}
                (_, false) => out.push_str(&coef),
            }
            match d {
                0 => {}
                1 => out.push('t'),
                _ => out.push_str(&format!("t^{d}")),
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (1 - t^6) and (1 - t^4) share 1 - t^2
        let a = UPoly::from_ints(&[1, 0, 0, 0, 0, 0, -1]);
        let b = UPoly::from_ints(&[1, 0, 0, 0, -1]);
        assert_eq!(a.gcd(&b), UPoly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn division_identity() {
        let a = UPoly::from_ints(&[3, -1, 4, 1, -5, 9]);
        let d = UPoly::from_ints(&[2, 0, 7]);
        let (q, r) = a.div_rem(&d);
        assert_eq!(q.mul(&d).add(&r), a);
        assert!(r.degree() < d.degree());
        let (q, r) = d.div_rem(&a);
        assert!(q.is_zero());
        assert_eq!(r, d);
    }

    #[test]
    fn derivative_and_eval() {
        let p = UPoly::from_ints(&[1, 2, 3]);
        assert_eq!(p.derivative(), UPoly::from_ints(&[2, 6]));
        assert_eq!(p.eval(&rat_int(2)), rat_int(17));
        assert_eq!(p.to_string_t(), "1+2t+3t^2");
        assert_eq!(UPoly::from_ints(&[0, -1, 0, 1]).to_string_t(), "-t+t^3");
    }
}

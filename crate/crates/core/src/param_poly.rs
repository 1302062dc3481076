//! Multivariate polynomials over `Q` in the free parameters of the splice
//! equations.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors, so iteration order
//! is lexicographic with variable 0 most significant; the leading term is the
//! last entry.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{rat_int, rat_to_string, Int, Rational};
use crate::linalg::ExactRing;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl ParamPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, Rational::one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, Rational)>>(nvars: usize, terms: I) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    pub fn uses(&self, v: usize) -> bool {
        self.degree_in(v) > 0
    }

    fn lead(&self) -> Option<(&Vec<u32>, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    fn mul_term(&self, e: &[u32], c: &Rational) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e1, c1)| (e1.iter().zip(e).map(|(a, b)| a + b).collect(), c1 * c))
                .collect(),
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes values for some variables, leaving the rest symbolic.
    pub fn partial_eval(&self, values: &[Option<Rational>]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut c = c.clone();
            let mut e2 = e.clone();
            for (v, val) in values.iter().enumerate() {
                if let Some(x) = val {
                    for _ in 0..e[v] {
                        c *= x;
                    }
                    e2[v] = 0;
                }
            }
            out.add_term(e2, c);
        }
        out
    }

    pub fn derivative(&self, v: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[v] > 0 {
                let mut e2 = e.clone();
                e2[v] -= 1;
                out.add_term(e2, c * rat_int(i64::from(e[v])));
            }
        }
        out
    }

    /// `self / d` when the division is exact, `None` otherwise.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (de, dc) = d.lead()?;
        let mut r = self.clone();
        let mut q = Self::zero(self.nvars);
        while let Some((re, rc)) = r.lead() {
            if !re.iter().zip(de).all(|(a, b)| a >= b) {
                return None;
            }
            let e: Vec<u32> = re.iter().zip(de).map(|(a, b)| a - b).collect();
            let c = rc / dc;
            r = r.sub(&d.mul_term(&e, &c));
            q.add_term(e, c);
        }
        Some(q)
    }

    /// Coefficients with respect to `v`, indexed by the power of `v`.
    pub fn coeffs_in(&self, v: usize) -> Vec<Self> {
        let mut out = vec![Self::zero(self.nvars); self.degree_in(v) as usize + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[v] = 0;
            out[e[v] as usize].add_term(e2, c.clone());
        }
        out
    }

    fn times_var_power(&self, v: usize, k: u32) -> Self {
        let mut e = vec![0; self.nvars];
        e[v] = k;
        self.mul_term(&e, &Rational::one())
    }

    /// Scales to coprime integer coefficients with the first term of the
    /// display order positive.
    pub fn normalized(&self) -> Self {
        let Some(first) = self.display_order().first().map(|(_, c)| (*c).clone()) else {
            return self.clone();
        };
        let den = self.terms.values().fold(Int::one(), |acc, c| acc.lcm(c.denom()));
        let num = self
            .terms
            .values()
            .fold(Int::zero(), |acc, c| acc.gcd(&(c.numer() * (&den / c.denom()))));
        let mut k = Rational::new(den, num);
        if first.is_negative() {
            k = -k;
        }
        self.scale(&k)
    }

    fn content_in(&self, v: usize) -> Self {
        self.coeffs_in(v)
            .into_iter()
            .filter(|c| !c.is_zero())
            .fold(Self::zero(self.nvars), |acc, c| acc.gcd(&c))
    }

    fn primitive_in(&self, v: usize) -> Self {
        let c = self.content_in(v);
        self.div_exact(&c).expect("content divides")
    }

    /// Pseudo-remainder of `self` by `b` with respect to `v`.
    fn prem(&self, b: &Self, v: usize) -> Self {
        let db = b.degree_in(v);
        let lcb = b.coeffs_in(v).pop().expect("nonzero");
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= db {
            let dr = r.degree_in(v);
            let lcr = r.coeffs_in(v).pop().expect("nonzero");
            r = lcb.mul(&r).sub(&lcr.mul(b).times_var_power(v, dr - db));
        }
        r
    }

    /// Greatest common divisor, normalized.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        if self.is_constant() || other.is_constant() {
            return Self::one(self.nvars);
        }
        let v = (0..self.nvars)
            .find(|&v| self.uses(v) || other.uses(v))
            .expect("nonconstant");
        if !self.uses(v) {
            return self.gcd(&other.content_in(v));
        }
        if !other.uses(v) {
            return self.content_in(v).gcd(other);
        }
        let ca = self.content_in(v);
        let cb = other.content_in(v);
        let mut a = self.div_exact(&ca).expect("content divides");
        let mut b = other.div_exact(&cb).expect("content divides");
        let c = ca.gcd(&cb);
        if a.degree_in(v) < b.degree_in(v) {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() && b.uses(v) {
            let r = a.prem(&b, v);
            a = b;
            b = if r.is_zero() { r } else { r.primitive_in(v) };
        }
        // b is a nonzero constant in v: the primitive parts are coprime in v
        let g = if b.is_zero() { a.primitive_in(v) } else { Self::one(self.nvars) };
        c.mul(&g).normalized()
    }

    /// Product of the distinct irreducible factors, up to a constant.
    pub fn square_free(&self) -> Self {
        if self.is_constant() {
            return self.normalized();
        }
        let mut g = self.clone();
        for v in 0..self.nvars {
            let d = self.derivative(v);
            if !d.is_zero() {
                g = g.gcd(&d);
            }
        }
        self.div_exact(&g).expect("gcd divides").normalized()
    }

    fn display_order(&self) -> Vec<(&Vec<u32>, &Rational)> {
        let mut ts: Vec<(&Vec<u32>, &Rational)> = self.terms.iter().collect();
        ts.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        ts
    }

    /// Descending degree, then descending lex, e.g. `p1*p2-p3*p4`.
    pub fn display_with(&self, name: impl Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.display_order() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| if k == 1 { name(v) } else { format!("{}^{k}", name(v)) })
                .collect();
            let neg = c.is_negative();
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let a = c.abs();
            if mono.is_empty() {
                out.push_str(&rat_to_string(&a));
            } else {
                if !a.is_one() {
                    out.push_str(&rat_to_string(&a));
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl ExactRing for ParamPoly {
    fn zero_like(&self) -> Self {
        Self::zero(self.nvars)
    }
    fn one_like(&self) -> Self {
        Self::one(self.nvars)
    }
    fn is_ring_zero(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        ParamPoly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        ParamPoly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        ParamPoly::mul(self, other)
    }
    fn neg(&self) -> Self {
        ParamPoly::neg(self)
    }
    fn div_exact(&self, other: &Self) -> Self {
        ParamPoly::div_exact(self, other).expect("Bareiss division is exact")
    }
}

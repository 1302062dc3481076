//! The graded pieces `s_l`, the Hilbert series `P_GX`, the `H^1` polynomial
//! and the closed rational form of `P(t) = sum (s_l + 1) t^l`.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{floor_ceil_frac, rat, rat_int, rat_to_i64, serialize_rational, Rational};
use crate::error::{Error, Result};
use crate::poly::PoincarePolynomial;
use crate::seifert::SeifertData;
use crate::upoly::UPoly;

/// `s_l = l b0 - sum ceil(l omega_i / alpha_i)`, straight from the formula.
pub fn s_value(sd: &SeifertData, l: i64) -> i64 {
    let mut s = l * sd.b0();
    for leg in sd.legs() {
        s -= Integer::div_ceil(&(l * leg.omega), &leg.alpha);
    }
    s
}

/// `s_l` for all `l >= 0` from one period, using `s_{l+alpha} = s_l + o`.
#[derive(Clone, Debug)]
pub struct SValues {
    period: Vec<i64>,
    o: i64,
}

impl SValues {
    pub fn new(sd: &SeifertData) -> Self {
        let alpha = sd.lcm_alpha();
        Self {
            period: (0..alpha).map(|l| s_value(sd, l)).collect(),
            o: sd.order_o(),
        }
    }

    pub fn get(&self, l: i64) -> i64 {
        debug_assert!(l >= 0);
        let alpha = self.period.len() as i64;
        self.period[(l % alpha) as usize] + (l / alpha) * self.o
    }
}

/// `gamma = (nu - 2 - sum 1/alpha_i) / |e|`.
pub fn gamma(sd: &SeifertData) -> Rational {
    let mut num = rat_int(sd.nu() as i64 - 2);
    for leg in sd.legs() {
        num -= rat(1, leg.alpha);
    }
    num / sd.abs_e()
}

/// `a = (nu - 2) alpha - sum alpha / alpha_i`, checked against `o * gamma`.
pub fn a_invariant(sd: &SeifertData) -> Result<i64> {
    let alpha = sd.lcm_alpha();
    let a = (sd.nu() as i64 - 2) * alpha - sd.legs().iter().map(|l| alpha / l.alpha).sum::<i64>();
    if rat_int(a) != rat_int(sd.order_o()) * gamma(sd) {
        return Err(Error::Consistency(format!("a-invariant {a} differs from o * gamma")));
    }
    Ok(a)
}

/// Degree bound `floor(2 alpha + gamma) + 1`; beyond it `1 in X_l`.
pub fn l_max(sd: &SeifertData) -> i64 {
    let (floor, _, _) = floor_ceil_frac(&(rat_int(2 * sd.lcm_alpha()) + gamma(sd)));
    rat_to_i64(&Rational::from_integer(floor)).expect("bounded input") + 1
}

/// `P_GX` truncated at degree `l_max`.
pub fn hilbert_series(sd: &SeifertData, l_max: i64) -> PoincarePolynomial {
    let s = SValues::new(sd);
    PoincarePolynomial::from_pairs((0..=l_max).map(|l| (l, (s.get(l) + 1).max(0))))
}

fn gamma_floor(sd: &SeifertData) -> i64 {
    let g = gamma(sd);
    if g.is_negative() {
        return 0;
    }
    rat_to_i64(&Rational::from_integer(g.to_integer())).expect("bounded input")
}

/// `P_H1` and `p_g = P_H1(1)`.
pub fn h1_polynomial(sd: &SeifertData) -> (PoincarePolynomial, i64) {
    let s = SValues::new(sd);
    let p = PoincarePolynomial::from_pairs((1..=gamma_floor(sd)).map(|l| (l, (-s.get(l) - 1).max(0))));
    let pg = p.eval_one();
    (p, pg)
}

/// `p_g` summed directly from the defining formula, without the cache.
pub fn geometric_genus_direct(sd: &SeifertData) -> i64 {
    (0..=gamma_floor(sd)).map(|l| (-s_value(sd, l) - 1).max(0)).sum()
}

/// `P(t) = numerator / denominator` in lowest terms, `denominator(0) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalForm {
    pub numerator: UPoly,
    pub denominator: UPoly,
}

fn cyclotomic_table(alpha: i64) -> Vec<(i64, UPoly)> {
    let divisors: Vec<i64> = (1..=alpha).filter(|d| alpha % d == 0).collect();
    let mut table: Vec<(i64, UPoly)> = Vec::with_capacity(divisors.len());
    for &d in &divisors {
        // t^d - 1 divided by the cyclotomic factors of the proper divisors
        let mut c = vec![0i64; d as usize + 1];
        c[0] = -1;
        c[d as usize] = 1;
        let mut p = UPoly::from_ints(&c);
        for (e, phi) in &table {
            if d % e == 0 {
                p = p.div_rem(phi).0;
            }
        }
        table.push((d, p));
    }
    table
}

impl RationalForm {
    pub fn compute(sd: &SeifertData) -> Result<Self> {
        let alpha = sd.lcm_alpha();
        let o = sd.order_o();
        let a = alpha as usize;
        let s = SValues::new(sd);
        // N = (1 - t^alpha) sum_{d<alpha} (s_d + 1) t^d + o t^alpha sum_{d<alpha} t^d,
        // P = N / (1 - t^alpha)^2
        let mut n = vec![0i64; 2 * a];
        for d in 0..a {
            let c = s.get(d as i64) + 1;
            n[d] += c;
            n[d + a] += o - c;
        }
        let full_num = UPoly::from_ints(&n);
        verify_expansion(&n, alpha, &s)?;

        let mut num = full_num;
        let mut factors: Vec<(UPoly, u32)> = Vec::new();
        for (_, phi) in cyclotomic_table(alpha) {
            let mut mult = 2;
            while mult > 0 {
                let (q, r) = num.div_rem(&phi);
                if !r.is_zero() {
                    break;
                }
                num = q;
                mult -= 1;
            }
            if mult > 0 {
                factors.push((phi, mult));
            }
        }
        let mut den = UPoly::one();
        for (phi, m) in &factors {
            for _ in 0..*m {
                den = den.mul(phi);
            }
        }
        let c0 = den.coeff(0);
        if c0.is_zero() {
            return Err(Error::Consistency("denominator vanishes at 0".into()));
        }
        let k = c0.recip();
        let out = Self {
            numerator: num.scale(&k),
            denominator: den.scale(&k),
        };
        // exact cross-multiplication against the unreduced form
        let mut one_minus = vec![0i64; a + 1];
        one_minus[0] = 1;
        one_minus[a] = -1;
        let om = UPoly::from_ints(&one_minus);
        let lhs = out.numerator.mul(&om).mul(&om);
        let rhs = UPoly::from_ints(&n).mul(&out.denominator);
        if lhs != rhs {
            return Err(Error::Consistency("reduced rational form does not match".into()));
        }
        Ok(out)
    }

    /// Power series coefficients `0..count`.
    pub fn expand(&self, count: usize) -> Vec<Rational> {
        let d = self.denominator.coeffs();
        let mut out: Vec<Rational> = Vec::with_capacity(count);
        for k in 0..count {
            let mut c = self.numerator.coeff(k);
            for j in 1..d.len().min(k + 1) {
                c -= &d[j] * &out[k - j];
            }
            out.push(c / &d[0]);
        }
        out
    }

    /// Laurent coefficients at `t = 1` in powers of `u = t - 1`, starting at
    /// `u^-2`; `depth` of them.
    pub fn laurent_at_one(&self, depth: usize) -> Result<Vec<Rational>> {
        let num = taylor_shift_one(&self.numerator);
        let den = taylor_shift_one(&self.denominator);
        let dc = den.coeffs();
        if dc.len() < 3 || !dc[0].is_zero() || !dc[1].is_zero() || dc[2].is_zero() {
            return Err(Error::Consistency("expected a double pole at t = 1".into()));
        }
        let d = &dc[2..];
        let mut out: Vec<Rational> = Vec::with_capacity(depth);
        for k in 0..depth {
            let mut c = num.coeff(k);
            for j in 1..d.len().min(k + 1) {
                c -= &d[j] * &out[k - j];
            }
            out.push(c / &d[0]);
        }
        Ok(out)
    }

    /// Splits `P_GX = p/q + r` with `deg p < deg q`; returns `(p, r)` where
    /// `r` is a polynomial with integer coefficients.
    pub fn proper_split(&self, sd: &SeifertData) -> Result<(UPoly, PoincarePolynomial)> {
        let (q, p) = self.numerator.div_rem(&self.denominator);
        let (h1, _) = h1_polynomial(sd);
        let mut r = h1;
        let ints = q
            .to_ints()
            .ok_or_else(|| Error::Consistency("non-integral polynomial part".into()))?;
        for (d, c) in ints.iter().enumerate() {
            let c = rat_to_i64(&Rational::from_integer(c.clone()))
                .ok_or_else(|| Error::Overflow("polynomial part".into()))?;
            r.add_term(d as i64, c);
        }
        Ok((p, r))
    }
}

/// Compares `N / (1 - t^alpha)^2` against `s_l + 1` for `l < 5 alpha`.
fn verify_expansion(n: &[i64], alpha: i64, s: &SValues) -> Result<()> {
    for l in 0..5 * alpha {
        // coefficient of t^l in N * sum (k+1) t^{k alpha}
        let mut c = 0i64;
        let mut k = 0;
        while k * alpha <= l {
            let idx = (l - k * alpha) as usize;
            if idx < n.len() {
                c += (k + 1) * n[idx];
            }
            k += 1;
        }
        if c != s.get(l) + 1 {
            return Err(Error::Consistency(format!("closed form of P(t) fails at degree {l}")));
        }
    }
    Ok(())
}

/// `p(1 + u)` as a polynomial in `u`.
fn taylor_shift_one(p: &UPoly) -> UPoly {
    // Horner in u: p(1+u) = (...(c_n (1+u) + c_{n-1})(1+u) + ...)
    let mut acc = UPoly::new(Vec::new());
    let one_plus_u = UPoly::from_ints(&[1, 1]);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(&one_plus_u).add(&UPoly::new(vec![c.clone()]));
    }
    acc
}

/// Result of comparing the Laurent expansion with `|e|` and `|e|(1 + gamma/2)`.
#[derive(Clone, Debug, Serialize)]
pub struct LaurentCheck {
    #[serde(serialize_with = "crate::arith::serialize_rationals")]
    pub coefficients: Vec<Rational>,
    #[serde(serialize_with = "serialize_rational")]
    pub expected_leading: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub expected_next: Rational,
    pub pass: bool,
}

pub fn dolgachev_check(sd: &SeifertData, depth: usize) -> Result<LaurentCheck> {
    if depth < 2 {
        return Err(Error::Domain("Laurent check needs depth >= 2".into()));
    }
    let form = RationalForm::compute(sd)?;
    let coefficients = form.laurent_at_one(depth)?;
    let e = sd.abs_e();
    let expected_next = &e * (Rational::one() + gamma(sd) / rat_int(2));
    let pass = coefficients[0] == e && coefficients[1] == expected_next;
    Ok(LaurentCheck {
        coefficients,
        expected_leading: e,
        expected_next,
        pass,
    })
}

/// Everything the graded ring's Hilbert function determines.
#[derive(Clone, Debug, Serialize)]
pub struct SeriesBundle {
    #[serde(skip)]
    pub s: SValues,
    pub l_max: i64,
    #[serde(rename = "P_GX")]
    pub p_gx: PoincarePolynomial,
    #[serde(rename = "P_H1")]
    pub p_h1: PoincarePolynomial,
    pub p_g: i64,
    #[serde(serialize_with = "serialize_rational")]
    pub gamma: Rational,
    pub a_invariant: i64,
}

impl SeriesBundle {
    pub fn compute(sd: &SeifertData, l_max_override: Option<i64>) -> Result<Self> {
        let lm = l_max_override.unwrap_or_else(|| l_max(sd));
        if lm < 0 {
            return Err(Error::Domain(format!("l_max must be >= 0, got {lm}")));
        }
        let (p_h1, p_g) = h1_polynomial(sd);
        let direct = geometric_genus_direct(sd);
        if direct != p_g {
            return Err(Error::Consistency(format!("p_g: {p_g} vs {direct}")));
        }
        Ok(Self {
            s: SValues::new(sd),
            l_max: lm,
            p_gx: hilbert_series(sd, lm),
            p_h1,
            p_g,
            gamma: gamma(sd),
            a_invariant: a_invariant(sd)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::arb_seifert;
    use crate::seifert::fixtures;
    use proptest::prelude::*;

    #[test]
    fn s_values_from_known_examples() {
        let sd = fixtures::ex_2345();
        assert_eq!(s_value(&sd, 60), 7);
        assert_eq!(s_value(&sd, 61), 5);
        assert_eq!(s_value(&sd, 0), 0);
        assert_eq!(s_value(&fixtures::ex_223377(2), 1), -4);
        let cache = SValues::new(&sd);
        for l in 0..400 {
            assert_eq!(cache.get(l), s_value(&sd, l));
        }
    }

    #[test]
    fn gamma_and_a_invariant() {
        assert_eq!(gamma(&fixtures::ex_2345()), rat(43, 7));
        assert_eq!(gamma(&fixtures::ex_223377(2)), rat_int(43));
        assert_eq!(gamma(&fixtures::ex_223377(3)), rat(43, 22));
        assert_eq!(a_invariant(&fixtures::ex_2345()).unwrap(), 43);
        assert_eq!(a_invariant(&fixtures::ex_223377(2)).unwrap(), 86);
        assert_eq!(a_invariant(&fixtures::e6()).unwrap(), -1);
        assert_eq!(l_max(&fixtures::ex_linbig()), 1682);
    }

    #[test]
    fn hilbert_series_of_2345() {
        let p = hilbert_series(&fixtures::ex_2345(), 30);
        let expect: PoincarePolynomial = "1+t^6+t^8+t^10+t^11+2t^12+t^14+2t^15+2t^16+t^17+2t^18+t^19\
             +3t^20+2t^21+2t^22+2t^23+3t^24+2t^25+3t^26+3t^27+3t^28+2t^29+4t^30"
            .parse()
            .unwrap();
        assert_eq!(p, expect);
        assert_eq!(hilbert_series(&fixtures::ex_2345(), 0).to_string(), "1");
    }

    #[test]
    fn hilbert_series_of_223377() {
        let p = hilbert_series(&fixtures::ex_223377(2), 50);
        for (d, c) in [(6, 1), (12, 1), (14, 1), (42, 3), (48, 3), (1, 0), (5, 0)] {
            assert_eq!(p.coeff(d), c, "degree {d}");
        }
    }

    #[test]
    fn h1_polynomials() {
        let (p, pg) = h1_polynomial(&fixtures::ex_2345());
        assert_eq!((p.to_string(), pg), ("t".to_string(), 1));
        let (p, pg) = h1_polynomial(&fixtures::ex_223377(2));
        assert_eq!(pg, 24);
        assert_eq!(p.coeff(1), 3);
        assert_eq!(p.coeff(2), 1);
        assert_eq!(p.degree(), Some(43));
        assert_eq!(p.coeff(43), 1);
        let (p, _) = h1_polynomial(&fixtures::ex_223377(3));
        assert_eq!(p.to_string(), "2t");
        let (p, pg) = h1_polynomial(&fixtures::e6());
        assert!(p.is_zero() && pg == 0);
    }

    #[test]
    fn rational_form_of_223377() {
        let f = RationalForm::compute(&fixtures::ex_223377(2)).unwrap();
        assert_eq!(f.numerator, UPoly::from_ints(&[1, -2, -4, -3, 0, 2, 2, 1, 2, 2, 1]));
        assert_eq!(f.denominator, UPoly::from_ints(&[1, 1, 0, -1, -1, 0, 0, -1, -1, 0, 1, 1]));
        let (p, r) = f.proper_split(&fixtures::ex_223377(2)).unwrap();
        assert_eq!(p, f.numerator);
        assert_eq!(r, h1_polynomial(&fixtures::ex_223377(2)).0);
    }

    #[test]
    fn laurent_coefficients_of_2345() {
        let c = dolgachev_check(&fixtures::ex_2345(), 3).unwrap();
        assert!(c.pass);
        assert_eq!(c.coefficients[0], rat(7, 60));
        assert_eq!(c.coefficients[1], rat(7, 60) * (rat_int(1) + rat(43, 14)));
    }

    #[test]
    fn expansion_matches_s_values() {
        let sd = fixtures::ex_2345();
        let f = RationalForm::compute(&sd).unwrap();
        for (l, c) in f.expand(300).iter().enumerate() {
            assert_eq!(*c, rat_int(s_value(&sd, l as i64) + 1));
        }
    }

    proptest! {
        #[test]
        fn periodicity_and_bounds(sd in arb_seifert(60, 6)) {
            let alpha = sd.lcm_alpha();
            let o = sd.order_o();
            prop_assert_eq!(s_value(&sd, alpha), o);
            let g = gamma(&sd);
            for l in 0..=(3 * alpha).min(3000) {
                prop_assert_eq!(s_value(&sd, l + alpha), s_value(&sd, l) + o);
                let s = s_value(&sd, l);
                let lr = rat_int(l);
                if lr > g {
                    prop_assert!(s >= -1);
                }
                if lr > rat_int(alpha) + g.clone() {
                    prop_assert!(s >= 0);
                }
                let shift = s - Integer::div_ceil(&l, &alpha) * o;
                if l % alpha == 0 {
                    prop_assert_eq!(shift, 0);
                } else {
                    let lower = -(rat_int(alpha - 1) * sd.abs_e()) - rat_int(sd.nu() as i64);
                    prop_assert!(rat_int(shift) >= lower && shift <= -1);
                }
            }
        }

        #[test]
        fn h1_degree_and_genus(sd in arb_seifert(60, 6)) {
            let (p, pg) = h1_polynomial(&sd);
            let g = gamma(&sd);
            if let Some(d) = p.degree() {
                prop_assert!(rat_int(d) <= g);
            }
            prop_assert_eq!(pg, p.eval_one());
            prop_assert_eq!(pg, geometric_genus_direct(&sd));
        }

        #[test]
        fn laurent_check_holds(sd in arb_seifert(60, 5)) {
            let c = dolgachev_check(&sd, 2).unwrap();
            prop_assert!(c.pass, "{:?}", c);
            let f = RationalForm::compute(&sd).unwrap();
            prop_assert!(f.numerator.degree() < f.denominator.degree());
        }
    }
}

//! Independent recomputation of `P_{m/m^2}` and `Q(l)` from monomials of
//! `R = C[z_1..z_nu]` and the action of `H`.
//!
//! Nothing here goes through `A`, `X_l` or `J(l)`: monomials are enumerated
//! by their congruences, their characters are checked against the pairing
//! table of `H`, and `Q(l)` is a rank in the monomial basis of `(R^H)_l`.

use std::collections::HashMap;

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{binomial, frac, rat, rat_int, Int, Rational};
use crate::embdim::Params;
use crate::error::{Error, Result};
use crate::graph::{GraphInvariants, GroupData};
use crate::linalg::EchelonBasis;
use crate::poly::PoincarePolynomial;
use crate::seifert::SeifertData;
use crate::series::s_value;

/// Largest monomial basis the oracle accepts in one degree.
pub const ORACLE_CAP: u128 = 20_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RMonomial(pub Vec<i64>);

impl RMonomial {
    /// `d_k = (sum k_i / alpha_i) / |e|`.
    pub fn degree(&self, sd: &SeifertData) -> Rational {
        weighted_sum(sd, &self.0) / sd.abs_e()
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

fn weighted_sum(sd: &SeifertData, k: &[i64]) -> Rational {
    sd.legs()
        .iter()
        .zip(k)
        .fold(Rational::zero(), |acc, (leg, &ki)| acc + rat(ki, leg.alpha))
}

/// The criterion for `z^k` to be invariant stated through degrees:
/// `d_k` and every `(k_i + d_k omega_i) / alpha_i` are nonnegative integers.
pub fn is_invariant_by_degree(sd: &SeifertData, k: &[i64]) -> bool {
    let d = RMonomial(k.to_vec()).degree(sd);
    if !d.is_integer() || d < Rational::zero() {
        return false;
    }
    sd.legs().iter().zip(k).all(|(leg, &ki)| {
        let li = (rat_int(ki) + &d * rat_int(leg.omega)) / rat_int(leg.alpha);
        li.is_integer() && li >= Rational::zero()
    })
}

/// Characters `mu^c`; `c = 0` is the trivial character.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    /// `pairing[a][b] = E*_a . E*_b mod 1` over the classes `h_0, h_1..h_nu`.
    pairing: Vec<Vec<Rational>>,
}

impl CharacterTable {
    pub fn new(group: &GroupData) -> Self {
        Self {
            pairing: group.pairing.clone(),
        }
    }

    /// Whether `h . z^k = mu(h)^c z^k` for every generator `h`.
    pub fn has_character(&self, k: &[i64], c: i64) -> bool {
        (0..self.pairing.len()).all(|a| {
            let lhs = k
                .iter()
                .enumerate()
                .fold(Rational::zero(), |acc, (j, &kj)| acc + &self.pairing[a][j + 1] * rat_int(kj));
            frac(&(lhs - &self.pairing[a][0] * rat_int(c))).is_zero()
        })
    }

    /// `mu` is trivial iff every `E*_0 . E*_a` is an integer.
    pub fn mu_is_trivial(&self) -> bool {
        self.pairing[0].iter().all(Zero::is_zero)
    }
}

/// Number of monomials `enumerate_monomials` would return, without listing
/// them. `None` when the congruences have no solution.
pub fn predicted_count(sd: &SeifertData, big_l: i64, c: i64) -> Option<(Vec<i64>, i64, Int)> {
    let residues: Vec<i64> = sd
        .legs()
        .iter()
        .map(|leg| (-big_l * leg.omega).rem_euclid(leg.alpha))
        .collect();
    let n = rat_int(big_l) * sd.abs_e() + rat_int(c) - weighted_sum(sd, &residues);
    if !n.is_integer() || n < Rational::zero() {
        return None;
    }
    let n = n.to_integer().to_i64()?;
    let count = binomial(n + sd.nu() as i64 - 1, sd.nu() as i64 - 1);
    Some((residues, n, count))
}

/// Monomials `z^k` with `prod h_i^{k_i} = h_0^c` and `sum k_i/alpha_i =
/// big_l |e| + c`, i.e. of degree `big_l + c/|e|` in the eigenspace of
/// `mu^c`. Each one is checked against the pairing table.
pub fn enumerate_monomials(
    sd: &SeifertData,
    table: &CharacterTable,
    big_l: i64,
    c: i64,
) -> Result<Vec<RMonomial>> {
    let Some((residues, n, count)) = predicted_count(sd, big_l, c) else {
        return Ok(Vec::new());
    };
    let size = count.to_u128().unwrap_or(u128::MAX);
    if size > ORACLE_CAP {
        return Err(Error::OracleCap {
            degree: big_l,
            size,
            cap: ORACLE_CAP,
        });
    }
    let nu = sd.nu();
    let alphas = sd.alphas();
    let mut out = Vec::with_capacity(size as usize);
    let mut parts = vec![0i64; nu];
    compositions(n, 0, &mut parts, &mut |p| {
        let k: Vec<i64> = (0..nu).map(|i| residues[i] + alphas[i] * p[i]).collect();
        out.push(RMonomial(k));
    });
    for m in &out {
        if !table.has_character(&m.0, c) {
            return Err(Error::Consistency(format!(
                "monomial {:?} fails the character test for mu^{c}",
                m.0
            )));
        }
    }
    out.sort();
    Ok(out)
}

fn compositions(left: i64, i: usize, parts: &mut Vec<i64>, f: &mut impl FnMut(&[i64])) {
    if i + 1 == parts.len() {
        parts[i] = left;
        f(parts);
        return;
    }
    for v in (0..=left).rev() {
        parts[i] = v;
        compositions(left - v, i + 1, parts, f);
    }
}

/// Invariant monomials of degree `l`.
pub fn invariant_monomials(sd: &SeifertData, table: &CharacterTable, l: i64) -> Result<Vec<RMonomial>> {
    enumerate_monomials(sd, table, l, 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsiCheck {
    pub l: i64,
    pub s: i64,
    pub count: usize,
    pub expected: String,
    pub pass: bool,
}

/// Checks that `k -> (k_i - {l beta_i/alpha_i} alpha_i) / alpha_i` sends the
/// invariant monomials of degree `l` bijectively onto the monomials of
/// degree `s_l` in `nu` variables.
pub fn verify_psi_transport(sd: &SeifertData, l: i64) -> Result<PsiCheck> {
    let inv = GraphInvariants::compute(sd)?;
    let table = CharacterTable::new(&inv.group);
    let monos = invariant_monomials(sd, &table, l)?;
    let s = s_value(sd, l);
    let expected = if s < 0 {
        Int::zero()
    } else {
        binomial(s + sd.nu() as i64 - 1, sd.nu() as i64 - 1)
    };
    let mut images = std::collections::BTreeSet::new();
    let mut pass = Int::from(monos.len()) == expected;
    for m in &monos {
        let mut n = Vec::with_capacity(sd.nu());
        for (leg, &k) in sd.legs().iter().zip(&m.0) {
            let shift = (l * leg.beta()).rem_euclid(leg.alpha);
            let q = k - shift;
            if q < 0 || q % leg.alpha != 0 {
                pass = false;
            }
            n.push(q.div_euclid(leg.alpha));
        }
        if n.iter().sum::<i64>() != s || !is_invariant_by_degree(sd, &m.0) {
            pass = false;
        }
        images.insert(n);
    }
    pass &= images.len() == monos.len();
    Ok(PsiCheck {
        l,
        s,
        count: monos.len(),
        expected: expected.to_string(),
        pass,
    })
}

/// Recomputes linear monomials degree by degree. A nonconstant invariant
/// monomial of degree `l` lies in `m^2` iff some linear monomial of smaller
/// degree divides it, so only the linear ones are kept.
pub struct Oracle<'a> {
    sd: &'a SeifertData,
    table: CharacterTable,
    linear: Vec<Vec<RMonomial>>,
}

impl<'a> Oracle<'a> {
    pub fn new(sd: &'a SeifertData) -> Result<Self> {
        let inv = GraphInvariants::compute(sd)?;
        Ok(Self {
            sd,
            table: CharacterTable::new(&inv.group),
            linear: vec![Vec::new()],
        })
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    /// Linear monomials of degree `l`, sorted.
    pub fn linear(&mut self, l: i64) -> Result<&[RMonomial]> {
        while (self.linear.len() as i64) <= l {
            let d = self.linear.len() as i64;
            let basis = invariant_monomials(self.sd, &self.table, d)?;
            let lower = &self.linear;
            let found = basis
                .into_iter()
                .filter(|k| !lower.iter().flatten().any(|g| g.divides(k)))
                .collect();
            self.linear.push(found);
        }
        Ok(&self.linear[l as usize])
    }

    pub fn m_generators(&mut self, l_max: i64) -> Result<PoincarePolynomial> {
        let mut pairs = Vec::new();
        for l in 1..=l_max {
            pairs.push((l, self.linear(l)?.len() as i64));
        }
        Ok(PoincarePolynomial::from_pairs(pairs))
    }

    /// `Q(l)` at explicit parameters: linear monomials of degree `l` minus the
    /// rank of `{m' f_j}` modulo `m^2`, with `m'` running over the
    /// `mu^{-1}`-eigenmonomials of degree `l - alpha/o`.
    pub fn q(&mut self, l: i64, params: &Params) -> Result<i64> {
        let sd = self.sd;
        if params.values().len() + 2 != sd.nu() {
            return Err(Error::InadmissibleParams(format!(
                "{} parameters given for {} legs",
                params.values().len(),
                sd.nu()
            )));
        }
        crate::embdim::params::check_admissible(params.values())?;
        if l < 1 {
            return Ok(0);
        }
        let linear = self.linear(l)?.to_vec();
        if linear.is_empty() {
            return Ok(0);
        }
        let index: HashMap<&RMonomial, usize> = linear.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let splice_degree = sd.abs_e().recip();
        let cofactors = enumerate_monomials(sd, &self.table, l, -1)?;
        let mut span = EchelonBasis::new();
        for j in 0..sd.nu() - 2 {
            let terms = splice_terms(sd, params, j);
            for (_, k) in &terms {
                let d = RMonomial(k.clone()).degree(sd);
                if d != splice_degree || !self.table.has_character(k, 1) {
                    return Err(Error::Consistency(format!(
                        "splice term {k:?} has degree {d} or the wrong character"
                    )));
                }
            }
            for m in &cofactors {
                if span.rank() == linear.len() {
                    break;
                }
                let mut row = vec![Rational::zero(); linear.len()];
                for (coef, k) in &terms {
                    let prod = RMonomial(m.0.iter().zip(k).map(|(a, b)| a + b).collect());
                    if let Some(&i) = index.get(&prod) {
                        row[i] += coef;
                    }
                }
                span.insert(row);
            }
        }
        Ok(linear.len() as i64 - span.rank() as i64)
    }
}

/// `P_{m/m^2}` up to degree `l_max` by counting linear monomials.
pub fn oracle_m_generators(sd: &SeifertData, l_max: i64) -> Result<PoincarePolynomial> {
    Oracle::new(sd)?.m_generators(l_max)
}

/// One-shot [`Oracle::q`].
pub fn oracle_q(sd: &SeifertData, l: i64, params: &Params) -> Result<i64> {
    Oracle::new(sd)?.q(l, params)
}

/// `z1^{alpha_1}`-coefficient `p`, then `z2^{alpha_2}` and `z_{j+2}^{alpha_{j+2}}`.
fn splice_terms(sd: &SeifertData, params: &Params, j: usize) -> [(Rational, Vec<i64>); 3] {
    let nu = sd.nu();
    let alphas = sd.alphas();
    let unit = |i: usize| {
        let mut k = vec![0; nu];
        k[i] = alphas[i];
        k
    };
    [
        (params.values()[j].clone(), unit(0)),
        (rat_int(1), unit(1)),
        (rat_int(1), unit(j + 2)),
    ]
}

/// Whether every `z_i^{alpha_i}`, hence every splice polynomial, is invariant.
pub fn splice_functions_invariant(sd: &SeifertData, table: &CharacterTable) -> bool {
    let alphas = sd.alphas();
    (0..sd.nu()).all(|i| {
        let mut k = vec![0; sd.nu()];
        k[i] = alphas[i];
        table.has_character(&k, 0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seifert::fixtures;
    use crate::test_support::arb_seifert;
    use proptest::prelude::*;

    fn table(sd: &SeifertData) -> CharacterTable {
        CharacterTable::new(&GraphInvariants::compute(sd).unwrap().group)
    }

    /// Exponent vector from `(variable, power)` pairs, 1-based variables.
    fn z(nu: usize, powers: &[(usize, i64)]) -> RMonomial {
        let mut k = vec![0; nu];
        for &(i, p) in powers {
            k[i - 1] = p;
        }
        RMonomial(k)
    }

    #[test]
    fn degree_zero_is_the_unit() {
        let sd = fixtures::ex_2345();
        assert_eq!(invariant_monomials(&sd, &table(&sd), 0).unwrap(), vec![RMonomial(vec![0; 4])]);
    }

    #[test]
    fn e6_linear_monomials() {
        let sd = fixtures::e6();
        let mut o = Oracle::new(&sd).unwrap();
        // legs (2,1),(3,2),(3,2): z1 is the leg of multiplicity 2
        assert_eq!(o.linear(3).unwrap(), [z(3, &[(1, 1)])]);
        assert_eq!(o.linear(4).unwrap(), [z(3, &[(2, 1), (3, 1)])]);
        assert_eq!(o.linear(6).unwrap(), [z(3, &[(3, 3)]), z(3, &[(2, 3)])]);
        assert_eq!(oracle_m_generators(&sd, 12).unwrap().to_string(), "t^3+t^4+2t^6");
    }

    #[test]
    fn linear_monomials_of_the_420_example() {
        let sd = fixtures::ex_linbig();
        let p = oracle_m_generators(&sd, 470).unwrap();
        assert_eq!(p.degree_multiset(), vec![60, 84, 210, 315, 335, 420, 420, 440, 460]);
        // the listed monomials, with z1..z5 of multiplicities 3,4,5,6,21
        let t = table(&sd);
        let listed = [
            z(5, &[(5, 3)]),
            z(5, &[(3, 1)]),
            z(5, &[(2, 2)]),
            z(5, &[(2, 1), (4, 3)]),
            z(5, &[(1, 1), (2, 1), (4, 1), (5, 1)]),
            z(5, &[(1, 3)]),
            z(5, &[(4, 6)]),
            z(5, &[(1, 1), (4, 4), (5, 1)]),
            z(5, &[(1, 2), (4, 2), (5, 2)]),
        ];
        let degrees: Vec<Rational> = listed.iter().map(|m| m.degree(&sd)).collect();
        let expected: Vec<Rational> = [60, 84, 210, 315, 335, 420, 420, 440, 460].iter().map(|&d| rat_int(d)).collect();
        assert_eq!(degrees, expected);
        let mut o = Oracle::new(&sd).unwrap();
        for m in &listed {
            assert!(t.has_character(&m.0, 0));
            let l = m.degree(&sd).to_integer().to_i64().unwrap();
            assert!(o.linear(l).unwrap().contains(m), "{m:?}");
        }
    }

    /// Parses `"z1^2z4"`-style products.
    fn parse_z(nu: usize, text: &str) -> RMonomial {
        let mut k = vec![0; nu];
        for factor in text.split('z').filter(|f| !f.is_empty()) {
            let (var, pow) = factor.split_once('^').unwrap_or((factor, "1"));
            k[var.parse::<usize>().unwrap() - 1] += pow.parse::<i64>().unwrap();
        }
        RMonomial(k)
    }

    fn all_linear(sd: &SeifertData) -> Vec<RMonomial> {
        let mut o = Oracle::new(sd).unwrap();
        let mut out = Vec::new();
        for l in 1..=crate::series::l_max(sd) {
            out.extend(o.linear(l).unwrap().iter().cloned());
        }
        out.sort();
        out
    }

    #[test]
    fn generators_of_the_four_leg_example() {
        let listed = "z3^2z4 z2z4^3 z1^2z4^2 z1z2z3z4 z2^2z3^2 z1^3z3 z2^3z4^2 z1^2z2^2z4 \
                      z1z2^3z3 z1^4z2 z2^5z4 z1z3^5 z1^2z2^4 z4^7 z1z3z4^5 z1^2z2z3^4 z2^7 \
                      z1^8z4 z2z3^8 z3^14 z1^14";
        let mut expected: Vec<RMonomial> = listed.split_whitespace().map(|m| parse_z(4, m)).collect();
        expected.sort();
        assert_eq!(expected.len(), 21);
        assert_eq!(all_linear(&fixtures::ex_2345()), expected);
    }

    #[test]
    fn generators_of_the_six_leg_example() {
        let listed = "z5z6 z3z4 z1z2 z2^4 z1^4 z2^2z4^3 z1^2z4^3 z2^2z3^3 z1^2z3^3 z4^6 z3^6 \
                      z2^2z6^7 z1^2z6^7 z2^2z5^7 z1^2z5^7 z4^3z6^7 z3^3z6^7 z4^3z5^7 z3^3z5^7 \
                      z6^14 z5^14";
        let mut expected: Vec<RMonomial> = listed.split_whitespace().map(|m| parse_z(6, m)).collect();
        expected.sort();
        assert_eq!(expected.len(), 21);
        assert_eq!(all_linear(&fixtures::ex_223377(2)), expected);
        assert_eq!(parse_z(6, "z1^2z5^7").degree(&fixtures::ex_223377(2)), rat_int(42));
    }

    #[test]
    fn psi_counts_on_the_four_leg_example() {
        let sd = fixtures::ex_2345();
        let c = verify_psi_transport(&sd, 60).unwrap();
        assert!(c.pass);
        assert_eq!((c.s, c.count), (7, 120));
        let c = verify_psi_transport(&sd, 1).unwrap();
        assert!(c.pass && c.s < 0 && c.count == 0);
    }

    #[test]
    fn q_on_the_jumping_family() {
        let sd = fixtures::ex_223377(2);
        let generic = Params::new(6, [1, 2, 3, 4].map(rat_int).to_vec()).unwrap();
        let special = Params::new(6, [1, 6, 2, 3].map(rat_int).to_vec()).unwrap();
        assert_eq!(oracle_q(&sd, 42, &generic).unwrap(), 0);
        assert_eq!(oracle_q(&sd, 42, &special).unwrap(), 1);
        assert_eq!(oracle_q(&sd, 1, &generic).unwrap(), 0);
    }

    #[test]
    fn q_on_four_legs() {
        let sd = fixtures::ex_2345();
        let p = Params::new(4, vec![rat_int(3), rat_int(-5)]).unwrap();
        let got: Vec<i64> = [6, 8, 10, 11, 12, 15].iter().map(|&l| oracle_q(&sd, l, &p).unwrap()).collect();
        assert_eq!(got, [1, 1, 1, 1, 1, 2]);
    }

    #[test]
    fn trivial_mu_iff_o_is_one() {
        for sd in [
            fixtures::e6(),
            fixtures::ex_2345(),
            fixtures::ex_223377(2),
            fixtures::ex_223377(3),
            fixtures::ex_linbig(),
            SeifertData::from_parts(1, &[14, 21, 5], &[5, 5, 2]).unwrap(),
            SeifertData::from_parts(1, &[3, 5, 11], &[1, 1, 5]).unwrap(),
        ] {
            let t = table(&sd);
            assert_eq!(t.mu_is_trivial(), sd.order_o() == 1, "{sd}");
            assert_eq!(splice_functions_invariant(&sd, &t), sd.order_o() == 1, "{sd}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let sd = SeifertData::from_parts(5, &[2, 3, 5, 7, 11, 13], &[1; 6]).unwrap();
        assert!(matches!(
            invariant_monomials(&sd, &table(&sd), 400),
            Err(Error::OracleCap { .. })
        ));
    }

    /// Degrees whose monomial count makes a property check slow.
    fn too_big(sd: &SeifertData, l: i64, c: i64) -> bool {
        !predicted_count(sd, l, c).map_or(true, |(_, _, n)| n <= Int::from(1500))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn character_test_matches_degree_test(sd in arb_seifert(30, 5), raw in proptest::collection::vec(0i64..40, 5)) {
            let t = table(&sd);
            let k = &raw[..sd.nu()];
            prop_assert_eq!(t.has_character(k, 0), is_invariant_by_degree(&sd, k));
        }

        #[test]
        fn psi_transport_is_bijective(sd in arb_seifert(20, 4)) {
            for l in 0..=sd.lcm_alpha().min(30) {
                if too_big(&sd, l, 0) {
                    continue;
                }
                match verify_psi_transport(&sd, l) {
                    Ok(c) => prop_assert!(c.pass, "{:?}", c),
                    Err(Error::OracleCap { .. }) => {}
                    Err(e) => return Err(TestCaseError::fail(e.to_string())),
                }
            }
        }

        #[test]
        fn q_agrees_with_the_monomial_side(sd in arb_seifert(12, 5), seed in any::<u64>()) {
            let mut rng = crate::embdim::params::stream(seed, 0, 0);
            let params = crate::embdim::params::random_params(sd.nu(), &mut rng);
            let mut o = Oracle::new(&sd).unwrap();
            for l in 1..=crate::series::l_max(&sd).min(40) {
                if too_big(&sd, l, 0) || too_big(&sd, l, -1) {
                    break;
                }
                let r = o.q(l, &params);
                let m = crate::embdim::q_at_params(&sd, l, &params);
                match r {
                    Ok(q) => prop_assert_eq!(q, m.unwrap(), "l = {}", l),
                    Err(Error::OracleCap { .. }) => break,
                    Err(e) => return Err(TestCaseError::fail(e.to_string())),
                }
            }
        }
    }
}

//! Families where `P_{m_X/m_X^2}` is known without linear algebra.

use serde::Serialize;

use crate::arith::convergents;
use crate::error::{Error, Result};
use crate::graph::{o_small_condition, GraphInvariants, GroupData};
use crate::monomial::{x_set, DegreeCombinatorics};
use crate::poly::PoincarePolynomial;
use crate::seifert::SeifertData;

/// `f_{alpha,beta}(t) = sum_k t^{r_k}` over the convergent numerators of the
/// negative continued fraction of `alpha/beta`.
pub fn f_alpha_beta(alpha: i64, beta: i64) -> Result<PoincarePolynomial> {
    let degrees: Vec<i64> = convergents(alpha, beta)?.iter().map(|c| c.r).collect();
    Ok(PoincarePolynomial::from_degrees(&degrees))
}

/// Whether `{j b/a} + {(l-j) b/a} - {l b/a} = 1` for every `1 <= j < l`.
/// Holds exactly when `l` is a convergent numerator of `alpha/beta`.
pub fn convergent_characterization_check(alpha: i64, beta: i64, l: i64) -> bool {
    let r = |k: i64| (k * beta).rem_euclid(alpha);
    let rl = r(l);
    (1..l).all(|j| r(j) + r(l - j) - rl == alpha)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct O1Form {
    pub p_mx: PoincarePolynomial,
    pub q_alpha: i64,
    pub i_alpha: i64,
    pub x_alpha_size: usize,
}

/// `o = 1`: only degree `alpha` loses generators, `Q(alpha) = max(0, 2 - #X_alpha)`.
pub fn o1_from(sd: &SeifertData, p_m: &PoincarePolynomial, x_alpha: &DegreeCombinatorics) -> Result<O1Form> {
    if sd.order_o() != 1 {
        return Err(Error::NotApplicable(format!("o = {} is not 1", sd.order_o())));
    }
    let alpha = sd.lcm_alpha();
    if x_alpha.l != alpha || x_alpha.s != 1 {
        return Err(Error::Consistency(format!(
            "degree {alpha} should have s = 1, found s = {} at l = {}",
            x_alpha.s, x_alpha.l
        )));
    }
    let gens = x_alpha.x.gens();
    if gens.iter().any(|g| g.degree() != 1) || x_alpha.x_raw.len() != gens.len() {
        return Err(Error::Consistency(format!(
            "X_{alpha} should consist of single variables"
        )));
    }
    for i in 0..sd.nu() {
        let listed = gens.iter().any(|g| g.contains_var(i));
        let predicted = alpha != sd.lcm_without(i);
        if listed != predicted {
            return Err(Error::Consistency(format!(
                "a_{} in X_{alpha} is {listed}, the lcm rule says {predicted}",
                i + 1
            )));
        }
    }
    let q_alpha = (2 - gens.len() as i64).max(0);
    let i_alpha = p_m.coeff(alpha) - q_alpha;
    let mut p_mx = p_m.clone();
    p_mx.add_term(alpha, -i_alpha);
    Ok(O1Form {
        p_mx,
        q_alpha,
        i_alpha,
        x_alpha_size: gens.len(),
    })
}

pub fn closed_form_o1(sd: &SeifertData) -> Result<PoincarePolynomial> {
    if sd.order_o() != 1 {
        return Err(Error::NotApplicable(format!("o = {} is not 1", sd.order_o())));
    }
    let p_m = crate::monomial::m_poincare(sd)?;
    let x_alpha = x_set(sd, sd.lcm_alpha())?;
    Ok(o1_from(sd, &p_m, &x_alpha)?.p_mx)
}

/// `o > 1` and `ord(h_i) <= alpha_i`: the splice equations lie in `m^2`.
pub fn closed_form_o_small(sd: &SeifertData, group: &GroupData, p_m: &PoincarePolynomial) -> Result<PoincarePolynomial> {
    if sd.order_o() == 1 {
        return Err(Error::NotApplicable("o = 1 is handled by the o = 1 formula".into()));
    }
    if !o_small_condition(sd, group) {
        return Err(Error::NotApplicable("some ord(h_i) exceeds alpha_i".into()));
    }
    Ok(p_m.clone())
}

/// `b0 >= nu`: `(b0 - nu + 1) t + sum_i f_{alpha_i, beta_i}`.
pub fn closed_form_minimal_rational(sd: &SeifertData) -> Result<PoincarePolynomial> {
    if !sd.is_minimal_rational() {
        return Err(Error::NotApplicable(format!("b0 = {} < nu = {}", sd.b0(), sd.nu())));
    }
    let mut p = PoincarePolynomial::monomial(1, sd.b0() - sd.nu() as i64 + 1);
    for leg in sd.legs() {
        p = p.add(&f_alpha_beta(leg.alpha, leg.beta())?);
    }
    Ok(p)
}

/// The three regimes `s >= 2`, `s = 1`, `s = 0` with `s = b0 - nu + 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AutomorphicCase {
    #[serde(rename = "s>=2")]
    AtLeastTwo,
    #[serde(rename = "s=1")]
    One,
    #[serde(rename = "s=0")]
    Zero,
}

impl AutomorphicCase {
    pub fn as_str(self) -> &'static str {
        match self {
            AutomorphicCase::AtLeastTwo => "s>=2",
            AutomorphicCase::One => "s=1",
            AutomorphicCase::Zero => "s=0",
        }
    }
}

pub fn automorphic_case(sd: &SeifertData) -> Option<AutomorphicCase> {
    if !sd.all_omegas_one() {
        return None;
    }
    match sd.b0() - sd.nu() as i64 + 2 {
        s if s >= 2 => Some(AutomorphicCase::AtLeastTwo),
        1 => Some(AutomorphicCase::One),
        0 => Some(AutomorphicCase::Zero),
        _ => None,
    }
}

/// `(b0, sorted alphas, P_mX)` for the inputs not covered by the generic rows.
const EXCEPTIONS: [(i64, &[i64], &[(i64, i64)]); 12] = [
    (1, &[2, 3, 7], &[(6, 1), (14, 1), (21, 1)]),
    (1, &[2, 3, 8], &[(6, 1), (8, 1), (15, 1)]),
    (1, &[2, 4, 5], &[(4, 1), (10, 1), (15, 1)]),
    (1, &[2, 4, 6], &[(4, 1), (6, 1), (11, 1)]),
    (1, &[2, 5, 5], &[(4, 1), (5, 1), (10, 1)]),
    (1, &[3, 3, 4], &[(3, 1), (8, 1), (12, 1)]),
    (1, &[3, 3, 5], &[(3, 1), (5, 1), (9, 1)]),
    (1, &[3, 4, 4], &[(3, 1), (4, 1), (8, 1)]),
    (2, &[2, 2, 2, 3], &[(2, 1), (6, 1), (9, 1)]),
    (2, &[2, 2, 2, 4], &[(2, 1), (4, 1), (7, 1)]),
    (2, &[2, 2, 3, 3], &[(2, 1), (3, 1), (6, 1)]),
    (3, &[2, 2, 2, 2, 2], &[(2, 2), (5, 1)]),
];

/// The exceptional inputs, as Seifert data with all `omega_i = 1`.
pub fn automorphic_exceptions() -> Vec<(SeifertData, PoincarePolynomial)> {
    EXCEPTIONS
        .iter()
        .map(|(b0, alphas, terms)| {
            let sd = SeifertData::from_parts(*b0, alphas, &vec![1; alphas.len()])
                .expect("table entries are valid");
            (sd, PoincarePolynomial::from_pairs(terms.iter().copied()))
        })
        .collect()
}

/// All `omega_i = 1` and `s = b0 - nu + 2 >= 0`.
pub fn closed_form_automorphic(sd: &SeifertData) -> Result<(AutomorphicCase, PoincarePolynomial)> {
    let case = automorphic_case(sd).ok_or_else(|| {
        Error::NotApplicable("needs all omega_i = 1 and b0 >= nu - 2".into())
    })?;
    let nu = sd.nu() as i64;
    let mut alphas = sd.alphas();
    alphas.sort_unstable();
    let total: i64 = alphas.iter().sum();

    if let Some((_, _, terms)) = EXCEPTIONS
        .iter()
        .find(|(b0, a, _)| *b0 == sd.b0() && *a == alphas.as_slice())
    {
        return Ok((case, PoincarePolynomial::from_pairs(terms.iter().copied())));
    }

    let head: &[(i64, i64)] = match case {
        AutomorphicCase::AtLeastTwo => &[(1, sd.b0() - nu + 1)],
        AutomorphicCase::One => &[(2, -1), (3, nu - 2)],
        AutomorphicCase::Zero => {
            if nu >= 4 && total >= 11 {
                &[(2, -3), (3, nu - 5)]
            } else if nu == 3 && alphas[0] >= 3 && total >= 12 {
                &[(2, -3), (3, -2), (4, -1)]
            } else if nu == 3 && alphas[0] == 2 && alphas[1] >= 4 && total >= 13 {
                &[(2, -3), (3, -2), (4, -1), (5, -1)]
            } else if nu == 3 && alphas[0] == 2 && alphas[1] == 3 && alphas[2] >= 9 {
                &[(2, -3), (3, -2), (4, -1), (5, -1), (7, -1)]
            } else {
                return Err(Error::Consistency(format!(
                    "{sd} falls between the automorphic cases"
                )));
            }
        }
    };
    let mut p = PoincarePolynomial::from_pairs(head.iter().copied());
    for leg in sd.legs() {
        // omega = 1 gives beta = alpha - 1 and f = t^2 + ... + t^alpha
        p = p.add(&f_alpha_beta(leg.alpha, leg.beta())?);
    }
    if p.terms().any(|(_, c)| c < 0) {
        return Err(Error::Consistency(format!(
            "automorphic formula gives negative coefficients for {sd}: {p}"
        )));
    }
    Ok((case, p))
}

/// Range of embedding dimensions over splice quotients with the same graph,
/// for `o = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpliceRange {
    pub ed_min: i64,
    pub ed_max: i64,
}

pub fn splice_range_from(sd: &SeifertData, p_m: &PoincarePolynomial, o1: &O1Form) -> SpliceRange {
    let alpha = sd.lcm_alpha();
    let above: i64 = p_m.terms().filter(|&(d, _)| d > alpha).map(|(_, c)| c).sum();
    let l_x = o1.i_alpha;
    let total = p_m.eval_one();
    SpliceRange {
        ed_min: total - (sd.nu() as i64 - 2).min(l_x + above),
        ed_max: total - l_x,
    }
}

pub fn splice_ed_range(sd: &SeifertData) -> Result<SpliceRange> {
    if sd.order_o() != 1 {
        return Err(Error::NotApplicable(format!("o = {} is not 1", sd.order_o())));
    }
    let p_m = crate::monomial::m_poincare(sd)?;
    let o1 = o1_from(sd, &p_m, &x_set(sd, sd.lcm_alpha())?)?;
    Ok(splice_range_from(sd, &p_m, &o1))
}

/// Graph-level criteria under which every `Q(l)` is topological.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GraphClassFlags {
    pub rational_graph: bool,
    pub numerically_gorenstein: bool,
    pub elliptic: bool,
}

impl GraphClassFlags {
    pub fn forces_topological(&self) -> bool {
        self.rational_graph || (self.numerically_gorenstein && self.elliptic)
    }
}

pub fn graph_class_flags(inv: &GraphInvariants) -> GraphClassFlags {
    GraphClassFlags {
        rational_graph: inv.is_rational(),
        numerically_gorenstein: inv.is_numerically_gorenstein(),
        elliptic: inv.is_elliptic(),
    }
}

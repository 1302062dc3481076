//! Minimal generators of the maximal ideal of `G_X`.
//!
//! `Q(l) = dim (A / (I + J(l)))_{s_l}`, where `I` is generated by `nu - 2`
//! linear forms. Eliminating `a_3..a_nu` through `a_i = p_i a_1 + a_2` turns
//! every generator of `J(l)` into a binary form, and `Q(l)` becomes a
//! corank in the degree-`s_l` part of `C[a_1, a_2]`.

pub mod closed_forms;
pub mod params;
pub mod topology;

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::arith::{rat_int, Rational};
use crate::error::{Error, Result};
use crate::graph::{o_small_condition, GraphInvariants};
use crate::linalg::{bareiss, integer_row};
use crate::monomial::{all_combinatorics, m_poincare_from, quotient_dimension, x_set, DegreeCombinatorics, SquareFreeMonomial};
use crate::param_poly::ParamPoly;
use crate::poly::PoincarePolynomial;
use crate::seifert::SeifertData;
use crate::series::l_max;

use closed_forms::{
    closed_form_automorphic, closed_form_minimal_rational, closed_form_o_small, graph_class_flags, o1_from,
    splice_range_from, GraphClassFlags, SpliceRange,
};
pub use params::{Labeling, Params};
use topology::{analyze_minors, find_witness, MinorAnalysis, MinorLimits};

/// Coefficients of `prod_{i in gen} a_i` after elimination, indexed by the
/// power of `a_2` (the monomial `a_1^{d-j} a_2^j` sits at index `j`).
pub fn reduce_to_binary(gen: SquareFreeMonomial, nvars: usize) -> Vec<ParamPoly> {
    let mut form = vec![ParamPoly::one(nvars)];
    for i in gen.indices() {
        let i = i - 1;
        let mut next = vec![ParamPoly::zero(nvars); form.len() + 1];
        for (j, c) in form.iter().enumerate() {
            match i {
                0 => next[j] = next[j].add(c),
                1 => next[j + 1] = next[j + 1].add(c),
                _ => {
                    next[j] = next[j].add(&c.mul(&ParamPoly::var(nvars, i - 2)));
                    next[j + 1] = next[j + 1].add(c);
                }
            }
        }
        form = next;
    }
    form
}

/// Same as [`reduce_to_binary`] at explicit values of `p_3..p_nu`.
pub fn binary_form_at(gen: SquareFreeMonomial, values: &[Rational]) -> Vec<Rational> {
    let mut form = vec![rat_int(1)];
    for i in gen.indices() {
        let i = i - 1;
        let mut next = vec![Rational::zero(); form.len() + 1];
        for (j, c) in form.iter().enumerate() {
            match i {
                0 => next[j] += c,
                1 => next[j + 1] += c,
                _ => {
                    next[j] += c * &values[i - 2];
                    next[j + 1] += c;
                }
            }
        }
        form = next;
    }
    form
}

/// Rows `form * a_1^{s-d-j} a_2^j` for `0 <= j <= s - d`, over the basis
/// `a_1^s, a_1^{s-1} a_2, ..., a_2^s`.
fn span_rows<T: Clone>(forms: &[Vec<T>], s: usize, zero: &T) -> Vec<Vec<T>> {
    let mut rows = Vec::new();
    for f in forms {
        let d = f.len() - 1;
        if d > s {
            continue;
        }
        for j in 0..=s - d {
            let mut row = vec![zero.clone(); s + 1];
            for (k, c) in f.iter().enumerate() {
                row[j + k] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

fn structural_bound(gens: &[SquareFreeMonomial], s: usize) -> usize {
    let rows: usize = gens.iter().filter(|g| g.degree() <= s).map(|g| s - g.degree() + 1).sum();
    rows.min(s + 1)
}

fn rank_at(gens: &[SquareFreeMonomial], s: usize, values: &[Rational]) -> usize {
    let forms: Vec<Vec<Rational>> = gens.iter().map(|&g| binary_form_at(g, values)).collect();
    let rows = span_rows(&forms, s, &Rational::zero());
    if rows.is_empty() {
        return 0;
    }
    bareiss(rows.iter().map(|r| integer_row(r)).collect()).rank
}

/// `Q(l)` at explicit parameters, from precomputed combinatorics.
pub fn q_at_params_with(comb: &DegreeCombinatorics, params: &Params) -> Result<i64> {
    params::check_admissible(params.values())?;
    if comb.s < 0 {
        return Ok(0);
    }
    let s = comb.s as usize;
    Ok(comb.s + 1 - rank_at(comb.x.gens(), s, params.values()) as i64)
}

pub fn q_at_params(sd: &SeifertData, l: i64, params: &Params) -> Result<i64> {
    if params.values().len() + 2 != sd.nu() {
        return Err(Error::InadmissibleParams(format!(
            "{} parameters given for {} legs",
            params.values().len(),
            sd.nu()
        )));
    }
    q_at_params_with(&x_set(sd, l)?, params)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericRank {
    pub q: i64,
    pub rank: usize,
    /// `min(#rows, s + 1)`.
    pub bound: usize,
    pub trial_ranks: Vec<usize>,
}

/// Generic rank as the maximum over random admissible parameter points.
/// With `all_trials = false` the search stops once the bound is reached.
pub fn q_generic_with(comb: &DegreeCombinatorics, nu: usize, trials: usize, seed: u64, all_trials: bool) -> GenericRank {
    if comb.s < 0 {
        return GenericRank {
            q: 0,
            rank: 0,
            bound: 0,
            trial_ranks: Vec::new(),
        };
    }
    let s = comb.s as usize;
    let gens = comb.x.gens();
    let bound = structural_bound(gens, s);
    let mut trial_ranks = Vec::new();
    for t in 0..trials.max(1) {
        let p = params::random_params(nu, &mut params::stream(seed, comb.l, t as u64));
        let r = rank_at(gens, s, p.values());
        trial_ranks.push(r);
        if r == bound && !all_trials {
            break;
        }
    }
    let rank = *trial_ranks.iter().max().expect("at least one trial");
    GenericRank {
        q: comb.s + 1 - rank as i64,
        rank,
        bound,
        trial_ranks,
    }
}

pub fn q_generic(sd: &SeifertData, l: i64, trials: usize, seed: u64) -> Result<GenericRank> {
    Ok(q_generic_with(&x_set(sd, l)?, sd.nu(), trials, seed, false))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Topological {
    Yes,
    No,
    Undecided,
}

/// Closed forms that can decide a single degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClosedFormKind {
    OEqualsOne,
    OSmall,
    Automorphic,
    MinimalRational,
}

impl ClosedFormKind {
    pub fn name(self) -> &'static str {
        match self {
            ClosedFormKind::OEqualsOne => "o_equals_1",
            ClosedFormKind::OSmall => "o_small",
            ClosedFormKind::Automorphic => "automorphic",
            ClosedFormKind::MinimalRational => "minimal_rational",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    NoSection,
    FreeCase,
    EasyCase,
    KeyFormula,
    ClosedForm(ClosedFormKind),
    GenericLinearAlgebra,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::ClosedForm(k) => write!(f, "ClosedForm({})", k.name()),
            other => write!(f, "{other:?}"),
        }
    }
}

impl Serialize for Method {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn serialize_polys<S: Serializer>(polys: &[ParamPoly], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(polys.iter().map(|p| p.display_with(|k| Labeling::FromOne.name(k))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub params: Params,
    pub q_at_witness: i64,
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Witness", 3)?;
        st.serialize_field("params", &self.params.labeled(Labeling::FromOne))?;
        st.serialize_field("params_by_leg", &self.params.labeled(Labeling::ByLeg))?;
        st.serialize_field("q_at_witness", &self.q_at_witness)?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub l: i64,
    pub s: i64,
    pub combinatorics: DegreeCombinatorics,
    /// Coefficient of `t^l` in `P_{m/m^2}`.
    pub m_coefficient: i64,
    pub method: Method,
    pub q_generic: i64,
    pub topological: Topological,
    #[serde(serialize_with = "serialize_polys")]
    pub discriminant_minors: Vec<ParamPoly>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbdimOptions {
    pub trials: usize,
    pub seed: u64,
    /// Run the symbolic minors pass on degrees no theorem decides.
    pub analyze: bool,
    /// Let closed forms decide degrees; when off, every degree goes through
    /// the cascade and linear algebra alone.
    pub closed_forms: bool,
    pub l_max: Option<i64>,
    pub limits: MinorLimits,
}

impl Default for EmbdimOptions {
    fn default() -> Self {
        Self {
            trials: 5,
            seed: 0,
            analyze: false,
            closed_forms: true,
            l_max: None,
            limits: MinorLimits::default(),
        }
    }
}

/// Whole-input data shared by every degree.
pub struct DegreeContext<'a> {
    pub sd: &'a SeifertData,
    pub options: &'a EmbdimOptions,
    pub graph: GraphClassFlags,
    /// A closed form that decides every degree, if one applies.
    pub closed: Option<(ClosedFormKind, PoincarePolynomial)>,
}

fn reduced(comb: &DegreeCombinatorics) -> (Vec<SquareFreeMonomial>, usize) {
    let common = comb.x.gens().iter().fold(u32::MAX, |acc, g| acc & g.mask());
    let gens = comb
        .x
        .gens()
        .iter()
        .map(|g| SquareFreeMonomial::from_mask(g.mask() & !common))
        .collect();
    (gens, comb.s as usize - comb.n_l)
}

fn report(comb: &DegreeCombinatorics, m_coefficient: i64, method: Method, q: i64, topological: Topological) -> DegreeReport {
    DegreeReport {
        l: comb.l,
        s: comb.s,
        combinatorics: comb.clone(),
        m_coefficient,
        method,
        q_generic: q,
        topological,
        discriminant_minors: Vec::new(),
        witness: None,
        note: None,
    }
}

/// The decision cascade for one degree.
pub fn classify_degree(ctx: &DegreeContext<'_>, comb: &DegreeCombinatorics) -> Result<DegreeReport> {
    let nu = ctx.sd.nu();
    let opts = ctx.options;
    let m_coefficient = quotient_dimension(nu, &comb.x, comb.s)?;
    if comb.s < 0 {
        return Ok(report(comb, m_coefficient, Method::NoSection, 0, Topological::Yes));
    }
    if comb.x.is_empty() {
        return Ok(report(comb, m_coefficient, Method::FreeCase, comb.s + 1, Topological::Yes));
    }
    if comb.contains_one {
        return Ok(report(comb, m_coefficient, Method::EasyCase, 0, Topological::Yes));
    }
    if comb.x.gens().iter().any(|g| g.degree() == 1) {
        let q = i64::from(comb.x.len() == 1);
        if q != comb.n_l as i64 {
            return Err(Error::Consistency(format!(
                "degree {}: single-variable rule gives {q}, n_l = {}",
                comb.l, comb.n_l
            )));
        }
        return Ok(report(comb, m_coefficient, Method::EasyCase, q, Topological::Yes));
    }
    if comb.s >= nu as i64 - comb.m_l as i64 - 1 {
        return Ok(report(comb, m_coefficient, Method::KeyFormula, comb.n_l as i64, Topological::Yes));
    }
    if nu - comb.n_l <= 5 {
        let g = q_generic_with(comb, nu, opts.trials, opts.seed, true);
        if g.trial_ranks.iter().any(|&r| r != g.rank) {
            return Err(Error::Consistency(format!(
                "degree {}: ranks {:?} differ although nu - n_l <= 5",
                comb.l, g.trial_ranks
            )));
        }
        return Ok(report(comb, m_coefficient, Method::GenericLinearAlgebra, g.q, Topological::Yes));
    }

    let g = q_generic_with(comb, nu, opts.trials, opts.seed, false);
    if g.q < comb.n_l as i64 {
        return Err(Error::Consistency(format!(
            "degree {}: Q = {} below n_l = {}",
            comb.l, g.q, comb.n_l
        )));
    }
    if opts.closed_forms {
        if let Some((kind, p)) = &ctx.closed {
            let q = p.coeff(comb.l);
            if q != g.q {
                return Err(Error::Consistency(format!(
                    "degree {}: {} predicts Q = {q}, linear algebra gives {}",
                    comb.l,
                    kind.name(),
                    g.q
                )));
            }
            return Ok(report(comb, m_coefficient, Method::ClosedForm(*kind), q, Topological::Yes));
        }
    }
    let mut r = report(comb, m_coefficient, Method::GenericLinearAlgebra, g.q, Topological::Undecided);
    if ctx.graph.forces_topological() {
        r.topological = Topological::Yes;
        return Ok(r);
    }
    if !opts.analyze {
        return Ok(r);
    }

    let nvars = nu - 2;
    let (gens, s_red) = reduced(comb);
    let forms: Vec<Vec<ParamPoly>> = gens.iter().map(|&g| reduce_to_binary(g, nvars)).collect();
    let matrix = span_rows(&forms, s_red, &ParamPoly::zero(nvars));
    // Q = n_l + (s_red + 1 - rank of the reduced matrix)
    let rank_red = s_red as i64 + 1 - (g.q - comb.n_l as i64);
    match analyze_minors(&matrix, rank_red as usize, &opts.limits) {
        MinorAnalysis::Constant => r.topological = Topological::Yes,
        MinorAnalysis::TooLarge(why) => r.note = Some(why),
        MinorAnalysis::Locus(polys) => {
            let mut rng = params::stream(opts.seed, comb.l, u64::MAX);
            let mut q_seen = 0;
            let witness = find_witness(&polys, nu, opts.limits.witness_attempts, &mut rng, |p| {
                q_seen = q_at_params_with(comb, p).unwrap_or(0);
                q_seen > g.q
            });
            r.discriminant_minors = polys;
            match witness {
                Some(params) => {
                    r.topological = Topological::No;
                    r.witness = Some(Witness {
                        params,
                        q_at_witness: q_seen,
                    });
                }
                None => r.note = Some("no admissible point found on the rank-drop locus".into()),
            }
        }
    }
    Ok(r)
}

/// Classifies one degree on its own, building the whole-input context.
pub fn classify_degree_at(sd: &SeifertData, l: i64, options: &EmbdimOptions) -> Result<DegreeReport> {
    let inv = GraphInvariants::compute(sd)?;
    let rows = all_combinatorics(sd, l_max(sd).max(sd.lcm_alpha()))?;
    let p_m = m_poincare_from(sd.nu(), &rows)?;
    let closed = closed_prediction(sd, &inv, &p_m, &rows)?;
    let ctx = DegreeContext {
        sd,
        options,
        graph: graph_class_flags(&inv),
        closed,
    };
    classify_degree(&ctx, &x_set(sd, l)?)
}

fn o1_form(sd: &SeifertData, p_m: &PoincarePolynomial, rows: &[DegreeCombinatorics]) -> Result<closed_forms::O1Form> {
    let alpha = sd.lcm_alpha();
    let x_alpha = match rows.get(alpha as usize - 1) {
        Some(c) => c.clone(),
        None => x_set(sd, alpha)?,
    };
    o1_from(sd, p_m, &x_alpha)
}

/// The first closed form, in a fixed order, that decides every degree.
fn closed_prediction(
    sd: &SeifertData,
    inv: &GraphInvariants,
    p_m: &PoincarePolynomial,
    rows: &[DegreeCombinatorics],
) -> Result<Option<(ClosedFormKind, PoincarePolynomial)>> {
    if sd.order_o() == 1 {
        return Ok(Some((ClosedFormKind::OEqualsOne, o1_form(sd, p_m, rows)?.p_mx)));
    }
    if o_small_condition(sd, &inv.group) {
        return Ok(Some((ClosedFormKind::OSmall, closed_form_o_small(sd, &inv.group, p_m)?)));
    }
    if closed_forms::automorphic_case(sd).is_some() {
        return Ok(Some((ClosedFormKind::Automorphic, closed_form_automorphic(sd)?.1)));
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportFlags {
    pub minimal_rational: bool,
    pub automorphic_case: Option<&'static str>,
    pub o_equals_1: bool,
    pub o_small: bool,
    pub nu_le_5: bool,
    pub rational_graph: bool,
    pub elliptic_gorenstein_graph: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JumpStratum {
    /// Generators of the rank-drop locus, parameters named from `p1`.
    pub discriminant: String,
    /// The same polynomials with parameters named after their legs.
    pub discriminant_by_leg: String,
    pub degrees: Vec<i64>,
    pub embdim: i64,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbdimReport {
    #[serde(rename = "P_m")]
    pub p_m: PoincarePolynomial,
    #[serde(rename = "P_mX_generic")]
    pub p_mx_generic: PoincarePolynomial,
    pub embdim_generic: i64,
    /// Degrees where `P_{m/m^2}` is nonzero; all others have `Q(l) = 0`.
    pub degrees: Vec<DegreeReport>,
    pub jump_strata: Vec<JumpStratum>,
    pub flags: ReportFlags,
    pub closed_forms_checked: Vec<&'static str>,
    pub splice_range: Option<SpliceRange>,
}

fn join_polys(polys: &[ParamPoly], labeling: Labeling) -> String {
    polys
        .iter()
        .map(|p| p.display_with(|k| labeling.name(k)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn check_closed(name: &'static str, predicted: &PoincarePolynomial, computed: &PoincarePolynomial, l_max: i64) -> Result<()> {
    if predicted.truncated(l_max) != *computed {
        return Err(Error::Consistency(format!(
            "{name} closed form gives {predicted}, the general path gives {computed}"
        )));
    }
    Ok(())
}

pub fn full_report(sd: &SeifertData, options: &EmbdimOptions) -> Result<EmbdimReport> {
    let inv = GraphInvariants::compute(sd)?;
    let nu = sd.nu();
    let top = options.l_max.unwrap_or_else(|| l_max(sd)).max(0);
    let rows = all_combinatorics(sd, top)?;
    let p_m = m_poincare_from(nu, &rows)?;
    let graph = graph_class_flags(&inv);
    let closed = closed_prediction(sd, &inv, &p_m, &rows)?;
    let ctx = DegreeContext {
        sd,
        options,
        graph,
        closed: closed.clone(),
    };
    let degrees: Vec<DegreeReport> = rows
        .par_iter()
        .filter(|c| p_m.coeff(c.l) > 0)
        .map(|c| classify_degree(&ctx, c))
        .collect::<Result<_>>()?;

    let p_mx = PoincarePolynomial::from_pairs(degrees.iter().map(|d| (d.l, d.q_generic)));
    if !p_mx.le_coefficientwise(&p_m) {
        return Err(Error::Consistency(format!("P_mX = {p_mx} is not below P_m = {p_m}")));
    }

    let mut checked = Vec::new();
    let mut splice_range = None;
    if sd.order_o() == 1 {
        let o1 = o1_form(sd, &p_m, &rows)?;
        check_closed("o = 1", &o1.p_mx, &p_mx, top)?;
        splice_range = Some(splice_range_from(sd, &p_m, &o1));
        checked.push(ClosedFormKind::OEqualsOne.name());
    }
    let o_small = sd.order_o() > 1 && o_small_condition(sd, &inv.group);
    if o_small {
        check_closed("o small", &closed_form_o_small(sd, &inv.group, &p_m)?, &p_mx, top)?;
        checked.push(ClosedFormKind::OSmall.name());
    }
    let automorphic = closed_forms::automorphic_case(sd);
    if automorphic.is_some() {
        check_closed("automorphic", &closed_form_automorphic(sd)?.1, &p_mx, top)?;
        checked.push(ClosedFormKind::Automorphic.name());
    }
    if sd.is_minimal_rational() {
        check_closed("minimal rational", &closed_form_minimal_rational(sd)?, &p_mx, top)?;
        checked.push(ClosedFormKind::MinimalRational.name());
    }
    if graph.forces_topological() && degrees.iter().any(|d| d.topological == Topological::No) {
        return Err(Error::Consistency("a degree jumps although the graph forces topological".into()));
    }

    let mut groups: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (i, d) in degrees.iter().enumerate() {
        if d.topological == Topological::No {
            groups
                .entry(join_polys(&d.discriminant_minors, Labeling::FromOne))
                .or_default()
                .push(i);
        }
    }
    let mut jump_strata = Vec::new();
    for (discriminant, members) in groups {
        let first = &degrees[members[0]];
        let witness = first.witness.clone().expect("jumping degrees carry a witness");
        let mut embdim = 0;
        for d in &degrees {
            let q = if d.topological == Topological::Yes {
                d.q_generic
            } else {
                let q = q_at_params_with(&d.combinatorics, &witness.params)?;
                if q < d.q_generic {
                    return Err(Error::Consistency(format!(
                        "degree {}: Q = {q} at the witness is below the generic {}",
                        d.l, d.q_generic
                    )));
                }
                q
            };
            embdim += q;
        }
        jump_strata.push(JumpStratum {
            discriminant,
            discriminant_by_leg: join_polys(&first.discriminant_minors, Labeling::ByLeg),
            degrees: members.iter().map(|&i| degrees[i].l).collect(),
            embdim,
            witness,
        });
    }

    let flags = ReportFlags {
        minimal_rational: sd.is_minimal_rational(),
        automorphic_case: automorphic.map(|c| c.as_str()),
        o_equals_1: sd.order_o() == 1,
        o_small,
        nu_le_5: nu <= 5,
        rational_graph: graph.rational_graph,
        elliptic_gorenstein_graph: graph.numerically_gorenstein && graph.elliptic,
    };
    Ok(EmbdimReport {
        embdim_generic: p_mx.eval_one(),
        p_m,
        p_mx_generic: p_mx,
        degrees,
        jump_strata,
        flags,
        closed_forms_checked: checked,
        splice_range,
    })
}

#[cfg(test)]
mod tests;

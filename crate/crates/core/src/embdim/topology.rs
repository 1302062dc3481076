//! Whether a generic rank can drop on the admissible parameter space.
//!
//! The rank of the symbolic span matrix drops exactly on the common zero set
//! of its `r x r` minors. Factors `p_i` and `p_i - p_j` never vanish on
//! admissible points and are divided out first. A nonzero constant among the
//! stripped minors proves the rank is constant; otherwise an admissible
//! common zero is searched for by eliminating variables that occur linearly,
//! and every candidate is confirmed with an exact rank computation.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::params::{check_admissible, Labeling, Params};
use crate::arith::{rat_int, Rational};
use crate::linalg::bareiss;
use crate::param_poly::ParamPoly;

/// Size guards for the symbolic pass.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MinorLimits {
    /// Largest number of rows or columns of the symbolic matrix.
    pub max_dim: usize,
    /// Largest number of `r x r` minors expanded.
    pub max_minors: u64,
    /// Elimination attempts in the witness search.
    pub witness_attempts: usize,
}

impl Default for MinorLimits {
    fn default() -> Self {
        Self {
            max_dim: 12,
            max_minors: 5000,
            witness_attempts: 24,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinorAnalysis {
    /// Some stripped minor is a nonzero constant.
    Constant,
    /// Distinct stripped, square-free minors in display order.
    Locus(Vec<ParamPoly>),
    /// The guards in [`MinorLimits`] were hit.
    TooLarge(String),
}

fn choose(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut c: u64 = 1;
    for i in 0..k {
        c = c.saturating_mul((n - i) as u64) / (i as u64 + 1);
    }
    c
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order until it
/// returns `false`.
fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else { return };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Divides out `p_i` and `p_i - p_j` as often as they divide.
pub fn strip_units(f: &ParamPoly) -> ParamPoly {
    let n = f.nvars();
    let mut f = f.clone();
    let mut units = Vec::new();
    for i in 0..n {
        units.push(ParamPoly::var(n, i));
        for j in i + 1..n {
            units.push(ParamPoly::var(n, i).sub(&ParamPoly::var(n, j)));
        }
    }
    for u in &units {
        while !f.is_constant() {
            match f.div_exact(u) {
                Some(q) => f = q,
                None => break,
            }
        }
    }
    f
}

fn clean(f: &ParamPoly) -> ParamPoly {
    strip_units(f).square_free()
}

/// All `rank x rank` minors of a symbolic matrix, stripped of unit factors.
pub fn analyze_minors(matrix: &[Vec<ParamPoly>], rank: usize, limits: &MinorLimits) -> MinorAnalysis {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    if rank == 0 {
        return MinorAnalysis::Constant;
    }
    if rows > limits.max_dim || cols > limits.max_dim {
        return MinorAnalysis::TooLarge(format!(
            "symbolic matrix is {rows}x{cols}, above the {0}x{0} cap",
            limits.max_dim
        ));
    }
    let count = choose(rows, rank).saturating_mul(choose(cols, rank));
    if count > limits.max_minors {
        return MinorAnalysis::TooLarge(format!(
            "{count} minors of size {rank} exceed the cap of {}",
            limits.max_minors
        ));
    }
    let mut found: BTreeMap<String, ParamPoly> = BTreeMap::new();
    let mut constant = false;
    for_each_subset(rows, rank, |rs| {
        for_each_subset(cols, rank, |cs| {
            let sub: Vec<Vec<ParamPoly>> =
                rs.iter().map(|&r| cs.iter().map(|&c| matrix[r][c].clone()).collect()).collect();
            let det = bareiss(sub).det;
            if det.is_zero() {
                return true;
            }
            let g = clean(&det);
            if g.is_constant() {
                constant = true;
                return false;
            }
            found.entry(g.display_with(|k| Labeling::FromOne.name(k))).or_insert(g);
            true
        });
        !constant
    });
    if constant {
        return MinorAnalysis::Constant;
    }
    let mut polys: Vec<ParamPoly> = found.into_values().collect();
    polys.sort_by_key(|p| (p.total_degree(), p.display_with(|k| Labeling::FromOne.name(k))));
    MinorAnalysis::Locus(polys)
}

/// `h(v = -B/A) * A^deg_v(h)`, a polynomial without `v`.
fn substitute(h: &ParamPoly, v: usize, a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    let coeffs = h.coeffs_in(v);
    let d = coeffs.len() - 1;
    let n = h.nvars();
    let neg_b = b.neg();
    let mut out = ParamPoly::zero(n);
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut term = c.clone();
        for _ in 0..k {
            term = term.mul(&neg_b);
        }
        for _ in k..d {
            term = term.mul(a);
        }
        out = out.add(&term);
    }
    // points with A = 0 are excluded later, so factors shared with A are spurious
    if !a.is_constant() {
        loop {
            let g = out.gcd(a);
            if g.is_constant() || out.is_zero() {
                break;
            }
            out = out.div_exact(&g).expect("gcd divides");
        }
    }
    out
}

fn random_value(rng: &mut ChaCha8Rng) -> Rational {
    let v = rng.gen_range(1..=60);
    rat_int(if rng.gen_bool(0.5) { v } else { -v })
}

/// One elimination run: returns a candidate admissible common zero.
fn eliminate(system: &[ParamPoly], rng: &mut ChaCha8Rng) -> Option<Vec<Rational>> {
    let n = system.first()?.nvars();
    let mut system: Vec<ParamPoly> = system.to_vec();
    let mut steps: Vec<(usize, ParamPoly, ParamPoly)> = Vec::new();
    loop {
        let mut next: Vec<ParamPoly> = Vec::new();
        for f in &system {
            if f.is_zero() {
                continue;
            }
            let g = clean(f);
            if g.is_constant() {
                return None;
            }
            if !next.contains(&g) {
                next.push(g);
            }
        }
        system = next;
        if system.is_empty() {
            break;
        }
        let mut candidates: Vec<(usize, usize)> = Vec::new();
        for (i, f) in system.iter().enumerate() {
            for v in 0..n {
                if f.degree_in(v) == 1 {
                    candidates.push((i, v));
                }
            }
        }
        let &(i, v) = candidates.choose(rng)?;
        let coeffs = system[i].coeffs_in(v);
        let (b, a) = (coeffs[0].clone(), coeffs[1].clone());
        system = system.iter().map(|h| substitute(h, v, &a, &b)).collect();
        steps.push((v, a, b));
    }
    let eliminated: Vec<usize> = steps.iter().map(|s| s.0).collect();
    let mut values: Vec<Option<Rational>> = (0..n)
        .map(|v| (!eliminated.contains(&v)).then(|| random_value(rng)))
        .collect();
    for (v, a, b) in steps.iter().rev() {
        let a_val = a.partial_eval(&values);
        let b_val = b.partial_eval(&values);
        if !a_val.is_constant() || !b_val.is_constant() {
            return None;
        }
        let zero = vec![Rational::zero(); n];
        let a_val = a_val.eval(&zero);
        if a_val.is_zero() {
            return None;
        }
        values[*v] = Some(-b_val.eval(&zero) / a_val);
    }
    let values: Vec<Rational> = values.into_iter().collect::<Option<_>>()?;
    check_admissible(&values).ok()?;
    Some(values)
}

/// Searches for an admissible common zero of `system` on which `confirm`
/// holds. Bounded by `attempts` elimination runs.
pub fn find_witness(
    system: &[ParamPoly],
    nu: usize,
    attempts: usize,
    rng: &mut ChaCha8Rng,
    mut confirm: impl FnMut(&Params) -> bool,
) -> Option<Params> {
    for _ in 0..attempts {
        let Some(values) = eliminate(system, rng) else { continue };
        let Ok(params) = Params::new(nu, values) else { continue };
        if confirm(&params) {
            return Some(params);
        }
    }
    None
}

//! One function per subcommand, each producing a JSON value.

use seifert_core::arith::rat_to_string;
use seifert_core::embdim::params::{random_params, stream};
use seifert_core::embdim::{full_report, q_at_params, EmbdimOptions, Labeling};
use seifert_core::monomial::{all_combinatorics, m_poincare_from};
use seifert_core::oracle::{verify_psi_transport, Oracle};
use seifert_core::series::{dolgachev_check, l_max, RationalForm};
use seifert_core::{Error, GraphInvariants, PoincarePolynomial, SeifertData, SeriesBundle};
use serde_json::{json, Map, Value};

use crate::input::{CliError, Command, JobSpec};

/// Output of a job together with its exit code; `check` reports a mismatch
/// through the code while still producing its diff.
#[derive(Debug, Clone, PartialEq)]
pub struct JobOutput {
    pub value: Value,
    pub code: i32,
}

pub fn run_job(job: &JobSpec) -> Result<JobOutput, CliError> {
    let value = match job.command {
        Command::Invariants => invariants(&job.seifert)?,
        Command::Hilbert => hilbert(job)?,
        Command::Embdim => embdim(job, false)?,
        Command::Analyze => embdim(job, true)?,
        Command::Check => return check(job),
    };
    Ok(JobOutput { value, code: 0 })
}

fn header(sd: &SeifertData, inv: &GraphInvariants) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("seifert".into(), json!(sd));
    m.insert("e".into(), json!(rat_to_string(&sd.euler_number())));
    m.insert("alpha".into(), json!(sd.lcm_alpha()));
    m.insert("o".into(), json!(sd.order_o()));
    m.insert("gamma".into(), json!(rat_to_string(&seifert_core::series::gamma(sd))));
    m.insert("H_order".into(), json!(inv.group.order));
    m
}

fn invariants(sd: &SeifertData) -> Result<Value, CliError> {
    let inv = GraphInvariants::compute(sd)?;
    let bundle = SeriesBundle::compute(sd, Some(0))?;
    let mut m = header(sd, &inv);
    m.insert("H_invariant_factors".into(), json!(inv.group.invariant_factors));
    m.insert("element_orders".into(), json!(inv.group.element_orders));
    m.insert("graph".into(), json!(inv.graph));
    m.insert("Z".into(), json!(inv.fundamental));
    m.insert("Z_K".into(), json!(inv.canonical));
    m.insert("p_a".into(), json!(inv.p_a));
    m.insert("p_g".into(), json!(bundle.p_g));
    m.insert("rational".into(), json!(inv.is_rational()));
    m.insert("numerically_gorenstein".into(), json!(inv.is_numerically_gorenstein()));
    m.insert("minimal_rational".into(), json!(sd.is_minimal_rational()));
    Ok(Value::Object(m))
}

fn hilbert(job: &JobSpec) -> Result<Value, CliError> {
    let sd = &job.seifert;
    let inv = GraphInvariants::compute(sd)?;
    let bundle = SeriesBundle::compute(sd, job.l_max)?;
    let form = RationalForm::compute(sd)?;
    let laurent = dolgachev_check(sd, 2)?;
    if !laurent.pass {
        return Err(Error::Consistency("Laurent coefficients at t = 1 disagree with |e| and gamma".into()).into());
    }
    let mut m = header(sd, &inv);
    m.insert("l_max".into(), json!(bundle.l_max));
    m.insert("P_GX".into(), json!(bundle.p_gx));
    m.insert("P_H1".into(), json!(bundle.p_h1));
    m.insert("p_g".into(), json!(bundle.p_g));
    m.insert("a_invariant".into(), json!(bundle.a_invariant));
    m.insert(
        "rational_form".into(),
        json!({
            "numerator": form.numerator.to_string_t(),
            "denominator": form.denominator.to_string_t(),
        }),
    );
    m.insert("laurent_at_1".into(), json!(laurent));
    Ok(Value::Object(m))
}

fn embdim(job: &JobSpec, analyze: bool) -> Result<Value, CliError> {
    let sd = &job.seifert;
    let inv = GraphInvariants::compute(sd)?;
    let options = EmbdimOptions {
        trials: job.trials,
        seed: job.seed,
        analyze,
        l_max: job.l_max,
        ..Default::default()
    };
    let bundle = SeriesBundle::compute(sd, job.l_max)?;
    let report = full_report(sd, &options)?;
    let mut m = header(sd, &inv);
    m.insert("p_g".into(), json!(bundle.p_g));
    m.insert("P_GX".into(), json!(bundle.p_gx));
    m.insert("P_H1".into(), json!(bundle.p_h1));
    let Value::Object(body) = json!(report) else {
        unreachable!("reports serialize as objects")
    };
    m.extend(body);
    if let Some(params) = &job.params {
        let mut p_mx = PoincarePolynomial::new();
        for d in &report.degrees {
            p_mx.add_term(d.l, q_at_params(sd, d.l, params)?);
        }
        m.insert(
            "at_params".into(),
            json!({
                "params": params.labeled(Labeling::ByLeg),
                "P_mX": p_mx,
                "embdim": p_mx.eval_one(),
            }),
        );
    }
    Ok(Value::Object(m))
}

/// Main path against the monomial oracle, degree by degree, until the
/// requested bound or the first degree the oracle refuses.
fn check(job: &JobSpec) -> Result<JobOutput, CliError> {
    let sd = &job.seifert;
    let top = job.l_max.unwrap_or_else(|| l_max(sd));
    let params = match &job.params {
        Some(p) => p.clone(),
        None => random_params(sd.nu(), &mut stream(job.seed, 0, 0)),
    };
    let rows = all_combinatorics(sd, top)?;
    let mut oracle = Oracle::new(sd)?;
    let mut reached = 0;
    let mut capped_at = None;
    let mut q_mismatches = Vec::new();
    let mut psi_failures = Vec::new();
    for l in 1..=top {
        let q_oracle = match oracle.q(l, &params) {
            Ok(q) => q,
            Err(Error::OracleCap { .. }) => {
                capped_at = Some(l);
                break;
            }
            Err(e) => return Err(e.into()),
        };
        let q_main = q_at_params(sd, l, &params)?;
        if q_main != q_oracle {
            q_mismatches.push(json!({"l": l, "main": q_main, "oracle": q_oracle}));
        }
        match verify_psi_transport(sd, l) {
            Ok(c) if !c.pass => psi_failures.push(l),
            Ok(_) => {}
            Err(Error::OracleCap { .. }) => {
                capped_at = Some(l);
                break;
            }
            Err(e) => return Err(e.into()),
        }
        reached = l;
    }
    let main = m_poincare_from(sd.nu(), &rows)?.truncated(reached);
    let from_oracle = oracle.m_generators(reached)?;
    let mu_trivial = oracle.table().mu_is_trivial();
    let mismatches = q_mismatches.len()
        + psi_failures.len()
        + usize::from(main != from_oracle)
        + usize::from(mu_trivial != (sd.order_o() == 1));
    let value = json!({
        "seifert": sd,
        "o": sd.order_o(),
        "mu_trivial": mu_trivial,
        "params": params.labeled(Labeling::ByLeg),
        "checked_up_to": reached,
        "capped_at": capped_at,
        "P_m": main,
        "P_m_oracle": from_oracle,
        "q_mismatches": q_mismatches,
        "psi_failures": psi_failures,
        "mismatches": mismatches,
        "pass": mismatches == 0,
    });
    Ok(JobOutput {
        value,
        code: if mismatches == 0 { 0 } else { 3 },
    })
}

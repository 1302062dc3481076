use super::*;
use crate::arith::rat;
use crate::seifert::fixtures;
use crate::test_support::arb_seifert;
use proptest::prelude::*;

fn m(indices: &[usize]) -> SquareFreeMonomial {
    SquareFreeMonomial::from_indices(indices)
}

fn show(form: &[ParamPoly], labeling: Labeling) -> Vec<String> {
    form.iter().map(|c| c.display_with(|k| labeling.name(k))).collect()
}

fn ints(values: &[i64]) -> Vec<Rational> {
    values.iter().map(|&v| rat_int(v)).collect()
}

#[test]
fn binary_forms() {
    assert_eq!(show(&reduce_to_binary(m(&[1, 2]), 3), Labeling::ByLeg), ["0", "1", "0"]);
    assert_eq!(
        show(&reduce_to_binary(m(&[3, 4]), 3), Labeling::ByLeg),
        ["p3*p4", "p3+p4", "1"]
    );
    assert_eq!(
        show(&reduce_to_binary(m(&[3, 4, 5]), 3), Labeling::ByLeg),
        ["p3*p4*p5", "p3*p4+p3*p5+p4*p5", "p3+p4+p5", "1"]
    );
    // explicit values agree with evaluating the symbolic form
    let values = ints(&[2, -3, 5]);
    for gen in [m(&[1, 3]), m(&[2, 4, 5]), m(&[1, 2, 3, 4, 5])] {
        let symbolic: Vec<Rational> = reduce_to_binary(gen, 3).iter().map(|c| c.eval(&values)).collect();
        assert_eq!(symbolic, binary_form_at(gen, &values));
    }
}

#[test]
fn bilinear_example_jumps_exactly_on_the_discriminant() {
    let sd = fixtures::ex_223377(2);
    let generic = Params::new(6, ints(&[1, 2, 3, 4])).unwrap();
    let special = Params::new(6, ints(&[1, 6, 2, 3])).unwrap();
    assert_eq!(q_at_params(&sd, 42, &generic).unwrap(), 0);
    assert_eq!(q_at_params(&sd, 42, &special).unwrap(), 1);
    let fractional = Params::new(6, vec![rat(1, 2), rat(4, 1), rat(-1, 1), rat(-2, 1)]).unwrap();
    assert_eq!(q_at_params(&sd, 42, &fractional).unwrap(), 1);
    assert_eq!(q_generic(&sd, 42, 5, 0).unwrap().q, 0);
}

#[test]
fn free_and_negative_degrees() {
    let sd = fixtures::ex_223377(2);
    let p = Params::new(6, ints(&[1, 2, 3, 4])).unwrap();
    // X_6 is empty with s = 0
    assert_eq!(q_at_params(&sd, 6, &p).unwrap(), 1);
    // s_1 = -4
    assert_eq!(q_at_params(&sd, 1, &p).unwrap(), 0);
    assert_eq!(q_generic(&sd, 1, 3, 0).unwrap().q, 0);
}

#[test]
fn known_values_in_four_legs() {
    let sd = fixtures::ex_2345();
    let p = Params::new(4, ints(&[7, -2])).unwrap();
    assert_eq!(q_at_params(&sd, 15, &p).unwrap(), 2);
    for l in [16, 20, 30, 36, 60] {
        assert_eq!(q_generic(&sd, l, 5, 0).unwrap().q, 0, "l = {l}");
    }
    let r = classify_degree_at(&sd, 12, &EmbdimOptions::default()).unwrap();
    assert_eq!((r.method, r.q_generic), (Method::EasyCase, 1));
}

#[test]
fn key_formula_degree() {
    let sd = fixtures::ex_223377(3);
    let r = classify_degree_at(&sd, 4, &EmbdimOptions::default()).unwrap();
    assert_eq!((r.s, r.method, r.q_generic), (2, Method::KeyFormula, 2));
}

#[test]
fn bilinear_degree_is_not_topological() {
    let sd = fixtures::ex_223377(2);
    let opts = EmbdimOptions {
        analyze: true,
        ..Default::default()
    };
    let r = classify_degree_at(&sd, 42, &opts).unwrap();
    assert_eq!(r.method, Method::GenericLinearAlgebra);
    assert_eq!(r.topological, Topological::No);
    assert_eq!(show(&r.discriminant_minors, Labeling::FromOne), ["p1*p2-p3*p4"]);
    assert_eq!(show(&r.discriminant_minors, Labeling::ByLeg), ["p3*p4-p5*p6"]);
    let w = r.witness.unwrap();
    let x = w.params.values();
    assert_eq!(&x[0] * &x[1], &x[2] * &x[3]);
    assert_eq!(w.q_at_witness, 1);
    assert_eq!(q_at_params(&sd, 42, &w.params).unwrap(), 1);

    // without the minors pass the degree stays open
    let r = classify_degree_at(&sd, 42, &EmbdimOptions::default()).unwrap();
    assert_eq!(r.topological, Topological::Undecided);
}

#[test]
fn report_for_four_legs() {
    let r = full_report(&fixtures::ex_2345(), &EmbdimOptions::default()).unwrap();
    assert_eq!(r.p_mx_generic.to_string(), "t^6+t^8+t^10+t^11+t^12+2t^15");
    assert_eq!(r.embdim_generic, 7);
    assert!(r.degrees.iter().all(|d| d.topological == Topological::Yes));
    assert!(r.jump_strata.is_empty());
    assert!(r.flags.nu_le_5 && !r.flags.rational_graph && !r.flags.elliptic_gorenstein_graph);
}

#[test]
fn report_for_the_jumping_family() {
    let opts = EmbdimOptions {
        analyze: true,
        ..Default::default()
    };
    let r = full_report(&fixtures::ex_223377(2), &opts).unwrap();
    assert_eq!(r.embdim_generic, 3);
    assert_eq!(r.p_mx_generic.to_string(), "t^6+t^14+t^21");
    assert_eq!(r.jump_strata.len(), 1);
    let j = &r.jump_strata[0];
    assert_eq!(j.discriminant, "p1*p2-p3*p4");
    assert_eq!(j.degrees, [42]);
    assert_eq!(j.embdim, 4);
}

#[test]
fn report_after_lowering_b0() {
    let r = full_report(&fixtures::ex_223377(3), &EmbdimOptions { analyze: true, ..Default::default() }).unwrap();
    assert_eq!(r.p_mx_generic.to_string(), "t^2+2t^3+2t^4+2t^5+2t^6+2t^7");
    assert!(r.degrees.iter().all(|d| d.topological == Topological::Yes));
}

#[test]
fn report_for_e6() {
    let r = full_report(&fixtures::e6(), &EmbdimOptions::default()).unwrap();
    assert_eq!(r.p_mx_generic.to_string(), "t^3+t^4+t^6");
    assert_eq!(r.embdim_generic, 3);
    assert!(r.flags.rational_graph && r.flags.o_equals_1);
    assert_eq!(r.splice_range, Some(SpliceRange { ed_min: 3, ed_max: 3 }));
    assert_eq!(r.closed_forms_checked, ["o_equals_1"]);
}

#[test]
fn automorphic_exceptions_by_both_routes() {
    let plain = EmbdimOptions {
        closed_forms: false,
        ..Default::default()
    };
    for (sd, expected) in closed_forms::automorphic_exceptions() {
        let r = full_report(&sd, &plain).unwrap();
        assert_eq!(r.p_mx_generic, expected, "{sd}");
    }
}

#[test]
fn witness_labels_serialize_in_order() {
    let w = Witness {
        params: Params::new(6, ints(&[1, 6, 2, 3])).unwrap(),
        q_at_witness: 1,
    };
    let json = serde_json::to_string(&w).unwrap();
    assert_eq!(
        json,
        r#"{"params":{"p1":"1","p2":"6","p3":"2","p4":"3"},"params_by_leg":{"p3":"1","p4":"6","p5":"2","p6":"3"},"q_at_witness":1}"#
    );
}

/// Reference value of `Q(l)` at explicit parameters, by a different route:
/// a basis of `(A / I)_s` is `a_1^{s-j} a_2^j`, and `(J(l))_s` is spanned by
/// every degree-`s` monomial of `A` divisible by a generator, each expanded
/// through the substitution.
fn q_reference(comb: &DegreeCombinatorics, nu: usize, values: &[Rational]) -> i64 {
    if comb.s < 0 {
        return 0;
    }
    let s = comb.s as usize;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    // enumerate exponent vectors of degree s in nu variables
    fn walk(i: usize, left: usize, e: &mut Vec<usize>, nu: usize, out: &mut Vec<Vec<usize>>) {
        if i + 1 == nu {
            e.push(left);
            out.push(e.clone());
            e.pop();
            return;
        }
        for k in 0..=left {
            e.push(k);
            walk(i + 1, left - k, e, nu, out);
            e.pop();
        }
    }
    let mut monos = Vec::new();
    walk(0, s, &mut Vec::new(), nu, &mut monos);
    for e in monos {
        let support = e.iter().enumerate().fold(0u32, |acc, (i, &k)| if k > 0 { acc | 1 << i } else { acc });
        if !comb.x.ideal_contains(SquareFreeMonomial::from_mask(support)) {
            continue;
        }
        let mut form = vec![rat_int(1)];
        for (i, &k) in e.iter().enumerate() {
            for _ in 0..k {
                let mut next = vec![Rational::zero(); form.len() + 1];
                for (j, c) in form.iter().enumerate() {
                    let (x, y) = match i {
                        0 => (rat_int(1), rat_int(0)),
                        1 => (rat_int(0), rat_int(1)),
                        _ => (values[i - 2].clone(), rat_int(1)),
                    };
                    next[j] += c * &x;
                    next[j + 1] += c * &y;
                }
                form = next;
            }
        }
        rows.push(form);
    }
    let rank = if rows.is_empty() { 0 } else { crate::linalg::rational_rank(&rows) };
    comb.s + 1 - rank as i64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn q_at_params_matches_reference(sd in arb_seifert(24, 5), seed in 0u64..1000) {
        let s = crate::series::SValues::new(&sd);
        let top = l_max(&sd).min(3 * sd.lcm_alpha()).min(60);
        for l in 1..=top {
            let comb = crate::monomial::x_set_with(&sd, &s, l).unwrap();
            if comb.s > 8 {
                continue;
            }
            let p = params::random_params(sd.nu(), &mut params::stream(seed, l, 0));
            prop_assert_eq!(
                q_at_params_with(&comb, &p).unwrap(),
                q_reference(&comb, sd.nu(), p.values()),
                "l = {}", l
            );
        }
    }

    #[test]
    fn cascade_invariants(sd in arb_seifert(30, 6), seed in 0u64..1000) {
        let opts = EmbdimOptions { seed, ..Default::default() };
        let r = full_report(&sd, &opts).unwrap();
        prop_assert!(r.p_mx_generic.le_coefficientwise(&r.p_m));
        prop_assert_eq!(r.embdim_generic, r.p_mx_generic.eval_one());
        for d in &r.degrees {
            prop_assert!(d.q_generic >= d.combinatorics.n_l as i64);
            if d.method != Method::GenericLinearAlgebra {
                prop_assert_eq!(d.topological, Topological::Yes);
            }
        }
        if sd.is_minimal_rational() {
            prop_assert_eq!(&r.p_mx_generic, &closed_forms::closed_form_minimal_rational(&sd).unwrap());
        }
        // the method of each degree does not depend on the seed
        let other = full_report(&sd, &EmbdimOptions { seed: seed + 1, ..Default::default() }).unwrap();
        let methods = |r: &EmbdimReport| r.degrees.iter().map(|d| (d.l, d.method, d.q_generic)).collect::<Vec<_>>();
        prop_assert_eq!(methods(&r), methods(&other));
    }

    #[test]
    fn reduction_by_common_variables(sd in arb_seifert(30, 6), seed in 0u64..1000) {
        let s = crate::series::SValues::new(&sd);
        for l in 1..=l_max(&sd) {
            let comb = crate::monomial::x_set_with(&sd, &s, l).unwrap();
            if comb.s < 0 || comb.x.is_empty() || comb.contains_one {
                continue;
            }
            let p = params::random_params(sd.nu(), &mut params::stream(seed, l, 3));
            let (gens, s_red) = reduced(&comb);
            let q_red = s_red as i64 + 1 - rank_at(&gens, s_red, p.values()) as i64;
            prop_assert_eq!(q_at_params_with(&comb, &p).unwrap(), q_red + comb.n_l as i64);
        }
    }
}

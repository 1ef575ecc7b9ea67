use super::*;

fn rf(text: &str) -> RatFunc {
    eval_scalar(&parse(text).unwrap()).unwrap()
}

#[test]
fn every_step_is_a_homomorphism_with_inverse() {
    let t = tower();
    for lv in &t.levels()[1..] {
        let st = lv.step.as_ref().unwrap();
        for ((j, i), res) in st.forward.relation_residuals().unwrap() {
            assert!(res.is_zero(), "level {} forward ({j},{i}): {res}", lv.level);
        }
        for ((j, i), res) in st.inverse.relation_residuals().unwrap() {
            assert!(res.is_zero(), "level {} inverse ({j},{i}): {res}", lv.level);
        }
        let round = st.forward.then(&st.inverse).unwrap();
        for k in 1..=RANK {
            assert_eq!(round.image(k), &lv.generator(k).unwrap(), "level {} X{k}", lv.level);
        }
        let back = st.inverse.then(&st.forward).unwrap();
        for k in 1..=RANK {
            assert_eq!(back.image(k), &OreElement::generator(&st.ext, k).unwrap());
        }
        for j in st.l..=RANK {
            assert!(lv.presentation.delta_is_zero(j), "level {} delta_{j}", lv.level);
        }
    }
}

#[test]
fn first_step_matches_hand_values() {
    let st = tower().level(6).unwrap().step.as_ref().unwrap();
    let y1 = st.forward.image(1);
    let x = |k| OreElement::generator(&st.ext, k).unwrap();
    let expected = &x(1)
        - &x(5)
            .mul(&x(6).inverse().unwrap())
            .unwrap()
            .scale(&rf("(1 - r^-3*s^3)^-1"));
    assert_eq!(y1, &expected);
    assert_eq!(st.forward.image(5), &x(5));
    assert_eq!(st.q.as_ref().unwrap(), &rf("r^-3*s^3"));
    let step3 = tower().level(3).unwrap().step.as_ref().unwrap();
    let u = |k| OreElement::generator(&step3.ext, k).unwrap();
    let t1 = &u(1)
        - &u(2)
            .mul(&u(3).inverse().unwrap())
            .unwrap()
            .scale(&rf("(1 - r^-1*s)^-1"));
    assert_eq!(step3.forward.image(1), &t1);
}

#[test]
fn identity_steps() {
    for l in [2, 1] {
        let st = tower().level(l).unwrap().step.as_ref().unwrap();
        assert!(st.q.is_none());
        for k in 1..=RANK {
            assert_eq!(st.forward.image(k), &OreElement::generator(&st.ext, k).unwrap());
        }
    }
    assert!(tower().torus().is_torus_like());
    assert_eq!(tower().torus().invertible_set(), (1..=RANK).collect::<Vec<_>>());
}

#[test]
fn terminal_relations_match_the_table() {
    let rels = torus_relations().unwrap();
    assert_eq!(rels.len(), 15);
    for r in rels {
        assert_eq!(r.computed, r.printed, "T{}T{}", r.i, r.j);
    }
}

#[test]
fn closed_forms_mismatch_only_where_expected() {
    let report = closed_form_report().unwrap();
    assert_eq!(report.len(), 48);
    let bad: Vec<&str> = report.iter().filter(|c| !c.matches).map(|c| c.label.as_str()).collect();
    for c in report.iter().filter(|c| !c.matches) {
        eprintln!(
            "{} [{}]\n  computed {}\n  printed  {}",
            c.label, c.citation, c.computed, c.printed
        );
    }
    assert_eq!(bad, ["Y2", "Z2", "U3", "X2 in Y", "Y2 in Z"]);
}

#[test]
fn printed_formulas_break_relations_exactly_where_they_differ() {
    // each list is the set of relations mentioning the misprinted generator, directly or through P
    assert_eq!(
        printed_forward_failures(6).unwrap(),
        [(2, 1), (3, 1), (3, 2), (4, 2), (5, 2), (6, 2)]
    );
    assert_eq!(
        printed_forward_failures(5).unwrap(),
        [(2, 1), (3, 1), (3, 2), (4, 2), (5, 2)]
    );
    assert_eq!(
        printed_forward_failures(4).unwrap(),
        [(3, 1), (3, 2), (4, 3), (5, 3), (6, 3)]
    );
    assert!(printed_forward_failures(3).unwrap().is_empty());
}

#[test]
fn conversions() {
    let t = tower();
    let x5 = t.level(7).unwrap().generator(5).unwrap();
    let down = t.convert(&x5, 7, 1).unwrap();
    assert_eq!(down, t.level(1).unwrap().generator(5).unwrap());
    let t6_inv = t.level(1).unwrap().generator(6).unwrap().inverse().unwrap();
    assert!(matches!(
        t.convert(&t6_inv, 1, 7),
        Err(CauchonError::NotAMember { level: 7, .. })
    ));
    for k in 1..=RANK {
        let x = t.level(7).unwrap().generator(k).unwrap();
        let low = t.convert(&x, 7, 1).unwrap();
        assert_eq!(t.convert(&low, 1, 7).unwrap(), x, "X{k}");
    }
    assert_eq!(t.eval_at("X5 + T5", 1).unwrap(), down.scale(&RatFunc::from_int(2)));
    assert!(t.eval_at("Y1", 7).is_err());
}

#[test]
fn u3_identity_recursion() {
    for k in 1..=6 {
        let id = u3_identity(k).unwrap();
        assert!(id.two_terms, "k = {k}: {}", id.product);
        assert_eq!(id.leading, rf("r^2*s").pow(k as i64).unwrap(), "k = {k}");
        assert_eq!(id.d_computed, id.d_recursive, "k = {k}");
    }
}

#[test]
fn u3_decomposition_is_unique() {
    let pres = g4_with_u3_inverted();
    let mut parts = BTreeMap::new();
    let b = |e: [i32; 6], c: &str| OreElement::monomial(&pres, &e, rf(c)).unwrap();
    parts.insert(-2, &b([1, 0, 0, 2, 0, -1], "r") + &b([0, 1, 0, 0, -3, 0], "1 - s"));
    parts.insert(0, b([2, 1, 0, 0, 1, 1], "3"));
    parts.insert(3, b([0, 0, 0, -1, 0, 0], "r*s^-1"));
    let a = u3_recompose(&parts).unwrap();
    assert_eq!(u3_decomposition(&a).unwrap(), parts);
    assert_eq!(u3_recompose(&u3_decomposition(&a).unwrap()).unwrap(), a);
}

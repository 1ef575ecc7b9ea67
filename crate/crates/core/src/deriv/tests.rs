use super::*;
use crate::cauchon::tower;
use crate::g2::{entries_of, x};

fn int(n: i64) -> RatFunc {
    RatFunc::from_int(n)
}

fn weight(which: usize, i: usize) -> i64 {
    let e = crate::g2::entry("weight", &[&which.to_string(), &i.to_string()]).unwrap();
    e.payload.trim().parse().unwrap()
}

#[test]
fn diagonal_derivations_scale_root_vectors_by_their_weights() {
    for (which, d) in [(5, Derivation::d5()), (6, Derivation::d6())] {
        let vals = d.on_generators().unwrap();
        for i in 1..=RANK {
            assert_eq!(vals[i - 1], x(i).scale(&int(weight(which, i))), "D{which}(X{i})");
        }
    }
}

#[test]
fn leibniz_on_products_and_inverses() {
    let d5 = Derivation::d5();
    let a = x(1).mul(&x(2)).unwrap();
    assert_eq!(d5.apply(&a).unwrap(), a.scale(&int(4)));
    let sq = x(3).pow(2).unwrap();
    assert_eq!(d5.apply(&sq).unwrap(), sq.scale(&int(4)));

    let ext = Derivation::d6().extend().unwrap();
    let t6 = tower().level(1).unwrap().generator(6).unwrap();
    let t6i = t6.inverse().unwrap();
    assert_eq!(ext.apply(&t6i).unwrap(), -&t6i);
    assert_eq!(ext.apply(&t6).unwrap(), t6);
}

#[test]
fn inner_derivation_on_e2() {
    let d = Derivation::ad(&x(1)).unwrap();
    let s3 = RatFunc::s().pow(-3).unwrap();
    let want = &x(1).mul(&x(6)).unwrap().scale(&(&RatFunc::one() - &s3)) + &x(5).scale(&s3);
    assert_eq!(d.e2(), &want);
    assert!(d.e1().is_zero());
}

#[test]
fn every_candidate_derivation_respects_serre() {
    for d in [
        Derivation::d5(),
        Derivation::d6(),
        Derivation::ad(&x(4)).unwrap(),
        Derivation::ad(&x(2).mul(&x(5)).unwrap()).unwrap(),
    ] {
        assert!(check_derivation(&d).unwrap().valid);
    }
    // e1 -> e2, e2 -> 0 breaks the first relation
    let bad = Derivation::new(x(6), OreElement::zero(&crate::g2::presentation())).unwrap();
    let chk = check_derivation(&bad).unwrap();
    assert!(!chk.valid);
    assert!(matches!(decompose(&bad), Err(DerivError::NotADerivation(..))));
}

#[test]
fn torus_image_of_an_inner_derivation_is_inner() {
    let g7 = x(1);
    let g1 = tower().convert(&g7, TOP, 1).unwrap();
    let m = g2_matrix();
    let gt = TorusElement::from_ore(&m, &g1).unwrap();
    let want = TorusDerivationData::inner(&gt).unwrap();
    let got = push_to_torus(&Derivation::ad(&g7).unwrap()).unwrap();
    assert_eq!(got, want);
}

#[test]
fn extension_agrees_with_leibniz_after_conversion() {
    // D commutes with the tower maps: D(convert(a)) = convert(D(a))
    let d = Derivation::ad(&x(3))
        .unwrap()
        .add(&Derivation::d6().scale(&RatFunc::r()));
    let ext = d.extend().unwrap();
    let a = &x(2).mul(&x(4)).unwrap() + &x(5).pow(2).unwrap();
    let da = d.apply(&a).unwrap();
    for l in 1..TOP {
        let down = tower().convert(&a, TOP, l).unwrap();
        assert_eq!(
            ext.apply(&down).unwrap(),
            tower().convert(&da, TOP, l).unwrap(),
            "level {l}"
        );
    }
}

#[test]
fn decompositions_recover_their_parts() {
    let g = &x(2).mul(&x(3)).unwrap() + &x(6).scale(&RatFunc::s());
    let (m5, m6) = (RatFunc::r(), &int(2) - &RatFunc::s());
    let d = Derivation::ad(&g)
        .unwrap()
        .add(&Derivation::d5().scale(&m5))
        .add(&Derivation::d6().scale(&m6));
    let r = decompose(&d).unwrap();
    assert_eq!(r.mu5, m5);
    assert_eq!(r.mu6, m6);
    assert_eq!(r.g, g);
    assert_eq!(r.mu_full.len(), RANK);
    assert!(r.diagnostics.iter().any(|l| l == "g in G^7"));

    let r = decompose(&Derivation::d5()).unwrap();
    assert!(r.g.is_zero());
    assert_eq!((r.mu5, r.mu6), (RatFunc::one(), RatFunc::zero()));
}

#[test]
fn mu_relations_are_consistent_with_the_weights() {
    // each relation vector must kill both weight vectors
    for e in entries_of("mu-relation") {
        let c = int_row(&e.payload, e.line).unwrap();
        for which in [5, 6] {
            let s: i64 = (1..=RANK).map(|i| c[i - 1] * weight(which, i)).sum();
            assert_eq!(s, 0, "relation {}", e.args[0]);
        }
    }
    for e in entries_of("mu-solution") {
        let l = e.int_arg(0).unwrap();
        let ab = int_row(&e.payload, e.line).unwrap();
        // D5 has (mu5, mu6) = (1, 0) and D6 has (0, 1)
        assert_eq!(ab, vec![weight(5, l), weight(6, l)], "mu{l}");
    }
}

#[test]
fn hh1_is_two_dimensional() {
    let rep = hh1_report().unwrap();
    assert_eq!(rep.dimension, 2);
    let inner: Vec<_> = rep.certificates.iter().filter(|c| c.label.starts_with("ad(")).collect();
    assert_eq!(inner.len(), 3);
    for c in inner {
        assert!(c.mu5.is_zero() && c.mu6.is_zero(), "{}", c.label);
    }
}

#[test]
fn input_files() {
    let d = parse_derivation("# D5\nD(e1) = e1\nD(e2) = 0\n").unwrap();
    assert_eq!(d, Derivation::d5());
    let d = parse_derivation("D(e2) = X6\nD( e1 ) = -X1\n").unwrap();
    assert_eq!(d, Derivation::d6());
    for (text, line) in [
        ("D(e1) = e1\nD(e3) = 0\n", 2),
        ("D(e1) = e1\nD(e1) = 0\n", 2),
        ("D(e1) = (X1\nD(e2) = 0\n", 1),
        ("D(e1) = e1\n", 1),
        ("D(e1) e1\n", 1),
    ] {
        match parse_derivation(text) {
            Err(DerivError::Input { line: got, .. }) => assert_eq!(got, line, "{text:?}"),
            other => panic!("{text:?}: {other:?}"),
        }
    }
}

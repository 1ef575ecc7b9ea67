use super::*;
use crate::coeff::RatFunc;
use crate::ore::{apply_delta, apply_sigma, check_sigma_delta_commutation, diamond_check, local_nilpotency_check};

fn rf(text: &str) -> RatFunc {
    eval_scalar(&parse(text).unwrap()).unwrap()
}

#[test]
fn table_lookups() {
    let p = presentation();
    assert_eq!(p.lambda(6, 1), &rf("s^-3"));
    assert_eq!(p.p(3, 1).to_string(), "-r^-2*s^-1 * X2");
    assert!(p.p(5, 4).is_zero());
    assert_eq!(p.p(5, 1).to_string(), "-r^-1*s^-2 * X3");
    let c = constants().unwrap();
    assert_eq!(c.q[&4], rf("r^-3*s^3"));
    assert_eq!(c.q[&6], c.q[&4]);
    assert_eq!(c.q[&3], rf("r^-1*s"));
    assert_eq!(c.q[&5], c.q[&3]);
    assert_eq!(&c.zeta * &rf("r + s"), rf("r^3 - s^3"));
}

#[test]
fn all_overlaps_resolve() {
    let res = diamond_check(&presentation()).unwrap();
    assert_eq!(res.len(), 20);
    for d in res {
        assert!(d.residual.is_zero(), "{:?}: {}", d.triple, d.residual);
    }
}

#[test]
fn serre_relations_vanish() {
    assert!(serre_residual(1).unwrap().is_zero());
    assert!(serre_residual(2).unwrap().is_zero());
    assert!(!perturbed_serre_residual().unwrap().is_zero());
    assert!(matches!(serre_residual(3), Err(G2Error::Missing(_))));
}

#[test]
fn root_vectors_match() {
    for i in 1..=RANK {
        let r = root_vector_residual(i).unwrap();
        assert!(r.is_zero(), "X{i}: {r}");
    }
}

#[test]
fn straightening_identities_agree() {
    for j in 2..=RANK {
        for i in 1..j {
            let (l, r) = relation_sides(j, i).unwrap();
            assert_eq!(l, r, "X{j}X{i}");
        }
    }
}

#[test]
fn printed_p51_is_not_the_relation() {
    let printed = eval_in_u(&presentation(), &entry("p-printed", &["5", "1"]).unwrap().payload).unwrap();
    assert_ne!(printed, presentation().p(5, 1));
}

#[test]
fn skew_derivation_data() {
    let pres = presentation();
    assert_eq!(x(2).mul(&x(1)).unwrap().to_string(), "r^-3 * X1*X2");
    assert_eq!(apply_delta(6, &x(1)).unwrap().to_string(), "-s^-3 * X5");
    assert_eq!(apply_sigma(6, &x(4)).unwrap(), x(4).scale(&rf("r^-6*s^-3")));
    let c = constants().unwrap();
    for l in 3..=RANK {
        let below: Vec<OreElement> = (1..l).map(x).collect();
        assert!(check_sigma_delta_commutation(l, &c.q[&l], &below).unwrap(), "l = {l}");
        assert!(
            !check_sigma_delta_commutation(l, &RatFunc::one(), &below).unwrap(),
            "l = {l}"
        );
        assert!(!local_nilpotency_check(&pres, l, 16).unwrap().is_empty());
    }
}

#[test]
fn dump_round_trips_through_the_builder() {
    let text = presentation_dump(&presentation());
    assert!(text.starts_with("generators X1 X2 X3 X4 X5 X6\ninvertible none\n"));
    assert!(text.contains("lambda 6 1 = s^-3\n"));
    let mut b = PresentationBuilder::with_prefix("X", RANK);
    let target = FreeTarget {
        letter: x_letters(Family::X),
    };
    for line in text.lines().skip(2) {
        let (head, rhs) = line.split_once(" = ").unwrap();
        let w: Vec<&str> = head.split(' ').collect();
        let (j, i) = (w[1].parse().unwrap(), w[2].parse().unwrap());
        let e = parse(rhs).unwrap();
        if w[0] == "lambda" {
            b.lambda(j, i, eval_scalar(&e).unwrap());
        } else {
            let f: FreeWordExpr = eval(&target, &e).unwrap();
            for word in f.to_words() {
                b.p_term(j, i, word);
            }
        }
    }
    assert!(b.build().unwrap().same_as(&presentation()));
}

use super::*;
use std::sync::Arc;

fn toy() -> Arc<OrePresentation> {
    // X2 X1 = r X1 X2, X3 X1 = r X1 X3 + 1, X3 X2 = r X2 X3
    let mut b = PresentationBuilder::with_prefix("X", 3);
    b.lambda(2, 1, RatFunc::r())
        .lambda(3, 1, RatFunc::r())
        .lambda(3, 2, RatFunc::r())
        .p_term(3, 1, Word::new(vec![]));
    b.build().unwrap()
}

fn gen(p: &Arc<OrePresentation>, k: usize) -> OreElement {
    OreElement::generator(p, k).unwrap()
}

#[test]
fn straightens_simple_swap() {
    let p = toy();
    let x = OreElement::from_word(&p, &Word::gens(&[2, 1])).unwrap();
    assert_eq!(x.to_string(), "r * X1*X2");
    let y = OreElement::from_word(&p, &Word::gens(&[3, 1])).unwrap();
    assert_eq!(y.to_string(), "r * X1*X3 + 1");
}

#[test]
fn toy_is_confluent() {
    let p = toy();
    for d in diamond_check(&p).unwrap() {
        assert!(d.residual.is_zero(), "{:?}", d.triple);
    }
}

#[test]
fn nilpotency_of_constant_derivation() {
    let p = toy();
    assert_eq!(local_nilpotency_check(&p, 3, 10).unwrap(), vec![2, 1]);
    assert_eq!(local_nilpotency_check(&p, 2, 10).unwrap(), vec![1]);
}

#[test]
fn localized_inverse_behaves() {
    let p = toy().localize(&[3]).unwrap();
    let x1 = gen(&p, 1);
    let x3 = gen(&p, 3);
    let x3i = x3.inverse().unwrap();
    assert_eq!(x3.mul(&x3i).unwrap(), OreElement::one(&p));
    assert_eq!(x3i.mul(&x3).unwrap(), OreElement::one(&p));
    let a = x3i.mul(&x1).unwrap();
    // X3^-1 X1 = r^-1 X1 X3^-1 - r^-1 X3^-2
    assert_eq!(a.to_string(), "r^-1 * X1*X3^-1 - r^-1 * X3^-2");
    let back = x3.mul(&a).unwrap().mul(&x3).unwrap();
    assert_eq!(back, x1.mul(&x3).unwrap());
}

#[test]
fn descending_order_is_a_basis_change() {
    let p = toy();
    let x = gen(&p, 1).mul(&gen(&p, 3)).unwrap();
    // X1 X3 = r^-1 X3 X1 - r^-1
    assert_eq!(
        x.display_with(MonomialOrder::Descending).unwrap(),
        "r^-1 * X3*X1 - r^-1"
    );
}

#[test]
fn invalid_inputs_are_rejected() {
    let p = toy();
    assert!(matches!(
        OreElement::from_word(&p, &Word::new(vec![(1, -1)])),
        Err(OreError::NegativeExponent { .. })
    ));
    assert!(matches!(
        OreElement::from_word(&p, &Word::new(vec![(4, 1)])),
        Err(OreError::InvalidGenerator { .. })
    ));
    let q = toy().localize(&[3]).unwrap();
    let other = q.with_budget(5);
    assert!(gen(&q, 1).mul(&gen(&other, 1)).is_ok());
    assert!(matches!(
        gen(&p, 1).mul(&gen(&q, 1)),
        Err(OreError::PresentationMismatch)
    ));
    assert!(matches!(
        OreElement::from_word(&other, &Word::gens(&[3, 3, 1, 1, 1])),
        Err(OreError::BudgetExceeded { budget: 5 })
    ));
}

#[test]
fn inverting_two_linked_generators_fails() {
    assert!(matches!(
        toy().localize(&[1, 3]),
        Err(OreError::UnsupportedLocalization { j: 3, i: 1 })
    ));
}

#[test]
fn sigma_and_delta_on_toy() {
    let p = toy();
    let x1 = gen(&p, 1);
    let x2 = gen(&p, 2);
    assert_eq!(apply_sigma(3, &x1).unwrap(), x1.scale(&RatFunc::r()));
    assert_eq!(apply_delta(3, &x1).unwrap(), OreElement::one(&p));
    assert!(apply_delta(3, &gen(&p, 3)).is_err());
    // delta(X1 X2) = sigma(X1) delta(X2) + delta(X1) X2 = X2
    let prod = x1.mul(&x2).unwrap();
    assert_eq!(apply_delta(3, &prod).unwrap(), x2);
    assert!(check_sigma_delta_commutation(3, &RatFunc::r().inv().unwrap(), &[x1.clone(), x2]).unwrap());
    assert!(!check_sigma_delta_commutation(3, &RatFunc::one(), &[x1]).unwrap());
}

#[test]
fn substitution_respects_relations() {
    let p = toy();
    // identity map
    let ims: Vec<_> = (1..=3).map(|k| gen(&p, k)).collect();
    let s = Substitution::new(&p, &p, ims).unwrap();
    for (_, r) in s.relation_residuals().unwrap() {
        assert!(r.is_zero());
    }
    let e = gen(&p, 3).mul(&gen(&p, 1)).unwrap();
    assert_eq!(s.apply(&e).unwrap(), e);
}

use super::*;
use crate::coeff::{zeta, RatFunc};

#[test]
fn parses_products_and_powers() {
    let e = parse("X6*X5").unwrap();
    assert_eq!(
        e,
        Expr::Mul(Box::new(Expr::gen(Family::X, 6)), Box::new(Expr::gen(Family::X, 5)))
    );
    let p = parse("X6^-1 * X1").unwrap();
    assert_eq!(p.to_string(), "X6^-1*X1");
    assert_eq!(parse("r^(-3)").unwrap(), parse("r^-3").unwrap());
}

#[test]
fn scalar_evaluation() {
    let z = eval_scalar(&parse("(r^3 - s^3)/(r+s)").unwrap()).unwrap();
    assert_eq!(z, zeta());
    let x = eval_scalar(&parse("-2*r^-1 + 3/4").unwrap()).unwrap();
    assert_eq!(x.to_string(), "3/4 - 2*r^-1");
    assert!(matches!(
        eval_scalar(&parse("X1 + 1").unwrap()),
        Err(EvalError::UnknownSymbol(_))
    ));
    assert!(eval_scalar(&parse("1/(r - r)").unwrap()).is_err());
}

#[test]
fn printing_is_a_fixed_point() {
    for s in [
        "a",
        "X1 - (X2 - X3)",
        "-(r + s)^2*X1",
        "2*-3",
        "(1 - r^-1*s)^-2/(1 + r^-1*s)*Y4*Y5^-2",
        "--X1 - -X2",
        "((X1))",
    ] {
        let Ok(e) = parse(s) else { continue };
        let once = e.to_string();
        let twice = parse(&once).unwrap().to_string();
        assert_eq!(once, twice, "{s}");
    }
}

#[test]
fn minimal_parentheses() {
    let e = Expr::Sub(
        Box::new(Expr::gen(Family::X, 1)),
        Box::new(Expr::Add(Box::new(Expr::gen(Family::X, 2)), Box::new(Expr::int(3)))),
    );
    assert_eq!(e.to_string(), "X1 - (X2 + 3)");
    let p = Expr::Pow(Box::new(Expr::Neg(Box::new(Expr::Const(Constant::R)))), 2);
    assert_eq!(p.to_string(), "(-r)^2");
    assert_eq!(parse(&p.to_string()).unwrap().strip_groups(), p);
}

#[test]
fn errors_carry_position_and_expectations() {
    let err = parse("X1 +\n  * X2").unwrap_err();
    assert_eq!((err.line, err.col), (2, 3));
    assert!(err.expected.iter().any(|s| s == "identifier"));
    let err = parse("X1 X2").unwrap_err();
    assert_eq!((err.line, err.col), (1, 4));
    let err = parse("foo").unwrap_err();
    assert_eq!(err.col, 1);
    assert!(parse("X1^").is_err());
    assert!(parse("(X1").is_err());
}

#[test]
fn free_words() {
    let t = FreeTarget {
        letter: |g: GenRef| (g.family == Family::E).then_some(g.index),
    };
    let w = eval(&t, &parse("e2^2*e1 - r*e1*e2 + e1*e2").unwrap()).unwrap();
    assert_eq!(w.terms().len(), 2);
    assert_eq!(w.terms()[&vec![2, 2, 1]], RatFunc::one());
    assert_eq!(w.terms()[&vec![1, 2]], &RatFunc::one() - &RatFunc::r());
}

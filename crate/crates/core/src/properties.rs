use crate::checks::random_element;
use crate::coeff::{BiPoly, RatFunc};
use crate::expr::{eval_scalar, parse, Constant, Expr, Family, GenRef};
use crate::g2;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn poly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(((0u32..3, 0u32..3), -4i64..=4), 1..4)
        .prop_map(|ts| BiPoly::from_terms(ts.into_iter().map(|(e, c)| (e, q(c)))))
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(), poly().prop_filter("nonzero", |p| !p.is_zero())).prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

proptest! {
    #[test]
    fn field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        let zero = RatFunc::zero();
        let one = RatFunc::one();
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &zero, a.clone());
        prop_assert_eq!(&a * &one, a.clone());
        prop_assert!((&a - &a.clone()).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            prop_assert_eq!((&b * &a).checked_div(&a).unwrap(), b.clone());
        } else {
            prop_assert!(a.inv().is_err());
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in ratfunc(), b in ratfunc()) {
        for (r0, s0) in [(q(2), q(3)), (q(5), q(7))] {
            let (Ok(x), Ok(y)) = (a.eval(&r0, &s0), b.eval(&r0, &s0)) else { continue };
            prop_assert_eq!((&a + &b).eval(&r0, &s0).unwrap(), &x + &y);
            prop_assert_eq!((&a - &b).eval(&r0, &s0).unwrap(), &x - &y);
            prop_assert_eq!((&a * &b).eval(&r0, &s0).unwrap(), &x * &y);
            if y != q(0) {
                prop_assert_eq!(a.checked_div(&b).unwrap().eval(&r0, &s0).unwrap(), x / y);
            }
        }
    }

    #[test]
    fn scalars_print_and_parse_back(a in ratfunc()) {
        let back = eval_scalar(&parse(&a.to_string()).unwrap()).unwrap();
        prop_assert_eq!(back, a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn multiplication_is_associative(seed in any::<u64>()) {
        let pres = g2::presentation();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_element(&mut rng, &pres, 3, 2);
        let b = random_element(&mut rng, &pres, 3, 2);
        let c = random_element(&mut rng, &pres, 3, 2);
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn elements_print_and_parse_back(seed in any::<u64>()) {
        let pres = g2::presentation();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_element(&mut rng, &pres, 4, 3);
        prop_assert_eq!(g2::eval_in_u(&pres, &a.to_string()).unwrap(), a);
    }
}

fn leaf() -> impl Strategy<Value = Expr> {
    let constants = [Constant::R, Constant::S, Constant::Xi, Constant::Eta, Constant::Zeta];
    prop_oneof![
        (0i64..30).prop_map(Expr::int),
        prop::sample::select(constants.to_vec()).prop_map(Expr::Const),
        (1usize..=2).prop_map(|i| Expr::Gen(GenRef::new(Family::E, i))),
        (
            prop::sample::select(vec![Family::X, Family::Y, Family::Z, Family::U, Family::T]),
            1usize..=6
        )
            .prop_map(|(f, i)| Expr::gen(f, i)),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(4, 24, 2, |inner| {
        let b = |e: Expr| Box::new(e);
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Add(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Sub(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Mul(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Div(b(x), b(y))),
            inner.clone().prop_map(move |x| Expr::Neg(b(x))),
            (inner.clone(), -3i64..=4).prop_map(move |(x, k)| Expr::Pow(b(x), k)),
            inner.prop_map(move |x| Expr::Group(b(x))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn expressions_print_and_parse_back(e in expr()) {
        let text = e.to_string();
        let back = parse(&text).unwrap_or_else(|err| panic!("{text}: {err}"));
        prop_assert_eq!(back.strip_groups(), e.strip_groups(), "{}", text);
    }
}

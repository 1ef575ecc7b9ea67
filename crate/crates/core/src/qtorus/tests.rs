use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::cauchon::tower;

fn rand_vec(rng: &mut ChaCha8Rng, n: usize, bound: i32) -> Vec<i32> {
    (0..n).map(|_| rng.gen_range(-bound..=bound)).collect()
}

fn rand_coeff(rng: &mut ChaCha8Rng) -> RatFunc {
    let c = RatFunc::from_int(rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 });
    &c * &RatFunc::rs(rng.gen_range(-2..=2), rng.gen_range(-2..=2))
}

fn rand_elem(rng: &mut ChaCha8Rng, m: &Arc<CommutationMatrix>, size: usize, bound: i32) -> TorusElement {
    let mut x = TorusElement::zero(m);
    for _ in 0..size {
        let t = TorusElement::monomial(m, &rand_vec(rng, m.n(), bound), rand_coeff(rng)).unwrap();
        x = x.add(&t).unwrap();
    }
    x
}

#[test]
fn g2_matrix_values() {
    let m = g2_matrix();
    assert_eq!(m.q(1, 6), RatFunc::rs(0, 3));
    assert_eq!(m.q(2, 5), RatFunc::rs(3, 3));
    let t1 = TorusElement::generator_pow(&m, 1, 1);
    let t6 = TorusElement::generator_pow(&m, 6, 1);
    assert_eq!(t1.mul(&t6).unwrap(), t6.mul(&t1).unwrap().scale(&RatFunc::rs(0, 3)));
    let t3 = TorusElement::generator_pow(&m, 3, 1);
    let t5 = TorusElement::generator_pow(&m, 5, 1);
    assert_eq!(
        t1.mul(&t3).unwrap().mul(&t5).unwrap(),
        t1.mul(&t3.mul(&t5).unwrap()).unwrap()
    );
    let x = TorusElement::monomial(&m, &[1, -2, 0, 3, 0, 1], RatFunc::r()).unwrap();
    assert_eq!(x.mul(&TorusElement::scalar(&m, RatFunc::one())).unwrap(), x);
    assert_eq!(
        x.mul(&x.inverse_monomial().unwrap()).unwrap(),
        TorusElement::scalar(&m, RatFunc::one())
    );
}

#[test]
fn rejects_bad_matrices() {
    let one = RatFunc::one();
    let q = vec![vec![one.clone(), &RatFunc::r() + &one], vec![one.clone(), one.clone()]];
    assert!(matches!(
        CommutationMatrix::new(&q),
        Err(TorusError::NotMonomial { .. })
    ));
    let q = vec![vec![one.clone(), RatFunc::r()], vec![RatFunc::r(), one.clone()]];
    assert!(matches!(CommutationMatrix::new(&q), Err(TorusError::NotInverse { .. })));
    assert!(matches!(
        CommutationMatrix::from_presentation(&crate::g2::presentation()),
        Err(TorusError::NotATorus)
    ));
}

#[test]
fn product_agrees_with_the_rewriting_engine() {
    let m = g2_matrix();
    let pres = tower().torus().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..30 {
        let a = rand_elem(&mut rng, &m, 3, 2);
        let b = rand_elem(&mut rng, &m, 3, 2);
        let via_engine = a.to_ore(&pres).unwrap().mul(&b.to_ore(&pres).unwrap()).unwrap();
        assert_eq!(TorusElement::from_ore(&m, &via_engine).unwrap(), a.mul(&b).unwrap());
    }
}

#[test]
fn bicharacter_and_associativity() {
    let m = g2_matrix();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let (a, a2, b) = (
            rand_vec(&mut rng, 6, 4),
            rand_vec(&mut rng, 6, 4),
            rand_vec(&mut rng, 6, 4),
        );
        let sum: Vec<i32> = a.iter().zip(&a2).map(|(x, y)| x + y).collect();
        assert_eq!(m.chi(&sum, &b), &m.chi(&a, &b) * &m.chi(&a2, &b));
        assert_eq!(m.chi(&b, &sum), &m.chi(&b, &a) * &m.chi(&b, &a2));
        // T^a T^a = chi(a, a) T^2a and the commutator of T^a with itself is trivial
        let (x, y) = m.chi_exps(&a, &a);
        let twice: Vec<i32> = a.iter().map(|v| 2 * v).collect();
        let ta = TorusElement::monomial(&m, &a, RatFunc::one()).unwrap();
        assert_eq!(
            ta.mul(&ta).unwrap(),
            TorusElement::monomial(&m, &twice, RatFunc::rs(x, y)).unwrap()
        );
    }
    for _ in 0..200 {
        let a = rand_elem(&mut rng, &m, 2, 3);
        let b = rand_elem(&mut rng, &m, 2, 3);
        let c = rand_elem(&mut rng, &m, 2, 3);
        assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }
}

fn brute_force_center(m: &CommutationMatrix, bound: i32) -> Vec<Vec<i32>> {
    let n = m.n();
    let mut out = Vec::new();
    let mut g = vec![-bound; n];
    loop {
        if (1..=n).all(|k| m.kappa_exps(k, &g) == (0, 0)) {
            out.push(g.clone());
        }
        let mut i = 0;
        while i < n && g[i] == bound {
            g[i] = -bound;
            i += 1;
        }
        if i == n {
            return out;
        }
        g[i] += 1;
    }
}

fn lattice_contains(basis: &[Vec<i64>], g: &[i32]) -> bool {
    // solve over Q by brute force on small coefficients
    let target: Vec<i64> = g.iter().map(|&x| i64::from(x)).collect();
    let k = basis.len();
    if k == 0 {
        return target.iter().all(|&x| x == 0);
    }
    let range = -6..=6i64;
    let mut coeffs = vec![-6; k];
    loop {
        let v: Vec<i64> = (0..target.len())
            .map(|i| (0..k).map(|j| coeffs[j] * basis[j][i]).sum())
            .collect();
        if v == target {
            return true;
        }
        let mut i = 0;
        while i < k && coeffs[i] == *range.end() {
            coeffs[i] = *range.start();
            i += 1;
        }
        if i == k {
            return false;
        }
        coeffs[i] += 1;
    }
}

#[test]
fn centers() {
    assert!(center_kernel(&g2_matrix()).unwrap().is_empty());
    assert_eq!(brute_force_center(&g2_matrix(), 2), vec![vec![0; 6]]);
    assert_eq!(center_kernel(&CommutationMatrix::trivial(6)).unwrap().len(), 6);

    // rank-2 toy T1 T2 = r T2 T1: only g = 0 is central
    let one = RatFunc::one();
    let toy =
        CommutationMatrix::new(&[vec![one.clone(), RatFunc::r()], vec![RatFunc::rs(-1, 0), one.clone()]]).unwrap();
    let k = center_kernel(&toy).unwrap();
    assert!(k.is_empty());
    assert_eq!(brute_force_center(&toy, 3), vec![vec![0, 0]]);

    // three generators with T1 T2 = r T2 T1, T3 central, T1 T3 = T3 T1: kernel spanned by e3
    let q = vec![
        vec![one.clone(), RatFunc::r(), one.clone()],
        vec![RatFunc::rs(-1, 0), one.clone(), one.clone()],
        vec![one.clone(), one.clone(), one.clone()],
    ];
    let m3 = CommutationMatrix::new(&q).unwrap();
    let k3 = center_kernel(&m3).unwrap();
    let found = brute_force_center(&m3, 3);
    assert_eq!(found.len(), 7);
    for g in &found {
        assert!(lattice_contains(&k3, g));
    }
    for v in &k3 {
        let g: Vec<i32> = v.iter().map(|&x| x as i32).collect();
        assert!((1..=3).all(|kk| m3.kappa_exps(kk, &g) == (0, 0)));
    }

    // r^2 s^-1 style scalars: T1 T2 = r^2 s^-1, T1 T3 = r^-4 s^2 makes T2^2 T3 central
    let q = vec![
        vec![one.clone(), RatFunc::rs(2, -1), RatFunc::rs(-4, 2)],
        vec![RatFunc::rs(-2, 1), one.clone(), one.clone()],
        vec![RatFunc::rs(4, -2), one.clone(), one.clone()],
    ];
    let m4 = CommutationMatrix::new(&q).unwrap();
    let k4 = center_kernel(&m4).unwrap();
    assert_eq!(k4.len(), 1);
    for g in brute_force_center(&m4, 3) {
        assert!(lattice_contains(&k4, &g));
    }
}

#[test]
fn printed_forms_against_computed() {
    let checks = center_form_checks(&g2_matrix()).unwrap();
    assert_eq!(checks.len(), 12);
    let bad: Vec<(usize, &str)> = checks
        .iter()
        .filter(|c| !c.matches())
        .map(|c| (c.generator, c.variable.as_str()))
        .collect();
    assert_eq!(bad, [(3, "r")]);
    let c = checks.iter().find(|c| !c.matches()).unwrap();
    assert_eq!(c.computed, [-2, -3, 0, 3, 2, 3]);
}

#[test]
fn decomposition_examples() {
    let m = g2_matrix();
    let mu: Vec<RatFunc> = (1..=6).map(RatFunc::from_int).collect();
    let s = torus_derivation_decompose(&TorusDerivationData::diagonal(&m, &mu)).unwrap();
    assert!(s.g.is_zero());
    assert_eq!(s.mu, mu);

    let g = TorusElement::monomial(&m, &[1, 0, 0, 0, 0, -1], RatFunc::one()).unwrap();
    let s = torus_derivation_decompose(&TorusDerivationData::inner(&g).unwrap()).unwrap();
    assert_eq!(s.g, g);
    assert!(s.mu.iter().all(RatFunc::is_zero));

    // D(T1) = T2 alone is not a derivation
    let mut bad = TorusDerivationData::diagonal(&m, &vec![RatFunc::zero(); 6]);
    bad.values[0] = TorusElement::generator_pow(&m, 2, 1);
    assert!(matches!(
        torus_derivation_decompose(&bad),
        Err(TorusError::Inconsistent { .. })
    ));
}

#[test]
fn decomposition_round_trip() {
    let m = g2_matrix();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let size = rng.gen_range(0..=8);
        let mut g = rand_elem(&mut rng, &m, size, 4);
        g = g.sub(&TorusElement::scalar(&m, g.coeff(&[0; 6]))).unwrap();
        let mu: Vec<RatFunc> = (0..6).map(|_| rand_coeff(&mut rng)).collect();
        let data = TorusDerivationData::inner(&g)
            .unwrap()
            .add(&TorusDerivationData::diagonal(&m, &mu))
            .unwrap();
        let s = torus_derivation_decompose(&data).unwrap();
        assert_eq!(s.g, g);
        assert_eq!(s.mu, mu);
    }
}

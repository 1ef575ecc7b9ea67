//! Bivariate gcd over the rationals.
//!
//! Polynomials are viewed as univariate in `r` with coefficients in `Z[s]`
//! and reduced with a primitive pseudo-remainder sequence. The contents in
//! `Z[s]` are handled by the same sequence one level down.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::bipoly::BiPoly;

type SPoly = Vec<BigInt>;
type RPoly = Vec<SPoly>;

fn s_trim(p: &mut SPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn s_content(p: &SPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn s_div_int(p: &SPoly, c: &BigInt) -> SPoly {
    p.iter().map(|x| x / c).collect()
}

fn s_pp(p: &SPoly) -> SPoly {
    if p.is_empty() {
        return Vec::new();
    }
    let mut c = s_content(p);
    if p.last().unwrap().is_negative() {
        c = -c;
    }
    s_div_int(p, &c)
}

fn s_mul(a: &SPoly, b: &SPoly) -> SPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn s_scale(p: &SPoly, c: &BigInt) -> SPoly {
    p.iter().map(|x| x * c).collect()
}

/// `a - b * s^shift`
fn s_sub_shifted(a: &mut SPoly, b: &SPoly, shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, BigInt::zero());
    }
    for (j, y) in b.iter().enumerate() {
        a[j + shift] -= y;
    }
    s_trim(a);
}

fn s_prem(a: &SPoly, b: &SPoly) -> SPoly {
    let mut rem = a.clone();
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    while !rem.is_empty() && rem.len() > db {
        let shift = rem.len() - 1 - db;
        let lr = rem.last().unwrap().clone();
        rem = s_scale(&rem, &lb);
        s_sub_shifted(&mut rem, &s_scale(b, &lr), shift);
    }
    rem
}

fn s_gcd(a: &SPoly, b: &SPoly) -> SPoly {
    if a.is_empty() {
        return s_pp(b);
    }
    if b.is_empty() {
        return s_pp(a);
    }
    let c = s_content(a).gcd(&s_content(b));
    let (mut x, mut y) = (s_pp(a), s_pp(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while y.len() > 1 {
        let rem = s_prem(&x, &y);
        if rem.is_empty() {
            break;
        }
        x = y;
        y = s_pp(&rem);
    }
    if y.len() == 1 {
        return vec![c];
    }
    s_scale(&y, &c)
}

/// Exact division in `Z[s]`; `None` if `b` does not divide `a`.
fn s_divexact(a: &SPoly, b: &SPoly) -> Option<SPoly> {
    if a.is_empty() {
        return Some(Vec::new());
    }
    if b.len() == 1 {
        let d = &b[0];
        let mut out = Vec::with_capacity(a.len());
        for x in a {
            let (q, r) = x.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        return Some(out);
    }
    if a.len() < b.len() {
        return None;
    }
    let mut rem = a.clone();
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    let mut quot = vec![BigInt::zero(); a.len() - db];
    while !rem.is_empty() && rem.len() > db {
        let shift = rem.len() - 1 - db;
        let (q, r) = rem.last().unwrap().div_rem(lb);
        if !r.is_zero() {
            return None;
        }
        s_sub_shifted(&mut rem, &s_scale(b, &q), shift);
        quot[shift] = q;
    }
    if rem.is_empty() {
        s_trim(&mut quot);
        Some(quot)
    } else {
        None
    }
}

fn r_trim(p: &mut RPoly) {
    while p.last().is_some_and(|c| c.is_empty()) {
        p.pop();
    }
}

fn r_content(p: &RPoly) -> SPoly {
    let mut g: SPoly = Vec::new();
    for c in p {
        if c.is_empty() {
            continue;
        }
        g = s_gcd(&g, c);
        if g.len() == 1 && g[0].is_one() {
            break;
        }
    }
    g
}

fn r_pp(p: &RPoly) -> RPoly {
    let c = r_content(p);
    if c.len() == 1 && c[0].is_one() {
        return p.clone();
    }
    p.iter()
        .map(|x| s_divexact(x, &c).expect("content divides every coefficient"))
        .collect()
}

fn r_prem(a: &RPoly, b: &RPoly) -> RPoly {
    let mut rem = a.clone();
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    while !rem.is_empty() && rem.len() > db {
        let shift = rem.len() - 1 - db;
        let lr = rem.last().unwrap().clone();
        for c in rem.iter_mut() {
            *c = s_mul(c, &lb);
        }
        for (j, y) in b.iter().enumerate() {
            let t = s_mul(y, &lr);
            let slot = &mut rem[j + shift];
            if slot.len() < t.len() {
                slot.resize(t.len(), BigInt::zero());
            }
            for (k, v) in t.into_iter().enumerate() {
                slot[k] -= v;
            }
            s_trim(slot);
        }
        r_trim(&mut rem);
    }
    rem
}

fn to_rpoly(p: &BiPoly) -> RPoly {
    let (_, ints) = p.integer_primitive();
    let dr = p.degree_r().unwrap_or(0) as usize;
    let mut out: RPoly = vec![Vec::new(); dr + 1];
    for ((m, n), c) in ints {
        let slot = &mut out[m as usize];
        if slot.len() <= n as usize {
            slot.resize(n as usize + 1, BigInt::zero());
        }
        slot[n as usize] = c;
    }
    out
}

fn from_rpoly(p: &RPoly) -> BiPoly {
    let mut terms = Vec::new();
    for (m, c) in p.iter().enumerate() {
        for (n, x) in c.iter().enumerate() {
            if !x.is_zero() {
                terms.push(((m as u32, n as u32), x.clone()));
            }
        }
    }
    BiPoly::from_integer_terms(terms)
}

fn r_gcd(a: &RPoly, b: &RPoly) -> RPoly {
    let c = s_gcd(&r_content(a), &r_content(b));
    let (mut x, mut y) = (r_pp(a), r_pp(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    loop {
        if y.len() == 1 {
            // degree zero in r: only the content survives
            return vec![c];
        }
        let rem = r_prem(&x, &y);
        if rem.is_empty() {
            break;
        }
        x = y;
        y = r_pp(&rem);
    }
    y.iter().map(|k| s_mul(k, &c)).collect()
}

/// Greatest common divisor of two polynomials, normalized to coprime integer
/// coefficients with positive leading coefficient. `gcd(0, 0)` is `0`.
pub fn gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
    if a.is_zero() {
        return normalize_gcd(b);
    }
    if b.is_zero() {
        return normalize_gcd(a);
    }
    let (am, an) = a.min_exponents().unwrap();
    let (bm, bn) = b.min_exponents().unwrap();
    let mono = (am.min(bm), an.min(bn));
    let unit = BiPoly::monomial(BigRational::one(), mono.0, mono.1);
    if a.is_monomial() || b.is_monomial() || a.is_constant() || b.is_constant() {
        return unit;
    }
    let a1 = a.unshift(am, an);
    let b1 = b.unshift(bm, bn);
    if a1.is_constant() || b1.is_constant() {
        return unit;
    }
    let core = if a1 == b1 {
        normalize_gcd(&a1)
    } else if probably_coprime(&to_rpoly(&a1), &to_rpoly(&b1)) {
        BiPoly::one()
    } else if let Some(g) = cheap_divisor(&a1, &b1) {
        g
    } else {
        from_rpoly(&r_gcd(&to_rpoly(&a1), &to_rpoly(&b1)))
    };
    &core * &unit
}

const PRIME: u64 = 2_147_483_629;

fn mod_p(x: &BigInt) -> u64 {
    let m = x.mod_floor(&BigInt::from(PRIME));
    m.try_into().unwrap()
}

/// Euclid over `F_p`; true when the gcd is a nonzero constant.
fn unit_gcd_mod_p(mut a: Vec<u64>, mut b: Vec<u64>) -> bool {
    let trim = |p: &mut Vec<u64>| {
        while p.last() == Some(&0) {
            p.pop();
        }
    };
    let inv = |x: u64| {
        let (mut base, mut e, mut acc) = (x, PRIME - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % PRIME;
            }
            base = base * base % PRIME;
            e >>= 1;
        }
        acc
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        if b.len() == 1 {
            return true;
        }
        let li = inv(*b.last().unwrap());
        while a.len() >= b.len() {
            let q = a.last().unwrap() * li % PRIME;
            let shift = a.len() - b.len();
            for (j, y) in b.iter().enumerate() {
                a[j + shift] = (a[j + shift] + PRIME - q * y % PRIME) % PRIME;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len() == 1
}

/// Sound test for `gcd(a, b) = 1` over `Z[r, s]`; a false answer is
/// inconclusive.
///
/// A common factor of positive degree in `r` survives the substitution
/// `s = s0` modulo a prime whenever the leading coefficients in `r` do not
/// vanish there, and likewise with the roles of `r` and `s` swapped.
fn probably_coprime(a: &RPoly, b: &RPoly) -> bool {
    let in_r = |p: &RPoly, s0: u64| -> Vec<u64> {
        p.iter()
            .map(|c| c.iter().rev().fold(0, |acc, x| (acc * s0 + mod_p(x)) % PRIME))
            .collect()
    };
    let in_s = |p: &RPoly, r0: u64| -> Vec<u64> {
        let ds = p.iter().map(Vec::len).max().unwrap_or(0);
        let mut out = vec![0u64; ds];
        for c in p.iter().rev() {
            for (n, slot) in out.iter_mut().enumerate() {
                let x = c.get(n).map_or(0, mod_p);
                *slot = (*slot * r0 + x) % PRIME;
            }
        }
        out
    };
    let full = |img: &[u64], len: usize| img.len() == len && img.last().is_some_and(|&x| x != 0);
    let ds = |p: &RPoly| p.iter().map(Vec::len).max().unwrap_or(0);
    let r_ok = [1_000_003u64, 7_654_321].iter().any(|&s0| {
        let (x, y) = (in_r(a, s0), in_r(b, s0));
        full(&x, a.len()) && full(&y, b.len()) && unit_gcd_mod_p(x, y)
    });
    r_ok && [999_983u64, 3_141_593].iter().any(|&r0| {
        let (x, y) = (in_s(a, r0), in_s(b, r0));
        full(&x, ds(a)) && full(&y, ds(b)) && unit_gcd_mod_p(x, y)
    })
}

/// If one operand divides the other the gcd is the smaller one.
fn cheap_divisor(a: &BiPoly, b: &BiPoly) -> Option<BiPoly> {
    let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if small.degree_r()? <= big.degree_r()? && small.degree_s()? <= big.degree_s()? {
        big.exact_div(small)?;
        return Some(normalize_gcd(small));
    }
    None
}

fn normalize_gcd(p: &BiPoly) -> BiPoly {
    if p.is_zero() {
        return BiPoly::zero();
    }
    let (_, ints) = p.integer_primitive();
    BiPoly::from_integer_terms(ints)
}

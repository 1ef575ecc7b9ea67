use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent pair `(deg_r, deg_s)` of a monomial `r^m s^n`.
pub type Exp2 = (u32, u32);

/// A polynomial in `r` and `s` with rational coefficients.
///
/// Terms are kept sorted in descending lexicographic order (`r` before `s`)
/// with no zero coefficients, so the zero polynomial is the empty vector and
/// structural equality coincides with polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: Vec<(Exp2, BigRational)>,
}

fn desc(a: &Exp2, b: &Exp2) -> Ordering {
    b.cmp(a)
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: BigRational, m: u32, n: u32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiPoly {
            terms: vec![((m, n), c)],
        }
    }

    pub fn r() -> Self {
        Self::monomial(BigRational::one(), 1, 0)
    }

    pub fn s() -> Self {
        Self::monomial(BigRational::one(), 0, 1)
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I: IntoIterator<Item = (Exp2, BigRational)>>(it: I) -> Self {
        let mut terms: Vec<(Exp2, BigRational)> = it.into_iter().collect();
        terms.sort_by(|a, b| desc(&a.0, &b.0));
        let mut out: Vec<(Exp2, BigRational)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        BiPoly { terms: out }
    }

    pub fn terms(&self) -> &[(Exp2, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == (0, 0) && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == (0, 0))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading term in lexicographic order, `None` for zero.
    pub fn leading(&self) -> Option<&(Exp2, BigRational)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn degree_r(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0 .0).max()
    }

    pub fn degree_s(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0 .1).max()
    }

    /// Componentwise minimum of the exponents, i.e. the largest monomial dividing `self`.
    pub fn min_exponents(&self) -> Option<Exp2> {
        let mut it = self.terms.iter();
        let first = it.next()?.0;
        Some(it.fold(first, |(a, b), t| (a.min(t.0 .0), b.min(t.0 .1))))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Multiplies by `r^m s^n`.
    pub fn shift(&self, m: u32, n: u32) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| ((a + m, b + n), c.clone()))
                .collect(),
        }
    }

    /// Divides by `r^m s^n`; the caller guarantees divisibility.
    pub fn unshift(&self, m: u32, n: u32) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| {
                    debug_assert!(*a >= m && *b >= n);
                    ((a - m, b - n), c.clone())
                })
                .collect(),
        }
    }

    pub fn eval(&self, r0: &BigRational, s0: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for ((m, n), c) in &self.terms {
            acc += c * pow_q(r0, *m) * pow_q(s0, *n);
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &BiPoly) -> Option<BiPoly> {
        let ((dm, dn), dc) = d.leading()?.clone();
        if d.len() == 1 {
            let mut out = Vec::with_capacity(self.terms.len());
            for ((a, b), c) in &self.terms {
                if *a < dm || *b < dn {
                    return None;
                }
                out.push(((a - dm, b - dn), c / &dc));
            }
            return Some(BiPoly { terms: out });
        }
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some(((a, b), c)) = rem.leading().cloned() {
            if a < dm || b < dn {
                return None;
            }
            let qe = (a - dm, b - dn);
            let qc = c / &dc;
            let sub = BiPoly {
                terms: d
                    .terms
                    .iter()
                    .map(|((x, y), k)| ((x + qe.0, y + qe.1), k * &qc))
                    .collect(),
            };
            rem = &rem - &sub;
            quot.push((qe, qc));
        }
        Some(BiPoly::from_terms(quot))
    }

    /// Returns `(k, p)` with `self = k * p`, `p` having coprime integer coefficients and
    /// positive leading coefficient.
    pub fn integer_primitive(&self) -> (BigRational, Vec<(Exp2, BigInt)>) {
        if self.is_zero() {
            return (BigRational::one(), Vec::new());
        }
        let mut lcm = BigInt::one();
        for (_, c) in &self.terms {
            lcm = num_integer::lcm(lcm, c.denom().clone());
        }
        let ints: Vec<(Exp2, BigInt)> = self
            .terms
            .iter()
            .map(|(e, c)| (*e, c.numer() * (&lcm / c.denom())))
            .collect();
        let mut g = BigInt::zero();
        for (_, c) in &ints {
            g = num_integer::gcd(g, c.clone());
        }
        if ints[0].1.is_negative() {
            g = -g;
        }
        let ints = ints.into_iter().map(|(e, c)| (e, c / &g)).collect();
        (BigRational::new(g, lcm), ints)
    }

    pub fn from_integer_terms<I: IntoIterator<Item = (Exp2, BigInt)>>(it: I) -> Self {
        BiPoly::from_terms(it.into_iter().map(|(e, c)| (e, BigRational::from_integer(c))))
    }

    fn merge(&self, other: &BiPoly, negate: bool) -> BiPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match desc(&a[i].0, &b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0, c));
        }
        BiPoly { terms: out }
    }
}

pub(crate) fn pow_q(x: &BigRational, n: u32) -> BigRational {
    num_traits::pow(x.clone(), n as usize)
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        self.merge(rhs, false)
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self.merge(rhs, true)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        if rhs.len() == 1 {
            let ((m, n), c) = &rhs.terms[0];
            return BiPoly {
                terms: self.terms.iter().map(|((a, b), x)| ((a + m, b + n), x * c)).collect(),
            };
        }
        if self.len() == 1 {
            return rhs * self;
        }
        let mut acc = Vec::with_capacity(self.len() * rhs.len());
        for ((a, b), x) in &self.terms {
            for ((m, n), y) in &rhs.terms {
                acc.push(((a + m, b + n), x * y));
            }
        }
        BiPoly::from_terms(acc)
    }
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, m: i64, n: i64) -> fmt::Result {
    let mut first = true;
    for (name, e) in [("r", m), ("s", n)] {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{name}")?;
        } else {
            write!(f, "{name}^{e}")?;
        }
    }
    Ok(())
}

/// Writes `sum c * r^(m - dm) * s^(n - dn)` in the text grammar.
pub(crate) fn fmt_laurent(f: &mut fmt::Formatter<'_>, terms: &[(Exp2, BigRational)], dm: u32, dn: u32) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (k, ((m, n), c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if k == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let (em, en) = (*m as i64 - dm as i64, *n as i64 - dn as i64);
        let unit_mono = em == 0 && en == 0;
        if unit_mono {
            write!(f, "{}", fmt_rational(&abs))?;
        } else {
            if !abs.is_one() {
                write!(f, "{}*", fmt_rational(&abs))?;
            }
            fmt_monomial(f, em, en)?;
        }
    }
    Ok(())
}

pub(crate) fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_laurent(f, &self.terms, 0, 0)
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::bipoly::{fmt_laurent, fmt_rational, BiPoly};
use super::gcd::gcd;
use super::CoeffError;

/// An element of the rational function field `Q(r, s)`.
///
/// Always stored reduced: `gcd(num, den) = 1` and the leading coefficient of
/// `den` is one, so `==` is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: BiPoly,
    den: BiPoly,
}

/// The four field operations, for callers that pick the operation at runtime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn arith(op: ArithOp, a: &RatFunc, b: &RatFunc) -> Result<RatFunc, CoeffError> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: BiPoly::zero(),
            den: BiPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc {
            num: BiPoly::one(),
            den: BiPoly::one(),
        }
    }

    pub fn r() -> Self {
        Self::from_poly(BiPoly::r())
    }

    pub fn s() -> Self {
        Self::from_poly(BiPoly::s())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_poly(BiPoly::constant(c))
    }

    pub fn from_poly(p: BiPoly) -> Self {
        RatFunc {
            num: p,
            den: BiPoly::one(),
        }
    }

    /// `c * r^m * s^n` with arbitrary integer exponents.
    pub fn monomial(c: BigRational, m: i64, n: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let (nm, dm) = if m >= 0 { (m as u32, 0) } else { (0, (-m) as u32) };
        let (nn, dn) = if n >= 0 { (n as u32, 0) } else { (0, (-n) as u32) };
        RatFunc {
            num: BiPoly::monomial(c, nm, nn),
            den: BiPoly::monomial(BigRational::one(), dm, dn),
        }
    }

    /// `r^m s^n`.
    pub fn rs(m: i64, n: i64) -> Self {
        Self::monomial(BigRational::one(), m, n)
    }

    /// Builds `num / den` and reduces it.
    pub fn new(num: BiPoly, den: BiPoly) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: BiPoly, den: BiPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        Self::monic(num, den)
    }

    /// Rescales so that the denominator has leading coefficient one.
    fn monic(num: BiPoly, den: BiPoly) -> Self {
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den(&self) -> &BiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The rational value if `self` does not depend on `r`, `s`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if !self.is_constant() {
            return None;
        }
        Some(self.num.leading_coeff().cloned().unwrap_or_else(BigRational::zero))
    }

    /// Decomposes `c * r^m * s^n`; `None` when `self` is not of that shape or is zero.
    pub fn as_monomial(&self) -> Option<(BigRational, i64, i64)> {
        if !self.num.is_monomial() || !self.den.is_monomial() {
            return None;
        }
        let ((a, b), c) = self.num.leading()?.clone();
        let ((x, y), _) = self.den.leading()?.clone();
        Some((c, a as i64 - x as i64, b as i64 - y as i64))
    }

    fn is_rs_monomial(&self) -> bool {
        self.num.is_monomial() && self.den.is_monomial()
    }

    pub fn inv(&self) -> Result<Self, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::monic(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<Self, CoeffError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self, CoeffError> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        if let Some((c, m, n)) = self.as_monomial() {
            return Ok(Self::monomial(num_traits::pow(c, e as usize), m * e, n * e));
        }
        let mut base = self.clone();
        let mut acc = RatFunc::one();
        let mut k = e as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Evaluates at `(r0, s0)`; fails when the denominator vanishes there.
    pub fn eval(&self, r0: &BigRational, s0: &BigRational) -> Result<BigRational, CoeffError> {
        let d = self.den.eval(r0, s0);
        if d.is_zero() {
            return Err(CoeffError::VanishingDenominator {
                r: fmt_rational(r0),
                s: fmt_rational(s0),
            });
        }
        Ok(self.num.eval(r0, s0) / d)
    }

    /// Multiplication by a unit monomial needs no gcd: only monomial factors can cancel.
    fn mul_monomial(&self, c: &BigRational, m: i64, n: i64) -> Self {
        let (num_m, num_n) = self.num.min_exponents().unwrap_or((0, 0));
        let (den_m, den_n) = self.den.min_exponents().unwrap_or((0, 0));
        let (nr, dr) = split_exp(num_m as i64, den_m as i64, m);
        let (ns, ds) = split_exp(num_n as i64, den_n as i64, n);
        let num = shift_signed(&self.num, nr, ns).scale(c);
        let den = shift_signed(&self.den, dr, ds);
        RatFunc { num, den }
    }
}

/// Distributes exponent `e` of one variable between numerator (`+`) and
/// denominator (`-`) while cancelling against the existing minimal degrees.
fn split_exp(num_min: i64, den_min: i64, e: i64) -> (i64, i64) {
    if e >= 0 {
        let cancel = e.min(den_min);
        (e - cancel, -cancel)
    } else {
        let cancel = (-e).min(num_min);
        (-cancel, -e - cancel)
    }
}

fn shift_signed(p: &BiPoly, m: i64, n: i64) -> BiPoly {
    let up = p.shift(m.max(0) as u32, n.max(0) as u32);
    up.unshift((-m).max(0) as u32, (-n).max(0) as u32)
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        RatFunc::from_int(n)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return RatFunc::from_poly(num);
            }
            return RatFunc::reduce(num, self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            let den = &self.den * &rhs.den;
            if num.is_zero() {
                return RatFunc::zero();
            }
            return RatFunc::monic(num, den);
        }
        let ad = self.den.exact_div(&g).expect("gcd divides");
        let bd = rhs.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &bd) + &(&rhs.num * &ad);
        if num.is_zero() {
            return RatFunc::zero();
        }
        let den = &self.den * &bd;
        let g2 = gcd(&num, &g);
        if g2.is_one() {
            RatFunc::monic(num, den)
        } else {
            RatFunc::monic(
                num.exact_div(&g2).expect("gcd divides"),
                den.exact_div(&g2).expect("gcd divides"),
            )
        }
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if rhs.is_rs_monomial() {
            let (c, m, n) = rhs.as_monomial().unwrap();
            return self.mul_monomial(&c, m, n);
        }
        if self.is_rs_monomial() {
            let (c, m, n) = self.as_monomial().unwrap();
            return rhs.mul_monomial(&c, m, n);
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let div = |p: &BiPoly, g: &BiPoly| {
            if g.is_one() {
                p.clone()
            } else {
                p.exact_div(g).expect("gcd divides")
            }
        };
        let num = &div(&self.num, &g1) * &div(&rhs.num, &g2);
        let den = &div(&self.den, &g2) * &div(&rhs.den, &g1);
        RatFunc::monic(num, den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for RatFunc {
    /// Prints in the scalar text grammar. Monomial factors of the denominator are
    /// folded into negative exponents, so `1/r^3` prints as `r^-3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (dm, dn) = self.den.min_exponents().unwrap_or((0, 0));
        let rest = self.den.unshift(dm, dn);
        if rest.is_one() {
            return fmt_laurent(f, self.num.terms(), dm, dn);
        }
        write!(f, "(")?;
        fmt_laurent(f, self.num.terms(), dm, dn)?;
        write!(f, ")/(")?;
        fmt_laurent(f, rest.terms(), 0, 0)?;
        write!(f, ")")
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl RatFunc {
    /// True when the printed form is a single signed factor (no top-level `+`/`-`
    /// between terms), i.e. it can be juxtaposed with `*` without parentheses.
    pub fn prints_as_factor(&self) -> bool {
        let (dm, dn) = self.den.min_exponents().unwrap_or((0, 0));
        self.num.len() <= 1 && self.den.unshift(dm, dn).is_one()
    }

    /// True when the leading printed sign is negative and the value prints as a factor.
    pub fn is_negative_factor(&self) -> bool {
        self.prints_as_factor() && self.num.leading_coeff().is_some_and(|c| c.is_negative())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta() -> RatFunc {
        let r3 = RatFunc::r().pow(3).unwrap();
        let s3 = RatFunc::s().pow(3).unwrap();
        (&r3 - &s3).checked_div(&(&RatFunc::r() + &RatFunc::s())).unwrap()
    }

    #[test]
    fn zeta_times_r_plus_s() {
        let r3 = RatFunc::r().pow(3).unwrap();
        let s3 = RatFunc::s().pow(3).unwrap();
        assert_eq!(&zeta() * &(&RatFunc::r() + &RatFunc::s()), &r3 - &s3);
    }

    #[test]
    fn difference_of_squares_divides() {
        let r = RatFunc::r();
        let s = RatFunc::s();
        let num = &(&r * &r) - &(&s * &s);
        assert_eq!(num.checked_div(&(&r - &s)).unwrap(), &r + &s);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            RatFunc::one().checked_div(&RatFunc::zero()),
            Err(CoeffError::DivisionByZero)
        );
        assert!(RatFunc::new(BiPoly::one(), BiPoly::zero()).is_err());
    }

    #[test]
    fn evaluation() {
        let two = BigRational::from_integer(2.into());
        let three = BigRational::from_integer(3.into());
        let x = RatFunc::rs(-3, 0);
        assert_eq!(x.eval(&two, &three).unwrap(), BigRational::new(1.into(), 8.into()));
        assert_eq!(
            zeta().eval(&two, &three).unwrap(),
            BigRational::new((-19).into(), 5.into())
        );
        assert!(RatFunc::zero().eval(&two, &three).unwrap().is_zero());
        let bad = RatFunc::one().checked_div(&(&RatFunc::r() - &RatFunc::s())).unwrap();
        assert!(bad.eval(&two, &two).is_err());
    }

    #[test]
    fn negative_powers_print_as_laurent() {
        assert_eq!(RatFunc::rs(-3, 0).to_string(), "r^-3");
        let c = RatFunc::monomial(BigRational::from_integer((-1).into()), -1, -2);
        assert_eq!(c.to_string(), "-r^-1*s^-2");
        assert_eq!(zeta().to_string(), "(r^3 - s^3)/(r + s)");
    }

    #[test]
    fn denominators_are_monic() {
        let x = RatFunc::one()
            .checked_div(&RatFunc::from_poly(
                BiPoly::r().scale(&BigRational::from_integer(4.into())),
            ))
            .unwrap();
        assert!(x.den().leading_coeff().unwrap().is_one());
        assert_eq!(x.num().leading_coeff().unwrap(), &BigRational::new(1.into(), 4.into()));
    }
}

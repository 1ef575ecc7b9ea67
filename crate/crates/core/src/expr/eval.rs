use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::coeff::{eta, xi, zeta, CoeffError, RatFunc};
use crate::ore::{OreElement, OreError, OrePresentation, Strategy, Word};

use super::{Constant, Expr, Family, GenRef};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("symbol {0} is not available in this context")]
    UnknownSymbol(String),
    #[error("division by a non-scalar expression")]
    NonScalarDivisor,
    #[error("cannot invert {0}")]
    NotInvertible(String),
    #[error(transparent)]
    Ore(#[from] OreError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error("{0}")]
    Other(String),
}

/// An algebra that expressions can be evaluated into.
pub trait EvalTarget {
    type Value: Clone;

    fn scalar(&self, c: RatFunc) -> Self::Value;
    fn generator(&self, g: GenRef) -> Result<Self::Value, EvalError>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, EvalError>;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, EvalError>;
    fn as_scalar(&self, a: &Self::Value) -> Option<RatFunc>;

    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, EvalError> {
        self.add(a, &self.neg(b))
    }

    fn inverse(&self, a: &Self::Value) -> Result<Self::Value, EvalError> {
        let c = self
            .as_scalar(a)
            .ok_or_else(|| EvalError::NotInvertible("a non-scalar".into()))?;
        Ok(self.scalar(c.inv()?))
    }
}

fn constant(c: Constant) -> RatFunc {
    match c {
        Constant::R => RatFunc::r(),
        Constant::S => RatFunc::s(),
        Constant::Xi => xi(),
        Constant::Eta => eta(),
        Constant::Zeta => zeta(),
    }
}

fn pow<T: EvalTarget>(t: &T, base: &T::Value, k: i64) -> Result<T::Value, EvalError> {
    if k < 0 {
        return pow(t, &t.inverse(base)?, -k);
    }
    if let Some(c) = t.as_scalar(base) {
        return Ok(t.scalar(c.pow(k)?));
    }
    let mut acc: Option<T::Value> = None;
    let mut sq = base.clone();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            acc = Some(match acc {
                None => sq.clone(),
                Some(a) => t.mul(&a, &sq)?,
            });
        }
        k >>= 1;
        if k > 0 {
            sq = t.mul(&sq, &sq)?;
        }
    }
    Ok(acc.unwrap_or_else(|| t.scalar(RatFunc::one())))
}

/// Evaluates `e` in the target algebra.
pub fn eval<T: EvalTarget>(t: &T, e: &Expr) -> Result<T::Value, EvalError> {
    Ok(match e {
        Expr::Int(n) => t.scalar(RatFunc::from_rational(num_rational::BigRational::from_integer(
            n.clone(),
        ))),
        Expr::Const(c) => t.scalar(constant(*c)),
        Expr::Gen(g) => t.generator(*g)?,
        Expr::Add(a, b) => t.add(&eval(t, a)?, &eval(t, b)?)?,
        Expr::Sub(a, b) => t.sub(&eval(t, a)?, &eval(t, b)?)?,
        Expr::Mul(a, b) => {
            let x = eval(t, a)?;
            let y = eval(t, b)?;
            t.mul(&x, &y)?
        }
        Expr::Div(a, b) => {
            let y = eval(t, b)?;
            let c = t.as_scalar(&y).ok_or(EvalError::NonScalarDivisor)?;
            let inv = c.inv()?;
            t.mul(&eval(t, a)?, &t.scalar(inv))?
        }
        Expr::Neg(a) => t.neg(&eval(t, a)?),
        Expr::Pow(a, k) => pow(t, &eval(t, a)?, *k)?,
        Expr::Group(a) => eval(t, a)?,
    })
}

/// Evaluates a generator-free expression to a scalar.
pub fn eval_scalar(e: &Expr) -> Result<RatFunc, EvalError> {
    eval(&ScalarTarget, e)
}

/// The coefficient field itself.
pub struct ScalarTarget;

impl EvalTarget for ScalarTarget {
    type Value = RatFunc;

    fn scalar(&self, c: RatFunc) -> RatFunc {
        c
    }

    fn generator(&self, g: GenRef) -> Result<RatFunc, EvalError> {
        Err(EvalError::UnknownSymbol(g.to_string()))
    }

    fn add(&self, a: &RatFunc, b: &RatFunc) -> Result<RatFunc, EvalError> {
        Ok(a + b)
    }

    fn neg(&self, a: &RatFunc) -> RatFunc {
        -a
    }

    fn mul(&self, a: &RatFunc, b: &RatFunc) -> Result<RatFunc, EvalError> {
        Ok(a * b)
    }

    fn as_scalar(&self, a: &RatFunc) -> Option<RatFunc> {
        Some(a.clone())
    }
}

type Resolver<'a> = Box<dyn Fn(GenRef) -> Result<OreElement, EvalError> + Send + Sync + 'a>;

/// Evaluation inside an Ore algebra, generator symbols resolved by a callback.
pub struct OreTarget<'a> {
    pres: Arc<OrePresentation>,
    resolve: Resolver<'a>,
}

impl<'a> OreTarget<'a> {
    pub fn with_resolver(
        pres: &Arc<OrePresentation>,
        resolve: impl Fn(GenRef) -> Result<OreElement, EvalError> + Send + Sync + 'a,
    ) -> Self {
        OreTarget {
            pres: pres.clone(),
            resolve: Box::new(resolve),
        }
    }

    /// Symbols of `family` name the generators directly; `e1`, `e2` are
    /// accepted as the first and last generator when `family` is `X`.
    pub fn family(pres: &Arc<OrePresentation>, family: Family) -> Self {
        let p = pres.clone();
        Self::with_resolver(pres, move |g| {
            let idx = match g.family {
                f if f == family => g.index,
                Family::E if family == Family::X && (g.index == 1 || g.index == 2) => {
                    if g.index == 1 {
                        1
                    } else {
                        p.n()
                    }
                }
                _ => return Err(EvalError::UnknownSymbol(g.to_string())),
            };
            if idx == 0 || idx > p.n() {
                return Err(EvalError::UnknownSymbol(g.to_string()));
            }
            Ok(OreElement::generator(&p, idx)?)
        })
    }

    pub fn presentation(&self) -> &Arc<OrePresentation> {
        &self.pres
    }
}

impl EvalTarget for OreTarget<'_> {
    type Value = OreElement;

    fn scalar(&self, c: RatFunc) -> OreElement {
        OreElement::scalar(&self.pres, c)
    }

    fn generator(&self, g: GenRef) -> Result<OreElement, EvalError> {
        (self.resolve)(g)
    }

    fn add(&self, a: &OreElement, b: &OreElement) -> Result<OreElement, EvalError> {
        Ok(a.try_add(b)?)
    }

    fn neg(&self, a: &OreElement) -> OreElement {
        -a
    }

    fn mul(&self, a: &OreElement, b: &OreElement) -> Result<OreElement, EvalError> {
        if let Some(c) = a.as_scalar() {
            return Ok(b.scale(&c));
        }
        if let Some(c) = b.as_scalar() {
            return Ok(a.scale(&c));
        }
        Ok(a.mul(b)?)
    }

    fn as_scalar(&self, a: &OreElement) -> Option<RatFunc> {
        a.as_scalar()
    }

    fn inverse(&self, a: &OreElement) -> Result<OreElement, EvalError> {
        a.inverse().map_err(|_| EvalError::NotInvertible(a.to_string()))
    }
}

/// Linear combination of words in a free algebra; letters are numbered from 1.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct FreeWordExpr {
    terms: BTreeMap<Vec<usize>, RatFunc>,
}

impl FreeWordExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(c: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        FreeWordExpr { terms }
    }

    pub fn letter(k: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![k], RatFunc::one());
        FreeWordExpr { terms }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, RatFunc> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(terms: &mut BTreeMap<Vec<usize>, RatFunc>, w: Vec<usize>, c: RatFunc) {
        let e = terms.entry(w).or_insert_with(RatFunc::zero);
        *e = &*e + &c;
        if e.is_zero() {
            terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            Self::insert(&mut terms, w.clone(), c.clone());
        }
        FreeWordExpr { terms }
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FreeWordExpr {
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                Self::insert(&mut terms, w, x * y);
            }
        }
        FreeWordExpr { terms }
    }

    /// Maps letter `k` to generator `gens[k - 1]` and straightens.
    pub fn to_ore(&self, pres: &Arc<OrePresentation>, gens: &[usize]) -> Result<OreElement, OreError> {
        let words: Vec<Word> = self
            .terms
            .iter()
            .map(|(w, c)| Word::with_scalar(w.iter().map(|&k| (gens[k - 1], 1)).collect(), c.clone()))
            .collect();
        OreElement::from_words(pres, &words, Strategy::Leftmost)
    }

    /// The words as input for a presentation builder, letter `k` meaning generator `k`.
    pub fn to_words(&self) -> Vec<Word> {
        self.terms
            .iter()
            .map(|(w, c)| Word::with_scalar(w.iter().map(|&k| (k, 1)).collect(), c.clone()))
            .collect()
    }
}

impl fmt::Debug for FreeWordExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// Evaluation into a free algebra; symbols map to letters through a callback.
pub struct FreeTarget<F: Fn(GenRef) -> Option<usize>> {
    pub letter: F,
}

impl<F: Fn(GenRef) -> Option<usize>> EvalTarget for FreeTarget<F> {
    type Value = FreeWordExpr;

    fn scalar(&self, c: RatFunc) -> FreeWordExpr {
        FreeWordExpr::scalar(c)
    }

    fn generator(&self, g: GenRef) -> Result<FreeWordExpr, EvalError> {
        (self.letter)(g)
            .map(FreeWordExpr::letter)
            .ok_or_else(|| EvalError::UnknownSymbol(g.to_string()))
    }

    fn add(&self, a: &FreeWordExpr, b: &FreeWordExpr) -> Result<FreeWordExpr, EvalError> {
        Ok(a.add(b))
    }

    fn neg(&self, a: &FreeWordExpr) -> FreeWordExpr {
        a.scale(&RatFunc::from_int(-1))
    }

    fn mul(&self, a: &FreeWordExpr, b: &FreeWordExpr) -> Result<FreeWordExpr, EvalError> {
        Ok(a.mul(b))
    }

    fn as_scalar(&self, a: &FreeWordExpr) -> Option<RatFunc> {
        match a.terms.len() {
            0 => Some(RatFunc::zero()),
            1 => a.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }
}

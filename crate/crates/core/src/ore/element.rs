use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use smallvec::SmallVec;

use crate::coeff::RatFunc;

use super::presentation::{Letter, OrePresentation, Word};
use super::rewrite::{exps_letters, letters_of, MonomialOrder, Strategy};
use super::{Exps, OreError, Terms};

/// An element of an Ore algebra, stored in ascending PBW normal form.
#[derive(Clone)]
pub struct OreElement {
    pres: Arc<OrePresentation>,
    terms: Terms,
}

impl OreElement {
    pub(crate) fn from_terms_unchecked(pres: &Arc<OrePresentation>, terms: Terms) -> Self {
        OreElement {
            pres: pres.clone(),
            terms,
        }
    }

    pub fn zero(pres: &Arc<OrePresentation>) -> Self {
        Self::from_terms_unchecked(pres, BTreeMap::new())
    }

    pub fn scalar(pres: &Arc<OrePresentation>, c: RatFunc) -> Self {
        let mut t = BTreeMap::new();
        if !c.is_zero() {
            t.insert(SmallVec::from_elem(0, pres.n()), c);
        }
        Self::from_terms_unchecked(pres, t)
    }

    pub fn one(pres: &Arc<OrePresentation>) -> Self {
        Self::scalar(pres, RatFunc::one())
    }

    /// The generator `X_gen` (numbered from 1).
    pub fn generator(pres: &Arc<OrePresentation>, gen: usize) -> Result<Self, OreError> {
        let mut e = vec![0; pres.n()];
        pres.check_index(gen)?;
        e[gen - 1] = 1;
        Self::monomial(pres, &e, RatFunc::one())
    }

    /// `c * X1^e1 ... Xn^en`.
    pub fn monomial(pres: &Arc<OrePresentation>, exps: &[i32], c: RatFunc) -> Result<Self, OreError> {
        pres.check_exps(exps)?;
        let mut t = BTreeMap::new();
        if !c.is_zero() {
            t.insert(SmallVec::from_slice(exps), c);
        }
        Ok(Self::from_terms_unchecked(pres, t))
    }

    pub fn from_terms(pres: &Arc<OrePresentation>, terms: Terms) -> Result<Self, OreError> {
        for e in terms.keys() {
            pres.check_exps(e)?;
        }
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(Self::from_terms_unchecked(pres, terms))
    }

    /// Straightens an arbitrary word.
    pub fn from_word(pres: &Arc<OrePresentation>, word: &Word) -> Result<Self, OreError> {
        Self::from_words(pres, std::slice::from_ref(word), Strategy::Leftmost)
    }

    /// Straightens a sum of words with the given rewrite strategy.
    pub fn from_words(pres: &Arc<OrePresentation>, words: &[Word], strategy: Strategy) -> Result<Self, OreError> {
        let mut items = Vec::with_capacity(words.len());
        for w in words {
            pres.check_letters(&w.letters)?;
            items.push((letters_of(&w.letters), w.scalar.clone()));
        }
        let t = pres.straighten_items(items, MonomialOrder::Ascending, strategy)?;
        Ok(Self::from_terms_unchecked(pres, t))
    }

    pub fn presentation(&self) -> &Arc<OrePresentation> {
        &self.pres
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn into_terms(self) -> Terms {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[i32]) -> RatFunc {
        self.terms.get(exps).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn constant_term(&self) -> RatFunc {
        self.coeff(&vec![0; self.pres.n()])
    }

    /// The scalar value if this element lies in the base field.
    pub fn as_scalar(&self) -> Option<RatFunc> {
        match self.terms.len() {
            0 => Some(RatFunc::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// The single term `(exps, coeff)` if this is a nonzero monomial.
    pub fn as_monomial(&self) -> Option<(&Exps, &RatFunc)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Largest generator index occurring in the support (0 for scalars).
    pub fn support_top(&self) -> usize {
        self.terms
            .keys()
            .filter_map(|e| e.iter().rposition(|&x| x != 0))
            .max()
            .map_or(0, |k| k + 1)
    }

    /// Every exponent appearing on `gen` across the support.
    pub fn min_exponent(&self, gen: usize) -> i32 {
        self.terms.keys().map(|e| e[gen - 1]).min().unwrap_or(0)
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero(&self.pres);
        }
        let terms = self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect();
        Self::from_terms_unchecked(&self.pres, terms)
    }

    fn check_same(&self, other: &Self) -> Result<(), OreError> {
        if Arc::ptr_eq(&self.pres, &other.pres) || self.pres.same_as(&other.pres) {
            Ok(())
        } else {
            Err(OreError::PresentationMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, OreError> {
        self.check_same(other)?;
        let mut t = self.terms.clone();
        for (e, c) in &other.terms {
            add_term(&mut t, e.clone(), c.clone());
        }
        Ok(Self::from_terms_unchecked(&self.pres, t))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, OreError> {
        self.try_add(&-other)
    }

    /// Product in normal form.
    pub fn mul(&self, other: &Self) -> Result<Self, OreError> {
        self.check_same(other)?;
        let mut out: Terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let c = ca * cb;
                let prod = self.pres.monomial_product(ea, eb)?;
                for (e, x) in prod.iter() {
                    let v = if x.is_one() { c.clone() } else { &c * x };
                    add_term(&mut out, e.clone(), v);
                }
            }
        }
        Ok(Self::from_terms_unchecked(&self.pres, out))
    }

    pub fn mul_scalar_left(&self, c: &RatFunc) -> Self {
        self.scale(c)
    }

    /// Power with integer exponent; negative exponents require a unit monomial.
    pub fn pow(&self, e: i64) -> Result<Self, OreError> {
        if e < 0 {
            return self.inverse()?.pow(-e);
        }
        let mut acc = Self::one(&self.pres);
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Inverse of a unit: a nonzero scalar times a monomial in invertible generators.
    pub fn inverse(&self) -> Result<Self, OreError> {
        let (e, c) = self.as_monomial().ok_or(OreError::NotInvertible)?;
        for (k, &x) in e.iter().enumerate() {
            if x != 0 && !self.pres.invertible[k] {
                return Err(OreError::NotInvertible);
            }
        }
        // (c X^e)^-1 = c^-1 * (reversed word of inverse letters)
        let mut letters: Vec<Letter> = e
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(k, &x)| (k + 1, -x))
            .collect();
        letters.reverse();
        let w = Word::with_scalar(letters, c.inv()?);
        Self::from_word(&self.pres, &w)
    }

    /// The same terms viewed in another presentation on the same generators.
    pub fn rehome(&self, pres: &Arc<OrePresentation>) -> Result<Self, OreError> {
        if pres.n() != self.pres.n() {
            return Err(OreError::PresentationMismatch);
        }
        Self::from_terms(pres, self.terms.clone())
    }

    /// Terms in the descending monomial basis `Xn^an ... X1^a1`.
    pub fn descending_terms(&self) -> Result<Terms, OreError> {
        self.pres.to_descending(&self.terms)
    }

    pub fn display_with(&self, order: MonomialOrder) -> Result<String, OreError> {
        let terms = match order {
            MonomialOrder::Ascending => self.terms.clone(),
            MonomialOrder::Descending => self.descending_terms()?,
        };
        Ok(format_terms(&terms, self.pres.names(), order))
    }
}

pub(crate) fn add_term(t: &mut Terms, e: Exps, c: RatFunc) {
    if c.is_zero() {
        return;
    }
    match t.entry(e) {
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
    }
}

/// Formats a monomial such as `X1^2*X3^-1`; the empty monomial prints as `1`.
pub fn format_monomial(exps: &[i32], names: &[String], order: MonomialOrder) -> String {
    let parts: Vec<String> = exps_letters(exps, order)
        .iter()
        .map(|&(g, e)| {
            let name = &names[g as usize];
            if e == 1 {
                name.clone()
            } else {
                format!("{name}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Renders a sum of terms, higher total degree first, as `c * mono + ...`.
pub fn format_terms(terms: &Terms, names: &[String], order: MonomialOrder) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut keys: Vec<&Exps> = terms.keys().collect();
    keys.sort_by(|a, b| {
        let da: i64 = a.iter().map(|&x| i64::from(x)).sum();
        let db: i64 = b.iter().map(|&x| i64::from(x)).sum();
        db.cmp(&da).then_with(|| b.cmp(a))
    });
    let mut out = String::new();
    for (idx, e) in keys.into_iter().enumerate() {
        let c = &terms[e];
        let mono = format_monomial(e, names, order);
        let is_const = e.iter().all(|&x| x == 0);
        let (neg, mag) = if c.is_negative_factor() {
            (true, -c)
        } else {
            (false, c.clone())
        };
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if is_const {
            out.push_str(&fmt_coeff(&mag, true));
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&fmt_coeff(&mag, false));
            out.push_str(" * ");
            out.push_str(&mono);
        }
    }
    out
}

fn fmt_coeff(c: &RatFunc, alone: bool) -> String {
    let s = c.to_string();
    if alone || c.prints_as_factor() {
        s
    } else {
        format!("({s})")
    }
}

impl PartialEq for OreElement {
    fn eq(&self, other: &Self) -> bool {
        self.pres.same_as(&other.pres) && self.terms == other.terms
    }
}

impl Eq for OreElement {}

impl fmt::Display for OreElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(&self.terms, self.pres.names(), MonomialOrder::Ascending))
    }
}

impl fmt::Debug for OreElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OreElement({self})")
    }
}

// Operator forms panic on presentation mismatch; use `try_add`/`try_sub`
// when the operands may come from different algebras.
impl Add for &OreElement {
    type Output = OreElement;
    fn add(self, rhs: &OreElement) -> OreElement {
        self.try_add(rhs).expect("adding elements of different algebras")
    }
}

impl Sub for &OreElement {
    type Output = OreElement;
    fn sub(self, rhs: &OreElement) -> OreElement {
        self.try_sub(rhs).expect("subtracting elements of different algebras")
    }
}

impl Neg for &OreElement {
    type Output = OreElement;
    fn neg(self) -> OreElement {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        OreElement::from_terms_unchecked(&self.pres, terms)
    }
}

impl Add for OreElement {
    type Output = OreElement;
    fn add(self, rhs: OreElement) -> OreElement {
        &self + &rhs
    }
}

impl Sub for OreElement {
    type Output = OreElement;
    fn sub(self, rhs: OreElement) -> OreElement {
        &self - &rhs
    }
}

impl Neg for OreElement {
    type Output = OreElement;
    fn neg(self) -> OreElement {
        -&self
    }
}

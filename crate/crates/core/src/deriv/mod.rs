//! Derivations of `U+`, their extension along the tower, and the splitting
//! `D = ad_g + mu5 D5 + mu6 D6`.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::cauchon::{tower, CauchonError, TOP};
use crate::coeff::{CoeffError, RatFunc};
use crate::data::DataError;
use crate::expr::{eval, parse, EvalError, EvalTarget, Family, GenRef};
use crate::g2::{self, G2Error, RANK};
use crate::ore::{OreElement, OreError, OrePresentation};
use crate::qtorus::{g2_matrix, torus_derivation_decompose, TorusDerivationData, TorusElement, TorusError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivError {
    #[error(transparent)]
    Ore(#[from] OreError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Torus(#[from] TorusError),
    #[error(transparent)]
    Cauchon(#[from] CauchonError),
    #[error(transparent)]
    G2(#[from] G2Error),
    #[error(transparent)]
    Data(#[from] DataError),
    #[error("derivation images must lie in U+")]
    WrongAlgebra,
    #[error("not a derivation: Serre residuals {0} and {1}")]
    NotADerivation(String, String),
    #[error("torus eigenvalues violate relation {index} ({citation})")]
    MuRelation { index: usize, citation: String },
    #[error("inner part is not in G^{level}")]
    NotInLevel { level: usize },
    #[error("reconstruction differs on e{generator}")]
    Reconstruction { generator: usize },
    #[error("input line {line}: {message}")]
    Input { line: usize, message: String },
}

/// A derivation of `U+`, given by its values on `e1 = X1` and `e2 = X6`.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation {
    e1: OreElement,
    e2: OreElement,
}

impl Derivation {
    pub fn new(e1: OreElement, e2: OreElement) -> Result<Self, DerivError> {
        let pres = g2::presentation();
        if !e1.presentation().same_as(&pres) || !e2.presentation().same_as(&pres) {
            return Err(DerivError::WrongAlgebra);
        }
        Ok(Derivation { e1, e2 })
    }

    pub fn e1(&self) -> &OreElement {
        &self.e1
    }

    pub fn e2(&self) -> &OreElement {
        &self.e2
    }

    pub fn zero() -> Self {
        let z = OreElement::zero(&g2::presentation());
        Derivation { e1: z.clone(), e2: z }
    }

    /// `e1 -> c1 e1`, `e2 -> c2 e2`.
    pub fn make_diagonal(c1: &RatFunc, c2: &RatFunc) -> Self {
        Derivation {
            e1: g2::x(1).scale(c1),
            e2: g2::x(RANK).scale(c2),
        }
    }

    pub fn d5() -> Self {
        Self::make_diagonal(&RatFunc::one(), &RatFunc::zero())
    }

    pub fn d6() -> Self {
        Self::make_diagonal(&-RatFunc::one(), &RatFunc::one())
    }

    /// `x -> g x - x g`.
    pub fn ad(g: &OreElement) -> Result<Self, DerivError> {
        let c = |x: &OreElement| -> Result<OreElement, DerivError> { Ok(&g.mul(x)? - &x.mul(g)?) };
        Self::new(c(&g2::x(1))?, c(&g2::x(RANK))?)
    }

    pub fn add(&self, other: &Self) -> Self {
        Derivation {
            e1: &self.e1 + &other.e1,
            e2: &self.e2 + &other.e2,
        }
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        Derivation {
            e1: self.e1.scale(c),
            e2: self.e2.scale(c),
        }
    }

    /// Values on `X1..X6`, from the root-vector definitions and the Leibniz rule.
    pub fn on_generators(&self) -> Result<Vec<OreElement>, DerivError> {
        let pres = g2::presentation();
        let mut known: BTreeMap<usize, (OreElement, OreElement)> = BTreeMap::new();
        for e in g2::entries_of("root") {
            let i = e.int_arg(0)?;
            let expr = parse(&e.payload).map_err(|source| G2Error::Parse { line: e.line, source })?;
            let t = DualTarget {
                pres: &pres,
                d: self,
                known: &known,
            };
            let v = eval(&t, &expr)?;
            known.insert(i, v);
        }
        (1..=RANK)
            .map(|i| {
                known
                    .remove(&i)
                    .map(|(_, d)| d)
                    .ok_or_else(|| G2Error::Missing(format!("root {i}")).into())
            })
            .collect()
    }

    /// Values on the generators of every level of the tower.
    pub fn extend(&self) -> Result<ExtendedDerivation, DerivError> {
        let t = tower();
        let mut levels = vec![self.on_generators()?];
        for l in (1..TOP).rev() {
            let st = t.step(l);
            let above = levels.last().expect("nonempty");
            let in_ext: Vec<OreElement> = above.iter().map(|x| x.rehome(&st.ext)).collect::<Result<_, _>>()?;
            let mut here = Vec::with_capacity(RANK);
            for i in 1..=RANK {
                let d = leibniz(st.forward.image(i), &in_ext)?;
                here.push(st.inverse.apply(&d)?);
            }
            levels.push(here);
        }
        Ok(ExtendedDerivation { levels })
    }

    /// `D(a)` for `a` in `U+`.
    pub fn apply(&self, a: &OreElement) -> Result<OreElement, DerivError> {
        if !a.presentation().same_as(&g2::presentation()) {
            return Err(DerivError::WrongAlgebra);
        }
        Ok(leibniz(a, &self.on_generators()?)?)
    }
}

/// Pairs `(a, D(a))` multiplied by the Leibniz rule.
struct DualTarget<'a> {
    pres: &'a Arc<OrePresentation>,
    d: &'a Derivation,
    known: &'a BTreeMap<usize, (OreElement, OreElement)>,
}

type Dual = (OreElement, OreElement);

impl EvalTarget for DualTarget<'_> {
    type Value = Dual;

    fn scalar(&self, c: RatFunc) -> Dual {
        (OreElement::scalar(self.pres, c), OreElement::zero(self.pres))
    }

    fn generator(&self, g: GenRef) -> Result<Dual, EvalError> {
        match (g.family, g.index) {
            (Family::E, 1) => Ok((g2::x(1), self.d.e1.clone())),
            (Family::E, 2) => Ok((g2::x(RANK), self.d.e2.clone())),
            (Family::X, i) => self
                .known
                .get(&i)
                .cloned()
                .ok_or_else(|| EvalError::UnknownSymbol(g.to_string())),
            _ => Err(EvalError::UnknownSymbol(g.to_string())),
        }
    }

    fn add(&self, a: &Dual, b: &Dual) -> Result<Dual, EvalError> {
        Ok((a.0.try_add(&b.0)?, a.1.try_add(&b.1)?))
    }

    fn neg(&self, a: &Dual) -> Dual {
        (-&a.0, -&a.1)
    }

    fn mul(&self, a: &Dual, b: &Dual) -> Result<Dual, EvalError> {
        let d = a.1.mul(&b.0)?.try_add(&a.0.mul(&b.1)?)?;
        Ok((a.0.mul(&b.0)?, d))
    }

    fn as_scalar(&self, a: &Dual) -> Option<RatFunc> {
        if a.1.is_zero() {
            a.0.as_scalar()
        } else {
            None
        }
    }
}

fn unit_power(pres: &Arc<OrePresentation>, k: usize, e: i32) -> Result<OreElement, OreError> {
    let mut v = vec![0; pres.n()];
    v[k] = e;
    OreElement::monomial(pres, &v, RatFunc::one())
}

/// `D(X^e)` from `x = X`, `dx = D(X)`.
fn power_rule(pres: &Arc<OrePresentation>, k: usize, e: i32, dx: &OreElement) -> Result<OreElement, OreError> {
    let mut acc = OreElement::zero(pres);
    if e > 0 {
        for t in 0..e {
            acc = &acc + &unit_power(pres, k, t)?.mul(dx)?.mul(&unit_power(pres, k, e - 1 - t)?)?;
        }
    } else {
        let inv = unit_power(pres, k, -1)?;
        let dinv = -&inv.mul(dx)?.mul(&inv)?;
        let m = -e;
        for t in 0..m {
            acc = &acc
                + &unit_power(pres, k, -t)?
                    .mul(&dinv)?
                    .mul(&unit_power(pres, k, -(m - 1 - t))?)?;
        }
    }
    Ok(acc)
}

/// Extends generator values `gens[k] = D(X_(k+1))` to `a` by the Leibniz
/// rule, with `D(x^-1) = -x^-1 D(x) x^-1` on inverted generators.
pub fn leibniz(a: &OreElement, gens: &[OreElement]) -> Result<OreElement, OreError> {
    let pres = a.presentation();
    let n = pres.n();
    let mut acc = OreElement::zero(pres);
    for (e, c) in a.terms() {
        for k in 0..n {
            if e[k] == 0 {
                continue;
            }
            let mut pre = vec![0; n];
            pre[..k].copy_from_slice(&e[..k]);
            let mut post = vec![0; n];
            post[k + 1..].copy_from_slice(&e[k + 1..]);
            let mid = power_rule(pres, k, e[k], &gens[k])?;
            let term = OreElement::monomial(pres, &pre, c.clone())?
                .mul(&mid)?
                .mul(&OreElement::monomial(pres, &post, RatFunc::one())?)?;
            acc = &acc + &term;
        }
    }
    Ok(acc)
}

/// A derivation carried to every level of the tower.
pub struct ExtendedDerivation {
    /// Index 0 is level 7.
    levels: Vec<Vec<OreElement>>,
}

impl ExtendedDerivation {
    /// Values on the generators of level `l`.
    pub fn on_level(&self, l: usize) -> Result<&[OreElement], DerivError> {
        if !(1..=TOP).contains(&l) {
            return Err(CauchonError::BadLevel(l).into());
        }
        Ok(&self.levels[TOP - l])
    }

    /// `D(a)` for `a` at any level of the tower.
    pub fn apply(&self, a: &OreElement) -> Result<OreElement, DerivError> {
        let t = tower();
        for lv in t.levels() {
            if a.presentation().same_as(&lv.presentation) {
                return Ok(leibniz(a, &self.levels[TOP - lv.level])?);
            }
        }
        Err(DerivError::WrongAlgebra)
    }
}

/// `D(a)`, with `a` at any level of the tower.
pub fn extend_leibniz(d: &Derivation, a: &OreElement) -> Result<OreElement, DerivError> {
    if a.presentation().same_as(&g2::presentation()) {
        return d.apply(a);
    }
    d.extend()?.apply(a)
}

/// Both Serre relations with `D` applied.
#[derive(Clone, Debug)]
pub struct DerivationCheck {
    pub valid: bool,
    pub residuals: [OreElement; 2],
}

pub fn check_derivation(d: &Derivation) -> Result<DerivationCheck, DerivError> {
    let pres = g2::presentation();
    let x = [g2::x(1), g2::x(RANK)];
    let dx = [d.e1.clone(), d.e2.clone()];
    let mut residuals = Vec::with_capacity(2);
    for which in 1..=2 {
        let words = g2::serre_words(which)?;
        let mut acc = OreElement::zero(&pres);
        for (w, c) in words.terms() {
            for p in 0..w.len() {
                let mut t = OreElement::scalar(&pres, c.clone());
                for (q, &letter) in w.iter().enumerate() {
                    let f = if q == p { &dx[letter - 1] } else { &x[letter - 1] };
                    t = t.mul(f)?;
                }
                acc = &acc + &t;
            }
        }
        residuals.push(acc);
    }
    let r1 = residuals.pop().expect("two residuals");
    let r0 = residuals.pop().expect("two residuals");
    Ok(DerivationCheck {
        valid: r0.is_zero() && r1.is_zero(),
        residuals: [r0, r1],
    })
}

/// `D(T_i)` on the terminal torus.
pub fn push_to_torus(d: &Derivation) -> Result<TorusDerivationData, DerivError> {
    push_extended(&d.extend()?)
}

fn push_extended(ext: &ExtendedDerivation) -> Result<TorusDerivationData, DerivError> {
    let m = g2_matrix();
    let values = ext
        .on_level(1)?
        .iter()
        .map(|x| TorusElement::from_ore(&m, x))
        .collect::<Result<_, _>>()?;
    Ok(TorusDerivationData { values })
}

#[derive(Clone, Debug)]
pub struct DecompositionResult {
    /// Inner part, in `U+`, without constant term.
    pub g: OreElement,
    pub mu5: RatFunc,
    pub mu6: RatFunc,
    /// Eigenvalues of the diagonal part on `T1..T6`.
    pub mu_full: Vec<RatFunc>,
    /// One line per constraint checked along the way.
    pub diagnostics: Vec<String>,
}

fn int_row(payload: &str, line: usize) -> Result<Vec<i64>, DataError> {
    payload
        .split_whitespace()
        .map(|w| w.parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|e| DataError {
            line,
            message: e.to_string(),
        })
}

fn combo(coeffs: &[i64], mu: &[RatFunc]) -> RatFunc {
    coeffs
        .iter()
        .zip(mu)
        .fold(RatFunc::zero(), |acc, (&k, m)| &acc + &(m * &RatFunc::from_int(k)))
}

/// Splits a derivation of `U+` as `ad_g + mu5 D5 + mu6 D6`.
pub fn decompose(d: &Derivation) -> Result<DecompositionResult, DerivError> {
    let chk = check_derivation(d)?;
    if !chk.valid {
        return Err(DerivError::NotADerivation(
            chk.residuals[0].to_string(),
            chk.residuals[1].to_string(),
        ));
    }
    let mut diagnostics = vec!["Serre relations annihilated".to_string()];
    let data = push_to_torus(d)?;
    let split = torus_derivation_decompose(&data)?;
    diagnostics.push("torus splitting reproduces D(T1..T6)".into());
    let mu = split.mu;
    for e in g2::entries_of("mu-relation") {
        let k = e.int_arg(0)?;
        if !combo(&int_row(&e.payload, e.line)?, &mu).is_zero() {
            return Err(DerivError::MuRelation {
                index: k,
                citation: e.citation.clone(),
            });
        }
        diagnostics.push(format!("mu relation {k} holds"));
    }
    let (mu5, mu6) = (mu[4].clone(), mu[5].clone());
    for e in g2::entries_of("mu-solution") {
        let l = e.int_arg(0)?;
        let ab = int_row(&e.payload, e.line)?;
        if combo(&ab, &[mu5.clone(), mu6.clone()]) != mu[l - 1] {
            return Err(DerivError::MuRelation {
                index: l,
                citation: e.citation.clone(),
            });
        }
    }
    diagnostics.push("mu1..mu4 determined by mu5, mu6".into());

    let t = tower();
    let mut g = split.g.to_ore(t.torus())?;
    for l in 1..TOP {
        g = t.convert(&g, l, l + 1).map_err(|e| match e {
            CauchonError::NotAMember { level, .. } => DerivError::NotInLevel { level },
            e => e.into(),
        })?;
        diagnostics.push(format!("g in G^{}", l + 1));
    }
    let c = g.constant_term();
    if !c.is_zero() {
        g = &g - &OreElement::scalar(g.presentation(), c);
    }

    let rebuilt = Derivation::ad(&g)?
        .add(&Derivation::d5().scale(&mu5))
        .add(&Derivation::d6().scale(&mu6));
    if rebuilt.e1 != d.e1 {
        return Err(DerivError::Reconstruction { generator: 1 });
    }
    if rebuilt.e2 != d.e2 {
        return Err(DerivError::Reconstruction { generator: 2 });
    }
    diagnostics.push("ad_g + mu5 D5 + mu6 D6 reproduces D on e1, e2".into());
    Ok(DecompositionResult {
        g,
        mu5,
        mu6,
        mu_full: mu,
        diagnostics,
    })
}

/// Reads `D(e1) = <expr>` and `D(e2) = <expr>` lines; `#` starts a comment line.
pub fn parse_derivation(text: &str) -> Result<Derivation, DerivError> {
    let pres = g2::presentation();
    let mut vals: [Option<OreElement>; 2] = [None, None];
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let err = |message: String| DerivError::Input { line, message };
        let (lhs, rhs) = t.split_once('=').ok_or_else(|| err("expected `D(e1) = ...`".into()))?;
        let slot = match lhs.split_whitespace().collect::<String>().as_str() {
            "D(e1)" => 0,
            "D(e2)" => 1,
            other => return Err(err(format!("unknown left-hand side `{other}`"))),
        };
        let expr = parse(rhs).map_err(|e| err(e.to_string()))?;
        let target = crate::expr::OreTarget::family(&pres, Family::X);
        let v = eval(&target, &expr).map_err(|e| err(e.to_string()))?;
        if vals[slot].replace(v).is_some() {
            return Err(err(format!("D(e{}) given twice", slot + 1)));
        }
    }
    let [a, b] = vals;
    let missing = |k| DerivError::Input {
        line: text.lines().count(),
        message: format!("missing D(e{k})"),
    };
    Derivation::new(a.ok_or_else(|| missing(1))?, b.ok_or_else(|| missing(2))?)
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub label: String,
    pub mu5: RatFunc,
    pub mu6: RatFunc,
    pub inner_part_zero: bool,
}

#[derive(Clone, Debug)]
pub struct Hh1Report {
    pub dimension: usize,
    pub basis: Vec<String>,
    pub certificates: Vec<Certificate>,
}

fn certify(label: &str, d: &Derivation) -> Result<Certificate, DerivError> {
    let r = decompose(d)?;
    Ok(Certificate {
        label: label.into(),
        mu5: r.mu5,
        mu6: r.mu6,
        inner_part_zero: r.g.is_zero(),
    })
}

/// Classes of `D5`, `D6` in `Der/InnDer`, with the decompositions that show
/// them independent and inner derivations landing in the zero class.
pub fn hh1_report() -> Result<Hh1Report, DerivError> {
    let x = g2::x;
    let certificates = vec![
        certify("D5", &Derivation::d5())?,
        certify("D6", &Derivation::d6())?,
        certify("ad(X3)", &Derivation::ad(&x(3))?)?,
        certify("ad(X1*X2)", &Derivation::ad(&x(1).mul(&x(2))?)?)?,
        certify("ad(X6^2 + X4)", &Derivation::ad(&(&x(6).pow(2)? + &x(4)))?)?,
    ];
    // rank of the (mu5, mu6) vectors of the proposed basis
    let det = &(&certificates[0].mu5 * &certificates[1].mu6) - &(&certificates[0].mu6 * &certificates[1].mu5);
    let dimension = if !det.is_zero() {
        2
    } else if [&certificates[0], &certificates[1]]
        .iter()
        .any(|c| !c.mu5.is_zero() || !c.mu6.is_zero())
    {
        1
    } else {
        0
    };
    Ok(Hh1Report {
        dimension,
        basis: vec!["D5".into(), "D6".into()],
        certificates,
    })
}

#[cfg(test)]
mod tests;

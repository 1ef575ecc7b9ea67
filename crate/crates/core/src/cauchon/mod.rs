//! Deleting-derivations tower `G^7 = U+ ⊂ G^6 ⊂ ... ⊂ G^1` with explicit
//! change-of-variable maps between consecutive levels.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::coeff::{q_factorial, CoeffError, RatFunc};
use crate::data::{parse_entries, DataEntry, DataError};
use crate::expr::{eval, eval_scalar, parse, EvalError, Family, GenRef, OreTarget};
use crate::g2::{self, G2Error, RANK};
use crate::ore::{apply_delta, local_nilpotency_check, OreElement, OreError, OrePresentation, Substitution};

const CLOSED_FORMS: &str = include_str!("../../data/closed_forms.txt");

/// Top of the tower (`U+` itself).
pub const TOP: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CauchonError {
    #[error(transparent)]
    Ore(#[from] OreError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    G2(#[from] G2Error),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Data(#[from] DataError),
    #[error("level {0} is outside 1..=7")]
    BadLevel(usize),
    #[error("cannot delete delta_{l} while delta_{j} is nonzero")]
    Precondition { l: usize, j: usize },
    #[error("not a member of G^{level}: {generator} would need a negative exponent")]
    NotAMember { level: usize, generator: String },
    #[error("element does not live at level {0}")]
    WrongLevel(usize),
}

/// One deletion: level `l + 1` localized at `X_l`, then `delta_l` removed.
pub struct DeleteStep {
    pub l: usize,
    /// `q` with `sigma_l delta_l = q delta_l sigma_l`; `None` when `delta_l = 0`.
    pub q: Option<RatFunc>,
    /// The level above with `X_l` inverted; both levels embed here.
    pub ext: Arc<OrePresentation>,
    /// Smallest `n` with `delta_l^n(X_i) = 0`, for `i < l`.
    pub nilpotency: Vec<usize>,
    /// New generators written in `ext`.
    pub forward: Substitution,
    /// Generators of `ext` written in the new level.
    pub inverse: Substitution,
}

pub struct TowerLevel {
    pub level: usize,
    pub presentation: Arc<OrePresentation>,
    /// The step producing this level; `None` at the top.
    pub step: Option<DeleteStep>,
}

impl TowerLevel {
    pub fn family(&self) -> Family {
        Family::for_level(self.level)
    }

    pub fn generator(&self, k: usize) -> Result<OreElement, CauchonError> {
        Ok(OreElement::generator(&self.presentation, k)?)
    }
}

fn names(level: usize) -> Vec<String> {
    let f = Family::for_level(level);
    (1..=RANK).map(|k| format!("{}{k}", f.letter())).collect()
}

/// The first level of the tower, `U+` with generators `X1..X6`.
pub fn top_level() -> TowerLevel {
    TowerLevel {
        level: TOP,
        presentation: g2::presentation(),
        step: None,
    }
}

/// Deletes `delta_l` from `prev`, which must be level `l + 1`.
pub fn delete_step(prev: &TowerLevel, l: usize) -> Result<TowerLevel, CauchonError> {
    if l == 0 || l + 1 != prev.level {
        return Err(CauchonError::BadLevel(l));
    }
    let pres = &prev.presentation;
    if let Some(j) = (l + 1..=pres.n()).find(|&j| !pres.delta_is_zero(j)) {
        return Err(CauchonError::Precondition { l, j });
    }
    let ext = pres.localize(&[l])?;
    let new = ext.delete_derivation(l)?.renamed(names(l));
    let q = ext.skew_factor(l)?;
    let nilpotency = if q.is_some() {
        local_nilpotency_check(&ext, l, 64)?
    } else {
        vec![1; l - 1]
    };

    // delta_l^n(X_i) for n >= 1 until zero
    let gen = |k| OreElement::generator(&ext, k);
    let mut powers: Vec<Vec<OreElement>> = Vec::with_capacity(l - 1);
    for i in 1..l {
        let mut seq = Vec::new();
        let mut d = apply_delta(l, &gen(i)?)?;
        while !d.is_zero() {
            let next = apply_delta(l, &d)?;
            seq.push(d);
            d = next;
        }
        debug_assert_eq!(seq.len() + 1, nilpotency[i - 1]);
        powers.push(seq);
    }
    let coeffs = |n: usize, i: usize| -> Result<RatFunc, CauchonError> {
        let q = q.as_ref().expect("nonzero delta has a skew factor");
        let one_minus = (&RatFunc::one() - q).pow(-(n as i64))?;
        let lam = ext.lambda(l, i).pow(-(n as i64))?;
        Ok(&(&one_minus * &lam) * &q_factorial(n as u32, q).inv()?)
    };

    let mut fwd = Vec::with_capacity(RANK);
    for i in 1..=pres.n() {
        let mut x = gen(i)?;
        if i < l {
            let xl_inv = gen(l)?.inverse()?;
            let mut xl_pow = OreElement::one(&ext);
            for (k, d) in powers[i - 1].iter().enumerate() {
                xl_pow = xl_pow.mul(&xl_inv)?;
                x = &x + &d.mul(&xl_pow)?.scale(&coeffs(k + 1, i)?);
            }
        }
        fwd.push(x);
    }
    let forward = Substitution::new(&new, &ext, fwd)?;

    // old X_i = new X_i - sum_n c_n psi(delta^n(X_i)) X_l^-n, resolved from the top down
    let mut inv: Vec<OreElement> = (1..=pres.n())
        .map(|k| {
            if k >= l {
                OreElement::generator(&new, k)
            } else {
                Ok(OreElement::zero(&new))
            }
        })
        .collect::<Result<_, _>>()?;
    for i in (1..l).rev() {
        let partial = Substitution::new(&ext, &new, inv.clone())?;
        let xl_inv = OreElement::generator(&new, l)?.inverse()?;
        let mut xl_pow = OreElement::one(&new);
        let mut x = OreElement::generator(&new, i)?;
        for (k, d) in powers[i - 1].iter().enumerate() {
            xl_pow = xl_pow.mul(&xl_inv)?;
            x = &x - &partial.apply(d)?.mul(&xl_pow)?.scale(&coeffs(k + 1, i)?);
        }
        inv[i - 1] = x;
    }
    let inverse = Substitution::new(&ext, &new, inv)?;

    Ok(TowerLevel {
        level: l,
        presentation: new,
        step: Some(DeleteStep {
            l,
            q,
            ext,
            nilpotency,
            forward,
            inverse,
        }),
    })
}

pub struct Tower {
    /// Index 0 is level 7, index 6 is level 1.
    levels: Vec<TowerLevel>,
}

/// Builds all seven levels.
pub fn run_tower() -> Result<Tower, CauchonError> {
    let mut levels = vec![top_level()];
    for l in (1..TOP).rev() {
        let next = delete_step(levels.last().expect("nonempty"), l)?;
        levels.push(next);
    }
    Ok(Tower { levels })
}

/// Shared copy of the tower.
pub fn tower() -> &'static Tower {
    static TOWER: OnceLock<Tower> = OnceLock::new();
    TOWER.get_or_init(|| run_tower().expect("tower construction succeeds on the bundled tables"))
}

impl Tower {
    pub fn levels(&self) -> &[TowerLevel] {
        &self.levels
    }

    pub fn level(&self, l: usize) -> Result<&TowerLevel, CauchonError> {
        if !(1..=TOP).contains(&l) {
            return Err(CauchonError::BadLevel(l));
        }
        Ok(&self.levels[TOP - l])
    }

    /// The step producing level `l`, for `l` in 1..=6.
    pub fn step(&self, l: usize) -> &DeleteStep {
        self.levels[TOP - l]
            .step
            .as_ref()
            .expect("levels below the top have a step")
    }

    /// The quantum torus `G^1`.
    pub fn torus(&self) -> &Arc<OrePresentation> {
        &self.levels[TOP - 1].presentation
    }

    /// Moves `elem` from level `from` to level `to`.
    ///
    /// Going up fails with [`CauchonError::NotAMember`] when the element is
    /// not in the smaller algebra.
    pub fn convert(&self, elem: &OreElement, from: usize, to: usize) -> Result<OreElement, CauchonError> {
        let src = self.level(from)?;
        self.level(to)?;
        if !elem.presentation().same_as(&src.presentation) {
            return Err(CauchonError::WrongLevel(from));
        }
        let mut x = elem.clone();
        if to < from {
            for l in (to..from).rev() {
                let st = self.step(l);
                x = st.inverse.apply(&x.rehome(&st.ext)?)?;
            }
        } else {
            for l in from..to {
                let st = self.step(l);
                let up = st.forward.apply(&x)?;
                let target = &self.level(l + 1)?.presentation;
                x = up.rehome(target).map_err(|e| match e {
                    OreError::NegativeExponent { generator } => CauchonError::NotAMember {
                        level: l + 1,
                        generator,
                    },
                    e => e.into(),
                })?;
            }
        }
        Ok(x)
    }

    /// Generator `g` of its own family's level, carried to level `to`.
    pub fn resolve(&self, g: GenRef, to: usize) -> Result<OreElement, CauchonError> {
        let home = match g.family {
            Family::E => {
                let k = match g.index {
                    1 => 1,
                    2 => RANK,
                    _ => return Err(EvalError::UnknownSymbol(g.to_string()).into()),
                };
                return self.convert(&self.level(TOP)?.generator(k)?, TOP, to);
            }
            f => f.level(),
        };
        if g.index == 0 || g.index > RANK {
            return Err(EvalError::UnknownSymbol(g.to_string()).into());
        }
        self.convert(&self.level(home)?.generator(g.index)?, home, to)
    }

    /// Evaluates `text` at level `to`, each symbol taken at its family's level.
    pub fn eval_at(&self, text: &str, to: usize) -> Result<OreElement, CauchonError> {
        let e = parse(text).map_err(|source| G2Error::Parse { line: 1, source })?;
        let target = OreTarget::with_resolver(&self.level(to)?.presentation, move |g| {
            self.resolve(g, to).map_err(|e| match e {
                CauchonError::Eval(e) => e,
                e => EvalError::Other(e.to_string()),
            })
        });
        Ok(eval(&target, &e)?)
    }

    /// Per-level tables and change-of-variable formulas in the text grammar.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for lv in &self.levels {
            let _ = writeln!(out, "level {} {}", lv.level, lv.family().letter());
            out.push_str(&g2::presentation_dump(&lv.presentation));
            if let Some(st) = &lv.step {
                if let Some(q) = &st.q {
                    let _ = writeln!(out, "q {} = {q}", st.l);
                }
                for (k, im) in st.forward.images().iter().enumerate() {
                    let _ = writeln!(out, "forward {} = {im}", lv.presentation.name(k + 1));
                }
                for (k, im) in st.inverse.images().iter().enumerate() {
                    let _ = writeln!(out, "inverse {} = {im}", st.ext.name(k + 1));
                }
            }
            out.push('\n');
        }
        out
    }
}

fn closed_entries() -> &'static [DataEntry] {
    static E: OnceLock<Vec<DataEntry>> = OnceLock::new();
    E.get_or_init(|| parse_entries(CLOSED_FORMS).expect("bundled closed forms are well formed"))
}

fn eval_entry(e: &DataEntry, pres: &Arc<OrePresentation>, family: Family) -> Result<OreElement, CauchonError> {
    let expr = parse(&e.payload).map_err(|source| G2Error::Parse { line: e.line, source })?;
    Ok(eval(&OreTarget::family(pres, family), &expr)?)
}

/// A computed change of variables next to its printed form.
#[derive(Clone, Debug)]
pub struct ClosedForm {
    pub label: String,
    /// Step `l` and generator `i` the formula belongs to.
    pub step: usize,
    pub index: usize,
    pub forward: bool,
    pub computed: String,
    pub printed: String,
    pub matches: bool,
    pub citation: String,
}

/// Compares every transcribed forward and inverse formula with the tower.
pub fn closed_form_report() -> Result<Vec<ClosedForm>, CauchonError> {
    let t = tower();
    let mut out = Vec::new();
    for e in closed_entries() {
        let forward = match e.kind.as_str() {
            "forward" => true,
            "inverse" => false,
            _ => continue,
        };
        let (l, i) = (e.int_arg(0)?, e.int_arg(1)?);
        let st = t.step(l);
        let (computed, printed, label) = if forward {
            let fam = Family::for_level(l + 1);
            (
                st.forward.image(i).clone(),
                eval_entry(e, &st.ext, fam)?,
                format!("{}{i}", Family::for_level(l).letter()),
            )
        } else {
            let fam = Family::for_level(l);
            (
                st.inverse.image(i).clone(),
                eval_entry(e, &t.level(l)?.presentation, fam)?,
                format!("{}{i} in {}", Family::for_level(l + 1).letter(), fam.letter()),
            )
        };
        out.push(ClosedForm {
            label,
            step: l,
            index: i,
            forward,
            matches: computed == printed,
            computed: computed.to_string(),
            printed: printed.to_string(),
            citation: e.citation.clone(),
        });
    }
    Ok(out)
}

/// Relations of level `l` that fail when its generators are replaced by the
/// printed forward formulas; empty when the printed formulas define a homomorphism.
pub fn printed_forward_failures(l: usize) -> Result<Vec<(usize, usize)>, CauchonError> {
    let t = tower();
    let st = t.step(l);
    let mut images = Vec::with_capacity(RANK);
    for i in 1..=RANK {
        let e = closed_entries()
            .iter()
            .find(|e| e.matches("forward", &[&l.to_string(), &i.to_string()]))
            .ok_or_else(|| G2Error::Missing(format!("forward {l} {i}")))?;
        images.push(eval_entry(e, &st.ext, Family::for_level(l + 1))?);
    }
    let sub = Substitution::new(&t.level(l)?.presentation, &st.ext, images)?;
    Ok(sub
        .relation_residuals()?
        .into_iter()
        .filter(|(_, r)| !r.is_zero())
        .map(|(p, _)| p)
        .collect())
}

/// The printed inverse formula for generator `i` of step `l`, pushed back up
/// through the forward map, minus that generator; zero iff the formula is right.
pub fn printed_inverse_residual(l: usize, i: usize) -> Result<OreElement, CauchonError> {
    let t = tower();
    let st = t.step(l);
    let e = closed_entries()
        .iter()
        .find(|e| e.matches("inverse", &[&l.to_string(), &i.to_string()]))
        .ok_or_else(|| G2Error::Missing(format!("inverse {l} {i}")))?;
    let printed = eval_entry(e, &t.level(l)?.presentation, Family::for_level(l))?;
    Ok(&st.forward.apply(&printed)? - &OreElement::generator(&st.ext, i)?)
}

/// Commutation scalar of `Ti Tj = c Tj Ti` in the terminal torus next to the printed one.
#[derive(Clone, Debug)]
pub struct TorusRelation {
    pub i: usize,
    pub j: usize,
    pub computed: RatFunc,
    pub printed: RatFunc,
    pub citation: String,
}

pub fn torus_relations() -> Result<Vec<TorusRelation>, CauchonError> {
    let torus = tower().torus();
    let mut out = Vec::new();
    for e in closed_entries().iter().filter(|e| e.kind == "torus") {
        let (i, j) = (e.int_arg(0)?, e.int_arg(1)?);
        let ti = OreElement::generator(torus, i)?;
        let tj = OreElement::generator(torus, j)?;
        // Ti Tj against Tj Ti, both monomials in normal form
        let a = ti.mul(&tj)?;
        let b = tj.mul(&ti)?;
        let (ea, ca) = a.as_monomial().expect("torus products are monomials");
        let (eb, cb) = b.as_monomial().expect("torus products are monomials");
        debug_assert_eq!(ea, eb);
        out.push(TorusRelation {
            i,
            j,
            computed: ca.checked_div(cb)?,
            printed: eval_scalar(&parse(&e.payload).map_err(|source| G2Error::Parse { line: e.line, source })?)?,
            citation: e.citation.clone(),
        });
    }
    Ok(out)
}

/// `d_k` from the recursion `d_k = (r^2 s)^(k-1) d_1 + r^3 d_(k-1)`.
pub fn d_recursive(k: usize) -> Result<RatFunc, CauchonError> {
    let e = closed_entries()
        .iter()
        .find(|e| e.matches("dk", &["1"]))
        .ok_or_else(|| G2Error::Missing("dk 1".into()))?;
    let d1 = eval_scalar(&parse(&e.payload).map_err(|source| G2Error::Parse { line: e.line, source })?)?;
    let r2s = &RatFunc::r().pow(2)? * &RatFunc::s();
    let r3 = RatFunc::r().pow(3)?;
    let mut d = d1.clone();
    for m in 2..=k {
        d = &(&r2s.pow(m as i64 - 1)? * &d1) + &(&r3 * &d);
    }
    Ok(d)
}

/// `U3^-k U1` in `G^4` with `U3` inverted, split as `a U1 U3^-k - d U2 U3^-(k+1)`.
#[derive(Clone, Debug)]
pub struct U3Identity {
    pub k: usize,
    pub product: OreElement,
    /// Coefficient of `U1 U3^-k`.
    pub leading: RatFunc,
    /// `d_k` read off the product.
    pub d_computed: RatFunc,
    pub d_recursive: RatFunc,
    /// True when the product has no terms besides the two above.
    pub two_terms: bool,
}

/// The algebra `G^4[U3^-1]` in which the `U3^-k U1` identities live.
pub fn g4_with_u3_inverted() -> Arc<OrePresentation> {
    tower().step(3).ext.clone()
}

pub fn u3_identity(k: usize) -> Result<U3Identity, CauchonError> {
    let pres = g4_with_u3_inverted();
    let u = |g| OreElement::generator(&pres, g);
    let product = u(3)?.pow(-(k as i64))?.mul(&u(1)?)?;
    let k = k as i32;
    let mut e1 = [0; RANK];
    e1[0] = 1;
    e1[2] = -k;
    let mut e2 = [0; RANK];
    e2[1] = 1;
    e2[2] = -k - 1;
    let leading = product.coeff(&e1);
    let d_computed = -product.coeff(&e2);
    let two_terms = product.terms().len() == usize::from(!leading.is_zero()) + usize::from(!d_computed.is_zero());
    Ok(U3Identity {
        k: k as usize,
        d_recursive: d_recursive(k as usize)?,
        product,
        leading,
        d_computed,
        two_terms,
    })
}

/// Writes `a` as `sum_c b_c U3^c` with each `b_c` free of `U3`.
pub fn u3_decomposition(a: &OreElement) -> Result<BTreeMap<i32, OreElement>, CauchonError> {
    let pres = g4_with_u3_inverted();
    if !a.presentation().same_as(&pres) {
        return Err(CauchonError::WrongLevel(4));
    }
    let mut out: BTreeMap<i32, OreElement> = BTreeMap::new();
    for (e, c) in a.terms() {
        let cexp = e[2];
        // U3^c Uj^x = lambda_(j,3)^(-c x) Uj^x U3^c for j > 3
        let mut f = c.clone();
        for j in 4..=RANK {
            if e[j - 1] != 0 {
                f = &f * &pres.lambda(j, 3).pow(-i64::from(cexp) * i64::from(e[j - 1]))?;
            }
        }
        let mut rest = e.clone();
        rest[2] = 0;
        let b = OreElement::monomial(&pres, &rest, f)?;
        let slot = out.entry(cexp).or_insert_with(|| OreElement::zero(&pres));
        *slot = &*slot + &b;
    }
    out.retain(|_, b| !b.is_zero());
    Ok(out)
}

/// `sum_c b_c U3^c`.
pub fn u3_recompose(parts: &BTreeMap<i32, OreElement>) -> Result<OreElement, CauchonError> {
    let pres = g4_with_u3_inverted();
    let u3 = OreElement::generator(&pres, 3)?;
    let mut acc = OreElement::zero(&pres);
    for (&c, b) in parts {
        acc = &acc + &b.mul(&u3.pow(i64::from(c))?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests;

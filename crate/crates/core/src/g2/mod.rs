//! The G2 instance: transcribed tables, the Ore presentation of `U+`, and
//! consistency checks between the defining relations and the presentation.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::coeff::{eta, xi, zeta, RatFunc};
use crate::data::{parse_entries, DataEntry, DataError};
use crate::expr::{
    eval, eval_scalar, parse, EvalError, Family, FreeTarget, FreeWordExpr, GenRef, OreTarget, ParseError,
};
use crate::ore::{format_terms, MonomialOrder, OreElement, OreError, OrePresentation, PresentationBuilder};

const TABLES: &str = include_str!("../../data/g2_tables.txt");

/// Number of root vectors.
pub const RANK: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum G2Error {
    #[error(transparent)]
    Data(#[from] DataError),
    #[error("data line {line}: {source}")]
    Parse { line: usize, source: ParseError },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Ore(#[from] OreError),
    #[error("no `{0}` entry in the tables")]
    Missing(String),
}

fn entries() -> &'static [DataEntry] {
    static ENTRIES: OnceLock<Vec<DataEntry>> = OnceLock::new();
    ENTRIES.get_or_init(|| parse_entries(TABLES).expect("bundled tables are well formed"))
}

/// The table entry `kind args...`.
pub fn entry(kind: &str, args: &[&str]) -> Result<&'static DataEntry, G2Error> {
    entries()
        .iter()
        .find(|e| e.matches(kind, args))
        .ok_or_else(|| G2Error::Missing(format!("{kind} {}", args.join(" "))))
}

/// All entries of one kind, in file order.
pub fn entries_of(kind: &str) -> impl Iterator<Item = &'static DataEntry> + '_ {
    entries().iter().filter(move |e| e.kind == kind)
}

pub(crate) fn parse_payload(e: &DataEntry) -> Result<crate::expr::Expr, G2Error> {
    parse(&e.payload).map_err(|source| G2Error::Parse { line: e.line, source })
}

pub fn entry_scalar(e: &DataEntry) -> Result<RatFunc, G2Error> {
    Ok(eval_scalar(&parse_payload(e)?)?)
}

/// Named scalars of the instance.
#[derive(Clone, Debug)]
pub struct G2Constants {
    pub xi: RatFunc,
    pub eta: RatFunc,
    pub zeta: RatFunc,
    /// `q_l` for `l` in 3..=6.
    pub q: BTreeMap<usize, RatFunc>,
}

pub fn constants() -> Result<G2Constants, G2Error> {
    let mut q = BTreeMap::new();
    for e in entries_of("q") {
        q.insert(e.int_arg(0)?, entry_scalar(e)?);
    }
    Ok(G2Constants {
        xi: xi(),
        eta: eta(),
        zeta: zeta(),
        q,
    })
}

fn x_letters(family: Family) -> impl Fn(GenRef) -> Option<usize> {
    move |g| (g.family == family && (1..=RANK).contains(&g.index)).then_some(g.index)
}

/// Builds the six-generator presentation from the tables.
pub fn build_presentation() -> Result<Arc<OrePresentation>, G2Error> {
    let mut b = PresentationBuilder::with_prefix("X", RANK);
    for e in entries_of("lambda") {
        b.lambda(e.int_arg(0)?, e.int_arg(1)?, entry_scalar(e)?);
    }
    let target = FreeTarget {
        letter: x_letters(Family::X),
    };
    for e in entries_of("p") {
        let (j, i) = (e.int_arg(0)?, e.int_arg(1)?);
        let w: FreeWordExpr = eval(&target, &parse_payload(e)?)?;
        for word in w.to_words() {
            b.p_term(j, i, word);
        }
    }
    if let Ok(v) = std::env::var(crate::BUDGET_ENV) {
        if let Ok(n) = v.trim().parse() {
            b.budget(n);
        }
    }
    Ok(b.build()?)
}

/// Shared copy of the presentation.
pub fn presentation() -> Arc<OrePresentation> {
    static PRES: OnceLock<Arc<OrePresentation>> = OnceLock::new();
    PRES.get_or_init(|| build_presentation().expect("bundled tables define a valid presentation"))
        .clone()
}

/// `X_k` in `U+`.
pub fn x(k: usize) -> OreElement {
    OreElement::generator(&presentation(), k).expect("index in range")
}

/// Evaluates an expression in the symbols `X1..X6`, `e1`, `e2`.
pub fn eval_in_u(pres: &Arc<OrePresentation>, text: &str) -> Result<OreElement, G2Error> {
    let e = parse(text).map_err(|source| G2Error::Parse { line: 1, source })?;
    Ok(eval(&OreTarget::family(pres, Family::X), &e)?)
}

/// Serre relation `which` as a combination of words in `e1` (letter 1) and `e2` (letter 2).
pub fn serre_words(which: usize) -> Result<FreeWordExpr, G2Error> {
    let e = entry("serre", &[&which.to_string()])?;
    let target = FreeTarget {
        letter: |g: GenRef| (g.family == Family::E && (g.index == 1 || g.index == 2)).then_some(g.index),
    };
    Ok(eval(&target, &parse_payload(e)?)?)
}

/// Normal form of Serre relation `which` with `e1 = X1`, `e2 = X6`.
pub fn serre_residual(which: usize) -> Result<OreElement, G2Error> {
    Ok(serre_words(which)?.to_ore(&presentation(), &[1, RANK])?)
}

/// Serre relation 1 with the coefficient of `e1 e2^2` increased by one; a
/// correct engine must not reduce it to zero.
pub fn perturbed_serre_residual() -> Result<OreElement, G2Error> {
    let bump = FreeWordExpr::letter(1)
        .mul(&FreeWordExpr::letter(2))
        .mul(&FreeWordExpr::letter(2));
    Ok(serre_words(1)?.add(&bump).to_ore(&presentation(), &[1, RANK])?)
}

/// Defining expression of root vector `i` evaluated in the presentation, minus `X_i`.
pub fn root_vector_residual(i: usize) -> Result<OreElement, G2Error> {
    let pres = presentation();
    let e = entry("root", &[&i.to_string()])?;
    let rhs = eval(&OreTarget::family(&pres, Family::X), &parse_payload(e)?)?;
    Ok(&rhs - &x(i))
}

/// Normal forms of `Xj Xi` and of the printed right-hand side of its identity.
pub fn relation_sides(j: usize, i: usize) -> Result<(OreElement, OreElement), G2Error> {
    let pres = presentation();
    let e = entry("relation", &[&j.to_string(), &i.to_string()])?;
    let lhs = x(j).mul(&x(i))?;
    let rhs = eval(&OreTarget::family(&pres, Family::X), &parse_payload(e)?)?;
    Ok((lhs, rhs))
}

/// Plain-text table dump: generators, invertible set, lambda and P tables.
pub fn presentation_dump(pres: &OrePresentation) -> String {
    let mut out = String::new();
    out.push_str(&format!("generators {}\n", pres.names().join(" ")));
    let inv: Vec<&str> = pres.invertible_set().iter().map(|&g| pres.name(g)).collect();
    out.push_str(&format!(
        "invertible {}\n",
        if inv.is_empty() {
            "none".to_string()
        } else {
            inv.join(" ")
        }
    ));
    for j in 2..=pres.n() {
        for i in 1..j {
            out.push_str(&format!("lambda {j} {i} = {}\n", pres.lambda(j, i)));
        }
    }
    for j in 2..=pres.n() {
        for i in 1..j {
            let t = pres.p0(j - 1, i - 1);
            out.push_str(&format!(
                "p {j} {i} = {}\n",
                format_terms(t, pres.names(), MonomialOrder::Ascending)
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests;

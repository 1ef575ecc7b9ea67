//! Quantum tori with monomial commutation scalars: products, centers and
//! the inner-plus-diagonal splitting of derivations.
//!
//! Monomials are `T^g = T1^g1 ... Tn^gn`. With `Ti Tj = q_ij Tj Ti`,
//! `T^a T^b = chi(a, b) T^(a+b)` where `chi(a, b) = prod_{i<j} q_ji^(a_j b_i)`:
//! the scalar collects on the left while letters of `b` move past those of `a`.

mod kernel;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::One;
use thiserror::Error;

use crate::coeff::{CoeffError, RatFunc};
use crate::data::{parse_entries, DataEntry, DataError};
use crate::ore::{OreElement, OreError, OrePresentation, Terms};

pub use kernel::integer_kernel;

const CENTER_FORMS: &str = include_str!("../../data/center_forms.txt");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorusError {
    #[error("q_{i}{j} = {value} is not a monomial r^a s^b")]
    NotMonomial { i: usize, j: usize, value: String },
    #[error("q_{i}{j} q_{j}{i} != 1")]
    NotInverse { i: usize, j: usize },
    #[error("presentation is not a quantum torus")]
    NotATorus,
    #[error("exponent vector of length {got}, expected {n}")]
    Length { got: usize, n: usize },
    #[error("elements of different tori")]
    Mismatch,
    #[error("integer overflow in kernel computation")]
    Overflow,
    #[error("T^{gamma:?} is central, so its coefficient in g is undetermined")]
    CentralMonomial { gamma: Vec<i32> },
    #[error("inconsistent data at T{generator}, monomial T^{gamma:?}")]
    Inconsistent { generator: usize, gamma: Vec<i32> },
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Ore(#[from] OreError),
    #[error(transparent)]
    Data(#[from] DataError),
}

/// `q_ij` stored as exponent pairs `(a, b)` meaning `r^a s^b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutationMatrix {
    n: usize,
    exps: Vec<Vec<(i64, i64)>>,
}

impl CommutationMatrix {
    /// From a full table `q[i][j]` (0-based, diagonal ignored).
    pub fn new(q: &[Vec<RatFunc>]) -> Result<Self, TorusError> {
        let n = q.len();
        let mut exps = vec![vec![(0, 0); n]; n];
        for i in 0..n {
            if q[i].len() != n {
                return Err(TorusError::Length { got: q[i].len(), n });
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                exps[i][j] = match q[i][j].as_monomial() {
                    Some((c, a, b)) if c.is_one() => (a, b),
                    _ => {
                        return Err(TorusError::NotMonomial {
                            i: i + 1,
                            j: j + 1,
                            value: q[i][j].to_string(),
                        })
                    }
                };
            }
        }
        for i in 0..n {
            for j in 0..i {
                let (a, b) = exps[i][j];
                if exps[j][i] != (-a, -b) {
                    return Err(TorusError::NotInverse { i: i + 1, j: j + 1 });
                }
            }
        }
        Ok(CommutationMatrix { n, exps })
    }

    /// All generators commute.
    pub fn trivial(n: usize) -> Self {
        CommutationMatrix {
            n,
            exps: vec![vec![(0, 0); n]; n],
        }
    }

    /// Reads `q_ij = lambda_(j,i)^-1` off a presentation without derivation terms.
    pub fn from_presentation(pres: &OrePresentation) -> Result<Self, TorusError> {
        if !pres.is_torus_like() {
            return Err(TorusError::NotATorus);
        }
        let n = pres.n();
        let mut q = vec![vec![RatFunc::one(); n]; n];
        for j in 2..=n {
            for i in 1..j {
                q[j - 1][i - 1] = pres.lambda(j, i).clone();
                q[i - 1][j - 1] = pres.lambda(j, i).inv()?;
            }
        }
        Self::new(&q)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `q_ij`, generators numbered from 1.
    pub fn q(&self, i: usize, j: usize) -> RatFunc {
        let (a, b) = self.exps[i - 1][j - 1];
        RatFunc::rs(a, b)
    }

    pub fn q_exps(&self, i: usize, j: usize) -> (i64, i64) {
        self.exps[i - 1][j - 1]
    }

    fn check(&self, g: &[i32]) -> Result<(), TorusError> {
        if g.len() != self.n {
            return Err(TorusError::Length {
                got: g.len(),
                n: self.n,
            });
        }
        Ok(())
    }

    /// Exponents of `chi(a, b)`.
    pub fn chi_exps(&self, a: &[i32], b: &[i32]) -> (i64, i64) {
        let (mut x, mut y) = (0, 0);
        for j in 0..self.n {
            for i in 0..j {
                let k = i64::from(a[j]) * i64::from(b[i]);
                if k != 0 {
                    let (qa, qb) = self.exps[j][i];
                    x += qa * k;
                    y += qb * k;
                }
            }
        }
        (x, y)
    }

    pub fn chi(&self, a: &[i32], b: &[i32]) -> RatFunc {
        let (x, y) = self.chi_exps(a, b);
        RatFunc::rs(x, y)
    }

    /// Exponents of `kappa_k(g)` with `Tk T^g = kappa_k(g) T^g Tk`.
    pub fn kappa_exps(&self, k: usize, g: &[i32]) -> (i64, i64) {
        let (mut x, mut y) = (0, 0);
        for (j, &e) in g.iter().enumerate() {
            if j + 1 != k && e != 0 {
                let (qa, qb) = self.exps[k - 1][j];
                x += qa * i64::from(e);
                y += qb * i64::from(e);
            }
        }
        (x, y)
    }

    pub fn kappa(&self, k: usize, g: &[i32]) -> RatFunc {
        let (x, y) = self.kappa_exps(k, g);
        RatFunc::rs(x, y)
    }

    /// The linear forms in `g` whose vanishing makes `T^g` commute with `Tk`:
    /// for each `k`, the `r`-exponent then the `s`-exponent of `kappa_k(g)`.
    pub fn centrality_forms(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::with_capacity(2 * self.n);
        for k in 0..self.n {
            let mut fr = vec![0; self.n];
            let mut fs = vec![0; self.n];
            for j in 0..self.n {
                if j != k {
                    fr[j] = self.exps[k][j].0;
                    fs[j] = self.exps[k][j].1;
                }
            }
            out.push(fr);
            out.push(fs);
        }
        out
    }
}

/// Basis of the lattice of `g` with `T^g` central; relies on `r^m s^n = 1`
/// only for `m = n = 0`.
pub fn center_kernel(m: &CommutationMatrix) -> Result<Vec<Vec<i64>>, TorusError> {
    integer_kernel(&m.centrality_forms(), m.n)
}

/// A transcribed centrality form next to the computed one.
#[derive(Clone, Debug)]
pub struct FormCheck {
    pub generator: usize,
    /// `"r"` or `"s"`.
    pub variable: String,
    pub computed: Vec<i64>,
    pub printed: Vec<i64>,
    pub citation: String,
}

impl FormCheck {
    pub fn matches(&self) -> bool {
        self.computed == self.printed
    }
}

fn form_entries() -> &'static [DataEntry] {
    static E: OnceLock<Vec<DataEntry>> = OnceLock::new();
    E.get_or_init(|| parse_entries(CENTER_FORMS).expect("bundled center forms are well formed"))
}

/// Compares the centrality forms of `m` with the transcribed table.
pub fn center_form_checks(m: &CommutationMatrix) -> Result<Vec<FormCheck>, TorusError> {
    let forms = m.centrality_forms();
    let mut out = Vec::new();
    for e in form_entries().iter().filter(|e| e.kind == "form") {
        let k = e.int_arg(0)?;
        let var = e.args.get(1).cloned().unwrap_or_default();
        let row = match var.as_str() {
            "r" => 0,
            "s" => 1,
            _ => {
                return Err(DataError {
                    line: e.line,
                    message: format!("unknown variable `{var}`"),
                }
                .into())
            }
        };
        let printed = e
            .payload
            .split_whitespace()
            .map(|w| w.parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|err| DataError {
                line: e.line,
                message: err.to_string(),
            })?;
        out.push(FormCheck {
            generator: k,
            variable: var,
            computed: forms[2 * (k - 1) + row].clone(),
            printed,
            citation: e.citation.clone(),
        });
    }
    Ok(out)
}

/// Finite sum of `c_g T^g`.
#[derive(Clone, PartialEq, Eq)]
pub struct TorusElement {
    m: Arc<CommutationMatrix>,
    terms: BTreeMap<Vec<i32>, RatFunc>,
}

impl TorusElement {
    pub fn zero(m: &Arc<CommutationMatrix>) -> Self {
        TorusElement {
            m: m.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(m: &Arc<CommutationMatrix>, g: &[i32], c: RatFunc) -> Result<Self, TorusError> {
        m.check(g)?;
        let mut out = Self::zero(m);
        if !c.is_zero() {
            out.terms.insert(g.to_vec(), c);
        }
        Ok(out)
    }

    pub fn scalar(m: &Arc<CommutationMatrix>, c: RatFunc) -> Self {
        Self::monomial(m, &vec![0; m.n], c).expect("length matches")
    }

    /// `T_k^e`.
    pub fn generator_pow(m: &Arc<CommutationMatrix>, k: usize, e: i32) -> Self {
        let mut g = vec![0; m.n];
        g[k - 1] = e;
        Self::monomial(m, &g, RatFunc::one()).expect("length matches")
    }

    pub fn matrix(&self) -> &Arc<CommutationMatrix> {
        &self.m
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i32>, RatFunc> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, g: &[i32]) -> RatFunc {
        self.terms.get(g).cloned().unwrap_or_else(RatFunc::zero)
    }

    fn add_term(&mut self, g: Vec<i32>, c: RatFunc) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(g) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn same(&self, other: &Self) -> Result<(), TorusError> {
        if Arc::ptr_eq(&self.m, &other.m) || *self.m == *other.m {
            Ok(())
        } else {
            Err(TorusError::Mismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, TorusError> {
        self.same(other)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, TorusError> {
        self.add(&other.scale(&-RatFunc::one()))
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        let mut out = Self::zero(&self.m);
        if !c.is_zero() {
            for (g, x) in &self.terms {
                out.terms.insert(g.clone(), x * c);
            }
        }
        out
    }

    /// Product via the bicharacter.
    pub fn mul(&self, other: &Self) -> Result<Self, TorusError> {
        self.same(other)?;
        let mut out = Self::zero(&self.m);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let g: Vec<i32> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                out.add_term(g, &(x * y) * &self.m.chi(a, b));
            }
        }
        Ok(out)
    }

    /// Inverse of a single monomial.
    pub fn inverse_monomial(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (g, c) = self.terms.iter().next()?;
        let neg: Vec<i32> = g.iter().map(|x| -x).collect();
        // T^g T^-g = chi(g, -g)
        let f = self.m.chi(g, &neg);
        let c = (c * &f).inv().ok()?;
        Self::monomial(&self.m, &neg, c).ok()
    }

    pub fn from_ore(m: &Arc<CommutationMatrix>, a: &OreElement) -> Result<Self, TorusError> {
        let mut out = Self::zero(m);
        for (e, c) in a.terms() {
            m.check(e)?;
            out.terms.insert(e.to_vec(), c.clone());
        }
        Ok(out)
    }

    pub fn to_ore(&self, pres: &Arc<OrePresentation>) -> Result<OreElement, TorusError> {
        let mut t = Terms::new();
        for (g, c) in &self.terms {
            t.insert(g.iter().copied().collect(), c.clone());
        }
        Ok(OreElement::from_terms(pres, t)?)
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.m.n).map(|k| format!("T{k}")).collect();
        let t: Terms = self
            .terms
            .iter()
            .map(|(g, c)| (g.iter().copied().collect(), c.clone()))
            .collect();
        f.write_str(&crate::ore::format_terms(
            &t,
            &names,
            crate::ore::MonomialOrder::Ascending,
        ))
    }
}

impl fmt::Debug for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Values `D(T_i)` of a derivation on the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusDerivationData {
    pub values: Vec<TorusElement>,
}

impl TorusDerivationData {
    /// `ad_g(T_i) = g T_i - T_i g`.
    pub fn inner(g: &TorusElement) -> Result<Self, TorusError> {
        let m = g.matrix();
        let values = (1..=m.n)
            .map(|k| {
                let t = TorusElement::generator_pow(m, k, 1);
                g.mul(&t)?.sub(&t.mul(g)?)
            })
            .collect::<Result<_, _>>()?;
        Ok(TorusDerivationData { values })
    }

    /// `T_i -> mu_i T_i`.
    pub fn diagonal(m: &Arc<CommutationMatrix>, mu: &[RatFunc]) -> Self {
        TorusDerivationData {
            values: (1..=m.n)
                .map(|k| TorusElement::generator_pow(m, k, 1).scale(&mu[k - 1]))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, TorusError> {
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_, _>>()?;
        Ok(TorusDerivationData { values })
    }
}

/// `D = ad_g + theta` with `theta(T_i) = mu_i T_i` and `g` without constant term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusSplitting {
    pub g: TorusElement,
    pub mu: Vec<RatFunc>,
}

/// Splits derivation data into inner and diagonal parts; fails unless the
/// recovered pair reproduces every input value.
pub fn torus_derivation_decompose(data: &TorusDerivationData) -> Result<TorusSplitting, TorusError> {
    let m = data
        .values
        .first()
        .map(|v| v.matrix().clone())
        .ok_or(TorusError::Length { got: 0, n: 0 })?;
    if data.values.len() != m.n {
        return Err(TorusError::Length {
            got: data.values.len(),
            n: m.n,
        });
    }
    let zero = vec![0; m.n];
    let mut mu = Vec::with_capacity(m.n);
    // E_k = D(T_k) T_k^-1 = mu_k + sum_g c_g (1 - kappa_k(g)) T^g
    let mut e = Vec::with_capacity(m.n);
    for k in 1..=m.n {
        let ek = data.values[k - 1].mul(&TorusElement::generator_pow(&m, k, -1))?;
        mu.push(ek.coeff(&zero));
        e.push(ek);
    }
    let mut g = TorusElement::zero(&m);
    let mut support: Vec<&Vec<i32>> = e.iter().flat_map(|x| x.terms.keys()).filter(|k| **k != zero).collect();
    support.sort();
    support.dedup();
    for gamma in support {
        let k = (1..=m.n)
            .find(|&k| m.kappa_exps(k, gamma) != (0, 0))
            .ok_or_else(|| TorusError::CentralMonomial { gamma: gamma.clone() })?;
        let denom = &RatFunc::one() - &m.kappa(k, gamma);
        g.add_term(gamma.clone(), e[k - 1].coeff(gamma).checked_div(&denom)?);
    }
    let rebuilt = TorusDerivationData::inner(&g)?.add(&TorusDerivationData::diagonal(&m, &mu))?;
    for (k, (want, got)) in data.values.iter().zip(&rebuilt.values).enumerate() {
        if want != got {
            let diff = want.sub(got)?;
            let gamma = diff.terms.keys().next().cloned().unwrap_or_default();
            return Err(TorusError::Inconsistent {
                generator: k + 1,
                gamma,
            });
        }
    }
    Ok(TorusSplitting { g, mu })
}

/// The commutation matrix of the terminal torus of the tower.
pub fn g2_matrix() -> Arc<CommutationMatrix> {
    static M: OnceLock<Arc<CommutationMatrix>> = OnceLock::new();
    M.get_or_init(|| {
        Arc::new(
            CommutationMatrix::from_presentation(crate::cauchon::tower().torus())
                .expect("terminal level is a monomial torus"),
        )
    })
    .clone()
}

#[cfg(test)]
mod tests;

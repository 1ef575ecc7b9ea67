use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::coeff::RatFunc;

use super::element::OreElement;
use super::rewrite::{letters_of, Letters};
use super::{Exps, OreError, Terms};

/// Default number of rewrite steps a single straightening may take.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// One `(generator, exponent)` factor of a word, generators numbered from 1.
pub type Letter = (usize, i32);

/// A scalar times an arbitrary (unordered) product of generator powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    pub letters: Vec<Letter>,
    pub scalar: RatFunc,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word {
            letters,
            scalar: RatFunc::one(),
        }
    }

    pub fn with_scalar(letters: Vec<Letter>, scalar: RatFunc) -> Self {
        Word { letters, scalar }
    }

    /// Shorthand for a product of first powers.
    pub fn gens(gens: &[usize]) -> Self {
        Word::new(gens.iter().map(|&g| (g, 1)).collect())
    }
}

/// Data of an iterated Ore extension `k[X1][X2; s2, d2]...[Xn; sn, dn]` with
/// `Xj Xi = lambda(j,i) Xi Xj + P(j,i)` for `i < j`, possibly localized at
/// some of its generators.
pub struct OrePresentation {
    pub(crate) n: usize,
    pub(crate) names: Vec<String>,
    /// `lambda[j][i]` for `i < j`, zero-based.
    pub(crate) lambda: Vec<Vec<RatFunc>>,
    pub(crate) lambda_inv: Vec<Vec<RatFunc>>,
    /// `p[j][i]` in ascending normal form, zero-based.
    pub(crate) p: Vec<Vec<Terms>>,
    pub(crate) invertible: Vec<bool>,
    pub(crate) budget: usize,
    pub(crate) cache: Mutex<HashMap<(Exps, Exps), Arc<Terms>>>,
}

impl OrePresentation {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, gen: usize) -> &str {
        &self.names[gen - 1]
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// `lambda(j, i)` for `1 <= i < j <= n`.
    pub fn lambda(&self, j: usize, i: usize) -> &RatFunc {
        assert!(i < j && j <= self.n, "lambda({j},{i}) out of range");
        &self.lambda[j - 1][i - 1]
    }

    pub(crate) fn lambda0(&self, j: usize, i: usize) -> &RatFunc {
        &self.lambda[j][i]
    }

    pub(crate) fn lambda_inv0(&self, j: usize, i: usize) -> &RatFunc {
        &self.lambda_inv[j][i]
    }

    pub(crate) fn p0(&self, j: usize, i: usize) -> &Terms {
        &self.p[j][i]
    }

    /// `P(j, i)` as an element of this algebra.
    pub fn p(self: &Arc<Self>, j: usize, i: usize) -> OreElement {
        assert!(i < j && j <= self.n, "P({j},{i}) out of range");
        OreElement::from_terms_unchecked(self, self.p[j - 1][i - 1].clone())
    }

    pub fn is_invertible(&self, gen: usize) -> bool {
        self.invertible[gen - 1]
    }

    pub fn invertible_set(&self) -> Vec<usize> {
        (1..=self.n).filter(|&g| self.invertible[g - 1]).collect()
    }

    /// True when `delta_j` vanishes on every lower generator.
    pub fn delta_is_zero(&self, j: usize) -> bool {
        self.p[j - 1].iter().all(|t| t.is_empty())
    }

    /// True when no generator pair carries a derivation term.
    pub fn is_torus_like(&self) -> bool {
        (1..=self.n).all(|j| self.delta_is_zero(j))
    }

    pub fn same_as(&self, other: &OrePresentation) -> bool {
        std::ptr::eq(self, other)
            || (self.n == other.n
                && self.invertible == other.invertible
                && self.lambda == other.lambda
                && self.p == other.p)
    }

    fn with_tables(
        names: Vec<String>,
        lambda: Vec<Vec<RatFunc>>,
        p: Vec<Vec<Terms>>,
        invertible: Vec<bool>,
        budget: usize,
    ) -> Self {
        let lambda_inv = lambda
            .iter()
            .map(|row| {
                row.iter()
                    .map(|l| l.inv().expect("lambda values are nonzero"))
                    .collect()
            })
            .collect();
        OrePresentation {
            n: names.len(),
            names,
            lambda,
            lambda_inv,
            p,
            invertible,
            budget,
            cache: Mutex::new(HashMap::new()),
        }
    }

    fn derived(&self, p: Vec<Vec<Terms>>, invertible: Vec<bool>, names: Vec<String>) -> Self {
        OrePresentation {
            n: self.n,
            names,
            lambda: self.lambda.clone(),
            lambda_inv: self.lambda_inv.clone(),
            p,
            invertible,
            budget: self.budget,
            cache: Mutex::new(HashMap::new()),
        }
    }

    /// Same algebra with a different rewrite-step budget.
    pub fn with_budget(&self, budget: usize) -> Arc<Self> {
        let mut out = self.derived(self.p.clone(), self.invertible.clone(), self.names.clone());
        out.budget = budget;
        Arc::new(out)
    }

    /// Same relations, generators renamed.
    pub fn renamed(&self, names: Vec<String>) -> Arc<Self> {
        assert_eq!(names.len(), self.n);
        Arc::new(self.derived(self.p.clone(), self.invertible.clone(), names))
    }

    /// Localization at the multiplicative sets generated by `gens`.
    ///
    /// Requires `delta_g` to be locally nilpotent for each newly inverted `g`
    /// and no derivation term between two inverted generators.
    pub fn localize(&self, gens: &[usize]) -> Result<Arc<Self>, OreError> {
        let mut inv = self.invertible.clone();
        for &g in gens {
            self.check_index(g)?;
            inv[g - 1] = true;
        }
        let out = self.derived(self.p.clone(), inv, self.names.clone());
        out.validate_localization()?;
        Ok(Arc::new(out))
    }

    /// The algebra obtained by setting `delta_j = 0`.
    pub fn delete_derivation(&self, j: usize) -> Result<Arc<Self>, OreError> {
        self.check_index(j)?;
        let mut p = self.p.clone();
        for t in p[j - 1].iter_mut() {
            t.clear();
        }
        Ok(Arc::new(self.derived(p, self.invertible.clone(), self.names.clone())))
    }

    pub(crate) fn check_index(&self, g: usize) -> Result<(), OreError> {
        if g == 0 || g > self.n {
            return Err(OreError::InvalidGenerator { index: g, n: self.n });
        }
        Ok(())
    }

    fn validate_localization(&self) -> Result<(), OreError> {
        for j in 0..self.n {
            for i in 0..j {
                if self.invertible[i] && self.invertible[j] && !self.p[j][i].is_empty() {
                    return Err(OreError::UnsupportedLocalization { j: j + 1, i: i + 1 });
                }
            }
        }
        for g in 1..=self.n {
            if self.invertible[g - 1] && !self.delta_is_zero(g) {
                super::ops::nilpotency_indices(self, g, NILPOTENCY_BOUND)?;
            }
        }
        Ok(())
    }

    /// Checks that `exps` is a legal monomial exponent vector for this algebra.
    pub(crate) fn check_exps(&self, exps: &[i32]) -> Result<(), OreError> {
        if exps.len() != self.n {
            return Err(OreError::InvalidPresentation(format!(
                "exponent vector of length {} for {} generators",
                exps.len(),
                self.n
            )));
        }
        for (k, &e) in exps.iter().enumerate() {
            if e < 0 && !self.invertible[k] {
                return Err(OreError::NegativeExponent {
                    generator: self.names[k].clone(),
                });
            }
        }
        Ok(())
    }

    pub(crate) fn check_letters(&self, letters: &[Letter]) -> Result<(), OreError> {
        for &(g, e) in letters {
            self.check_index(g)?;
            if e < 0 && !self.invertible[g - 1] {
                return Err(OreError::NegativeExponent {
                    generator: self.names[g - 1].clone(),
                });
            }
        }
        Ok(())
    }

    pub(crate) fn cached_product(&self, a: &Exps, b: &Exps) -> Option<Arc<Terms>> {
        self.cache
            .lock()
            .expect("cache lock")
            .get(&(a.clone(), b.clone()))
            .cloned()
    }

    pub(crate) fn store_product(&self, a: Exps, b: Exps, t: Arc<Terms>) {
        let mut c = self.cache.lock().expect("cache lock");
        if c.len() > CACHE_LIMIT {
            c.clear();
        }
        c.insert((a, b), t);
    }
}

const NILPOTENCY_BOUND: usize = 64;
const CACHE_LIMIT: usize = 200_000;

impl fmt::Debug for OrePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrePresentation")
            .field("n", &self.n)
            .field("names", &self.names)
            .field("invertible", &self.invertible_set())
            .finish()
    }
}

/// Collects lambda values and raw `P` words, then normalizes the `P` tables
/// bottom-up (each `P(j,i)` only involves generators strictly between `i` and `j`).
pub struct PresentationBuilder {
    names: Vec<String>,
    lambda: Vec<Vec<Option<RatFunc>>>,
    p_words: Vec<Vec<Vec<Word>>>,
    invertible: Vec<bool>,
    budget: usize,
}

impl PresentationBuilder {
    pub fn new(names: Vec<String>) -> Self {
        let n = names.len();
        PresentationBuilder {
            names,
            lambda: (0..n).map(|j| vec![None; j]).collect(),
            p_words: (0..n).map(|j| vec![Vec::new(); j]).collect(),
            invertible: vec![false; n],
            budget: DEFAULT_BUDGET,
        }
    }

    /// Generators named `prefix1 .. prefixn`.
    pub fn with_prefix(prefix: &str, n: usize) -> Self {
        Self::new((1..=n).map(|k| format!("{prefix}{k}")).collect())
    }

    pub fn lambda(&mut self, j: usize, i: usize, value: RatFunc) -> &mut Self {
        self.lambda[j - 1][i - 1] = Some(value);
        self
    }

    /// Adds a word to `P(j, i)`.
    pub fn p_term(&mut self, j: usize, i: usize, word: Word) -> &mut Self {
        self.p_words[j - 1][i - 1].push(word);
        self
    }

    pub fn invertible(&mut self, gen: usize) -> &mut Self {
        self.invertible[gen - 1] = true;
        self
    }

    pub fn budget(&mut self, budget: usize) -> &mut Self {
        self.budget = budget;
        self
    }

    pub fn build(&self) -> Result<Arc<OrePresentation>, OreError> {
        let n = self.names.len();
        let mut lambda = Vec::with_capacity(n);
        for j in 0..n {
            let mut row = Vec::with_capacity(j);
            for i in 0..j {
                let l = self.lambda[j][i]
                    .clone()
                    .ok_or_else(|| OreError::InvalidPresentation(format!("lambda({},{}) missing", j + 1, i + 1)))?;
                if l.is_zero() {
                    return Err(OreError::InvalidPresentation(format!(
                        "lambda({},{}) is zero",
                        j + 1,
                        i + 1
                    )));
                }
                row.push(l);
            }
            lambda.push(row);
        }
        let empty: Vec<Vec<Terms>> = (0..n).map(|j| vec![BTreeMap::new(); j]).collect();
        let mut pres = OrePresentation::with_tables(self.names.clone(), lambda, empty, vec![false; n], self.budget);
        for j in 0..n {
            for i in 0..j {
                let words = &self.p_words[j][i];
                if words.is_empty() {
                    continue;
                }
                let mut items: Vec<(Letters, RatFunc)> = Vec::new();
                for w in words {
                    for &(g, e) in &w.letters {
                        if g <= i + 1 || g > j || e < 0 {
                            return Err(OreError::InvalidPresentation(format!(
                                "P({},{}) uses {} outside the generators strictly between",
                                j + 1,
                                i + 1,
                                self.names.get(g.wrapping_sub(1)).map_or("?", |s| s.as_str())
                            )));
                        }
                    }
                    items.push((letters_of(&w.letters), w.scalar.clone()));
                }
                let terms = pres.straighten_items(items, Default::default(), Default::default())?;
                pres.p[j][i] = terms;
            }
        }
        for j in 1..n {
            if !pres.p[j][j - 1].is_empty() {
                return Err(OreError::InvalidPresentation(format!(
                    "P({},{}) must vanish for adjacent generators",
                    j + 1,
                    j
                )));
            }
        }
        let pres = pres.derived(pres.p.clone(), self.invertible.clone(), pres.names.clone());
        pres.validate_localization()?;
        Ok(Arc::new(pres))
    }
}

//! Straightening of words into PBW normal form.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smallvec::SmallVec;

use crate::coeff::RatFunc;

use super::presentation::{Letter, OrePresentation};
use super::{Exps, OreError, Terms};

/// Zero-based `(generator, exponent)` factors with no zero exponents and no
/// two adjacent factors on the same generator.
pub(crate) type Letters = SmallVec<[(u8, i32); 12]>;

/// Which out-of-order adjacent pair gets rewritten next.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    #[default]
    Leftmost,
    Rightmost,
    /// Pseudo-random choice driven by the given seed.
    Seeded(u64),
}

/// Ordering of generators inside a normal-form monomial.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MonomialOrder {
    /// `X1^a1 X2^a2 ... Xn^an`
    #[default]
    Ascending,
    /// `Xn^an ... X2^a2 X1^a1`
    Descending,
}

pub(crate) fn push_merge(w: &mut Letters, (g, e): (u8, i32)) {
    if e == 0 {
        return;
    }
    if let Some(last) = w.last_mut() {
        if last.0 == g {
            last.1 += e;
            if last.1 == 0 {
                w.pop();
            }
            return;
        }
    }
    w.push((g, e));
}

pub(crate) fn letters_of(letters: &[Letter]) -> Letters {
    let mut w = Letters::new();
    for &(g, e) in letters {
        push_merge(&mut w, ((g - 1) as u8, e));
    }
    w
}

/// Letters of a monomial in the given order.
pub(crate) fn exps_letters(exps: &[i32], order: MonomialOrder) -> Letters {
    let mut w = Letters::new();
    let it = exps.iter().enumerate().filter(|(_, &e)| e != 0);
    match order {
        MonomialOrder::Ascending => it.for_each(|(g, &e)| w.push((g as u8, e))),
        MonomialOrder::Descending => it.rev().for_each(|(g, &e)| w.push((g as u8, e))),
    }
    w
}

fn to_exps(n: usize, w: &Letters) -> Exps {
    let mut e: Exps = SmallVec::from_elem(0, n);
    for &(g, x) in w {
        e[g as usize] = x;
    }
    e
}

fn out_of_order(order: MonomialOrder, a: u8, b: u8) -> bool {
    match order {
        MonomialOrder::Ascending => a > b,
        MonomialOrder::Descending => a < b,
    }
}

fn splice(w: &Letters, k: usize, mid: &[(u8, i32)]) -> Letters {
    let mut out = Letters::new();
    for &l in &w[..k] {
        push_merge(&mut out, l);
    }
    for &l in mid {
        push_merge(&mut out, l);
    }
    for &l in &w[k + 2..] {
        push_merge(&mut out, l);
    }
    out
}

impl OrePresentation {
    /// Rewrites the out-of-order pair at positions `k, k+1` once.
    pub(crate) fn rewrite_at(&self, w: &Letters, k: usize) -> Result<Vec<(Letters, RatFunc)>, OreError> {
        let (ga, a) = w[k];
        let (gb, b) = w[k + 1];
        // (j, i) with j > i; `hi_left` when the larger index sits on the left
        let hi_left = ga > gb;
        let (j, i) = if hi_left { (ga, gb) } else { (gb, ga) };
        let (j, i) = (j as usize, i as usize);
        let p = self.p0(j, i);
        let lam = self.lambda0(j, i);
        let lam_inv = self.lambda_inv0(j, i);
        let mut out = Vec::new();
        if p.is_empty() {
            // pure q-commutation of whole powers
            let e = i64::from(a) * i64::from(b);
            let c = if hi_left { lam.pow(e)? } else { lam.pow(-e)? };
            out.push((splice(w, k, &[(gb, b), (ga, a)]), c));
            return Ok(out);
        }
        if a < 0 && b < 0 {
            return Err(OreError::UnsupportedLocalization { j: j + 1, i: i + 1 });
        }
        // peel one unit off each side
        let sa = a.signum();
        let sb = b.signum();
        let pre = (ga, a - sa);
        let post = (gb, b - sb);
        let x = ga;
        let y = gb;
        let build = |mid: &[(u8, i32)]| -> Letters {
            let mut m: SmallVec<[(u8, i32); 16]> = SmallVec::new();
            m.push(pre);
            m.extend_from_slice(mid);
            m.push(post);
            splice(w, k, &m)
        };
        let p_words = |wrap: Option<(u8, i32)>| -> Vec<Letters> {
            p.keys()
                .map(|ex| {
                    let mut m = Letters::new();
                    if let Some(l) = wrap {
                        m.push(l);
                    }
                    for l in exps_letters(ex, MonomialOrder::Ascending) {
                        push_merge(&mut m, l);
                    }
                    if let Some(l) = wrap {
                        push_merge(&mut m, l);
                    }
                    m
                })
                .collect()
        };
        let p_coeffs: Vec<&RatFunc> = p.values().collect();
        let (swap_coeff, wrap, p_scale) = match (hi_left, sa > 0, sb > 0) {
            // Xj Xi = l Xi Xj + P
            (true, true, true) => (lam.clone(), None, RatFunc::one()),
            // Xj^-1 Xi = l^-1 Xi Xj^-1 - l^-1 Xj^-1 P Xj^-1
            (true, false, true) => (lam_inv.clone(), Some((x, -1)), -lam_inv),
            // Xj Xi^-1 = l^-1 Xi^-1 Xj - l^-1 Xi^-1 P Xi^-1
            (true, true, false) => (lam_inv.clone(), Some((y, -1)), -lam_inv),
            // Xi Xj = l^-1 Xj Xi - l^-1 P
            (false, true, true) => (lam_inv.clone(), None, -lam_inv),
            // Xi Xj^-1 = l Xj^-1 Xi + Xj^-1 P Xj^-1
            (false, true, false) => (lam.clone(), Some((y, -1)), RatFunc::one()),
            // Xi^-1 Xj = l Xj Xi^-1 + Xi^-1 P Xi^-1
            (false, false, true) => (lam.clone(), Some((x, -1)), RatFunc::one()),
            (_, false, false) => unreachable!(),
        };
        out.push((build(&[(y, sb), (x, sa)]), swap_coeff));
        for (m, c) in p_words(wrap).into_iter().zip(p_coeffs) {
            out.push((build(&m), &p_scale * c));
        }
        Ok(out)
    }

    /// Straightens a linear combination of words.
    pub(crate) fn straighten_items(
        &self,
        items: Vec<(Letters, RatFunc)>,
        order: MonomialOrder,
        strategy: Strategy,
    ) -> Result<Terms, OreError> {
        let mut work: BTreeMap<Letters, RatFunc> = BTreeMap::new();
        for (w, c) in items {
            add_into(&mut work, w, c);
        }
        self.straighten_work(work, order, strategy)
    }

    fn straighten_work(
        &self,
        mut work: BTreeMap<Letters, RatFunc>,
        order: MonomialOrder,
        strategy: Strategy,
    ) -> Result<Terms, OreError> {
        let mut rng = match strategy {
            Strategy::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        let mut out: Terms = BTreeMap::new();
        let mut steps = 0usize;
        let mut bad: SmallVec<[usize; 12]> = SmallVec::new();
        while let Some((w, c)) = work.pop_last() {
            if c.is_zero() {
                continue;
            }
            bad.clear();
            bad.extend((0..w.len().saturating_sub(1)).filter(|&k| out_of_order(order, w[k].0, w[k + 1].0)));
            if bad.is_empty() {
                let e = to_exps(self.n, &w);
                match out.entry(e) {
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
                continue;
            }
            steps += 1;
            if steps > self.budget {
                return Err(OreError::BudgetExceeded { budget: self.budget });
            }
            let k = match strategy {
                Strategy::Leftmost => bad[0],
                Strategy::Rightmost => bad[bad.len() - 1],
                Strategy::Seeded(_) => bad[rng.as_mut().unwrap().gen_range(0..bad.len())],
            };
            for (nw, m) in self.rewrite_at(&w, k)? {
                add_into(&mut work, nw, &c * &m);
            }
        }
        Ok(out)
    }

    /// Rewrites position `k` of `letters` first, then normalizes the rest.
    pub fn straighten_after_step(&self, letters: &[Letter], k: usize, strategy: Strategy) -> Result<Terms, OreError> {
        self.check_letters(letters)?;
        let w = letters_of(letters);
        if k + 1 >= w.len() || !out_of_order(MonomialOrder::Ascending, w[k].0, w[k + 1].0) {
            return Err(OreError::InvalidPresentation(format!(
                "position {k} is not an out-of-order pair"
            )));
        }
        let items = self.rewrite_at(&w, k)?;
        self.straighten_items(items, MonomialOrder::Ascending, strategy)
    }

    /// Product of two ascending normal monomials (cached).
    pub(crate) fn monomial_product(&self, a: &Exps, b: &Exps) -> Result<std::sync::Arc<Terms>, OreError> {
        if let Some(t) = self.cached_product(a, b) {
            return Ok(t);
        }
        let top_a = a.iter().rposition(|&e| e != 0);
        let bot_b = b.iter().position(|&e| e != 0);
        let t = match (top_a, bot_b) {
            (Some(ta), Some(bb)) if ta > bb => {
                let mut w = exps_letters(a, MonomialOrder::Ascending);
                for l in exps_letters(b, MonomialOrder::Ascending) {
                    push_merge(&mut w, l);
                }
                let mut work = BTreeMap::new();
                work.insert(w, RatFunc::one());
                self.straighten_work(work, MonomialOrder::Ascending, Strategy::Leftmost)?
            }
            _ => {
                let e: Exps = a.iter().zip(b.iter()).map(|(x, y)| x + y).collect();
                let mut t = BTreeMap::new();
                t.insert(e, RatFunc::one());
                t
            }
        };
        let t = std::sync::Arc::new(t);
        self.store_product(a.clone(), b.clone(), t.clone());
        Ok(t)
    }

    /// Re-expresses ascending terms in the descending monomial basis.
    pub fn to_descending(&self, terms: &Terms) -> Result<Terms, OreError> {
        let items = terms
            .iter()
            .map(|(e, c)| (exps_letters(e, MonomialOrder::Ascending), c.clone()))
            .collect();
        self.straighten_items(items, MonomialOrder::Descending, Strategy::Leftmost)
    }
}

fn add_into(work: &mut BTreeMap<Letters, RatFunc>, w: Letters, c: RatFunc) {
    if c.is_zero() {
        return;
    }
    match work.entry(w) {
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

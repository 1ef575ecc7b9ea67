//! The automorphisms `sigma_j`, skew derivations `delta_j` and audits built on them.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::coeff::RatFunc;

use super::element::OreElement;
use super::presentation::OrePresentation;
use super::rewrite::{exps_letters, push_merge, Letters, MonomialOrder, Strategy};
use super::{OreError, Terms};

impl OrePresentation {
    fn check_below(&self, j: usize, terms: &Terms) -> Result<(), OreError> {
        self.check_index(j)?;
        for e in terms.keys() {
            if let Some(k) = e.iter().rposition(|&x| x != 0) {
                if k + 1 >= j {
                    return Err(OreError::SupportTooHigh {
                        j,
                        generator: self.names[k].clone(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Scalar by which `sigma_j^power` multiplies the monomial `exps`.
    fn sigma_factor(&self, j: usize, exps: &[i32], power: i64) -> Result<RatFunc, OreError> {
        let mut c = RatFunc::one();
        for (i, &e) in exps.iter().enumerate() {
            if e != 0 {
                c = &c * &self.lambda0(j - 1, i).pow(i64::from(e) * power)?;
            }
        }
        Ok(c)
    }

    pub(crate) fn sigma_terms(&self, j: usize, terms: &Terms, power: i64) -> Result<Terms, OreError> {
        self.check_below(j, terms)?;
        let mut out = BTreeMap::new();
        for (e, c) in terms {
            out.insert(e.clone(), c * &self.sigma_factor(j, e, power)?);
        }
        Ok(out)
    }

    pub(crate) fn delta_terms(&self, j: usize, terms: &Terms) -> Result<Terms, OreError> {
        self.check_below(j, terms)?;
        let j0 = j - 1;
        let mut items: Vec<(Letters, RatFunc)> = Vec::new();
        for (e, c) in terms {
            let w = exps_letters(e, MonomialOrder::Ascending);
            let mut prefix_sigma = RatFunc::one();
            for (k, &(g, x)) in w.iter().enumerate() {
                let p = self.p0(j0, g as usize);
                if !p.is_empty() {
                    let lam = self.lambda0(j0, g as usize);
                    // delta(X^x) as a sum of words X^a P X^b
                    let pieces: Vec<(i32, i32, RatFunc)> = if x > 0 {
                        (0..x)
                            .map(|t| Ok((t, x - 1 - t, lam.pow(i64::from(t))?)))
                            .collect::<Result<_, OreError>>()?
                    } else {
                        let m = -x;
                        (0..m)
                            .map(|t| Ok((-t - 1, -(m - t), -lam.pow(-i64::from(t) - 1)?)))
                            .collect::<Result<_, OreError>>()?
                    };
                    for (a, b, s) in pieces {
                        for (pe, pc) in p {
                            let mut word = Letters::new();
                            for &l in &w[..k] {
                                push_merge(&mut word, l);
                            }
                            push_merge(&mut word, (g, a));
                            for l in exps_letters(pe, MonomialOrder::Ascending) {
                                push_merge(&mut word, l);
                            }
                            push_merge(&mut word, (g, b));
                            for &l in &w[k + 1..] {
                                push_merge(&mut word, l);
                            }
                            items.push((word, &(&(c * &prefix_sigma) * &s) * pc));
                        }
                    }
                }
                prefix_sigma = &prefix_sigma * &self.lambda0(j0, g as usize).pow(i64::from(x))?;
            }
        }
        self.straighten_items(items, MonomialOrder::Ascending, Strategy::Leftmost)
    }

    /// `q` with `sigma_l delta_l = q delta_l sigma_l`, read off the generators.
    ///
    /// `Ok(None)` when `delta_l = 0`; an error when no single `q` works.
    pub fn skew_factor(&self, l: usize) -> Result<Option<RatFunc>, OreError> {
        self.check_index(l)?;
        let mut q: Option<RatFunc> = None;
        for i in 0..l - 1 {
            let p = self.p0(l - 1, i);
            let lam_inv = self.lambda_inv0(l - 1, i);
            for e in p.keys() {
                let f = &self.sigma_factor(l, e, 1)? * lam_inv;
                match &q {
                    None => q = Some(f),
                    Some(q0) if *q0 == f => {}
                    Some(_) => {
                        return Err(OreError::InvalidPresentation(format!(
                            "sigma_{l} and delta_{l} do not q-commute"
                        )))
                    }
                }
            }
        }
        Ok(q)
    }
}

/// Smallest `n` with `delta_l^n(X_i) = 0`, for each `i < l`.
pub(crate) fn nilpotency_indices(pres: &OrePresentation, l: usize, bound: usize) -> Result<Vec<usize>, OreError> {
    pres.check_index(l)?;
    let mut out = Vec::with_capacity(l - 1);
    for i in 0..l - 1 {
        let mut e = smallvec::SmallVec::from_elem(0, pres.n());
        e[i] = 1;
        let mut x: Terms = BTreeMap::new();
        x.insert(e, RatFunc::one());
        let mut n = 0;
        while !x.is_empty() {
            if n >= bound {
                return Err(OreError::NotNilpotent {
                    generator: pres.names[l - 1].clone(),
                    bound,
                });
            }
            x = pres.delta_terms(l, &x)?;
            n += 1;
        }
        out.push(n);
    }
    Ok(out)
}

/// `sigma_j(a)`.
pub fn apply_sigma(j: usize, a: &OreElement) -> Result<OreElement, OreError> {
    let p = a.presentation();
    Ok(OreElement::from_terms_unchecked(p, p.sigma_terms(j, a.terms(), 1)?))
}

/// `sigma_j^-1(a)`.
pub fn apply_sigma_inv(j: usize, a: &OreElement) -> Result<OreElement, OreError> {
    let p = a.presentation();
    Ok(OreElement::from_terms_unchecked(p, p.sigma_terms(j, a.terms(), -1)?))
}

/// `delta_j(a)`, extended to products by `delta(ab) = sigma(a) delta(b) + delta(a) b`.
pub fn apply_delta(j: usize, a: &OreElement) -> Result<OreElement, OreError> {
    let p = a.presentation();
    Ok(OreElement::from_terms_unchecked(p, p.delta_terms(j, a.terms())?))
}

/// Whether `sigma_l(delta_l(p)) = q delta_l(sigma_l(p))` for every probe.
pub fn check_sigma_delta_commutation(l: usize, q: &RatFunc, probes: &[OreElement]) -> Result<bool, OreError> {
    for p in probes {
        let lhs = apply_sigma(l, &apply_delta(l, p)?)?;
        let rhs = apply_delta(l, &apply_sigma(l, p)?)?.scale(q);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Per-generator nilpotency indices of `delta_l` below `l`.
pub fn local_nilpotency_check(pres: &OrePresentation, l: usize, bound: usize) -> Result<Vec<usize>, OreError> {
    nilpotency_indices(pres, l, bound)
}

/// Overlap `(k, j, i)` with the difference of its two resolutions.
#[derive(Clone, Debug)]
pub struct DiamondResidual {
    pub triple: (usize, usize, usize),
    pub residual: OreElement,
}

/// Resolves every `Xk Xj Xi` (`k > j > i`) starting from either overlap
/// and returns the differences; all zero iff the rule set is confluent.
pub fn diamond_check(pres: &Arc<OrePresentation>) -> Result<Vec<DiamondResidual>, OreError> {
    let n = pres.n();
    let mut out = Vec::new();
    for k in (1..=n).rev() {
        for j in (1..k).rev() {
            for i in (1..j).rev() {
                let w = [(k, 1), (j, 1), (i, 1)];
                let a = pres.straighten_after_step(&w, 0, Strategy::Leftmost)?;
                let b = pres.straighten_after_step(&w, 1, Strategy::Leftmost)?;
                let a = OreElement::from_terms_unchecked(pres, a);
                let b = OreElement::from_terms_unchecked(pres, b);
                out.push(DiamondResidual {
                    triple: (k, j, i),
                    residual: &a - &b,
                });
            }
        }
    }
    Ok(out)
}

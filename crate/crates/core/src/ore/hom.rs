use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::element::OreElement;
use super::presentation::OrePresentation;
use super::OreError;

/// Algebra homomorphism determined by the images of the generators.
///
/// Invertible source generators must map to units of the target (nonzero
/// scalar times a monomial in invertible generators).
pub struct Substitution {
    source: Arc<OrePresentation>,
    target: Arc<OrePresentation>,
    images: Vec<OreElement>,
    powers: Mutex<HashMap<(usize, i32), OreElement>>,
}

impl Substitution {
    pub fn new(
        source: &Arc<OrePresentation>,
        target: &Arc<OrePresentation>,
        images: Vec<OreElement>,
    ) -> Result<Self, OreError> {
        if images.len() != source.n() {
            return Err(OreError::InvalidPresentation(format!(
                "{} images for {} generators",
                images.len(),
                source.n()
            )));
        }
        for (k, im) in images.iter().enumerate() {
            if !im.presentation().same_as(target) {
                return Err(OreError::PresentationMismatch);
            }
            if source.is_invertible(k + 1) {
                im.inverse()?;
            }
        }
        Ok(Substitution {
            source: source.clone(),
            target: target.clone(),
            images,
            powers: Mutex::new(HashMap::new()),
        })
    }

    pub fn source(&self) -> &Arc<OrePresentation> {
        &self.source
    }

    pub fn target(&self) -> &Arc<OrePresentation> {
        &self.target
    }

    /// Image of generator `gen` (numbered from 1).
    pub fn image(&self, gen: usize) -> &OreElement {
        &self.images[gen - 1]
    }

    pub fn images(&self) -> &[OreElement] {
        &self.images
    }

    fn power(&self, gen: usize, e: i32) -> Result<OreElement, OreError> {
        if let Some(x) = self.powers.lock().expect("power cache").get(&(gen, e)) {
            return Ok(x.clone());
        }
        let x = if e == 1 {
            self.images[gen].clone()
        } else if e > 1 {
            self.power(gen, e - 1)?.mul(&self.images[gen])?
        } else if e == -1 {
            self.images[gen].inverse()?
        } else {
            self.power(gen, e + 1)?.mul(&self.power(gen, -1)?)?
        };
        self.powers.lock().expect("power cache").insert((gen, e), x.clone());
        Ok(x)
    }

    pub fn apply(&self, a: &OreElement) -> Result<OreElement, OreError> {
        if !a.presentation().same_as(&self.source) {
            return Err(OreError::PresentationMismatch);
        }
        let mut acc = OreElement::zero(&self.target);
        for (e, c) in a.terms() {
            let mut t = OreElement::scalar(&self.target, c.clone());
            for (g, &x) in e.iter().enumerate() {
                if x != 0 {
                    t = t.mul(&self.power(g, x)?)?;
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Defining relations of the source evaluated on the images; all zero iff
    /// the generator images extend to a well-defined homomorphism.
    pub fn relation_residuals(&self) -> Result<Vec<((usize, usize), OreElement)>, OreError> {
        let n = self.source.n();
        let mut out = Vec::new();
        for j in 2..=n {
            for i in 1..j {
                let xj = self.image(j);
                let xi = self.image(i);
                let lhs = xj.mul(xi)?;
                let rhs = xi.mul(xj)?.scale(self.source.lambda(j, i));
                let p = self.apply(&self.source.p(j, i))?;
                out.push(((j, i), &(&lhs - &rhs) - &p));
            }
        }
        Ok(out)
    }

    /// Composition `other ∘ self`.
    pub fn then(&self, other: &Substitution) -> Result<Substitution, OreError> {
        let images = self
            .images
            .iter()
            .map(|x| other.apply(x))
            .collect::<Result<Vec<_>, _>>()?;
        Substitution::new(&self.source, &other.target, images)
    }
}

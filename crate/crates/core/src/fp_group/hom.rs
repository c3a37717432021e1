use std::sync::Arc;

use super::{FiniteGroup, Presentation};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub enum Source {
    Presentation(Arc<Presentation>),
    Finite(Arc<FiniteGroup>),
}

/// A map into a finite group, checked to preserve relations.
///
/// From a presentation, `images[k]` is the image of generator `k`; from a
/// finite group, `images[x]` is the image of element `x`.
#[derive(Clone, Debug)]
pub struct Homomorphism {
    source: Source,
    target: Arc<FiniteGroup>,
    images: Vec<u32>,
}

impl Homomorphism {
    pub fn from_presentation(pres: Arc<Presentation>, target: Arc<FiniteGroup>, images: Vec<u32>) -> Result<Self> {
        if images.len() != pres.num_generators() {
            return Err(Error::Invalid(format!(
                "{} images for {} generators",
                images.len(),
                pres.num_generators()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&x| x as usize >= target.order()) {
            return Err(Error::OutOfRange { what: "image", index: bad as usize, max: target.order() - 1 });
        }
        for (i, r) in pres.relators().iter().enumerate() {
            if target.eval_word(&images, r) != 0 {
                return Err(Error::NotHomomorphism(format!("relator {i} `{}` is not killed", pres.format_word(r))));
            }
        }
        Ok(Homomorphism { source: Source::Presentation(pres), target, images })
    }

    pub fn between_finite(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, images: Vec<u32>) -> Result<Self> {
        if images.len() != source.order() {
            return Err(Error::Invalid("a finite homomorphism needs one image per element".into()));
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                let lhs = images[source.mul(a, b) as usize];
                let rhs = target.mul(images[a] as usize, images[b] as usize);
                if lhs != rhs {
                    return Err(Error::NotHomomorphism(format!("fails on ({a},{b})")));
                }
            }
        }
        Ok(Homomorphism { source: Source::Finite(source), target, images })
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn image_size(&self) -> usize {
        let gens: Vec<u32> = match &self.source {
            Source::Presentation(_) => self.images.clone(),
            Source::Finite(_) => self.images.clone(),
        };
        super::closure::subgroup_closure(self.target.as_ref(), &gens, usize::MAX).map(|s| s.len()).unwrap_or(0)
    }

    pub fn is_surjective(&self) -> bool {
        self.image_size() == self.target.order()
    }
}

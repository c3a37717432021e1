use std::collections::VecDeque;
use std::sync::Arc;

use super::hom::{Homomorphism, Source};
use super::presentation::{free_reduce, Letter, Presentation, Word};
use super::FiniteGroup;
use crate::error::{Error, Result};

/// Presentation of the kernel of a map onto a finite group, with the data
/// needed to rewrite kernel words into Schreier generators.
#[derive(Clone, Debug)]
pub struct KernelPresentation {
    pub presentation: Presentation,
    target: Arc<FiniteGroup>,
    images: Vec<u32>,
    /// Transversal word for each coset, cosets indexed by target element.
    pub transversal: Vec<Word>,
    /// `schreier[c * ngens + k]`: kernel generator for `t_c x_k t_{c x_k}^{-1}`, `None` on tree edges.
    schreier: Vec<Option<usize>>,
    ngens: usize,
    /// `(coset, generator)` for each kernel generator.
    pub origins: Vec<(usize, usize)>,
}

impl KernelPresentation {
    pub fn index(&self) -> usize {
        self.target.order()
    }

    pub fn num_generators(&self) -> usize {
        self.origins.len()
    }

    fn step(&self, coset: usize, l: Letter) -> usize {
        let x = self.images[l.gen] as usize;
        if l.inverse {
            self.target.mul(coset, self.target.inv(x) as usize) as usize
        } else {
            self.target.mul(coset, x) as usize
        }
    }

    fn rewrite_from(&self, start: usize, w: &[Letter]) -> (Word, usize) {
        let mut out = Vec::new();
        let mut c = start;
        for &l in w {
            if l.inverse {
                let d = self.step(c, l);
                if let Some(s) = self.schreier[d * self.ngens + l.gen] {
                    out.push(Letter::inv(s));
                }
                c = d;
            } else {
                if let Some(s) = self.schreier[c * self.ngens + l.gen] {
                    out.push(Letter::gen(s));
                }
                c = self.step(c, l);
            }
        }
        (free_reduce(&out), c)
    }

    /// Rewrites a word of the original group lying in the kernel.
    pub fn rewrite(&self, w: &[Letter]) -> Result<Word> {
        let (out, end) = self.rewrite_from(0, w);
        if end != 0 {
            return Err(Error::Invalid("word is not in the kernel".into()));
        }
        Ok(out)
    }

    /// The kernel generator as a word in the original generators.
    pub fn generator_word(&self, k: usize) -> Word {
        let (c, g) = self.origins[k];
        let mut w = self.transversal[c].clone();
        w.push(Letter::gen(g));
        let d = self.step(c, Letter::gen(g));
        w.extend(super::presentation::inverse_word(&self.transversal[d]));
        free_reduce(&w)
    }
}

/// Kernel of a surjection from a finitely presented group onto a finite group.
pub fn reidemeister_schreier(hom: &Homomorphism) -> Result<KernelPresentation> {
    let Source::Presentation(pres) = hom.source() else {
        return Err(Error::Unsupported("Reidemeister-Schreier needs a presented source".into()));
    };
    let target = hom.target().clone();
    let order = target.order();
    let ngens = pres.num_generators();
    let images = hom.images().to_vec();

    // BFS Schreier transversal
    let mut transversal: Vec<Option<Word>> = vec![None; order];
    let mut tree = vec![false; order * ngens];
    transversal[0] = Some(Vec::new());
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for k in 0..ngens {
            for inverse in [false, true] {
                let x = images[k] as usize;
                let d = if inverse { target.mul(c, target.inv(x) as usize) } else { target.mul(c, x) } as usize;
                if transversal[d].is_some() {
                    continue;
                }
                let mut w = transversal[c].clone().unwrap_or_default();
                w.push(Letter { gen: k, inverse });
                transversal[d] = Some(w);
                if inverse {
                    tree[d * ngens + k] = true;
                } else {
                    tree[c * ngens + k] = true;
                }
                queue.push_back(d);
            }
        }
    }
    let reached = transversal.iter().filter(|t| t.is_some()).count();
    if reached < order {
        return Err(Error::NotSurjective { image: reached, target: order });
    }
    let transversal: Vec<Word> = transversal.into_iter().map(|t| t.unwrap_or_default()).collect();

    let mut schreier = vec![None; order * ngens];
    let mut origins = Vec::new();
    let mut names = Vec::new();
    for c in 0..order {
        for k in 0..ngens {
            if !tree[c * ngens + k] {
                schreier[c * ngens + k] = Some(origins.len());
                origins.push((c, k));
                names.push(format!("{}_{}", pres.generators()[k], c));
            }
        }
    }
    let mut kp = KernelPresentation {
        presentation: Presentation::new(Vec::new(), Vec::new())?,
        target,
        images,
        transversal,
        schreier,
        ngens,
        origins,
    };
    let mut relators: Vec<Word> = Vec::new();
    for c in 0..order {
        for r in pres.relators() {
            let (w, _) = kp.rewrite_from(c, r);
            if !w.is_empty() && !relators.contains(&w) {
                relators.push(w);
            }
        }
    }
    kp.presentation = Presentation::new(names, relators)?;
    Ok(kp)
}

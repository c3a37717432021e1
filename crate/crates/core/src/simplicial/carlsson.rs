use std::sync::Arc;

use super::{random_index, SimplicialGroup};
use crate::error::{Error, Result};
use crate::fp_group::hom::Homomorphism;
use crate::fp_group::presentation::{Letter, Presentation, Word};
use crate::fp_group::rs::{reidemeister_schreier, KernelPresentation};
use crate::fp_group::{FiniteGroup, FreeProduct, FreeProductWord, Syllable};

/// Largest level the word model is built for.
pub const MAX_CARLSSON_DIM: usize = 5;

/// The smash model `π ∧̄ S¹`: level `n` is the free product of `n` copies of
/// `π`, copy `i` sitting on the non-basepoint simplex `x_i` of `S¹_n`.
///
/// Simplices of `S¹_n` are threshold maps `[n] -> [1]`; `x_i` has its first 1
/// at position `i + 1`, thresholds `0` and `n + 1` are the basepoint.
#[derive(Clone, Debug)]
pub struct CarlssonModel {
    pi: Arc<FiniteGroup>,
    max_dim: usize,
    words: Arc<FreeProduct>,
    max_random_len: usize,
}

/// Threshold of `x_i` after `d_j`, at level `n - 1`; `None` for the basepoint.
fn face_threshold(n: usize, j: usize, copy: usize) -> Option<usize> {
    let t = copy + 1;
    let t = if t <= j { t } else { t - 1 };
    (t != 0 && t != n).then(|| t - 1)
}

fn degeneracy_threshold(j: usize, copy: usize) -> usize {
    let t = copy + 1;
    if t <= j {
        copy
    } else {
        copy + 1
    }
}

impl CarlssonModel {
    pub fn new(pi: Arc<FiniteGroup>, max_dim: usize) -> Result<Self> {
        if max_dim > MAX_CARLSSON_DIM {
            return Err(Error::resource("Carlsson model dimension", MAX_CARLSSON_DIM as u128));
        }
        let words = Arc::new(FreeProduct::power(pi.clone(), max_dim.max(1) + 1));
        Ok(CarlssonModel { pi, max_dim, words, max_random_len: 6 })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.pi
    }

    pub fn words(&self) -> &FreeProduct {
        &self.words
    }

    /// `g ∧ x_i` at any level above `i`.
    pub fn smash(&self, g: u32, i: usize) -> FreeProductWord {
        self.words.syllable(i, g).expect("copy in range")
    }

    pub fn in_level(&self, n: usize, x: &FreeProductWord) -> bool {
        x.syllables().iter().all(|s| (s.copy as usize) < n)
    }

    /// Presentation of level `n` on the Cayley presentations of the copies,
    /// with the translations between words and reduced free-product words.
    pub fn level_presentation(&self, n: usize) -> LevelPresentation {
        let (base, images, normal_words) = self.pi.presentation("g");
        let k = base.num_generators();
        let mut names = Vec::new();
        let mut relators = Vec::new();
        for c in 0..n {
            names.extend(base.generators().iter().map(|g| format!("{g}_x{c}")));
            relators.extend(
                base.relators()
                    .iter()
                    .map(|r| r.iter().map(|l| Letter { gen: l.gen + c * k, inverse: l.inverse }).collect::<Word>()),
            );
        }
        let presentation = Presentation::new(names, relators).expect("well-formed");
        LevelPresentation { n, per_copy: k, images, normal_words, presentation }
    }

    /// `NH_2 = Ker((d_0, d_1): H_2 -> π × π)` via Reidemeister–Schreier.
    pub fn nh2(&self) -> Result<(LevelPresentation, KernelPresentation)> {
        if self.max_dim < 2 {
            return Err(Error::OutOfRange { what: "level", index: 2, max: self.max_dim });
        }
        let lp = self.level_presentation(2);
        let prod = Arc::new(FiniteGroup::direct_product(&self.pi, &self.pi)?);
        let q = self.pi.order();
        // (d_0, d_1): g∧x_0 ↦ (1, g), g∧x_1 ↦ (g, g); pair (a, b) sits at a + q b
        let mut images = Vec::new();
        for c in 0..2 {
            for &g in &lp.images {
                let (a, b) = if c == 0 { (0, g as usize) } else { (g as usize, g as usize) };
                images.push((a + q * b) as u32);
            }
        }
        let hom = Homomorphism::from_presentation(Arc::new(lp.presentation.clone()), prod, images)?;
        let kernel = reidemeister_schreier(&hom)?;
        Ok((lp, kernel))
    }
}

/// Presentation of a Carlsson level as a free product of Cayley presentations.
#[derive(Clone, Debug)]
pub struct LevelPresentation {
    pub n: usize,
    per_copy: usize,
    images: Vec<u32>,
    normal_words: Vec<Word>,
    pub presentation: Presentation,
}

impl LevelPresentation {
    pub fn to_word(&self, x: &FreeProductWord) -> Word {
        let mut w = Word::new();
        for s in x.syllables() {
            let off = s.copy as usize * self.per_copy;
            w.extend(self.normal_words[s.elem as usize].iter().map(|l| Letter { gen: l.gen + off, inverse: l.inverse }));
        }
        w
    }

    pub fn to_element(&self, model: &CarlssonModel, w: &[Letter]) -> FreeProductWord {
        let raw: Vec<Syllable> = w
            .iter()
            .map(|l| {
                let copy = l.gen / self.per_copy;
                let g = self.images[l.gen % self.per_copy];
                let g = if l.inverse { model.pi.inv(g as usize) } else { g };
                Syllable::new(copy, g)
            })
            .collect();
        model.words.reduce(&raw).expect("copies in range")
    }
}

impl SimplicialGroup for CarlssonModel {
    type Elem = FreeProductWord;

    fn name(&self) -> String {
        format!("carlsson:{}", self.pi.name())
    }

    fn max_dim(&self) -> usize {
        self.max_dim
    }

    fn identity(&self, _n: usize) -> FreeProductWord {
        FreeProductWord::identity()
    }

    fn mul(&self, _n: usize, a: &FreeProductWord, b: &FreeProductWord) -> FreeProductWord {
        self.words.mul(a, b)
    }

    fn inv(&self, _n: usize, a: &FreeProductWord) -> FreeProductWord {
        self.words.inverse(a)
    }

    fn face(&self, n: usize, j: usize, x: &FreeProductWord) -> FreeProductWord {
        self.words.map_syllables(x, |s| {
            face_threshold(n, j, s.copy as usize).map(|c| Syllable::new(c, s.elem))
        })
    }

    fn degeneracy(&self, _n: usize, j: usize, x: &FreeProductWord) -> FreeProductWord {
        self.words.map_syllables(x, |s| Some(Syllable::new(degeneracy_threshold(j, s.copy as usize), s.elem)))
    }

    fn level_order(&self, n: usize) -> Option<u128> {
        match n {
            0 => Some(1),
            1 => Some(self.pi.order() as u128),
            _ if self.pi.order() == 1 => Some(1),
            _ => None,
        }
    }

    fn elements(&self, n: usize) -> Result<Vec<FreeProductWord>> {
        match n {
            0 => Ok(vec![FreeProductWord::identity()]),
            1 => Ok((0..self.pi.order() as u32).map(|g| self.words.reduce(&[Syllable::new(0, g)]).unwrap()).collect()),
            _ => Err(Error::Unsupported(format!("level {n} of {} is infinite", self.name()))),
        }
    }

    fn level_generators(&self, n: usize) -> Vec<FreeProductWord> {
        let gens = self.pi.generators();
        (0..n).flat_map(|c| gens.iter().map(move |&g| (c, g))).map(|(c, g)| self.smash(g, c)).collect()
    }

    fn random_element(&self, n: usize, rng: &mut dyn rand::RngCore) -> FreeProductWord {
        if n == 0 || self.pi.order() == 1 {
            return FreeProductWord::identity();
        }
        let len = random_index(rng, self.max_random_len + 1);
        let raw: Vec<Syllable> = (0..len)
            .map(|_| Syllable::new(random_index(rng, n), 1 + random_index(rng, self.pi.order() - 1) as u32))
            .collect();
        self.words.reduce(&raw).expect("copies in range")
    }

    fn format(&self, _n: usize, x: &FreeProductWord) -> String {
        self.words.format(x)
    }

    fn parse(&self, n: usize, text: &str) -> Result<FreeProductWord> {
        let x = self.words.parse(text)?;
        if !self.in_level(n, &x) {
            return Err(Error::OutOfRange { what: "copy", index: n, max: n.saturating_sub(1) });
        }
        Ok(x)
    }

    fn moore_level(&self, n: usize) -> Result<Vec<FreeProductWord>> {
        match n {
            0 => Ok(vec![FreeProductWord::identity()]),
            1 => self.elements(1),
            _ => Err(Error::Unsupported(format!("NH_{n} is infinite; use the membership test"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp_group::snf::abelian_invariants;
    use crate::simplicial::apply_degeneracies;
    use crate::simplex_maps::SurjTuple;

    fn model(name: &str) -> CarlssonModel {
        CarlssonModel::new(Arc::new(FiniteGroup::by_name(name).unwrap()), 4).unwrap()
    }

    #[test]
    fn named_simplices() {
        let m = model("z2");
        let sigma = m.smash(1, 0);
        // x_0 = s_1 σ, x_1 = s_0 σ
        assert_eq!(m.degeneracy(1, 1, &sigma), m.smash(1, 0));
        assert_eq!(m.degeneracy(1, 0, &sigma), m.smash(1, 1));
        // x_i = s_n ... s_{i+1} s_{i-1} ... s_0 σ at level n+1
        for n in 1..4usize {
            for i in 0..=n {
                let others: Vec<usize> = (0..=n).filter(|&j| j != i).collect();
                let alpha = SurjTuple::new(n + 1, &others).unwrap();
                assert_eq!(apply_degeneracies(&m, &alpha, &sigma), m.smash(1, i), "n={n} i={i}");
            }
        }
    }

    #[test]
    fn level_two_faces() {
        let m = model("s3");
        let g = m.pi.parse_label("213").unwrap();
        assert_eq!(m.face(2, 2, &m.smash(g, 0)), m.smash(g, 0));
        assert!(m.face(2, 2, &m.smash(g, 1)).is_empty());
        assert!(m.face(2, 0, &m.smash(g, 0)).is_empty());
        assert_eq!(m.face(2, 0, &m.smash(g, 1)), m.smash(g, 0));
        assert_eq!(m.face(2, 1, &m.smash(g, 1)), m.smash(g, 0));
        // level 1 ≅ π: both faces land on the trivial level 0
        assert!(m.face(1, 0, &m.smash(g, 0)).is_empty());
        assert!(m.face(1, 1, &m.smash(g, 0)).is_empty());
    }

    #[test]
    fn nh2_for_z2_is_infinite_cyclic() {
        let m = model("z2");
        let (lp, k) = m.nh2().unwrap();
        let inv = abelian_invariants(&k.presentation).unwrap();
        assert_eq!((inv.torsion.len(), inv.free_rank), (0, 1));
        // every Schreier generator lies in NH_2
        for g in 0..k.num_generators() {
            let x = lp.to_element(&m, &k.generator_word(g));
            assert!(m.face(2, 0, &x).is_empty() && m.face(2, 1, &x).is_empty());
        }
        // (ab)^2 with a = g∧x_0, b = g∧x_1 lies in NH_2
        let (a, b) = (m.smash(1, 0), m.smash(1, 1));
        let ab = m.words.mul(&a, &b);
        let ab2 = m.words.mul(&ab, &ab);
        assert!(m.face(2, 0, &ab2).is_empty() && m.face(2, 1, &ab2).is_empty());
        assert!(!k.rewrite(&lp.to_word(&ab2)).unwrap().is_empty());
    }

    #[test]
    fn nh2_rank_for_abelian_groups() {
        for (name, q) in [("z3", 3usize), ("k4", 4)] {
            let (_, k) = model(name).nh2().unwrap();
            let inv = abelian_invariants(&k.presentation).unwrap();
            assert!(inv.torsion.is_empty());
            assert_eq!(inv.free_rank, (q - 1) * (q - 1), "{name}");
        }
    }

    #[test]
    fn word_translation_round_trips() {
        let m = model("s3");
        let lp = m.level_presentation(3);
        let mut rng = rand::rngs::mock::StepRng::new(7, 13);
        for _ in 0..50 {
            let x = m.random_element(3, &mut rng);
            assert_eq!(lp.to_element(&m, &lp.to_word(&x)), x);
        }
    }
}

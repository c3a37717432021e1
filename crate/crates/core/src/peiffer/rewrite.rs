//! Constructive standard form for elements of `D_n`.
//!
//! The input is a word `∏ s_i(h_i)`. Each factor is split into terms
//! `s_α(x_α)` with `x_α` in the Moore complex, and the terms are insertion
//! sorted from the right into increasing `α`. Moving a term `T = s_α x` right
//! past a smaller `B = s_β y`:
//!
//! * disjoint `α, β`: `T B = F · s_{n-1}(w_{n-1}) ⋯ s_0(w_0) · B · T` with
//!   `F = F_{α,β}(x, y)`; `F` is pulled out to the far left as a conjugate.
//! * overlapping: `T B = s_δ(z) · T` with `δ = α ∩ β`, `z` read off the
//!   conjugation lemma and split again.
//!
//! Equal indices merge. The result is `g = ∏ ν_i · ∏ s_α(x_α)`.

use std::collections::{HashMap, VecDeque};

use serde_json::json;

use super::{p_j_unchecked, peiffer_f_unchecked, PeifferGenerator};
use crate::config::Bounds;
use crate::error::{Error, Result};
use crate::simplex_maps::{gamma_star, gamma_star_preimage, PeifferPair, SurjTuple};
use crate::simplicial::decompose::decompose_from;
use crate::simplicial::{apply_degeneracies, SimplicialGroup};

/// `∏ s_i(h_i)` with `h_i ∈ G_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyWord<E> {
    pub n: usize,
    pub letters: Vec<(usize, E)>,
}

impl<E: Clone> DegeneracyWord<E> {
    pub fn new(n: usize, letters: Vec<(usize, E)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("level 0 has no degenerate elements".into()));
        }
        if let Some((i, _)) = letters.iter().find(|(i, _)| *i >= n) {
            return Err(Error::OutOfRange { what: "degeneracy", index: *i, max: n - 1 });
        }
        Ok(DegeneracyWord { n, letters })
    }

    pub fn evaluate<M: SimplicialGroup<Elem = E> + ?Sized>(&self, model: &M) -> E {
        self.letters.iter().fold(model.identity(self.n), |acc, (i, h)| {
            model.mul(self.n, &acc, &model.degeneracy(self.n - 1, *i, h))
        })
    }

    /// Parses `s0(...) * s1(...)`; the text inside the parentheses is a level `n-1` element.
    pub fn parse<M: SimplicialGroup<Elem = E> + ?Sized>(model: &M, n: usize, text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let chars: Vec<char> = text.chars().collect();
        let mut pos = 0;
        let skip = |pos: &mut usize| {
            while *pos < chars.len() && (chars[*pos].is_whitespace() || chars[*pos] == '*') {
                *pos += 1;
            }
        };
        skip(&mut pos);
        while pos < chars.len() {
            if chars[pos] != 's' {
                return Err(Error::Parse(format!("expected `s<i>(...)` at offset {pos} in `{text}`")));
            }
            pos += 1;
            let start = pos;
            while pos < chars.len() && (chars[pos].is_ascii_digit() || chars[pos] == '_') {
                pos += 1;
            }
            let digits: String = chars[start..pos].iter().filter(|c| **c != '_').collect();
            let i: usize = digits.parse().map_err(|_| Error::Parse(format!("missing degeneracy index in `{text}`")))?;
            if pos >= chars.len() || chars[pos] != '(' {
                return Err(Error::Parse(format!("expected `(` after s{i} in `{text}`")));
            }
            let mut depth = 0;
            let open = pos;
            loop {
                if pos >= chars.len() {
                    return Err(Error::Parse(format!("unbalanced parentheses in `{text}`")));
                }
                match chars[pos] {
                    '(' => depth += 1,
                    ')' => {
                        depth -= 1;
                        if depth == 0 {
                            break;
                        }
                    }
                    _ => {}
                }
                pos += 1;
            }
            let inner: String = chars[open + 1..pos].iter().collect();
            pos += 1;
            if n == 0 {
                return Err(Error::Invalid("level 0 has no degenerate elements".into()));
            }
            letters.push((i, model.parse(n - 1, &inner)?));
            skip(&mut pos);
        }
        Self::new(n, letters)
    }

    pub fn format<M: SimplicialGroup<Elem = E> + ?Sized>(&self, model: &M) -> String {
        let parts: Vec<String> =
            self.letters.iter().map(|(i, h)| format!("s{i}({})", model.format(self.n - 1, h))).collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" * ")
        }
    }
}

/// A word for `g ∈ D_n` by breadth-first search over degenerate generators.
pub fn degeneracy_word_for<M: SimplicialGroup + ?Sized>(
    model: &M,
    n: usize,
    g: &M::Elem,
    bound: usize,
) -> Result<DegeneracyWord<M::Elem>> {
    model.check_level(n)?;
    if n == 0 {
        return Err(Error::Invalid("level 0 has no degenerate elements".into()));
    }
    let gens = model.level_generators(n - 1);
    let mut letters = Vec::new();
    for i in 0..n {
        for h in &gens {
            letters.push((i, h.clone(), model.degeneracy(n - 1, i, h)));
        }
    }
    let id = model.identity(n);
    let mut parent: HashMap<M::Elem, Option<(M::Elem, usize)>> = HashMap::new();
    parent.insert(id.clone(), None);
    let mut queue = VecDeque::from([id]);
    let mut found = parent.contains_key(g);
    while !found {
        let Some(x) = queue.pop_front() else { break };
        for (k, (_, _, s)) in letters.iter().enumerate() {
            let y = model.mul(n, &x, s);
            if !parent.contains_key(&y) {
                if parent.len() >= bound {
                    return Err(Error::resource(format!("search for a degeneracy word in D_{n}"), bound as u128));
                }
                parent.insert(y.clone(), Some((x.clone(), k)));
                if y == *g {
                    found = true;
                    break;
                }
                queue.push_back(y);
            }
        }
    }
    if !found {
        return Err(Error::Invalid(format!("element is not in D_{n}")));
    }
    let mut word = Vec::new();
    let mut cur = g.clone();
    while let Some(Some((prev, k))) = parent.get(&cur) {
        word.push((letters[*k].0, letters[*k].1.clone()));
        cur = prev.clone();
    }
    word.reverse();
    DegeneracyWord::new(n, word)
}

/// `conjugator · F · conjugator^{-1}` raised to `exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuEntry<E> {
    pub conjugator: E,
    pub generator: PeifferGenerator<E>,
    pub exponent: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardFormCertificate<E> {
    pub n: usize,
    pub input: E,
    /// `(α, x_α)` in increasing `α`, `α ≠ ∅`.
    pub components: Vec<(SurjTuple, E)>,
    pub nu: Vec<NuEntry<E>>,
    pub steps: usize,
}

impl<E: Clone + Eq> StandardFormCertificate<E> {
    pub fn nu_product<M: SimplicialGroup<Elem = E> + ?Sized>(&self, model: &M) -> E {
        let n = self.n;
        self.nu.iter().fold(model.identity(n), |acc, e| {
            let c = model.mul(n, &model.mul(n, &e.conjugator, &e.generator.value), &model.inv(n, &e.conjugator));
            let c = if e.exponent < 0 { model.inv(n, &c) } else { c };
            model.mul(n, &acc, &c)
        })
    }

    pub fn degenerate_product<M: SimplicialGroup<Elem = E> + ?Sized>(&self, model: &M) -> E {
        self.components
            .iter()
            .fold(model.identity(self.n), |acc, (a, x)| model.mul(self.n, &acc, &apply_degeneracies(model, a, x)))
    }

    pub fn reconstruct<M: SimplicialGroup<Elem = E> + ?Sized>(&self, model: &M) -> E {
        model.mul(self.n, &self.nu_product(model), &self.degenerate_product(model))
    }

    pub fn verify<M: SimplicialGroup<Elem = E> + ?Sized>(&self, model: &M) -> bool {
        self.reconstruct(model) == self.input
    }

    pub fn components_trivial<M: SimplicialGroup<Elem = E> + ?Sized>(&self, model: &M) -> bool {
        self.components.iter().all(|(a, x)| model.is_identity(a.source_dim(), x))
    }

    pub fn to_json<M: SimplicialGroup<Elem = E> + ?Sized>(&self, model: &M) -> serde_json::Value {
        let n = self.n;
        json!({
            "n": n,
            "input": model.format(n, &self.input),
            "components": self.components.iter().map(|(a, x)| json!({
                "alpha": a.indices(),
                "value": model.format(a.source_dim(), x),
            })).collect::<Vec<_>>(),
            "nu": self.nu.iter().map(|e| json!({
                "conjugator": model.format(n, &e.conjugator),
                "generator": e.generator.to_json(model),
                "exponent": e.exponent,
            })).collect::<Vec<_>>(),
            "steps": self.steps,
            "reconstructs": self.verify(model),
        })
    }
}

type Term<E> = (SurjTuple, E);

struct Rewriter<'a, M: SimplicialGroup + ?Sized> {
    model: &'a M,
    n: usize,
    terms: Vec<Term<M::Elem>>,
    nu: Vec<NuEntry<M::Elem>>,
    steps: usize,
    max_steps: usize,
}

impl<M: SimplicialGroup + ?Sized> Rewriter<'_, M> {
    fn value(&self, t: &Term<M::Elem>) -> M::Elem {
        apply_degeneracies(self.model, &t.0, &t.1)
    }

    fn product(&self, terms: &[Term<M::Elem>]) -> M::Elem {
        terms.iter().fold(self.model.identity(self.n), |acc, t| self.model.mul(self.n, &acc, &self.value(t)))
    }

    /// Nontrivial terms of `s_δ(z)` for `z ∈ G_{n-#δ}`, in increasing order.
    fn split_under(&self, delta: &SurjTuple, z: &M::Elem) -> Vec<Term<M::Elem>> {
        let mut inner = Vec::new();
        decompose_from(self.model, delta.source_dim(), 0, z, &mut inner);
        inner
            .into_iter()
            .filter(|(t, x)| !self.model.is_identity(t.source_dim(), x))
            .map(|(t, x)| (gamma_star(delta, &t).expect("dimensions agree"), x))
            .collect()
    }

    fn split_degenerate(&self, j: usize, w: &M::Elem) -> Vec<Term<M::Elem>> {
        self.split_under(&SurjTuple::single(self.n, j).expect("j < n"), w)
    }

    /// Rewrites the adjacent pair `T B` at `i`, `i + 1` with `T > B`.
    fn swap(&mut self, i: usize) -> Result<Vec<Term<M::Elem>>> {
        let n = self.n;
        let model = self.model;
        let (alpha, x) = self.terms[i].clone();
        let (beta, y) = self.terms[i + 1].clone();
        if alpha.is_disjoint(&beta) {
            let pair = PeifferPair { alpha, beta };
            // [T,B] = F · s_{n-1}(w_{n-1}) ⋯ s_0(w_0)
            let mut v = model.commutator(n, &self.value(&self.terms[i]), &self.value(&self.terms[i + 1]));
            let mut ws = Vec::with_capacity(n);
            for j in 0..n {
                ws.push(model.face(n, j, &v));
                v = p_j_unchecked(model, n, j, &v);
            }
            let generator = peiffer_f_unchecked(model, &pair, &x, &y);
            debug_assert!(generator.value == v);
            if !model.is_identity(n, &generator.value) {
                let conjugator = self.product(&self.terms[..i]);
                self.nu.push(NuEntry { conjugator, generator, exponent: 1 });
            }
            let mut out = Vec::new();
            for j in (0..n).rev() {
                out.extend(self.split_degenerate(j, &ws[j]));
            }
            out.push((pair.beta, y));
            out.push((pair.alpha, x));
            Ok(out)
        } else {
            // T B = (T B T^{-1}) T with T B T^{-1} in the image of s_δ
            let delta = alpha.intersect(&beta)?;
            let abar = gamma_star_preimage(&delta, &alpha)?.expect("δ ⊂ α");
            let bbar = gamma_star_preimage(&delta, &beta)?.expect("δ ⊂ β");
            let m = delta.source_dim();
            let sa = apply_degeneracies(model, &abar, &x);
            let sb = apply_degeneracies(model, &bbar, &y);
            let z = model.mul(m, &model.mul(m, &sa, &sb), &model.inv(m, &sa));
            let mut out = self.split_under(&delta, &z);
            out.push((alpha, x));
            Ok(out)
        }
    }

    fn run(&mut self) -> Result<()> {
        let model = self.model;
        let mut i = 0;
        while i + 1 < self.terms.len() {
            let ord = self.terms[i].0.cmp(&self.terms[i + 1].0);
            if ord == std::cmp::Ordering::Less {
                i += 1;
                continue;
            }
            self.steps += 1;
            if self.steps > self.max_steps {
                return Err(Error::resource(
                    format!("standard-form rewriting steps ({} ν entries so far)", self.nu.len()),
                    self.max_steps as u128,
                ));
            }
            let replacement = if ord == std::cmp::Ordering::Equal {
                let (alpha, x) = &self.terms[i];
                let merged = model.mul(alpha.source_dim(), x, &self.terms[i + 1].1);
                if model.is_identity(alpha.source_dim(), &merged) {
                    Vec::new()
                } else {
                    vec![(*alpha, merged)]
                }
            } else {
                self.swap(i)?
            };
            self.terms.splice(i..i + 2, replacement);
            i = i.saturating_sub(1);
        }
        Ok(())
    }
}

/// Rewrites `∏ s_i(h_i)` into `∏ ν · ∏ s_α(x_α)` with increasing `α`.
pub fn standard_form<M: SimplicialGroup + ?Sized>(
    model: &M,
    word: &DegeneracyWord<M::Elem>,
    bounds: &Bounds,
) -> Result<StandardFormCertificate<M::Elem>> {
    let n = word.n;
    model.check_level(n)?;
    let input = word.evaluate(model);
    let mut rw = Rewriter { model, n, terms: Vec::new(), nu: Vec::new(), steps: 0, max_steps: bounds.max_rewrite_steps };
    for (i, h) in &word.letters {
        let split = rw.split_degenerate(*i, h);
        rw.terms.extend(split);
    }
    rw.run()?;
    let cert = StandardFormCertificate { n, input, components: rw.terms, nu: rw.nu, steps: rw.steps };
    debug_assert!(cert.verify(model));
    Ok(cert)
}

/// Random words in the degenerate generators, for tests and benches.
pub fn random_degeneracy_word<M: SimplicialGroup + ?Sized>(
    model: &M,
    n: usize,
    len: usize,
    rng: &mut dyn rand::RngCore,
) -> DegeneracyWord<M::Elem> {
    let letters = (0..len)
        .map(|_| (crate::simplicial::random_index(rng, n), model.random_element(n - 1, rng)))
        .collect();
    DegeneracyWord { n, letters }
}


use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::{FiniteGroup, GroupOps};
use crate::error::{Error, Result};

/// One syllable `(copy, element)` of a free-product word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Syllable {
    pub copy: u32,
    pub elem: u32,
}

impl Syllable {
    pub fn new(copy: usize, elem: u32) -> Self {
        Syllable { copy: copy as u32, elem }
    }
}

/// A reduced word in a free product: no identity syllables, adjacent
/// syllables from distinct copies. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct FreeProductWord {
    syllables: Vec<Syllable>,
}

impl FreeProductWord {
    pub fn identity() -> Self {
        FreeProductWord::default()
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.syllables.iter().all(|s| s.elem != 0)
            && self.syllables.windows(2).all(|w| w[0].copy != w[1].copy)
    }
}

/// Free product of finitely many finite groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeProduct {
    factors: Vec<Arc<FiniteGroup>>,
}

impl FreeProduct {
    pub fn new(factors: Vec<Arc<FiniteGroup>>) -> Self {
        FreeProduct { factors }
    }

    /// `copies` copies of the same group.
    pub fn power(group: Arc<FiniteGroup>, copies: usize) -> Self {
        FreeProduct { factors: vec![group; copies] }
    }

    pub fn copies(&self) -> usize {
        self.factors.len()
    }

    pub fn factor(&self, copy: usize) -> &FiniteGroup {
        &self.factors[copy]
    }

    pub fn syllable(&self, copy: usize, elem: u32) -> Result<FreeProductWord> {
        self.reduce(&[Syllable::new(copy, elem)])
    }

    /// Canonical form of an arbitrary syllable sequence.
    pub fn reduce(&self, raw: &[Syllable]) -> Result<FreeProductWord> {
        for s in raw {
            let c = s.copy as usize;
            if c >= self.factors.len() {
                return Err(Error::OutOfRange { what: "copy", index: c, max: self.factors.len().saturating_sub(1) });
            }
            if s.elem as usize >= self.factors[c].order() {
                return Err(Error::OutOfRange {
                    what: "element",
                    index: s.elem as usize,
                    max: self.factors[c].order() - 1,
                });
            }
        }
        Ok(self.reduce_unchecked(raw.iter().copied()))
    }

    fn reduce_unchecked(&self, raw: impl IntoIterator<Item = Syllable>) -> FreeProductWord {
        let mut out: Vec<Syllable> = Vec::new();
        for s in raw {
            if s.elem == 0 {
                continue;
            }
            match out.last_mut() {
                Some(top) if top.copy == s.copy => {
                    let m = self.factors[s.copy as usize].mul(top.elem as usize, s.elem as usize);
                    if m == 0 {
                        out.pop();
                    } else {
                        top.elem = m;
                    }
                }
                _ => out.push(s),
            }
        }
        FreeProductWord { syllables: out }
    }

    pub fn mul(&self, a: &FreeProductWord, b: &FreeProductWord) -> FreeProductWord {
        self.reduce_unchecked(a.syllables.iter().chain(b.syllables.iter()).copied())
    }

    pub fn inverse(&self, a: &FreeProductWord) -> FreeProductWord {
        FreeProductWord {
            syllables: a
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable { copy: s.copy, elem: self.factors[s.copy as usize].inv(s.elem as usize) })
                .collect(),
        }
    }

    pub fn commutator(&self, a: &FreeProductWord, b: &FreeProductWord) -> FreeProductWord {
        let ai = self.inverse(a);
        let bi = self.inverse(b);
        self.reduce_unchecked(
            a.syllables.iter().chain(&b.syllables).chain(&ai.syllables).chain(&bi.syllables).copied(),
        )
    }

    /// Applies `f` syllable-wise; `f` returns `None` to delete the syllable.
    /// This is a homomorphism whenever `f` acts as a homomorphism per copy.
    pub fn map_syllables(
        &self,
        a: &FreeProductWord,
        mut f: impl FnMut(Syllable) -> Option<Syllable>,
    ) -> FreeProductWord {
        self.reduce_unchecked(a.syllables.iter().filter_map(|&s| f(s)))
    }

    pub fn format(&self, a: &FreeProductWord) -> String {
        if a.is_empty() {
            return "1".into();
        }
        a.syllables
            .iter()
            .map(|s| format!("{}@{}", self.factors[s.copy as usize].label(s.elem as usize), s.copy))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses whitespace-separated `label@copy` syllables; `1` is the identity.
    pub fn parse(&self, text: &str) -> Result<FreeProductWord> {
        let mut raw = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (label, copy) = tok
                .rsplit_once('@')
                .ok_or_else(|| Error::Parse(format!("syllable `{tok}` must look like label@copy")))?;
            let copy: usize = copy.parse().map_err(|_| Error::Parse(format!("bad copy index in `{tok}`")))?;
            if copy >= self.copies() {
                return Err(Error::OutOfRange { what: "copy", index: copy, max: self.copies().saturating_sub(1) });
            }
            raw.push(Syllable::new(copy, self.factors[copy].parse_label(label)?));
        }
        self.reduce(&raw)
    }
}

impl GroupOps for FreeProduct {
    type Elem = FreeProductWord;

    fn identity(&self) -> FreeProductWord {
        FreeProductWord::identity()
    }

    fn mul(&self, a: &FreeProductWord, b: &FreeProductWord) -> FreeProductWord {
        FreeProduct::mul(self, a, b)
    }

    fn inv(&self, a: &FreeProductWord) -> FreeProductWord {
        self.inverse(a)
    }
}

impl fmt::Display for FreeProductWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.syllables.iter().map(|s| format!("{}@{}", s.elem, s.copy)).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z2z2() -> FreeProduct {
        FreeProduct::power(Arc::new(FiniteGroup::cyclic(2).unwrap()), 2)
    }

    #[test]
    fn empty_word_and_cancellation() {
        let fp = z2z2();
        assert_eq!(fp.reduce(&[]).unwrap(), FreeProductWord::identity());
        let g = Syllable::new(0, 1);
        assert!(fp.reduce(&[g, g]).unwrap().is_empty());
        let a = fp.syllable(0, 1).unwrap();
        assert!(fp.mul(&a, &a).is_empty());
    }

    #[test]
    fn commutator_in_infinite_dihedral() {
        let fp = z2z2();
        let a = fp.syllable(0, 1).unwrap();
        let b = fp.syllable(1, 1).unwrap();
        let c = fp.commutator(&a, &b);
        // order-2 syllables are self-inverse: [a,b] = abab
        assert_eq!(c.len(), 4);
        assert_eq!(c, fp.reduce(&[Syllable::new(0, 1), Syllable::new(1, 1), Syllable::new(0, 1), Syllable::new(1, 1)]).unwrap());
        assert!(fp.commutator(&FreeProductWord::identity(), &b).is_empty());
    }

    #[test]
    fn merge_across_cancelled_middle() {
        // [(0,g),(1,h),(1,h⁻¹),(0,g)] → [(0,g²)]
        let z4 = Arc::new(FiniteGroup::cyclic(4).unwrap());
        let fp = FreeProduct::power(z4, 2);
        let w = fp
            .reduce(&[Syllable::new(0, 1), Syllable::new(1, 1), Syllable::new(1, 3), Syllable::new(0, 1)])
            .unwrap();
        assert_eq!(w.syllables(), &[Syllable::new(0, 2)]);
        let fp2 = z2z2();
        let w2 = fp2
            .reduce(&[Syllable::new(0, 1), Syllable::new(1, 1), Syllable::new(1, 1), Syllable::new(0, 1)])
            .unwrap();
        assert!(w2.is_empty());
    }

    #[test]
    fn unknown_copy_is_an_error() {
        let fp = z2z2();
        assert!(fp.reduce(&[Syllable::new(2, 1)]).is_err());
        assert!(fp.reduce(&[Syllable::new(0, 5)]).is_err());
    }

    #[test]
    fn parse_and_format() {
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let fp = FreeProduct::power(s3, 2);
        let w = fp.parse("213@0 132@1 1").unwrap();
        assert_eq!(fp.format(&w), "213@0 132@1");
        assert!(fp.parse("213@2").is_err());
    }

    fn arb_raw() -> impl Strategy<Value = Vec<(u32, u32)>> {
        proptest::collection::vec((0u32..3, 0u32..6), 0..24)
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent_and_cancel_insensitive(raw in arb_raw(), pos in 0usize..25, copy in 0u32..3, elem in 1u32..6) {
            let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
            let fp = FreeProduct::power(s3.clone(), 3);
            let raw: Vec<Syllable> = raw.into_iter().map(|(c, e)| Syllable { copy: c, elem: e }).collect();
            let w = fp.reduce(&raw).unwrap();
            prop_assert!(w.is_reduced());
            prop_assert_eq!(fp.reduce(w.syllables()).unwrap(), w.clone());
            let mut spliced = raw.clone();
            let at = pos.min(spliced.len());
            let s = Syllable { copy, elem };
            let si = Syllable { copy, elem: s3.inv(elem as usize) };
            spliced.splice(at..at, [s, si]);
            prop_assert_eq!(fp.reduce(&spliced).unwrap(), w);
        }

        #[test]
        fn commutator_times_reverse_is_identity(a in arb_raw(), b in arb_raw()) {
            let fp = FreeProduct::power(Arc::new(FiniteGroup::symmetric(3).unwrap()), 3);
            let conv = |r: Vec<(u32, u32)>| fp.reduce(&r.into_iter().map(|(c, e)| Syllable { copy: c, elem: e }).collect::<Vec<_>>()).unwrap();
            let (a, b) = (conv(a), conv(b));
            prop_assert!(fp.mul(&fp.commutator(&a, &b), &fp.commutator(&b, &a)).is_empty());
        }
    }
}

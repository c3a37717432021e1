//! Monotone surjections `[n] -> [n-l]` written as strictly decreasing index
//! tuples, their order, and composition of degeneracy strings.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest dimension accepted by `enumerate_s`.
pub const MAX_ENUM_DIM: usize = 16;
/// Largest dimension a tuple can live in.
pub const MAX_DIM: usize = 63;

/// A degeneracy tuple `(i_l, ..., i_1)` over dimension `n`, stored as a bit set.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SurjTuple {
    n: u8,
    bits: u64,
}

impl SurjTuple {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_DIM);
        SurjTuple { n: n as u8, bits: 0 }
    }

    /// From indices in any order; they must be distinct and `< n`.
    pub fn new(n: usize, indices: &[usize]) -> Result<Self> {
        if n > MAX_DIM {
            return Err(Error::resource("tuple dimension", MAX_DIM as u128));
        }
        let mut bits = 0u64;
        for &i in indices {
            if i >= n {
                return Err(Error::OutOfRange { what: "degeneracy", index: i, max: n.saturating_sub(1) });
            }
            if bits & (1 << i) != 0 {
                return Err(Error::Invalid(format!("repeated index {i}")));
            }
            bits |= 1 << i;
        }
        Ok(SurjTuple { n: n as u8, bits })
    }

    pub fn single(n: usize, i: usize) -> Result<Self> {
        Self::new(n, &[i])
    }

    pub(crate) fn from_bits(n: usize, bits: u64) -> Self {
        debug_assert!(n <= MAX_DIM && bits >> n == 0);
        SurjTuple { n: n as u8, bits }
    }

    pub fn dim(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// `#α`
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    /// Dimension of the source of `s_α`.
    pub fn source_dim(&self) -> usize {
        self.dim() - self.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        i < 64 && self.bits & (1 << i) != 0
    }

    /// High-to-low, as written.
    pub fn indices(&self) -> Vec<usize> {
        let mut v = self.ascending();
        v.reverse();
        v
    }

    /// Low-to-high: the order in which the degeneracies are applied.
    pub fn ascending(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.contains(i)).collect()
    }

    pub fn min_index(&self) -> Option<usize> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize)
    }

    fn check_dim(&self, other: &SurjTuple) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Dimension(self.dim(), other.dim()));
        }
        Ok(())
    }

    pub fn intersect(&self, other: &SurjTuple) -> Result<SurjTuple> {
        self.check_dim(other)?;
        Ok(SurjTuple { n: self.n, bits: self.bits & other.bits })
    }

    pub fn is_disjoint(&self, other: &SurjTuple) -> bool {
        self.bits & other.bits == 0
    }

    pub fn compare(&self, other: &SurjTuple) -> Result<Ordering> {
        self.check_dim(other)?;
        Ok(self.cmp_bits(other))
    }

    fn cmp_bits(&self, other: &SurjTuple) -> Ordering {
        let d = self.bits ^ other.bits;
        if d == 0 {
            return Ordering::Equal;
        }
        // the smallest differing index decides: whoever has it is larger
        let low = d & d.wrapping_neg();
        if self.bits & low != 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self.indices())
    }

    /// Accepts `(2,1,0)`, `[2,1,0]`, `2,1,0`, and `()`, `[]`, `∅` for the empty tuple.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let t = text.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .or_else(|| t.strip_prefix('[').and_then(|s| s.strip_suffix(']')))
            .unwrap_or(t)
            .trim();
        if t.is_empty() || t == "∅" {
            return Ok(Self::empty(n));
        }
        let idx = t
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad index `{p}` in `{text}`"))))
            .collect::<Result<Vec<_>>>()?;
        if idx.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::Parse(format!("indices must be strictly decreasing in `{text}`")));
        }
        Self::new(n, &idx)
    }
}

impl Ord for SurjTuple {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.cmp_bits(other))
    }
}

impl PartialOrd for SurjTuple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SurjTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices().iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for SurjTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}_{}", self.n)
    }
}

impl Serialize for SurjTuple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.indices().serialize(s)
    }
}

/// `S(n)` in increasing order.
pub fn enumerate_s(n: usize) -> Result<Vec<SurjTuple>> {
    if n > MAX_ENUM_DIM {
        return Err(Error::resource("S(n) enumeration dimension", MAX_ENUM_DIM as u128));
    }
    let mut all: Vec<SurjTuple> = (0..1u64 << n).map(|b| SurjTuple::from_bits(n, b)).collect();
    all.sort();
    Ok(all)
}

/// `S(n, n-l)`: the tuples of length `l`, in increasing order.
pub fn enumerate_s_len(n: usize, l: usize) -> Result<Vec<SurjTuple>> {
    Ok(enumerate_s(n)?.into_iter().filter(|t| t.len() == l).collect())
}

/// A pair `(α, β)` of non-empty disjoint tuples with `β < α`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PeifferPair {
    pub alpha: SurjTuple,
    pub beta: SurjTuple,
}

impl PeifferPair {
    pub fn new(alpha: SurjTuple, beta: SurjTuple) -> Result<Self> {
        alpha.check_dim(&beta)?;
        if alpha.is_empty() || beta.is_empty() {
            return Err(Error::Invalid("pair entries must be non-empty".into()));
        }
        if !alpha.is_disjoint(&beta) {
            return Err(Error::Invalid(format!("{alpha} and {beta} intersect")));
        }
        if beta >= alpha {
            return Err(Error::Invalid(format!("need {beta} < {alpha}")));
        }
        Ok(PeifferPair { alpha, beta })
    }

    pub fn dim(&self) -> usize {
        self.alpha.dim()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "alpha": self.alpha.indices(), "beta": self.beta.indices() })
    }
}

impl fmt::Display for PeifferPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{{{}{}}}", self.alpha, self.beta)
    }
}

/// `P(n)`, ordered by α then β.
pub fn enumerate_p(n: usize) -> Result<Vec<PeifferPair>> {
    let s = enumerate_s(n)?;
    let mut out = Vec::new();
    for (ai, &alpha) in s.iter().enumerate().skip(1) {
        for &beta in &s[1..ai] {
            if alpha.is_disjoint(&beta) {
                out.push(PeifferPair { alpha, beta });
            }
        }
    }
    Ok(out)
}

/// Rewrites a degeneracy string to decreasing normal form.
///
/// `ops[0]` is the outermost operator; the string ends in dimension `n`.
/// `choose` picks which of the offending adjacent positions to rewrite, so
/// tests can drive different rewriting orders.
pub fn normalize_with(n: usize, ops: &[usize], mut choose: impl FnMut(&[usize]) -> usize) -> Result<SurjTuple> {
    let len = ops.len();
    if len > n {
        return Err(Error::Dimension(len, n));
    }
    // ops[k] acts on dimension n - k - 1 and needs index <= that
    for (k, &i) in ops.iter().enumerate() {
        if i > n - k - 1 {
            return Err(Error::OutOfRange { what: "degeneracy", index: i, max: n - k - 1 });
        }
    }
    let mut w = ops.to_vec();
    loop {
        let bad: Vec<usize> = (0..w.len().saturating_sub(1)).filter(|&k| w[k] <= w[k + 1]).collect();
        if bad.is_empty() {
            break;
        }
        let k = bad[choose(&bad) % bad.len()];
        // s_i s_j = s_{j+1} s_i for i <= j
        let (i, j) = (w[k], w[k + 1]);
        w[k] = j + 1;
        w[k + 1] = i;
    }
    SurjTuple::new(n, &w)
}

pub fn normalize(n: usize, ops: &[usize]) -> Result<SurjTuple> {
    normalize_with(n, ops, |_| 0)
}

/// `γ_*(α)`: the tuple with `s_{γ_*(α)} = s_γ s_α`.
pub fn gamma_star(gamma: &SurjTuple, alpha: &SurjTuple) -> Result<SurjTuple> {
    if alpha.dim() != gamma.source_dim() {
        return Err(Error::Dimension(alpha.dim(), gamma.source_dim()));
    }
    let mut ops = gamma.indices();
    ops.extend(alpha.indices());
    normalize(gamma.dim(), &ops)
}

/// The `θ` with `γ_*(θ) = α`, if any.
pub fn gamma_star_preimage(gamma: &SurjTuple, alpha: &SurjTuple) -> Result<Option<SurjTuple>> {
    gamma.check_dim(alpha)?;
    if alpha.len() < gamma.len() {
        return Ok(None);
    }
    let m = gamma.source_dim();
    let want = alpha.len() - gamma.len();
    let mut found = None;
    for_each_subset(m, want, |bits| {
        let theta = SurjTuple::from_bits(m, bits);
        if found.is_none() && gamma_star(gamma, &theta).is_ok_and(|t| t == *alpha) {
            found = Some(theta);
        }
    });
    Ok(found)
}

fn for_each_subset(m: usize, k: usize, mut f: impl FnMut(u64)) {
    fn rec(start: usize, m: usize, k: usize, acc: u64, f: &mut dyn FnMut(u64)) {
        if k == 0 {
            f(acc);
            return;
        }
        for i in start..m {
            if m - i < k {
                break;
            }
            rec(i + 1, m, k - 1, acc | 1 << i, f);
        }
    }
    rec(0, m, k, 0, &mut f);
}

/// Result of pushing `d_j` through `s_α`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceThrough {
    /// `d_j s_α = s_τ`
    Cancel(SurjTuple),
    /// `d_j s_α = s_τ d_k`
    Through(SurjTuple, usize),
}

/// Rewrites `d_j s_α` with the simplicial identities.
pub fn face_through(j: usize, alpha: &SurjTuple) -> Result<FaceThrough> {
    let n = alpha.dim();
    if j > n {
        return Err(Error::OutOfRange { what: "face", index: j, max: n });
    }
    if n == 0 {
        return Err(Error::Invalid("no faces in dimension 0".into()));
    }
    let ops = alpha.indices();
    let mut out = Vec::with_capacity(ops.len());
    let mut j = j;
    for (k, &i) in ops.iter().enumerate() {
        if j < i {
            out.push(i - 1);
        } else if j == i || j == i + 1 {
            out.extend_from_slice(&ops[k + 1..]);
            return Ok(FaceThrough::Cancel(normalize(n - 1, &out)?));
        } else {
            out.push(i);
            j -= 1;
        }
    }
    Ok(FaceThrough::Through(normalize(n - 1, &out)?, j))
}

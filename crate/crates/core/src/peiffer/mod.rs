//! Projections `p_j`, the pairings `F_{α,β}`, the normal subgroup they
//! generate, and the standard-form rewriter.

use std::collections::HashSet;

use serde_json::json;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::simplex_maps::{enumerate_p, PeifferPair};
use crate::simplicial::moore::check_moore;
use crate::simplicial::{apply_degeneracies, SimplicialGroup};

pub mod checks;
pub mod expand;
pub mod rewrite;
pub mod smash;

pub use checks::{crossed_complex_check, eta, theorem_a_check, CrossedComplexReport, TheoremAReport};
pub use expand::{expand, SymTerm};
pub use rewrite::{standard_form, DegeneracyWord, StandardFormCertificate};

/// `p_j(z) = z s_j d_j(z)^{-1}` for `z ∈ G_n`, `0 <= j < n`.
pub fn p_j<M: SimplicialGroup + ?Sized>(model: &M, n: usize, j: usize, z: &M::Elem) -> Result<M::Elem> {
    model.check_level(n)?;
    if j >= n {
        return Err(Error::OutOfRange { what: "projection", index: j, max: n.saturating_sub(1) });
    }
    Ok(p_j_unchecked(model, n, j, z))
}

pub(crate) fn p_j_unchecked<M: SimplicialGroup + ?Sized>(model: &M, n: usize, j: usize, z: &M::Elem) -> M::Elem {
    let sd = model.degeneracy(n - 1, j, &model.face(n, j, z));
    model.mul(n, z, &model.inv(n, &sd))
}

/// `p = p_{n-1} ... p_0`, applying `p_0` first.
pub fn p_full<M: SimplicialGroup + ?Sized>(model: &M, n: usize, z: &M::Elem) -> Result<M::Elem> {
    model.check_level(n)?;
    Ok((0..n).fold(z.clone(), |acc, j| p_j_unchecked(model, n, j, &acc)))
}

/// `F_{α,β}(x, y)` with its arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeifferGenerator<E> {
    pub pair: PeifferPair,
    pub x: E,
    pub y: E,
    pub value: E,
}

impl<E> PeifferGenerator<E> {
    pub fn n(&self) -> usize {
        self.pair.dim()
    }

    pub fn to_json<M: SimplicialGroup<Elem = E> + ?Sized>(&self, model: &M) -> serde_json::Value {
        json!({
            "pair": self.pair.to_json(),
            "label": self.pair.to_string(),
            "x": model.format(self.pair.alpha.source_dim(), &self.x),
            "y": model.format(self.pair.beta.source_dim(), &self.y),
            "value": model.format(self.n(), &self.value),
        })
    }
}

/// `[s_α x, s_β y]` in `G_n`.
pub fn pair_commutator<M: SimplicialGroup + ?Sized>(model: &M, pair: &PeifferPair, x: &M::Elem, y: &M::Elem) -> M::Elem {
    let a = apply_degeneracies(model, &pair.alpha, x);
    let b = apply_degeneracies(model, &pair.beta, y);
    model.commutator(pair.dim(), &a, &b)
}

/// `F_{α,β}(x, y) = p[s_α x, s_β y]`, with `x`, `y` checked to be Moore elements.
pub fn peiffer_f<M: SimplicialGroup + ?Sized>(
    model: &M,
    pair: &PeifferPair,
    x: &M::Elem,
    y: &M::Elem,
) -> Result<PeifferGenerator<M::Elem>> {
    let n = pair.dim();
    model.check_level(n)?;
    check_moore(model, pair.alpha.source_dim(), x)?;
    check_moore(model, pair.beta.source_dim(), y)?;
    Ok(peiffer_f_unchecked(model, pair, x, y))
}

pub(crate) fn peiffer_f_unchecked<M: SimplicialGroup + ?Sized>(
    model: &M,
    pair: &PeifferPair,
    x: &M::Elem,
    y: &M::Elem,
) -> PeifferGenerator<M::Elem> {
    let n = pair.dim();
    let v = pair_commutator(model, pair, x, y);
    let value = (0..n).fold(v, |acc, j| p_j_unchecked(model, n, j, &acc));
    PeifferGenerator { pair: *pair, x: x.clone(), y: y.clone(), value }
}

/// Where the arguments of the pairings come from.
#[derive(Clone, Debug)]
pub enum ArgumentSource<E> {
    /// All of `NG_m` for every needed `m` (finite levels only).
    Exhaustive,
    /// `lists[m]`: the arguments used from `NG_m`; each is membership-checked.
    Lists(Vec<Vec<E>>),
}

/// One generator per `(pair, x, y)`, deduplicated by value; identity values
/// are kept only if nothing else is produced.
pub fn peiffer_generators<M: SimplicialGroup + ?Sized>(
    model: &M,
    n: usize,
    source: &ArgumentSource<M::Elem>,
    exec: Exec,
) -> Result<Vec<PeifferGenerator<M::Elem>>> {
    model.check_level(n)?;
    let args: Vec<Vec<M::Elem>> = match source {
        ArgumentSource::Exhaustive => (0..n).map(|m| model.moore_level(m)).collect::<Result<_>>()?,
        ArgumentSource::Lists(lists) => {
            let mut out = Vec::with_capacity(n);
            for m in 0..n {
                let list = lists.get(m).cloned().unwrap_or_default();
                for x in &list {
                    check_moore(model, m, x)?;
                }
                out.push(list);
            }
            out
        }
    };
    let mut tasks = Vec::new();
    for pair in enumerate_p(n)? {
        for xi in 0..args[pair.alpha.source_dim()].len() {
            tasks.push((pair, xi));
        }
    }
    let produced = exec.flat_map(&tasks, |(pair, xi)| {
        let x = &args[pair.alpha.source_dim()][*xi];
        let mut local = Vec::new();
        let mut seen = HashSet::new();
        for y in &args[pair.beta.source_dim()] {
            let g = peiffer_f_unchecked(model, pair, x, y);
            if seen.insert(g.value.clone()) {
                local.push(g);
            }
        }
        local
    });
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in produced {
        if seen.insert(g.value.clone()) {
            out.push(g);
        }
    }
    Ok(out)
}

/// The values of the generators, identity removed.
pub fn generator_values<E: Clone + PartialEq>(gens: &[PeifferGenerator<E>], identity: &E) -> Vec<E> {
    gens.iter().filter(|g| g.value != *identity).map(|g| g.value.clone()).collect()
}

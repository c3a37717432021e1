use serde_json::json;

use super::moore::is_moore;
use super::{apply_degeneracies, SimplicialGroup};
use crate::error::{Error, Result};
use crate::simplex_maps::{gamma_star, gamma_star_preimage, SurjTuple, MAX_ENUM_DIM};

/// `g = y ∏ s_α(x_α)` over `α ∈ S(n)`, product taken in increasing `α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition<E> {
    pub n: usize,
    /// `(α, x_α)` in increasing `α`; the first entry is `(∅, y)`.
    pub components: Vec<(SurjTuple, E)>,
}

impl<E: Clone> Decomposition<E> {
    pub fn component(&self, alpha: &SurjTuple) -> Option<&E> {
        self.components.iter().find(|(a, _)| a == alpha).map(|(_, x)| x)
    }

    pub fn moore_part(&self) -> &E {
        &self.components[0].1
    }

    pub fn to_json<M: SimplicialGroup<Elem = E> + ?Sized>(&self, model: &M) -> serde_json::Value {
        let comps: Vec<_> = self
            .components
            .iter()
            .map(|(a, x)| json!({ "alpha": a.indices(), "value": model.format(a.source_dim(), x) }))
            .collect();
        json!({ "n": self.n, "components": comps })
    }
}

/// `(g s_0 d_0 g^{-1}, s_0 d_0 g)` for `g ∈ G_n`, `n ≥ 1`.
pub fn theta<M: SimplicialGroup + ?Sized>(model: &M, n: usize, g: &M::Elem) -> Result<(M::Elem, M::Elem)> {
    model.check_level(n)?;
    if n == 0 {
        return Err(Error::Invalid("theta needs n >= 1".into()));
    }
    let sd = model.degeneracy(n - 1, 0, &model.face(n, 0, g));
    let k = model.mul(n, g, &model.inv(n, &sd));
    Ok((k, sd))
}

/// Decomposes `g ∈ G_n` killed by `d_0, ..., d_{j-1}`; all indices in the
/// result are `>= j`.
pub(crate) fn decompose_from<M: SimplicialGroup + ?Sized>(
    model: &M,
    n: usize,
    j: usize,
    g: &M::Elem,
    out: &mut Vec<(SurjTuple, M::Elem)>,
) {
    if j == n {
        out.push((SurjTuple::empty(n), g.clone()));
        return;
    }
    let h = model.face(n, j, g);
    let sh = model.degeneracy(n - 1, j, &h);
    let k = model.mul(n, g, &model.inv(n, &sh));
    decompose_from(model, n, j + 1, &k, out);
    let mut inner = Vec::new();
    decompose_from(model, n - 1, j, &h, &mut inner);
    let sj = SurjTuple::single(n, j).expect("j < n");
    for (theta, x) in inner {
        out.push((gamma_star(&sj, &theta).expect("dimensions agree"), x));
    }
}

pub fn decompose<M: SimplicialGroup + ?Sized>(model: &M, n: usize, g: &M::Elem) -> Result<Decomposition<M::Elem>> {
    model.check_level(n)?;
    if n > MAX_ENUM_DIM {
        return Err(Error::resource("decomposition dimension", MAX_ENUM_DIM as u128));
    }
    let mut components = Vec::with_capacity(1 << n);
    decompose_from(model, n, 0, g, &mut components);
    debug_assert!(components.windows(2).all(|w| w[0].0 < w[1].0));
    Ok(Decomposition { n, components })
}

pub fn reconstruct<M: SimplicialGroup + ?Sized>(model: &M, d: &Decomposition<M::Elem>) -> M::Elem {
    d.components
        .iter()
        .fold(model.identity(d.n), |acc, (a, x)| model.mul(d.n, &acc, &apply_degeneracies(model, a, x)))
}

/// Checks that every component lies in the Moore complex of its level.
pub fn components_are_moore<M: SimplicialGroup + ?Sized>(model: &M, d: &Decomposition<M::Elem>) -> bool {
    d.components.iter().all(|(a, x)| is_moore(model, a.source_dim(), x))
}

/// Both sides of `s_α x · s_β y · s_α x^{-1} = s_{α∩β}(s_ᾱ x · s_β̄ y · s_ᾱ x^{-1})`
/// with `ᾱ, β̄` the tuples satisfying `(α∩β)_*(ᾱ) = α`, `(α∩β)_*(β̄) = β`.
pub fn conjugation_sides<M: SimplicialGroup + ?Sized>(
    model: &M,
    alpha: &SurjTuple,
    beta: &SurjTuple,
    x: &M::Elem,
    y: &M::Elem,
) -> Result<(M::Elem, M::Elem)> {
    let n = alpha.dim();
    let delta = alpha.intersect(beta)?;
    let sa = apply_degeneracies(model, alpha, x);
    let sb = apply_degeneracies(model, beta, y);
    let lhs = model.mul(n, &model.mul(n, &sa, &sb), &model.inv(n, &sa));
    let abar = gamma_star_preimage(&delta, alpha)?.ok_or_else(|| Error::Invalid("no reindexed α".into()))?;
    let bbar = gamma_star_preimage(&delta, beta)?.ok_or_else(|| Error::Invalid("no reindexed β".into()))?;
    let m = delta.source_dim();
    let sa = apply_degeneracies(model, &abar, x);
    let sb = apply_degeneracies(model, &bbar, y);
    let z = model.mul(m, &model.mul(m, &sa, &sb), &model.inv(m, &sa));
    Ok((lhs, apply_degeneracies(model, &delta, &z)))
}

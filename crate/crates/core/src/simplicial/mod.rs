//! Simplicial groups: the model trait, the shipped models, identity
//! validation, Moore complexes and the semidirect decomposition.

use std::fmt::Debug;
use std::hash::Hash;

use rand::Rng;

use crate::error::{Error, Result};
use crate::simplex_maps::SurjTuple;

pub mod carlsson;
pub mod constant;
pub mod decompose;
pub mod moore;
pub mod pointwise;
pub mod select;
pub mod validate;

pub use carlsson::CarlssonModel;
pub use constant::ConstantModel;
pub use decompose::{decompose, reconstruct, theta, Decomposition};
pub use moore::{boundary, degenerate_subgroup, is_moore, moore_elements};
pub use pointwise::PointwiseModel;
pub use select::{AnyModel, ModelKind, ModelSpec};
pub use validate::{validate, ValidationReport, Violation};

/// A simplicial group truncated at `max_dim`.
///
/// Faces go `G_n -> G_{n-1}` (`0 <= i <= n`), degeneracies `G_n -> G_{n+1}`
/// (`0 <= i <= n`). Level arguments are not re-checked here; use
/// [`SimplicialGroup::check_level`] at entry points.
pub trait SimplicialGroup: Send + Sync {
    type Elem: Clone + Eq + Hash + Send + Sync + Debug;

    fn name(&self) -> String;
    fn max_dim(&self) -> usize;

    fn identity(&self, n: usize) -> Self::Elem;
    fn mul(&self, n: usize, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, n: usize, a: &Self::Elem) -> Self::Elem;
    fn face(&self, n: usize, i: usize, x: &Self::Elem) -> Self::Elem;
    fn degeneracy(&self, n: usize, i: usize, x: &Self::Elem) -> Self::Elem;

    /// `None` for infinite levels.
    fn level_order(&self, n: usize) -> Option<u128>;
    /// All elements of a finite level, subject to the enumeration bound.
    fn elements(&self, n: usize) -> Result<Vec<Self::Elem>>;
    fn level_generators(&self, n: usize) -> Vec<Self::Elem>;
    fn random_element(&self, n: usize, rng: &mut dyn rand::RngCore) -> Self::Elem;

    fn format(&self, n: usize, x: &Self::Elem) -> String;
    fn parse(&self, n: usize, text: &str) -> Result<Self::Elem>;

    /// Elements of `NG_n`; models with structure override the filtering default.
    fn moore_level(&self, n: usize) -> Result<Vec<Self::Elem>> {
        let all = self.elements(n)?;
        Ok(all.into_iter().filter(|x| (0..n).all(|i| self.is_identity(n - 1, &self.face(n, i, x)))).collect())
    }

    fn is_identity(&self, n: usize, x: &Self::Elem) -> bool {
        *x == self.identity(n)
    }

    fn check_level(&self, n: usize) -> Result<()> {
        if n > self.max_dim() {
            return Err(Error::OutOfRange { what: "level", index: n, max: self.max_dim() });
        }
        Ok(())
    }

    /// `a b a^-1 b^-1`
    fn commutator(&self, n: usize, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let ab = self.mul(n, a, b);
        let t = self.mul(n, &ab, &self.inv(n, a));
        self.mul(n, &t, &self.inv(n, b))
    }

    fn product(&self, n: usize, items: &[Self::Elem]) -> Self::Elem {
        items.iter().fold(self.identity(n), |acc, x| self.mul(n, &acc, x))
    }
}

/// `s_α(x)` for `x` in `G_{n-#α}`, applying the smallest index first.
pub fn apply_degeneracies<M: SimplicialGroup + ?Sized>(model: &M, alpha: &SurjTuple, x: &M::Elem) -> M::Elem {
    let mut y = x.clone();
    for (level, i) in (alpha.source_dim()..).zip(alpha.ascending()) {
        y = model.degeneracy(level, i, &y);
    }
    y
}

/// `d_j` iterated: applies faces in the given order starting at level `n`.
pub fn apply_faces<M: SimplicialGroup + ?Sized>(model: &M, n: usize, faces: &[usize], x: &M::Elem) -> M::Elem {
    let mut level = n;
    let mut y = x.clone();
    for &j in faces {
        y = model.face(level, j, &y);
        level -= 1;
    }
    y
}

/// Picks `count` sample elements of level `n`: everything when the level has
/// at most `exhaustive_limit` elements, otherwise generators plus random draws.
pub fn sample_level<M: SimplicialGroup + ?Sized>(
    model: &M,
    n: usize,
    count: usize,
    exhaustive_limit: u128,
    rng: &mut dyn rand::RngCore,
) -> Result<(Vec<M::Elem>, bool)> {
    if let Some(order) = model.level_order(n) {
        if order <= exhaustive_limit {
            return Ok((model.elements(n)?, true));
        }
    }
    let mut out = vec![model.identity(n)];
    out.extend(model.level_generators(n));
    while out.len() < count.max(out.len()) {
        out.push(model.random_element(n, rng));
    }
    Ok((out, false))
}

pub(crate) fn random_index(rng: &mut dyn rand::RngCore, n: usize) -> usize {
    rng.gen_range(0..n)
}

/// One level of a model viewed as a group.
pub struct Level<'a, M: ?Sized> {
    pub model: &'a M,
    pub n: usize,
}

impl<M: SimplicialGroup + ?Sized> crate::fp_group::GroupOps for Level<'_, M> {
    type Elem = M::Elem;

    fn identity(&self) -> M::Elem {
        self.model.identity(self.n)
    }

    fn mul(&self, a: &M::Elem, b: &M::Elem) -> M::Elem {
        self.model.mul(self.n, a, b)
    }

    fn inv(&self, a: &M::Elem) -> M::Elem {
        self.model.inv(self.n, a)
    }
}

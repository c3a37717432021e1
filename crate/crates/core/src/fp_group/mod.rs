//! Finite groups, free products of finite groups, presentations and the
//! classical engines over them.

use std::fmt::Debug;

pub mod closure;
pub mod element;
pub mod finite;
pub mod free_product;
pub mod hom;
pub mod presentation;
pub mod rs;
pub mod snf;
pub mod todd_coxeter;

pub use closure::{normal_closure, normal_closure_finite, subgroup_closure};
pub use element::{Group, GroupElement};
pub use finite::FiniteGroup;
pub use free_product::{FreeProduct, FreeProductWord, Syllable};
pub use hom::Homomorphism;
pub use presentation::{Letter, Presentation, Word};
pub use rs::{reidemeister_schreier, KernelPresentation};
pub use snf::{abelian_invariants, invariants_of_matrix, smith_normal_form, AbelianInvariants, RelationLattice};
pub use todd_coxeter::{todd_coxeter, CosetTable};

/// Group structure on a carrier of elements.
pub trait GroupOps {
    type Elem: Clone + Eq + Send + Sync + Debug;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn is_identity(&self, a: &Self::Elem) -> bool {
        *a == self.identity()
    }

    /// `a b a^-1 b^-1`
    fn commutator(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let ab = self.mul(a, b);
        let ia = self.inv(a);
        let ib = self.inv(b);
        self.mul(&self.mul(&ab, &ia), &ib)
    }

    fn product<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.identity(), |acc, x| self.mul(&acc, x))
    }
}

use std::fmt;
use std::sync::Arc;

use super::{FiniteGroup, FreeProduct, FreeProductWord};
use crate::error::{Error, Result};

/// Handle to a computation-backed group. Two handles are the same group only
/// if they point at the same allocation.
#[derive(Clone, Debug)]
pub enum Group {
    Finite(Arc<FiniteGroup>),
    FreeProduct(Arc<FreeProduct>),
}

impl Group {
    pub fn same(&self, other: &Group) -> bool {
        match (self, other) {
            (Group::Finite(a), Group::Finite(b)) => Arc::ptr_eq(a, b),
            (Group::FreeProduct(a), Group::FreeProduct(b)) => Arc::ptr_eq(a, b),
            _ => false,
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            Group::Finite(g) => GroupElement::Finite { group: g.clone(), index: 0 },
            Group::FreeProduct(p) => GroupElement::Word { product: p.clone(), word: FreeProductWord::identity() },
        }
    }
}

/// An element tagged with the group it lives in.
#[derive(Clone)]
pub enum GroupElement {
    Finite { group: Arc<FiniteGroup>, index: u32 },
    Word { product: Arc<FreeProduct>, word: FreeProductWord },
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Finite { group, index } => write!(f, "{}[{}]", group.name(), group.label(*index as usize)),
            GroupElement::Word { product, word } => write!(f, "<{}>", product.format(word)),
        }
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (GroupElement::Finite { group: g, index: a }, GroupElement::Finite { group: h, index: b }) => {
                Arc::ptr_eq(g, h) && a == b
            }
            (GroupElement::Word { product: p, word: a }, GroupElement::Word { product: q, word: b }) => {
                Arc::ptr_eq(p, q) && a == b
            }
            _ => false,
        }
    }
}

impl Eq for GroupElement {}

impl GroupElement {
    pub fn group(&self) -> Group {
        match self {
            GroupElement::Finite { group, .. } => Group::Finite(group.clone()),
            GroupElement::Word { product, .. } => Group::FreeProduct(product.clone()),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Finite { index, .. } => *index == 0,
            GroupElement::Word { word, .. } => word.is_empty(),
        }
    }

    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement> {
        match (self, other) {
            (GroupElement::Finite { group: g, index: a }, GroupElement::Finite { group: h, index: b })
                if Arc::ptr_eq(g, h) =>
            {
                Ok(GroupElement::Finite { group: g.clone(), index: g.mul(*a as usize, *b as usize) })
            }
            (GroupElement::Word { product: p, word: a }, GroupElement::Word { product: q, word: b })
                if Arc::ptr_eq(p, q) =>
            {
                Ok(GroupElement::Word { product: p.clone(), word: p.mul(a, b) })
            }
            _ => Err(Error::HandleMismatch(format!("{self:?} * {other:?}"))),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        match self {
            GroupElement::Finite { group, index } => {
                GroupElement::Finite { group: group.clone(), index: group.inv(*index as usize) }
            }
            GroupElement::Word { product, word } => {
                GroupElement::Word { product: product.clone(), word: product.inverse(word) }
            }
        }
    }

    /// `[a,b] = a·b·a⁻¹·b⁻¹`
    pub fn commutator(&self, other: &GroupElement) -> Result<GroupElement> {
        self.mul(other)?.mul(&self.inverse())?.mul(&other.inverse())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_handle_mismatch() {
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let other = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let a = GroupElement::Finite { group: s3.clone(), index: 1 };
        let b = GroupElement::Finite { group: s3.clone(), index: 3 };
        let e = Group::Finite(s3.clone()).identity();
        assert!(e.commutator(&b).unwrap().is_identity());
        let ab = a.commutator(&b).unwrap();
        let ba = b.commutator(&a).unwrap();
        assert!(ab.mul(&ba).unwrap().is_identity());
        let foreign = GroupElement::Finite { group: other, index: 1 };
        assert!(matches!(a.mul(&foreign), Err(Error::HandleMismatch(_))));

        let fp = Arc::new(FreeProduct::power(Arc::new(FiniteGroup::cyclic(2).unwrap()), 2));
        let x = GroupElement::Word { product: fp.clone(), word: fp.syllable(0, 1).unwrap() };
        let y = GroupElement::Word { product: fp.clone(), word: fp.syllable(1, 1).unwrap() };
        assert!(x.mul(&x).unwrap().is_identity());
        match x.commutator(&y).unwrap() {
            GroupElement::Word { word, .. } => assert_eq!(word.len(), 4),
            _ => unreachable!(),
        }
        assert!(x.mul(&a).is_err());
    }
}

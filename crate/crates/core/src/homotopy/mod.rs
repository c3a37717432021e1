//! Homotopy groups of small models.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use serde::Serialize;
use serde_json::json;

use crate::config::Bounds;
use crate::error::{Error, Result};
use crate::fp_group::{abelian_invariants, normal_closure_finite, AbelianInvariants, FiniteGroup, GroupOps};
use crate::simplicial::moore::moore_elements;
use crate::simplicial::{Level, SimplicialGroup};

pub mod pi2;
pub mod tensor;

pub use pi2::{carlsson_pi2, nh2_quotient, Pi2Data};
pub use tensor::{bilinear_invariants, j2, tensor_square, TensorSquare};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Enumeration,
    RsSnf,
    ToddCoxeter,
    UndecidedAtBound,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Enumeration => "enumeration",
            Method::RsSnf => "rs_snf",
            Method::ToddCoxeter => "todd_coxeter",
            Method::UndecidedAtBound => "undecided_at_bound",
        }
    }
}

/// A computed homotopy group. `invariants` is `None` when the group is not
/// abelian; `order` is `None` when it is infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyResult {
    pub degree: usize,
    pub invariants: Option<AbelianInvariants>,
    pub order: Option<u128>,
    pub method: Method,
    pub bound: Option<usize>,
    pub stable: Option<bool>,
}

impl HomotopyResult {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "schema": 1,
            "degree": self.degree,
            "invariants": self.invariants.as_ref().map(|i| i.to_list()),
            "order": self.order.map(|o| o.to_string()),
            "method": self.method.as_str(),
            "bound": self.bound,
            "stable": self.stable,
        })
    }

    pub fn is_undecided(&self) -> bool {
        self.method == Method::UndecidedAtBound
    }
}

impl fmt::Display for HomotopyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pi_{} = ", self.degree)?;
        match (&self.invariants, self.order) {
            (Some(inv), _) => write!(f, "{inv}")?,
            (None, Some(o)) => write!(f, "group of order {o}")?,
            (None, None) => write!(f, "infinite group")?,
        }
        write!(f, " [{}", self.method.as_str())?;
        if let Some(b) = self.bound {
            write!(f, ", bound {b}")?;
        }
        match self.stable {
            Some(true) => write!(f, ", stable")?,
            Some(false) => write!(f, ", not stable")?,
            None => {}
        }
        write!(f, "]")
    }
}

/// `K / B` for a finite subgroup `K` and a subgroup `B ⊂ K` normal in `K`.
pub fn quotient<G: GroupOps>(group: &G, k: &[G::Elem], b: &HashSet<G::Elem>, bound: usize) -> Result<FiniteGroup>
where
    G::Elem: Hash,
{
    let kset: HashSet<&G::Elem> = k.iter().collect();
    if !b.iter().all(|x| kset.contains(x)) {
        return Err(Error::Invalid("subgroup is not contained in the kernel".into()));
    }
    if k.len() % b.len().max(1) != 0 {
        return Err(Error::Invalid("subgroup order does not divide the kernel order".into()));
    }
    let index = k.len() / b.len().max(1);
    if index > bound {
        return Err(Error::resource("quotient order", bound as u128));
    }
    for x in k {
        let xi = group.inv(x);
        for y in b {
            if !b.contains(&group.mul(&group.mul(x, y), &xi)) {
                return Err(Error::Invalid("image is not normal in the kernel".into()));
            }
        }
    }
    let mut coset: HashMap<G::Elem, usize> = HashMap::new();
    let mut reps = Vec::new();
    let e = group.identity();
    for x in std::iter::once(&e).chain(k.iter()) {
        if coset.contains_key(x) {
            continue;
        }
        let id = reps.len();
        for y in b {
            coset.insert(group.mul(x, y), id);
        }
        coset.insert(x.clone(), id);
        reps.push(x.clone());
    }
    let rows: Vec<Vec<u32>> = reps
        .iter()
        .map(|x| reps.iter().map(|y| coset[&group.mul(x, y)] as u32).collect())
        .collect();
    FiniteGroup::from_table("quotient", rows, None)
}

fn finite_result(degree: usize, q: &FiniteGroup, method: Method) -> HomotopyResult {
    let invariants = q.is_abelian().then(|| abelian_invariants(&q.presentation("g").0).expect("small integers"));
    HomotopyResult { degree, invariants, order: Some(q.order() as u128), method, bound: None, stable: None }
}

/// `π_n = Ker ∂_n / Im ∂_{n+1}` on the Moore complex, by enumeration.
pub fn homotopy_finite<M: SimplicialGroup + ?Sized>(model: &M, n: usize, bounds: &Bounds) -> Result<HomotopyResult> {
    model.check_level(n + 1)?;
    let kernel: Vec<M::Elem> = if n == 0 {
        model.elements(0)?
    } else {
        moore_elements(model, n)?.into_iter().filter(|x| model.is_identity(n - 1, &model.face(n, n, x))).collect()
    };
    let image: HashSet<M::Elem> =
        moore_elements(model, n + 1)?.iter().map(|x| model.face(n + 1, n + 1, x)).collect();
    let q = quotient(&Level { model, n }, &kernel, &image, bounds.max_elements)?;
    Ok(finite_result(n, &q, Method::Enumeration))
}

/// `π_1` of the smash model: `π` modulo the normal closure of its commutators.
pub fn carlsson_pi1(pi: &Arc<FiniteGroup>, bounds: &Bounds) -> Result<HomotopyResult> {
    if pi.order() > 64 {
        return Err(Error::resource("group order for pi_1 of the smash model", 64u128));
    }
    let q = pi.order();
    let comms: Vec<u32> = (0..q).flat_map(|g| (0..q).map(move |h| (g, h))).map(|(g, h)| pi.commutator(g, h)).collect();
    let closure: HashSet<u32> = normal_closure_finite(&comms, pi, bounds.max_elements)?.into_iter().collect();
    let all: Vec<u32> = (0..q as u32).collect();
    let quo = quotient(pi.as_ref(), &all, &closure, bounds.max_elements)?;
    Ok(finite_result(1, &quo, Method::Enumeration))
}

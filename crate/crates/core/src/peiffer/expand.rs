//! Symbolic expansion of `F_{α,β}` as a product of commutators `[s_A u, s_B w]`
//! with `u, w ∈ {x, y}`.
//!
//! `p_j` appends `s_j d_j(v)^{-1}`; `d_j` is pushed through each degeneracy
//! string, and a commutator with an argument hit by `d_k`, `k` below the
//! argument's dimension, is the identity and is dropped.

use std::fmt;

use serde_json::json;

use crate::error::{Error, Result};
use crate::simplex_maps::{face_through, gamma_star, FaceThrough, PeifferPair, SurjTuple};
use crate::simplicial::{apply_degeneracies, SimplicialGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Arg {
    X,
    Y,
}

/// `s_ops` applied to an argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Side {
    pub ops: SurjTuple,
    pub arg: Arg,
}

impl Side {
    fn level(&self) -> usize {
        self.ops.source_dim()
    }

    fn face(&self, j: usize) -> Result<Option<Side>> {
        match face_through(j, &self.ops)? {
            FaceThrough::Cancel(ops) => Ok(Some(Side { ops, arg: self.arg })),
            FaceThrough::Through(_, k) if k < self.level() => Ok(None),
            FaceThrough::Through(..) => Err(Error::Unsupported(format!(
                "expansion meets the boundary face d_{k} of an argument",
                k = self.level()
            ))),
        }
    }

    fn text(&self, latex: bool) -> String {
        let sep = if latex { "" } else { " " };
        let mut parts: Vec<String> = self.ops.indices().iter().map(|i| format!("s_{i}")).collect();
        let name = match self.arg {
            Arg::X => "x",
            Arg::Y => "y",
        };
        parts.push(format!("{name}_{}", self.level()));
        parts.join(sep)
    }

    fn to_json(self) -> serde_json::Value {
        json!({
            "ops": self.ops.indices(),
            "arg": match self.arg { Arg::X => "x", Arg::Y => "y" },
            "level": self.level(),
        })
    }
}

/// `[s_A u, s_B w]`
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymTerm {
    pub left: Side,
    pub right: Side,
}

impl SymTerm {
    pub fn text(&self) -> String {
        format!("[{}, {}]", self.left.text(false), self.right.text(false))
    }

    pub fn latex(&self) -> String {
        format!("[{}, {}]", self.left.text(true), self.right.text(true))
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({ "left": self.left.to_json(), "right": self.right.to_json() })
    }
}

impl fmt::Display for SymTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text())
    }
}

/// Expansion of `F_{α,β}(x, y)`.
pub fn expand(pair: &PeifferPair) -> Result<Vec<SymTerm>> {
    let n = pair.dim();
    let mut terms = vec![SymTerm {
        left: Side { ops: pair.alpha, arg: Arg::X },
        right: Side { ops: pair.beta, arg: Arg::Y },
    }];
    for j in 0..n {
        let mut faced = Vec::new();
        for t in &terms {
            if let (Some(l), Some(r)) = (t.left.face(j)?, t.right.face(j)?) {
                faced.push(SymTerm { left: l, right: r });
            }
        }
        let sj = SurjTuple::single(n, j)?;
        for t in faced.iter().rev() {
            let lift = |s: &Side| -> Result<Side> { Ok(Side { ops: gamma_star(&sj, &s.ops)?, arg: s.arg }) };
            // [a, b]^{-1} = [b, a]
            terms.push(SymTerm { left: lift(&t.right)?, right: lift(&t.left)? });
        }
    }
    Ok(terms)
}

pub fn format_text(pair: &PeifferPair, terms: &[SymTerm]) -> String {
    let body: Vec<String> = terms.iter().map(|t| t.text()).collect();
    format!(
        "{}(x_{}, y_{}) = {}",
        pair,
        pair.alpha.source_dim(),
        pair.beta.source_dim(),
        body.join(" ")
    )
}

pub fn format_latex(pair: &PeifferPair, terms: &[SymTerm]) -> String {
    let label = |t: &SurjTuple| {
        let idx: Vec<String> = t.indices().iter().map(|i| i.to_string()).collect();
        format!("({})", idx.join(","))
    };
    let body: Vec<String> = terms.iter().map(|t| t.latex()).collect();
    format!(
        "F_{{{}{}}}(x_{}, y_{}) = {}",
        label(&pair.alpha),
        label(&pair.beta),
        pair.alpha.source_dim(),
        pair.beta.source_dim(),
        body.join("{~}")
    )
}

pub fn to_json(pair: &PeifferPair, terms: &[SymTerm]) -> serde_json::Value {
    json!({
        "alpha": pair.alpha.indices(),
        "beta": pair.beta.indices(),
        "label": pair.to_string(),
        "terms": terms.iter().map(|t| t.to_json()).collect::<Vec<_>>(),
    })
}

/// Evaluates an expansion on concrete arguments.
pub fn evaluate<M: SimplicialGroup + ?Sized>(
    model: &M,
    n: usize,
    terms: &[SymTerm],
    x: &M::Elem,
    y: &M::Elem,
) -> M::Elem {
    let side = |s: &Side| {
        let arg = match s.arg {
            Arg::X => x,
            Arg::Y => y,
        };
        apply_degeneracies(model, &s.ops, arg)
    };
    terms
        .iter()
        .fold(model.identity(n), |acc, t| model.mul(n, &acc, &model.commutator(n, &side(&t.left), &side(&t.right))))
}

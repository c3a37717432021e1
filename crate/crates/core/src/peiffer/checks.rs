use std::collections::HashSet;

use serde::Serialize;
use serde_json::json;

use super::{generator_values, peiffer_f, peiffer_generators, ArgumentSource, PeifferGenerator};
use crate::config::Bounds;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fp_group::closure::normal_closure;
use crate::simplex_maps::{PeifferPair, SurjTuple};
use crate::simplicial::moore::{boundary, check_moore, degenerate_subgroup};
use crate::simplicial::{Level, SimplicialGroup};

#[derive(Clone, Debug, Serialize)]
pub struct TheoremAReport {
    pub model: String,
    pub n: usize,
    pub generators: usize,
    pub moore_order: usize,
    pub degenerate_order: usize,
    pub normal_closure_order: usize,
    /// `|NG_n ∩ D_n|`
    pub moore_cap_degenerate: usize,
    /// `|N_n ∩ D_n|`
    pub peiffer_cap_degenerate: usize,
    pub equal: bool,
    /// `∂_n(N_n ∩ D_n) = ∂_n(NG_n ∩ D_n)`
    pub boundary_equal: bool,
    /// `∂_2 NG_2 = ∂_2 N_2`, reported when `n = 2` and `G_2 = D_2`.
    pub level_two_boundary: Option<bool>,
}

/// Both sides of `NG_n ∩ D_n = N_n ∩ D_n` as element sets.
pub fn theorem_a_check<M: SimplicialGroup + ?Sized>(
    model: &M,
    n: usize,
    bounds: &Bounds,
    exec: Exec,
) -> Result<TheoremAReport> {
    model.check_level(n)?;
    if n < 2 {
        return Err(Error::Invalid("the pairings start in dimension 2".into()));
    }
    let gens = peiffer_generators(model, n, &ArgumentSource::Exhaustive, exec)?;
    let id = model.identity(n);
    let values = generator_values(&gens, &id);
    let level = Level { model, n };
    let ambient = model.level_generators(n);
    let nn: HashSet<M::Elem> = normal_closure(&level, &values, &ambient, bounds.max_elements)?;
    let ng: HashSet<M::Elem> = model.moore_level(n)?.into_iter().collect();
    let d: HashSet<M::Elem> = degenerate_subgroup(model, n, bounds.max_elements)?.into_iter().collect();
    let ng_d: HashSet<M::Elem> = ng.intersection(&d).cloned().collect();
    let nn_d: HashSet<M::Elem> = nn.intersection(&d).cloned().collect();
    let image = |s: &HashSet<M::Elem>| -> Result<HashSet<M::Elem>> { s.iter().map(|x| boundary(model, n, x)).collect() };
    let boundary_equal = image(&ng_d)? == image(&nn_d)?;
    let level_two_boundary = if n == 2 && model.level_order(2) == Some(d.len() as u128) {
        Some(image(&ng)? == image(&nn)?)
    } else {
        None
    };
    Ok(TheoremAReport {
        model: model.name(),
        n,
        generators: gens.len(),
        moore_order: ng.len(),
        degenerate_order: d.len(),
        normal_closure_order: nn.len(),
        moore_cap_degenerate: ng_d.len(),
        peiffer_cap_degenerate: nn_d.len(),
        equal: ng_d == nn_d,
        boundary_equal,
        level_two_boundary,
    })
}

#[derive(Clone, Debug)]
pub struct CrossedComplexReport<E> {
    pub model: String,
    pub nmax: usize,
    /// Every pairing value examined is the identity.
    pub all_trivial: bool,
    pub witness: Option<PeifferGenerator<E>>,
    pub values_examined: usize,
    /// `NG_n ∩ D_n = 1` for each `n` in `2..=nmax`, when the levels are finite.
    pub moore_cap_degenerate_trivial: Vec<(usize, Option<bool>)>,
    /// The direct check agrees with the pairings wherever it was possible.
    pub agree: bool,
}

impl<E> CrossedComplexReport<E> {
    pub fn to_json<M: SimplicialGroup<Elem = E> + ?Sized>(&self, model: &M) -> serde_json::Value {
        json!({
            "model": self.model,
            "nmax": self.nmax,
            "crossed_complex": self.all_trivial,
            "values_examined": self.values_examined,
            "witness": self.witness.as_ref().map(|w| w.to_json(model)),
            "moore_cap_degenerate_trivial": self.moore_cap_degenerate_trivial.iter()
                .map(|(n, t)| json!({ "n": n, "trivial": t })).collect::<Vec<_>>(),
            "agree": self.agree,
        })
    }
}

/// Whether all pairings vanish in dimensions `2..=nmax`.
pub fn crossed_complex_check<M: SimplicialGroup + ?Sized>(
    model: &M,
    nmax: usize,
    source: &ArgumentSource<M::Elem>,
    bounds: &Bounds,
    exec: Exec,
) -> Result<CrossedComplexReport<M::Elem>> {
    model.check_level(nmax)?;
    let mut report = CrossedComplexReport {
        model: model.name(),
        nmax,
        all_trivial: true,
        witness: None,
        values_examined: 0,
        moore_cap_degenerate_trivial: Vec::new(),
        agree: true,
    };
    for n in 2..=nmax {
        let gens = peiffer_generators(model, n, source, exec)?;
        report.values_examined += gens.len();
        let id = model.identity(n);
        let level_trivial = gens.iter().all(|g| g.value == id);
        if !level_trivial && report.witness.is_none() {
            report.witness = gens.into_iter().find(|g| g.value != id);
        }
        report.all_trivial &= level_trivial;
        let direct = match (model.moore_level(n), degenerate_subgroup(model, n, bounds.max_elements)) {
            (Ok(ng), Ok(d)) => {
                let d: HashSet<M::Elem> = d.into_iter().collect();
                Some(ng.iter().all(|x| *x == id || !d.contains(x)))
            }
            _ => None,
        };
        if let Some(t) = direct {
            if matches!(source, ArgumentSource::Exhaustive) && t != level_trivial {
                report.agree = false;
            }
        }
        report.moore_cap_degenerate_trivial.push((n, direct));
    }
    Ok(report)
}

/// `η(x) = F_{(0)(1)}(x, x)` one dimension up, for a Moore cycle `x ∈ NG_n`.
pub fn eta<M: SimplicialGroup + ?Sized>(model: &M, n: usize, x: &M::Elem) -> Result<PeifferGenerator<M::Elem>> {
    if n == 0 {
        return Err(Error::Invalid("η needs n >= 1: there are no pairings in dimension 1".into()));
    }
    model.check_level(n + 1)?;
    check_moore(model, n, x)?;
    if !model.is_identity(n - 1, &boundary(model, n, x)?) {
        return Err(Error::Invalid(format!("element of NG_{n} is not a cycle")));
    }
    let pair = PeifferPair::new(SurjTuple::single(n + 1, 0)?, SurjTuple::single(n + 1, 1)?)?;
    let g = peiffer_f(model, &pair, x, x)?;
    debug_assert!(model.is_identity(n, &model.face(n + 1, n + 1, &g.value)));
    Ok(g)
}

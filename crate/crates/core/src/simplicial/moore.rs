use std::collections::{HashSet, VecDeque};

use super::SimplicialGroup;
use crate::error::{Error, Result};

/// `x ∈ NG_n`: every face `d_i`, `i < n`, is trivial.
pub fn is_moore<M: SimplicialGroup + ?Sized>(model: &M, n: usize, x: &M::Elem) -> bool {
    n == 0 || (0..n).all(|i| model.is_identity(n - 1, &model.face(n, i, x)))
}

/// First face `d_i`, `i < n`, that is nontrivial on `x`.
pub fn moore_witness<M: SimplicialGroup + ?Sized>(model: &M, n: usize, x: &M::Elem) -> Option<usize> {
    if n == 0 {
        return None;
    }
    (0..n).find(|&i| !model.is_identity(n - 1, &model.face(n, i, x)))
}

pub fn check_moore<M: SimplicialGroup + ?Sized>(model: &M, n: usize, x: &M::Elem) -> Result<()> {
    match moore_witness(model, n, x) {
        Some(face) => Err(Error::NotInMoore { level: n, face }),
        None => Ok(()),
    }
}

/// All of `NG_n` for a finite level.
pub fn moore_elements<M: SimplicialGroup + ?Sized>(model: &M, n: usize) -> Result<Vec<M::Elem>> {
    model.check_level(n)?;
    model.moore_level(n)
}

/// `∂_n x = d_n x` for `x ∈ NG_n`.
pub fn boundary<M: SimplicialGroup + ?Sized>(model: &M, n: usize, x: &M::Elem) -> Result<M::Elem> {
    model.check_level(n)?;
    if n == 0 {
        return Err(Error::Invalid("no boundary out of level 0".into()));
    }
    check_moore(model, n, x)?;
    Ok(model.face(n, n, x))
}

/// Generators `s_i(g)` of `D_n`, `g` running over level generators of `G_{n-1}`.
pub fn degenerate_generators<M: SimplicialGroup + ?Sized>(model: &M, n: usize) -> Vec<M::Elem> {
    if n == 0 {
        return Vec::new();
    }
    let gens = model.level_generators(n - 1);
    let mut out = Vec::new();
    for i in 0..n {
        for g in &gens {
            let x = model.degeneracy(n - 1, i, g);
            if !model.is_identity(n, &x) && !out.contains(&x) {
                out.push(x);
            }
        }
    }
    out
}

/// `D_n` as an element set, by closure of the degenerate generators.
pub fn degenerate_subgroup<M: SimplicialGroup + ?Sized>(model: &M, n: usize, bound: usize) -> Result<Vec<M::Elem>> {
    model.check_level(n)?;
    let gens = degenerate_generators(model, n);
    let mut seen: HashSet<M::Elem> = HashSet::new();
    let id = model.identity(n);
    seen.insert(id.clone());
    let mut order = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = model.mul(n, &x, g);
            if seen.insert(y.clone()) {
                if seen.len() > bound {
                    return Err(Error::resource(format!("degenerate subgroup D_{n}"), bound as u128));
                }
                order.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(order)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::config::Bounds;
    use crate::fp_group::FiniteGroup;
    use crate::simplicial::{ConstantModel, PointwiseModel};

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::symmetric(3).unwrap())
    }

    #[test]
    fn constant_model_has_trivial_moore_complex() {
        let m = ConstantModel::new(Arc::new(FiniteGroup::cyclic(2).unwrap()), 3);
        assert_eq!(moore_elements(&m, 1).unwrap(), vec![0]);
        assert_eq!(degenerate_subgroup(&m, 1, 100).unwrap().len(), 2);
    }

    #[test]
    fn cech_nerve_moore_levels() {
        let m = PointwiseModel::cech(s3(), 3, Bounds::default()).unwrap();
        let ng1 = moore_elements(&m, 1).unwrap();
        assert_eq!(ng1.len(), 6);
        // NG_n of π^{n+1} is trivial from n = 2 on: d_0 sees coordinates 1..n, d_1 sees coordinate 0
        assert_eq!(moore_elements(&m, 2).unwrap().len(), 1);
        assert_eq!(moore_elements(&m, 3).unwrap().len(), 1);
        let brute = m.elements(2).unwrap().into_iter().filter(|x| is_moore(&m, 2, x)).count();
        assert_eq!(brute, 1);
        assert_eq!(degenerate_subgroup(&m, 2, 1000).unwrap().len(), 216);
        for x in &ng1 {
            assert!(is_moore(&m, 0, &boundary(&m, 1, x).unwrap()));
        }
    }

    #[test]
    fn boundary_lands_in_moore_complex() {
        let m = PointwiseModel::new(s3(), 2, 3, Bounds::default()).unwrap();
        for n in 1..=3 {
            for x in moore_elements(&m, n).unwrap() {
                let b = boundary(&m, n, &x).unwrap();
                assert!(is_moore(&m, n - 1, &b));
            }
        }
        let bad = m.level_generators(2)[0].clone();
        assert!(matches!(boundary(&m, 2, &bad), Err(Error::NotInMoore { .. })));
    }

    #[test]
    fn edges_degenerate_part_of_moore_level_two() {
        let m = PointwiseModel::new(s3(), 1, 2, Bounds::default()).unwrap();
        let d2: HashSet<Vec<u32>> = degenerate_subgroup(&m, 2, 100_000).unwrap().into_iter().collect();
        let ng2 = moore_elements(&m, 2).unwrap();
        assert_eq!(ng2.len(), 6);
        let both = ng2.iter().filter(|x| d2.contains(*x)).count();
        // the commutator subgroup A_3
        assert_eq!(both, 3);
    }
}

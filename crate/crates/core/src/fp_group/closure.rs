//! Subgroup and normal-closure enumeration over any [`GroupOps`].

use std::collections::{HashSet, VecDeque};
use std::hash::Hash;

use super::{FiniteGroup, GroupOps};
use crate::error::{Error, Result};

/// Element set of the subgroup generated by `gens` (finite groups only: the
/// search multiplies by generators and never by their inverses).
pub fn subgroup_closure<G: GroupOps>(group: &G, gens: &[G::Elem], bound: usize) -> Result<HashSet<G::Elem>>
where
    G::Elem: Hash,
{
    let mut set = HashSet::new();
    set.insert(group.identity());
    extend_closure(group, &mut set, gens, bound)?;
    Ok(set)
}

fn extend_closure<G: GroupOps>(group: &G, set: &mut HashSet<G::Elem>, gens: &[G::Elem], bound: usize) -> Result<()>
where
    G::Elem: Hash,
{
    let mut queue: VecDeque<G::Elem> = set.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = group.mul(&x, g);
            if !set.contains(&y) {
                if set.len() >= bound {
                    return Err(Error::resource("subgroup closure", bound as u128));
                }
                set.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(())
}

/// Smallest normal subgroup containing `gens`, where `ambient_gens` generate
/// the whole group.
pub fn normal_closure<G: GroupOps>(
    group: &G,
    gens: &[G::Elem],
    ambient_gens: &[G::Elem],
    bound: usize,
) -> Result<HashSet<G::Elem>>
where
    G::Elem: Hash,
{
    let id = group.identity();
    let mut current: Vec<G::Elem> = Vec::new();
    let mut set = HashSet::new();
    set.insert(id.clone());
    for g in gens {
        if !set.contains(g) {
            current.push(g.clone());
            extend_closure(group, &mut set, &current, bound)?;
        }
    }
    let mut conjugators: Vec<G::Elem> = Vec::new();
    for a in ambient_gens {
        conjugators.push(a.clone());
        conjugators.push(group.inv(a));
    }
    let mut i = 0;
    while i < current.len() {
        let r = current[i].clone();
        for a in &conjugators {
            let c = group.mul(&group.mul(a, &r), &group.inv(a));
            if !set.contains(&c) {
                current.push(c);
                extend_closure(group, &mut set, &current, bound)?;
            }
        }
        i += 1;
    }
    Ok(set)
}

/// Normal closure in a table-backed group, bounded by `bound` (default 10^5
/// through [`crate::config::Bounds`]).
pub fn normal_closure_finite(gens: &[u32], ambient: &FiniteGroup, bound: usize) -> Result<Vec<u32>> {
    if ambient.order() > bound {
        return Err(Error::resource("ambient group order", bound as u128));
    }
    let ambient_gens = ambient.generators();
    let set = normal_closure(ambient, gens, &ambient_gens, bound)?;
    let mut v: Vec<u32> = set.into_iter().collect();
    v.sort_unstable();
    Ok(v)
}

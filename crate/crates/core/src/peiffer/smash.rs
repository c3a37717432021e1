//! Pairings in the smash model `π ∧̄ S¹` at level 2.

use super::peiffer_f_unchecked;
use crate::fp_group::FreeProductWord;
use crate::simplex_maps::{PeifferPair, SurjTuple};
use crate::simplicial::{CarlssonModel, SimplicialGroup};

fn pair01() -> PeifferPair {
    PeifferPair::new(SurjTuple::single(2, 0).unwrap(), SurjTuple::single(2, 1).unwrap()).unwrap()
}

/// `F_{(0)(1)}(g∧σ, h∧σ)` computed through the projections.
pub fn f01(model: &CarlssonModel, g: u32, h: u32) -> FreeProductWord {
    peiffer_f_unchecked(model, &pair01(), &model.smash(g, 0), &model.smash(h, 0)).value
}

/// `(g∧x_1)(h∧x_0)(g^{-1}∧x_1)(g h^{-1} g^{-1}∧x_0)`
pub fn f01_closed_form(model: &CarlssonModel, g: u32, h: u32) -> FreeProductWord {
    let pi = model.group();
    let gi = pi.inv(g as usize);
    let tail = pi.conjugate(g as usize, pi.inv(h as usize) as usize);
    model.product(2, &[model.smash(g, 1), model.smash(h, 0), model.smash(gi, 1), model.smash(tail, 0)])
}

/// `g ⊗̄ h`, read as `F_{(0)(1)}(h∧σ, g∧σ)`.
pub fn tensor_alias(model: &CarlssonModel, g: u32, h: u32) -> FreeProductWord {
    f01(model, h, g)
}

/// `[g∧x_0, (h∧x_0)(h^{-1}∧x_1)]`, the representative of `g ⊗̄ h` in `NH_2`.
pub fn tensor_bar(model: &CarlssonModel, g: u32, h: u32) -> FreeProductWord {
    let hi = model.group().inv(h as usize);
    let right = model.mul(2, &model.smash(h, 0), &model.smash(hi, 1));
    model.commutator(2, &model.smash(g, 0), &right)
}

/// `(lhs, rhs)` of `^{k∧x_1} F(g, h) = F(kg, h) F(kg, g h g^{-1})` before correction.
pub fn conjugation_uncorrected(model: &CarlssonModel, g: u32, h: u32, k: u32) -> (FreeProductWord, FreeProductWord) {
    let pi = model.group();
    let kg = pi.mul(k as usize, g as usize);
    let ghg = pi.conjugate(g as usize, h as usize);
    (conjugate_by_k_x1(model, g, h, k), model.mul(2, &f01(model, kg, h), &f01(model, kg, ghg)))
}

/// `(lhs, rhs)` of `^{k∧x_1} F(g, h) = F(kg, h) F(k, g h g^{-1})^{-1}`.
pub fn conjugation_corrected(model: &CarlssonModel, g: u32, h: u32, k: u32) -> (FreeProductWord, FreeProductWord) {
    let pi = model.group();
    let kg = pi.mul(k as usize, g as usize);
    let ghg = pi.conjugate(g as usize, h as usize);
    let rhs = model.mul(2, &f01(model, kg, h), &model.inv(2, &f01(model, k, ghg)));
    (conjugate_by_k_x1(model, g, h, k), rhs)
}

fn conjugate_by_k_x1(model: &CarlssonModel, g: u32, h: u32, k: u32) -> FreeProductWord {
    let c = model.smash(k, 1);
    model.product(2, &[c.clone(), f01(model, g, h), model.inv(2, &c)])
}

use std::sync::Arc;

use super::{random_index, SimplicialGroup};
use crate::error::Result;
use crate::fp_group::FiniteGroup;

/// `K(π, 0)`: every level is `π`, every face and degeneracy the identity.
#[derive(Clone, Debug)]
pub struct ConstantModel {
    pi: Arc<FiniteGroup>,
    max_dim: usize,
}

impl ConstantModel {
    pub fn new(pi: Arc<FiniteGroup>, max_dim: usize) -> Self {
        ConstantModel { pi, max_dim }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.pi
    }
}

impl SimplicialGroup for ConstantModel {
    type Elem = u32;

    fn name(&self) -> String {
        format!("constant:{}", self.pi.name())
    }

    fn max_dim(&self) -> usize {
        self.max_dim
    }

    fn identity(&self, _n: usize) -> u32 {
        0
    }

    fn mul(&self, _n: usize, a: &u32, b: &u32) -> u32 {
        self.pi.mul(*a as usize, *b as usize)
    }

    fn inv(&self, _n: usize, a: &u32) -> u32 {
        self.pi.inv(*a as usize)
    }

    fn face(&self, _n: usize, _i: usize, x: &u32) -> u32 {
        *x
    }

    fn degeneracy(&self, _n: usize, _i: usize, x: &u32) -> u32 {
        *x
    }

    fn level_order(&self, _n: usize) -> Option<u128> {
        Some(self.pi.order() as u128)
    }

    fn elements(&self, _n: usize) -> Result<Vec<u32>> {
        Ok((0..self.pi.order() as u32).collect())
    }

    fn level_generators(&self, _n: usize) -> Vec<u32> {
        self.pi.generators()
    }

    fn random_element(&self, _n: usize, rng: &mut dyn rand::RngCore) -> u32 {
        random_index(rng, self.pi.order()) as u32
    }

    fn format(&self, _n: usize, x: &u32) -> String {
        self.pi.label(*x as usize).to_string()
    }

    fn parse(&self, _n: usize, text: &str) -> Result<u32> {
        self.pi.parse_label(text)
    }

    fn moore_level(&self, n: usize) -> Result<Vec<u32>> {
        if n == 0 {
            self.elements(0)
        } else {
            Ok(vec![0])
        }
    }
}

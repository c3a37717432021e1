//! `π_2` of the smash model through Schreier coordinates on `NH_2`.

use std::collections::HashSet;
use std::sync::Arc;

use super::{HomotopyResult, Method};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fp_group::presentation::exponent_sums;
use crate::fp_group::{AbelianInvariants, FiniteGroup, FreeProductWord, KernelPresentation, RelationLattice};
use crate::peiffer::peiffer_f_unchecked;
use crate::peiffer::smash::f01;
use crate::simplex_maps::enumerate_p;
use crate::simplicial::carlsson::LevelPresentation;
use crate::simplicial::{CarlssonModel, SimplicialGroup};

/// Largest group order accepted by the pipeline.
pub const MAX_PI2_ORDER: usize = 8;

/// The fixed part of the computation: the model, `NH_2` in Schreier
/// coordinates and the transversal of `NH_2` in `H_2`.
pub struct Pi2Data {
    pub model: CarlssonModel,
    pub level: LevelPresentation,
    pub kernel: KernelPresentation,
    /// `F_{(0)(1)}(g∧σ, h∧σ)` for nontrivial `g, h`.
    pub generators: Vec<FreeProductWord>,
    transversal: Vec<FreeProductWord>,
}

impl Pi2Data {
    pub fn new(pi: Arc<FiniteGroup>) -> Result<Self> {
        if !pi.is_abelian() {
            return Err(Error::Unsupported(format!("pi_2 of the smash model needs an abelian group, {} is not", pi.name())));
        }
        if pi.order() > MAX_PI2_ORDER {
            return Err(Error::resource("group order for pi_2", MAX_PI2_ORDER as u128));
        }
        let model = CarlssonModel::new(pi.clone(), 3)?;
        let (level, kernel) = model.nh2()?;
        let q = pi.order() as u32;
        let generators = (1..q).flat_map(|g| (1..q).map(move |h| (g, h))).map(|(g, h)| f01(&model, g, h)).collect();
        let transversal = kernel.transversal.iter().map(|w| level.to_element(&model, w)).collect();
        let data = Pi2Data { model, level, kernel, generators, transversal };
        // ∂_2 vanishes on NH_2, so the cycles are all of NH_2
        for k in 0..data.kernel.num_generators() {
            let x = data.level.to_element(&data.model, &data.kernel.generator_word(k));
            if !data.model.face(2, 2, &x).is_empty() {
                return Err(Error::Unsupported("boundary is nontrivial on NH_2".into()));
            }
        }
        Ok(data)
    }

    pub fn ncols(&self) -> usize {
        self.kernel.num_generators()
    }

    /// Exponent sums of an element of `NH_2` in Schreier coordinates.
    pub fn coordinates(&self, x: &FreeProductWord) -> Result<Vec<i128>> {
        let w = self.kernel.rewrite(&self.level.to_word(x))?;
        Ok(exponent_sums(&w, self.ncols()).into_iter().map(i128::from).collect())
    }

    fn base_lattice(&self) -> Result<RelationLattice> {
        let mut lattice = RelationLattice::new(self.ncols());
        for r in self.kernel.presentation.relators() {
            let row: Vec<i128> = exponent_sums(r, self.ncols()).into_iter().map(i128::from).collect();
            lattice.add(&row)?;
        }
        Ok(lattice)
    }

    /// Elements of `NH_2` that are reduced products of exactly `len` generators, by length.
    fn arguments(&self, bound: usize) -> Vec<Vec<FreeProductWord>> {
        let m = &self.model;
        let letters: Vec<FreeProductWord> =
            self.generators.iter().flat_map(|g| [g.clone(), m.inv(2, g)]).collect();
        let mut seen: HashSet<FreeProductWord> = HashSet::from([FreeProductWord::identity()]);
        let mut layers = vec![vec![FreeProductWord::identity()]];
        for _ in 0..bound {
            let mut next = Vec::new();
            for x in layers.last().expect("nonempty") {
                for l in &letters {
                    let y = m.mul(2, x, l);
                    if seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            layers.push(next);
        }
        layers
    }

    /// `d_3` of the pairings on `N_3` whose `NH_2` arguments use at most `bound` generators.
    pub fn boundary_images(&self, bound: usize, exec: Exec) -> Result<Vec<FreeProductWord>> {
        let m = &self.model;
        let layers = self.arguments(bound);
        let q = m.group().order() as u32;
        let nh1: Vec<FreeProductWord> = (1..q).map(|g| m.smash(g, 0)).collect();
        let mut jobs: Vec<(usize, FreeProductWord, FreeProductWord)> = Vec::new();
        let pairs = enumerate_p(3)?;
        for (pi, p) in pairs.iter().enumerate() {
            let (da, db) = (p.alpha.source_dim(), p.beta.source_dim());
            let args = |dim: usize, len: usize| -> Vec<FreeProductWord> {
                match dim {
                    1 if len == 0 => nh1.clone(),
                    2 if len > 0 => layers.get(len).cloned().unwrap_or_default(),
                    _ => Vec::new(),
                }
            };
            for la in 0..=bound {
                for lb in 0..=bound - la {
                    for x in args(da, la) {
                        for y in args(db, lb) {
                            jobs.push((pi, x.clone(), y));
                        }
                    }
                }
            }
        }
        let images = exec.map(&jobs, |(pi, x, y)| {
            let v = peiffer_f_unchecked(m, &pairs[*pi], x, y).value;
            m.face(3, 3, &v)
        });
        let mut seen = HashSet::new();
        Ok(images.into_iter().filter(|w| !w.is_empty() && seen.insert(w.clone())).collect())
    }

    /// `NH_2` modulo the normal closure in `H_2` of `images`, abelianized.
    pub fn quotient(&self, images: &[FreeProductWord], exec: Exec) -> Result<AbelianInvariants> {
        let m = &self.model;
        let mut lattice = self.base_lattice()?;
        let rows = exec.flat_map(images, |w| {
            self.transversal
                .iter()
                .map(|t| self.coordinates(&m.product(2, &[t.clone(), w.clone(), m.inv(2, t)])))
                .collect::<Vec<_>>()
        });
        let mut seen = HashSet::new();
        for row in rows {
            let row = row?;
            if seen.insert(row.clone()) {
                lattice.add(&row)?;
            }
        }
        lattice.invariants()
    }

    /// Lattice of boundary relations at `bound`, in Schreier coordinates.
    pub fn relations(&self, bound: usize, exec: Exec) -> Result<RelationLattice> {
        let images = self.boundary_images(bound, exec)?;
        let m = &self.model;
        let mut lattice = self.base_lattice()?;
        let rows = exec.flat_map(&images, |w| {
            self.transversal
                .iter()
                .map(|t| self.coordinates(&m.product(2, &[t.clone(), w.clone(), m.inv(2, t)])))
                .collect::<Vec<_>>()
        });
        for row in rows {
            lattice.add(&row?)?;
        }
        Ok(lattice)
    }

    pub fn at_bound(&self, bound: usize, exec: Exec) -> Result<AbelianInvariants> {
        self.quotient(&self.boundary_images(bound, exec)?, exec)
    }
}

/// `NH_2` modulo the given boundary images, for an abelian `π`.
pub fn nh2_quotient(pi: Arc<FiniteGroup>, images: &[FreeProductWord]) -> Result<AbelianInvariants> {
    Pi2Data::new(pi)?.quotient(images, Exec::default())
}

/// `π_2` of the smash model at syllable bounds `bound` and `bound + 1`.
pub fn carlsson_pi2(pi: Arc<FiniteGroup>, bound: usize, exec: Exec) -> Result<HomotopyResult> {
    if bound == 0 {
        return Err(Error::Invalid("syllable bound must be at least 1".into()));
    }
    let data = Pi2Data::new(pi)?;
    let first = data.at_bound(bound, exec)?;
    let second = data.at_bound(bound + 1, exec)?;
    let stable = first == second;
    Ok(HomotopyResult {
        degree: 2,
        order: second.order(),
        invariants: Some(second),
        method: if stable { Method::RsSnf } else { Method::UndecidedAtBound },
        bound: Some(bound),
        stable: Some(stable),
    })
}

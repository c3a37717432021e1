use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{sample_level, SimplicialGroup};
use crate::error::Result;
use crate::exec::Exec;

/// Levels with at most this many elements are checked exhaustively.
pub const EXHAUSTIVE_LIMIT: u128 = 10_000;
const MAX_REPORTED: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub identity: &'static str,
    pub level: usize,
    pub i: usize,
    pub j: usize,
    pub witness: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub model: String,
    pub checks: u64,
    pub exhaustive_levels: Vec<usize>,
    pub violations: Vec<Violation>,
    pub violation_count: u64,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violation_count == 0
    }
}

fn check_element<M: SimplicialGroup + ?Sized>(model: &M, n: usize, x: &M::Elem) -> (u64, Vec<Violation>) {
    let top = model.max_dim();
    let mut checks = 0;
    let mut bad = Vec::new();
    let mut record = |identity, i, j, ok: bool| {
        checks += 1;
        if !ok {
            bad.push(Violation { identity, level: n, i, j, witness: model.format(n, x) });
        }
    };
    if n >= 2 {
        for j in 0..=n {
            for i in 0..j {
                let l = model.face(n - 1, i, &model.face(n, j, x));
                let r = model.face(n - 1, j - 1, &model.face(n, i, x));
                record("d_i d_j = d_{j-1} d_i (i<j)", i, j, l == r);
            }
        }
    }
    if n < top {
        for j in 0..=n {
            let s = model.degeneracy(n, j, x);
            record("d_j s_j = id", j, j, model.face(n + 1, j, &s) == *x);
            record("d_{j+1} s_j = id", j + 1, j, model.face(n + 1, j + 1, &s) == *x);
            if n >= 1 {
                for i in 0..j {
                    let r = model.degeneracy(n - 1, j - 1, &model.face(n, i, x));
                    record("d_i s_j = s_{j-1} d_i (i<j)", i, j, model.face(n + 1, i, &s) == r);
                }
                for i in j + 2..=n + 1 {
                    let r = model.degeneracy(n - 1, j, &model.face(n, i - 1, x));
                    record("d_i s_j = s_j d_{i-1} (i>j+1)", i, j, model.face(n + 1, i, &s) == r);
                }
            }
        }
    }
    if n + 2 <= top {
        for j in 0..=n {
            for i in 0..=j {
                let l = model.degeneracy(n + 1, i, &model.degeneracy(n, j, x));
                let r = model.degeneracy(n + 1, j + 1, &model.degeneracy(n, i, x));
                record("s_i s_j = s_{j+1} s_i (i<=j)", i, j, l == r);
            }
        }
    }
    (checks, bad)
}

/// Checks the simplicial identities on levels `0..=nmax`: exhaustively on
/// small finite levels, otherwise on generators and `samples` random elements.
pub fn validate<M: SimplicialGroup + ?Sized>(
    model: &M,
    nmax: usize,
    samples: usize,
    seed: u64,
    exec: Exec,
) -> Result<ValidationReport> {
    model.check_level(nmax)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ValidationReport { model: model.name(), ..Default::default() };
    for n in 0..=nmax {
        let (elems, exhaustive) = sample_level(model, n, samples, EXHAUSTIVE_LIMIT, &mut rng)?;
        if exhaustive {
            report.exhaustive_levels.push(n);
        }
        for (checks, bad) in exec.map(&elems, |x| check_element(model, n, x)) {
            report.checks += checks;
            report.violation_count += bad.len() as u64;
            for v in bad {
                if report.violations.len() < MAX_REPORTED {
                    report.violations.push(v);
                }
            }
        }
    }
    Ok(report)
}

/// A model whose face `d_index` at `level` is replaced by the trivial map.
#[derive(Clone, Debug)]
pub struct CorruptedFace<M> {
    pub inner: M,
    pub level: usize,
    pub index: usize,
}

impl<M: SimplicialGroup> SimplicialGroup for CorruptedFace<M> {
    type Elem = M::Elem;

    fn name(&self) -> String {
        format!("corrupted({})", self.inner.name())
    }
    fn max_dim(&self) -> usize {
        self.inner.max_dim()
    }
    fn identity(&self, n: usize) -> M::Elem {
        self.inner.identity(n)
    }
    fn mul(&self, n: usize, a: &M::Elem, b: &M::Elem) -> M::Elem {
        self.inner.mul(n, a, b)
    }
    fn inv(&self, n: usize, a: &M::Elem) -> M::Elem {
        self.inner.inv(n, a)
    }
    fn face(&self, n: usize, i: usize, x: &M::Elem) -> M::Elem {
        if n == self.level && i == self.index {
            self.inner.identity(n - 1)
        } else {
            self.inner.face(n, i, x)
        }
    }
    fn degeneracy(&self, n: usize, i: usize, x: &M::Elem) -> M::Elem {
        self.inner.degeneracy(n, i, x)
    }
    fn level_order(&self, n: usize) -> Option<u128> {
        self.inner.level_order(n)
    }
    fn elements(&self, n: usize) -> Result<Vec<M::Elem>> {
        self.inner.elements(n)
    }
    fn level_generators(&self, n: usize) -> Vec<M::Elem> {
        self.inner.level_generators(n)
    }
    fn random_element(&self, n: usize, rng: &mut dyn rand::RngCore) -> M::Elem {
        self.inner.random_element(n, rng)
    }
    fn format(&self, n: usize, x: &M::Elem) -> String {
        self.inner.format(n, x)
    }
    fn parse(&self, n: usize, text: &str) -> Result<M::Elem> {
        self.inner.parse(n, text)
    }
}

use std::collections::HashMap;
use std::sync::Arc;

use super::{random_index, SimplicialGroup};
use crate::config::Bounds;
use crate::error::{Error, Result};
use crate::fp_group::FiniteGroup;

/// `G_n = Map(Δ([k],[n]), π)` with pointwise multiplication; faces and
/// degeneracies act by precomposition. `k = 0` is the Čech nerve `π^{n+1}`.
#[derive(Clone, Debug)]
pub struct PointwiseModel {
    pi: Arc<FiniteGroup>,
    k: usize,
    max_dim: usize,
    bounds: Bounds,
    /// `coords[n]`: monotone maps `[k] -> [n]`, lexicographic.
    coords: Vec<Vec<Vec<u8>>>,
    /// `faces[n][i][c]`: coordinate of level `n` read by coordinate `c` of `d_i x`.
    faces: Vec<Vec<Vec<u32>>>,
    /// `degens[n][i][c]`: coordinate of level `n` read by coordinate `c` of `s_i x`.
    degens: Vec<Vec<Vec<u32>>>,
}

fn monotone_maps(k: usize, n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = vec![0u8; k + 1];
    fn rec(pos: usize, lo: u8, n: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in lo..=n {
            cur[pos] = v;
            rec(pos + 1, v, n, cur, out);
        }
    }
    rec(0, 0, n as u8, &mut cur, &mut out);
    out
}

impl PointwiseModel {
    pub fn new(pi: Arc<FiniteGroup>, k: usize, max_dim: usize, bounds: Bounds) -> Result<Self> {
        if max_dim > 12 || k > 3 {
            return Err(Error::resource("pointwise model size", 12u128));
        }
        let coords: Vec<Vec<Vec<u8>>> = (0..=max_dim + 1).map(|n| monotone_maps(k, n)).collect();
        let index: Vec<HashMap<&Vec<u8>, u32>> = coords
            .iter()
            .map(|cs| cs.iter().enumerate().map(|(i, c)| (c, i as u32)).collect())
            .collect();
        let mut faces = vec![Vec::new()];
        for n in 1..=max_dim {
            let per_i = (0..=n)
                .map(|i| {
                    coords[n - 1]
                        .iter()
                        .map(|phi| {
                            let img: Vec<u8> = phi.iter().map(|&p| if (p as usize) < i { p } else { p + 1 }).collect();
                            index[n][&img]
                        })
                        .collect()
                })
                .collect();
            faces.push(per_i);
        }
        let mut degens = Vec::new();
        for n in 0..=max_dim {
            let per_i = (0..=n)
                .map(|i| {
                    coords[n + 1]
                        .iter()
                        .map(|phi| {
                            let img: Vec<u8> = phi.iter().map(|&p| if (p as usize) <= i { p } else { p - 1 }).collect();
                            index[n][&img]
                        })
                        .collect()
                })
                .collect();
            degens.push(per_i);
        }
        Ok(PointwiseModel { pi, k, max_dim, bounds, coords, faces, degens })
    }

    pub fn cech(pi: Arc<FiniteGroup>, max_dim: usize, bounds: Bounds) -> Result<Self> {
        Self::new(pi, 0, max_dim, bounds)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.pi
    }

    pub fn width(&self, n: usize) -> usize {
        self.coords[n].len()
    }

    pub fn kind_name(&self) -> &'static str {
        match self.k {
            0 => "cech",
            1 => "edges",
            2 => "triangles",
            _ => "pointwise",
        }
    }

    /// Coordinates of level `n` outside the images of `d_0, ..., d_{n-1}`;
    /// `NG_n` is exactly the functions supported there.
    pub fn moore_support(&self, n: usize) -> Vec<usize> {
        let mut used = vec![false; self.width(n)];
        if n > 0 {
            for i in 0..n {
                for &c in &self.faces[n][i] {
                    used[c as usize] = true;
                }
            }
        }
        (0..self.width(n)).filter(|&c| !used[c]).collect()
    }

    fn all_supported_on(&self, n: usize, support: &[usize]) -> Result<Vec<Vec<u32>>> {
        let q = self.pi.order() as u128;
        let total = q.checked_pow(support.len() as u32).unwrap_or(u128::MAX);
        if total > self.bounds.max_elements as u128 {
            return Err(Error::resource(format!("elements of level {n}"), self.bounds.max_elements as u128));
        }
        let mut out = Vec::with_capacity(total as usize);
        let mut digits = vec![0u32; support.len()];
        loop {
            let mut x = vec![0u32; self.width(n)];
            for (d, &c) in digits.iter().zip(support) {
                x[c] = *d;
            }
            out.push(x);
            let mut pos = 0;
            loop {
                if pos == digits.len() {
                    return Ok(out);
                }
                digits[pos] += 1;
                if digits[pos] as u128 == q {
                    digits[pos] = 0;
                    pos += 1;
                } else {
                    break;
                }
            }
        }
    }
}

impl SimplicialGroup for PointwiseModel {
    type Elem = Vec<u32>;

    fn name(&self) -> String {
        format!("{}:{}", self.kind_name(), self.pi.name())
    }

    fn max_dim(&self) -> usize {
        self.max_dim
    }

    fn identity(&self, n: usize) -> Vec<u32> {
        vec![0; self.width(n)]
    }

    fn mul(&self, _n: usize, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.pi.mul(x as usize, y as usize)).collect()
    }

    fn inv(&self, _n: usize, a: &Vec<u32>) -> Vec<u32> {
        a.iter().map(|&x| self.pi.inv(x as usize)).collect()
    }

    fn face(&self, n: usize, i: usize, x: &Vec<u32>) -> Vec<u32> {
        self.faces[n][i].iter().map(|&c| x[c as usize]).collect()
    }

    fn degeneracy(&self, n: usize, i: usize, x: &Vec<u32>) -> Vec<u32> {
        self.degens[n][i].iter().map(|&c| x[c as usize]).collect()
    }

    fn level_order(&self, n: usize) -> Option<u128> {
        (self.pi.order() as u128).checked_pow(self.width(n) as u32)
    }

    fn elements(&self, n: usize) -> Result<Vec<Vec<u32>>> {
        let all: Vec<usize> = (0..self.width(n)).collect();
        self.all_supported_on(n, &all)
    }

    fn level_generators(&self, n: usize) -> Vec<Vec<u32>> {
        let gens = self.pi.generators();
        let mut out = Vec::new();
        for c in 0..self.width(n) {
            for &g in &gens {
                let mut x = self.identity(n);
                x[c] = g;
                out.push(x);
            }
        }
        out
    }

    fn random_element(&self, n: usize, rng: &mut dyn rand::RngCore) -> Vec<u32> {
        (0..self.width(n)).map(|_| random_index(rng, self.pi.order()) as u32).collect()
    }

    fn format(&self, _n: usize, x: &Vec<u32>) -> String {
        let labels: Vec<&str> = x.iter().map(|&v| self.pi.label(v as usize)).collect();
        format!("({})", labels.join(","))
    }

    fn parse(&self, n: usize, text: &str) -> Result<Vec<u32>> {
        let t = text.trim();
        let t = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(t);
        let parts: Vec<&str> = t.split([',', ' ']).map(str::trim).filter(|s| !s.is_empty()).collect();
        if parts.len() != self.width(n) {
            return Err(Error::Parse(format!(
                "level {n} of {} needs {} coordinates, got {}",
                self.name(),
                self.width(n),
                parts.len()
            )));
        }
        parts.iter().map(|p| self.pi.parse_label(p)).collect()
    }

    fn moore_level(&self, n: usize) -> Result<Vec<Vec<u32>>> {
        let support = self.moore_support(n);
        self.all_supported_on(n, &support)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::symmetric(3).unwrap())
    }

    #[test]
    fn cech_levels_are_powers() {
        let m = PointwiseModel::cech(s3(), 3, Bounds::default()).unwrap();
        assert_eq!(m.level_order(2), Some(216));
        assert_eq!(m.width(3), 4);
        // d_i deletes coordinate i, s_i repeats it
        let x = vec![1, 2, 3];
        assert_eq!(m.face(2, 1, &x), vec![1, 3]);
        assert_eq!(m.degeneracy(2, 1, &x), vec![1, 2, 2, 3]);
    }

    #[test]
    fn moore_support_sizes() {
        let cech = PointwiseModel::cech(s3(), 3, Bounds::default()).unwrap();
        let sizes: Vec<usize> = (0..=3).map(|n| cech.moore_support(n).len()).collect();
        assert_eq!(sizes, [1, 1, 0, 0]);
        let edges = PointwiseModel::new(s3(), 1, 4, Bounds::default()).unwrap();
        let sizes: Vec<usize> = (0..=4).map(|n| edges.moore_support(n).len()).collect();
        assert_eq!(sizes, [1, 2, 1, 0, 0]);
        let tri = PointwiseModel::new(s3(), 2, 4, Bounds::default()).unwrap();
        let sizes: Vec<usize> = (0..=4).map(|n| tri.moore_support(n).len()).collect();
        assert_eq!(sizes, [1, 3, 3, 1, 0]);
    }

    #[test]
    fn moore_level_matches_brute_force() {
        let z2 = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let m = PointwiseModel::new(z2, 1, 3, Bounds::default()).unwrap();
        for n in 0..=3 {
            let all = m.elements(n).unwrap();
            let mut brute: Vec<Vec<u32>> =
                all.into_iter().filter(|x| (0..n).all(|i| m.face(n, i, x).iter().all(|&v| v == 0))).collect();
            let mut fast = m.moore_level(n).unwrap();
            brute.sort();
            fast.sort();
            assert_eq!(brute, fast, "n={n}");
        }
    }

    #[test]
    fn parse_and_format() {
        let m = PointwiseModel::cech(s3(), 2, Bounds::default()).unwrap();
        let x = m.parse(1, "(213, 231)").unwrap();
        assert_eq!(m.format(1, &x), "(213,231)");
        assert!(m.parse(1, "(213)").is_err());
    }
}

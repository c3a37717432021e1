#![allow(clippy::needless_range_loop)]
use std::fmt;

use serde::Serialize;

use super::presentation::{exponent_sums, Presentation};
use crate::error::{Error, Result};

/// Invariant factors `d1 | d2 | ...` (all > 1) and the free rank.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianInvariants {
    pub torsion: Vec<u64>,
    pub free_rank: usize,
}

impl AbelianInvariants {
    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<u128> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().map(|&d| d as u128).product())
    }

    /// Flat list in the JSON form: torsion factors followed by one `0` per free summand.
    pub fn to_list(&self) -> Vec<u64> {
        let mut v = self.torsion.clone();
        v.extend(std::iter::repeat_n(0, self.free_rank));
        v
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "trivial");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        parts.extend(std::iter::repeat_n("Z".to_string(), self.free_rank));
        write!(f, "{}", parts.join(" x "))
    }
}

fn overflow() -> Error {
    Error::resource("integer size in Smith normal form", i128::MAX as u128)
}

/// Diagonal of the Smith normal form (non-negative, divisibility chain, zeros last).
pub fn smith_normal_form(mut m: Vec<Vec<i128>>) -> Result<Vec<i128>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    if m.iter().any(|r| r.len() != cols) {
        return Err(Error::Invalid("ragged matrix".into()));
    }
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for r in m.iter_mut() {
            r.swap(t, pj);
        }
        loop {
            let p = m[t][t];
            let mut moved = false;
            for i in t + 1..rows {
                let q = m[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        let v = m[t][j].checked_mul(q).ok_or_else(overflow)?;
                        m[i][j] = m[i][j].checked_sub(v).ok_or_else(overflow)?;
                    }
                }
                if m[i][t] != 0 {
                    m.swap(t, i);
                    moved = true;
                    break;
                }
            }
            if moved {
                continue;
            }
            for j in t + 1..cols {
                let q = m[t][j] / p;
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        let v = row[t].checked_mul(q).ok_or_else(overflow)?;
                        row[j] = row[j].checked_sub(v).ok_or_else(overflow)?;
                    }
                }
                if m[t][j] != 0 {
                    for r in m.iter_mut() {
                        r.swap(t, j);
                    }
                    moved = true;
                    break;
                }
            }
            if moved {
                continue;
            }
            // row and column cleared; enforce divisibility on the rest
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        m[t][j] = m[t][j].checked_add(m[i][j]).ok_or_else(overflow)?;
                    }
                }
                None => break,
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag.resize(rows.min(cols), 0);
    Ok(diag)
}

/// Abelian invariants of the group given by a relation matrix with `ngens` columns.
pub fn invariants_of_matrix(matrix: Vec<Vec<i128>>, ngens: usize) -> Result<AbelianInvariants> {
    if matrix.is_empty() {
        return Ok(AbelianInvariants { torsion: vec![], free_rank: ngens });
    }
    let diag = smith_normal_form(matrix)?;
    let rank = diag.iter().filter(|&&d| d != 0).count();
    let torsion = diag
        .iter()
        .filter(|&&d| d > 1)
        .map(|&d| u64::try_from(d).map_err(|_| overflow()))
        .collect::<Result<Vec<_>>>()?;
    Ok(AbelianInvariants { torsion, free_rank: ngens - rank })
}

/// Abelian invariants of the abelianization of `pres`.
pub fn abelian_invariants(pres: &Presentation) -> Result<AbelianInvariants> {
    let n = pres.num_generators();
    let matrix: Vec<Vec<i128>> = pres
        .relators()
        .iter()
        .map(|r| exponent_sums(r, n).into_iter().map(i128::from).collect::<Vec<_>>())
        .filter(|row: &Vec<i128>| row.iter().any(|&x| x != 0))
        .collect();
    invariants_of_matrix(matrix, n)
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        return (a.abs(), a.signum(), 0);
    }
    let (g, s, t) = ext_gcd(b, a.rem_euclid(b));
    (g, t, s - a.div_euclid(b) * t)
}

/// A sublattice of `Z^m` in row echelon form, grown one relation at a time.
#[derive(Clone, Debug)]
pub struct RelationLattice {
    ncols: usize,
    pivots: Vec<Option<Vec<i128>>>,
}

impl RelationLattice {
    pub fn new(ncols: usize) -> Self {
        RelationLattice { ncols, pivots: vec![None; ncols] }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.iter().filter(|p| p.is_some()).count()
    }

    /// Product of the pivots once the lattice has full rank.
    fn modulus(&self) -> Option<i128> {
        let mut d = 1i128;
        for (c, p) in self.pivots.iter().enumerate() {
            d = d.checked_mul(p.as_ref()?[c])?;
        }
        Some(d)
    }

    /// Adds a relation; returns whether the lattice grew.
    pub fn add(&mut self, row: &[i128]) -> Result<bool> {
        if row.len() != self.ncols {
            return Err(Error::Invalid("relation has the wrong length".into()));
        }
        let mut v = row.to_vec();
        if let Some(d) = self.modulus() {
            for x in v.iter_mut() {
                *x = x.rem_euclid(d);
            }
        }
        let mut grew = false;
        for c in 0..self.ncols {
            if v[c] == 0 {
                continue;
            }
            match self.pivots[c].take() {
                None => {
                    if v[c] < 0 {
                        v.iter_mut().for_each(|x| *x = -*x);
                    }
                    self.pivots[c] = Some(v);
                    self.normalize()?;
                    return Ok(true);
                }
                Some(b) => {
                    if v[c] % b[c] == 0 {
                        let q = v[c] / b[c];
                        axpy(&mut v, -q, &b)?;
                        self.pivots[c] = Some(b);
                    } else {
                        let (g, s, t) = ext_gcd(b[c], v[c]);
                        let mut nb = vec![0i128; self.ncols];
                        axpy(&mut nb, s, &b)?;
                        axpy(&mut nb, t, &v)?;
                        let mut nv = vec![0i128; self.ncols];
                        axpy(&mut nv, v[c] / g, &b)?;
                        axpy(&mut nv, -(b[c] / g), &v)?;
                        self.pivots[c] = Some(nb);
                        v = nv;
                        grew = true;
                    }
                }
            }
        }
        if grew {
            self.normalize()?;
        }
        Ok(grew)
    }

    /// Reduces entries above each pivot into `[0, pivot)`.
    fn normalize(&mut self) -> Result<()> {
        for c in (0..self.ncols).rev() {
            let Some(p) = self.pivots[c].clone() else { continue };
            for r in 0..c {
                if let Some(row) = self.pivots[r].as_mut() {
                    let q = row[c].div_euclid(p[c]);
                    if q != 0 {
                        axpy(row, -q, &p)?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether `row` lies in the lattice.
    pub fn contains(&self, row: &[i128]) -> Result<bool> {
        if row.len() != self.ncols {
            return Err(Error::Invalid("relation has the wrong length".into()));
        }
        let mut v = row.to_vec();
        for c in 0..self.ncols {
            if v[c] == 0 {
                continue;
            }
            match &self.pivots[c] {
                Some(b) if v[c] % b[c] == 0 => {
                    let q = v[c] / b[c];
                    axpy(&mut v, -q, b)?
                }
                _ => return Ok(false),
            }
        }
        Ok(true)
    }

    pub fn rows(&self) -> Vec<Vec<i128>> {
        self.pivots.iter().flatten().cloned().collect()
    }

    /// Invariants of `Z^m` modulo the lattice.
    pub fn invariants(&self) -> Result<AbelianInvariants> {
        invariants_of_matrix(self.rows(), self.ncols)
    }
}

fn axpy(y: &mut [i128], a: i128, x: &[i128]) -> Result<()> {
    if a == 0 {
        return Ok(());
    }
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi = xi.checked_mul(a).and_then(|v| yi.checked_add(v)).ok_or_else(overflow)?;
    }
    Ok(())
}

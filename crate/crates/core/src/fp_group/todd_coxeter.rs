//! Coset enumeration, HLT strategy with coincidence processing.
//!
//! Cosets are scanned in creation order; at each live coset every relator is
//! scanned-and-filled and then every undefined entry of the row is defined.
//! The scan order is fixed, so the resulting table is deterministic.

use super::presentation::{Letter, Presentation, Word};
use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    /// Number of columns: `2 * generators`, generator `k` at `2k`, its inverse at `2k+1`.
    pub columns: usize,
    /// `rows[c][col]` is the coset reached from `c`.
    pub rows: Vec<Vec<u32>>,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.rows.len()
    }

    pub fn act(&self, coset: usize, w: &[Letter]) -> usize {
        w.iter().fold(coset, |c, l| self.rows[c][col(*l)] as usize)
    }
}

#[inline]
fn col(l: Letter) -> usize {
    2 * l.gen + l.inverse as usize
}

#[inline]
fn inv_col(c: usize) -> usize {
    c ^ 1
}

struct Enumerator {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    queue: Vec<u32>,
    count: usize,
    max: usize,
}

impl Enumerator {
    fn new(cols: usize, max: usize) -> Self {
        Enumerator { cols, table: vec![NONE; cols], parent: vec![0], queue: Vec::new(), count: 1, max }
    }

    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.cols + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.table[c as usize * self.cols + x] = v;
    }

    fn live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> Result<()> {
        if self.count >= self.max {
            return Err(Error::Undecided { what: "coset enumeration".into(), bound: self.max });
        }
        let d = self.parent.len() as u32;
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.count += 1;
        self.set(c, x, d);
        self.set(d, inv_col(x), c);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, k: u32, l: u32) {
        let (k, l) = (self.rep(k), self.rep(l));
        if k == l {
            return;
        }
        let (lo, hi) = if k < l { (k, l) } else { (l, k) };
        self.parent[hi as usize] = lo;
        self.queue.push(hi);
        self.count -= 1;
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.get(e, x);
                if f == NONE {
                    continue;
                }
                if self.get(f, inv_col(x)) == e {
                    self.set(f, inv_col(x), NONE);
                }
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let ex = self.get(e1, x);
                if ex != NONE {
                    self.merge(f1, ex);
                } else {
                    let fx = self.get(f1, inv_col(x));
                    if fx != NONE {
                        self.merge(e1, fx);
                    } else {
                        self.set(e1, x, f1);
                        self.set(f1, inv_col(x), e1);
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: u32, w: &[usize]) -> Result<()> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.get(f, w[i]) != NONE {
                f = self.get(f, w[i]);
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.get(b, inv_col(w[j as usize])) != NONE {
                b = self.get(b, inv_col(w[j as usize]));
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            } else if j == i as isize {
                self.set(f, w[i], b);
                self.set(b, inv_col(w[i]), f);
                return Ok(());
            } else {
                self.define(f, w[i])?;
            }
        }
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup_gens`.
/// Exceeding `max_cosets` live cosets is reported as [`Error::Undecided`].
pub fn todd_coxeter(pres: &Presentation, subgroup_gens: &[Word], max_cosets: usize) -> Result<CosetTable> {
    if max_cosets == 0 {
        return Err(Error::Invalid("max_cosets must be at least 1".into()));
    }
    let cols = 2 * pres.num_generators();
    let to_cols = |w: &Word| w.iter().map(|l| col(*l)).collect::<Vec<usize>>();
    let rels: Vec<Vec<usize>> = pres.relators().iter().map(to_cols).collect();
    let subs: Vec<Vec<usize>> = subgroup_gens.iter().map(to_cols).collect();
    let mut en = Enumerator::new(cols, max_cosets);
    for s in &subs {
        en.scan_and_fill(0, s)?;
    }
    let mut c = 0u32;
    while (c as usize) < en.parent.len() {
        for r in &rels {
            if !en.live(c) {
                break;
            }
            en.scan_and_fill(c, r)?;
        }
        for x in 0..cols {
            if !en.live(c) {
                break;
            }
            if en.get(c, x) == NONE {
                en.define(c, x)?;
            }
        }
        c += 1;
    }
    // compact
    let mut renumber = vec![NONE; en.parent.len()];
    let mut next = 0u32;
    for k in 0..en.parent.len() as u32 {
        if en.live(k) {
            renumber[k as usize] = next;
            next += 1;
        }
    }
    let mut rows = Vec::with_capacity(next as usize);
    for k in 0..en.parent.len() as u32 {
        if !en.live(k) {
            continue;
        }
        let mut row = Vec::with_capacity(cols);
        for x in 0..cols {
            let t = en.get(k, x);
            let t = en.rep(t);
            row.push(renumber[t as usize]);
        }
        rows.push(row);
    }
    Ok(CosetTable { columns: cols, rows })
}

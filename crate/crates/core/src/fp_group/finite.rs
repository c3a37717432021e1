use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Deserialize;

use super::presentation::{Letter, Presentation, Word};
use super::GroupOps;
use crate::error::{Error, Result};

/// Associativity is checked exhaustively up to this order.
pub const ASSOCIATIVITY_CHECK_LIMIT: usize = 256;
/// Multiplication tables are stored densely; larger groups are rejected.
pub const MAX_TABLE_ORDER: usize = 4096;

/// A finite group given by its multiplication table. Index 0 is the identity.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    labels: Vec<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

#[derive(Deserialize)]
struct TableJson {
    order: usize,
    table: Vec<Vec<u32>>,
    #[serde(default)]
    labels: Option<Vec<String>>,
    #[serde(default)]
    name: Option<String>,
}

impl FiniteGroup {
    pub fn from_table(
        name: impl Into<String>,
        rows: Vec<Vec<u32>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::Invalid("group must have at least one element".into()));
        }
        if order > MAX_TABLE_ORDER {
            return Err(Error::resource("multiplication table order", MAX_TABLE_ORDER as u128));
        }
        let mut table = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::Invalid(format!("row {i} has length {}, expected {order}", row.len())));
            }
            table.extend_from_slice(row);
        }
        Self::from_flat(name.into(), order, table, labels)
    }

    fn from_flat(name: String, order: usize, table: Vec<u32>, labels: Option<Vec<String>>) -> Result<Self> {
        // Latin square
        let mut seen = vec![0usize; order];
        for i in 0..order {
            for stamp in [2 * i + 1, 2 * i + 2] {
                for j in 0..order {
                    let v = if stamp % 2 == 1 { table[i * order + j] } else { table[j * order + i] } as usize;
                    if v >= order || seen[v] == stamp {
                        return Err(Error::Invalid(format!("table is not a Latin square at line {i}")));
                    }
                    seen[v] = stamp;
                }
            }
        }
        for j in 0..order {
            if table[j] as usize != j || table[j * order] as usize != j {
                return Err(Error::Invalid("index 0 is not the identity".into()));
            }
        }
        if order <= ASSOCIATIVITY_CHECK_LIMIT {
            for a in 0..order {
                for b in 0..order {
                    let ab = table[a * order + b] as usize;
                    for c in 0..order {
                        let bc = table[b * order + c] as usize;
                        if table[ab * order + c] != table[a * order + bc] {
                            return Err(Error::Invalid(format!("not associative on ({a},{b},{c})")));
                        }
                    }
                }
            }
        }
        let mut inverse = vec![0u32; order];
        for a in 0..order {
            inverse[a] = (0..order).find(|&b| table[a * order + b] == 0).unwrap() as u32;
        }
        let labels = match labels {
            Some(l) if l.len() == order => l,
            Some(l) => {
                return Err(Error::Invalid(format!("{} labels for a group of order {order}", l.len())))
            }
            None => (0..order).map(|i| i.to_string()).collect(),
        };
        Ok(FiniteGroup { name, order, table, inverse, labels })
    }

    /// Loads `{ "order": n, "table": [[...]] }` (optional `labels`, `name`).
    pub fn from_json(text: &str) -> Result<Self> {
        let parsed: TableJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if parsed.table.len() != parsed.order {
            return Err(Error::Invalid(format!(
                "declared order {} but table has {} rows",
                parsed.order,
                parsed.table.len()
            )));
        }
        Self::from_table(parsed.name.unwrap_or_else(|| "json".into()), parsed.table, parsed.labels)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<u32>> = self.table.chunks(self.order).map(|r| r.to_vec()).collect();
        serde_json::json!({ "name": self.name, "order": self.order, "table": rows, "labels": self.labels })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("cyclic group of order 0".into()));
        }
        let rows = (0..n).map(|a| (0..n).map(|b| ((a + b) % n) as u32).collect()).collect();
        Self::from_table(format!("z{n}"), rows, None)
    }

    /// Symmetric group on `{1..k}` in one-line notation, lexicographic order.
    pub fn symmetric(k: usize) -> Result<Self> {
        if k == 0 || k > 6 {
            return Err(Error::Unsupported(format!("symmetric group S{k}")));
        }
        let mut perms: Vec<Vec<u8>> = vec![(1..=k as u8).collect()];
        // lexicographic enumeration via next_permutation
        loop {
            let mut p = perms.last().unwrap().clone();
            let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else { break };
            let j = (i + 1..k).rev().find(|&j| p[j] > p[i]).unwrap();
            p.swap(i, j);
            p[i + 1..].reverse();
            perms.push(p);
        }
        let index: HashMap<Vec<u8>, u32> = perms.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        // (a*b)(i) = a(b(i)): apply b first
        let rows = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        let c: Vec<u8> = b.iter().map(|&bi| a[bi as usize - 1]).collect();
                        index[&c]
                    })
                    .collect()
            })
            .collect();
        let labels = perms.iter().map(|p| p.iter().map(|d| d.to_string()).collect()).collect();
        Self::from_table(format!("s{k}"), rows, Some(labels))
    }

    /// Dihedral group of order `2m`: elements r^i s^j stored as index `i + m*j`.
    pub fn dihedral(order: usize) -> Result<Self> {
        if order < 2 || !order.is_multiple_of(2) {
            return Err(Error::Invalid(format!("dihedral group of order {order}")));
        }
        let m = order / 2;
        let idx = |i: usize, j: usize| (i % m + m * j) as u32;
        let rows = (0..order)
            .map(|a| {
                let (ai, aj) = (a % m, a / m);
                (0..order)
                    .map(|b| {
                        let (bi, bj) = (b % m, b / m);
                        // r^ai s^aj r^bi s^bj = r^(ai ± bi) s^(aj+bj)
                        let i = if aj == 0 { ai + bi } else { ai + m - bi };
                        idx(i, (aj + bj) % 2)
                    })
                    .collect()
            })
            .collect();
        let labels = (0..order)
            .map(|a| {
                let (i, j) = (a % m, a / m);
                match (i, j) {
                    (0, 0) => "e".to_string(),
                    (0, 1) => "s".to_string(),
                    (i, 0) => format!("r{i}"),
                    (i, _) => format!("r{i}s"),
                }
            })
            .collect();
        Self::from_table(format!("d{order}"), rows, Some(labels))
    }

    /// Quaternion group of order 8.
    pub fn quaternion() -> Result<Self> {
        // elements ±1, ±i, ±j, ±k as (sign, unit) with unit in {1,i,j,k}
        let units = ["1", "i", "j", "k"];
        let unit_mul = |a: usize, b: usize| -> (bool, usize) {
            // returns (negate, unit)
            match (a, b) {
                (0, x) | (x, 0) => (false, x),
                (x, y) if x == y => (true, 0),
                (1, 2) => (false, 3),
                (2, 1) => (true, 3),
                (2, 3) => (false, 1),
                (3, 2) => (true, 1),
                (3, 1) => (false, 2),
                (1, 3) => (true, 2),
                _ => unreachable!(),
            }
        };
        let enc = |neg: bool, u: usize| (u + 4 * neg as usize) as u32;
        let rows = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (na, ua) = (a >= 4, a % 4);
                        let (nb, ub) = (b >= 4, b % 4);
                        let (n, u) = unit_mul(ua, ub);
                        enc(na ^ nb ^ n, u)
                    })
                    .collect()
            })
            .collect();
        let labels = (0..8).map(|a| format!("{}{}", if a >= 4 { "-" } else { "" }, units[a % 4])).collect();
        Self::from_table("q8", rows, Some(labels))
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Self> {
        let (na, nb) = (a.order, b.order);
        let n = na * nb;
        if n > MAX_TABLE_ORDER {
            return Err(Error::resource("direct product order", MAX_TABLE_ORDER as u128));
        }
        // (x, y) stored at x + na*y
        let mut table = Vec::with_capacity(n * n);
        for p in 0..n {
            for q in 0..n {
                let x = a.mul(p % na, q % na);
                let y = b.mul(p / na, q / na);
                table.push((x as usize + na * y as usize) as u32);
            }
        }
        let labels = (0..n).map(|p| format!("{}.{}", a.labels[p % na], b.labels[p / na])).collect();
        Self::from_flat(format!("{}x{}", a.name, b.name), n, table, Some(labels))
    }

    /// Named groups: `zN`, `k4`, `s3`, `s4`, `dN` (dihedral of order N), `q8`.
    pub fn by_name(name: &str) -> Result<Self> {
        let lower = name.trim().to_ascii_lowercase();
        let parse_n = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("unknown group `{name}`")));
        match lower.as_str() {
            "k4" | "v4" => {
                let z2 = Self::cyclic(2)?;
                let mut g = Self::direct_product(&z2, &z2)?;
                g.name = "k4".into();
                Ok(g)
            }
            "q8" => Self::quaternion(),
            "trivial" | "1" => Self::cyclic(1),
            s if s.starts_with('z') => Self::cyclic(parse_n(&s[1..])?),
            s if s.starts_with('s') => Self::symmetric(parse_n(&s[1..])?),
            s if s.starts_with('d') => Self::dihedral(parse_n(&s[1..])?),
            _ => Err(Error::Parse(format!("unknown group `{name}`"))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> u32 {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> u32 {
        self.inverse[a]
    }

    /// `[a,b] = a b a⁻¹ b⁻¹`
    pub fn commutator(&self, a: usize, b: usize) -> u32 {
        let ab = self.mul(a, b) as usize;
        let ab_ai = self.mul(ab, self.inv(a) as usize) as usize;
        self.mul(ab_ai, self.inv(b) as usize)
    }

    pub fn conjugate(&self, by: usize, x: usize) -> u32 {
        let t = self.mul(by, x) as usize;
        self.mul(t, self.inv(by) as usize)
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn parse_label(&self, s: &str) -> Result<u32> {
        let s = s.trim();
        if let Some(i) = self.labels.iter().position(|l| l == s) {
            return Ok(i as u32);
        }
        if matches!(s, "e" | "1") {
            return Ok(0);
        }
        Err(Error::Parse(format!("`{s}` is not an element of {}", self.name)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a) as usize;
            k += 1;
        }
        k
    }

    /// A small generating set: greedily adds the first element outside the
    /// subgroup generated so far.
    pub fn generators(&self) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order];
        inside[0] = true;
        for a in 0..self.order {
            if !inside[a] {
                gens.push(a as u32);
                inside = self.closure_mask(&gens);
            }
        }
        gens
    }

    fn closure_mask(&self, gens: &[u32]) -> Vec<bool> {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g as usize) as usize;
                if !inside[y] {
                    inside[y] = true;
                    queue.push_back(y);
                }
            }
        }
        inside
    }

    /// Cayley-graph presentation on [`Self::generators`]: one relator per
    /// non-tree edge of a breadth-first spanning tree. Returns the
    /// presentation, the generator images, and a normal-form word for every
    /// element.
    pub fn presentation(&self, prefix: &str) -> (Presentation, Vec<u32>, Vec<Word>) {
        let gens = self.generators();
        let names = (0..gens.len()).map(|i| format!("{prefix}{i}")).collect();
        let mut words: Vec<Option<Word>> = vec![None; self.order];
        words[0] = Some(Word::new());
        let mut tree = vec![vec![false; gens.len()]; self.order];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (k, &g) in gens.iter().enumerate() {
                let y = self.mul(x, g as usize) as usize;
                if words[y].is_none() {
                    let mut w = words[x].clone().unwrap();
                    w.push(Letter::gen(k));
                    words[y] = Some(w);
                    tree[x][k] = true;
                    queue.push_back(y);
                }
            }
        }
        let words: Vec<Word> = words.into_iter().map(|w| w.expect("generators generate")).collect();
        let mut relators = Vec::new();
        for x in 0..self.order {
            for (k, &g) in gens.iter().enumerate() {
                if tree[x][k] {
                    continue;
                }
                let y = self.mul(x, g as usize) as usize;
                let mut r = words[x].clone();
                r.push(Letter::gen(k));
                r.extend(super::presentation::inverse_word(&words[y]));
                let r = super::presentation::free_reduce(&r);
                if !r.is_empty() {
                    relators.push(r);
                }
            }
        }
        (Presentation::new(names, relators).expect("well-formed"), gens, words)
    }

    /// Evaluates a word in the given generator images.
    pub fn eval_word(&self, images: &[u32], w: &[Letter]) -> u32 {
        w.iter().fold(0u32, |acc, l| {
            let g = images[l.gen];
            let g = if l.inverse { self.inv(g as usize) } else { g };
            self.mul(acc as usize, g as usize)
        })
    }
}

impl GroupOps for FiniteGroup {
    type Elem = u32;

    fn identity(&self) -> u32 {
        0
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        FiniteGroup::mul(self, *a as usize, *b as usize)
    }

    fn inv(&self, a: &u32) -> u32 {
        FiniteGroup::inv(self, *a as usize)
    }
}

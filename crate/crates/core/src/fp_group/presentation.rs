//! Finite presentations and their text format:
//! `gens: a, b ; rels: a^2, b^2, (a*b)^3`.
//!
//! Word syntax: generators joined by `*`, powers `^k` (k may be negative),
//! parentheses, commutators `[u,v] = u v u⁻¹ v⁻¹`, and `1` for the empty word.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn gen(gen: usize) -> Self {
        Letter { gen, inverse: false }
    }

    pub fn inv(gen: usize) -> Self {
        Letter { gen, inverse: true }
    }

    pub fn inverted(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }
}

pub type Word = Vec<Letter>;

pub fn inverse_word(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inverted()).collect()
}

pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inverted()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Exponent-sum vector of a word over `ngens` generators.
pub fn exponent_sums(w: &[Letter], ngens: usize) -> Vec<i64> {
    let mut v = vec![0i64; ngens];
    for l in w {
        v[l.gen] += if l.inverse { -1 } else { 1 };
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        for (i, r) in relators.iter().enumerate() {
            if let Some(l) = r.iter().find(|l| l.gen >= generators.len()) {
                return Err(Error::Invalid(format!("relator {i} mentions undeclared generator {}", l.gen)));
            }
        }
        for (i, g) in generators.iter().enumerate() {
            if !is_name(g) {
                return Err(Error::Invalid(format!("bad generator name `{g}`")));
            }
            if generators[..i].contains(g) {
                return Err(Error::Invalid(format!("duplicate generator `{g}`")));
            }
        }
        Ok(Presentation { generators, relators })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn with_relators(&self, relators: Vec<Word>) -> Result<Self> {
        Presentation::new(self.generators.clone(), relators)
    }

    /// Same group with generators renamed (relators unchanged).
    pub fn renamed(&self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.generators.len() {
            return Err(Error::Invalid("rename needs one name per generator".into()));
        }
        Presentation::new(names, self.relators.clone())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let (gens_part, rels_part) = match text.split_once(';') {
            Some((g, r)) => (g.trim(), Some(r.trim())),
            None => (text, None),
        };
        let gens_body = gens_part
            .strip_prefix("gens:")
            .ok_or_else(|| Error::Parse("presentation must start with `gens:`".into()))?;
        let generators: Vec<String> = gens_body
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect();
        let mut relators = Vec::new();
        if let Some(r) = rels_part {
            let body = r
                .strip_prefix("rels:")
                .ok_or_else(|| Error::Parse("expected `rels:` after `;`".into()))?;
            for piece in split_top_level(body) {
                let piece = piece.trim();
                if piece.is_empty() {
                    continue;
                }
                relators.push(parse_word(piece, &generators)?);
            }
        }
        Presentation::new(generators, relators)
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        format_word(w, &self.generators)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens: {}", self.generators.join(", "))?;
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        write!(f, " ; rels: {}", rels.join(", "))
    }
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Splits on commas that are not nested in brackets.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

pub fn format_word(w: &[Letter], names: &[String]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j + 1 < w.len() && w[j + 1] == w[i] {
            j += 1;
        }
        let run = (j - i + 1) as i64;
        let e = if w[i].inverse { -run } else { run };
        let name = &names[w[i].gen];
        parts.push(if e == 1 { name.clone() } else { format!("{name}^{e}") });
        i = j + 1;
    }
    parts.join("*")
}

pub fn parse_word(s: &str, names: &[String]) -> Result<Word> {
    let tokens = tokenize(s)?;
    let mut p = WordParser { tokens, pos: 0, names };
    let w = p.word()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("trailing input in `{s}`")));
    }
    Ok(w)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Name(String),
    Int(i64),
    Star,
    Caret,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '*' => { out.push(Tok::Star); i += 1 }
            '^' => { out.push(Tok::Caret); i += 1 }
            '(' => { out.push(Tok::LParen); i += 1 }
            ')' => { out.push(Tok::RParen); i += 1 }
            '[' => { out.push(Tok::LBrack); i += 1 }
            ']' => { out.push(Tok::RBrack); i += 1 }
            ',' => { out.push(Tok::Comma); i += 1 }
            '-' | '0'..='9' => {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let t: String = chars[start..i].iter().collect();
                out.push(Tok::Int(t.parse().map_err(|_| Error::Parse(format!("bad integer `{t}`")))?));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Name(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct WordParser<'a> {
    tokens: Vec<Tok>,
    pos: usize,
    names: &'a [String],
}

impl WordParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!("expected {t:?}, found {:?}", self.peek())))
        }
    }

    fn word(&mut self) -> Result<Word> {
        let mut w = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            w.extend(self.factor()?);
        }
        Ok(free_reduce(&w))
    }

    fn factor(&mut self) -> Result<Word> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let Some(Tok::Int(k)) = self.peek().cloned() else {
                return Err(Error::Parse("expected integer exponent".into()));
            };
            self.pos += 1;
            let unit = if k < 0 { inverse_word(&base) } else { base };
            let mut out = Vec::with_capacity(unit.len() * k.unsigned_abs() as usize);
            for _ in 0..k.unsigned_abs() {
                out.extend_from_slice(&unit);
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek().cloned() {
            Some(Tok::Name(n)) => {
                self.pos += 1;
                let g = self
                    .names
                    .iter()
                    .position(|x| *x == n)
                    .ok_or_else(|| Error::Parse(format!("undeclared generator `{n}`")))?;
                Ok(vec![Letter::gen(g)])
            }
            Some(Tok::Int(1)) => {
                self.pos += 1;
                Ok(Word::new())
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(Tok::RParen)?;
                Ok(w)
            }
            Some(Tok::LBrack) => {
                self.pos += 1;
                let u = self.word()?;
                self.expect(Tok::Comma)?;
                let v = self.word()?;
                self.expect(Tok::RBrack)?;
                let mut w = u.clone();
                w.extend_from_slice(&v);
                w.extend(inverse_word(&u));
                w.extend(inverse_word(&v));
                Ok(w)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_example() {
        let p = Presentation::parse("gens: a, b ; rels: a^2, b^2, (a*b)^3").unwrap();
        assert_eq!(p.num_generators(), 2);
        assert_eq!(p.relators().len(), 3);
        assert_eq!(p.relators()[2].len(), 6);
        assert_eq!(p.to_string(), "gens: a, b ; rels: a^2, b^2, a*b*a*b*a*b");
        let again = Presentation::parse(&p.to_string()).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn negative_powers_and_commutators() {
        let p = Presentation::parse("gens: a, b ; rels: a^2*b^-2, [a,b], 1").unwrap();
        assert_eq!(p.format_word(&p.relators()[0]), "a^2*b^-2");
        assert_eq!(p.relators()[1].len(), 4);
        assert!(p.relators()[2].is_empty());
        assert!(Presentation::parse("gens: a ; rels: b").is_err());
        assert!(Presentation::parse("rels: a").is_err());
    }

    #[test]
    fn free_reduction() {
        let w = vec![Letter::gen(0), Letter::gen(1), Letter::inv(1), Letter::inv(0), Letter::gen(2)];
        assert_eq!(free_reduce(&w), vec![Letter::gen(2)]);
    }
}

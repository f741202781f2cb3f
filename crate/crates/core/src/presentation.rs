//! Finitely presented groups: words, the text format, abelianization.
//!
//! Text format: `gens: a b; rels: ababaBa^2B, bababAb^2A`. Generators are
//! single lowercase letters; the uppercase letter is the inverse; `x^k`
//! repeats the letter `x` k times.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::snf::smith_normal_form;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        Letter { gen: self.gen, inv: !self.inv }
    }
}

/// A word in the free group on `rank` generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    pub rank: usize,
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn empty(rank: usize) -> Self {
        Word { rank, letters: Vec::new() }
    }

    /// Parses a word over `a, b, …` (first `rank` letters of the alphabet).
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let gens: Vec<char> = (0..rank).map(|i| (b'a' + i as u8) as char).collect();
        parse_word(s, &gens, 0)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Free reduction: cancels adjacent `g g⁻¹` pairs.
    pub fn reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { rank: self.rank, letters: out }
    }

    /// Free reduction followed by cancelling an inverse pair at the two ends.
    pub fn cyclic_reduce(&self) -> Word {
        let mut w = self.reduce().letters;
        let mut start = 0;
        let mut end = w.len();
        while end - start >= 2 && w[start] == w[end - 1].inverse() {
            start += 1;
            end -= 1;
        }
        w = w[start..end].to_vec();
        Word { rank: self.rank, letters: w }
    }

    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, o: &Word) -> Result<Word> {
        if self.rank != o.rank {
            return Err(Error::GeneratorMismatch);
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&o.letters);
        Ok(Word { rank: self.rank, letters })
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut v = vec![0; self.rank];
        for l in &self.letters {
            v[l.gen] += if l.inv { -1 } else { 1 };
        }
        v
    }

    /// Letters as text using single-letter generator names.
    pub fn to_text(&self, gens: &[char]) -> String {
        self.letters
            .iter()
            .map(|l| if l.inv { gens[l.gen].to_ascii_uppercase() } else { gens[l.gen] })
            .collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<char> = (0..self.rank).map(|i| (b'a' + i as u8) as char).collect();
        f.write_str(&self.to_text(&gens))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generators: Vec<char>,
    pub relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Builds from relator strings over the given generators; relators are
    /// stored freely reduced.
    pub fn from_relators(generators: &[char], rels: &[&str]) -> Result<Self> {
        let mut relators = Vec::new();
        for r in rels {
            let w = parse_word(r, generators, 0)?.reduce();
            if w.is_empty() {
                return Err(Error::Parse { pos: 0, msg: "trivial relator".into() });
            }
            relators.push(w);
        }
        Ok(GroupPresentation { generators: generators.to_vec(), relators })
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|c| c.to_string()).collect();
        let rels: Vec<String> = self.relators.iter().map(|w| w.to_text(&self.generators)).collect();
        write!(f, "gens: {}; rels: {}", gens.join(" "), rels.join(", "))
    }
}

fn parse_word(s: &str, gens: &[char], offset: usize) -> Result<Word> {
    let chars: Vec<(usize, char)> = s.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut letters = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c == '^' {
            return Err(Error::Parse { pos: offset + pos, msg: "exponent without a base letter".into() });
        }
        let gen = gens
            .iter()
            .position(|&g| g == c.to_ascii_lowercase())
            .ok_or_else(|| Error::Parse { pos: offset + pos, msg: format!("unknown symbol '{c}'") })?;
        let letter = Letter { gen, inv: c.is_ascii_uppercase() };
        i += 1;
        let mut reps = 1usize;
        if i < chars.len() && chars[i].1 == '^' {
            let caret = chars[i].0;
            i += 1;
            let mut digits = String::new();
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                digits.push(chars[i].1);
                i += 1;
            }
            reps = digits.parse().map_err(|_| Error::Parse {
                pos: offset + caret,
                msg: "unbalanced '^': exponent must be a positive integer".into(),
            })?;
            if reps == 0 {
                return Err(Error::Parse { pos: offset + caret, msg: "zero exponent".into() });
            }
        }
        letters.extend(std::iter::repeat(letter).take(reps));
    }
    Ok(Word { rank: gens.len(), letters })
}

/// Parses `gens: <name>+ ; rels: <word> (, <word>)*`.
pub fn parse_presentation(text: &str) -> Result<GroupPresentation> {
    let lower = text.to_string();
    let gpos = lower
        .find("gens:")
        .ok_or_else(|| Error::Parse { pos: 0, msg: "missing 'gens:'".into() })?;
    let semi = lower[gpos..]
        .find(';')
        .map(|k| k + gpos)
        .ok_or_else(|| Error::Parse { pos: gpos, msg: "missing ';' after generators".into() })?;
    let mut generators = Vec::new();
    for tok in lower[gpos + 5..semi].split_whitespace() {
        let mut cs = tok.chars();
        match (cs.next(), cs.next()) {
            (Some(c), None) if c.is_ascii_lowercase() => {
                if generators.contains(&c) {
                    return Err(Error::Parse { pos: gpos, msg: format!("duplicate generator '{c}'") });
                }
                generators.push(c)
            }
            _ => {
                return Err(Error::Parse {
                    pos: gpos,
                    msg: format!("generator names are single lowercase letters, got '{tok}'"),
                })
            }
        }
    }
    if generators.is_empty() {
        return Err(Error::Parse { pos: gpos, msg: "no generators".into() });
    }
    let rest = &lower[semi + 1..];
    let rpos = rest
        .find("rels:")
        .ok_or_else(|| Error::Parse { pos: semi + 1, msg: "missing 'rels:'".into() })?;
    let body_start = semi + 1 + rpos + 5;
    let body = &lower[body_start..];
    if body.trim().is_empty() {
        return Err(Error::Parse { pos: body_start, msg: "empty relator list".into() });
    }
    let mut relators = Vec::new();
    let mut offset = body_start;
    for part in body.split(',') {
        if part.trim().is_empty() {
            return Err(Error::Parse { pos: offset, msg: "empty relator".into() });
        }
        let w = parse_word(part, &generators, offset)?.reduce();
        if w.is_empty() {
            return Err(Error::Parse { pos: offset, msg: "trivial relator".into() });
        }
        relators.push(w);
        offset += part.len() + 1;
    }
    Ok(GroupPresentation { generators, relators })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianizationResult {
    /// Invariant factors `d₁ | d₂ | …` of the torsion part, then a `0` per free ℤ.
    pub invariant_factors: Vec<i64>,
    /// `#H¹(π, C₂) = #Hom(π, {±1})`.
    pub h1_c2_order: u64,
}

pub fn exponent_sum_matrix(pres: &GroupPresentation) -> Vec<Vec<i64>> {
    pres.relators.iter().map(|w| w.exponent_sums()).collect()
}

pub fn abelianization(pres: &GroupPresentation) -> AbelianizationResult {
    let m = exponent_sum_matrix(pres);
    let n = pres.rank();
    let snf = smith_normal_form(&m, n);
    let diag = snf.diagonal();
    let mut factors: Vec<i64> = diag.iter().copied().filter(|&d| d > 1).collect();
    let rank = diag.iter().filter(|&&d| d != 0).count();
    factors.extend(std::iter::repeat(0).take(n - rank));
    let twos = factors.iter().filter(|&&d| d == 0 || d % 2 == 0).count();
    AbelianizationResult { invariant_factors: factors, h1_c2_order: 1u64 << twos }
}

/// Counts homomorphisms π → {±1} by trying all sign assignments.
pub fn count_sign_homomorphisms(pres: &GroupPresentation) -> u64 {
    let n = pres.rank();
    let sums = exponent_sum_matrix(pres);
    (0u64..1 << n)
        .filter(|mask| {
            sums.iter().all(|row| {
                let neg: i64 = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| row[i]).sum();
                neg.rem_euclid(2) == 0
            })
        })
        .count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn weeks_presentation_parses() {
        let p = parse_presentation("gens: a b; rels: ababaBa^2B, bababAb^2A").unwrap();
        assert_eq!(p.generators, vec!['a', 'b']);
        assert_eq!(p.relators.len(), 2);
        assert_eq!(p.relators[0].len(), 9);
        assert_eq!(p.relators[1].len(), 9);
        assert_eq!(p.relators[0].to_text(&p.generators), "ababaBaaB");
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert!(matches!(
            parse_presentation("gens: a b; rels: abBA"),
            Err(Error::Parse { msg, .. }) if msg == "trivial relator"
        ));
        assert!(matches!(parse_presentation("gens: a b; rels: abc"), Err(Error::Parse { pos: 19, .. })));
        assert!(matches!(parse_presentation("gens: a b; rels: a^b"), Err(Error::Parse { pos: 18, .. })));
        assert!(matches!(parse_presentation("gens: a b; rels: ^2a"), Err(Error::Parse { .. })));
        assert!(matches!(parse_presentation("gens: a b; rels:   "), Err(Error::Parse { .. })));
    }

    #[test]
    fn word_operations() {
        let w = Word::parse("abBA", 2).unwrap();
        assert!(w.reduce().is_empty());
        assert_eq!(Word::parse("ab", 2).unwrap().inverse().to_string(), "BA");
        let c = Word::parse("aB", 2).unwrap().concat(&Word::parse("ba", 2).unwrap()).unwrap();
        assert_eq!(c.reduce().to_string(), "aa");
        assert_eq!(
            Word::parse("a", 2).unwrap().concat(&Word::parse("a", 3).unwrap()),
            Err(Error::GeneratorMismatch)
        );
    }

    #[test]
    fn abelianizations() {
        let weeks = presets::presentation("weeks").unwrap();
        assert_eq!(exponent_sum_matrix(&weeks), vec![vec![5, 0], vec![0, 5]]);
        let ab = abelianization(&weeks);
        assert_eq!(ab.invariant_factors, vec![5, 5]);
        assert_eq!(ab.h1_c2_order, 1);

        let m010 = presets::presentation("m010m12").unwrap();
        let ab = abelianization(&m010);
        assert_eq!(ab.invariant_factors, vec![3, 6]);
        assert_eq!(ab.h1_c2_order, 2);

        let free = GroupPresentation { generators: vec!['a'], relators: vec![] };
        let ab = abelianization(&free);
        assert_eq!(ab.invariant_factors, vec![0]);
        assert_eq!(ab.h1_c2_order, 2);
    }

    #[test]
    fn print_parse_round_trip() {
        for name in presets::PRESENTED {
            let p = presets::presentation(name).unwrap();
            assert_eq!(parse_presentation(&p.to_string()).unwrap(), p);
        }
    }
}

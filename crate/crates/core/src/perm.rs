//! Permutations in one-line notation, their plots, and pattern containment.
//!
//! Positions and values are 1-based everywhere in the public interface.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A point `(position, value)` in the plot of a permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub pos: usize,
    pub val: u32,
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.pos, self.val)
    }
}

/// A permutation of `{1, ..., n}` in one-line notation. `n = 0` is the
/// empty permutation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    entries: Vec<u32>,
}

impl Permutation {
    /// Builds a permutation from one-line notation, checking that the
    /// entries are exactly `1..=n`.
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n];
        for &v in &entries {
            if v == 0 || v as usize > n {
                return Err(Error::InvalidInput(format!(
                    "entry {v} out of range for a permutation of length {n}"
                )));
            }
            if seen[v as usize - 1] {
                return Err(Error::InvalidInput(format!("duplicate entry {v}")));
            }
            seen[v as usize - 1] = true;
        }
        Ok(Permutation { entries })
    }

    pub fn empty() -> Self {
        Permutation { entries: Vec::new() }
    }

    /// The increasing permutation `1 2 ... n`.
    pub fn increasing(n: usize) -> Self {
        Permutation {
            entries: (1..=n as u32).collect(),
        }
    }

    /// The decreasing permutation `n ... 2 1`.
    pub fn decreasing(n: usize) -> Self {
        Permutation {
            entries: (1..=n as u32).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry at 1-based position `pos`.
    pub fn at(&self, pos: usize) -> u32 {
        self.entries[pos - 1]
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// 1-based position of value `v`.
    pub fn position_of(&self, v: u32) -> usize {
        self.entries.iter().position(|&x| x == v).expect("value in range") + 1
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, &v)| Point { pos: i + 1, val: v })
    }

    /// Replaces the i-th smallest entry of `seq` with `i`. The entries must
    /// be distinct and positive.
    pub fn normalize(seq: &[u32]) -> Result<Self> {
        let mut sorted: Vec<u32> = seq.to_vec();
        if sorted.iter().any(|&v| v == 0) {
            return Err(Error::InvalidInput("entries must be positive".into()));
        }
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("entries must be distinct".into()));
        }
        let entries = seq
            .iter()
            .map(|v| sorted.binary_search(v).unwrap() as u32 + 1)
            .collect();
        Ok(Permutation { entries })
    }

    /// True iff some subsequence of `self` normalizes to `pattern`.
    pub fn contains_pattern(&self, pattern: &Permutation) -> bool {
        let m = pattern.len();
        if m == 0 {
            return true;
        }
        if m > self.len() {
            return false;
        }
        let mut chosen = Vec::with_capacity(m);
        self.contains_from(pattern, 0, &mut chosen)
    }

    fn contains_from(&self, pattern: &Permutation, start: usize, chosen: &mut Vec<u32>) -> bool {
        let j = chosen.len();
        if j == pattern.len() {
            return true;
        }
        for i in start..self.len() {
            let v = self.entries[i];
            // v must relate to each chosen value the way pattern[j] relates
            // to the corresponding pattern entry.
            let ok = chosen.iter().enumerate().all(|(t, &c)| {
                (v > c) == (pattern.entries[j] > pattern.entries[t])
            });
            if ok {
                chosen.push(v);
                if self.contains_from(pattern, i + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    pub fn avoids(&self, pattern: &Permutation) -> bool {
        !self.contains_pattern(pattern)
    }

    pub fn avoids_all(&self, patterns: &PatternSet) -> bool {
        patterns.iter().all(|p| self.avoids(p))
    }

    /// 1-based indices `i` with `π_i > π_{i+1}`.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.len())
            .filter(|&i| self.entries[i - 1] > self.entries[i])
            .collect()
    }

    /// 1-based indices `i` with `π_i < π_{i+1}`.
    pub fn ascents(&self) -> Vec<usize> {
        (1..self.len())
            .filter(|&i| self.entries[i - 1] < self.entries[i])
            .collect()
    }

    pub fn descent_tops(&self) -> Vec<Point> {
        self.descents()
            .into_iter()
            .map(|i| Point { pos: i, val: self.at(i) })
            .collect()
    }

    pub fn descent_bottoms(&self) -> Vec<Point> {
        self.descents()
            .into_iter()
            .map(|i| Point { pos: i + 1, val: self.at(i + 1) })
            .collect()
    }

    pub fn ascent_bottoms(&self) -> Vec<Point> {
        self.ascents()
            .into_iter()
            .map(|i| Point { pos: i, val: self.at(i) })
            .collect()
    }

    pub fn ascent_tops(&self) -> Vec<Point> {
        self.ascents()
            .into_iter()
            .map(|i| Point { pos: i + 1, val: self.at(i + 1) })
            .collect()
    }

    /// Reflection of the plot through the line `y = x`.
    pub fn inverse(&self) -> Permutation {
        let mut entries = vec![0u32; self.len()];
        for (i, &v) in self.entries.iter().enumerate() {
            entries[v as usize - 1] = i as u32 + 1;
        }
        Permutation { entries }
    }

    /// `μ ⊕ λ`: the plot of `λ` above and to the right of `μ`.
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let shift = self.len() as u32;
        let entries = self
            .entries
            .iter()
            .copied()
            .chain(other.entries.iter().map(|&v| v + shift))
            .collect();
        Permutation { entries }
    }

    /// `μ ⊖ λ`: the plot of `λ` below and to the right of `μ`.
    pub fn skew_sum(&self, other: &Permutation) -> Permutation {
        let shift = other.len() as u32;
        let entries = self
            .entries
            .iter()
            .map(|&v| v + shift)
            .chain(other.entries.iter().copied())
            .collect();
        Permutation { entries }
    }

    /// The smallest `ℓ ≥ 0` with `π_{n-ℓ} ≠ n-ℓ`; by convention the
    /// increasing permutation has tail length `n`.
    pub fn tail_length(&self) -> usize {
        let n = self.len();
        for l in 0..n {
            if self.entries[n - l - 1] != (n - l) as u32 {
                return l;
            }
        }
        n
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "(empty)");
        }
        let s: Vec<String> = self.entries.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", s.join(" "))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts whitespace- or comma-separated entries; a single run of
    /// digits ("3241") is read one digit per entry when that forms a
    /// permutation (n ≤ 9).
    fn from_str(s: &str) -> Result<Self> {
        let tokens: Vec<&str> = s.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect();
        if tokens.is_empty() {
            return Ok(Permutation::empty());
        }
        if tokens.len() == 1 {
            let t = tokens[0];
            if t.len() > 1 && t.chars().all(|c| c.is_ascii_digit()) {
                let digits: Vec<u32> = t.chars().map(|c| c.to_digit(10).unwrap()).collect();
                if let Ok(p) = Permutation::new(digits) {
                    return Ok(p);
                }
            }
        }
        let entries = tokens
            .iter()
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| Error::InvalidInput(format!("bad entry {t:?}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        Permutation::new(entries)
    }
}

/// A set of patterns to avoid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PatternSet {
    patterns: Vec<Permutation>,
}

impl PatternSet {
    pub fn new(patterns: Vec<Permutation>) -> Self {
        PatternSet { patterns }
    }

    /// Parses a comma-separated list like "132,4312".
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(PatternSet::default());
        }
        let patterns = s
            .split(',')
            .map(|t| t.trim().parse::<Permutation>())
            .collect::<Result<Vec<_>>>()?;
        Ok(PatternSet { patterns })
    }

    pub fn iter(&self) -> impl Iterator<Item = &Permutation> {
        self.patterns.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self
            .patterns
            .iter()
            .map(|p| p.entries().iter().map(|v| v.to_string()).collect::<String>())
            .collect();
        write!(f, "{}", s.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(Permutation::normalize(&[3, 8, 1]).unwrap(), p("231"));
        assert_eq!(Permutation::normalize(&[1, 2, 3]).unwrap(), p("123"));
        assert_eq!(Permutation::normalize(&[9, 2, 1, 5]).unwrap(), p("4213"));
        assert!(Permutation::normalize(&[2, 2]).is_err());
        assert!(Permutation::normalize(&[0, 1]).is_err());
    }

    #[test]
    fn normalize_is_idempotent() {
        for n in 0..=6 {
            for v in (1..=n as u32).permutations(n) {
                let q = Permutation::new(v).unwrap();
                assert_eq!(Permutation::normalize(q.entries()).unwrap(), q);
            }
        }
    }

    #[test]
    fn contains_examples() {
        assert!(p("516243").contains_pattern(&p("132")));
        assert!(!p("123").contains_pattern(&p("21")));
        assert!(p("31425").contains_pattern(&p("312")));
    }

    /// Independent oracle: enumerate all length-m subsequences outright.
    fn contains_brute(host: &Permutation, pat: &Permutation) -> bool {
        host.entries()
            .iter()
            .copied()
            .combinations(pat.len())
            .any(|c| Permutation::normalize(&c).unwrap() == *pat)
    }

    #[test]
    fn contains_matches_brute_force() {
        let pats: Vec<Permutation> = ["132", "231", "312", "321", "4312", "2431", "1432", "3412"]
            .iter()
            .map(|s| p(s))
            .collect();
        for n in 1..=7 {
            for v in (1..=n as u32).permutations(n) {
                let q = Permutation::new(v).unwrap();
                for pat in &pats {
                    assert_eq!(q.contains_pattern(pat), contains_brute(&q, pat), "{q} vs {pat}");
                }
            }
        }
    }

    #[test]
    fn descent_examples() {
        assert_eq!(p("2 7 3 5 9 4 8 1 6 10 11 12").descents(), vec![2, 5, 7]);
        assert_eq!(Permutation::increasing(5).descents(), Vec::<usize>::new());
        assert_eq!(p("31425").descents(), vec![1, 3]);
        // |descents| + |ascents| = n - 1
        for n in 1..=7 {
            for v in (1..=n as u32).permutations(n) {
                let q = Permutation::new(v).unwrap();
                assert_eq!(q.descents().len() + q.ascents().len(), n - 1);
            }
        }
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(p("31425").inverse(), p("24135"));
        assert_eq!(p("643527819").inverse(), p("853241679"));
        assert_eq!(Permutation::increasing(4).inverse(), Permutation::increasing(4));
        for v in (1..=8u32).permutations(8).take(5000) {
            let q = Permutation::new(v).unwrap();
            assert_eq!(q.inverse().inverse(), q);
        }
    }

    #[test]
    fn sums() {
        assert_eq!(p("21").direct_sum(&p("1")), p("213"));
        assert_eq!(p("1").skew_sum(&p("21")), p("321"));
        assert_eq!(Permutation::empty().direct_sum(&p("312")), p("312"));
        // associativity
        let (a, b, c) = (p("21"), p("132"), p("1"));
        assert_eq!(a.direct_sum(&b).direct_sum(&c), a.direct_sum(&b.direct_sum(&c)));
        assert_eq!(a.skew_sum(&b).skew_sum(&c), a.skew_sum(&b.skew_sum(&c)));
    }

    #[test]
    fn tail_length_examples() {
        assert_eq!(p("3 2 4 1 8 7 6 9 11 10 5 12 13").tail_length(), 2);
        assert_eq!(Permutation::increasing(6).tail_length(), 6);
        assert_eq!(p("21").tail_length(), 0);
    }

    #[test]
    fn parse_formats() {
        assert_eq!(p("3 2 4 1"), p("3,2,4,1"));
        assert_eq!(p("3241"), p("3 2 4 1"));
        assert_eq!(p("1"), Permutation::new(vec![1]).unwrap());
        assert_eq!("".parse::<Permutation>().unwrap(), Permutation::empty());
        assert!("3 3 1".parse::<Permutation>().is_err());
        assert_eq!(p("10 6 5 3 2 1 4 7 8 9 11").len(), 11);
    }
}

//! Down-up alternating words and the reflection paths they encode.
//!
//! A path between `n` plates is recorded by the plate index of each of its
//! reflections, giving a word `w1 > w2 < w3 > ...` over `{1..n}`. Everything
//! in this module counts by walking those words explicitly (the enumeration
//! oracles) or by a multiset dynamic program over the same transitions.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Which words count as paths.
///
/// `Word` accepts every down-up word. `Path` accepts the ones realizable by
/// a path entering from above the first plate, which rules out exactly the
/// one-letter word `1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Semantics {
    Word,
    #[default]
    Path,
}

impl FromStr for Semantics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "word" => Ok(Semantics::Word),
            "path" => Ok(Semantics::Path),
            other => Err(Error::InvalidParameter(format!(
                "unknown semantics {other:?}"
            ))),
        }
    }
}

/// True iff `letters` satisfies `l1 > l2 < l3 > l4 ...` throughout.
pub fn is_alternating(letters: &[u32]) -> bool {
    letters.windows(2).enumerate().all(|(i, pair)| {
        if i % 2 == 0 {
            pair[0] > pair[1]
        } else {
            pair[0] < pair[1]
        }
    })
}

pub fn is_admissible(letters: &[u32], semantics: Semantics) -> bool {
    if !is_alternating(letters) {
        return false;
    }
    match semantics {
        Semantics::Word => true,
        Semantics::Path => letters != [1],
    }
}

/// A down-up alternating word. Letters are plate indices starting at 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct AlternatingWord {
    letters: Vec<u32>,
}

impl AlternatingWord {
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        if letters.contains(&0) {
            return Err(Error::LetterOutOfRange { letter: 0, n: 0 });
        }
        if !is_alternating(&letters) {
            return Err(Error::NotAlternating(render_letters(&letters, false)));
        }
        Ok(Self { letters })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_admissible(&self, semantics: Semantics) -> bool {
        is_admissible(&self.letters, semantics)
    }

    pub fn vector(&self, n: usize) -> Result<ReflectionVector> {
        vector_of(&self.letters, n)
    }

    pub fn into_letters(self) -> Vec<u32> {
        self.letters
    }

    /// Letters written out for an alphabet of size `n`: concatenated digits
    /// when `n < 10`, dot-separated otherwise.
    pub fn render(&self, n: usize) -> String {
        render_letters(&self.letters, n >= 10)
    }
}

impl fmt::Display for AlternatingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.letters.iter().any(|&l| l >= 10);
        f.write_str(&render_letters(&self.letters, wide))
    }
}

fn render_letters(letters: &[u32], separated: bool) -> String {
    let parts: Vec<String> = letters.iter().map(u32::to_string).collect();
    parts.join(if separated { "." } else { "" })
}

/// Per-plate reflection counts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ReflectionVector {
    counts: Vec<u32>,
}

impl ReflectionVector {
    pub fn new(counts: Vec<u32>) -> Self {
        Self { counts }
    }

    pub fn zero(n: usize) -> Self {
        Self { counts: vec![0; n] }
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn n(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| u64::from(c)).sum()
    }

    pub fn reversed(&self) -> Self {
        let mut counts = self.counts.clone();
        counts.reverse();
        Self { counts }
    }
}

impl From<Vec<u32>> for ReflectionVector {
    fn from(counts: Vec<u32>) -> Self {
        Self { counts }
    }
}

impl fmt::Display for ReflectionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Accepts `2,1,1`, `(2,1,1)` and surrounding whitespace. The empty string
/// is the vector with no plates.
impl FromStr for ReflectionVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let inner = trimmed
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(trimmed)
            .trim();
        if inner.is_empty() {
            return Ok(Self::default());
        }
        inner
            .split(',')
            .map(|part| part.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Self::new)
            .map_err(|_| Error::ParseVector(s.to_string()))
    }
}

/// Multiplicity of each letter of `letters` over the alphabet `{1..n}`.
pub fn vector_of(letters: &[u32], n: usize) -> Result<ReflectionVector> {
    let mut counts = vec![0u32; n];
    for &letter in letters {
        if letter == 0 || letter as usize > n {
            return Err(Error::LetterOutOfRange { letter, n });
        }
        counts[letter as usize - 1] += 1;
    }
    Ok(ReflectionVector::new(counts))
}

/// Lexicographic stream of admissible down-up words.
///
/// Built either over a fixed length or over a fixed letter multiset (a
/// reflection vector); the latter only ever places letters that are still
/// available.
#[derive(Debug, Clone)]
pub struct Words {
    n: u32,
    len: usize,
    semantics: Semantics,
    remaining: Option<Vec<u32>>,
    current: Vec<u32>,
    fresh: bool,
    done: bool,
}

impl Words {
    fn bounds(&self, pos: usize) -> (u32, u32) {
        match (pos, self.current.last()) {
            (0, _) | (_, None) => (1, self.n),
            (p, Some(&prev)) if p % 2 == 1 => (1, prev.saturating_sub(1)),
            (_, Some(&prev)) => (prev + 1, self.n),
        }
    }

    fn available(&self, letter: u32) -> bool {
        match &self.remaining {
            None => true,
            Some(rem) => rem[letter as usize - 1] > 0,
        }
    }

    fn push(&mut self, letter: u32) {
        if let Some(rem) = &mut self.remaining {
            rem[letter as usize - 1] -= 1;
        }
        self.current.push(letter);
    }

    fn pop(&mut self) -> Option<u32> {
        let letter = self.current.pop()?;
        if let Some(rem) = &mut self.remaining {
            rem[letter as usize - 1] += 1;
        }
        Some(letter)
    }

    /// Advances to the next complete down-up word of the target length,
    /// ignoring admissibility.
    fn advance(&mut self) -> bool {
        let mut candidate = if self.fresh {
            self.fresh = false;
            if self.len == 0 {
                return true;
            }
            1
        } else {
            match self.pop() {
                Some(letter) => letter + 1,
                None => return false,
            }
        };
        loop {
            let (lo, hi) = self.bounds(self.current.len());
            let mut letter = candidate.max(lo);
            while letter <= hi && !self.available(letter) {
                letter += 1;
            }
            if letter <= hi {
                self.push(letter);
                if self.current.len() == self.len {
                    return true;
                }
                candidate = 1;
            } else {
                match self.pop() {
                    Some(prev) => candidate = prev + 1,
                    None => return false,
                }
            }
        }
    }
}

impl Iterator for Words {
    type Item = AlternatingWord;

    fn next(&mut self) -> Option<AlternatingWord> {
        while !self.done {
            if !self.advance() {
                self.done = true;
                break;
            }
            if self.len == 0 {
                self.done = true;
            }
            if is_admissible(&self.current, self.semantics) {
                return Some(AlternatingWord {
                    letters: self.current.clone(),
                });
            }
        }
        None
    }
}

/// Every admissible down-up word of length `m` over `{1..n}`, in
/// lexicographic order.
pub fn enumerate_words(n: usize, m: usize, semantics: Semantics) -> Words {
    Words {
        n: n as u32,
        len: m,
        semantics,
        remaining: None,
        current: Vec::with_capacity(m),
        fresh: true,
        done: n == 0 && m > 0,
    }
}

/// Every admissible down-up word whose letter multiplicities equal `v`, in
/// lexicographic order.
pub fn enumerate_words_with_vector(v: &ReflectionVector, semantics: Semantics) -> Words {
    let len = v.total() as usize;
    Words {
        n: v.n() as u32,
        len,
        semantics,
        remaining: Some(v.counts().to_vec()),
        current: Vec::with_capacity(len),
        fresh: true,
        done: false,
    }
}

/// Number of paths realizing `v`, by listing them one at a time.
pub fn oracle_n(v: &ReflectionVector) -> BigUint {
    BigUint::from(enumerate_words_with_vector(v, Semantics::Path).count())
}

pub fn oracle_a(n: usize, m: usize, semantics: Semantics) -> BigUint {
    BigUint::from(enumerate_words(n, m, semantics).count())
}

/// Down-up words of length `m` ending in letter `j`; always `Word` semantics.
pub fn oracle_a_last(n: usize, m: usize, j: usize) -> Result<BigUint> {
    if j == 0 || j > n || m == 0 {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= j <= n and m >= 1, got n={n}, m={m}, j={j}"
        )));
    }
    let count = enumerate_words(n, m, Semantics::Word)
        .filter(|w| w.letters().last() == Some(&(j as u32)))
        .count();
    Ok(BigUint::from(count))
}

/// Number of distinct reflection vectors among paths with `m` reflections.
pub fn oracle_b(n: usize, m: usize) -> BigUint {
    let vectors: BTreeSet<ReflectionVector> = enumerate_words(n, m, Semantics::Path)
        .map(|w| vector_of(w.letters(), n).expect("enumerated letters lie in 1..=n"))
        .collect();
    BigUint::from(vectors.len())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Step {
    Down,
    Up,
}

/// Number of paths realizing `v`, by dynamic programming over
/// (remaining multiplicities, previous letter, next comparison).
pub fn dp_n(v: &ReflectionVector) -> BigUint {
    let counts = v.counts();
    let n = counts.len();
    match v.total() {
        0 => return BigUint::one(),
        1 => {
            return if counts[0] == 1 {
                BigUint::zero()
            } else {
                BigUint::one()
            }
        }
        _ => {}
    }

    let mut dp = MultisetDp::new(counts);
    let mut remaining = counts.to_vec();
    let mut total = BigUint::zero();
    for letter in 0..n {
        if remaining[letter] > 0 {
            remaining[letter] -= 1;
            total += dp.count(&mut remaining, letter, Step::Down);
            remaining[letter] += 1;
        }
    }
    total
}

struct MultisetDp {
    radix: Vec<usize>,
    memo: HashMap<(usize, usize, Step), BigUint>,
}

impl MultisetDp {
    fn new(bounds: &[u32]) -> Self {
        let mut radix = Vec::with_capacity(bounds.len());
        let mut scale = 1usize;
        for &b in bounds {
            radix.push(scale);
            scale *= b as usize + 1;
        }
        Self {
            radix,
            memo: HashMap::new(),
        }
    }

    fn key(&self, remaining: &[u32]) -> usize {
        remaining
            .iter()
            .zip(&self.radix)
            .map(|(&r, &scale)| r as usize * scale)
            .sum()
    }

    fn count(&mut self, remaining: &mut [u32], prev: usize, step: Step) -> BigUint {
        if remaining.iter().all(|&r| r == 0) {
            return BigUint::one();
        }
        let key = (self.key(remaining), prev, step);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let (letters, next) = match step {
            Step::Down => (0..prev, Step::Up),
            Step::Up => (prev + 1..remaining.len(), Step::Down),
        };
        let mut total = BigUint::zero();
        for letter in letters {
            if remaining[letter] > 0 {
                remaining[letter] -= 1;
                total += self.count(remaining, letter, next);
                remaining[letter] += 1;
            }
        }
        self.memo.insert(key, total.clone());
        total
    }
}

/// All length-`n` vectors with the given total, lexicographically ascending.
pub fn vectors_with_total(n: usize, total: u32) -> Vec<ReflectionVector> {
    fn go(n: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<ReflectionVector>) {
        if prefix.len() + 1 == n {
            prefix.push(total);
            out.push(ReflectionVector::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            go(n, total - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    match n {
        0 if total == 0 => out.push(ReflectionVector::default()),
        0 => {}
        _ => go(n, total, &mut Vec::with_capacity(n), &mut out),
    }
    out
}

/// All length-`n` vectors whose entries are at most `max_entry`.
pub fn vectors_in_box(n: usize, max_entry: u32) -> Vec<ReflectionVector> {
    let mut out = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                (0..=max_entry).map(move |x| {
                    let mut next = prefix.clone();
                    next.push(x);
                    next
                })
            })
            .collect();
    }
    out.into_iter().map(ReflectionVector::new).collect()
}

//! Freely reduced words over a signed alphabet.
//!
//! A [`Word`] is a flat array of [`Letter`]s that never contains an adjacent
//! pair `x x⁻¹`. Cyclic words are not a separate type: a cyclic word is a
//! cyclically reduced [`Word`] together with whatever rotation the caller
//! needs at the moment.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("letter refers to generator {0}, alphabet has {1} generators")]
    LetterOutsideAlphabet(usize, usize),
    #[error("rotation {k} out of range for word of length {len}")]
    RotationOutOfRange { k: usize, len: usize },
    #[error("word is not cyclically reduced")]
    NotCyclicallyReduced,
    #[error("word must be nonempty")]
    Empty,
    #[error("parse error at column {column}: unexpected {found:?}")]
    Parse { column: usize, found: char },
    #[error("generator name {0:?} is not usable (need a lowercase symbol with a distinct uppercase form)")]
    BadGeneratorName(char),
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(char),
}

/// A generator or its inverse. Ordered by generator index, positive before
/// negative, so `a < A < b < B < ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: u32,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(generator: u32, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub const fn pos(generator: u32) -> Self {
        Letter::new(generator, false)
    }

    pub const fn neg(generator: u32) -> Self {
        Letter::new(generator, true)
    }

    #[inline]
    pub fn inv(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    #[inline]
    pub fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

/// Ordered list of distinct generator names. The index of a name is its
/// generator id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet {
    names: Vec<char>,
}

fn usable_name(c: char) -> bool {
    if !c.is_lowercase() {
        return false;
    }
    let mut up = c.to_uppercase();
    matches!((up.next(), up.next()), (Some(u), None) if u != c)
}

impl Alphabet {
    pub fn new(names: impl IntoIterator<Item = char>) -> Result<Self, WordError> {
        let mut out = Vec::new();
        for c in names {
            if !usable_name(c) {
                return Err(WordError::BadGeneratorName(c));
            }
            if out.contains(&c) {
                return Err(WordError::DuplicateGenerator(c));
            }
            out.push(c);
        }
        Ok(Alphabet { names: out })
    }

    /// The first `m` letters `a, b, c, ...`.
    pub fn standard(m: usize) -> Self {
        assert!(m <= 26, "standard alphabet holds at most 26 generators");
        Alphabet { names: ('a'..='z').take(m).collect() }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[char] {
        &self.names
    }

    pub fn name(&self, generator: u32) -> char {
        self.names[generator as usize]
    }

    pub fn index_of(&self, name: char) -> Option<u32> {
        self.names.iter().position(|&c| c == name).map(|i| i as u32)
    }

    pub fn contains_letter(&self, l: Letter) -> bool {
        (l.generator as usize) < self.names.len()
    }

    /// First symbol (in `a..z`, then Greek) that is not yet a generator name
    /// and not listed in `avoid`.
    pub fn fresh_name(&self, avoid: &[char]) -> char {
        ('a'..='z')
            .chain('α'..='ω')
            .find(|c| usable_name(*c) && !self.names.contains(c) && !avoid.contains(c))
            .expect("alphabet exhausted")
    }

    pub fn push(&mut self, name: char) -> Result<u32, WordError> {
        if !usable_name(name) {
            return Err(WordError::BadGeneratorName(name));
        }
        if self.names.contains(&name) {
            return Err(WordError::DuplicateGenerator(name));
        }
        self.names.push(name);
        Ok(self.names.len() as u32 - 1)
    }

    pub fn remove(&mut self, generator: u32) -> char {
        self.names.remove(generator as usize)
    }

    /// Freely reduce `letters`, rejecting letters outside this alphabet.
    pub fn free_reduce(&self, letters: &[Letter]) -> Result<Word, WordError> {
        if let Some(bad) = letters.iter().find(|l| !self.contains_letter(**l)) {
            return Err(WordError::LetterOutsideAlphabet(bad.generator as usize, self.len()));
        }
        Ok(Word::reduce(letters.iter().copied()))
    }

    pub fn letter_name(&self, l: Letter) -> char {
        let c = self.name(l.generator);
        if l.inverse {
            c.to_uppercase().next().unwrap()
        } else {
            c
        }
    }

    /// Text encoding: lowercase is a generator, uppercase its inverse, `1`
    /// the empty word.
    pub fn format(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.letters().iter().map(|l| self.letter_name(*l)).collect()
    }

    /// Parse the text encoding and freely reduce. Columns are 1-based.
    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        if text == "1" {
            return Ok(Word::empty());
        }
        let mut letters = Vec::with_capacity(text.len());
        for (i, c) in text.chars().enumerate() {
            let letter = if let Some(g) = self.index_of(c) {
                Letter::pos(g)
            } else {
                let mut low = c.to_lowercase();
                match (low.next(), low.next()) {
                    (Some(l), None) if l != c => match self.index_of(l) {
                        Some(g) => Letter::neg(g),
                        None => return Err(WordError::Parse { column: i + 1, found: c }),
                    },
                    _ => return Err(WordError::Parse { column: i + 1, found: c }),
                }
            };
            letters.push(letter);
        }
        if letters.is_empty() {
            return Err(WordError::Parse { column: 1, found: ' ' });
        }
        Ok(Word::reduce(letters))
    }
}

/// A freely reduced word.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

/// `input ≡ conjugator · core · conjugator⁻¹` with `core` cyclically reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicReduction {
    pub core: Word,
    pub conjugator: Word,
}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    /// Stack-based free reduction.
    pub fn reduce(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            match out.last() {
                Some(top) if top.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word(out)
    }

    /// Wraps letters already known to be freely reduced.
    pub(crate) fn from_reduced(letters: Vec<Letter>) -> Self {
        debug_assert!(letters.windows(2).all(|p| !p[0].cancels(p[1])));
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// Reduced product `self · other`.
    pub fn mul(&self, other: &Word) -> Word {
        let mut k = 0;
        while k < self.len() && k < other.len() && self.0[self.len() - 1 - k].cancels(other.0[k]) {
            k += 1;
        }
        let mut v = Vec::with_capacity(self.len() + other.len() - 2 * k);
        v.extend_from_slice(&self.0[..self.len() - k]);
        v.extend_from_slice(&other.0[k..]);
        Word(v)
    }

    /// Reduced product of several words.
    pub fn product<'a>(parts: impl IntoIterator<Item = &'a Word>) -> Word {
        Word::reduce(parts.into_iter().flat_map(|w| w.0.iter().copied()))
    }

    /// Subword `[start, end)`.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(f), Some(l)) => self.len() == 1 || !f.cancels(l),
            _ => true,
        }
    }

    pub fn cyclic_reduce(&self) -> CyclicReduction {
        let n = self.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.0[k].cancels(self.0[n - 1 - k]) {
            k += 1;
        }
        CyclicReduction { core: Word(self.0[k..n - k].to_vec()), conjugator: Word(self.0[..k].to_vec()) }
    }

    /// Cyclic permutation moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> Result<Word, WordError> {
        if !self.is_cyclically_reduced() {
            return Err(WordError::NotCyclicallyReduced);
        }
        if k >= self.len().max(1) {
            return Err(WordError::RotationOutOfRange { k, len: self.len() });
        }
        Ok(self.rotated(k))
    }

    /// Rotation without precondition checks; `k` is taken modulo the length.
    pub fn rotated(&self, k: usize) -> Word {
        if self.is_empty() {
            return Word::empty();
        }
        let k = k % self.len();
        let mut v = Vec::with_capacity(self.len());
        v.extend_from_slice(&self.0[k..]);
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    /// All rotations of a cyclically reduced word, rotation `k` at index `k`.
    pub fn rotations(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.len().max(1)).map(move |k| self.rotated(k))
    }

    /// Smallest `k` with `self.rotated(k) == target`.
    pub fn rotation_to(&self, target: &Word) -> Option<usize> {
        if self.len() != target.len() {
            return None;
        }
        if self.is_empty() {
            return Some(0);
        }
        (0..self.len()).find(|&k| {
            let n = self.len();
            (0..n).all(|t| self.0[(k + t) % n] == target.0[t])
        })
    }

    /// Occurrences of `x` plus occurrences of `x⁻¹`.
    pub fn occurrence_count(&self, x: Letter) -> usize {
        self.0.iter().filter(|l| l.generator == x.generator).count()
    }

    pub fn contains_generator(&self, generator: u32) -> bool {
        self.0.iter().any(|l| l.generator == generator)
    }

    /// Exponent sums per generator.
    pub fn exponent_vector(&self, m: usize) -> Vec<i64> {
        let mut v = vec![0; m];
        for l in &self.0 {
            v[l.generator as usize] += l.sign();
        }
        v
    }

    /// Relabel generators through `f`. Used when generators are removed.
    pub fn map_generators(&self, f: impl Fn(u32) -> u32) -> Word {
        Word(self.0.iter().map(|l| Letter::new(f(l.generator), l.inverse)).collect())
    }

    /// Drop generator `g` from the index space (letters above `g` shift down).
    pub fn remove_generator(&self, g: u32) -> Word {
        debug_assert!(!self.contains_generator(g));
        self.map_generators(|x| if x > g { x - 1 } else { x })
    }

    pub fn max_generator(&self) -> Option<u32> {
        self.0.iter().map(|l| l.generator).max()
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word::reduce(letters)
    }
}

impl fmt::Display for Word {
    /// Default rendering over the standard alphabet `a, b, c, ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            let c = (b'a' + (l.generator % 26) as u8) as char;
            if l.inverse {
                write!(f, "{}", c.to_ascii_uppercase())?;
            } else {
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

/// Parse a word over the standard alphabet large enough for every letter used.
/// Convenient in tests and examples.
pub fn w(text: &str) -> Word {
    Alphabet::standard(26).parse_word(text).expect("valid word literal")
}

/// Factors of length `len` of the cyclic word `word`, read off the doubled
/// word.
fn cyclic_factors(word: &Word, len: usize, out: &mut HashSet<Vec<Letter>>) {
    let n = word.len();
    if len == 0 || len > n {
        return;
    }
    for start in 0..n {
        out.insert((0..len).map(|t| word.0[(start + t) % n]).collect());
    }
}

/// Longest common factor of the cyclic words `w1^{±1}` and `w2^{±1}`.
///
/// Ties are broken by the lexicographically least witness.
pub fn max_common_cyclic_factor(w1: &Word, w2: &Word) -> (usize, Word) {
    let all = all_max_common_cyclic_factors(w1, w2);
    match all.into_iter().next() {
        Some(v) => (v.len(), v),
        None => (0, Word::empty()),
    }
}

/// Every common factor of maximal length, sorted.
pub fn all_max_common_cyclic_factors(w1: &Word, w2: &Word) -> Vec<Word> {
    let limit = w1.len().min(w2.len());
    let (i1, i2) = (w1.inverse(), w2.inverse());
    for len in (1..=limit).rev() {
        let mut a = HashSet::new();
        cyclic_factors(w1, len, &mut a);
        cyclic_factors(&i1, len, &mut a);
        let mut b = HashSet::new();
        cyclic_factors(w2, len, &mut b);
        cyclic_factors(&i2, len, &mut b);
        let common: BTreeSet<Vec<Letter>> = a.intersection(&b).cloned().collect();
        if !common.is_empty() {
            return common.into_iter().map(Word::from_reduced).collect();
        }
    }
    Vec::new()
}

/// Outcome of the successor-diversity check for one signed letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetterStatus {
    /// Distinct letters `b` with `ab` a factor of `w` or `w⁻¹`.
    pub successors: BTreeSet<Letter>,
    pub passes: bool,
}

/// Per signed letter, whether two distinct successors exist in `w` or `w⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyQReport {
    pub letters: BTreeMap<Letter, LetterStatus>,
}

impl PropertyQReport {
    pub fn holds(&self) -> bool {
        self.letters.values().all(|s| s.passes)
    }

    pub fn failing(&self) -> Vec<Letter> {
        self.letters.iter().filter(|(_, s)| !s.passes).map(|(l, _)| *l).collect()
    }
}

/// Successor sets over `m` generators, counting linear factors of `w` and
/// `w⁻¹`.
pub fn property_q_report(w: &Word, m: usize) -> PropertyQReport {
    let mut letters: BTreeMap<Letter, LetterStatus> = BTreeMap::new();
    for g in 0..m as u32 {
        for l in [Letter::pos(g), Letter::neg(g)] {
            letters.insert(l, LetterStatus { successors: BTreeSet::new(), passes: false });
        }
    }
    let inv = w.inverse();
    for word in [w, &inv] {
        for pair in word.0.windows(2) {
            if let Some(s) = letters.get_mut(&pair[0]) {
                s.successors.insert(pair[1]);
            }
        }
    }
    for s in letters.values_mut() {
        s.passes = s.successors.len() >= 2;
    }
    PropertyQReport { letters }
}

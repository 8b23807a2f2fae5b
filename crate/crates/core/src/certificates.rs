//! Checkable verdicts about a specific pair of relators: the common-subword
//! bound for length-reducing products, and the absence of any cancellative
//! product anywhere in the inversion/rotation orbit.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use crate::moves::{apply_move, Move, Presentation, System};
use crate::word::{all_max_common_cyclic_factors, Alphabet, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Conjecture4Report {
    pub pair: (String, String),
    pub lengths: (usize, usize),
    pub max_common_length: usize,
    pub witness: String,
    pub all_witnesses: Vec<String>,
    /// `|W1| + |W2| - 2·max_common_length`, as a signed value.
    pub reduced_total: i64,
    /// `max(|W1|, |W2|)`.
    pub threshold: usize,
    pub inequality_satisfiable: bool,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CcacInapplicabilityReport {
    pub pair: (String, String),
    pub orbit_size: usize,
    pub states_checked: usize,
    pub cct2_applicable_anywhere: bool,
    /// First state (in BFS order) where a cancellative product applies.
    pub applicable_at: Option<(String, String)>,
    pub length_invariant: usize,
    pub target_length: usize,
    /// True when no cancellative product exists in the orbit and the
    /// conserved length differs from the target, so the pair cannot reach
    /// the letter tuple without stabilization.
    pub certifies_non_trivializable: bool,
}

fn alphabet_for(words: &[&Word]) -> Alphabet {
    let m = words.iter().filter_map(|w| w.max_generator()).max().map_or(0, |g| g as usize + 1);
    Alphabet::standard(m.max(2))
}

fn show(a: &Alphabet, w: &Word) -> String {
    a.format(w)
}

/// Longest common cyclic factor of `w1^{±1}`, `w2^{±1}` and whether the
/// length-reduction inequality can hold for any common factor.
///
/// The reduced total is decreasing in `|V|`, so checking the maximum is
/// enough.
pub fn check_conjecture4(w1: &Word, w2: &Word) -> Conjecture4Report {
    let a = alphabet_for(&[w1, w2]);
    let all = all_max_common_cyclic_factors(w1, w2);
    let max_common_length = all.first().map_or(0, Word::len);
    let reduced_total = (w1.len() + w2.len()) as i64 - 2 * max_common_length as i64;
    let threshold = w1.len().max(w2.len());
    Conjecture4Report {
        pair: (show(&a, w1), show(&a, w2)),
        lengths: (w1.len(), w2.len()),
        max_common_length,
        witness: all.first().map_or_else(|| "1".to_string(), |v| show(&a, v)),
        all_witnesses: all.iter().map(|v| show(&a, v)).collect(),
        reduced_total,
        threshold,
        inequality_satisfiable: reduced_total < threshold as i64,
        note: "evaluated at the maximal common factor only; the left side decreases with |V|. \
               Failing this bound does not decide trivializability under unrestricted moves."
            .into(),
    }
}

/// Exhaust the CT1/CT3 orbit of `(w1, w2)` and try CCT2 both ways at every
/// state.
pub fn check_cct2_inapplicable(w1: &Word, w2: &Word) -> CcacInapplicabilityReport {
    let a = alphabet_for(&[w1, w2]);
    let orbit = ct13_orbit(w1, w2);
    let mut applicable_at = None;
    let mut states_checked = 0;
    for (u, v) in &orbit {
        states_checked += 1;
        let p = Presentation { alphabet: a.clone(), relators: vec![u.clone(), v.clone()] };
        let hit = [Move::CCT2(0, 1), Move::CCT2(1, 0)].iter().any(|m| apply_move(&p, m, System::Ccac).is_ok());
        if hit && applicable_at.is_none() {
            applicable_at = Some((show(&a, u), show(&a, v)));
        }
    }
    let length_invariant = w1.len() + w2.len();
    let applicable = applicable_at.is_some();
    CcacInapplicabilityReport {
        pair: (show(&a, w1), show(&a, w2)),
        orbit_size: orbit.len(),
        states_checked,
        cct2_applicable_anywhere: applicable,
        applicable_at,
        length_invariant,
        target_length: 2,
        certifies_non_trivializable: !applicable && length_invariant != 2,
    }
}

/// Every ordered pair reachable by inverting or rotating either word, in
/// BFS order from the input.
pub fn ct13_orbit(w1: &Word, w2: &Word) -> Vec<(Word, Word)> {
    let start = (w1.clone(), w2.clone());
    let mut seen = HashSet::from([start.clone()]);
    let mut order = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    let step = |w: &Word| -> Vec<Word> {
        if w.is_empty() {
            return vec![w.clone()];
        }
        vec![w.inverse(), w.rotated(1)]
    };
    while let Some((u, v)) = queue.pop_front() {
        let next = step(&u).into_iter().map(|x| (x, v.clone())).chain(step(&v).into_iter().map(|y| (u.clone(), y)));
        for s in next {
            if seen.insert(s.clone()) {
                order.push(s.clone());
                queue.push_back(s);
            }
        }
    }
    order
}

/// The orbit as a set, for comparison with other enumerations.
pub fn ct13_orbit_set(w1: &Word, w2: &Word) -> BTreeSet<(Word, Word)> {
    ct13_orbit(w1, w2).into_iter().collect()
}

impl Conjecture4Report {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("report serializes")
    }
}

impl CcacInapplicabilityReport {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("report serializes")
    }
}

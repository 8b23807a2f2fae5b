//! Presentations and the move systems that act on them.
//!
//! Three systems are supported:
//!
//! * `EN`: extended Nielsen moves `T1`, `T2`, `T3`, `T3C` plus the
//!   stabilizations `T4±` over freely reduced tuples;
//! * `CEN`: `CT1`, `CT2`, `CT3` over cyclically reduced tuples;
//! * `CCAC`: `CT1`, `CCT2`, `CT3` and the stabilizations `CCT4±`.
//!
//! Relator indices are 0-based in this API and 1-based in the text format.

mod macros;
mod transcript;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::word::{Alphabet, Letter, Word, WordError};

pub use macros::{hoist_stabilizations, rotate_to, scramble, stabilize_transcript, swap_macro, MoveRecorder};
pub use transcript::{
    parse_transcript, verify_transcript, PresentationFile, Transcript, TranscriptError, VerifyReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("relator index {index} out of range ({len} relators)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("two-index move needs distinct indices, got {0} twice")]
    SameIndex(usize),
    #[error("product of length {result} exceeds the cancellation bound {bound}")]
    NotCancellative { result: usize, bound: usize },
    #[error("letter {0:?} still occurs in another relator")]
    LetterStillUsed(char),
    #[error("relator {0} is not cyclically reduced")]
    NotCyclicallyReduced(usize),
    #[error("move {mv} does not belong to system {system}")]
    WrongSystem { mv: String, system: System },
    #[error("generator {0:?} is not in the alphabet")]
    UnknownLetter(char),
    #[error("relator {index} does not have the form {name}·U with {name} absent from U")]
    NotStabilizationRelator { index: usize, name: char },
    #[error("no relator of the form {0}^±1 to remove")]
    NoStabilizationRelator(char),
    #[error("macro failed: {0}")]
    MacroFailed(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Which move family a presentation or transcript lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum System {
    #[serde(rename = "EN")]
    En,
    #[serde(rename = "CEN")]
    Cen,
    #[serde(rename = "CCAC")]
    Ccac,
}

impl System {
    pub fn is_cyclic(self) -> bool {
        !matches!(self, System::En)
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            System::En => "EN",
            System::Cen => "CEN",
            System::Ccac => "CCAC",
        })
    }
}

impl std::str::FromStr for System {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "EN" => Ok(System::En),
            "CEN" => Ok(System::Cen),
            "CCAC" => Ok(System::Ccac),
            other => Err(format!("unknown move system {other:?}")),
        }
    }
}

/// An alphabet together with an ordered tuple of relators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Presentation {
    pub alphabet: Alphabet,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, relators: Vec<Word>) -> Result<Self, MoveError> {
        for r in &relators {
            if let Some(g) = r.max_generator() {
                if g as usize >= alphabet.len() {
                    return Err(WordError::LetterOutsideAlphabet(g as usize, alphabet.len()).into());
                }
            }
        }
        Ok(Presentation { alphabet, relators })
    }

    /// Parse relators over the standard alphabet with `rank` generators.
    pub fn parse(rank: usize, relators: &[&str]) -> Result<Self, MoveError> {
        let alphabet = Alphabet::standard(rank);
        let rels = relators.iter().map(|r| alphabet.parse_word(r)).collect::<Result<Vec<_>, _>>()?;
        Presentation::new(alphabet, rels)
    }

    /// `(a_1, ..., a_m)` over `alphabet`.
    pub fn letter_tuple(alphabet: Alphabet) -> Self {
        let relators = (0..alphabet.len() as u32).map(|g| Word::letter(Letter::pos(g))).collect();
        Presentation { alphabet, relators }
    }

    pub fn is_letter_tuple(&self) -> bool {
        self.relators.len() == self.alphabet.len()
            && self.relators.iter().enumerate().all(|(i, r)| r.letters() == [Letter::pos(i as u32)])
    }

    pub fn rank(&self) -> usize {
        self.relators.len()
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.relators.iter().all(Word::is_cyclically_reduced)
    }

    pub fn check_cyclic(&self) -> Result<(), MoveError> {
        match self.relators.iter().position(|r| !r.is_cyclically_reduced()) {
            Some(i) => Err(MoveError::NotCyclicallyReduced(i)),
            None => Ok(()),
        }
    }

    pub fn format_relator(&self, i: usize) -> String {
        self.alphabet.format(&self.relators[i])
    }

    /// Exponent-sum matrix (rows are relators).
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.relators.iter().map(|r| r.exponent_vector(self.alphabet.len())).collect()
    }

    /// Determinant of the exponent matrix of a square presentation, computed
    /// by fraction-free Gaussian elimination.
    pub fn abelian_determinant(&self) -> Option<i128> {
        let n = self.relators.len();
        if n != self.alphabet.len() {
            return None;
        }
        let mut m: Vec<Vec<i128>> =
            self.exponent_matrix().into_iter().map(|row| row.into_iter().map(i128::from).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if m[k][k] == 0 {
                match (k + 1..n).find(|&r| m[r][k] != 0) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return Some(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
                }
            }
            prev = m[k][k];
        }
        Some(if n == 0 { 1 } else { sign * m[n - 1][n - 1] })
    }

    fn check_index(&self, i: usize) -> Result<(), MoveError> {
        if i >= self.relators.len() {
            Err(MoveError::IndexOutOfRange { index: i, len: self.relators.len() })
        } else {
            Ok(())
        }
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<(), MoveError> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(MoveError::SameIndex(i));
        }
        Ok(())
    }

    fn generator_named(&self, name: char) -> Result<u32, MoveError> {
        self.alphabet.index_of(name).ok_or(MoveError::UnknownLetter(name))
    }

    /// Remove generator `g` and relator `index`, shifting generator ids.
    fn destabilize(&mut self, g: u32, index: usize) -> Result<(), MoveError> {
        let name = self.alphabet.name(g);
        for (k, r) in self.relators.iter().enumerate() {
            if k != index && r.contains_generator(g) {
                return Err(MoveError::LetterStillUsed(name));
            }
        }
        self.relators.remove(index);
        self.alphabet.remove(g);
        for r in &mut self.relators {
            *r = r.remove_generator(g);
        }
        Ok(())
    }
}

/// One rewriting step. Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Move {
    /// `W_i ← W_i⁻¹`.
    T1(usize),
    /// `W_i ← W_i W_j`.
    T2(usize, usize),
    /// `W_i ← S W_i S⁻¹`.
    T3(usize, Word),
    /// `W_i ←` rotation of `W_i` by `k`, freely reduced.
    T3C(usize, usize),
    T4Plus(char),
    T4Minus(char),
    CT1(usize),
    CT2(usize, usize),
    CT3(usize, usize),
    CCT2(usize, usize),
    CCT4Plus(char, Word),
    CCT4Minus(char),
}

impl Move {
    /// Systems in which this move is legal.
    pub fn belongs_to(&self, system: System) -> bool {
        use Move::*;
        match self {
            T1(_) | T2(..) | T3(..) | T3C(..) | T4Plus(_) | T4Minus(_) => system == System::En,
            CT1(_) | CT3(..) => matches!(system, System::Cen | System::Ccac),
            CT2(..) => system == System::Cen,
            CCT2(..) | CCT4Plus(..) | CCT4Minus(_) => system == System::Ccac,
        }
    }

    pub fn is_stabilization(&self) -> bool {
        matches!(self, Move::T4Plus(_) | Move::T4Minus(_) | Move::CCT4Plus(..) | Move::CCT4Minus(_))
    }

    /// Text form, 1-based, with words rendered over `alphabet` (the alphabet
    /// in force when the move is applied).
    pub fn format(&self, alphabet: &Alphabet) -> String {
        use Move::*;
        match self {
            T1(i) => format!("T1 {}", i + 1),
            T2(i, j) => format!("T2 {} {}", i + 1, j + 1),
            T3(i, s) => format!("T3 {} {}", i + 1, alphabet.format(s)),
            T3C(i, k) => format!("T3C {} {}", i + 1, k),
            T4Plus(x) => format!("T4+ {x}"),
            T4Minus(x) => format!("T4- {x}"),
            CT1(i) => format!("CT1 {}", i + 1),
            CT2(i, j) => format!("CT2 {} {}", i + 1, j + 1),
            CT3(i, k) => format!("CT3 {} {}", i + 1, k),
            CCT2(i, j) => format!("CCT2 {} {}", i + 1, j + 1),
            CCT4Plus(x, u) => format!("CCT4+ {x} {}", alphabet.format(u)),
            CCT4Minus(x) => format!("CCT4- {x}"),
        }
    }
}

/// Reduced-then-cyclically-reduced product used by `CT2` and `CCT2`.
pub fn cyclic_product(u: &Word, v: &Word) -> Word {
    u.mul(v).cyclic_reduce().core
}

/// Apply `m` to `p` under `system`, returning the new presentation.
pub fn apply_move(p: &Presentation, m: &Move, system: System) -> Result<Presentation, MoveError> {
    let mut q = p.clone();
    apply_in_place(&mut q, m, system)?;
    Ok(q)
}

pub(crate) fn apply_in_place(p: &mut Presentation, m: &Move, system: System) -> Result<(), MoveError> {
    if !m.belongs_to(system) {
        return Err(MoveError::WrongSystem { mv: m.format(&p.alphabet), system });
    }
    use Move::*;
    match m {
        T1(i) | CT1(i) => {
            p.check_index(*i)?;
            if system.is_cyclic() && !p.relators[*i].is_cyclically_reduced() {
                return Err(MoveError::NotCyclicallyReduced(*i));
            }
            p.relators[*i] = p.relators[*i].inverse();
        }
        T2(i, j) => {
            p.check_pair(*i, *j)?;
            p.relators[*i] = p.relators[*i].mul(&p.relators[*j]);
        }
        T3(i, s) => {
            p.check_index(*i)?;
            if let Some(g) = s.max_generator() {
                if g as usize >= p.alphabet.len() {
                    return Err(WordError::LetterOutsideAlphabet(g as usize, p.alphabet.len()).into());
                }
            }
            p.relators[*i] = Word::product([s, &p.relators[*i], &s.inverse()]);
        }
        T3C(i, k) => {
            p.check_index(*i)?;
            let r = &p.relators[*i];
            if *k >= r.len().max(1) {
                return Err(WordError::RotationOutOfRange { k: *k, len: r.len() }.into());
            }
            let rotated = Word::reduce(r.letters()[*k..].iter().chain(&r.letters()[..*k]).copied());
            p.relators[*i] = rotated;
        }
        CT3(i, k) => {
            p.check_index(*i)?;
            if !p.relators[*i].is_cyclically_reduced() {
                return Err(MoveError::NotCyclicallyReduced(*i));
            }
            p.relators[*i] = p.relators[*i].rotate(*k)?;
        }
        CT2(i, j) | CCT2(i, j) => {
            p.check_pair(*i, *j)?;
            for k in [*i, *j] {
                if !p.relators[k].is_cyclically_reduced() {
                    return Err(MoveError::NotCyclicallyReduced(k));
                }
            }
            let (wi, wj) = (&p.relators[*i], &p.relators[*j]);
            let result = cyclic_product(wi, wj);
            if matches!(m, CCT2(..)) {
                let bound = wi.len().max(wj.len()) - wi.len().min(wj.len());
                if result.len() > bound {
                    return Err(MoveError::NotCancellative { result: result.len(), bound });
                }
            }
            p.relators[*i] = result;
        }
        T4Plus(x) => {
            let g = p.alphabet.push(*x)?;
            p.relators.push(Word::letter(Letter::pos(g)));
        }
        CCT4Plus(x, u) => {
            if let Some(g) = u.max_generator() {
                if g as usize >= p.alphabet.len() {
                    return Err(WordError::LetterOutsideAlphabet(g as usize, p.alphabet.len()).into());
                }
            }
            let g = p.alphabet.push(*x)?;
            let mut letters = vec![Letter::pos(g)];
            letters.extend_from_slice(u.letters());
            p.relators.push(Word::reduce(letters));
        }
        T4Minus(x) => {
            let g = p.generator_named(*x)?;
            let index = p
                .relators
                .iter()
                .position(|r| r.len() == 1 && r.letters()[0].generator == g)
                .ok_or(MoveError::NoStabilizationRelator(*x))?;
            p.destabilize(g, index)?;
        }
        CCT4Minus(x) => {
            let g = p.generator_named(*x)?;
            let index = p
                .relators
                .iter()
                .position(|r| r.first() == Some(Letter::pos(g)) && !r.letters()[1..].iter().any(|l| l.generator == g))
                .ok_or(MoveError::NoStabilizationRelator(*x))?;
            p.destabilize(g, index)?;
        }
    }
    Ok(())
}

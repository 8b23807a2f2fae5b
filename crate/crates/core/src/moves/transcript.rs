use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{apply_in_place, Move, MoveError, Presentation, System};
use crate::word::{Alphabet, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranscriptError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Word { line: usize, source: WordError },
    #[error("transcript mixes move systems ({0} and {1})")]
    MixedSystems(System, System),
    #[error("presentation file: {0}")]
    File(String),
}

/// An ordered list of moves of one system, with optional comment lines.
///
/// `notes` are `(step index, text)` pairs; a note is printed as a `#` line
/// just before the step with that index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub system: System,
    pub steps: Vec<Move>,
    pub notes: Vec<(usize, String)>,
}

impl Transcript {
    pub fn new(system: System) -> Self {
        Transcript { system, steps: Vec::new(), notes: Vec::new() }
    }

    pub fn from_steps(system: System, steps: Vec<Move>) -> Self {
        Transcript { system, steps, notes: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push(&mut self, m: Move) {
        self.steps.push(m);
    }

    /// Attach a comment before the next step pushed.
    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push((self.steps.len(), text.into()));
    }

    /// Append `other`, keeping its notes aligned with its steps.
    pub fn append(&mut self, other: Transcript) {
        let offset = self.steps.len();
        self.notes.extend(other.notes.into_iter().map(|(k, t)| (k + offset, t)));
        self.steps.extend(other.steps);
    }

    /// Replay on `p`. On failure returns the failing step index and error.
    pub fn replay(&self, p: &Presentation) -> Result<Presentation, (usize, MoveError)> {
        let mut q = p.clone();
        for (k, m) in self.steps.iter().enumerate() {
            apply_in_place(&mut q, m, self.system).map_err(|e| (k, e))?;
        }
        Ok(q)
    }

    /// Presentations before each step and after the last (`len + 1` entries).
    pub fn trace(&self, p: &Presentation) -> Result<Vec<Presentation>, (usize, MoveError)> {
        let mut out = vec![p.clone()];
        let mut q = p.clone();
        for (k, m) in self.steps.iter().enumerate() {
            apply_in_place(&mut q, m, self.system).map_err(|e| (k, e))?;
            out.push(q.clone());
        }
        Ok(out)
    }

    /// Text form. `alphabet` is the alphabet of the presentation the
    /// transcript starts from; it is tracked through stabilizations so word
    /// parameters print with the right names.
    pub fn format(&self, alphabet: &Alphabet) -> String {
        let mut out = format!("# system: {}\n", self.system);
        let mut alphabet = alphabet.clone();
        let mut notes = self.notes.iter().peekable();
        for (k, m) in self.steps.iter().enumerate() {
            while let Some((_, text)) = notes.next_if(|(at, _)| *at <= k) {
                for line in text.lines() {
                    out.push_str(&format!("# {line}\n"));
                }
            }
            out.push_str(&m.format(&alphabet));
            out.push('\n');
            track_alphabet(&mut alphabet, m);
        }
        for (_, text) in notes {
            for line in text.lines() {
                out.push_str(&format!("# {line}\n"));
            }
        }
        out
    }
}

fn track_alphabet(alphabet: &mut Alphabet, m: &Move) {
    match m {
        Move::T4Plus(x) | Move::CCT4Plus(x, _) => {
            let _ = alphabet.push(*x);
        }
        Move::T4Minus(x) | Move::CCT4Minus(x) => {
            if let Some(g) = alphabet.index_of(*x) {
                alphabet.remove(g);
            }
        }
        _ => {}
    }
}

fn system_of(m: &Move) -> Option<System> {
    use Move::*;
    match m {
        T1(_) | T2(..) | T3(..) | T3C(..) | T4Plus(_) | T4Minus(_) => Some(System::En),
        CT2(..) => Some(System::Cen),
        CCT2(..) | CCT4Plus(..) | CCT4Minus(_) => Some(System::Ccac),
        CT1(_) | CT3(..) => None,
    }
}

/// Parse the line-oriented transcript format. A `# system: NAME` comment
/// fixes the system; otherwise it is inferred from the moves (defaulting to
/// CEN when only `CT1`/`CT3` appear).
pub fn parse_transcript(text: &str, alphabet: &Alphabet) -> Result<Transcript, TranscriptError> {
    let mut declared: Option<System> = None;
    let mut inferred: Option<System> = None;
    let mut alphabet = alphabet.clone();
    let mut t = Transcript::new(System::Cen);
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(sys) = comment.strip_prefix("system:") {
                declared = Some(sys.trim().parse().map_err(|msg| TranscriptError::Syntax { line: line_no, msg })?);
            } else {
                t.note(comment);
            }
            continue;
        }
        let m = parse_move(line, &alphabet, line_no)?;
        if let Some(sys) = system_of(&m) {
            match inferred {
                Some(prev) if prev != sys => return Err(TranscriptError::MixedSystems(prev, sys)),
                _ => inferred = Some(sys),
            }
        }
        track_alphabet(&mut alphabet, &m);
        t.push(m);
    }
    t.system = match (declared, inferred) {
        (Some(d), Some(i)) if d != i => return Err(TranscriptError::MixedSystems(d, i)),
        (Some(d), _) => d,
        (None, Some(i)) => i,
        (None, None) => System::Cen,
    };
    Ok(t)
}

fn parse_move(line: &str, alphabet: &Alphabet, line_no: usize) -> Result<Move, TranscriptError> {
    let syntax = |msg: String| TranscriptError::Syntax { line: line_no, msg };
    let fields: Vec<&str> = line.split_whitespace().collect();
    let index = |k: usize| -> Result<usize, TranscriptError> {
        let s = fields.get(k).ok_or_else(|| syntax(format!("missing field {k}")))?;
        let v: usize = s.parse().map_err(|_| syntax(format!("bad index {s:?}")))?;
        if v == 0 {
            return Err(syntax("indices are 1-based".into()));
        }
        Ok(v - 1)
    };
    let number = |k: usize| -> Result<usize, TranscriptError> {
        let s = fields.get(k).ok_or_else(|| syntax(format!("missing field {k}")))?;
        s.parse().map_err(|_| syntax(format!("bad number {s:?}")))
    };
    let name = |k: usize| -> Result<char, TranscriptError> {
        let s = fields.get(k).ok_or_else(|| syntax(format!("missing field {k}")))?;
        let mut cs = s.chars();
        match (cs.next(), cs.next()) {
            (Some(c), None) => Ok(c),
            _ => Err(syntax(format!("bad letter name {s:?}"))),
        }
    };
    let word = |k: usize, alphabet: &Alphabet| {
        let s = fields.get(k).ok_or_else(|| syntax(format!("missing field {k}")))?;
        alphabet.parse_word(s).map_err(|source| TranscriptError::Word { line: line_no, source })
    };
    let arity = |n: usize| {
        if fields.len() != n {
            Err(syntax(format!("{} expects {} fields, got {}", fields[0], n - 1, fields.len() - 1)))
        } else {
            Ok(())
        }
    };
    let m = match fields[0] {
        "T1" => {
            arity(2)?;
            Move::T1(index(1)?)
        }
        "T2" => {
            arity(3)?;
            Move::T2(index(1)?, index(2)?)
        }
        "T3" => {
            arity(3)?;
            Move::T3(index(1)?, word(2, alphabet)?)
        }
        "T3C" => {
            arity(3)?;
            Move::T3C(index(1)?, number(2)?)
        }
        "T4+" => {
            arity(2)?;
            Move::T4Plus(name(1)?)
        }
        "T4-" => {
            arity(2)?;
            Move::T4Minus(name(1)?)
        }
        "CT1" => {
            arity(2)?;
            Move::CT1(index(1)?)
        }
        "CT2" => {
            arity(3)?;
            Move::CT2(index(1)?, index(2)?)
        }
        "CT3" => {
            arity(3)?;
            Move::CT3(index(1)?, number(2)?)
        }
        "CCT2" => {
            arity(3)?;
            Move::CCT2(index(1)?, index(2)?)
        }
        "CCT4+" => {
            arity(3)?;
            Move::CCT4Plus(name(1)?, word(2, alphabet)?)
        }
        "CCT4-" => {
            arity(2)?;
            Move::CCT4Minus(name(1)?)
        }
        other => return Err(syntax(format!("unknown move {other:?}"))),
    };
    Ok(m)
}

/// Outcome of replaying a transcript.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub accepted: bool,
    pub failing_step: Option<usize>,
    pub reason: String,
    pub final_presentation: Option<Presentation>,
}

/// Replay `t` on `p0`, rejecting at the first inapplicable move and, when
/// `expected` is given, on any letter-for-letter mismatch of the final tuple.
pub fn verify_transcript(p0: &Presentation, t: &Transcript, expected: Option<&Presentation>) -> VerifyReport {
    if t.system.is_cyclic() {
        if let Err(e) = p0.check_cyclic() {
            return VerifyReport {
                accepted: false,
                failing_step: None,
                reason: format!("initial presentation invalid for {}: {e}", t.system),
                final_presentation: None,
            };
        }
    }
    let fin = match t.replay(p0) {
        Ok(q) => q,
        Err((k, e)) => {
            return VerifyReport {
                accepted: false,
                failing_step: Some(k),
                reason: format!("step {} ({}) rejected: {e}", k + 1, t.steps[k].format(&p0.alphabet)),
                final_presentation: None,
            }
        }
    };
    if let Some(exp) = expected {
        if &fin != exp {
            let shown = |p: &Presentation| {
                let rels: Vec<String> = (0..p.rank()).map(|i| p.format_relator(i)).collect();
                format!("({})", rels.join(", "))
            };
            let mut reason = format!("mismatch: actual {} expected {}", shown(&fin), shown(exp));
            if fin.relators.iter().any(|r| r.is_empty()) {
                reason.push_str("; final tuple contains empty relators");
            }
            if fin.alphabet != exp.alphabet {
                reason.push_str("; alphabets differ");
            }
            return VerifyReport { accepted: false, failing_step: None, reason, final_presentation: Some(fin) };
        }
    }
    VerifyReport { accepted: true, failing_step: None, reason: "accepted".into(), final_presentation: Some(fin) }
}

/// On-disk presentation document:
///
/// ```toml
/// alphabet = ["a", "b"]
/// relators = ["ab", "b"]
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub alphabet: Vec<String>,
    pub relators: Vec<String>,
}

impl PresentationFile {
    pub fn from_presentation(p: &Presentation) -> Self {
        PresentationFile {
            alphabet: p.alphabet.names().iter().map(|c| c.to_string()).collect(),
            relators: (0..p.rank()).map(|i| p.format_relator(i)).collect(),
        }
    }

    pub fn to_presentation(&self) -> Result<Presentation, TranscriptError> {
        let mut names = Vec::new();
        for n in &self.alphabet {
            let mut cs = n.chars();
            match (cs.next(), cs.next()) {
                (Some(c), None) => names.push(c),
                _ => return Err(TranscriptError::File(format!("bad generator name {n:?}"))),
            }
        }
        let alphabet = Alphabet::new(names).map_err(|e| TranscriptError::File(e.to_string()))?;
        let relators = self
            .relators
            .iter()
            .map(|r| alphabet.parse_word(r))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| TranscriptError::File(e.to_string()))?;
        Presentation::new(alphabet, relators).map_err(|e| TranscriptError::File(e.to_string()))
    }

    pub fn parse(text: &str) -> Result<Presentation, TranscriptError> {
        let f: PresentationFile = toml::from_str(text).map_err(|e| TranscriptError::File(e.to_string()))?;
        f.to_presentation()
    }

    pub fn render(p: &Presentation) -> String {
        toml::to_string(&PresentationFile::from_presentation(p)).expect("presentation serializes")
    }
}

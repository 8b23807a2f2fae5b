//! Constructive translation of EN transcripts into CEN and CCAC transcripts.

mod bridged;
mod classify;
mod pipeline;
mod stab;

use thiserror::Error;

use crate::moves::{MoveError, Presentation, Transcript};
use crate::word::{Word, WordError};

pub use bridged::{
    conjugation_macro, eliminate_single_occurrence, insertion_macro, make_property_q, make_property_q_around,
    remove_insertion, Insertion, PropertyQPlan,
};
pub use classify::{classify_product, FormCase, FormClassification};
pub use pipeline::{translate_en_to_ccac, translate_en_to_cen, ConjugatorState};
pub use stab::{f1_stab_macro, f1_stab_macro_at, f2_stab_macro, f2_stab_macro_at};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TranslateError {
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("product cancels completely")]
    EmptyProduct,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("not cyclically reduced: {0}")]
    NotReduced(String),
    #[error("no insertion fixes letter {letter}: {detail}")]
    PlanningFailed { letter: String, detail: String },
    #[error("conjugation recursion stuck: {0}")]
    RecursionStuck(String),
    #[error("rank oracle exhausted: {0}")]
    OracleExhausted(String),
    #[error("input transcript does not trivialize: {0}")]
    InputNotTrivializing(String),
    #[error("constructed transcript failed verification: {0}")]
    Unverified(String),
}

/// Supplies CEN trivializations for presentations of the trivial group.
///
/// Used for the rank-lowering step when a generator occurs exactly once in
/// some relator. A returned transcript must replay to the letter tuple.
pub trait RankOracle {
    fn trivialize(&self, p: &Presentation) -> Result<Transcript, TranslateError>;
}

impl<F> RankOracle for F
where
    F: Fn(&Presentation) -> Result<Transcript, TranslateError>,
{
    fn trivialize(&self, p: &Presentation) -> Result<Transcript, TranslateError> {
        self(p)
    }
}

/// Concatenate without cancellation; `None` if any junction cancels.
pub(crate) fn concat(parts: &[&Word]) -> Option<Word> {
    let total: usize = parts.iter().map(|w| w.len()).sum();
    let w = Word::product(parts.iter().copied());
    (w.len() == total).then_some(w)
}

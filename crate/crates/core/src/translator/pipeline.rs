use super::{
    classify_product, conjugation_macro, eliminate_single_occurrence, f1_stab_macro_at, f2_stab_macro_at,
    make_property_q_around, remove_insertion, FormCase, FormClassification, RankOracle, TranslateError,
};
use crate::moves::{
    apply_move, hoist_stabilizations, verify_transcript, Move, MoveRecorder, Presentation, System, Transcript,
};
use crate::word::{Letter, Word};

/// Relates the cyclically reduced tuple kept by a translator to the words
/// of the EN replay: `S_i·core_i·S_i⁻¹` reduces to relator `i` of `en`.
#[derive(Debug, Clone)]
pub struct ConjugatorState {
    pub en: Presentation,
}

impl ConjugatorState {
    /// `S_i` for the stored core `stored` of slot `i`, or `None` if `stored`
    /// is not a rotation of the cyclic reduction of the EN relator.
    pub fn conjugator(&self, i: usize, stored: &Word) -> Option<Word> {
        let cr = self.en.relators[i].cyclic_reduce();
        let r = cr.core.rotation_to(stored)?;
        Some(cr.conjugator.mul(&cr.core.slice(0, r)))
    }
}

enum Step {
    Continue,
    Finished,
}

struct Pipeline<'a> {
    rec: MoveRecorder,
    state: ConjugatorState,
    oracle: Option<&'a dyn RankOracle>,
}

impl Pipeline<'_> {
    fn system(&self) -> System {
        self.rec.transcript.system
    }

    fn conj(&self, i: usize) -> Result<Word, TranslateError> {
        self.state
            .conjugator(i, self.rec.relator(i))
            .ok_or_else(|| TranslateError::Unverified(format!("relator {} drifted from the EN replay", i + 1)))
    }

    fn t2(&mut self, i: usize, j: usize) -> Result<Step, TranslateError> {
        let (s1, s2) = (self.conj(i)?, self.conj(j)?);
        let (u1, u2) = (self.rec.relator(i).clone(), self.rec.relator(j).clone());
        let f = classify_product(&s1, &u1, &s2, &u2)?;
        let ccac = self.system() == System::Ccac;
        let mul = if ccac { Move::CCT2(i, j) } else { Move::CT2(i, j) };
        self.rec.note(format!("T2 {} {}: case {:?}", i + 1, j + 1, f.case));
        match f.case {
            FormCase::F2 => {
                self.rec.rotate_to(i, &f.u1)?;
                self.rec.rotate_to(j, &f.u2)?;
                if ccac {
                    let t = f2_stab_macro_at(&self.rec.current, i, j, &f.d, &f.p, &f.e)?;
                    self.rec.append(t)?;
                } else {
                    self.rec.apply(mul)?;
                }
            }
            FormCase::F3 => {
                self.rec.rotate_to(i, &f.u1.rotated(f.u1.len() - f.c.len()))?;
                self.rec.rotate_to(j, &f.u2)?;
                self.rec.apply(mul)?;
            }
            FormCase::F4 => {
                self.rec.rotate_to(i, &f.u1)?;
                self.rec.rotate_to(j, &f.u2.rotated(f.d.len() + f.c.len()))?;
                self.rec.apply(mul)?;
            }
            FormCase::F1 => {
                self.rec.rotate_to(i, &f.u1)?;
                self.rec.rotate_to(j, &f.u2)?;
                if ccac {
                    let t = f1_stab_macro_at(&self.rec.current, i, j, &f.c)?;
                    self.rec.append(t)?;
                } else {
                    return self.f1_cen(i, j, &f);
                }
            }
        }
        Ok(Step::Continue)
    }

    fn f1_cen(&mut self, i: usize, j: usize, f: &FormClassification) -> Result<Step, TranslateError> {
        let p = self.rec.current.clone();
        for k in 0..p.rank() {
            for g in 0..p.alphabet.len() as u32 {
                if p.relators[k].occurrence_count(Letter::pos(g)) == 1 {
                    let oracle = self.oracle.expect("CEN pipeline has an oracle");
                    self.rec.note(format!(
                        "{} occurs once in relator {}: eliminate it and stop replaying",
                        p.alphabet.name(g),
                        k + 1
                    ));
                    let t = eliminate_single_occurrence(&p, k, Letter::pos(g), oracle)?;
                    self.rec.append(t)?;
                    return Ok(Step::Finished);
                }
            }
        }
        // Successor diversification needs distinct end letters; insert into a rotation that has
        // them, keeping the F1 cut point free of insertions.
        let u1 = &f.u1;
        let r = (0..u1.len()).find(|&r| {
            let rot = u1.rotated(r);
            rot.first() != rot.last()
        });
        let r = r.ok_or_else(|| TranslateError::PlanningFailed {
            letter: "-".into(),
            detail: "every rotation of U1 starts and ends with the same letter".into(),
        })?;
        self.rec.rotate_to(i, &u1.rotated(r))?;
        let plan = make_property_q_around(&self.rec.current, i, u1.len() - r)?;
        self.rec.append(plan.transcript.clone())?;
        let v_prime = plan.v.rotated(plan.boundary);
        let t = conjugation_macro(&self.rec.current, i, j, &f.c, &v_prime)?;
        self.rec.append(t)?;
        for ins in plan.insertions.iter().rev() {
            let len = self.rec.relator(i).len() - 2 * f.c.len() - f.u2.len();
            let pos = (ins.cut + len - ins.boundary) % len;
            remove_insertion(&mut self.rec, i, pos, &ins.word, ins.source)?;
        }
        Ok(Step::Continue)
    }
}

fn run(
    p0: &Presentation,
    t: &Transcript,
    system: System,
    oracle: Option<&dyn RankOracle>,
) -> Result<Transcript, TranslateError> {
    if t.system != System::En {
        return Err(TranslateError::Precondition(format!("expected an EN transcript, got {}", t.system)));
    }
    p0.check_cyclic()?;
    let letters = Presentation::letter_tuple(p0.alphabet.clone());
    let r = verify_transcript(p0, t, Some(&letters));
    if !r.accepted {
        return Err(TranslateError::InputNotTrivializing(r.reason));
    }
    let t = hoist_stabilizations(p0, t)?;
    let mut pipe =
        Pipeline { rec: MoveRecorder::new(p0.clone(), system), state: ConjugatorState { en: p0.clone() }, oracle };
    for m in &t.steps {
        let step = match m {
            Move::T1(i) => {
                pipe.rec.apply(Move::CT1(*i))?;
                Step::Continue
            }
            Move::T2(i, j) => pipe.t2(*i, *j)?,
            Move::T3(..) | Move::T3C(..) => Step::Continue,
            Move::T4Plus(x) => {
                pipe.rec.apply(Move::CCT4Plus(*x, Word::empty()))?;
                Step::Continue
            }
            Move::T4Minus(x) => {
                let g = pipe.rec.current.alphabet.index_of(*x).ok_or(crate::moves::MoveError::UnknownLetter(*x))?;
                let s = (0..pipe.rec.current.rank())
                    .find(|&s| pipe.rec.relator(s).letters() == [Letter::neg(g)])
                    .filter(|&s| pipe.rec.relator(s).len() == 1);
                if let Some(s) = s {
                    pipe.rec.apply(Move::CT1(s))?;
                }
                pipe.rec.apply(Move::CCT4Minus(*x))?;
                Step::Continue
            }
            _ => unreachable!("EN transcript"),
        };
        if let Step::Finished = step {
            break;
        }
        pipe.state.en = apply_move(&pipe.state.en, m, System::En)?;
    }
    let out = pipe.rec.finish();
    let r = verify_transcript(p0, &out, Some(&letters));
    if !r.accepted {
        return Err(TranslateError::Unverified(r.reason));
    }
    Ok(out)
}

/// Translate an EN trivialization (stabilizations allowed) into a CCAC
/// trivialization. F1 and F2 products go through the stabilization macros,
/// swallowed relators through a single cancellative multiplication.
pub fn translate_en_to_ccac(p0: &Presentation, t: &Transcript) -> Result<Transcript, TranslateError> {
    run(p0, t, System::Ccac, None)
}

/// Translate an EN trivialization without stabilizations into a CEN
/// trivialization. A bridged product either triggers the rank-lowering
/// elimination (with `oracle` for the smaller presentation) or goes through
/// successor diversification, the conjugation recursion and the removal of
/// the inserted blocks.
pub fn translate_en_to_cen(
    p0: &Presentation,
    t: &Transcript,
    oracle: &dyn RankOracle,
) -> Result<Transcript, TranslateError> {
    if t.steps.iter().any(Move::is_stabilization) {
        return Err(TranslateError::Precondition("CEN translation takes transcripts without stabilizations".into()));
    }
    run(p0, t, System::Cen, Some(oracle))
}

//! CEN procedures for the bridged (F1) product: elimination of a generator
//! that occurs once, simple 1-insertions, successor diversification and the
//! conjugation recursion.

use super::{concat, RankOracle, TranslateError};
use crate::moves::{swap_macro, verify_transcript, Move, MoveRecorder, Presentation, System, Transcript};
use crate::word::{property_q_report, Alphabet, Letter, Word};

fn not_trivial(detail: &str) -> TranslateError {
    TranslateError::Precondition(format!("presentation cannot define the trivial group: {detail}"))
}

/// Reduce a presentation in which generator `g` occurs exactly once in
/// relator `i` to the letter tuple, using `oracle` for the presentation on
/// the remaining generators.
pub fn eliminate_single_occurrence(
    p: &Presentation,
    i: usize,
    g: Letter,
    oracle: &dyn RankOracle,
) -> Result<Transcript, TranslateError> {
    if i >= p.rank() {
        return Err(TranslateError::Precondition(format!("no relator {}", i + 1)));
    }
    p.check_cyclic()?;
    if p.relators.iter().any(Word::is_empty) {
        return Err(TranslateError::Precondition("empty relator".into()));
    }
    let gi = g.generator;
    if p.relators[i].occurrence_count(g) != 1 {
        return Err(TranslateError::Precondition(format!(
            "{} occurs {} times in relator {}",
            p.alphabet.name(gi),
            p.relators[i].occurrence_count(g),
            i + 1
        )));
    }
    let mut rec = MoveRecorder::new(p.clone(), System::Cen);
    rec.note(format!("eliminate {} using relator {}", p.alphabet.name(gi), i + 1));
    let gp = Letter::pos(gi);
    let wi = rec.relator(i).clone();
    let pos = wi.letters().iter().position(|l| l.generator == gi).unwrap();
    let head = if wi.letters()[pos] == gp { wi.rotated(pos) } else { wi.inverse().rotated(wi.len() - 1 - pos) };
    rec.rotate_to(i, &head)?;
    let u0 = head.slice(1, head.len());
    let head_inv = head.inverse().rotated(u0.len());

    for k in (0..p.rank()).filter(|&k| k != i) {
        while rec.relator(k).contains_generator(gi) {
            let wk = rec.relator(k).clone();
            let before = wk.occurrence_count(gp);
            let q = wk.letters().iter().position(|l| l.generator == gi).unwrap();
            rec.rotate_to(k, &wk.rotated(q + 1))?;
            if wk.letters()[q] == gp {
                rec.rotate_to(i, &head_inv)?;
                rec.apply(Move::CT2(k, i))?;
                rec.rotate_to(i, &head)?;
            } else {
                rec.apply(Move::CT2(k, i))?;
            }
            if rec.relator(k).is_empty() {
                return Err(not_trivial("a relator cancelled completely"));
            }
            debug_assert!(rec.relator(k).occurrence_count(gp) < before);
        }
    }

    let m = p.rank();
    let slot_of = |k: usize| if k < i { k } else { k + 1 };
    let full_gen = |h: u32| if h < gi { h } else { h + 1 };
    if m > 1 {
        let mut names = p.alphabet.names().to_vec();
        names.remove(gi as usize);
        let sub_alphabet = Alphabet::new(names)?;
        let sub_rels: Vec<Word> = (0..m).filter(|&k| k != i).map(|k| rec.relator(k).remove_generator(gi)).collect();
        let sub = Presentation::new(sub_alphabet, sub_rels)?;
        let t = oracle.trivialize(&sub)?;
        let r = verify_transcript(&sub, &t, Some(&Presentation::letter_tuple(sub.alphabet.clone())));
        if t.system != System::Cen || !r.accepted {
            return Err(TranslateError::OracleExhausted(format!("oracle transcript rejected: {}", r.reason)));
        }
        rec.note(format!("rank {} subpresentation solved by the oracle", m - 1));
        for mv in t.steps {
            rec.apply(match mv {
                Move::CT1(a) => Move::CT1(slot_of(a)),
                Move::CT2(a, b) => Move::CT2(slot_of(a), slot_of(b)),
                Move::CT3(a, k) => Move::CT3(slot_of(a), k),
                other => return Err(TranslateError::OracleExhausted(format!("unexpected oracle move {other:?}"))),
            })?;
        }
    }

    // relator i is g·U0 and every other slot holds a single positive letter
    let holder = |gen: u32| (0..m - 1).find(|&k| full_gen(k as u32) == gen).map(slot_of);
    rec.note("strip the tail of the eliminating relator");
    while rec.relator(i).len() > 1 {
        let l = rec.relator(i).last().unwrap();
        let s = holder(l.generator).ok_or_else(|| not_trivial("tail letter has no holder"))?;
        if l.inverse {
            rec.apply(Move::CT2(i, s))?;
        } else {
            rec.apply(Move::CT1(s))?;
            rec.apply(Move::CT2(i, s))?;
            rec.apply(Move::CT1(s))?;
        }
    }
    sort_letter_slots(&mut rec)?;
    Ok(rec.finish())
}

/// Permute a tuple of single positive letters into alphabet order.
fn sort_letter_slots(rec: &mut MoveRecorder) -> Result<(), TranslateError> {
    let m = rec.current.rank();
    for k in 0..m {
        let s = (k..m)
            .find(|&s| rec.relator(s).letters() == [Letter::pos(k as u32)])
            .ok_or_else(|| not_trivial("slots do not hold the generators"))?;
        if s != k {
            let t = swap_macro(&rec.current, k, s)?;
            rec.append(t)?;
        }
    }
    Ok(())
}

/// One simple 1-insertion, in the coordinates of the relator at the time
/// it was made.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Insertion {
    pub cut: usize,
    pub source: usize,
    pub invert: bool,
    pub rotation: usize,
    pub word: Word,
    /// Position of the protected boundary after this insertion.
    pub boundary: usize,
}

/// `W_i = A·B` becomes `A·C·B` with `C` the rotation `rot` of `W_j` (or of
/// its inverse). Returns the forward macro and the macro undoing it.
pub fn insertion_macro(
    p: &Presentation,
    i: usize,
    cut: usize,
    j: usize,
    invert: bool,
    rot: usize,
) -> Result<(Transcript, Transcript), TranslateError> {
    if i == j || i >= p.rank() || j >= p.rank() {
        return Err(TranslateError::Precondition("insertion needs two distinct relators".into()));
    }
    p.check_cyclic()?;
    let wi = &p.relators[i];
    if cut == 0 || cut >= wi.len() {
        return Err(TranslateError::Precondition(format!(
            "cut {cut} is not interior to a word of length {}",
            wi.len()
        )));
    }
    let src = if invert { p.relators[j].inverse() } else { p.relators[j].clone() };
    if rot >= src.len().max(1) {
        return Err(TranslateError::Precondition(format!("rotation {rot} out of range")));
    }
    let c = src.rotated(rot);
    let (a, b) = (wi.slice(0, cut), wi.slice(cut, wi.len()));
    let target = concat(&[&a, &c, &b])
        .filter(Word::is_cyclically_reduced)
        .ok_or_else(|| TranslateError::NotReduced("A·C·B".into()))?;
    let mut rec = MoveRecorder::new(p.clone(), System::Cen);
    rec.note(format!("insert a rotation of relator {} into relator {} at {cut}", j + 1, i + 1));
    let wj = p.relators[j].clone();
    rec.rotate_to(i, &b.mul(&a))?;
    rec.rotate_to(j, &c)?;
    rec.apply(Move::CT2(i, j))?;
    rec.rotate_to(i, &target)?;
    rec.rotate_to(j, &wj)?;
    let forward = rec.finish();
    let mut back = MoveRecorder::new(forward.replay(p).map_err(|(_, e)| e)?, System::Cen);
    remove_insertion(&mut back, i, cut, &c, j)?;
    Ok((forward, back.finish()))
}

/// Undo an insertion of `inserted` at `pos` of relator `i`, where
/// `inserted` is a rotation of relator `j` or of its inverse. The rest of
/// relator `i` may be longer than at insertion time.
pub fn remove_insertion(
    rec: &mut MoveRecorder,
    i: usize,
    pos: usize,
    inserted: &Word,
    j: usize,
) -> Result<(), TranslateError> {
    let word = rec.relator(i).clone();
    let end = pos + inserted.len();
    if end > word.len() || &word.slice(pos, end) != inserted {
        return Err(TranslateError::Precondition(format!("relator {} has no inserted block at {pos}", i + 1)));
    }
    let target = concat(&[&word.slice(0, pos), &word.slice(end, word.len())])
        .filter(Word::is_cyclically_reduced)
        .ok_or_else(|| TranslateError::NotReduced("word after removing the insertion".into()))?;
    rec.note(format!("remove the block inserted at {pos} of relator {}", i + 1));
    let wj = rec.relator(j).clone();
    rec.rotate_to(i, &word.rotated(end))?;
    rec.rotate_to(j, &inserted.inverse())?;
    rec.apply(Move::CT2(i, j))?;
    rec.rotate_to(i, &target)?;
    rec.rotate_to(j, &wj)?;
    Ok(())
}

/// Result of [`make_property_q`].
#[derive(Debug, Clone)]
pub struct PropertyQPlan {
    pub transcript: Transcript,
    pub insertions: Vec<Insertion>,
    pub v: Word,
    /// Final position of the protected boundary in `v`.
    pub boundary: usize,
}

/// Number of positions of `w` and `w⁻¹` where `a` is followed by a letter.
fn successor_slots(w: &Word, a: Letter) -> usize {
    let l = w.letters();
    let n = l.len();
    (0..n).filter(|&p| (l[p] == a && p + 1 < n) || (l[p] == a.inv() && p > 0)).count()
}

fn all_letters(m: usize) -> Vec<Letter> {
    (0..m as u32).flat_map(|g| [Letter::pos(g), Letter::neg(g)]).collect()
}

/// Simple 1-insertions into relator `i` until it has property (Q).
///
/// First every other relator containing an under-represented letter is
/// inserted whole (sources in slot order), so that each signed letter has at
/// least two successor positions. Then each letter whose successors all
/// coincide gets one insertion right after an occurrence, starting with a
/// different letter; the first candidate that keeps every letter already
/// passing is taken.
pub fn make_property_q(p: &Presentation, i: usize) -> Result<PropertyQPlan, TranslateError> {
    make_property_q_around(p, i, 0)
}

/// As [`make_property_q`], but no insertion is made at position `boundary`
/// (tracked as insertions shift it), so that the rotation of the result
/// starting at the boundary is the rotation of the original relator starting
/// there with interior insertions only.
pub fn make_property_q_around(p: &Presentation, i: usize, boundary: usize) -> Result<PropertyQPlan, TranslateError> {
    let m = p.alphabet.len();
    p.check_cyclic()?;
    let u = p.relators.get(i).ok_or_else(|| TranslateError::Precondition(format!("no relator {}", i + 1)))?;
    if p.relators.iter().any(|w| w.len() < 2) {
        return Err(TranslateError::Precondition("every relator must have length at least 2".into()));
    }
    if u.first() == u.last() {
        return Err(TranslateError::Precondition("first and last letters of the relator coincide".into()));
    }
    let (first, last) = (u.first(), u.last());
    let mut rec = MoveRecorder::new(p.clone(), System::Cen);
    let mut insertions: Vec<Insertion> = Vec::new();
    let mut boundary = boundary % u.len();
    let others: Vec<usize> = (0..p.rank()).filter(|&k| k != i).collect();
    let letters = all_letters(m);

    let insert = |rec: &mut MoveRecorder, mut ins: Insertion, insertions: &mut Vec<Insertion>, boundary: &mut usize| {
        let (fwd, _) = insertion_macro(&rec.current, i, ins.cut, ins.source, ins.invert, ins.rotation)?;
        rec.append(fwd)?;
        if ins.cut < *boundary {
            *boundary += ins.word.len();
        }
        ins.boundary = *boundary;
        insertions.push(ins);
        Ok::<(), TranslateError>(())
    };

    for &j in &others {
        let v = rec.relator(i).clone();
        let short: Vec<Letter> = letters.iter().copied().filter(|&a| successor_slots(&v, a) < 2).collect();
        if !short.iter().any(|a| p.relators[j].contains_generator(a.generator)) {
            continue;
        }
        let found = find_insertion(&v, &p.relators[j], j, |cut, c| {
            cut != boundary && concat(&[&v.slice(0, cut), c, &v.slice(cut, v.len())]).is_some()
        });
        match found {
            Some(ins) => insert(&mut rec, ins, &mut insertions, &mut boundary)?,
            None => {
                return Err(TranslateError::PlanningFailed {
                    letter: p.alphabet.letter_name(short[0]).to_string(),
                    detail: format!("relator {} cannot be inserted without cancellation", j + 1),
                })
            }
        }
    }
    let v = rec.relator(i).clone();
    if let Some(a) = letters.iter().find(|&&a| successor_slots(&v, a) < 2) {
        return Err(TranslateError::PlanningFailed {
            letter: p.alphabet.letter_name(*a).to_string(),
            detail: "fewer than two successor positions after the first sweep".into(),
        });
    }

    for &a in &letters {
        let v = rec.relator(i).clone();
        let report = property_q_report(&v, m);
        if report.letters[&a].passes {
            continue;
        }
        let b = *report.letters[&a].successors.iter().next().unwrap();
        let passing: Vec<Letter> = letters.iter().copied().filter(|l| report.letters[l].passes).collect();
        let mut chosen = None;
        'search: for delta in [false, true] {
            let vd = if delta { v.inverse() } else { v.clone() };
            let vl = vd.letters();
            for q in (0..vl.len().saturating_sub(1)).filter(|&q| vl[q] == a && vl[q + 1] == b) {
                let cut_d = q + 1;
                for &j in &others {
                    for invert in [false, true] {
                        let src = if invert { p.relators[j].inverse() } else { p.relators[j].clone() };
                        for rot in 0..src.len() {
                            let c = src.rotated(rot);
                            if c.first() == Some(b) {
                                continue;
                            }
                            if concat(&[&vd.slice(0, cut_d), &c, &vd.slice(cut_d, vd.len())]).is_none() {
                                continue;
                            }
                            let (cut, word) = if delta { (v.len() - cut_d, c.inverse()) } else { (cut_d, c.clone()) };
                            if cut == boundary {
                                continue;
                            }
                            let new_v = concat(&[&v.slice(0, cut), &word, &v.slice(cut, v.len())]).unwrap();
                            let r = property_q_report(&new_v, m);
                            if r.letters[&a].passes && passing.iter().all(|l| r.letters[l].passes) {
                                let base =
                                    if invert != delta { p.relators[j].inverse() } else { p.relators[j].clone() };
                                let rotation = base.rotation_to(&word).unwrap();
                                chosen = Some(Insertion {
                                    cut,
                                    source: j,
                                    invert: invert != delta,
                                    rotation,
                                    word,
                                    boundary: 0,
                                });
                                break 'search;
                            }
                        }
                    }
                }
            }
        }
        match chosen {
            Some(ins) => insert(&mut rec, ins, &mut insertions, &mut boundary)?,
            None => {
                return Err(TranslateError::PlanningFailed {
                    letter: p.alphabet.letter_name(a).to_string(),
                    detail: format!("every successor is {}", p.alphabet.letter_name(b)),
                })
            }
        }
    }

    let v = rec.relator(i).clone();
    if !property_q_report(&v, m).holds() || insertions.len() > 3 * m - 1 || v.first() != first || v.last() != last {
        return Err(TranslateError::PlanningFailed {
            letter: "-".into(),
            detail: format!("{} insertions did not produce property (Q)", insertions.len()),
        });
    }
    Ok(PropertyQPlan { transcript: rec.finish(), insertions, v, boundary })
}

fn find_insertion(v: &Word, src: &Word, j: usize, ok: impl Fn(usize, &Word) -> bool) -> Option<Insertion> {
    for cut in 1..v.len() {
        for invert in [false, true] {
            let base = if invert { src.inverse() } else { src.clone() };
            for rotation in 0..base.len() {
                let word = base.rotated(rotation);
                if ok(cut, &word) {
                    return Some(Insertion { cut, source: j, invert, rotation, word, boundary: 0 });
                }
            }
        }
    }
    None
}

/// Realize `(U1, U2) → (U1'·C·U2·C⁻¹, U2)` on slots `i`, `j` with CEN moves,
/// where `U1` has property (Q) and `U1'` is a rotation of `U1` or `U1⁻¹`.
///
/// Each level of the recursion records a note `|T| = n` with the length of
/// the reduced word formed at that level.
pub fn conjugation_macro(
    p: &Presentation,
    i: usize,
    j: usize,
    c: &Word,
    u1prime: &Word,
) -> Result<Transcript, TranslateError> {
    let m = p.alphabet.len();
    if i == j || i >= p.rank() || j >= p.rank() {
        return Err(TranslateError::Precondition("need two distinct relators".into()));
    }
    p.check_cyclic()?;
    let (u1, u2) = (p.relators[i].clone(), p.relators[j].clone());
    if !property_q_report(&u1, m).holds() {
        return Err(TranslateError::Precondition(format!("relator {} lacks property (Q)", i + 1)));
    }
    if crate::moves::rotate_to(&u1, u1prime).is_none() {
        return Err(TranslateError::Precondition("U1' is not a rotation of U1 or its inverse".into()));
    }
    let ci = c.inverse();
    let target = concat(&[u1prime, c, &u2, &ci])
        .filter(Word::is_cyclically_reduced)
        .ok_or_else(|| TranslateError::Precondition("U1'·C·U2·C⁻¹ is not cyclically reduced".into()))?;
    let mut rec = MoveRecorder::new(p.clone(), System::Cen);
    rec.note(format!("conjugation recursion, |C| = {}", c.len()));
    conjugate_step(&mut rec, i, j, &u1, &u2, c, u1prime, m)?;
    // (U1, C·U2·C⁻¹·U1') → (U1'·C·U2·C⁻¹, U2)
    let y = rec.relator(j).clone();
    let t = swap_macro(&rec.current, i, j)?;
    rec.append(t)?;
    rec.rotate_to(j, u1prime)?;
    rec.apply(Move::CT1(i))?;
    rec.apply(Move::CT2(j, i))?;
    rec.apply(Move::CT1(i))?;
    rec.apply(Move::CT1(j))?;
    rec.rotate_to(j, &u2)?;
    rec.rotate_to(i, &target)?;
    debug_assert!(crate::moves::rotate_to(&y, &target).is_some());
    Ok(rec.finish())
}

/// Brings slot `j` from `U2` to `C·U2·C⁻¹·target` while slot `i` stays `U1`.
#[allow(clippy::too_many_arguments)]
fn conjugate_step(
    rec: &mut MoveRecorder,
    i: usize,
    j: usize,
    u1: &Word,
    u2: &Word,
    c: &Word,
    target: &Word,
    m: usize,
) -> Result<(), TranslateError> {
    if c.is_empty() {
        rec.rotate_to(i, target)?;
        rec.apply(Move::CT2(j, i))?;
        rec.rotate_to(i, u1)?;
        return Ok(());
    }
    let a = c.first().unwrap();
    let c1 = c.slice(1, c.len());
    let c1i = c1.inverse();
    let mut best: Option<(Letter, Word)> = None;
    for base in [u1.clone(), u1.inverse()] {
        for cand in base.rotations() {
            if cand.first() != Some(a.inv()) {
                continue;
            }
            if !concat(&[&c1, u2, &c1i, &cand]).is_some_and(|w| w.is_cyclically_reduced()) {
                continue;
            }
            let succ = cand.last().unwrap().inv();
            if best.as_ref().is_none_or(|(b, _)| succ < *b) {
                best = Some((succ, cand));
            }
        }
    }
    let (_, u0) = best.ok_or_else(|| {
        TranslateError::RecursionStuck(format!(
            "no rotation of U1^±1 starts with the inverse of the bridge letter (|C| = {})",
            c.len()
        ))
    })?;
    conjugate_step(rec, i, j, u1, u2, &c1, &u0, m)?;

    let u01 = u0.slice(1, u0.len());
    let ai = Word::letter(a.inv());
    let inner = Word::product([&c1, u2, &c1i]);
    // slot j: C1·U2·C1⁻¹·U0 → U01·C1·U2·C1⁻¹·a⁻¹, then multiply by U1' on the left
    let x = concat(&[&u01, &inner, &ai])
        .ok_or_else(|| TranslateError::RecursionStuck("rotation of the recursive word".into()))?;
    rec.rotate_to(j, &x)?;
    rec.apply(Move::CT1(j))?;
    rec.rotate_to(i, &target.inverse())?;
    rec.apply(Move::CT2(j, i))?;
    rec.apply(Move::CT1(j))?;
    let t = Word::product([&ai, target, &u01]);
    rec.note(format!("|T| = {}", t.len()));
    if t.len() < 2 * m {
        return Err(TranslateError::RecursionStuck(format!("|T| = {} < 2m = {}", t.len(), 2 * m)));
    }
    let tw = concat(&[&t, &inner])
        .filter(Word::is_cyclically_reduced)
        .ok_or_else(|| TranslateError::RecursionStuck("T·C1·U2·C1⁻¹ is not cyclically reduced".into()))?;
    rec.rotate_to(j, &tw)
        .map_err(|e| TranslateError::RecursionStuck(format!("left multiplication did not give T·C1·U2·C1⁻¹: {e}")))?;
    // right multiply C1·U2·C1⁻¹·T by U0⁻¹
    rec.rotate_to(j, &inner.mul(&t))?;
    rec.rotate_to(i, &u0.inverse())?;
    rec.apply(Move::CT2(j, i))?;
    let goal = concat(&[c, u2, &c.inverse(), target])
        .ok_or_else(|| TranslateError::RecursionStuck("C·U2·C⁻¹·U1' is not reduced".into()))?;
    rec.rotate_to(j, &goal)?;
    rec.rotate_to(i, u1)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    fn pres(rank: usize, rels: &[&str]) -> Presentation {
        Presentation::parse(rank, rels).unwrap()
    }

    struct Trivial;
    impl RankOracle for Trivial {
        fn trivialize(&self, p: &Presentation) -> Result<Transcript, TranslateError> {
            let mut rec = MoveRecorder::new(p.clone(), System::Cen);
            for k in 0..p.rank() {
                if rec.relator(k).letters() == [Letter::neg(k as u32)] {
                    rec.apply(Move::CT1(k))?;
                }
            }
            if rec.current.is_letter_tuple() {
                Ok(rec.finish())
            } else {
                Err(TranslateError::OracleExhausted("not a signed letter tuple".into()))
            }
        }
    }

    #[test]
    fn elimination_examples() {
        let p = pres(2, &["ab", "abb"]);
        let t = eliminate_single_occurrence(&p, 0, Letter::pos(0), &Trivial).unwrap();
        let trace = t.trace(&p).unwrap();
        assert!(trace.iter().any(|q| q.relators[1] == w("b")));
        assert!(trace.last().unwrap().is_letter_tuple());

        let p = pres(2, &["a", "b"]);
        let t = eliminate_single_occurrence(&p, 0, Letter::pos(0), &Trivial).unwrap();
        assert!(t.replay(&p).unwrap().is_letter_tuple());

        let p = pres(2, &["aab", "b"]);
        assert!(matches!(
            eliminate_single_occurrence(&p, 0, Letter::pos(0), &Trivial),
            Err(TranslateError::Precondition(_))
        ));
    }

    #[test]
    fn elimination_needs_sorting() {
        let p = pres(2, &["bA", "aaB"]);
        let t = eliminate_single_occurrence(&p, 0, Letter::pos(1), &Trivial).unwrap();
        assert!(t.replay(&p).unwrap().is_letter_tuple());
    }

    #[test]
    fn insertion_examples() {
        let p = pres(4, &["ab", "cd"]);
        let (f, b) = insertion_macro(&p, 0, 1, 1, false, 0).unwrap();
        let q = f.replay(&p).unwrap();
        assert_eq!(q.relators[0], w("acdb"));
        assert_eq!(b.replay(&q).unwrap(), p);

        let (f, _) = insertion_macro(&p, 0, 1, 1, true, 0).unwrap();
        assert_eq!(f.replay(&p).unwrap().relators[0], w("aDCb"));
        assert!(insertion_macro(&p, 0, 0, 1, false, 0).is_err());
    }

    #[test]
    fn property_q_identity_case() {
        let p = pres(2, &["abAAbaBB", "ab"]);
        let plan = make_property_q(&p, 0).unwrap();
        assert!(plan.insertions.is_empty());
        assert_eq!(plan.v, p.relators[0]);
    }

    #[test]
    fn property_q_with_insertions() {
        let p = pres(2, &["aabAB", "abb"]);
        let plan = make_property_q(&p, 0).unwrap();
        assert!(property_q_report(&plan.v, 2).holds());
        assert!(plan.insertions.len() <= 5);
        assert_eq!(plan.v.first(), p.relators[0].first());
        assert_eq!(plan.v.last(), p.relators[0].last());
        assert_eq!(plan.transcript.replay(&p).unwrap().relators[0], plan.v);
    }

    #[test]
    fn conjugation_base_case() {
        let p = pres(2, &["abAAbaBB", "ab"]);
        let u1p = p.relators[0].clone();
        let t = conjugation_macro(&p, 0, 1, &w("1"), &u1p).unwrap();
        let q = t.replay(&p).unwrap();
        assert_eq!(q.relators[0], w("abAAbaBBab"));
        assert_eq!(q.relators[1], w("ab"));
    }

    #[test]
    fn conjugation_one_letter_bridge() {
        let p = pres(2, &["abAAbaBB", "ab"]);
        let u1p = p.relators[0].clone();
        let t = conjugation_macro(&p, 0, 1, &w("B"), &u1p).unwrap();
        let q = t.replay(&p).unwrap();
        assert_eq!(q.relators[0], w("abAAbaBBBabb"));
        assert_eq!(q.relators[1], w("ab"));
        assert!(t.notes.iter().any(|(_, n)| n.starts_with("|T| = ")));
    }

    #[test]
    fn conjugation_needs_property_q() {
        let p = pres(2, &["ab", "ab"]);
        assert!(matches!(conjugation_macro(&p, 0, 1, &w("1"), &w("ab")), Err(TranslateError::Precondition(_))));
    }
}

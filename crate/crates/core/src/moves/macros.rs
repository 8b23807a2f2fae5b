//! Transcript-level utilities: a recording replayer, the relator switch,
//! stabilization hoisting and the fixture scrambler.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{apply_in_place, Move, MoveError, Presentation, System, Transcript};
use crate::word::{Letter, Word};

/// Finds `(invert, k)` such that rotating `w` (inverted first if `invert`)
/// by `k` gives `target`. Prefers no inversion.
pub fn rotate_to(w: &Word, target: &Word) -> Option<(bool, usize)> {
    if let Some(k) = w.rotation_to(target) {
        return Some((false, k));
    }
    w.inverse().rotation_to(target).map(|k| (true, k))
}

/// Applies moves to a presentation while recording them. Every move is
/// checked at the time it is pushed, so a recorder's transcript always
/// replays.
#[derive(Debug, Clone)]
pub struct MoveRecorder {
    pub current: Presentation,
    pub transcript: Transcript,
}

impl MoveRecorder {
    pub fn new(p: Presentation, system: System) -> Self {
        MoveRecorder { current: p, transcript: Transcript::new(system) }
    }

    pub fn system(&self) -> System {
        self.transcript.system
    }

    pub fn relator(&self, i: usize) -> &Word {
        &self.current.relators[i]
    }

    pub fn apply(&mut self, m: Move) -> Result<(), MoveError> {
        apply_in_place(&mut self.current, &m, self.transcript.system)?;
        self.transcript.push(m);
        Ok(())
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.transcript.note(text);
    }

    /// Bring relator `slot` to exactly `target` using `CT1`/`CT3`.
    pub fn rotate_to(&mut self, slot: usize, target: &Word) -> Result<(), MoveError> {
        let (invert, k) = rotate_to(&self.current.relators[slot], target).ok_or_else(|| {
            MoveError::Precondition(format!(
                "relator {} ({}) is not a rotation of {} or its inverse",
                slot + 1,
                self.current.format_relator(slot),
                self.current.alphabet.format(target)
            ))
        })?;
        if invert {
            self.apply(Move::CT1(slot))?;
        }
        if k > 0 {
            self.apply(Move::CT3(slot, k))?;
        }
        Ok(())
    }

    /// Replay every step of `t` on the current presentation.
    pub fn append(&mut self, t: Transcript) -> Result<(), MoveError> {
        assert_eq!(t.system, self.transcript.system);
        let offset = self.transcript.len();
        for m in &t.steps {
            apply_in_place(&mut self.current, m, t.system)?;
        }
        self.transcript.notes.extend(t.notes.into_iter().map(|(k, s)| (k + offset, s)));
        self.transcript.steps.extend(t.steps);
        Ok(())
    }

    pub fn finish(self) -> Transcript {
        self.transcript
    }
}

/// CEN transcript exchanging relators `i` and `j`.
///
/// Rotations (and possibly inversions) `u', v'` of the two relators are
/// chosen so that the concatenation `u'v'` is cyclically reduced; then
/// `(u', v') → (u'v', v'⁻¹) → (v'u', u') → (v', u')` and the original
/// rotations are restored.
pub fn swap_macro(p: &Presentation, i: usize, j: usize) -> Result<Transcript, MoveError> {
    if i == j {
        return Err(MoveError::Precondition("swap needs two distinct relators".into()));
    }
    for k in [i, j] {
        if k >= p.rank() {
            return Err(MoveError::IndexOutOfRange { index: k, len: p.rank() });
        }
        if p.relators[k].is_empty() {
            return Err(MoveError::Precondition(format!("relator {} is empty", k + 1)));
        }
    }
    p.check_cyclic()?;
    let (u, v) = (p.relators[i].clone(), p.relators[j].clone());
    let mut rec = MoveRecorder::new(p.clone(), System::Cen);
    rec.note(format!("switch relators {} and {}", i + 1, j + 1));
    if rotate_to(&u, &v).is_some() {
        rec.rotate_to(i, &v)?;
        rec.rotate_to(j, &u)?;
        return Ok(rec.finish());
    }
    let (ru, rv) = junction_free_pair(&u, &v).ok_or_else(|| {
        MoveError::MacroFailed(format!(
            "no rotations of {} and {} concatenate to a cyclically reduced word",
            p.format_relator(i),
            p.format_relator(j)
        ))
    })?;
    rec.rotate_to(i, &ru)?;
    rec.rotate_to(j, &rv)?;
    rec.apply(Move::CT2(i, j))?;
    rec.apply(Move::CT1(j))?;
    rec.apply(Move::CT3(i, ru.len()))?;
    rec.apply(Move::CT2(j, i))?;
    rec.apply(Move::CT1(j))?;
    rec.apply(Move::CT2(i, j))?;
    rec.apply(Move::CT1(j))?;
    rec.rotate_to(i, &v)?;
    rec.rotate_to(j, &u)?;
    debug_assert_eq!(rec.relator(i), &v);
    Ok(rec.finish())
}

fn junction_free_pair(u: &Word, v: &Word) -> Option<(Word, Word)> {
    let orient = |w: &Word| [w.clone(), w.inverse()];
    for uu in orient(u) {
        for vv in orient(v) {
            for ru in uu.rotations() {
                for rv in vv.rotations() {
                    let (fu, lu) = (ru.first()?, ru.last()?);
                    let (fv, lv) = (rv.first()?, rv.last()?);
                    if !lu.cancels(fv) && !lv.cancels(fu) {
                        return Some((ru, rv));
                    }
                }
            }
        }
    }
    None
}

/// A move expressed over stable identities instead of positions.
enum IdMove {
    T1(usize),
    T2(usize, usize),
    T3(usize, Word),
    T3C(usize, usize),
}

/// Reorder an EN transcript so that all `T4+` come first and all `T4-` last.
///
/// Relators and generators are given identities in creation order; since
/// nothing is removed until the end of the hoisted transcript, an identity
/// is also the position in the hoisted tuple. Clashing stabilization names
/// are renamed to the first unused symbols.
pub fn hoist_stabilizations(p0: &Presentation, t: &Transcript) -> Result<Transcript, MoveError> {
    if t.system != System::En {
        return Err(MoveError::WrongSystem { mv: "hoist".into(), system: t.system });
    }
    let mut cur = p0.clone();
    let mut rel_ids: Vec<usize> = (0..p0.rank()).collect();
    let mut gen_ids: Vec<usize> = (0..p0.alphabet.len()).collect();
    let mut next_rel = p0.rank();
    let mut next_gen = p0.alphabet.len();
    let mut names: Vec<char> = p0.alphabet.names().to_vec();
    let original_plus: Vec<char> =
        t.steps.iter().filter_map(|m| if let Move::T4Plus(x) = m { Some(*x) } else { None }).collect();
    let mut plus: Vec<char> = Vec::new();
    let mut minus: Vec<char> = Vec::new();
    let mut middle: Vec<IdMove> = Vec::new();

    for (k, m) in t.steps.iter().enumerate() {
        let bad = |e: MoveError| MoveError::Precondition(format!("transcript not replayable at step {}: {e}", k + 1));
        let gen_id_of = |name: char, cur: &Presentation, gen_ids: &[usize]| {
            cur.alphabet.index_of(name).map(|g| gen_ids[g as usize])
        };
        match m {
            Move::T1(i) => middle.push(IdMove::T1(*rel_ids.get(*i).ok_or_else(|| bad(oob(*i, &cur)))?)),
            Move::T2(i, j) => {
                let (a, b) = (rel_ids.get(*i), rel_ids.get(*j));
                match (a, b) {
                    (Some(a), Some(b)) => middle.push(IdMove::T2(*a, *b)),
                    _ => return Err(bad(oob((*i).max(*j), &cur))),
                }
            }
            Move::T3(i, s) => {
                let id = *rel_ids.get(*i).ok_or_else(|| bad(oob(*i, &cur)))?;
                let ids = gen_ids.clone();
                if s.max_generator().is_some_and(|g| g as usize >= ids.len()) {
                    return Err(bad(MoveError::Precondition("conjugator outside alphabet".into())));
                }
                middle.push(IdMove::T3(id, s.map_generators(|g| ids[g as usize] as u32)));
            }
            Move::T3C(i, kk) => middle.push(IdMove::T3C(*rel_ids.get(*i).ok_or_else(|| bad(oob(*i, &cur)))?, *kk)),
            Move::T4Plus(x) => {
                let name = if names.contains(x) {
                    let avoid: Vec<char> = names.iter().chain(&original_plus).copied().collect();
                    cur.alphabet.fresh_name(&avoid)
                } else {
                    *x
                };
                names.push(name);
                plus.push(name);
                rel_ids.push(next_rel);
                gen_ids.push(next_gen);
                next_rel += 1;
                next_gen += 1;
            }
            Move::T4Minus(x) => {
                let gid = gen_id_of(*x, &cur, &gen_ids).ok_or_else(|| bad(MoveError::UnknownLetter(*x)))?;
                let g = cur.alphabet.index_of(*x).unwrap();
                let slot = cur
                    .relators
                    .iter()
                    .position(|r| r.len() == 1 && r.letters()[0].generator == g)
                    .ok_or_else(|| bad(MoveError::NoStabilizationRelator(*x)))?;
                minus.push(names[gid]);
                rel_ids.remove(slot);
                gen_ids.remove(g as usize);
            }
            _ => return Err(bad(MoveError::WrongSystem { mv: m.format(&cur.alphabet), system: System::En })),
        }
        apply_in_place(&mut cur, m, System::En).map_err(bad)?;
    }

    let mut out = Transcript::new(System::En);
    for name in plus {
        out.push(Move::T4Plus(name));
    }
    for m in middle {
        out.push(match m {
            IdMove::T1(i) => Move::T1(i),
            IdMove::T2(i, j) => Move::T2(i, j),
            IdMove::T3(i, s) => Move::T3(i, s),
            IdMove::T3C(i, k) => Move::T3C(i, k),
        });
    }
    for name in minus {
        out.push(Move::T4Minus(name));
    }
    Ok(out)
}

fn oob(i: usize, p: &Presentation) -> MoveError {
    MoveError::IndexOutOfRange { index: i, len: p.rank() }
}

/// A randomly drawn invertible step together with its inverse, both as move
/// lists.
fn random_en_step(rng: &mut ChaCha8Rng, p: &Presentation) -> (Vec<Move>, Vec<Move>) {
    let n = p.rank();
    let choice = if n >= 2 { rng.gen_range(0..4) } else { rng.gen_range(0..2) * 3 };
    match choice {
        0 => {
            let i = rng.gen_range(0..n);
            (vec![Move::T1(i)], vec![Move::T1(i)])
        }
        1 | 2 => {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let plain = vec![Move::T2(i, j)];
            let twisted = vec![Move::T1(j), Move::T2(i, j), Move::T1(j)];
            if choice == 1 {
                (plain, twisted)
            } else {
                (twisted, plain)
            }
        }
        _ => {
            let i = rng.gen_range(0..n);
            let g = rng.gen_range(0..p.alphabet.len() as u32);
            let s = Word::letter(Letter::new(g, rng.gen_bool(0.5)));
            (vec![Move::T3(i, s.clone())], vec![Move::T3(i, s.inverse())])
        }
    }
}

fn random_cyclic_step(rng: &mut ChaCha8Rng, p: &Presentation, system: System) -> Option<(Vec<Move>, Vec<Move>)> {
    let n = p.rank();
    let kinds = if system == System::Cen && n >= 2 { 3 } else { 2 };
    match rng.gen_range(0..kinds) {
        0 => {
            let i = rng.gen_range(0..n);
            Some((vec![Move::CT1(i)], vec![Move::CT1(i)]))
        }
        1 => {
            let i = rng.gen_range(0..n);
            let len = p.relators[i].len();
            if len < 2 {
                return None;
            }
            let k = rng.gen_range(1..len);
            Some((vec![Move::CT3(i, k)], vec![Move::CT3(i, len - k)]))
        }
        _ => {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let invert = rng.gen_bool(0.5);
            let wj = if invert { p.relators[j].inverse() } else { p.relators[j].clone() };
            let wi = &p.relators[i];
            let (fi, li, fj, lj) = (wi.first()?, wi.last()?, wj.first()?, wj.last()?);
            if li.cancels(fj) || lj.cancels(fi) {
                return None;
            }
            let wrap = |flip: bool| {
                if flip {
                    vec![Move::CT1(j), Move::CT2(i, j), Move::CT1(j)]
                } else {
                    vec![Move::CT2(i, j)]
                }
            };
            Some((wrap(invert), wrap(!invert)))
        }
    }
}

/// Apply `n` random invertible moves to `target`; returns the scrambled
/// presentation and a transcript taking it back to `target`.
///
/// For EN the scrambled relators are finally cyclically reduced and the
/// returned transcript starts with the `T3` moves undoing that, so the
/// scrambled presentation is always cyclically reduced. For CEN only `CT1`,
/// `CT3` and junction-free `CT2` steps are drawn (their inverses are exact);
/// for CCAC only `CT1` and `CT3`.
pub fn scramble(target: &Presentation, n: usize, seed: u64, system: System) -> (Presentation, Transcript) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = target.clone();
    let mut undo: Vec<Vec<Move>> = Vec::new();
    let mut done = 0;
    let mut attempts = 0;
    while done < n && attempts < 100 * (n + 1) {
        attempts += 1;
        let step = match system {
            System::En => Some(random_en_step(&mut rng, &p)),
            _ => random_cyclic_step(&mut rng, &p, system),
        };
        let Some((fwd, inv)) = step else { continue };
        let mut q = p.clone();
        let ok = fwd.iter().all(|m| apply_in_place(&mut q, m, system).is_ok());
        if !ok || q.relators.iter().any(Word::is_empty) {
            continue;
        }
        p = q;
        undo.push(inv);
        done += 1;
    }
    let mut t = Transcript::new(system);
    if system == System::En {
        for i in 0..p.rank() {
            let cr = p.relators[i].cyclic_reduce();
            if !cr.conjugator.is_empty() {
                t.push(Move::T3(i, cr.conjugator));
                p.relators[i] = cr.core;
            }
        }
    }
    for block in undo.into_iter().rev() {
        t.steps.extend(block);
    }
    (p, t)
}

/// Insert a stabilization into an EN transcript: at step `at` a fresh
/// generator `x` and relator `x` are added, `mixing` random moves tangle the
/// new relator with the others and are then undone, and `x` is removed after
/// the last step.
pub fn stabilize_transcript(
    p0: &Presentation,
    t: &Transcript,
    at: usize,
    mixing: usize,
    seed: u64,
) -> Result<Transcript, MoveError> {
    if t.system != System::En {
        return Err(MoveError::WrongSystem { mv: "stabilize".into(), system: t.system });
    }
    let at = at.min(t.len());
    let prefix = Transcript::from_steps(System::En, t.steps[..at].to_vec());
    let mut cur = prefix.replay(p0).map_err(|(_, e)| e)?;
    let used: Vec<char> =
        t.steps.iter().filter_map(|m| if let Move::T4Plus(x) = m { Some(*x) } else { None }).collect();
    let x = cur.alphabet.fresh_name(&used);
    let mut out = prefix;
    out.note(format!("stabilization {x}"));
    out.push(Move::T4Plus(x));
    apply_in_place(&mut cur, &Move::T4Plus(x), System::En)?;
    let new_slot = cur.rank() - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut undo: Vec<Vec<Move>> = Vec::new();
    while undo.len() < mixing {
        let (fwd, inv) = random_en_step(&mut rng, &cur);
        let touches = fwd.iter().any(|m| match m {
            Move::T2(i, j) => *i == new_slot || *j == new_slot,
            Move::T1(i) | Move::T3(i, _) => *i == new_slot,
            _ => false,
        });
        if !touches {
            continue;
        }
        for m in &fwd {
            apply_in_place(&mut cur, m, System::En)?;
        }
        out.steps.extend(fwd);
        undo.push(inv);
    }
    for block in undo.into_iter().rev() {
        out.steps.extend(block);
    }
    out.steps.extend(t.steps[at..].iter().cloned());
    out.push(Move::T4Minus(x));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::verify_transcript;

    fn pres(rank: usize, rels: &[&str]) -> Presentation {
        Presentation::parse(rank, rels).unwrap()
    }

    #[test]
    fn swap_examples() {
        for (rels, want) in [(["a", "b"], ["b", "a"]), (["ab", "b"], ["b", "ab"]), (["a", "A"], ["A", "a"])] {
            let p = pres(2, &rels);
            let t = swap_macro(&p, 0, 1).unwrap();
            let r = verify_transcript(&p, &t, Some(&pres(2, &want)));
            assert!(r.accepted, "{rels:?}: {}", r.reason);
        }
        assert!(matches!(swap_macro(&pres(2, &["a", "b"]), 1, 1), Err(MoveError::Precondition(_))));
    }

    #[test]
    fn swap_longer_words() {
        let p = pres(3, &["aabAB", "bcbCa", "c"]);
        for (i, j) in [(0, 1), (1, 2), (2, 0)] {
            let t = swap_macro(&p, i, j).unwrap();
            let mut want = p.clone();
            want.relators.swap(i, j);
            assert!(verify_transcript(&p, &t, Some(&want)).accepted);
        }
    }

    #[test]
    fn hoist_moves_stabilizations_outward() {
        let p = pres(2, &["a", "b"]);
        let t = Transcript::from_steps(
            System::En,
            vec![
                Move::T2(0, 1),
                Move::T4Plus('c'),
                Move::T2(2, 0),
                Move::T1(0),
                Move::T2(2, 0),
                Move::T1(0),
                Move::T4Minus('c'),
            ],
        );
        let h = hoist_stabilizations(&p, &t).unwrap();
        assert_eq!(h.steps.first(), Some(&Move::T4Plus('c')));
        assert_eq!(h.steps.last(), Some(&Move::T4Minus('c')));
        assert_eq!(h.replay(&p).unwrap(), t.replay(&p).unwrap());
    }

    #[test]
    fn hoist_identity_cases() {
        let p = pres(2, &["a", "b"]);
        let plain = Transcript::from_steps(System::En, vec![Move::T2(0, 1), Move::T1(1)]);
        assert_eq!(hoist_stabilizations(&p, &plain).unwrap().steps, plain.steps);
        let stab = Transcript::from_steps(System::En, vec![Move::T4Plus('c'), Move::T4Minus('c')]);
        assert_eq!(hoist_stabilizations(&p, &stab).unwrap().steps, stab.steps);
        let bad = Transcript::from_steps(System::En, vec![Move::T4Minus('c')]);
        assert!(hoist_stabilizations(&p, &bad).is_err());
    }

    #[test]
    fn hoist_renames_reused_letters() {
        let p = pres(2, &["a", "b"]);
        let t = Transcript::from_steps(
            System::En,
            vec![
                Move::T4Plus('c'),
                Move::T2(0, 2),
                Move::T1(2),
                Move::T2(0, 2),
                Move::T1(2),
                Move::T4Minus('c'),
                Move::T4Plus('c'),
                Move::T3(2, Word::letter(Letter::pos(0))),
                Move::T3(2, Word::letter(Letter::neg(0))),
                Move::T4Minus('c'),
            ],
        );
        let h = hoist_stabilizations(&p, &t).unwrap();
        assert_eq!(&h.steps[..2], &[Move::T4Plus('c'), Move::T4Plus('d')]);
        assert_eq!(h.replay(&p).unwrap(), p);
    }

    #[test]
    fn scramble_restores_target() {
        let target = pres(2, &["a", "b"]);
        for system in [System::En, System::Cen, System::Ccac] {
            for seed in 0..20 {
                let (s, t) = scramble(&target, 6, seed, system);
                assert!(s.is_cyclically_reduced());
                let r = verify_transcript(&s, &t, Some(&target));
                assert!(r.accepted, "{system} seed {seed}: {}", r.reason);
                assert_eq!(scramble(&target, 6, seed, system), (s, t));
            }
        }
        let (s, t) = scramble(&target, 0, 3, System::En);
        assert_eq!(s, target);
        assert!(t.is_empty());
    }

    #[test]
    fn stabilized_transcripts_replay() {
        let target = pres(2, &["a", "b"]);
        for seed in 0..10 {
            let (s, t) = scramble(&target, 5, seed, System::En);
            let st = stabilize_transcript(&s, &t, 2, 3, seed).unwrap();
            assert!(st.steps.iter().any(Move::is_stabilization));
            assert!(verify_transcript(&s, &st, Some(&target)).accepted);
        }
    }
}

//! CCAC realizations of the F1 and F2 products using stabilizations.
//!
//! Stabilization relators are appended after the last slot. Both macros
//! end with the product sitting in the last slot and `x⁻¹` in slot `i`;
//! [`return_block`] moves the product back into slot `i` with the help of a
//! second fresh letter and removes both letters.

use super::{concat, TranslateError};
use crate::moves::{Move, MoveRecorder, Presentation, System};
use crate::word::{Letter, Word};

fn fresh_pair(p: &Presentation) -> (char, char) {
    let x = p.alphabet.fresh_name(&[]);
    (x, p.alphabet.fresh_name(&[x]))
}

fn check_slots(p: &Presentation, i: usize, j: usize) -> Result<(), TranslateError> {
    if p.rank() < 2 || i == j || i >= p.rank() || j >= p.rank() {
        return Err(TranslateError::Precondition(format!("need two distinct slots, got {} and {}", i + 1, j + 1)));
    }
    p.check_cyclic()?;
    Ok(())
}

/// Turns `(i: x⁻¹, last: Q)` into `(i: Q)`, removing the last slot and `x`.
fn return_block(rec: &mut MoveRecorder, i: usize, x: char, y: char) -> Result<(), TranslateError> {
    let n = rec.current.rank() - 1;
    let q = rec.relator(n).clone();
    let xg = rec.current.alphabet.index_of(x).expect("x present");
    let xq = Word::letter(Letter::pos(xg)).mul(&q);
    rec.note(format!("return block with {y}: move the product back to relator {}", i + 1));
    rec.apply(Move::CCT4Plus(y, xq.clone()))?;
    let n2 = n + 1;
    rec.apply(Move::CT3(n2, 1))?;
    rec.apply(Move::CCT2(i, n2))?;
    rec.apply(Move::CT1(n))?;
    rec.apply(Move::CCT2(n, i))?;
    rec.apply(Move::CT1(n))?;
    rec.apply(Move::CCT2(i, n))?;
    rec.apply(Move::CT1(i))?;
    rec.apply(Move::CT3(n2, xq.len()))?;
    rec.apply(Move::CCT2(n2, i))?;
    rec.apply(Move::CT1(i))?;
    rec.apply(Move::CT3(n2, 1))?;
    rec.apply(Move::CCT2(n2, n))?;
    rec.apply(Move::CT1(n))?;
    rec.apply(Move::CCT4Minus(y))?;
    rec.apply(Move::CCT4Minus(x))?;
    debug_assert_eq!(rec.relator(i), &q);
    Ok(())
}

/// F1 on relators 1 and 2: `(U1, U2) → (U1·C·U2·C⁻¹, U2)`.
pub fn f1_stab_macro(p: &Presentation, c: &Word) -> Result<crate::moves::Transcript, TranslateError> {
    f1_stab_macro_at(p, 0, 1, c)
}

/// F1 on slots `i`, `j`, with `U1`, `U2` the current words in those slots.
pub fn f1_stab_macro_at(
    p: &Presentation,
    i: usize,
    j: usize,
    c: &Word,
) -> Result<crate::moves::Transcript, TranslateError> {
    check_slots(p, i, j)?;
    let (u1, u2) = (p.relators[i].clone(), p.relators[j].clone());
    let ci = c.inverse();
    if c.is_empty() {
        return Err(TranslateError::Precondition("F1 needs a nonempty bridge C".into()));
    }
    let target = concat(&[&u1, c, &u2, &ci])
        .filter(Word::is_cyclically_reduced)
        .ok_or_else(|| TranslateError::Precondition("U1·C·U2·C⁻¹ is not cyclically reduced".into()))?;
    let (x, y) = fresh_pair(p);
    let mut rec = MoveRecorder::new(p.clone(), System::Ccac);
    rec.note(format!("F1 with stabilization letter {x}, new relator appended as {}", p.rank() + 1));
    let n = p.rank();
    let body = Word::product([c, &u2, &ci, &u1]);
    rec.apply(Move::CCT4Plus(x, body))?;
    rec.apply(Move::CT1(n))?;
    rec.apply(Move::CCT2(i, n))?;
    rec.apply(Move::CT1(n))?;
    rec.apply(Move::CT1(i))?;
    rec.apply(Move::CT1(j))?;
    rec.apply(Move::CT3(i, 1 + c.len() + u2.len()))?;
    rec.apply(Move::CCT2(i, j))?;
    rec.apply(Move::CT3(n, 1))?;
    rec.apply(Move::CT1(i))?;
    rec.apply(Move::CCT2(n, i))?;
    return_block(&mut rec, i, x, y)?;
    rec.apply(Move::CT1(j))?;
    rec.rotate_to(i, &target)?;
    Ok(rec.finish())
}

/// F2 on relators 1 and 2: `(D·P⁻¹, P·E) → (D·E, P·E)`.
pub fn f2_stab_macro(
    p: &Presentation,
    d: &Word,
    pw: &Word,
    e: &Word,
) -> Result<crate::moves::Transcript, TranslateError> {
    f2_stab_macro_at(p, 0, 1, d, pw, e)
}

pub fn f2_stab_macro_at(
    p: &Presentation,
    i: usize,
    j: usize,
    d: &Word,
    pw: &Word,
    e: &Word,
) -> Result<crate::moves::Transcript, TranslateError> {
    check_slots(p, i, j)?;
    if d.is_empty() || e.is_empty() {
        return Err(TranslateError::Precondition("F2 needs nonempty D and E".into()));
    }
    if concat(&[d, &pw.inverse()]).as_ref() != Some(&p.relators[i]) || concat(&[pw, e]).as_ref() != Some(&p.relators[j])
    {
        return Err(TranslateError::Precondition("relators are not literally D·P⁻¹ and P·E".into()));
    }
    let target = concat(&[d, e])
        .filter(Word::is_cyclically_reduced)
        .ok_or_else(|| TranslateError::Precondition("D·E is not cyclically reduced".into()))?;
    let (x, y) = fresh_pair(p);
    let mut rec = MoveRecorder::new(p.clone(), System::Ccac);
    rec.note(format!("F2 with stabilization letter {x}, new relator appended as {}", p.rank() + 1));
    let n = p.rank();
    rec.apply(Move::CCT4Plus(x, Word::product([pw, e, d, &pw.inverse()])))?;
    rec.apply(Move::CT1(n))?;
    rec.apply(Move::CCT2(i, n))?;
    rec.apply(Move::CT1(n))?;
    rec.apply(Move::CT1(i))?;
    rec.apply(Move::CT1(j))?;
    rec.apply(Move::CCT2(i, j))?;
    rec.apply(Move::CT3(n, 1))?;
    rec.apply(Move::CT1(i))?;
    rec.apply(Move::CT1(j))?;
    rec.apply(Move::CCT2(n, i))?;
    rec.rotate_to(n, &target)?;
    return_block(&mut rec, i, x, y)?;
    Ok(rec.finish())
}

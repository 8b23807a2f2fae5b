//! Translate an EN trivialization with a stabilization into CCAC moves.
use ac_cyclic::moves::{scramble, stabilize_transcript, verify_transcript, Presentation, System};
use ac_cyclic::translator::translate_en_to_ccac;
use ac_cyclic::word::Alphabet;

fn main() {
    let letters = Presentation::letter_tuple(Alphabet::standard(2));
    let (p, t) = scramble(&letters, 6, 11, System::En);
    let t = stabilize_transcript(&p, &t, 2, 2, 11).unwrap();
    println!("start: ({}, {})", p.format_relator(0), p.format_relator(1));
    print!("{}", t.format(&p.alphabet));

    let out = translate_en_to_ccac(&p, &t).unwrap();
    let r = verify_transcript(&p, &out, Some(&letters));
    println!("\n{} EN moves became {} CCAC moves; verified: {}", t.len(), out.len(), r.accepted);
    print!("{}", out.format(&p.alphabet));
}

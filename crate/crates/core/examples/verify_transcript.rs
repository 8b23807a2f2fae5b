//! Parse a presentation and a transcript, replay it, and show a rejection.
use ac_cyclic::moves::{parse_transcript, verify_transcript, Presentation, PresentationFile};

fn main() {
    let p = PresentationFile::parse("alphabet = [\"a\", \"b\"]\nrelators = [\"ab\", \"b\"]\n").unwrap();
    let letters = Presentation::letter_tuple(p.alphabet.clone());

    let good = parse_transcript("CT1 2\nCT2 1 2\nCT1 2\n", &p.alphabet).unwrap();
    let r = verify_transcript(&p, &good, Some(&letters));
    println!("{}: accepted = {}", good.system, r.accepted);
    for (k, q) in good.trace(&p).unwrap().iter().enumerate() {
        let rels: Vec<String> = (0..q.rank()).map(|i| q.format_relator(i)).collect();
        println!("  after {k} moves: ({})", rels.join(", "));
    }

    // ab·b is not cancellative
    let bad = parse_transcript("CCT2 1 2\n", &p.alphabet).unwrap();
    let r = verify_transcript(&p, &bad, Some(&letters));
    println!("{}: accepted = {}, {}", bad.system, r.accepted, r.reason);
}

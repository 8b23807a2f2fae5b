//! Deterministic fixtures: scramble the letter tuple under each system and
//! check that the returned transcript undoes the scramble.
use ac_cyclic::moves::{scramble, verify_transcript, Presentation, System};
use ac_cyclic::word::Alphabet;

fn main() {
    let letters = Presentation::letter_tuple(Alphabet::standard(3));
    for system in [System::En, System::Cen, System::Ccac] {
        let (p, t) = scramble(&letters, 6, 42, system);
        let rels: Vec<String> = (0..p.rank()).map(|i| p.format_relator(i)).collect();
        let ok = verify_transcript(&p, &t, Some(&letters)).accepted;
        println!("{system}: ({}) undone by {} moves, verified {ok}", rels.join(", "), t.len());
    }
}

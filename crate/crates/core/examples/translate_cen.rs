//! Translate an EN trivialization into CEN moves, with bounded search as the
//! oracle for rank-lowering steps.
use ac_cyclic::moves::{scramble, verify_transcript, Presentation, System};
use ac_cyclic::search::{rank_oracle_adapter, SearchConfig};
use ac_cyclic::translator::translate_en_to_cen;
use ac_cyclic::word::Alphabet;

fn main() {
    let letters = Presentation::letter_tuple(Alphabet::standard(2));
    let oracle = rank_oracle_adapter(SearchConfig::default());
    for seed in 0..5 {
        let (p, t) = scramble(&letters, 8, seed, System::En);
        match translate_en_to_cen(&p, &t, &oracle) {
            Ok(out) => {
                let ok = verify_transcript(&p, &out, Some(&letters)).accepted;
                println!(
                    "({}, {}): {} EN -> {} CEN moves, verified {ok}",
                    p.format_relator(0),
                    p.format_relator(1),
                    t.len(),
                    out.len()
                );
            }
            Err(e) => println!("({}, {}): {e}", p.format_relator(0), p.format_relator(1)),
        }
    }
}

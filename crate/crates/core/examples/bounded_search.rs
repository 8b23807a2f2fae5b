//! Bounded search: a short CEN trivialization, and exhaustion of the CCAC
//! orbit of a pair that admits no cancellative product.
use ac_cyclic::moves::{Presentation, System};
use ac_cyclic::search::{canonicalize, reachable_keys, search_trivialization, Outcome, SearchConfig, Symmetries};

fn main() {
    let p = Presentation::parse(2, &["ab", "b"]).unwrap();
    let cfg = SearchConfig { max_total_length: 4, max_depth: 4, ..Default::default() };
    let r = search_trivialization(&p, &cfg).unwrap();
    if let Outcome::Found(t) = &r.outcome {
        print!("{}", t.format(&p.alphabet));
    }
    print!("{}", r.stats.to_lines());

    let q = Presentation::parse(2, &["aaBBB", "abaBAB"]).unwrap();
    println!(
        "canonical key: {:?}",
        canonicalize(&q, Symmetries::ALL).relators.iter().map(|w| w.to_string()).collect::<Vec<_>>()
    );
    let cfg = SearchConfig {
        system: System::Ccac,
        max_total_length: 11,
        max_depth: 40,
        symmetries: Symmetries::NONE,
        workers: 4,
        ..Default::default()
    };
    let r = search_trivialization(&q, &cfg).unwrap();
    println!("CCAC: {:?} after visiting {} states", r.outcome, r.stats.visited);
    println!("reachable states: {}", reachable_keys(&q, &cfg).unwrap().len());
}

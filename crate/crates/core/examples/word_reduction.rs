//! Free and cyclic reduction, rotations, and the common-factor search.
use ac_cyclic::word::{max_common_cyclic_factor, property_q_report, Alphabet};

fn main() {
    let ab = Alphabet::standard(2);
    let x = ab.parse_word("bAaabBA").unwrap();
    println!("bAaabBA reduces to {}", ab.format(&x));
    let cr = x.cyclic_reduce();
    println!("cyclic core {} with conjugator {}", ab.format(&cr.core), ab.format(&cr.conjugator));

    let w1 = ab.parse_word("aaBBB").unwrap();
    let w2 = ab.parse_word("abaBAB").unwrap();
    for r in w1.rotations() {
        print!("{} ", ab.format(&r));
    }
    println!();
    let (len, witness) = max_common_cyclic_factor(&w1, &w2);
    println!("longest common cyclic factor of aaBBB and abaBAB: {} ({len})", ab.format(&witness));

    let q = property_q_report(&ab.parse_word("aabAB").unwrap(), 2);
    println!("aabAB has property Q: {}", q.holds());
    match ab.parse_word("a$") {
        Ok(_) => unreachable!(),
        Err(e) => println!("a$: {e}"),
    }
}

use ac_cyclic::certificates::{check_cct2_inapplicable, check_conjecture4};
use ac_cyclic::moves::{
    apply_move, parse_transcript, scramble, stabilize_transcript, swap_macro, verify_transcript, Move, Presentation,
    System,
};
use ac_cyclic::search::{search_trivialization, Outcome, SearchConfig};
use ac_cyclic::word::{max_common_cyclic_factor, property_q_report, Alphabet, Letter, Word};
use proptest::prelude::*;

fn raw(gens: u32, max: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0..gens, any::<bool>()).prop_map(|(g, i)| Letter::new(g, i)), 0..=max)
}

fn core(gens: u32, max: usize) -> impl Strategy<Value = Word> {
    raw(gens, max).prop_map(|v| Word::reduce(v).cyclic_reduce().core).prop_filter("nonempty", |w| !w.is_empty())
}

fn presentation(rank: usize) -> impl Strategy<Value = Presentation> {
    prop::collection::vec(core(rank as u32, 7), rank)
        .prop_map(move |rels| Presentation::new(Alphabet::standard(rank), rels).unwrap())
}

fn cyclic_move(rank: usize) -> impl Strategy<Value = (u8, usize, usize, usize)> {
    (0u8..3, 0..rank, 1..rank, 0usize..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn free_reduction_is_idempotent_and_keeps_exponents(v in raw(3, 16)) {
        let a = Alphabet::standard(3);
        let once = a.free_reduce(&v).unwrap();
        prop_assert_eq!(a.free_reduce(once.letters()).unwrap(), once.clone());
        let mut expo = vec![0i64; 3];
        for l in &v {
            expo[l.generator as usize] += l.sign();
        }
        prop_assert_eq!(once.exponent_vector(3), expo);
    }

    #[test]
    fn cyclic_reduction_reconstructs(v in raw(3, 16)) {
        let x = Word::reduce(v);
        let cr = x.cyclic_reduce();
        prop_assert!(cr.core.is_cyclically_reduced());
        prop_assert_eq!(Word::product([&cr.conjugator, &cr.core, &cr.conjugator.inverse()]), x);
    }

    #[test]
    fn inversion_and_rotation_laws(x in core(3, 12), k in 0usize..12) {
        prop_assert_eq!(x.inverse().inverse(), x.clone());
        let k = k % x.len();
        prop_assert_eq!(x.rotated(k).rotated(x.len() - k), x.clone());
        prop_assert!(x.rotated(k).is_cyclically_reduced());
        for g in 0..3 {
            prop_assert_eq!(x.occurrence_count(Letter::pos(g)), x.occurrence_count(Letter::neg(g)));
        }
        prop_assert_eq!(property_q_report(&x, 3), property_q_report(&x.inverse(), 3));
    }

    #[test]
    fn common_factor_symmetries(x in core(2, 8), y in core(2, 8), k in 0usize..8) {
        let (n, _) = max_common_cyclic_factor(&x, &y);
        prop_assert_eq!(max_common_cyclic_factor(&y, &x).0, n);
        prop_assert_eq!(max_common_cyclic_factor(&x.inverse(), &y.rotated(k % y.len())).0, n);
        let r = check_conjecture4(&x, &y);
        let s = check_conjecture4(&y.inverse(), &x.rotated(k % x.len()));
        prop_assert_eq!(r.inequality_satisfiable, s.inequality_satisfiable);
        prop_assert_eq!(r.max_common_length, s.max_common_length);
    }

    #[test]
    fn orbit_verdict_is_symmetric(x in core(2, 6), y in core(2, 6)) {
        let r = check_cct2_inapplicable(&x, &y);
        let s = check_cct2_inapplicable(&y.inverse(), &x.rotated(1));
        prop_assert_eq!(r.orbit_size, s.orbit_size);
        prop_assert_eq!(r.cct2_applicable_anywhere, s.cct2_applicable_anywhere);
        prop_assert_eq!(r.states_checked, r.orbit_size);
    }

    #[test]
    fn cyclic_moves_keep_determinant_and_lengths(p in presentation(3), moves in prop::collection::vec(cyclic_move(3), 1..10), ccac in any::<bool>()) {
        let system = if ccac { System::Ccac } else { System::Cen };
        let det = p.abelian_determinant().unwrap().abs();
        let mut cur = p;
        for (kind, i, off, k) in moves {
            let j = (i + off) % 3;
            let m = match kind {
                0 => Move::CT1(i),
                1 => Move::CT3(i, k % cur.relators[i].len().max(1)),
                _ if ccac => Move::CCT2(i, j),
                _ => Move::CT2(i, j),
            };
            let Ok(next) = apply_move(&cur, &m, system) else { continue };
            if matches!(m, Move::CT1(_) | Move::CT3(..)) {
                let lens = |q: &Presentation| q.relators.iter().map(Word::len).collect::<Vec<_>>();
                prop_assert_eq!(lens(&next), lens(&cur));
            }
            prop_assert_eq!(next.abelian_determinant().unwrap().abs(), det);
            cur = next;
        }
    }

    #[test]
    fn swap_exchanges_relators(p in presentation(2)) {
        match swap_macro(&p, 0, 1) {
            Ok(t) => {
                let q = Presentation::new(p.alphabet.clone(), vec![p.relators[1].clone(), p.relators[0].clone()]).unwrap();
                prop_assert!(verify_transcript(&p, &t, Some(&q)).accepted);
            }
            Err(e) => prop_assert!(e.to_string().contains("cyclically reduced"), "{}", e),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn scrambles_are_undone_and_round_trip_as_text(seed in any::<u64>(), depth in 0usize..9, rank in 1usize..4, sys in 0u8..3) {
        let system = [System::En, System::Cen, System::Ccac][sys as usize];
        let target = Presentation::letter_tuple(Alphabet::standard(rank));
        let (p, t) = scramble(&target, depth, seed, system);
        prop_assert!(verify_transcript(&p, &t, Some(&target)).accepted);
        let text = t.format(&p.alphabet);
        let back = parse_transcript(&text, &p.alphabet).unwrap();
        prop_assert_eq!(&back.steps, &t.steps);
        prop_assert_eq!(back.system, t.system);
        if system == System::En {
            let st = stabilize_transcript(&p, &t, depth / 2, 2, seed).unwrap();
            let q = parse_transcript(&st.format(&p.alphabet), &p.alphabet).unwrap();
            prop_assert!(verify_transcript(&p, &q, Some(&target)).accepted);
            for pres in st.trace(&p).unwrap() {
                prop_assert_eq!(pres.abelian_determinant().map(i128::abs), Some(1));
            }
        }
    }

    #[test]
    fn found_transcripts_verify(seed in any::<u64>()) {
        let target = Presentation::letter_tuple(Alphabet::standard(2));
        let (p, _) = scramble(&target, 5, seed, System::En);
        let cfg = SearchConfig { max_total_length: 12, max_depth: 6, node_budget: 5_000, ..Default::default() };
        if let Outcome::Found(t) = search_trivialization(&p, &cfg).unwrap().outcome {
            prop_assert!(verify_transcript(&p, &t, Some(&target)).accepted);
        }
    }
}

//! Worked examples with known answers, one block per module.

use percword::embedding::{embeds_within, is_m_seen, standard_embedding};
use percword::exactprob::{
    build_automaton, exact_seen_probability, exhaustive_seen_probability, max_word_probability,
};
use percword::moments::{
    expected_embeddings, growth_constant, random_word_second_moment, renewal_table,
    second_moment_exact, second_moment_oracle,
};
use percword::montecarlo::{
    admissible_path_exists, coupling_F, estimate_seen_probability, plan_parameter_path, red_grid,
    RngConfig,
};
use percword::rational::{rat, Rational};
use percword::recursions::{
    char_poly, pq_polynomials, sigma_closed_form, sigma_generating_identity, sigma_oracle,
    u_table, vn_pair_recursion, vn_single_recursion,
};
use percword::spacing::{
    alternating_seen_by_spacings, constant_seen_by_spacings, s_sequence, spacing_profile,
    SpacingProfile,
};
use percword::{BinaryWord, SequencePrefix, WordKind};

fn w(s: &str) -> BinaryWord {
    s.parse().unwrap()
}

fn y(s: &str) -> SequencePrefix {
    s.parse().unwrap()
}

#[test]
fn word_families() {
    assert_eq!(BinaryWord::make(&WordKind::Alternating { first: 1 }, 4).unwrap(), w("1010"));
    assert!(BinaryWord::make(&WordKind::Constant { letter: 1 }, 0).unwrap().is_empty());
    assert_eq!(BinaryWord::two_block(2, 2), w("1100"));
}

#[test]
fn two_block_seen_iff_a_zero_follows() {
    assert!(is_m_seen(&w("1100"), &y("11011000"), 2).unwrap());
    assert!(!is_m_seen(&w("1100"), &y("11011011"), 2).unwrap());
    assert!(is_m_seen(&BinaryWord::empty(), &y(""), 3).unwrap());
}

#[test]
fn standard_embeddings() {
    let pos = |word: &str, seq: &str, m: usize| {
        standard_embedding(&w(word), &y(seq), m).unwrap().map(|e| e.positions().to_vec())
    };
    // Y_7 = 0 makes position 7 the earliest choice for the last letter.
    assert_eq!(pos("1100", "11011000", 2), Some(vec![2, 4, 6, 7]));
    // With Y_7 = 1 the last letter has to go to position 8.
    assert_eq!(pos("1100", "11011010", 2), Some(vec![2, 4, 6, 8]));
    assert_eq!(pos("1", "1", 1), Some(vec![1]));
    assert_eq!(pos("11", "0101", 2), Some(vec![2, 4]));
}

#[test]
fn spacing_examples() {
    let prof = spacing_profile(&w("1100"), &y("110110")).unwrap();
    assert_eq!(prof.gaps(), vec![1, 1, 1, 3]);
    assert_eq!(spacing_profile(&w("1"), &y("1")).unwrap().hits(), &[1]);
    let prof = spacing_profile(&w("01"), &y("1101")).unwrap();
    assert_eq!((prof.hits(), prof.gaps()), (&[3usize, 4][..], vec![3, 1]));

    let gaps = |g: &[usize]| SpacingProfile::from_gaps(g).unwrap();
    assert!(!constant_seen_by_spacings(&gaps(&[1, 1, 1, 3]), 2, 4).unwrap());
    assert!(constant_seen_by_spacings(&gaps(&[1, 1]), 1, 2).unwrap());
    assert!(constant_seen_by_spacings(&gaps(&[2, 3, 2]), 3, 3).unwrap());

    let hits = |h: &[usize]| SpacingProfile::from_hits(h.to_vec()).unwrap();
    assert!(alternating_seen_by_spacings(&hits(&[1, 2, 3]), 2, 3).unwrap());
    assert!(alternating_seen_by_spacings(&hits(&[2, 4]), 2, 2).unwrap());
    assert!(!alternating_seen_by_spacings(&hits(&[3]), 2, 1).unwrap());

    assert_eq!(s_sequence(&hits(&[1, 2, 3, 4]), 2, 3).unwrap(), vec![0, 1, 2, 3]);
    assert_eq!(s_sequence(&hits(&[1, 5]), 2, 1).unwrap(), vec![0, 2]);
}

#[test]
fn same_spacings_different_outcomes() {
    let (a, b) = (y("11011000"), y("11011011"));
    let word = w("1100");
    assert_eq!(spacing_profile(&word, &a).unwrap().gaps(), vec![1, 1, 1, 3]);
    assert_eq!(spacing_profile(&word, &b).unwrap().gaps(), vec![1, 1, 1, 3]);
    assert_ne!(is_m_seen(&word, &a, 2).unwrap(), is_m_seen(&word, &b, 2).unwrap());
}

#[test]
fn automaton_examples() {
    let empty = build_automaton(&BinaryWord::empty(), 3).unwrap();
    assert!(empty.is_accept(empty.initial()));
    let single = build_automaton(&w("1"), 1).unwrap();
    assert!(single.accepts(&[1]) && !single.accepts(&[0]));
    let a = build_automaton(&w("10"), 2).unwrap();
    for i in 0..16u64 {
        let seq = SequencePrefix::from_index(i, 4);
        assert_eq!(a.accepts(seq.bits()), embeds_within(&w("10"), &seq, 2).unwrap(), "{seq}");
    }
}

#[test]
fn exact_probability_examples() {
    let half = rat(1, 2);
    assert_eq!(exact_seen_probability(&w("10"), 2, &half).unwrap(), rat(5, 8));
    assert_eq!(exact_seen_probability(&w("1100"), 2, &half).unwrap(), rat(3, 8));
    assert_eq!(exhaustive_seen_probability(&w("11"), 2).unwrap(), rat(9, 16));
    assert_eq!(
        exhaustive_seen_probability(&w("101"), 2).unwrap(),
        vn_single_recursion(2, 3).unwrap()[3]
    );
    let e = max_word_probability(2, 2).unwrap();
    assert_eq!((e.max, e.maximizers), (rat(5, 8), vec![w("01"), w("10")]));
}

#[test]
fn recursion_examples() {
    let t = vn_pair_recursion(2, 2).unwrap();
    assert_eq!((t.v(1), t.v_prime(1), t.v(2)), (&rat(3, 4), &rat(1, 4), &rat(5, 8)));
    let ratios = vn_pair_recursion(2, 300).unwrap().ratios();
    assert!((ratios.last().unwrap() - 0.853553390593).abs() < 1e-9);
    assert!((char_poly(5).unwrap().large_root - 0.9978).abs() < 5e-5);
    assert_eq!(sigma_closed_form(2, 1, 1), sigma_oracle(2, 1, 1).unwrap().0);
    let table = u_table(3, 6, 6).unwrap();
    assert!(table.delta.at(3, 3) >= &Rational::from_integer(0.into()));
    assert!(pq_polynomials(7).unwrap().q_nonnegative());
    assert!(sigma_generating_identity(3, 2, 10).unwrap());
}

#[test]
fn moment_examples() {
    assert_eq!(expected_embeddings(3, 2), rat(9, 4));
    assert_eq!(second_moment_exact(&w("1"), 2).unwrap(), rat(3, 2));
    assert_eq!(
        second_moment_exact(&w("10"), 2).unwrap(),
        second_moment_oracle(&w("10"), 2).unwrap()
    );
    let t = renewal_table(2, 2).unwrap();
    assert_eq!((&t.u[1], &t.u[2], &t.v[1], &t.v[2]), (&rat(1, 2), &rat(3, 8), &rat(3, 2), &rat(17, 8)));
    assert_eq!(random_word_second_moment(&t, 1).unwrap(), rat(3, 2));
    assert!((growth_constant(2, 1e-10).unwrap().bisection - 4.0 / 3.0).abs() < 1e-9);
}

#[test]
fn simulation_examples() {
    let cfg = RngConfig::new(42);
    let v4 = vn_single_recursion(2, 4).unwrap()[4].clone();
    let est = estimate_seen_probability(&w("1010"), 2, 0.5, 100_000, &cfg).unwrap();
    assert!(est.within(percword::rational::to_f64(&v4), 4.0), "{est:?}");

    let x = y("0011");
    assert_eq!(coupling_F(&x, 0.3, &mut cfg.stream(0)).unwrap().output, y("01"));
    let path = plan_parameter_path(0.5, 0.25, 8).unwrap();
    assert_eq!((path.len(), path[0].p1), (1, 0.0));

    let g = red_grid(&y("111"), &y("000000000"));
    assert!(!admissible_path_exists(&g, 3).unwrap());
}

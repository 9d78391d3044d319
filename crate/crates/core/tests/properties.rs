//! Randomized invariants checked against brute-force oracles.

use proptest::prelude::*;

use percword::embedding::{all_embeddings, embeds_within, is_m_seen, standard_embedding};
use percword::exactprob::{exact_seen_probability, exhaustive_seen_probability};
use percword::moments::{expected_embeddings, second_moment_exact, second_moment_oracle};
use percword::montecarlo::{admissible_path_exists, coupling_F, red_grid, RngConfig};
use percword::rational::rat;
use percword::spacing::{
    alternating_seen_by_s_sequence, decide_by_spacings, SpacingProfile,
};
use percword::{BinaryWord, SequencePrefix};

fn word(max_len: usize) -> impl Strategy<Value = BinaryWord> {
    prop::collection::vec(0u8..=1, 0..=max_len).prop_map(|v| BinaryWord::new(v).unwrap())
}

fn bits(len: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..=1, len)
}

/// A word with `1 <= n`, window `M`, and a prefix of exactly `nM` bits.
fn instance(max_n: usize, max_m: usize) -> impl Strategy<Value = (BinaryWord, usize, SequencePrefix)> {
    (1..=max_n, 1..=max_m).prop_flat_map(|(n, m)| {
        (bits(n), Just(m), bits(n * m)).prop_map(|(w, m, y)| {
            (BinaryWord::new(w).unwrap(), m, SequencePrefix::new(y).unwrap())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn witness_positions_dominate_hitting_times((w, m, y) in instance(6, 3)) {
        let prof = SpacingProfile::scan(&w, &y);
        for e in all_embeddings(&w, &y, m).unwrap() {
            for (k, &pos) in e.positions().iter().enumerate() {
                prop_assert!(prof.t(k + 1) <= pos);
                prop_assert!(prof.t(k + 1) <= (k + 1) * m);
            }
        }
    }

    #[test]
    fn short_spacings_force_seeing((w, m, y) in instance(6, 3)) {
        let prof = SpacingProfile::scan(&w, &y);
        if prof.len() == w.len() && (1..=w.len()).all(|k| prof.tau(k) <= m) {
            prop_assert!(is_m_seen(&w, &y, m).unwrap());
        }
    }

    #[test]
    fn long_spacing_pins_block_start((w, m, y) in instance(6, 3)) {
        // w_k != w_{k+1} = ... = w_l and tau_l > M imply T_l <= m_{k+1}.
        let prof = SpacingProfile::scan(&w, &y);
        let n = w.len();
        for e in all_embeddings(&w, &y, m).unwrap() {
            for l in 2..=n.min(prof.len()) {
                if prof.tau(l) <= m {
                    continue;
                }
                let mut k = l - 1;
                while k >= 1 && w.letter(k) == w.letter(l) {
                    k -= 1;
                }
                if k >= 1 {
                    prop_assert!(prof.t(l) <= e.positions()[k]);
                }
            }
        }
    }

    #[test]
    fn standard_embedding_is_least((w, m, y) in instance(5, 3)) {
        let all = all_embeddings(&w, &y, m).unwrap();
        let std = standard_embedding(&w, &y, m).unwrap();
        match std {
            None => prop_assert!(all.is_empty()),
            Some(e) => {
                prop_assert!(e.spells(&w, &y));
                prop_assert_eq!(Some(e.positions()), all.first().map(|f| f.positions()));
            }
        }
    }

    #[test]
    fn event_lives_in_first_nm_positions((w, m, y) in instance(6, 3), tail in bits(8)) {
        let longer = y.extended(&tail).unwrap();
        prop_assert_eq!(is_m_seen(&w, &y, m).unwrap(), is_m_seen(&w, &longer, m).unwrap());
    }

    #[test]
    fn spacing_characterizations((n, m) in (1usize..=6, 2usize..=3), first in 0u8..=1, seed in any::<u64>()) {
        let len = n * m;
        let y = SequencePrefix::from_index(seed % (1u64 << len), len);
        let alt = BinaryWord::alternating(first, n).unwrap();
        let con = BinaryWord::constant(first, n).unwrap();
        prop_assert_eq!(decide_by_spacings(&alt, &y, m).unwrap(), Some(is_m_seen(&alt, &y, m).unwrap()));
        prop_assert_eq!(decide_by_spacings(&con, &y, m).unwrap(), Some(is_m_seen(&con, &y, m).unwrap()));
        prop_assert_eq!(alternating_seen_by_s_sequence(&alt, &y, m).unwrap(), is_m_seen(&alt, &y, m).unwrap());
    }

    #[test]
    fn red_grid_paths_match_seeing((w, m, y) in instance(6, 3)) {
        let x = SequencePrefix::new(w.letters().to_vec()).unwrap();
        let grid = red_grid(&x, &y);
        prop_assert_eq!(admissible_path_exists(&grid, m).unwrap(), is_m_seen(&w, &y, m).unwrap());
    }

    #[test]
    fn coupling_output_copies_its_input(x in prop::collection::vec(0u8..=1, 0..=40).prop_map(|mut v| { v.truncate(v.len() / 2 * 2); v }), p1 in 0.0f64..=1.0, seed in any::<u64>()) {
        let x = SequencePrefix::new(x).unwrap();
        let out = coupling_F(&x, p1, &mut RngConfig::new(seed).stream(0)).unwrap();
        prop_assert_eq!(out.output.len(), x.len() / 2);
        prop_assert!(out.witness_is_valid(&x));
        prop_assert!(embeds_within(&out.output.as_word(), &x, 3).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn automaton_matches_enumeration(w in word(7), m in 1usize..=3) {
        prop_assume!(w.len() * m <= 20);
        let half = rat(1, 2);
        prop_assert_eq!(exact_seen_probability(&w, m, &half).unwrap(), exhaustive_seen_probability(&w, m).unwrap());
    }

    #[test]
    fn monotone_in_window_and_length(w in word(8), m in 1usize..=4) {
        let half = rat(1, 2);
        let here = exact_seen_probability(&w, m, &half).unwrap();
        prop_assert!(here <= exact_seen_probability(&w, m + 1, &half).unwrap());
        for k in 0..w.len() {
            prop_assert!(here <= exact_seen_probability(&w.prefix(k), m, &half).unwrap());
        }
    }

    #[test]
    fn complement_symmetry(w in word(10), m in 1usize..=4) {
        let half = rat(1, 2);
        prop_assert_eq!(
            exact_seen_probability(&w, m, &half).unwrap(),
            exact_seen_probability(&w.complement(), m, &half).unwrap()
        );
    }

    #[test]
    fn second_moment_oracle_and_variance(w in word(4), m in 1usize..=3) {
        let exact = second_moment_exact(&w, m).unwrap();
        prop_assert_eq!(&exact, &second_moment_oracle(&w, m).unwrap());
        let mean = expected_embeddings(m, w.len());
        prop_assert!(exact >= &mean * &mean);
    }
}

#[test]
fn automaton_matches_enumeration_exhaustively_for_small_sizes() {
    let half = rat(1, 2);
    for m in 1..=4 {
        for n in 0..=(12 / m) {
            for w in BinaryWord::all(n) {
                assert_eq!(
                    exact_seen_probability(&w, m, &half).unwrap(),
                    exhaustive_seen_probability(&w, m).unwrap(),
                    "{w} M={m}"
                );
            }
        }
    }
}

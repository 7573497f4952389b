use std::sync::OnceLock;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use onerel::fsa::Fsa;
use onerel::pairs::{convolve, letter_domain, unconvolve, Side};
use onerel::rewriting::{congruence_equal, shirshov_complete, BoundedCongruence, Congruence, RewriteSystem};
use onerel::structures::{multiplier_oracle, Flavor, Model};
use onerel::words::{Alphabet, Letter, Word};

fn ab() -> Alphabet {
    Alphabet::new(&['a', 'b']).unwrap()
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u8..2, 0..=max).prop_map(|v| Word(v.into_iter().map(Letter).collect()))
}

/// A random automaton over {a, b} with ε-moves.
fn automaton() -> impl Strategy<Value = Fsa<Letter>> {
    (1usize..6)
        .prop_flat_map(|n| {
            (Just(n), prop::collection::vec(any::<bool>(), n), prop::collection::vec((0..n, 0u8..3, 0..n), 0..14))
        })
        .prop_map(|(n, acc, edges)| {
            let mut m = Fsa::new(letter_domain(&ab()));
            for a in acc.iter().take(n) {
                m.add_state(*a);
            }
            m.set_initial(0);
            for (s, sym, d) in edges {
                m.add_transition(s, if sym == 2 { None } else { Some(Letter(sym)) }, d);
            }
            m
        })
}

/// Complete systems of one-relator presentations used by the properties.
fn systems() -> &'static [(RewriteSystem, (Word, Word))] {
    static SYSTEMS: OnceLock<Vec<(RewriteSystem, (Word, Word))>> = OnceLock::new();
    SYSTEMS.get_or_init(|| {
        let a = ab();
        [("aba", "ba"), ("ab", "ba"), ("aaa", "bbb"), ("aab", "ab"), ("aba", "bb"), ("abb", "bb"), ("aa", "b")]
            .iter()
            .map(|(u, v)| {
                let rel = (a.w(u), a.w(v));
                (shirshov_complete(std::slice::from_ref(&rel), &a, 64, 16).unwrap(), rel)
            })
            .collect()
    })
}

proptest! {
    #[test]
    fn determinize_and_minimize_keep_the_language(m in automaton()) {
        let d = m.determinize();
        let min = m.minimize();
        prop_assert!(d.is_deterministic());
        prop_assert_eq!(m.enumerate(6), d.enumerate(6));
        prop_assert_eq!(m.enumerate(6), min.enumerate(6));
        prop_assert!(min.num_states() <= d.complete().num_states());
    }

    #[test]
    fn complement_partitions_words(m in automaton(), w in word(7)) {
        prop_assert_ne!(m.contains(&w), m.complement().contains(&w));
    }

    #[test]
    fn equivalence_matches_enumeration(m in automaton(), n in automaton()) {
        if m.is_equivalent(&n) {
            prop_assert_eq!(m.enumerate(8), n.enumerate(8));
        }
        prop_assert!(m.is_equivalent(&m.reverse().reverse()));
    }

    #[test]
    fn convolution_round_trip(u in word(8), v in word(8)) {
        prop_assume!(!(u.is_empty() && v.is_empty()));
        for side in [Side::Right, Side::Left] {
            let c = convolve(&u, &v, side).unwrap();
            prop_assert_eq!(c.len(), u.len().max(v.len()));
            prop_assert_eq!(unconvolve(&c, side).unwrap(), (u.clone(), v.clone()));
        }
    }

    #[test]
    fn normal_forms_are_stable(w in word(8), seed in any::<u64>()) {
        for (rs, rel) in systems() {
            let nf = rs.reduce(&w);
            prop_assert!(rs.is_irreducible(&nf));
            prop_assert_eq!(rs.reduce(&nf), nf.clone());
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            prop_assert_eq!(rs.reduce_random(&w, &mut rng), nf.clone());
            if w.len() <= 6 && !w.is_empty() {
                prop_assert_eq!(congruence_equal(&w, &nf, std::slice::from_ref(rel), 12), Congruence::Equal);
            }
        }
    }
}

#[test]
fn class_count_matches_normal_forms() {
    let a = ab();
    for (rs, rel) in systems() {
        let cong = BoundedCongruence::new(&a.generators(), std::slice::from_ref(rel), 12);
        let classes: std::collections::BTreeSet<usize> =
            a.words_up_to(6).iter().filter(|w| !w.is_empty()).filter_map(|w| cong.class(w)).collect();
        assert_eq!(classes.len(), rs.irr_language().enumerate(6).len(), "{:?}", rs.render());
    }
}

#[test]
fn multiplier_length_difference_is_bounded() {
    // for length-preserving relations the images differ by at most one letter
    let a = ab();
    for (u, v) in [("ab", "ba"), ("aba", "bab"), ("aab", "bba")] {
        let rs = shirshov_complete(&[(a.w(u), a.w(v))], &a, 64, 16).unwrap();
        let model = Model::plain(rs.clone());
        for c in a.generators() {
            for f in Flavor::ALL {
                let s = multiplier_oracle(&rs.irr_language(), &model, Some(c), f, 8).unwrap();
                for (x, y) in &s.positives {
                    assert!(x.len().abs_diff(y.len()) <= 1, "{u}={v}: ({x}, {y})");
                }
            }
        }
    }
}

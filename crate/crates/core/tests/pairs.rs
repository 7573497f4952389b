use std::collections::BTreeSet;

use proptest::prelude::*;

use onerel::pairs::{
    enumerate_pairs, max_padding, odot_left, odot_right, swap_side, synchronize, PairFsa, Relation, Side,
};
use onerel::words::{Alphabet, Letter, Word};

fn ab() -> Alphabet {
    Alphabet::new(&['a', 'b']).unwrap()
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u8..2, 0..=max).prop_map(|v| Word(v.into_iter().map(Letter).collect()))
}

fn finite_relation() -> impl Strategy<Value = Vec<(Word, Word)>> {
    prop::collection::vec((word(3), word(3)), 1..4)
}

fn sync(pairs: &[(Word, Word)], side: Side) -> PairFsa {
    let r = pairs.iter().skip(1).fold(Relation::pair(&pairs[0].0, &pairs[0].1), |r, (u, v)| r.or(Relation::pair(u, v)));
    synchronize(&r, 6, side, &ab())
}

fn accepted(m: &PairFsa, side: Side) -> BTreeSet<(Word, Word)> {
    enumerate_pairs(m, side, 8, 8)
        .into_iter()
        .map(|p| {
            p.unwrap_or_else(|w| {
                assert!(w.is_empty(), "invalid convolution accepted");
                (Word::empty(), Word::empty())
            })
        })
        .collect()
}

fn bound(m: &PairFsa, side: Side) -> usize {
    max_padding(m, side, &ab()).unwrap().unwrap_or(0)
}

proptest! {
    #[test]
    fn odot_concatenates_pairs(m in finite_relation(), n in finite_relation()) {
        for side in [Side::Right, Side::Left] {
            let (fm, fn_) = (sync(&m, side), sync(&n, side));
            let got = match side {
                Side::Right => odot_right(&fm, &fn_, bound(&fm, side), &ab()),
                Side::Left => odot_left(&fm, &fn_, bound(&fm, side), bound(&fn_, side), &ab()),
            }
            .unwrap();
            let want: BTreeSet<(Word, Word)> = accepted(&fm, side)
                .iter()
                .flat_map(|(a, b)| accepted(&fn_, side).into_iter().map(move |(c, d)| (a.concat(&c), b.concat(&d))))
                .collect();
            prop_assert_eq!(accepted(&got, side), want);
        }
    }

    #[test]
    fn swap_round_trip(m in finite_relation()) {
        let fm = sync(&m, Side::Right);
        let k = bound(&fm, Side::Right);
        let left = swap_side(&fm, k, Side::Right, &ab()).unwrap();
        prop_assert_eq!(accepted(&left, Side::Left), accepted(&fm, Side::Right));
        prop_assert!(swap_side(&left, k, Side::Left, &ab()).unwrap().is_equivalent(&fm));
    }
}

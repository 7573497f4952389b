use onerel::classifier::{all_patterns, build_witness, canonicalize, classify, RelatorPresentation, Tri};
use onerel::rewriting::shirshov_complete;
use onerel::structures::{multiplier_oracle, nerode_lower_bound, reverse_structure, verify_structure, Flavor, Model};
use onerel::words::{Alphabet, Word};

fn two_letter_presentations() -> Vec<(Word, Word)> {
    let a = Alphabet::new(&['a', 'b']).unwrap();
    let gens = a.generators();
    let mut out = Vec::new();
    for lu in 1..=3 {
        for lv in 0..=lu {
            for u in Alphabet::words_of_length(&gens, lu) {
                for v in Alphabet::words_of_length(&gens, lv) {
                    if u != v {
                        out.push((u.clone(), v));
                    }
                }
            }
        }
    }
    out
}

#[test]
fn verdicts_are_invariant_under_renaming() {
    let ab = Alphabet::new(&['a', 'b']).unwrap();
    let pq = Alphabet::new(&['p', 'q']).unwrap();
    for (u, v) in two_letter_presentations() {
        let p = RelatorPresentation::new(ab.clone(), u.clone(), v.clone()).unwrap();
        // a ↔ b, and a fresh pair of names
        let swap =
            |w: &Word| Word(w.iter().map(|l| ab.letter(if ab.name(*l) == 'a' { 'b' } else { 'a' }).unwrap()).collect());
        let q = RelatorPresentation::new(ab.clone(), swap(&u), swap(&v)).unwrap();
        let r = RelatorPresentation::new(pq.clone(), u.clone(), v.clone()).unwrap();
        let base = classify(&p).unwrap();
        assert_eq!(base, classify(&q).unwrap(), "{}", p.render());
        assert_eq!(base, classify(&r).unwrap(), "{}", p.render());
        assert_eq!(canonicalize(&p).pattern, canonicalize(&q).pattern);
    }
}

#[test]
fn prefix_automatic_iff_automatic() {
    for c in all_patterns(2) {
        let r = onerel::classifier::classify_pattern(&c.pattern, 2).unwrap();
        assert_eq!(r.prefix_automatic, r.automatic, "{}", c.pattern);
        if !r.automatic {
            assert_eq!(r.biautomatic, Tri::No);
        }
    }
}

#[test]
fn side_order_is_normalized() {
    let p = RelatorPresentation::parse("b=aba", None).unwrap();
    assert_eq!(p.render(), "aba=b");
    let m = RelatorPresentation::parse("abc=1", None).unwrap();
    assert_eq!(m.mode, onerel::classifier::Mode::Monoid);
}

#[test]
fn reversed_witnesses_verify_on_reversed_presentations() {
    let ab = Alphabet::new(&['a', 'b']).unwrap();
    for c in all_patterns(2) {
        let text: String = c
            .pattern
            .chars()
            .map(|ch| {
                if ch == 'x' {
                    'a'
                } else if ch == 'y' {
                    'b'
                } else {
                    ch
                }
            })
            .collect();
        let p = RelatorPresentation::parse(&text, Some(&ab)).unwrap();
        let r = classify(&p).unwrap();
        if !r.automatic {
            continue;
        }
        let s = build_witness(&p, &r).unwrap();
        assert!(s.flavors().contains(&Flavor::Rr));
        let rev = reverse_structure(&s);
        assert!(rev.flavors().contains(&Flavor::Ll), "{}", c.pattern);
        let report = verify_structure(&rev, 6).unwrap();
        assert!(report.passed(), "{}: {}", c.pattern, report.render(&rev.alphabet));
    }
}

#[test]
fn reversal_twice_is_the_original() {
    let p = RelatorPresentation::parse("aab=ab", None).unwrap();
    let s = build_witness(&p, &classify(&p).unwrap()).unwrap();
    let back = reverse_structure(&reverse_structure(&s));
    assert!(back.language.is_equivalent(&s.language));
    for (k, m) in &s.multipliers {
        assert!(back.multipliers[k].is_equivalent(m));
    }
}

fn strictly_increasing(u: &str, v: &str, letter: char, flavor: Flavor) -> Vec<usize> {
    let a = Alphabet::new(&['a', 'b']).unwrap();
    let rs = shirshov_complete(&[(a.w(u), a.w(v))], &a, 64, 16).unwrap();
    let sample =
        multiplier_oracle(&rs.irr_language(), &Model::plain(rs.clone()), a.letter(letter), flavor, 10).unwrap();
    let b = nerode_lower_bound(&sample, 5);
    [4, 6, 8, 10].iter().map(|&d| b[d].1).collect()
}

#[test]
fn extension_rows_grow_on_the_missing_side() {
    // xxy=y and xyy=x are prefix-automatic; one flavor beyond rr is not regular
    for (u, v, c, f) in [("aab", "b", 'b', Flavor::Lr), ("abb", "a", 'a', Flavor::Rl)] {
        let seq = strictly_increasing(u, v, c, f);
        assert!(seq.windows(2).all(|w| w[0] < w[1]), "{u}={v}: {seq:?}");
    }
}

#[test]
fn regular_multipliers_stay_bounded() {
    let seq = strictly_increasing("ab", "ba", 'a', Flavor::Rr);
    assert!(seq.windows(2).all(|w| w[0] == w[1]), "{seq:?}");
}

#[test]
fn out_of_scope_relator_is_rejected() {
    let p = RelatorPresentation::parse("abab=a", None).unwrap();
    assert!(matches!(classify(&p), Err(onerel::Error::OutOfScope(_))));
}

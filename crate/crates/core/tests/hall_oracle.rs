mod common;

use common::collector::{collect, Token};
use hallrf::hall::{AVector, CentralVector, Generator, GroupElement, QuotientSpec, Word};
use proptest::prelude::*;

fn to_word(tokens: &[Token]) -> Word {
    Word::new(
        tokens
            .iter()
            .map(|&(k, i, e)| {
                let g = match k {
                    't' => Generator::T,
                    'a' => Generator::A(i),
                    _ => Generator::C(i),
                };
                (g, e)
            })
            .collect(),
    )
    .unwrap()
}

fn check(tokens: &[Token]) {
    let g = GroupElement::evaluate(&to_word(tokens), &QuotientSpec::FreeCenter).unwrap();
    let (t, a, c) = collect(tokens);
    assert_eq!(g.t_exp(), t, "{tokens:?}");
    assert_eq!(g.a_part(), &AVector::from_entries(a), "{tokens:?}");
    assert_eq!(g.c_part(), &CentralVector::from_entries(c), "{tokens:?}");
}

#[test]
fn exhaustive_short_words_over_t_a0() {
    let letters: [Token; 4] = [('t', 0, 1), ('t', 0, -1), ('a', 0, 1), ('a', 0, -1)];
    let mut count = 0;
    for len in 0..=8u32 {
        for code in 0..4usize.pow(len) {
            let mut x = code;
            let word: Vec<Token> = (0..len)
                .map(|_| {
                    let l = letters[x % 4];
                    x /= 4;
                    l
                })
                .collect();
            check(&word);
            count += 1;
        }
    }
    assert_eq!(count, (4usize.pow(9) - 1) / 3);
}

#[test]
fn word_times_inverse_is_identity() {
    let letters: [Token; 4] = [('t', 0, 1), ('t', 0, -1), ('a', 0, 1), ('a', 0, -1)];
    for code in 0..4usize.pow(10) {
        if code % 7 != 0 {
            continue;
        }
        let mut x = code;
        let word: Vec<Token> = (0..10)
            .map(|_| {
                let l = letters[x % 4];
                x /= 4;
                l
            })
            .collect();
        let w = to_word(&word);
        let g = GroupElement::evaluate(&w, &QuotientSpec::FreeCenter).unwrap();
        let h = GroupElement::evaluate(&w.inverse(), &QuotientSpec::FreeCenter).unwrap();
        assert!(g.mul(&h).unwrap().is_identity());
    }
}

fn token() -> impl Strategy<Value = Token> {
    prop_oneof![
        (-3i64..=3).prop_filter("nonzero", |e| *e != 0).prop_map(|e| ('t', 0, e)),
        (-6i64..=6, -3i64..=3).prop_filter("nonzero", |(_, e)| *e != 0).prop_map(|(i, e)| ('a', i, e)),
        (-6i64..=6, -3i64..=3).prop_filter("nonzero", |(_, e)| *e != 0).prop_map(|(i, e)| ('c', i, e)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]
    #[test]
    fn random_words_match_collector(tokens in prop::collection::vec(token(), 0..20)) {
        check(&tokens);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]
    #[test]
    fn multiply_matches_collector_on_concatenation(
        x in prop::collection::vec(token(), 0..12),
        y in prop::collection::vec(token(), 0..12),
    ) {
        let spec = QuotientSpec::FreeCenter;
        let g = GroupElement::evaluate(&to_word(&x), &spec).unwrap();
        let h = GroupElement::evaluate(&to_word(&y), &spec).unwrap();
        let mut xy = x.clone();
        xy.extend(y);
        let (t, a, c) = collect(&xy);
        let gh = g.mul(&h).unwrap();
        prop_assert_eq!(gh.t_exp(), t);
        prop_assert_eq!(gh.a_part(), &AVector::from_entries(a));
        prop_assert_eq!(gh.c_part(), &CentralVector::from_entries(c));
        prop_assert!(g.mul(&g.inverse().unwrap()).unwrap().is_identity());
    }
}

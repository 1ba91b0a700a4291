//! Property tests for the word language.

use hopfimage::word::{align_words, enumerate_words, Letter, Word};
use proptest::prelude::*;

fn word_strategy(index_count: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..index_count, any::<bool>()), 0..5)
        .prop_map(|ls| Word(ls.into_iter().map(|(i, s)| Letter { index: i, starred: s }).collect()))
}

proptest! {
    #[test]
    fn subword_order_is_reflexive_and_transitive(
        a in word_strategy(2), b in word_strategy(2), c in word_strategy(2)
    ) {
        prop_assert!(a.is_subword_of(&a));
        if a.is_subword_of(&b) && b.is_subword_of(&c) {
            prop_assert!(a.is_subword_of(&c));
        }
    }

    #[test]
    fn subword_order_is_antisymmetric(a in word_strategy(2), b in word_strategy(2)) {
        if a.is_subword_of(&b) && b.is_subword_of(&a) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn involution_is_an_involution_and_reverses_order(a in word_strategy(2), b in word_strategy(2)) {
        prop_assert_eq!(a.involute().involute(), a.clone());
        prop_assert_eq!(a.is_subword_of(&b), a.involute().is_subword_of(&b.involute()));
    }

    #[test]
    fn alignment_matches_polarities_and_embeds_inputs(
        a in word_strategy(2), b in word_strategy(3)
    ) {
        let (left, right, combined) = align_words(&a, &b, 1, 2, 3);
        prop_assert_eq!(left.len(), a.len() + b.len());
        prop_assert_eq!(right.len(), left.len());
        prop_assert_eq!(combined.len(), left.len());
        for (l, r) in left.letters().iter().zip(right.letters()) {
            prop_assert_eq!(l.starred, r.starred);
        }
        prop_assert!(a.is_subword_of(&left));
        prop_assert!(b.is_subword_of(&right));
        for (c, (l, r)) in combined.letters().iter().zip(left.letters().iter().zip(right.letters())) {
            prop_assert_eq!(c.index, l.index * 3 + r.index);
            prop_assert_eq!(c.starred, l.starred);
        }
    }

    #[test]
    fn word_strings_roundtrip(a in word_strategy(4)) {
        prop_assert_eq!(Word::parse(&a.to_string()), Some(a));
    }
}

#[test]
fn enumeration_is_sorted_and_complete() {
    for index_count in 1..3 {
        for len in 0..4 {
            let words = enumerate_words(index_count, len);
            assert_eq!(words.len(), (2 * index_count).pow(len as u32));
            let mut sorted = words.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(words, sorted);
        }
    }
}

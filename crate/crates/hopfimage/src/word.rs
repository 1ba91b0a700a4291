//! Words over a family index set and its adjoint (starred) copies.
//!
//! Letters are `(index, starred)` pairs; the star involution toggles all
//! stars and reverses the word. Words are ordered by the subword relation
//! (delete letters, keep order) and enumerated lexicographically with the
//! letter order i0 < i0* < i1 < i1* < ….

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub index: usize,
    pub starred: bool,
}

impl Letter {
    pub fn plain(index: usize) -> Letter {
        Letter { index, starred: false }
    }

    pub fn starred(index: usize) -> Letter {
        Letter { index, starred: true }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "i{}{}", self.index, if self.starred { "*" } else { "" })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_indices(indices: &[(usize, bool)]) -> Word {
        Word(indices.iter().map(|&(i, s)| Letter { index: i, starred: s }).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// The star involution: reverse the word and toggle every star.
    pub fn involute(&self) -> Word {
        Word(
            self.0
                .iter()
                .rev()
                .map(|l| Letter { index: l.index, starred: !l.starred })
                .collect(),
        )
    }

    /// Subword order: true iff `self` embeds into `other` as a subsequence.
    pub fn is_subword_of(&self, other: &Word) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|l| it.any(|m| m == l))
    }

    /// Parses the serialized form "i0 i2* i1"; "()" is the empty word.
    pub fn parse(s: &str) -> Option<Word> {
        if s.trim() == "()" || s.trim().is_empty() {
            return Some(Word::empty());
        }
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let tok = tok.strip_prefix('i')?;
            let (digits, starred) = match tok.strip_suffix('*') {
                Some(d) => (d, true),
                None => (tok, false),
            };
            letters.push(Letter { index: digits.parse().ok()?, starred });
        }
        Some(Word(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// All (2·index_count)^length words of exactly the given length, in
/// lexicographic order.
pub fn enumerate_words(index_count: usize, length: usize) -> Vec<Word> {
    let alphabet: Vec<Letter> = (0..index_count)
        .flat_map(|i| [Letter::plain(i), Letter::starred(i)])
        .collect();
    let mut out = vec![Word::empty()];
    for _ in 0..length {
        let mut next = Vec::with_capacity(out.len() * alphabet.len());
        for w in &out {
            for &l in &alphabet {
                let mut v = w.0.clone();
                v.push(l);
                next.push(Word(v));
            }
        }
        out = next;
    }
    out
}

/// All words of length 0..=max_length, shortest first, lexicographic within
/// each length. This is the deterministic scan order used everywhere.
pub fn enumerate_words_up_to(index_count: usize, max_length: usize) -> Vec<Word> {
    (0..=max_length)
        .flat_map(|l| enumerate_words(index_count, l))
        .collect()
}

/// Padding-based alignment of a word over I with a word over J.
///
/// `left` is extended on the right by `default_left` letters carrying the
/// polarities of `right`; `right` is extended on the left by `default_right`
/// letters carrying the polarities of `left`. Both outputs have length
/// |left|+|right| with matching polarities position by position, and each
/// input is a subword of its aligned output. `combined` pairs them over
/// I×J, flattened as `i·right_index_count + j`.
pub fn align_words(
    left: &Word,
    right: &Word,
    default_left: usize,
    default_right: usize,
    right_index_count: usize,
) -> (Word, Word, Word) {
    let mut left_out = left.0.clone();
    left_out.extend(
        right
            .0
            .iter()
            .map(|l| Letter { index: default_left, starred: l.starred }),
    );
    let mut right_out: Vec<Letter> = left
        .0
        .iter()
        .map(|l| Letter { index: default_right, starred: l.starred })
        .collect();
    right_out.extend(right.0.iter().cloned());
    debug_assert_eq!(left_out.len(), right_out.len());
    let combined = left_out
        .iter()
        .zip(&right_out)
        .map(|(a, b)| {
            debug_assert_eq!(a.starred, b.starred, "aligned polarities must match");
            Letter { index: a.index * right_index_count + b.index, starred: a.starred }
        })
        .collect();
    (Word(left_out), Word(right_out), Word(combined))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(indices: &[(usize, bool)]) -> Word {
        Word::from_indices(indices)
    }

    #[test]
    fn involute_swaps_and_reverses() {
        assert_eq!(w(&[(0, false), (1, true)]).involute(), w(&[(1, false), (0, true)]));
        assert_eq!(Word::empty().involute(), Word::empty());
        assert_eq!(w(&[(0, false)]).involute(), w(&[(0, true)]));
    }

    #[test]
    fn subword_basics() {
        let big = w(&[(0, false), (2, true), (1, false)]);
        assert!(Word::empty().is_subword_of(&big));
        assert!(w(&[(0, false), (1, false)]).is_subword_of(&big));
        assert!(!w(&[(1, false), (0, false)]).is_subword_of(&w(&[(0, false), (1, false)])));
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(
            enumerate_words(1, 1),
            vec![w(&[(0, false)]), w(&[(0, true)])]
        );
        assert_eq!(enumerate_words(2, 0), vec![Word::empty()]);
        let len2 = enumerate_words(1, 2);
        assert_eq!(len2.len(), 4);
        assert_eq!(
            len2,
            vec![
                w(&[(0, false), (0, false)]),
                w(&[(0, false), (0, true)]),
                w(&[(0, true), (0, false)]),
                w(&[(0, true), (0, true)]),
            ]
        );
    }

    #[test]
    fn align_pads_with_matching_polarities() {
        let (l, r, c) = align_words(&w(&[(0, false)]), &Word::empty(), 0, 0, 1);
        assert_eq!(l, w(&[(0, false)]));
        assert_eq!(r, w(&[(0, false)]));
        assert_eq!(c, w(&[(0, false)]));

        let (l, r, c) = align_words(&w(&[(1, false)]), &w(&[(0, true)]), 0, 0, 2);
        assert_eq!(l, w(&[(1, false), (0, true)]));
        assert_eq!(r, w(&[(0, false), (0, true)]));
        assert_eq!(c, w(&[(2, false), (0, true)]));

        let (l, r, c) = align_words(&Word::empty(), &Word::empty(), 0, 0, 1);
        assert!(l.is_empty() && r.is_empty() && c.is_empty());
    }

    #[test]
    fn align_inputs_are_subwords_of_outputs() {
        let a = w(&[(0, false), (1, true)]);
        let b = w(&[(1, true), (0, false), (0, true)]);
        let (l, r, _) = align_words(&a, &b, 0, 1, 2);
        assert!(a.is_subword_of(&l));
        assert!(b.is_subword_of(&r));
        assert_eq!(l.len(), a.len() + b.len());
    }

    #[test]
    fn word_string_roundtrip() {
        let word = w(&[(0, false), (2, true), (1, false)]);
        assert_eq!(word.to_string(), "i0 i2* i1");
        assert_eq!(Word::parse("i0 i2* i1").unwrap(), word);
    }
}

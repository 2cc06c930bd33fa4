//! Words, their logical encoding, and variable assignments.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// A finite, ordered set of single-character letters.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet(Arc<[char]>);

impl Alphabet {
    pub fn new(letters: &str) -> Result<Self> {
        let chars: Vec<char> = letters.chars().collect();
        if chars.is_empty() {
            return Err(Error::InvalidAlphabet("empty alphabet".to_string()));
        }
        for (i, c) in chars.iter().enumerate() {
            if c.is_whitespace() || "()".contains(*c) {
                return Err(Error::InvalidAlphabet(alloc::format!("illegal letter {c:?}")));
            }
            if chars[..i].contains(c) {
                return Err(Error::InvalidAlphabet(alloc::format!("duplicate letter {c:?}")));
            }
        }
        Ok(Alphabet(chars.into()))
    }

    pub fn binary() -> Self {
        Alphabet(Arc::from(['0', '1']))
    }

    pub fn letters(&self) -> &[char] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, c: char) -> bool {
        self.0.contains(&c)
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.0.iter().position(|&x| x == c)
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({self})")
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

/// A finite word over an alphabet.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<char>,
}

impl Word {
    pub fn new(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let letters: Vec<char> = text.chars().collect();
        if let Some(&bad) = letters.iter().find(|c| !alphabet.contains(**c)) {
            return Err(Error::UnknownLetter(bad));
        }
        Ok(Word {
            alphabet: alphabet.clone(),
            letters,
        })
    }

    pub fn empty(alphabet: &Alphabet) -> Self {
        Word {
            alphabet: alphabet.clone(),
            letters: Vec::new(),
        }
    }

    /// Binary word; panics on letters other than `0`/`1`. Intended for tests
    /// and examples.
    pub fn binary(text: &str) -> Self {
        Word::new(&Alphabet::binary(), text).expect("binary word")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    /// `ℓ(w)`.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letter at a 1-based position.
    pub fn letter_at(&self, pos: usize) -> Option<char> {
        pos.checked_sub(1).and_then(|i| self.letters.get(i).copied())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word {
            alphabet: self.alphabet.clone(),
            letters,
        }
    }

    pub fn push(&self, c: char) -> Word {
        let mut letters = self.letters.clone();
        letters.push(c);
        Word {
            alphabet: self.alphabet.clone(),
            letters,
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.letters.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_string())
    }
}

/// All words of length `0..=max_len`, shortest first and lexicographic (in
/// alphabet order) within each length.
pub fn enumerate_words(alphabet: &Alphabet, max_len: usize) -> Vec<Word> {
    let mut out = alloc::vec![Word::empty(alphabet)];
    let mut start = 0;
    for _ in 0..max_len {
        let end = out.len();
        for i in start..end {
            for &c in alphabet.letters() {
                let next = out[i].push(c);
                out.push(next);
            }
        }
        start = end;
    }
    out
}

/// Number of words of length at most `max_len`.
pub fn count_words(alphabet: &Alphabet, max_len: usize) -> usize {
    (0..=max_len).map(|k| alphabet.len().pow(k as u32)).sum()
}

/// The structure `⟨{0} ∪ [n], <, (P_a)_a⟩` of a word. Element 0 carries no
/// letter; element `i ≥ 1` carries the `i`-th letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordStructure {
    letters: Vec<Option<char>>,
}

impl WordStructure {
    /// Number of elements, `ℓ(w) + 1`.
    pub fn universe_size(&self) -> usize {
        self.letters.len()
    }

    /// The largest element `ℓ(w)`.
    pub fn last(&self) -> usize {
        self.letters.len() - 1
    }

    pub fn universe(&self) -> core::ops::RangeInclusive<usize> {
        0..=self.last()
    }

    pub fn positions(&self) -> core::ops::RangeInclusive<usize> {
        1..=self.last()
    }

    pub fn has_letter(&self, element: usize, letter: char) -> bool {
        self.letters.get(element).copied().flatten() == Some(letter)
    }

    pub fn letter_at(&self, element: usize) -> Option<char> {
        self.letters.get(element).copied().flatten()
    }

    /// `P_a` as a sorted list of elements.
    pub fn letter_predicate(&self, letter: char) -> Vec<usize> {
        self.universe().filter(|&i| self.has_letter(i, letter)).collect()
    }

    /// Mask of the whole universe; fails past 64 elements.
    pub fn universe_mask(&self) -> Result<u64> {
        let n = self.universe_size();
        if n > 64 {
            return Err(Error::UniverseTooLarge(n));
        }
        Ok(if n == 64 { u64::MAX } else { (1u64 << n) - 1 })
    }

    /// Mask of the letter-bearing elements `1..=ℓ(w)`.
    pub fn positions_mask(&self) -> Result<u64> {
        Ok(self.universe_mask()? & !1)
    }
}

pub fn word_to_structure(w: &Word) -> WordStructure {
    let mut letters = Vec::with_capacity(w.len() + 1);
    letters.push(None);
    letters.extend(w.letters.iter().copied().map(Some));
    WordStructure { letters }
}

/// A subset of a universe of at most 64 elements.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PosSet(pub u64);

impl PosSet {
    pub fn empty() -> Self {
        PosSet(0)
    }

    pub fn from_elements(elements: impl IntoIterator<Item = usize>) -> Self {
        PosSet(elements.into_iter().fold(0, |acc, e| acc | (1u64 << e)))
    }

    pub fn contains(self, e: usize) -> bool {
        e < 64 && self.0 >> e & 1 == 1
    }

    pub fn insert(&mut self, e: usize) {
        self.0 |= 1 << e;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn elements(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&e| self.contains(e))
    }

    /// All subsets of `mask`, in increasing numeric order.
    pub fn subsets(mask: u64) -> impl Iterator<Item = PosSet> {
        let mut next = Some(0u64);
        core::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some(cur.wrapping_sub(mask) & mask)
            };
            Some(PosSet(cur))
        })
    }
}

impl fmt::Debug for PosSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements()).finish()
    }
}

impl fmt::Display for PosSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// Values for free element and set variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    pub first_order: BTreeMap<String, usize>,
    pub second_order: BTreeMap<String, PosSet>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_element(mut self, var: &str, element: usize) -> Self {
        self.first_order.insert(var.to_string(), element);
        self
    }

    pub fn with_set(mut self, var: &str, set: PosSet) -> Self {
        self.second_order.insert(var.to_string(), set);
        self
    }

    /// Whether every value lies inside the universe of `s`.
    pub fn fits(&self, s: &WordStructure) -> bool {
        let size = s.universe_size();
        self.first_order.values().all(|&e| e < size)
            && self
                .second_order
                .values()
                .all(|set| set.elements().all(|e| e < size))
    }

    /// All assignments of the given variables, ranging over the elements
    /// (or subsets) of `mask`.
    pub fn enumerate(fo: &[String], so: &[String], mask: u64) -> Vec<Assignment> {
        let elements: Vec<usize> = PosSet(mask).elements().collect();
        let mut out = alloc::vec![Assignment::new()];
        for v in fo {
            out = out
                .into_iter()
                .flat_map(|a| {
                    elements
                        .iter()
                        .map(move |&e| a.clone().with_element(v, e))
                })
                .collect();
        }
        for v in so {
            out = out
                .into_iter()
                .flat_map(|a| PosSet::subsets(mask).map(move |s| a.clone().with_set(v, s)))
                .collect();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn empty_word_structure() {
        let s = word_to_structure(&Word::binary(""));
        assert_eq!(s.universe_size(), 1);
        assert!(s.letter_predicate('0').is_empty());
        assert!(s.letter_predicate('1').is_empty());
    }

    #[test]
    fn small_structures() {
        let s = word_to_structure(&Word::binary("01"));
        assert_eq!(s.universe().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(s.letter_predicate('0'), vec![1]);
        assert_eq!(s.letter_predicate('1'), vec![2]);
        let s = word_to_structure(&Word::binary("111"));
        assert_eq!(s.letter_predicate('1'), vec![1, 2, 3]);
        assert!(s.letter_predicate('0').is_empty());
    }

    #[test]
    fn enumeration_order() {
        let words: Vec<_> = enumerate_words(&Alphabet::binary(), 2)
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(words, ["", "0", "1", "00", "01", "10", "11"]);
        let a = Alphabet::new("a").unwrap();
        let words: Vec<_> = enumerate_words(&a, 3).iter().map(|w| w.to_string()).collect();
        assert_eq!(words, ["", "a", "aa", "aaa"]);
        assert_eq!(enumerate_words(&Alphabet::binary(), 0).len(), 1);
        assert_eq!(count_words(&Alphabet::binary(), 4), 31);
    }

    #[test]
    fn unknown_letter() {
        assert_eq!(Word::new(&Alphabet::binary(), "012"), Err(Error::UnknownLetter('2')));
        assert!(Alphabet::new("aa").is_err());
        assert!(Alphabet::new("").is_err());
    }

    #[test]
    fn subsets_of_mask() {
        let subs: Vec<u64> = PosSet::subsets(0b101).map(|s| s.0).collect();
        assert_eq!(subs, vec![0, 1, 4, 5]);
        assert_eq!(PosSet::subsets(0).count(), 1);
    }

    #[test]
    fn concatenation_preserves_prefix_letters() {
        let u = Word::binary("0110");
        let v = Word::binary("101");
        let su = word_to_structure(&u);
        let suv = word_to_structure(&u.concat(&v));
        for i in su.positions() {
            for a in ['0', '1'] {
                assert_eq!(su.has_letter(i, a), suv.has_letter(i, a));
            }
        }
    }
}

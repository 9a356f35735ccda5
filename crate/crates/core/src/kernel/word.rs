//! Letters and freely reduced words in the free group of rank `g`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Generator names, in order. Uppercase denotes the inverse.
pub const ALPHABET: &[u8] = b"xyzabcdefghijklmnopqrstuvw";

/// A generator or inverse generator. Stored as `+j` or `-j` for generator `j >= 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter(i8);

impl Letter {
    pub fn generator(index: usize) -> Letter {
        Letter(index as i8 + 1)
    }

    pub fn from_raw(raw: i8) -> Letter {
        assert!(raw != 0, "letter zero is not a generator");
        Letter(raw)
    }

    pub fn raw(self) -> i8 {
        self.0
    }

    /// Zero-based generator index.
    pub fn gen_index(self) -> usize {
        (self.0.unsigned_abs() - 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }

    /// Dense index in `0..2g`: generator `j` maps to `2j`, its inverse to `2j + 1`.
    pub fn dense(self) -> usize {
        2 * self.gen_index() + usize::from(self.is_inverse())
    }

    pub fn from_dense(i: usize) -> Letter {
        let gen = (i / 2) as i8 + 1;
        if i % 2 == 0 {
            Letter(gen)
        } else {
            Letter(-gen)
        }
    }

    pub fn to_char(self) -> char {
        let c = ALPHABET[self.gen_index()] as char;
        if self.is_inverse() {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }

    pub fn from_char(c: char, rank: usize) -> Result<Letter> {
        let lower = c.to_ascii_lowercase();
        let pos = ALPHABET
            .iter()
            .position(|&a| a as char == lower)
            .filter(|&p| p < rank)
            .ok_or(Error::Alphabet { letter: c, rank })?;
        let l = Letter::generator(pos);
        Ok(if c.is_ascii_uppercase() { l.inverse() } else { l })
    }

    /// Every letter of the rank-`rank` alphabet, in dense order.
    pub fn all(rank: usize) -> impl Iterator<Item = Letter> {
        (0..2 * rank).map(Letter::from_dense)
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dense().cmp(&other.dense())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// A freely reduced word. The empty word is the identity.
///
/// Words compare shortlex: shorter first, then letter by letter.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    letters: Vec<Letter>,
}

impl ReducedWord {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        ReducedWord { letters: out }
    }

    /// Wraps letters that are already known to be reduced.
    pub(crate) fn from_reduced_unchecked(letters: Vec<Letter>) -> Self {
        debug_assert!(letters.windows(2).all(|w| w[0] != w[1].inverse()));
        ReducedWord { letters }
    }

    /// Parses a word over the rank-`rank` alphabet and reduces it.
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| Letter::from_char(c, rank))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::reduce(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    pub fn inverse(&self) -> Self {
        ReducedWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn mul(&self, other: &ReducedWord) -> Self {
        Self::reduce(self.letters.iter().chain(other.letters.iter()).copied())
    }

    /// Appends a single letter, reducing.
    pub fn push(&self, l: Letter) -> Self {
        let mut letters = self.letters.clone();
        if letters.last() == Some(&l.inverse()) {
            letters.pop();
        } else {
            letters.push(l);
        }
        ReducedWord { letters }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = ReducedWord::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    pub fn prefix(&self, n: usize) -> Self {
        ReducedWord {
            letters: self.letters[..n].to_vec(),
        }
    }

    pub fn starts_with(&self, other: &ReducedWord) -> bool {
        self.letters.starts_with(&other.letters)
    }

    /// Length of the longest common prefix.
    pub fn common_prefix_len(&self, other: &ReducedWord) -> usize {
        self.letters
            .iter()
            .zip(other.letters.iter())
            .take_while(|(a, b)| a == b)
            .count()
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(a), Some(b)) => self.len() == 1 || a != b.inverse(),
            _ => true,
        }
    }

    /// All reduced words of length exactly `n` over the rank-`rank` alphabet.
    pub fn all_of_length(rank: usize, n: usize) -> Vec<ReducedWord> {
        let mut layer = vec![ReducedWord::identity()];
        for _ in 0..n {
            let mut next = Vec::with_capacity(layer.len() * (2 * rank - 1).max(1));
            for w in &layer {
                for l in Letter::all(rank) {
                    if w.last() != Some(l.inverse()) {
                        let mut letters = w.letters.clone();
                        letters.push(l);
                        next.push(ReducedWord { letters });
                    }
                }
            }
            layer = next;
        }
        layer
    }

    /// All reduced words of length at most `n`, shortest first.
    pub fn ball(rank: usize, n: usize) -> Vec<ReducedWord> {
        (0..=n)
            .flat_map(|k| ReducedWord::all_of_length(rank, k))
            .collect()
    }
}

impl Ord for ReducedWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for ReducedWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\"", self)
    }
}

/// A conjugacy class, stored as the least rotation of a cyclically reduced word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CyclicWord {
    letters: ReducedWord,
}

impl CyclicWord {
    /// Cyclically reduces `w` and picks the least rotation.
    pub fn new(w: &ReducedWord) -> Result<Self> {
        let mut letters = w.letters().to_vec();
        while letters.len() >= 2 && letters[0] == letters[letters.len() - 1].inverse() {
            letters.pop();
            letters.remove(0);
        }
        if letters.is_empty() {
            return Err(Error::TrivialCyclicWord);
        }
        let n = letters.len();
        let best = (0..n)
            .map(|r| {
                let mut rot = letters[r..].to_vec();
                rot.extend_from_slice(&letters[..r]);
                rot
            })
            .min()
            .expect("nonempty");
        Ok(CyclicWord {
            letters: ReducedWord::from_reduced_unchecked(best),
        })
    }

    pub fn word(&self) -> &ReducedWord {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letters)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> ReducedWord {
        ReducedWord::parse(s, 2).unwrap()
    }

    #[test]
    fn cancellation_examples() {
        assert_eq!(w("xX"), ReducedWord::identity());
        assert_eq!(w("xXy").to_string(), "y");
        assert_eq!(w("xyYx").to_string(), "xx");
    }

    #[test]
    fn unknown_letter_is_an_alphabet_error() {
        assert!(matches!(
            ReducedWord::parse("xq", 2),
            Err(Error::Alphabet { letter: 'q', .. })
        ));
        assert!(ReducedWord::parse("z", 2).is_err());
        assert!(ReducedWord::parse("z", 3).is_ok());
    }

    #[test]
    fn inverse_and_product() {
        let a = w("xyX");
        assert_eq!(a.mul(&a.inverse()), ReducedWord::identity());
        assert_eq!(a.pow(2).to_string(), "xyyX");
        assert_eq!(a.pow(-1), a.inverse());
    }

    #[test]
    fn cyclic_word_is_rotation_canonical() {
        let a = CyclicWord::new(&w("yXYx")).unwrap();
        let b = CyclicWord::new(&w("xyXY")).unwrap();
        assert_eq!(a, b);
        let c = CyclicWord::new(&w("yxyXY")).unwrap();
        assert_eq!(c.to_string(), "y");
        assert!(CyclicWord::new(&w("xyYX")).is_err());
    }

    #[test]
    fn ball_sizes() {
        assert_eq!(ReducedWord::all_of_length(2, 3).len(), 4 * 3 * 3);
        assert_eq!(ReducedWord::ball(2, 2).len(), 1 + 4 + 12);
    }
}

//! Words over the alphabet `X_n = {0, …, n−1}`: prefix arithmetic,
//! rotations, prime (aperiodic) words and their rotation classes, reversal,
//! and necklace enumeration.
//!
//! Words serialize as comma-separated decimal letters; the empty word
//! serializes as `-`. Letters are integers (not characters) so alphabets
//! with `n > 10` need no escaping.

use crate::error::{Error, Result};
use std::fmt;

/// A single letter of `X_n`.
pub type Letter = u32;

/// The alphabet `X_n`; `n ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    n: u32,
}

impl Alphabet {
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::Format(format!("alphabet size must be ≥ 2, got {n}")));
        }
        Ok(Alphabet { n })
    }

    pub fn size(&self) -> u32 {
        self.n
    }

    /// Iterator over the letters `0, …, n−1`.
    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.n
    }

    pub fn contains(&self, x: Letter) -> bool {
        x < self.n
    }
}

/// A finite word over some `X_n` (the alphabet is carried externally).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        Word(letters.into_iter().collect())
    }

    pub fn single(x: Letter) -> Self {
        Word(vec![x])
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

    pub fn push(&mut self, x: Letter) {
        self.0.push(x);
    }

    pub fn extend(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `w^k`.
    pub fn repeat(&self, k: usize) -> Word {
        let mut v = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            v.extend_from_slice(&self.0);
        }
        Word(v)
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.len() >= self.0.len() && other.0[..self.0.len()] == self.0[..]
    }

    /// Prefix-comparability: one of the two is a prefix of the other.
    pub fn comparable(&self, other: &Word) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    /// `other − self`: strips `self` off the front of `other`.
    pub fn strip_from(&self, other: &Word) -> Option<Word> {
        if self.is_prefix_of(other) {
            Some(Word(other.0[self.0.len()..].to_vec()))
        } else {
            None
        }
    }

    /// Greatest common prefix of two words.
    pub fn gcp(&self, other: &Word) -> Word {
        let k = self
            .0
            .iter()
            .zip(other.0.iter())
            .take_while(|(a, b)| a == b)
            .count();
        Word(self.0[..k].to_vec())
    }

    /// The reversed word `w̄`.
    pub fn reverse(&self) -> Word {
        let mut v = self.0.clone();
        v.reverse();
        Word(v)
    }

    /// Rotation by `i`: `w_i … w_{k−1} w_0 … w_{i−1}`.
    pub fn rotation(&self, i: usize) -> Word {
        let k = self.len();
        if k == 0 {
            return Word::empty();
        }
        let i = i % k;
        let mut v = self.0[i..].to_vec();
        v.extend_from_slice(&self.0[..i]);
        Word(v)
    }

    /// True iff `w` has no proper root: it differs from every non-trivial
    /// rotation of itself.
    pub fn is_prime(&self) -> Result<bool> {
        if self.is_empty() {
            return Err(Error::Domain("empty word has no primality".into()));
        }
        Ok(self.primitive_root().len() == self.len())
    }

    /// Shortest `γ` with `w = γ^{|w|/|γ|}`.
    pub fn primitive_root(&self) -> Word {
        let k = self.len();
        for d in 1..=k {
            if k % d == 0 && (0..k).all(|i| self.0[i] == self.0[i % d]) {
                return Word(self.0[..d].to_vec());
            }
        }
        unreachable!("d = k always divides")
    }

    /// Lexicographically least rotation.
    pub fn canonical_rotation(&self) -> Word {
        (0..self.len().max(1))
            .map(|i| self.rotation(i))
            .min()
            .unwrap_or_else(Word::empty)
    }

    /// Checks every letter against the alphabet.
    pub fn check_alphabet(&self, a: Alphabet) -> Result<()> {
        for &x in &self.0 {
            if !a.contains(x) {
                return Err(Error::Format(format!(
                    "letter {x} out of alphabet of size {}",
                    a.size()
                )));
            }
        }
        Ok(())
    }

    /// Parses the comma-separated-decimals format (`-` is the empty word).
    pub fn parse(s: &str) -> Result<Word> {
        let s = s.trim();
        if s == "-" || s.is_empty() {
            return Ok(Word::empty());
        }
        let mut v = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            let x: Letter = part
                .parse()
                .map_err(|_| Error::Format(format!("bad letter {part:?} in word {s:?}")))?;
            v.push(x);
        }
        Ok(Word(v))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "-");
        }
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Rotation class `[w]` of a prime word, keyed by the lexicographically
/// minimal rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RotationClass {
    rep: Word,
}

impl RotationClass {
    /// Class of a prime word (any rotation may be passed in).
    pub fn of(w: &Word) -> Result<RotationClass> {
        if !w.is_prime()? {
            return Err(Error::Domain(format!("word {w} is not prime")));
        }
        Ok(RotationClass {
            rep: w.canonical_rotation(),
        })
    }

    pub fn rep(&self) -> &Word {
        &self.rep
    }

    pub fn len(&self) -> usize {
        self.rep.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Reversal descends to classes of prime words.
    pub fn reverse(&self) -> RotationClass {
        RotationClass {
            rep: self.rep.reverse().canonical_rotation(),
        }
    }
}

impl fmt::Display for RotationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.rep)
    }
}

/// Enumerates all words of length `k` over `X_n` in lexicographic order.
pub fn all_words(n: u32, k: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..k {
        let mut next = Vec::with_capacity(out.len() * n as usize);
        for w in &out {
            for x in 0..n {
                let mut v = w.clone();
                v.push(x);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// One canonical representative per rotation class of prime words of
/// length `k`, sorted lexicographically.
pub fn enumerate_prime_classes(n: u32, k: usize) -> Result<Vec<RotationClass>> {
    if n < 2 || k < 1 {
        return Err(Error::Domain(format!(
            "prime-class enumeration needs n ≥ 2 and k ≥ 1, got ({n},{k})"
        )));
    }
    let mut reps = Vec::new();
    for w in all_words(n, k) {
        if w.is_prime()? && w == w.canonical_rotation() {
            reps.push(RotationClass { rep: w });
        }
    }
    Ok(reps)
}

/// Necklace-count value `(1/k)·Σ_{d|k} μ(d)·n^{k/d}` (aperiodic classes).
pub fn necklace_count(n: u64, k: u64) -> u64 {
    let mobius = |mut d: u64| -> i64 {
        let mut m = 1i64;
        let mut p = 2;
        while p * p <= d {
            if d % p == 0 {
                d /= p;
                if d % p == 0 {
                    return 0;
                }
                m = -m;
            }
            p += 1;
        }
        if d > 1 {
            m = -m;
        }
        m
    };
    let mut total = 0i64;
    for d in 1..=k {
        if k % d == 0 {
            total += mobius(d) * (n as i64).pow((k / d) as u32);
        }
    }
    (total / k as i64) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::from_letters(s.chars().map(|c| c.to_digit(10).unwrap()))
    }

    #[test]
    fn primality() {
        assert!(w("01").is_prime().unwrap());
        assert!(!w("0101").is_prime().unwrap());
        assert!(w("0").is_prime().unwrap());
        assert!(Word::empty().is_prime().is_err());
    }

    #[test]
    fn canonical_rotations() {
        assert_eq!(w("100").canonical_rotation(), w("001"));
        assert_eq!(w("000").canonical_rotation(), w("000"));
        assert_eq!(w("01").canonical_rotation(), w("01"));
    }

    #[test]
    fn reversal() {
        assert_eq!(w("012").reverse(), w("210"));
        assert_eq!(Word::empty().reverse(), Word::empty());
        assert_eq!(w("00").reverse(), w("00"));
    }

    #[test]
    fn prime_class_enumeration() {
        let reps = |n, k| {
            enumerate_prime_classes(n, k)
                .unwrap()
                .iter()
                .map(|c| c.rep().clone())
                .collect::<Vec<_>>()
        };
        assert_eq!(reps(2, 1), vec![w("0"), w("1")]);
        assert_eq!(reps(2, 2), vec![w("01")]);
        assert_eq!(reps(2, 3), vec![w("001"), w("011")]);
        assert_eq!(reps(2, 4), vec![w("0001"), w("0011"), w("0111")]);
    }

    #[test]
    fn prime_class_counts_match_necklace_formula() {
        // counts for n = 2: [2,1,2,3,6,9,18,30]; n = 3: [3,3,8,18,48,116,312,810]
        let expect2 = [2usize, 1, 2, 3, 6, 9, 18, 30];
        let expect3 = [3usize, 3, 8, 18, 48, 116, 312, 810];
        for k in 1..=8usize {
            let c2 = enumerate_prime_classes(2, k).unwrap().len();
            let c3 = enumerate_prime_classes(3, k).unwrap().len();
            assert_eq!(c2, expect2[k - 1]);
            assert_eq!(c3, expect3[k - 1]);
            assert_eq!(c2 as u64, necklace_count(2, k as u64));
            assert_eq!(c3 as u64, necklace_count(3, k as u64));
        }
    }

    #[test]
    fn prime_iff_canonical_rotation_unique() {
        for word in all_words(2, 6) {
            let rots: Vec<Word> = (0..word.len()).map(|i| word.rotation(i)).collect();
            let canon = word.canonical_rotation();
            let count = rots.iter().filter(|r| **r == canon).count();
            assert_eq!(word.is_prime().unwrap(), count == 1);
        }
    }

    #[test]
    fn reverse_is_involution_on_classes() {
        for c in enumerate_prime_classes(3, 5).unwrap() {
            assert!(c.rep().reverse().is_prime().unwrap());
            assert_eq!(c.reverse().reverse(), c);
        }
    }

    #[test]
    fn word_format_round_trip() {
        for s in ["-", "0", "1,0,1", "12,0,3"] {
            let parsed = Word::parse(s).unwrap();
            assert_eq!(parsed.to_string(), s);
        }
        assert!(Word::parse("1,x").is_err());
    }

    #[test]
    fn prefix_arithmetic() {
        assert!(w("01").is_prefix_of(&w("011")));
        assert_eq!(w("01").strip_from(&w("0110")), Some(w("10")));
        assert_eq!(w("10").strip_from(&w("0110")), None);
        assert_eq!(w("0110").gcp(&w("0101")), w("01"));
    }
}

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::perm::{parse_word, Permutation};

/// A right `C_n`-orbit of permutation words: a necklace of `n + 1` beads
/// labelled `0..=n`, stored as the rotation that puts bead `0` first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CircularPermutation {
    word: Vec<usize>,
}

impl CircularPermutation {
    /// The orbit of `f` under `f -> f . tau^k`.
    pub fn from_permutation(f: &Permutation) -> Self {
        CircularPermutation {
            word: canonical_rotation(f.word()),
        }
    }

    /// Accepts any rotation of a permutation word.
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let f = Permutation::new(word)?;
        Ok(Self::from_permutation(&f))
    }

    pub fn degree(&self) -> usize {
        self.word.len() - 1
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// The representative whose word starts with bead `0`.
    pub fn representative(&self) -> Permutation {
        Permutation::from_word_unchecked(self.word.clone())
    }

    /// All `n!` necklaces of degree `n`, in lexicographic order.
    pub fn all(degree: usize) -> Vec<CircularPermutation> {
        (1..=degree)
            .permutations(degree)
            .map(|tail| {
                let mut word = Vec::with_capacity(degree + 1);
                word.push(0);
                word.extend(tail);
                CircularPermutation { word }
            })
            .collect()
    }

    /// Delete bead `i` and renumber.
    pub fn face(&self, i: usize) -> Result<CircularPermutation> {
        Ok(Self::from_permutation(&self.representative().face(i)?))
    }

    /// Insert bead `i + 1` right after bead `i`.
    pub fn degeneracy(&self, i: usize) -> Result<CircularPermutation> {
        Ok(Self::from_permutation(&self.representative().degeneracy(i)?))
    }

    /// True iff bead `i + 1` follows bead `i` somewhere around the circle,
    /// for some `i < n`.
    pub fn is_degenerate(&self) -> bool {
        let len = self.word.len();
        (0..len).any(|p| {
            let a = self.word[p];
            let b = self.word[(p + 1) % len];
            b == a + 1
        })
    }
}

fn canonical_rotation(word: &[usize]) -> Vec<usize> {
    let start = word.iter().position(|&v| v == 0).unwrap_or(0);
    word[start..].iter().chain(&word[..start]).copied().collect()
}

impl fmt::Display for CircularPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "circ:{}", self.word.iter().join(","))
    }
}

impl FromStr for CircularPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.strip_prefix("circ:").unwrap_or(s);
        CircularPermutation::new(parse_word(body)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circ(w: &[usize]) -> CircularPermutation {
        CircularPermutation::new(w.to_vec()).unwrap()
    }

    #[test]
    fn quotient_examples() {
        let q = |w: &[usize]| CircularPermutation::from_permutation(&Permutation::new(w.to_vec()).unwrap());
        assert_eq!(q(&[2, 0, 1]).word(), &[0, 1, 2]);
        assert_eq!(q(&[0, 1, 2]).word(), &[0, 1, 2]);
        assert_eq!(q(&[1, 0]), q(&[0, 1]));
    }

    #[test]
    fn constant_on_right_orbits() {
        for n in 0..6 {
            let tau = Permutation::tau(n);
            for f in Permutation::all(n) {
                let base = CircularPermutation::from_permutation(&f);
                let mut g = f.clone();
                for _ in 0..=n {
                    g = g.multiply(&tau).unwrap();
                    assert_eq!(CircularPermutation::from_permutation(&g), base);
                }
            }
        }
    }

    #[test]
    fn counts_and_degeneracy() {
        assert_eq!(CircularPermutation::all(2).len(), 2);
        assert_eq!(CircularPermutation::all(5).len(), 120);
        assert!(circ(&[0, 1, 2]).is_degenerate());
        assert!(!circ(&[0, 2, 1]).is_degenerate());
        assert!(circ(&[0, 1]).is_degenerate());
        assert!(!circ(&[0]).is_degenerate());
        let nondeg3: Vec<_> = CircularPermutation::all(3)
            .into_iter()
            .filter(|c| !c.is_degenerate())
            .collect();
        assert_eq!(nondeg3, vec![circ(&[0, 2, 1, 3]), circ(&[0, 3, 2, 1])]);
    }

    #[test]
    fn display_parse() {
        let c = circ(&[2, 1, 0]);
        assert_eq!(c.to_string(), "circ:0,2,1");
        assert_eq!("circ:0,2,1".parse::<CircularPermutation>().unwrap(), c);
    }
}

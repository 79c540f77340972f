//! Permutation words and the symmetric crossed simplicial group `S*`.
//!
//! A permutation of degree `n` is a bijection of `{0, ..., n}` stored as the
//! word `(f(0), ..., f(n))`. Faces delete a value from the word and
//! renumber; degeneracies double a value, putting the new value `i + 1`
//! immediately to the right of `i`. Multiplication is composition,
//! `(f * h)(j) = f(h(j))`, and interacts with faces and degeneracies through
//! the crossed relations
//!
//! ```text
//! d_i(h * f) = d_i(h) * d_{h^-1(i)}(f)
//! s_i(h * f) = s_i(h) * s_{h^-1(i)}(f)
//! ```
//!
//! The cyclic subgroup `C_n` is generated by `tau_n = (n, 0, 1, ..., n - 1)`.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::delta::{sort_factorization, MonotoneOperator, SetMap};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::InvalidPermutation(word));
        }
        let mut seen = vec![false; word.len()];
        for &v in &word {
            if v >= word.len() || seen[v] {
                return Err(Error::InvalidPermutation(word));
            }
            seen[v] = true;
        }
        Ok(Permutation { word })
    }

    pub(crate) fn from_word_unchecked(word: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(word.clone()).is_ok());
        Permutation { word }
    }

    pub fn identity(degree: usize) -> Self {
        Permutation {
            word: (0..=degree).collect(),
        }
    }

    /// The generator `tau_n = (n, 0, 1, ..., n - 1)` of `C_n`.
    pub fn tau(degree: usize) -> Self {
        let mut word = Vec::with_capacity(degree + 1);
        word.push(degree);
        word.extend(0..degree);
        Permutation { word }
    }

    /// All permutations of degree `n`, in lexicographic order of words.
    pub fn all(degree: usize) -> Vec<Permutation> {
        (0..=degree)
            .permutations(degree + 1)
            .map(|word| Permutation { word })
            .collect()
    }

    pub fn degree(&self) -> usize {
        self.word.len() - 1
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn into_word(self) -> Vec<usize> {
        self.word
    }

    pub fn apply(&self, j: usize) -> usize {
        self.word[j]
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(j, &v)| j == v)
    }

    /// The composite `j -> self(other(j))`.
    pub fn multiply(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(Permutation {
            word: other.word.iter().map(|&j| self.word[j]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut word = vec![0; self.word.len()];
        for (j, &v) in self.word.iter().enumerate() {
            word[v] = j;
        }
        Permutation { word }
    }

    pub fn pow(&self, k: usize) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        for _ in 0..k {
            acc = self.multiply(&acc).expect("same degree");
        }
        acc
    }

    /// `f^-1(i)`: the position of value `i`, i.e. the index `j` with
    /// `f^* d_i = d_j`.
    pub fn pulled_index(&self, i: usize) -> Result<usize> {
        self.word
            .iter()
            .position(|&v| v == i)
            .ok_or(Error::IndexOutOfRange {
                index: i,
                bound: self.degree(),
            })
    }

    /// Face `d_i`: delete the value `i` and renumber the values above it.
    pub fn face(&self, i: usize) -> Result<Permutation> {
        let n = self.degree();
        if n == 0 || i > n {
            return Err(Error::IndexOutOfRange {
                index: i,
                bound: n,
            });
        }
        let word = self
            .word
            .iter()
            .filter(|&&v| v != i)
            .map(|&v| if v > i { v - 1 } else { v })
            .collect();
        Ok(Permutation { word })
    }

    /// Degeneracy `s_i`: shift the values above `i` up by one and insert
    /// `i + 1` immediately after `i`.
    pub fn degeneracy(&self, i: usize) -> Result<Permutation> {
        let n = self.degree();
        if i > n {
            return Err(Error::IndexOutOfRange { index: i, bound: n });
        }
        let mut word = Vec::with_capacity(n + 2);
        for &v in &self.word {
            if v > i {
                word.push(v + 1);
            } else {
                word.push(v);
                if v == i {
                    word.push(i + 1);
                }
            }
        }
        Ok(Permutation { word })
    }

    /// True iff `f` lies in the image of some `s_i`, i.e. some value `i + 1`
    /// sits immediately right of `i`.
    pub fn is_degenerate(&self) -> bool {
        self.word.windows(2).any(|w| w[1] == w[0] + 1)
    }

    /// The permutation `alpha_* f` for an operator `alpha: [m] -> [n]`, the
    /// unique `g` in `S_m` making `alpha . g = f . (f^* alpha)` with
    /// `f^* alpha` monotone and `g^-1` order preserving on its fibers.
    ///
    /// Computed by stable-sorting `f^-1 . alpha`, independently of the word
    /// surgery in [`Permutation::face`] and [`Permutation::degeneracy`].
    pub fn act(&self, op: &MonotoneOperator) -> Result<Permutation> {
        Ok(self.crossed_factor(op)?.0)
    }

    /// The monotone operator `f^* alpha` of the same factorization.
    pub fn pull_operator(&self, op: &MonotoneOperator) -> Result<MonotoneOperator> {
        Ok(self.crossed_factor(op)?.1)
    }

    fn crossed_factor(&self, op: &MonotoneOperator) -> Result<(Permutation, MonotoneOperator)> {
        if op.target_size() != self.word.len() {
            return Err(Error::SizeMismatch(format!(
                "operator targets [{}] but permutation has degree {}",
                op.target_size() as isize - 1,
                self.degree()
            )));
        }
        let inv = self.inverse();
        let positions = SetMap::new(
            self.word.len(),
            op.values().iter().map(|&v| inv.word[v]).collect(),
        )?;
        let (xi, g) = sort_factorization(&positions);
        Ok((g.inverse(), xi))
    }

    /// Whether this permutation is a power of `tau`.
    pub fn is_cyclic(&self) -> bool {
        CyclicElement::from_permutation(self).is_some()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word.iter().join(","))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let word = parse_word(s)?;
        Permutation::new(word)
    }
}

pub(crate) fn parse_word(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
        })
        .collect()
}

/// An element `tau_n^k` of the cyclic group `C_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicElement {
    degree: usize,
    power: usize,
}

impl CyclicElement {
    pub fn new(degree: usize, power: usize) -> Self {
        CyclicElement {
            degree,
            power: power % (degree + 1),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn power(&self) -> usize {
        self.power
    }

    pub fn all(degree: usize) -> impl Iterator<Item = CyclicElement> {
        (0..=degree).map(move |k| CyclicElement::new(degree, k))
    }

    /// `tau^k` as a word: position `j` holds `j - k mod (n + 1)`.
    pub fn as_permutation(&self) -> Permutation {
        let len = self.degree + 1;
        Permutation {
            word: (0..len).map(|j| (j + len - self.power) % len).collect(),
        }
    }

    pub fn from_permutation(f: &Permutation) -> Option<CyclicElement> {
        let len = f.word.len();
        let power = (len - f.word[0]) % len;
        let c = CyclicElement::new(f.degree(), power);
        (c.as_permutation() == *f).then_some(c)
    }

    pub fn multiply(&self, other: &CyclicElement) -> Result<CyclicElement> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        Ok(CyclicElement::new(self.degree, self.power + other.power))
    }

    pub fn face(&self, i: usize) -> Result<CyclicElement> {
        let f = self.as_permutation().face(i)?;
        Ok(CyclicElement::from_permutation(&f).expect("C* is closed under faces"))
    }

    pub fn degeneracy(&self, i: usize) -> Result<CyclicElement> {
        let f = self.as_permutation().degeneracy(i)?;
        Ok(CyclicElement::from_permutation(&f).expect("C* is closed under degeneracies"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(w: &[usize]) -> Permutation {
        Permutation::new(w.to_vec()).unwrap()
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![1, 2]).is_err());
        assert!(Permutation::new(vec![]).is_err());
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(p(&[1, 0]).multiply(&p(&[1, 0])).unwrap(), p(&[0, 1]));
        assert_eq!(p(&[2, 0, 1]).multiply(&p(&[2, 0, 1])).unwrap(), p(&[1, 2, 0]));
        let f = p(&[2, 3, 0, 1]);
        assert_eq!(f.multiply(&Permutation::identity(3)).unwrap(), f);
        assert!(matches!(
            f.multiply(&Permutation::identity(2)),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(p(&[1, 2, 0]).inverse(), p(&[2, 0, 1]));
        assert_eq!(Permutation::identity(4).inverse(), Permutation::identity(4));
        assert_eq!(p(&[1, 0]).inverse(), p(&[1, 0]));
    }

    #[test]
    fn tau_examples() {
        assert_eq!(Permutation::tau(1), p(&[1, 0]));
        assert_eq!(Permutation::tau(2), p(&[2, 0, 1]));
        assert_eq!(Permutation::tau(0), p(&[0]));
    }

    #[test]
    fn face_examples() {
        assert_eq!(p(&[2, 0, 1]).face(1).unwrap(), p(&[1, 0]));
        assert_eq!(Permutation::identity(3).face(0).unwrap(), Permutation::identity(2));
        assert_eq!(p(&[2, 0, 1]).face(2).unwrap(), p(&[0, 1]));
        assert!(p(&[0]).face(0).is_err());
        assert!(p(&[1, 0]).face(2).is_err());
    }

    #[test]
    fn degeneracy_examples() {
        assert_eq!(p(&[1, 0]).degeneracy(0).unwrap(), p(&[2, 0, 1]));
        assert_eq!(p(&[0]).degeneracy(0).unwrap(), p(&[0, 1]));
        assert_eq!(p(&[1, 0]).degeneracy(1).unwrap(), p(&[1, 2, 0]));
        assert!(p(&[1, 0]).degeneracy(2).is_err());
    }

    #[test]
    fn pulled_index_examples() {
        assert_eq!(p(&[2, 0, 1]).pulled_index(0).unwrap(), 1);
        assert_eq!(Permutation::identity(3).pulled_index(2).unwrap(), 2);
        assert_eq!(p(&[1, 2, 0]).pulled_index(2).unwrap(), 1);
        assert!(p(&[1, 0]).pulled_index(2).is_err());
    }

    #[test]
    fn degenerate_examples() {
        assert!(p(&[0, 1]).is_degenerate());
        assert!(!p(&[1, 0]).is_degenerate());
        assert!(p(&[2, 0, 1]).is_degenerate());
    }

    #[test]
    fn degenerate_matches_image_of_degeneracies() {
        for n in 1..=5 {
            let image: std::collections::HashSet<_> = Permutation::all(n - 1)
                .iter()
                .flat_map(|g| (0..n).map(move |i| g.degeneracy(i).unwrap()))
                .collect();
            for f in Permutation::all(n) {
                assert_eq!(f.is_degenerate(), image.contains(&f), "{f}");
            }
        }
    }

    #[test]
    fn cyclic_round_trip() {
        for n in 0..6 {
            for c in CyclicElement::all(n) {
                let f = c.as_permutation();
                assert_eq!(CyclicElement::from_permutation(&f), Some(c));
                assert_eq!(f, Permutation::tau(n).pow(c.power()));
            }
        }
        assert_eq!(CyclicElement::from_permutation(&p(&[0, 2, 1])), None);
    }

    #[test]
    fn cyclic_structure_maps_stay_cyclic() {
        for n in 0..6 {
            for c in CyclicElement::all(n) {
                for i in 0..=n {
                    if n > 0 {
                        c.face(i).unwrap();
                    }
                    c.degeneracy(i).unwrap();
                }
            }
        }
    }

    #[test]
    fn display_and_parse() {
        let f = p(&[2, 0, 1]);
        assert_eq!(f.to_string(), "2,0,1");
        assert_eq!("2, 0,1".parse::<Permutation>().unwrap(), f);
        assert!("2,0,x".parse::<Permutation>().is_err());
    }
}

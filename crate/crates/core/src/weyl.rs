//! Weyl groups by breadth-first closure of the simple reflections, and
//! reduced-word enumeration.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cartan::{CartanData, Weight};
use crate::error::{Error, Result};

/// A word in the simple reflections, stored in application order: the
/// first letter acts first, so `(i_1, ..., i_n)` denotes `s_{i_n} ... s_{i_1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ReducedWord(pub Vec<usize>);

impl ReducedWord {
    pub fn empty() -> Self {
        ReducedWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    /// The letter applied last (`i_n`).
    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// The word with its last-applied letter removed (a word for `s_{i_n} w`).
    pub fn without_last(&self) -> ReducedWord {
        ReducedWord(self.0[..self.0.len().saturating_sub(1)].to_vec())
    }

    /// A word for the inverse element.
    pub fn reversed(&self) -> ReducedWord {
        ReducedWord(self.0.iter().rev().copied().collect())
    }

    /// Parses a comma-separated list of 1-based letters.
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(ReducedWord::empty());
        }
        s.split(',')
            .map(|tok| {
                let letter: usize = tok.trim().parse().map_err(|_| {
                    Error::NotReduced(format!("`{s}` (bad letter `{}`)", tok.trim()))
                })?;
                if letter == 0 || letter > rank {
                    return Err(Error::ColorOutOfRange {
                        color: letter,
                        rank,
                    });
                }
                Ok(letter - 1)
            })
            .collect::<Result<Vec<_>>>()
            .map(ReducedWord)
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, ")")
    }
}

/// Square integer matrix acting on fundamental-weight coordinates, row-major.
pub type ActionMatrix = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub matrix: ActionMatrix,
    pub length: usize,
    pub canonical_word: ReducedWord,
}

impl WeylElement {
    pub fn apply(&self, mu: &Weight) -> Weight {
        let n = mu.rank();
        Weight(
            (0..n)
                .map(|r| (0..n).map(|c| self.matrix[r * n + c] * mu.0[c]).sum())
                .collect(),
        )
    }
}

#[derive(Clone, Debug)]
pub struct WeylGroup {
    cartan: Arc<CartanData>,
    elements: Vec<WeylElement>,
    index: HashMap<ActionMatrix, usize>,
}

fn identity(n: usize) -> ActionMatrix {
    (0..n * n).map(|k| i64::from(k / n == k % n)).collect()
}

fn mul(a: &[i64], b: &[i64], n: usize) -> ActionMatrix {
    let mut out = vec![0; n * n];
    for r in 0..n {
        for c in 0..n {
            out[r * n + c] = (0..n).map(|k| a[r * n + k] * b[k * n + c]).sum();
        }
    }
    out
}

/// Matrix of `s_i` on fundamental-weight coordinates.
fn reflection_matrix(cartan: &CartanData, i: usize) -> ActionMatrix {
    let n = cartan.rank;
    let mut m = identity(n);
    for r in 0..n {
        m[r * n + i] -= cartan.matrix[r][i];
    }
    m
}

impl WeylGroup {
    /// Breadth-first closure from the identity; each new element is `s_i w`
    /// for an element `w` of the previous layer, so BFS distance is the length.
    pub fn new(cartan: Arc<CartanData>) -> Self {
        let n = cartan.rank;
        let gens: Vec<ActionMatrix> = (0..n).map(|i| reflection_matrix(&cartan, i)).collect();
        let id = identity(n);
        let mut elements = vec![WeylElement {
            matrix: id.clone(),
            length: 0,
            canonical_word: ReducedWord::empty(),
        }];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &k in &frontier {
                for (i, g) in gens.iter().enumerate() {
                    let m = mul(g, &elements[k].matrix, n);
                    if index.contains_key(&m) {
                        continue;
                    }
                    let mut word = elements[k].canonical_word.clone();
                    word.0.push(i);
                    let length = elements[k].length + 1;
                    index.insert(m.clone(), elements.len());
                    next.push(elements.len());
                    elements.push(WeylElement {
                        matrix: m,
                        length,
                        canonical_word: word,
                    });
                }
            }
            frontier = next;
        }
        WeylGroup {
            cartan,
            elements,
            index,
        }
    }

    pub fn cartan(&self) -> &Arc<CartanData> {
        &self.cartan
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> &WeylElement {
        &self.elements[0]
    }

    pub fn longest(&self) -> &WeylElement {
        self.elements
            .iter()
            .max_by_key(|e| e.length)
            .expect("non-empty group")
    }

    pub fn lookup(&self, matrix: &[i64]) -> Option<&WeylElement> {
        self.index.get(matrix).map(|&k| &self.elements[k])
    }

    /// The element represented by a word (application order).
    pub fn product(&self, word: &[usize]) -> Result<&WeylElement> {
        let n = self.cartan.rank;
        let mut m = identity(n);
        for &i in word {
            self.cartan.check_color(i)?;
            m = mul(&reflection_matrix(&self.cartan, i), &m, n);
        }
        self.lookup(&m)
            .ok_or_else(|| Error::Internal("word product escaped the enumerated group".into()))
    }

    pub fn is_reduced(&self, word: &ReducedWord) -> Result<bool> {
        Ok(self.product(&word.0)?.length == word.len())
    }

    /// Fails with [`Error::NotReduced`] unless `word` is reduced.
    pub fn require_reduced(&self, word: &ReducedWord) -> Result<&WeylElement> {
        let w = self.product(&word.0)?;
        if w.length == word.len() {
            Ok(w)
        } else {
            Err(Error::NotReduced(word.to_string()))
        }
    }

    pub fn inverse(&self, w: &WeylElement) -> &WeylElement {
        self.product(&w.canonical_word.reversed().0)
            .expect("inverse of an enumerated element")
    }

    /// All reduced words of `w`. A word of length `l(w)` multiplies to `w`
    /// iff every prefix is reduced, so the search only extends reduced prefixes
    /// along letters that increase the length.
    pub fn reduced_words(&self, w: &WeylElement) -> BTreeSet<ReducedWord> {
        let n = self.cartan.rank;
        let gens: Vec<ActionMatrix> = (0..n).map(|i| reflection_matrix(&self.cartan, i)).collect();
        let mut out = BTreeSet::new();
        let mut stack: Vec<(Vec<usize>, ActionMatrix)> = vec![(Vec::new(), identity(n))];
        while let Some((word, m)) = stack.pop() {
            if word.len() == w.length {
                if m == w.matrix {
                    out.insert(ReducedWord(word));
                }
                continue;
            }
            for (i, g) in gens.iter().enumerate() {
                let next = mul(g, &m, n);
                let len = self.index.get(&next).map(|&k| self.elements[k].length);
                if len == Some(word.len() + 1) {
                    let mut wd = word.clone();
                    wd.push(i);
                    stack.push((wd, next));
                }
            }
        }
        out
    }

    /// Every reduced word of every element, grouped by element.
    pub fn all_reduced_words(&self) -> Vec<(&WeylElement, BTreeSet<ReducedWord>)> {
        self.elements
            .iter()
            .map(|w| (w, self.reduced_words(w)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::TypeLabel;

    fn group(t: TypeLabel) -> WeylGroup {
        WeylGroup::new(Arc::new(CartanData::new(t)))
    }

    #[test]
    fn group_orders() {
        let expected = [
            (TypeLabel::A1, 2),
            (TypeLabel::A1xA1, 4),
            (TypeLabel::A2, 6),
            (TypeLabel::B2, 8),
            (TypeLabel::G2, 12),
            (TypeLabel::A3, 24),
        ];
        for (t, n) in expected {
            assert_eq!(group(t).order(), n, "{t}");
        }
    }

    #[test]
    fn longest_length_is_number_of_positive_roots() {
        for t in TypeLabel::ALL {
            let g = group(t);
            assert_eq!(g.longest().length, g.cartan().positive_roots.len());
            assert_eq!(g.product(&t.longest_word()).unwrap(), g.longest());
        }
    }

    #[test]
    fn reduced_word_examples() {
        let g = group(TypeLabel::A2);
        let id = g.identity();
        assert_eq!(g.reduced_words(id), BTreeSet::from([ReducedWord::empty()]));
        let s1 = g.product(&[0]).unwrap();
        assert_eq!(g.reduced_words(s1), BTreeSet::from([ReducedWord(vec![0])]));
        let w0 = g.longest();
        assert_eq!(
            g.reduced_words(w0),
            BTreeSet::from([ReducedWord(vec![0, 1, 0]), ReducedWord(vec![1, 0, 1])])
        );
    }

    /// Independent oracle: all words of the right length, filtered by product.
    fn brute_force_words(g: &WeylGroup, w: &WeylElement) -> BTreeSet<ReducedWord> {
        let n = g.cartan().rank;
        let mut words = vec![Vec::<usize>::new()];
        for _ in 0..w.length {
            words = words
                .into_iter()
                .flat_map(|p| (0..n).map(move |i| [p.clone(), vec![i]].concat()))
                .collect();
        }
        words
            .into_iter()
            .filter(|wd| g.product(wd).unwrap() == w)
            .map(ReducedWord)
            .collect()
    }

    #[test]
    fn reduced_words_match_brute_force() {
        for t in TypeLabel::ALL {
            let g = group(t);
            for w in g.elements() {
                assert_eq!(
                    g.reduced_words(w),
                    brute_force_words(&g, w),
                    "{t} {}",
                    w.canonical_word
                );
            }
        }
    }

    #[test]
    fn every_reduced_word_reproduces_the_action() {
        for t in TypeLabel::ALL {
            let g = group(t);
            let mu = Weight((0..g.cartan().rank as i64).map(|k| 3 + 2 * k).collect());
            for (w, words) in g.all_reduced_words() {
                for word in words {
                    assert_eq!(g.product(&word.0).unwrap(), w);
                    assert_eq!(g.cartan().reflect_word(&word.0, &mu), w.apply(&mu));
                }
                assert_eq!(g.inverse(w).length, w.length);
            }
        }
    }

    #[test]
    fn non_reduced_word_is_rejected() {
        let g = group(TypeLabel::A2);
        assert!(matches!(
            g.require_reduced(&ReducedWord(vec![0, 0])),
            Err(Error::NotReduced(_))
        ));
        assert!(g.require_reduced(&ReducedWord(vec![0, 1, 0])).is_ok());
    }

    #[test]
    fn parse_words() {
        assert_eq!(
            ReducedWord::parse("1,2,1", 2).unwrap(),
            ReducedWord(vec![0, 1, 0])
        );
        assert_eq!(ReducedWord::parse("", 2).unwrap(), ReducedWord::empty());
        assert!(ReducedWord::parse("3", 2).is_err());
        assert!(ReducedWord::parse("0", 2).is_err());
        assert_eq!(ReducedWord(vec![0, 1]).to_string(), "(1,2)");
    }
}

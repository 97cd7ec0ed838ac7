//! Weyl-group elements as words in simple reflections, reduced-word
//! combinatorics, inversion sets, and convex orders on positive roots.

use std::fmt;

use super::{height, RootDatum, RootVec};
use crate::error::{EngineError, Result};

/// A word in simple reflections, leftmost letter acting last:
/// `w = s_{i_1} s_{i_2} ⋯ s_{i_k}` applied to `μ` computes
/// `s_{i_1}(s_{i_2}(⋯ s_{i_k}(μ)))`. Indices are 0-based internally.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct WeylWord(Vec<usize>);

impl WeylWord {
    pub fn identity() -> Self {
        WeylWord(Vec::new())
    }

    pub fn simple(i: usize) -> Self {
        WeylWord(vec![i])
    }

    pub fn from_indices(indices: Vec<usize>) -> Self {
        WeylWord(indices)
    }

    /// Build from 1-based letters (the external convention: `[1,2,1]`).
    pub fn from_one_based(letters: &[usize]) -> Result<Self> {
        let mut out = Vec::with_capacity(letters.len());
        for &l in letters {
            if l == 0 {
                return Err(EngineError::Parse(
                    "reflection indices are 1-based; got 0".into(),
                ));
            }
            out.push(l - 1);
        }
        Ok(WeylWord(out))
    }

    /// Lenient text form: `e`, `w0`, `1,2,1`, `s1s2s1`, `s1 s2 s1`.
    /// `w0` requires the datum to resolve the longest element.
    pub fn parse(text: &str, datum: &RootDatum) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() {
            return Err(EngineError::Parse("empty Weyl word".into()));
        }
        if t == "e" {
            return Ok(WeylWord::identity());
        }
        if t == "w0" {
            return Ok(WeylWord::longest_element(datum));
        }
        let mut letters = Vec::new();
        let mut cur = String::new();
        for c in t.chars() {
            if c.is_ascii_digit() {
                cur.push(c);
            } else if matches!(c, 's' | 'S' | ',' | ' ' | '*' | '.') {
                if !cur.is_empty() {
                    letters.push(cur.parse::<usize>().unwrap());
                    cur.clear();
                }
            } else {
                return Err(EngineError::Parse(format!(
                    "cannot read Weyl word `{text}`"
                )));
            }
        }
        if !cur.is_empty() {
            letters.push(cur.parse::<usize>().unwrap());
        }
        let w = WeylWord::from_one_based(&letters)?;
        for &i in &w.0 {
            if i >= datum.rank() {
                return Err(EngineError::Parse(format!(
                    "reflection index {} out of range for {}",
                    i + 1,
                    datum.label()
                )));
            }
        }
        Ok(w)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `w(μ)`.
    pub fn apply(&self, datum: &RootDatum, mu: &[i32]) -> RootVec {
        let mut cur = mu.to_vec();
        for &i in self.0.iter().rev() {
            cur = datum.reflect_simple(&cur, i);
        }
        cur
    }

    /// `w^{-1}(μ)`.
    pub fn apply_inverse(&self, datum: &RootDatum, mu: &[i32]) -> RootVec {
        let mut cur = mu.to_vec();
        for &i in &self.0 {
            cur = datum.reflect_simple(&cur, i);
        }
        cur
    }

    pub fn inverse(&self) -> WeylWord {
        WeylWord(self.0.iter().rev().copied().collect())
    }

    /// Concatenation `self * other` (self acts last).
    pub fn concat(&self, other: &WeylWord) -> WeylWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        WeylWord(v)
    }

    /// Length of the *element* (number of inversions), independent of the
    /// word representing it.
    pub fn element_length(&self, datum: &RootDatum) -> usize {
        datum
            .positive_roots()
            .iter()
            .filter(|beta| {
                let img = self.apply(datum, beta);
                img.iter().all(|&c| c <= 0)
            })
            .count()
    }

    pub fn is_reduced(&self, datum: &RootDatum) -> bool {
        self.element_length(datum) == self.0.len()
    }

    pub fn same_element(&self, other: &WeylWord, datum: &RootDatum) -> bool {
        (0..datum.rank()).all(|i| {
            self.apply(datum, &datum.simple_root(i)) == other.apply(datum, &datum.simple_root(i))
        })
    }

    /// Inversion set `Φ^+ ∩ w(Φ^-) = {β > 0 : w^{-1}(β) < 0}`, sorted by
    /// (height, coordinates).
    pub fn inversion_set(&self, datum: &RootDatum) -> Vec<RootVec> {
        let mut out: Vec<RootVec> = datum
            .positive_roots()
            .iter()
            .filter(|beta| {
                let img = self.apply_inverse(datum, beta);
                img.iter().all(|&c| c <= 0)
            })
            .cloned()
            .collect();
        out.sort_by_key(|r| (height(r), r.clone()));
        out
    }

    /// The lexicographically smallest reduced word for the element this
    /// word represents (not necessarily reduced itself).
    pub fn canonical_reduced(&self, datum: &RootDatum) -> WeylWord {
        let mut out = Vec::new();
        let mut cur = self.clone();
        let mut len = cur.element_length(datum);
        while len > 0 {
            // smallest left descent: l(s_i w) < l(w)  <=>  w^{-1}(α_i) < 0
            let i = (0..datum.rank())
                .find(|&i| {
                    cur.apply_inverse(datum, &datum.simple_root(i))
                        .iter()
                        .all(|&c| c <= 0)
                })
                .expect("positive-length element must have a left descent");
            out.push(i);
            cur = WeylWord::simple(i).concat(&cur);
            len -= 1;
            debug_assert_eq!(cur.element_length(datum), len);
        }
        WeylWord(out)
    }

    /// All reduced words of the represented element.
    pub fn reduced_words(&self, datum: &RootDatum) -> Vec<WeylWord> {
        let len = self.element_length(datum);
        if len == 0 {
            return vec![WeylWord::identity()];
        }
        let mut out = Vec::new();
        for i in 0..datum.rank() {
            let descends = self
                .apply_inverse(datum, &datum.simple_root(i))
                .iter()
                .all(|&c| c <= 0);
            if descends {
                let rest = WeylWord::simple(i).concat(self);
                for tail in rest.reduced_words(datum) {
                    out.push(WeylWord::simple(i).concat(&tail));
                }
            }
        }
        out
    }

    /// Longest element `w_0`, as its lexicographically smallest reduced word.
    pub fn longest_element(datum: &RootDatum) -> WeylWord {
        let mut cur = WeylWord::identity();
        let mut len = 0;
        loop {
            // ascend: any i with w(α_i) > 0 gives l(w s_i) = l(w) + 1
            let next = (0..datum.rank()).find(|&i| {
                cur.apply(datum, &datum.simple_root(i))
                    .iter()
                    .all(|&c| c >= 0)
            });
            match next {
                Some(i) => {
                    cur = cur.concat(&WeylWord::simple(i));
                    len += 1;
                }
                None => break,
            }
        }
        debug_assert_eq!(len, datum.num_positive_roots());
        cur.canonical_reduced(datum)
    }

    /// Extend a reduced `w` to a reduced word of `w_0` having `w` as prefix.
    pub fn complete_to_longest(&self, datum: &RootDatum) -> Result<WeylWord> {
        if !self.is_reduced(datum) {
            return Err(EngineError::NotReduced(self.one_based()));
        }
        let w0 = WeylWord::longest_element(datum);
        let tail = self.inverse().concat(&w0).canonical_reduced(datum);
        let full = self.concat(&tail);
        debug_assert!(full.is_reduced(datum));
        debug_assert_eq!(full.len(), datum.num_positive_roots());
        Ok(full)
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.0.iter().map(|i| format!("s{}", i + 1)).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// The convex order `β_1, …, β_k` attached to a reduced word: the `j`-th
/// root is the image of `α_{i_j}` under the length-`j−1` prefix.
#[derive(Clone, Debug)]
pub struct ConvexOrder {
    word: WeylWord,
    roots: Vec<RootVec>,
}

impl ConvexOrder {
    pub fn new(datum: &RootDatum, word: WeylWord) -> Result<ConvexOrder> {
        if !word.is_reduced(datum) {
            return Err(EngineError::NotReduced(word.one_based()));
        }
        let mut roots = Vec::with_capacity(word.len());
        for j in 0..word.len() {
            let prefix = WeylWord::from_indices(word.indices()[..j].to_vec());
            let beta = prefix.apply(datum, &datum.simple_root(word.indices()[j]));
            assert!(
                datum.is_positive_root(&beta),
                "convex order produced a non-positive root {beta:?} — word not reduced?"
            );
            roots.push(beta);
        }
        for a in 0..roots.len() {
            for b in a + 1..roots.len() {
                assert_ne!(roots[a], roots[b], "convex order roots must be distinct");
            }
        }
        Ok(ConvexOrder { word, roots })
    }

    pub fn for_longest(datum: &RootDatum) -> ConvexOrder {
        ConvexOrder::new(datum, WeylWord::longest_element(datum))
            .expect("longest element word is reduced")
    }

    pub fn word(&self) -> &WeylWord {
        &self.word
    }

    pub fn roots(&self) -> &[RootVec] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn root(&self, j: usize) -> &RootVec {
        &self.roots[j]
    }

    pub fn position_of(&self, beta: &[i32]) -> Option<usize> {
        self.roots.iter().position(|r| r == beta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> RootDatum {
        RootDatum::from_name("A2").unwrap()
    }

    #[test]
    fn convex_order_a2() {
        let rd = a2();
        let co = ConvexOrder::new(&rd, WeylWord::from_one_based(&[1, 2, 1]).unwrap()).unwrap();
        assert_eq!(co.roots(), [vec![1, 0], vec![1, 1], vec![0, 1]]);
        let co2 = ConvexOrder::new(&rd, WeylWord::from_one_based(&[2, 1, 2]).unwrap()).unwrap();
        assert_eq!(co2.roots(), [vec![0, 1], vec![1, 1], vec![1, 0]]);
    }

    #[test]
    fn convex_order_a1_and_rejection() {
        let rd = RootDatum::from_name("A1").unwrap();
        let co = ConvexOrder::new(&rd, WeylWord::from_one_based(&[1]).unwrap()).unwrap();
        assert_eq!(co.roots(), [vec![1]]);
        let rd2 = a2();
        let err = ConvexOrder::new(&rd2, WeylWord::from_one_based(&[1, 1]).unwrap()).unwrap_err();
        assert!(matches!(err, EngineError::NotReduced(_)));
    }

    #[test]
    fn convex_orders_exhaust_positive_roots() {
        for name in ["A2", "B2"] {
            let rd = RootDatum::from_name(name).unwrap();
            let w0 = WeylWord::longest_element(&rd);
            let words = w0.reduced_words(&rd);
            assert!(!words.is_empty());
            for w in words {
                let co = ConvexOrder::new(&rd, w).unwrap();
                let mut seen: Vec<RootVec> = co.roots().to_vec();
                seen.sort_by_key(|r| (height(r), r.clone()));
                assert_eq!(seen, rd.positive_roots(), "{name}");
            }
        }
    }

    #[test]
    fn inversion_sets() {
        let rd = a2();
        assert!(WeylWord::identity().inversion_set(&rd).is_empty());
        assert_eq!(
            WeylWord::from_one_based(&[1]).unwrap().inversion_set(&rd),
            [vec![1, 0]]
        );
        let w0 = WeylWord::longest_element(&rd);
        assert_eq!(w0.inversion_set(&rd).len(), 3);
    }

    #[test]
    fn inversion_count_is_length() {
        for name in ["A2", "B2", "A3"] {
            let rd = RootDatum::from_name(name).unwrap();
            let w0 = WeylWord::longest_element(&rd);
            for w in w0.reduced_words(&rd) {
                for k in 0..=w.len() {
                    let prefix = WeylWord::from_indices(w.indices()[..k].to_vec());
                    assert_eq!(prefix.inversion_set(&rd).len(), prefix.element_length(&rd));
                }
            }
        }
    }

    #[test]
    fn longest_element_words() {
        let rd = a2();
        let w0 = WeylWord::longest_element(&rd);
        assert_eq!(w0.one_based(), vec![1, 2, 1]);
        let b2 = RootDatum::from_name("B2").unwrap();
        assert_eq!(WeylWord::longest_element(&b2).one_based(), vec![1, 2, 1, 2]);
        let a3 = RootDatum::from_name("A3").unwrap();
        let w0_3 = WeylWord::longest_element(&a3);
        assert_eq!(w0_3.len(), 6);
        assert!(w0_3.is_reduced(&a3));
        assert_eq!(w0_3.one_based(), vec![1, 2, 1, 3, 2, 1]);
    }

    #[test]
    fn reduced_word_enumeration() {
        let rd = a2();
        let w0 = WeylWord::longest_element(&rd);
        let words: Vec<Vec<usize>> = w0
            .reduced_words(&rd)
            .into_iter()
            .map(|w| w.one_based())
            .collect();
        assert_eq!(words, vec![vec![1, 2, 1], vec![2, 1, 2]]);
        let b2 = RootDatum::from_name("B2").unwrap();
        assert_eq!(
            WeylWord::longest_element(&b2).reduced_words(&b2).len(),
            2
        );
        let a3 = RootDatum::from_name("A3").unwrap();
        assert_eq!(
            WeylWord::longest_element(&a3).reduced_words(&a3).len(),
            16
        );
    }

    #[test]
    fn completion_to_longest() {
        let rd = a2();
        let w = WeylWord::from_one_based(&[2]).unwrap();
        let full = w.complete_to_longest(&rd).unwrap();
        assert_eq!(full.len(), 3);
        assert_eq!(&full.indices()[..1], w.indices());
        assert!(full.is_reduced(&rd));
    }

    #[test]
    fn parse_forms() {
        let rd = a2();
        assert_eq!(WeylWord::parse("e", &rd).unwrap(), WeylWord::identity());
        assert_eq!(
            WeylWord::parse("1,2,1", &rd).unwrap().one_based(),
            vec![1, 2, 1]
        );
        assert_eq!(
            WeylWord::parse("s1s2s1", &rd).unwrap().one_based(),
            vec![1, 2, 1]
        );
        assert_eq!(
            WeylWord::parse("w0", &rd).unwrap().one_based(),
            vec![1, 2, 1]
        );
        assert!(WeylWord::parse("s3", &rd).is_err());
        assert!(WeylWord::parse("q1", &rd).is_err());
    }

    #[test]
    fn apply_and_inverse_roundtrip() {
        let rd = RootDatum::from_name("B2").unwrap();
        let w = WeylWord::from_one_based(&[1, 2, 1]).unwrap();
        for beta in rd.positive_roots() {
            let img = w.apply(&rd, beta);
            assert_eq!(w.apply_inverse(&rd, &img), *beta);
        }
    }

    #[test]
    fn same_element_detects_braid_equivalence() {
        let rd = a2();
        let w1 = WeylWord::from_one_based(&[1, 2, 1]).unwrap();
        let w2 = WeylWord::from_one_based(&[2, 1, 2]).unwrap();
        assert!(w1.same_element(&w2, &rd));
        assert!(!w1.same_element(&WeylWord::identity(), &rd));
    }
}

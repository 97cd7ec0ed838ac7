//! Per-weight-space canonical forms modulo the quantum Serre ideal.
//!
//! For a fixed content `ν` (a multiset of simple-root letters), the free
//! span of all words with that content is reduced against the subspace
//! spanned by `w1 · (Serre relation) · w2`. Rows are kept in reduced
//! echelon form with the lexicographically largest word of each row as
//! pivot, so canonical representatives are the lex-smallest survivors.
//! The codimension must equal the Kostant partition number — asserted.

use std::collections::BTreeMap;

use crate::cartan::{height, kostant_partition, RootDatum, RootVec};
use crate::coeff::{q_binom, Scalar};

/// Sparse combination of same-content words.
pub type WordCombo = BTreeMap<Vec<usize>, Scalar>;

#[derive(Debug)]
pub struct Echelon {
    /// Reduced rows: `pivot -> row`, each row has pivot coefficient 1 and
    /// only lex-smaller words otherwise; pivots are eliminated from all
    /// other rows.
    rows: BTreeMap<Vec<usize>, WordCombo>,
    /// Number of distinct words of this content.
    word_count: usize,
}

impl Echelon {
    /// Dimension of the reduced weight space (the number of canonical words).
    pub fn dim(&self) -> usize {
        self.word_count - self.rows.len()
    }

    /// Canonical (non-pivot) words, lex sorted.
    pub fn basis_words(&self, datum: &RootDatum, nu: &[i32]) -> Vec<Vec<usize>> {
        words_of_content(datum.rank(), nu)
            .into_iter()
            .filter(|w| !self.rows.contains_key(w))
            .collect()
    }

    pub fn is_canonical(&self, word: &[usize]) -> bool {
        !self.rows.contains_key(word)
    }

    /// Reduce a combination to canonical representatives.
    pub fn reduce(&self, mut combo: WordCombo) -> WordCombo {
        loop {
            let hit = combo
                .iter()
                .rev()
                .find(|(w, _)| self.rows.contains_key(*w))
                .map(|(w, c)| (w.clone(), c.clone()));
            match hit {
                None => break,
                Some((w, c)) => {
                    combo.remove(&w);
                    let row = &self.rows[&w];
                    for (rw, rc) in row {
                        if rw == &w {
                            continue;
                        }
                        let e = combo.entry(rw.clone()).or_insert_with(Scalar::zero);
                        *e = e.clone() - c.clone() * rc.clone();
                        if e.is_zero() {
                            combo.remove(rw);
                        }
                    }
                }
            }
        }
        combo
    }
}

/// All words (sequences of simple-root indices) whose letter content is
/// `ν`, in lexicographic order.
pub fn words_of_content(rank: usize, nu: &[i32]) -> Vec<Vec<usize>> {
    let total = height(nu);
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(total as usize);
    let mut remaining: RootVec = nu.to_vec();
    fn rec(
        rank: usize,
        left: i64,
        cur: &mut Vec<usize>,
        remaining: &mut RootVec,
        out: &mut Vec<Vec<usize>>,
    ) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in 0..rank {
            if remaining[i] > 0 {
                remaining[i] -= 1;
                cur.push(i);
                rec(rank, left - 1, cur, remaining, out);
                cur.pop();
                remaining[i] += 1;
            }
        }
    }
    rec(rank, total, &mut cur, &mut remaining, &mut out);
    out
}

/// The quantum Serre relation for the ordered pair `(i, j)`, `i ≠ j`, as a
/// word combination:
/// `Σ_{s=0}^{1−a} (−1)^s [1−a choose s]_{v_i} F_i^{1−a−s} F_j F_i^s`
/// with `a = ⟨α_j, α_i^∨⟩`.
pub fn serre_relation(datum: &RootDatum, i: usize, j: usize) -> (RootVec, WordCombo) {
    assert_ne!(i, j);
    let a = datum.cartan_entry(i, j);
    let top = (1 - a) as u32;
    let mut combo = WordCombo::new();
    for s in 0..=top {
        let mut word = Vec::new();
        word.extend(std::iter::repeat(i).take((top - s) as usize));
        word.push(j);
        word.extend(std::iter::repeat(i).take(s as usize));
        let mut c = Scalar::from_laurent(&q_binom(top as i64, s, datum.d(i) as u32));
        if s % 2 == 1 {
            c = -c;
        }
        combo.insert(word, c);
    }
    let mut content = vec![0; datum.rank()];
    content[i] = top as i32;
    content[j] = 1;
    (content, combo)
}

/// Build the echelon for weight `ν ∈ Q^+`.
pub fn build(datum: &RootDatum, nu: &[i32]) -> Echelon {
    let words = words_of_content(datum.rank(), nu);
    let mut ech = Echelon {
        rows: BTreeMap::new(),
        word_count: words.len(),
    };
    let rank = datum.rank();
    for i in 0..rank {
        for j in 0..rank {
            if i == j {
                continue;
            }
            let (content, rel) = serre_relation(datum, i, j);
            let rest: RootVec = nu.iter().zip(&content).map(|(a, b)| a - b).collect();
            if rest.iter().any(|&c| c < 0) {
                continue;
            }
            // all splits rest = γ1 + γ2 and all word pairs around the relation
            for gamma1 in split_contents(&rest) {
                let gamma2: RootVec = rest.iter().zip(&gamma1).map(|(a, b)| a - b).collect();
                for w1 in words_of_content(rank, &gamma1) {
                    for w2 in words_of_content(rank, &gamma2) {
                        let mut row = WordCombo::new();
                        for (mid, c) in &rel {
                            let mut w = w1.clone();
                            w.extend(mid);
                            w.extend(&w2);
                            let e = row.entry(w).or_insert_with(Scalar::zero);
                            *e = e.clone() + c.clone();
                        }
                        row.retain(|_, c| !c.is_zero());
                        insert_row(&mut ech, row);
                    }
                }
            }
        }
    }
    let expected = kostant_partition(datum, nu) as usize;
    assert_eq!(
        ech.dim(),
        expected,
        "Serre reduction at weight {nu:?} in {} has dimension {} but the Kostant \
         partition number is {expected}",
        datum.label(),
        ech.dim()
    );
    ech
}

fn insert_row(ech: &mut Echelon, row: WordCombo) {
    let mut row = ech.reduce(row);
    if row.is_empty() {
        return;
    }
    let pivot = row.keys().next_back().unwrap().clone();
    let lead = row[&pivot].clone();
    for c in row.values_mut() {
        *c = c.clone() / lead.clone();
    }
    // back-substitute into existing rows
    let mut updates: Vec<(Vec<usize>, WordCombo)> = Vec::new();
    for (p, r) in &ech.rows {
        if let Some(c) = r.get(&pivot) {
            let c = c.clone();
            let mut nr = r.clone();
            nr.remove(&pivot);
            for (w, rc) in &row {
                if w == &pivot {
                    continue;
                }
                let e = nr.entry(w.clone()).or_insert_with(Scalar::zero);
                *e = e.clone() - c.clone() * rc.clone();
                if e.is_zero() {
                    nr.remove(w);
                }
            }
            updates.push((p.clone(), nr));
        }
    }
    for (p, nr) in updates {
        ech.rows.insert(p, nr);
    }
    ech.rows.insert(pivot, row);
}

/// All vectors `0 ≤ γ ≤ rest` componentwise.
fn split_contents(rest: &[i32]) -> Vec<RootVec> {
    let mut out = vec![Vec::new()];
    for &c in rest {
        let mut next = Vec::new();
        for prefix in &out {
            for x in 0..=c {
                let mut p = prefix.clone();
                p.push(x);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

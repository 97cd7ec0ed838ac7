//! PBW-basis arithmetic for `U_v^-` over a convex order.
//!
//! A PBW monomial is an exponent tuple `m` standing for the ordered
//! product `F_{β_1}^{m_1} ⋯ F_{β_N}^{m_N}`. Products are normalized by
//! pairwise straightening: for positions `lo < hi`,
//!
//! ```text
//! F_{β_hi} F_{β_lo} = v^{−(β_hi|β_lo)} F_{β_lo} F_{β_hi} + (terms strictly between lo and hi)
//! ```
//!
//! The base pair relations are computed once in the word engine (their
//! weights are small), certified for support confinement, and then drive
//! a rewriting system that never needs the engine again — so products of
//! large powers stay cheap and are not height-limited.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

use crate::cartan::{add_vec, height, ConvexOrder, RootVec};
use crate::coeff::{q_factorial, Scalar};
use crate::engine::{Elem, Engine};
use crate::error::{EngineError, Result};
use crate::linalg::Matrix;

use super::RootVectors;

/// An element of `U_v^-` in PBW coordinates for a fixed convex order.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PbwElem {
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl PbwElem {
    pub fn zero() -> PbwElem {
        PbwElem::default()
    }

    pub fn monomial(tuple: Vec<u32>, c: Scalar) -> PbwElem {
        let mut e = PbwElem::zero();
        e.add_term(tuple, c);
        e
    }

    pub fn one(n_roots: usize) -> PbwElem {
        PbwElem::monomial(vec![0; n_roots], Scalar::one())
    }

    pub fn add_term(&mut self, tuple: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(tuple.clone()).or_insert_with(Scalar::zero);
        *e = e.clone() + c;
        if e.is_zero() {
            self.terms.remove(&tuple);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, tuple: &[u32]) -> Scalar {
        self.terms.get(tuple).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn scale(&self, c: &Scalar) -> PbwElem {
        if c.is_zero() {
            return PbwElem::zero();
        }
        PbwElem {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x.clone() * c.clone()))
                .collect(),
        }
    }

    /// Support positions used by any term.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = Vec::new();
        for t in self.terms.keys() {
            for (j, &e) in t.iter().enumerate() {
                if e > 0 && !s.contains(&j) {
                    s.push(j);
                }
            }
        }
        s.sort_unstable();
        s
    }
}

impl std::ops::Add for PbwElem {
    type Output = PbwElem;
    fn add(mut self, rhs: PbwElem) -> PbwElem {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl std::ops::Sub for PbwElem {
    type Output = PbwElem;
    fn sub(mut self, rhs: PbwElem) -> PbwElem {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl std::ops::Neg for PbwElem {
    type Output = PbwElem;
    fn neg(self) -> PbwElem {
        PbwElem {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl fmt::Display for PbwElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| {
                    if e == 1 {
                        format!("Fb{}", j + 1)
                    } else {
                        format!("Fb{}^{}", j + 1, e)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

fn expand_letters(tuple: &[u32]) -> Vec<usize> {
    let mut out = Vec::new();
    for (j, &e) in tuple.iter().enumerate() {
        for _ in 0..e {
            out.push(j);
        }
    }
    out
}

fn letters_to_tuple(n_roots: usize, letters: &[usize]) -> Vec<u32> {
    let mut t = vec![0u32; n_roots];
    for &j in letters {
        t[j] += 1;
    }
    t
}

struct SliceData {
    tuples: Vec<Vec<u32>>,
    /// maps canonical-word coordinates to tuple coordinates
    word_to_tuple: Matrix,
    words: Vec<Vec<usize>>,
}

/// PBW arithmetic context: root vectors, certified pair relations, and
/// straightening caches for one convex order.
pub struct PbwContext<'a> {
    engine: &'a Engine,
    order: ConvexOrder,
    roots: RootVectors,
    pair_rels: HashMap<(usize, usize), PbwElem>,
    straighten_cache: RefCell<HashMap<Vec<usize>, Rc<PbwElem>>>,
    expand_cache: RefCell<HashMap<Vec<u32>, Rc<Elem>>>,
    slice_cache: RefCell<HashMap<RootVec, Rc<SliceData>>>,
}

impl<'a> PbwContext<'a> {
    /// Build the context: computes root vectors and all pair relations,
    /// certifying the leading coefficient `v^{−(β_hi|β_lo)}` and that
    /// correction terms involve only roots strictly between the pair.
    pub fn new(engine: &'a Engine, order: &ConvexOrder) -> Result<PbwContext<'a>> {
        let roots = RootVectors::new(engine, order)?;
        let mut ctx = PbwContext {
            engine,
            order: order.clone(),
            roots,
            pair_rels: HashMap::new(),
            straighten_cache: RefCell::new(HashMap::new()),
            expand_cache: RefCell::new(HashMap::new()),
            slice_cache: RefCell::new(HashMap::new()),
        };
        let n = order.len();
        for lo in 0..n {
            for hi in lo + 1..n {
                let rel = ctx.compute_pair_rel(lo, hi)?;
                ctx.pair_rels.insert((hi, lo), rel);
            }
        }
        Ok(ctx)
    }

    pub fn order(&self) -> &ConvexOrder {
        &self.order
    }

    pub fn roots(&self) -> &RootVectors {
        &self.roots
    }

    pub fn engine(&self) -> &Engine {
        self.engine
    }

    pub fn n_roots(&self) -> usize {
        self.order.len()
    }

    pub fn one(&self) -> PbwElem {
        PbwElem::one(self.n_roots())
    }

    /// The normal form of `F_{β_hi} F_{β_lo}` (positions `hi > lo`).
    pub fn pair_rel(&self, hi: usize, lo: usize) -> &PbwElem {
        &self.pair_rels[&(hi, lo)]
    }

    pub fn tuple_weight(&self, tuple: &[u32]) -> RootVec {
        let rank = self.engine.rank();
        let mut w = vec![0i32; rank];
        for (j, &e) in tuple.iter().enumerate() {
            if e > 0 {
                w = add_vec(&w, &crate::cartan::scale_vec(e as i32, self.order.root(j)));
            }
        }
        w
    }

    fn compute_pair_rel(&self, lo: usize, hi: usize) -> Result<PbwElem> {
        let weight = add_vec(self.order.root(lo), self.order.root(hi));
        let lhs = self
            .engine
            .mul(self.roots.f_vec(hi), self.roots.f_vec(lo))?;
        let rel = self.from_negative_elem(&lhs)?;
        // certify: the (lo,hi) term has coefficient v^{−(β_hi|β_lo)}, all
        // other support lies strictly between lo and hi
        let mut lead = vec![0u32; self.n_roots()];
        lead[lo] += 1;
        lead[hi] += 1;
        let pairing = self
            .engine
            .datum()
            .bilin(self.order.root(hi), self.order.root(lo));
        if rel.coeff(&lead) != Scalar::v_pow(-pairing) {
            return Err(EngineError::falsified(format!(
                "pair relation ({hi},{lo}) at weight {:?}: leading coefficient {} ≠ v^{}",
                weight,
                rel.coeff(&lead),
                -pairing
            )));
        }
        for (t, _) in rel.terms() {
            if t == &lead {
                continue;
            }
            let ok = t
                .iter()
                .enumerate()
                .all(|(j, &e)| e == 0 || (j > lo && j < hi));
            if !ok {
                return Err(EngineError::falsified(format!(
                    "pair relation ({hi},{lo}): term {:?} escapes the open interval",
                    t
                )));
            }
        }
        Ok(rel)
    }

    /// All exponent tuples of the given weight.
    pub fn tuples_of_weight(&self, weight: &RootVec) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.n_roots()];
        self.enum_tuples(weight.clone(), 0, &mut cur, &mut out);
        out.sort();
        out
    }

    fn enum_tuples(
        &self,
        remaining: RootVec,
        pos: usize,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if remaining.iter().all(|&c| c == 0) {
            out.push(cur.clone());
            return;
        }
        if pos >= self.n_roots() {
            return;
        }
        if remaining.iter().any(|&c| c < 0) {
            return;
        }
        let beta = self.order.root(pos);
        let mut e = 0u32;
        let mut rem = remaining.clone();
        loop {
            cur[pos] = e;
            self.enum_tuples(rem.clone(), pos + 1, cur, out);
            cur[pos] = 0;
            e += 1;
            let mut next = rem.clone();
            let mut ok = true;
            for (i, &b) in beta.iter().enumerate() {
                next[i] -= b;
                if next[i] < 0 {
                    ok = false;
                }
            }
            if !ok {
                break;
            }
            rem = next;
        }
    }

    /// Expand a PBW monomial into the word engine (height-limited).
    pub fn expand_tuple(&self, tuple: &[u32]) -> Result<Rc<Elem>> {
        if let Some(hit) = self.expand_cache.borrow().get(tuple) {
            return Ok(Rc::clone(hit));
        }
        let mut acc = self.engine.one();
        for (j, &e) in tuple.iter().enumerate() {
            if e > 0 {
                acc = self
                    .engine
                    .mul(&acc, &self.roots.f_power(self.engine, j, e)?)?;
            }
        }
        let rc = Rc::new(acc);
        self.expand_cache
            .borrow_mut()
            .insert(tuple.to_vec(), Rc::clone(&rc));
        Ok(rc)
    }

    fn slice(&self, weight: &RootVec) -> Result<Rc<SliceData>> {
        if let Some(hit) = self.slice_cache.borrow().get(weight) {
            return Ok(Rc::clone(hit));
        }
        let tuples = self.tuples_of_weight(weight);
        let words = self.engine.negative_basis(weight)?;
        if tuples.len() != words.len() {
            return Err(EngineError::falsified(format!(
                "PBW slice at {:?}: {} tuples vs dimension {}",
                weight,
                tuples.len(),
                words.len()
            )));
        }
        let word_index: HashMap<&Vec<usize>, usize> =
            words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut m = Matrix::zero(words.len(), tuples.len());
        for (col, t) in tuples.iter().enumerate() {
            let exp = self.expand_tuple(t)?;
            for (mono, c) in exp.terms() {
                let row = *word_index.get(&mono.f_word).ok_or_else(|| {
                    EngineError::falsified(format!(
                        "expansion of tuple {:?} leaves the canonical basis",
                        t
                    ))
                })?;
                m.set(row, col, c.clone());
            }
        }
        let inv = m.inverse().ok_or_else(|| {
            EngineError::falsified(format!(
                "PBW monomials at weight {:?} are not a basis",
                weight
            ))
        })?;
        let data = Rc::new(SliceData {
            tuples,
            word_to_tuple: inv,
            words,
        });
        self.slice_cache
            .borrow_mut()
            .insert(weight.clone(), Rc::clone(&data));
        Ok(data)
    }

    /// Per-weight PBW basis size and invertibility certificate; returns
    /// the tuples at the weight.
    pub fn certify_slice(&self, weight: &RootVec) -> Result<Vec<Vec<u32>>> {
        Ok(self.slice(weight)?.tuples.clone())
    }

    /// Convert a pure `F`-element from the word engine into PBW
    /// coordinates (height-limited; solves one slice per weight).
    pub fn from_negative_elem(&self, x: &Elem) -> Result<PbwElem> {
        if !x.is_negative_part() {
            return Err(EngineError::falsified(format!(
                "element is not in the negative part: {x}"
            )));
        }
        // group terms by F-content
        let rank = self.engine.rank();
        let mut by_weight: BTreeMap<RootVec, Vec<(Vec<usize>, Scalar)>> = BTreeMap::new();
        for (m, c) in x.terms() {
            let mut nu = vec![0i32; rank];
            for &i in &m.f_word {
                nu[i] += 1;
            }
            by_weight
                .entry(nu)
                .or_default()
                .push((m.f_word.clone(), c.clone()));
        }
        let mut out = PbwElem::zero();
        for (nu, entries) in by_weight {
            if height(&nu) == 0 {
                for (_, c) in entries {
                    out.add_term(vec![0; self.n_roots()], c);
                }
                continue;
            }
            let slice = self.slice(&nu)?;
            let mut coords = vec![Scalar::zero(); slice.words.len()];
            for (w, c) in entries {
                let i = slice
                    .words
                    .iter()
                    .position(|x| *x == w)
                    .expect("canonical word in basis");
                coords[i] = c;
            }
            let tuple_coords = slice.word_to_tuple.apply(&coords);
            for (i, c) in tuple_coords.into_iter().enumerate() {
                out.add_term(slice.tuples[i].clone(), c);
            }
        }
        Ok(out)
    }

    /// Convert PBW coordinates back into the word engine (height-limited).
    pub fn to_elem(&self, x: &PbwElem) -> Result<Elem> {
        let mut out = Elem::zero();
        for (t, c) in x.terms() {
            let exp = self.expand_tuple(t)?;
            out = out + exp.as_ref().clone().scale(c);
        }
        Ok(out)
    }

    /// Normal form of an arbitrary sequence of root-vector letters
    /// (positions into the convex order). Pure rewriting; never calls the
    /// word engine.
    pub fn straighten_word(&self, letters: &[usize]) -> Rc<PbwElem> {
        if let Some(hit) = self.straighten_cache.borrow().get(letters) {
            return Rc::clone(hit);
        }
        let result = self.straighten_inner(letters);
        let rc = Rc::new(result);
        self.straighten_cache
            .borrow_mut()
            .insert(letters.to_vec(), Rc::clone(&rc));
        rc
    }

    fn straighten_inner(&self, letters: &[usize]) -> PbwElem {
        let descent = letters.windows(2).position(|w| w[0] > w[1]);
        let Some(p) = descent else {
            return PbwElem::monomial(
                letters_to_tuple(self.n_roots(), letters),
                Scalar::one(),
            );
        };
        let (hi, lo) = (letters[p], letters[p + 1]);
        let rel = &self.pair_rels[&(hi, lo)];
        let mut out = PbwElem::zero();
        for (t, c) in rel.terms() {
            let mut word = Vec::with_capacity(letters.len() + 2);
            word.extend_from_slice(&letters[..p]);
            word.extend(expand_letters(t));
            word.extend_from_slice(&letters[p + 2..]);
            let sub = self.straighten_word(&word);
            for (m, c2) in sub.terms() {
                out.add_term(m.clone(), c.clone() * c2.clone());
            }
        }
        out
    }

    /// Product of PBW elements.
    pub fn mul(&self, a: &PbwElem, b: &PbwElem) -> PbwElem {
        let mut out = PbwElem::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let mut word = expand_letters(ma);
                word.extend(expand_letters(mb));
                let s = self.straighten_word(&word);
                let c = ca.clone() * cb.clone();
                for (m, c2) in s.terms() {
                    out.add_term(m.clone(), c.clone() * c2.clone());
                }
            }
        }
        out
    }

    /// `F_{β_j}` as a PBW element.
    pub fn f_beta(&self, j: usize) -> PbwElem {
        let mut t = vec![0u32; self.n_roots()];
        t[j] = 1;
        PbwElem::monomial(t, Scalar::one())
    }

    /// `F_{β_j}^{(n)}` as a PBW element (tuple scaled by `1/[n]_{d_β}!`).
    pub fn f_beta_divided(&self, j: usize, n: u32) -> PbwElem {
        let mut t = vec![0u32; self.n_roots()];
        t[j] = n;
        let d = self.engine.datum().root_d(self.order.root(j)) as u32;
        PbwElem::monomial(t, Scalar::from_laurent(&q_factorial(n, d)).inv())
    }

    pub fn pow(&self, x: &PbwElem, n: u32) -> PbwElem {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, x);
        }
        acc
    }
}

//! The quantized enveloping algebra itself: triangular normal forms
//! `F-word · K_μ · E-word` with exact multiplication.
//!
//! Multiplication merges the `E`-word of the left factor through the
//! `F`-word of the right factor with the cross relation
//! `E_i F_j = F_j E_i + δ_ij (K_i − K_i^{−1})/(v_i − v_i^{−1})`,
//! passes `K`s across letters as `v`-powers, and reduces the resulting
//! letter words to canonical representatives modulo the quantum Serre
//! ideal (per-weight echelon caches, see [`echelon`]). Every context
//! carries a height cutoff; exceeding it is an error, never truncation.

mod echelon;
mod maps;
mod parse;

pub use echelon::{words_of_content, Echelon, WordCombo};
pub use maps::GeneratorMap;
pub use parse::parse_elem;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::cartan::{add_vec, height, is_zero_vec, RootDatum, RootVec};
use crate::coeff::Scalar;
use crate::error::{EngineError, Result};

/// A basis monomial in normal form: `F_{i_1}⋯F_{i_k} · K_μ · E_{j_1}⋯E_{j_l}`
/// with both letter words canonical for their weight space.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NormalMono {
    pub f_word: Vec<usize>,
    pub k: RootVec,
    pub e_word: Vec<usize>,
}

impl NormalMono {
    pub fn unit(rank: usize) -> Self {
        NormalMono {
            f_word: Vec::new(),
            k: vec![0; rank],
            e_word: Vec::new(),
        }
    }

    /// Weight in the root lattice: `Σ α over E letters − Σ α over F letters`.
    pub fn weight(&self, rank: usize) -> RootVec {
        let mut w = vec![0i32; rank];
        for &i in &self.e_word {
            w[i] += 1;
        }
        for &i in &self.f_word {
            w[i] -= 1;
        }
        w
    }

    pub fn is_unit(&self) -> bool {
        self.f_word.is_empty() && self.e_word.is_empty() && is_zero_vec(&self.k)
    }
}

pub(crate) fn word_content(rank: usize, word: &[usize]) -> RootVec {
    let mut c = vec![0i32; rank];
    for &i in word {
        c[i] += 1;
    }
    c
}

/// An element of the algebra: finite sum of normal monomials with
/// rational-function coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Elem {
    terms: BTreeMap<NormalMono, Scalar>,
}

impl Elem {
    pub fn zero() -> Self {
        Elem::default()
    }

    pub fn one(rank: usize) -> Self {
        let mut e = Elem::zero();
        e.add_term(NormalMono::unit(rank), Scalar::one());
        e
    }

    pub fn scalar(rank: usize, c: Scalar) -> Self {
        let mut e = Elem::zero();
        e.add_term(NormalMono::unit(rank), c);
        e
    }

    pub fn gen_e(rank: usize, i: usize) -> Self {
        let mut m = NormalMono::unit(rank);
        m.e_word.push(i);
        Elem::monomial(m, Scalar::one())
    }

    pub fn gen_f(rank: usize, i: usize) -> Self {
        let mut m = NormalMono::unit(rank);
        m.f_word.push(i);
        Elem::monomial(m, Scalar::one())
    }

    /// `K_μ` for `μ` in the root lattice.
    pub fn k_elem(mu: RootVec) -> Self {
        let rank = mu.len();
        let mut m = NormalMono::unit(rank);
        m.k = mu;
        Elem::monomial(m, Scalar::one())
    }

    pub fn k_simple(rank: usize, i: usize, power: i32) -> Self {
        let mut mu = vec![0; rank];
        mu[i] = power;
        Elem::k_elem(mu)
    }

    pub fn monomial(m: NormalMono, c: Scalar) -> Self {
        let mut e = Elem::zero();
        e.add_term(m, c);
        e
    }

    pub fn add_term(&mut self, m: NormalMono, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Scalar::zero);
        *e = e.clone() + c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NormalMono, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &NormalMono) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn scale(&self, c: &Scalar) -> Elem {
        if c.is_zero() {
            return Elem::zero();
        }
        Elem {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x.clone() * c.clone()))
                .collect(),
        }
    }

    /// Weight of a homogeneous element. Zero is homogeneous of weight 0;
    /// mixed weights are an error listing the weights found.
    pub fn weight(&self, rank: usize) -> Result<RootVec> {
        let mut seen: Vec<RootVec> = Vec::new();
        for m in self.terms.keys() {
            let w = m.weight(rank);
            if !seen.contains(&w) {
                seen.push(w);
            }
        }
        match seen.len() {
            0 => Ok(vec![0; rank]),
            1 => Ok(seen.pop().unwrap()),
            _ => Err(EngineError::NotHomogeneous(seen)),
        }
    }

    pub fn is_homogeneous(&self, rank: usize) -> bool {
        self.weight(rank).is_ok()
    }

    /// True when every monomial is a pure `F`-word (an element of `U_v^-`).
    pub fn is_negative_part(&self) -> bool {
        self.terms
            .keys()
            .all(|m| m.e_word.is_empty() && is_zero_vec(&m.k))
    }

    /// True when every monomial has no `E` letters (an element of `U_v^{≤0}`).
    pub fn has_no_e(&self) -> bool {
        self.terms.keys().all(|m| m.e_word.is_empty())
    }
}

impl std::ops::Add for Elem {
    type Output = Elem;
    fn add(mut self, rhs: Elem) -> Elem {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl std::ops::Sub for Elem {
    type Output = Elem;
    fn sub(mut self, rhs: Elem) -> Elem {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl std::ops::Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        Elem {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        parse::format_elem(self, f)
    }
}

/// The computation context: root datum, height cutoff, and the caches for
/// Serre echelons and `E`-through-`F` merges. Immutable to callers; caches
/// are internally synchronized, so `&Engine` is freely shareable.
pub struct Engine {
    datum: RootDatum,
    cutoff: i64,
    echelons: Mutex<HashMap<RootVec, Arc<Echelon>>>,
    merges: Mutex<HashMap<(Vec<usize>, Vec<usize>), Arc<Elem>>>,
}

impl Engine {
    pub fn new(datum: RootDatum, cutoff: i64) -> Engine {
        assert!(cutoff >= 0);
        Engine {
            datum,
            cutoff,
            echelons: Mutex::new(HashMap::new()),
            merges: Mutex::new(HashMap::new()),
        }
    }

    pub fn for_type(name: &str, cutoff: i64) -> Result<Engine> {
        Ok(Engine::new(RootDatum::from_name(name)?, cutoff))
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn cutoff(&self) -> i64 {
        self.cutoff
    }

    pub fn one(&self) -> Elem {
        Elem::one(self.rank())
    }

    pub fn e(&self, i: usize) -> Elem {
        Elem::gen_e(self.rank(), i)
    }

    pub fn f(&self, i: usize) -> Elem {
        Elem::gen_f(self.rank(), i)
    }

    pub fn k(&self, mu: &[i32]) -> Elem {
        Elem::k_elem(mu.to_vec())
    }

    pub fn k_gen(&self, i: usize) -> Elem {
        Elem::k_simple(self.rank(), i, 1)
    }

    /// Divided power of a simple-root generator: `F_i^{(n)} = F_i^n/[n]_{d_i}!`.
    pub fn f_divided(&self, i: usize, n: u32) -> Elem {
        let mut m = NormalMono::unit(self.rank());
        m.f_word = vec![i; n as usize];
        let fact = crate::coeff::q_factorial(n, self.datum.d(i) as u32);
        Elem::monomial(m, Scalar::from_laurent(&fact).inv())
    }

    pub fn e_divided(&self, i: usize, n: u32) -> Elem {
        let mut m = NormalMono::unit(self.rank());
        m.e_word = vec![i; n as usize];
        let fact = crate::coeff::q_factorial(n, self.datum.d(i) as u32);
        Elem::monomial(m, Scalar::from_laurent(&fact).inv())
    }

    fn echelon_for(&self, nu: &RootVec) -> Result<Arc<Echelon>> {
        let ht = height(nu);
        if ht > self.cutoff {
            return Err(EngineError::CutoffExceeded {
                cutoff: self.cutoff as u32,
                weight: nu.clone(),
                height: ht,
            });
        }
        if let Some(e) = self.echelons.lock().unwrap().get(nu) {
            return Ok(Arc::clone(e));
        }
        let built = Arc::new(echelon::build(&self.datum, nu));
        let mut lock = self.echelons.lock().unwrap();
        Ok(Arc::clone(lock.entry(nu.clone()).or_insert(built)))
    }

    /// Reduce a letter word (used for both `F`- and `E`-words) to canonical
    /// representatives of its weight space.
    pub fn reduce_word(&self, word: &[usize]) -> Result<Vec<(Vec<usize>, Scalar)>> {
        if word.len() <= 1 {
            return Ok(vec![(word.to_vec(), Scalar::one())]);
        }
        let content = word_content(self.rank(), word);
        let ech = self.echelon_for(&content)?;
        let mut combo = WordCombo::new();
        combo.insert(word.to_vec(), Scalar::one());
        Ok(ech.reduce(combo).into_iter().collect())
    }

    /// Canonical-word basis of the `U_v^-` weight space at `ν`.
    pub fn negative_basis(&self, nu: &RootVec) -> Result<Vec<Vec<usize>>> {
        if height(nu) == 0 {
            return Ok(vec![Vec::new()]);
        }
        Ok(self.echelon_for(nu)?.basis_words(&self.datum, nu))
    }

    /// `E`-word × `F`-word merge: returns the normal form of the product
    /// of the two letter words. Memoized.
    fn e_times_f(&self, e: &[usize], f: &[usize]) -> Result<Arc<Elem>> {
        if e.is_empty() || f.is_empty() {
            let mut m = NormalMono::unit(self.rank());
            m.f_word = f.to_vec();
            m.e_word = e.to_vec();
            return Ok(Arc::new(Elem::monomial(m, Scalar::one())));
        }
        let key = (e.to_vec(), f.to_vec());
        if let Some(hit) = self.merges.lock().unwrap().get(&key) {
            return Ok(Arc::clone(hit));
        }
        let (e_head, i) = (&e[..e.len() - 1], e[e.len() - 1]);
        let mut acc = Elem::zero();
        // (e_head · f) with E_i appended on the right
        for (m, c) in self.e_times_f(e_head, f)?.terms() {
            let mut m2 = m.clone();
            m2.e_word.push(i);
            acc.add_term(m2, c.clone());
        }
        // contraction terms at each occurrence of F_i
        let d_i = self.datum.d(i);
        let denom = Scalar::v_pow(d_i) - Scalar::v_pow(-d_i);
        let alpha_i = self.datum.simple_root(i);
        for pos in 0..f.len() {
            if f[pos] != i {
                continue;
            }
            let mut f_hat = f.to_vec();
            f_hat.remove(pos);
            let gamma_after = word_content(self.rank(), &f[pos + 1..]);
            let shift = self.datum.bilin(&alpha_i, &gamma_after);
            let sub = self.e_times_f(e_head, &f_hat)?;
            for (m, c) in sub.terms() {
                for (sign, kdir) in [(1i64, 1i32), (-1, -1)] {
                    // ±v^{∓shift} K_i^{±1}/(v_i − v_i^{-1}), passed left
                    // across the E-part of the accumulated monomial
                    let mut m2 = m.clone();
                    let e_wt = word_content(self.rank(), &m2.e_word);
                    let mut mu = alpha_i.clone();
                    for x in mu.iter_mut() {
                        *x *= kdir;
                    }
                    let pass = -self.datum.bilin(&mu, &e_wt);
                    m2.k = add_vec(&m2.k, &mu);
                    let coeff = c.clone()
                        * Scalar::v_pow(-sign * shift + pass)
                        * Scalar::from_int(sign)
                        / denom.clone();
                    acc.add_term(m2, coeff);
                }
            }
        }
        let out = Arc::new(acc);
        self.merges
            .lock()
            .unwrap()
            .insert(key, Arc::clone(&out));
        Ok(out)
    }

    /// Exact product. Errors if any arising letter weight exceeds the
    /// height cutoff.
    pub fn mul(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        let rank = self.rank();
        let mut out = Elem::zero();
        for (m1, c1) in a.terms() {
            for (m2, c2) in b.terms() {
                let core = self.e_times_f(&m1.e_word, &m2.f_word)?;
                for (mc, cc) in core.terms() {
                    let f_full: Vec<usize> = m1
                        .f_word
                        .iter()
                        .chain(&mc.f_word)
                        .copied()
                        .collect();
                    let e_full: Vec<usize> =
                        mc.e_word.iter().chain(&m2.e_word).copied().collect();
                    let k_full = add_vec(&add_vec(&m1.k, &mc.k), &m2.k);
                    let shift1 = -self
                        .datum
                        .bilin(&m1.k, &word_content(rank, &mc.f_word));
                    let shift2 = -self
                        .datum
                        .bilin(&m2.k, &word_content(rank, &mc.e_word));
                    let coeff =
                        c1.clone() * c2.clone() * cc.clone() * Scalar::v_pow(shift1 + shift2);
                    if coeff.is_zero() {
                        continue;
                    }
                    let f_red = self.reduce_word(&f_full)?;
                    let e_red = self.reduce_word(&e_full)?;
                    for (fw, cf) in &f_red {
                        for (ew, ce) in &e_red {
                            out.add_term(
                                NormalMono {
                                    f_word: fw.clone(),
                                    k: k_full.clone(),
                                    e_word: ew.clone(),
                                },
                                coeff.clone() * cf.clone() * ce.clone(),
                            );
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Product of several factors, left to right.
    pub fn mul_many(&self, factors: &[Elem]) -> Result<Elem> {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    /// `x^n` by repeated multiplication.
    pub fn pow(&self, x: &Elem, n: u32) -> Result<Elem> {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    /// Commutator `K_α x K_α^{−1}` test value: a homogeneous `x` of weight
    /// `μ` must satisfy `K_α x K_α^{−1} = v^{(α|μ)} x`.
    pub fn conjugate_by_k(&self, alpha: &[i32], x: &Elem) -> Result<Elem> {
        let k_plus = self.k(alpha);
        let mut neg = alpha.to_vec();
        for c in neg.iter_mut() {
            *c = -*c;
        }
        let k_minus = self.k(&neg);
        self.mul(&self.mul(&k_plus, x)?, &k_minus)
    }

    /// Dimension of the `U_v^-` weight space at `ν` (post-reduction).
    pub fn negative_dim(&self, nu: &RootVec) -> Result<usize> {
        Ok(self.negative_basis(nu)?.len())
    }
}

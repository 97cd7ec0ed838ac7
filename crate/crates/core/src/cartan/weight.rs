//! Characters of the Cartan subalgebra and formal module characters.
//!
//! A [`WeightChar`] `λ` records the value `λ(K_{α_i})` on each simple
//! Cartan generator as a signed monomial `±v^a X^b ∏ z_k^{c_k}`
//! ([`CompMono`]); multiplicativity extends it to the whole root lattice.
//! Integral weights `v^μ` (entered in fundamental-weight coordinates),
//! sign twists, fully generic weights (`λ(K_{α_i}) = z_{i+1}`), and the
//! `X`-deformation `λX` are all instances. The ρ-shifted dot action acts
//! by `(w.λ)(K_ν) = λ(K_{w^{-1}ν}) · v^{(ρ|w^{-1}ν) − (ρ|ν)}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::{height, kostant_partition, positive_cone, RootDatum, RootVec, WeylWord};
use crate::coeff::Scalar;

/// A signed monomial `sign · v^{v_exp} · X^{x_exp} · ∏_k z_{k+1}^{z_exp[k]}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CompMono {
    pub sign: i8,
    pub v_exp: i64,
    pub x_exp: i64,
    pub z_exp: Vec<i64>,
}

impl CompMono {
    pub fn one(rank: usize) -> Self {
        CompMono {
            sign: 1,
            v_exp: 0,
            x_exp: 0,
            z_exp: vec![0; rank],
        }
    }

    pub fn v_pow(rank: usize, e: i64) -> Self {
        CompMono {
            v_exp: e,
            ..CompMono::one(rank)
        }
    }

    pub fn z_param(rank: usize, i: usize) -> Self {
        let mut m = CompMono::one(rank);
        m.z_exp[i] = 1;
        m
    }

    pub fn mul(&self, other: &CompMono) -> CompMono {
        CompMono {
            sign: self.sign * other.sign,
            v_exp: self.v_exp + other.v_exp,
            x_exp: self.x_exp + other.x_exp,
            z_exp: self
                .z_exp
                .iter()
                .zip(&other.z_exp)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn powi(&self, e: i64) -> CompMono {
        CompMono {
            sign: if e % 2 == 0 { 1 } else { self.sign },
            v_exp: self.v_exp * e,
            x_exp: self.x_exp * e,
            z_exp: self.z_exp.iter().map(|a| a * e).collect(),
        }
    }

    pub fn to_scalar(&self) -> Scalar {
        let mut out = Scalar::from_int(self.sign as i64) * Scalar::v_pow(self.v_exp);
        if self.x_exp != 0 {
            out = out * Scalar::x_pow(self.x_exp);
        }
        for (k, &e) in self.z_exp.iter().enumerate() {
            if e != 0 {
                out = out * Scalar::z_pow(k + 1, e);
            }
        }
        out
    }

    /// Pure `±v^m`: no deformation, no generic parameters.
    pub fn is_integral(&self) -> bool {
        self.x_exp == 0 && self.z_exp.iter().all(|&e| e == 0)
    }
}

impl fmt::Display for CompMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.v_exp != 0 {
            parts.push(if self.v_exp == 1 {
                "v".into()
            } else {
                format!("v^{}", self.v_exp)
            });
        }
        if self.x_exp != 0 {
            parts.push(if self.x_exp == 1 {
                "X".into()
            } else {
                format!("X^{}", self.x_exp)
            });
        }
        for (k, &e) in self.z_exp.iter().enumerate() {
            if e != 0 {
                parts.push(if e == 1 {
                    format!("z{}", k + 1)
                } else {
                    format!("z{}^{}", k + 1, e)
                });
            }
        }
        let body = if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        };
        if self.sign < 0 {
            write!(f, "-{}", body)
        } else {
            write!(f, "{}", body)
        }
    }
}

/// A character of the Cartan subalgebra with signed-monomial values.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct WeightChar {
    vals: Vec<CompMono>,
}

impl WeightChar {
    /// `λ = v^μ` for `μ = Σ c_i ω_i` in fundamental-weight coordinates:
    /// `λ(K_{α_i}) = v^{(μ|α_i)} = v^{d_i c_i}`.
    pub fn v_weight(datum: &RootDatum, omega_coords: &[i32]) -> Self {
        assert_eq!(omega_coords.len(), datum.rank());
        let vals = (0..datum.rank())
            .map(|i| CompMono::v_pow(datum.rank(), datum.d(i) * omega_coords[i] as i64))
            .collect();
        WeightChar { vals }
    }

    /// The trivial weight `v^0`.
    pub fn trivial(datum: &RootDatum) -> Self {
        WeightChar::v_weight(datum, &vec![0; datum.rank()])
    }

    /// Fully generic weight: `λ(K_{α_i}) = z_{i+1}`, one free parameter per
    /// simple root.
    pub fn generic(datum: &RootDatum) -> Self {
        let vals = (0..datum.rank())
            .map(|i| CompMono::z_param(datum.rank(), i))
            .collect();
        WeightChar { vals }
    }

    /// Attach signs: `λ(K_{α_i}) ↦ ε_i · λ(K_{α_i})`.
    pub fn with_signs(mut self, signs: &[i8]) -> Self {
        assert_eq!(signs.len(), self.vals.len());
        for (v, &s) in self.vals.iter_mut().zip(signs) {
            assert!(s == 1 || s == -1);
            v.sign *= s;
        }
        self
    }

    /// The `X`-deformation `λX`, defined multiplicatively:
    /// `(λX)(K_μ) = λ(K_μ) X^{ht μ}`.
    pub fn deformed(mut self) -> Self {
        for v in self.vals.iter_mut() {
            v.x_exp += 1;
        }
        self
    }

    pub fn from_vals(vals: Vec<CompMono>) -> Self {
        WeightChar { vals }
    }

    pub fn rank(&self) -> usize {
        self.vals.len()
    }

    pub fn val(&self, i: usize) -> &CompMono {
        &self.vals[i]
    }

    /// `λ(K_μ)` for `μ` in the root lattice, as a signed monomial.
    pub fn eval(&self, mu: &[i32]) -> CompMono {
        let mut out = CompMono::one(self.rank());
        for (i, &c) in mu.iter().enumerate() {
            if c != 0 {
                out = out.mul(&self.vals[i].powi(c as i64));
            }
        }
        out
    }

    pub fn eval_scalar(&self, mu: &[i32]) -> Scalar {
        self.eval(mu).to_scalar()
    }

    /// `λ · v^{−ν}` for `ν` in the root lattice.
    pub fn shift_down(&self, datum: &RootDatum, nu: &[i32]) -> WeightChar {
        let vals = (0..self.rank())
            .map(|i| {
                let mut m = self.vals[i].clone();
                m.v_exp -= datum.bilin(nu, &datum.simple_root(i));
                m
            })
            .collect();
        WeightChar { vals }
    }

    /// ρ-shifted dot action `w.λ`.
    pub fn dot(&self, datum: &RootDatum, w: &WeylWord) -> WeightChar {
        let vals = (0..self.rank())
            .map(|i| {
                let b = w.apply_inverse(datum, &datum.simple_root(i));
                let mut m = self.eval(&b);
                m.v_exp += datum.rho_pair(&b) - datum.d(i);
                m
            })
            .collect();
        WeightChar { vals }
    }

    /// Dot action of the reflection in an arbitrary positive root.
    pub fn dot_reflection(&self, datum: &RootDatum, beta: &[i32]) -> WeightChar {
        let vals = (0..self.rank())
            .map(|i| {
                let b = datum.reflect_root(&datum.simple_root(i), beta);
                let mut m = self.eval(&b);
                m.v_exp += datum.rho_pair(&b) - datum.d(i);
                m
            })
            .collect();
        WeightChar { vals }
    }

    /// True when every value is `±v^m` (no deformation or parameters).
    pub fn is_integral(&self) -> bool {
        self.vals.iter().all(|m| m.is_integral())
    }

    /// `q^ρ λ(K_β)` for a positive root `β`, as a signed monomial.
    pub fn rho_shifted_eval(&self, datum: &RootDatum, beta: &[i32]) -> CompMono {
        let mut m = self.eval(beta);
        m.v_exp += datum.rho_pair(beta);
        m
    }
}

impl fmt::Display for WeightChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .vals
            .iter()
            .enumerate()
            .map(|(i, m)| format!("K{}->{}", i + 1, m))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Truncated character of a highest-weight module: multiplicities of
/// `base · v^{−ν}` for `ν` in the positive cone with `ht(ν) ≤ cutoff`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Character {
    pub base: WeightChar,
    pub cutoff: i64,
    pub mult: BTreeMap<RootVec, u64>,
}

impl Character {
    pub fn dim_at(&self, nu: &[i32]) -> u64 {
        self.mult.get(nu).copied().unwrap_or(0)
    }

    /// Equality of truncations at the smaller of the two cutoffs.
    pub fn eq_truncated(&self, other: &Character) -> bool {
        if self.base != other.base {
            return false;
        }
        let cutoff = self.cutoff.min(other.cutoff);
        let keys: std::collections::BTreeSet<&RootVec> =
            self.mult.keys().chain(other.mult.keys()).collect();
        keys.into_iter()
            .filter(|nu| height(nu) <= cutoff)
            .all(|nu| self.dim_at(nu) == other.dim_at(nu))
    }

    pub fn to_combo(&self, datum: &RootDatum) -> CharCombo {
        let mut out = CharCombo::zero();
        for (nu, &m) in &self.mult {
            out.add_weight(self.base.shift_down(datum, nu), m as i64);
        }
        out
    }
}

/// Character of the Verma module `M(λ)`: multiplicity of `λ·v^{−ν}` is the
/// Kostant partition number of `ν`.
pub fn verma_character(datum: &RootDatum, lambda: &WeightChar, cutoff: i64) -> Character {
    assert!(cutoff >= 0);
    let mut mult = BTreeMap::new();
    for nu in positive_cone(datum.rank(), cutoff) {
        let p = kostant_partition(datum, &nu);
        if p > 0 {
            mult.insert(nu, p);
        }
    }
    Character {
        base: lambda.clone(),
        cutoff,
        mult,
    }
}

/// A formal Z-linear combination of weight characters (a virtual character
/// truncated by construction). Supports mixed bases.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CharCombo {
    terms: BTreeMap<WeightChar, i64>,
}

impl CharCombo {
    pub fn zero() -> Self {
        CharCombo {
            terms: BTreeMap::new(),
        }
    }

    pub fn add_weight(&mut self, w: WeightChar, mult: i64) {
        if mult == 0 {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert(0);
        *e += mult;
        if *e == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeightChar, i64)> {
        self.terms.iter().map(|(k, &m)| (k, m))
    }

    pub fn coeff(&self, w: &WeightChar) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }
}

impl Add for CharCombo {
    type Output = CharCombo;
    fn add(mut self, rhs: CharCombo) -> CharCombo {
        for (w, m) in rhs.terms {
            self.add_weight(w, m);
        }
        self
    }
}

impl Sub for CharCombo {
    type Output = CharCombo;
    fn sub(mut self, rhs: CharCombo) -> CharCombo {
        for (w, m) in rhs.terms {
            self.add_weight(w, -m);
        }
        self
    }
}

impl Neg for CharCombo {
    type Output = CharCombo;
    fn neg(self) -> CharCombo {
        CharCombo {
            terms: self.terms.into_iter().map(|(w, m)| (w, -m)).collect(),
        }
    }
}

impl fmt::Display for CharCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, m)| format!("{m}*e[{w}]"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{ConvexOrder, RootDatum};

    fn a2() -> RootDatum {
        RootDatum::from_name("A2").unwrap()
    }

    #[test]
    fn dot_action_identity_and_sl2() {
        let a1 = RootDatum::from_name("A1").unwrap();
        for r in [0i32, 1, 3] {
            let lam = WeightChar::v_weight(&a1, &[r]);
            assert_eq!(lam.dot(&a1, &WeylWord::identity()), lam);
            let s = WeylWord::simple(0);
            let expect = WeightChar::v_weight(&a1, &[-r - 2]);
            assert_eq!(lam.dot(&a1, &s), expect, "s.(v^{r}) should be v^(-r-2)");
        }
    }

    #[test]
    fn dot_action_a2_s1_on_trivial() {
        let rd = a2();
        let lam = WeightChar::trivial(&rd);
        let got = lam.dot(&rd, &WeylWord::simple(0));
        // s1.(v^0) = v^{-α1}: exponents -(α1|α_i) = (-2, 1)
        assert_eq!(got.val(0), &CompMono::v_pow(2, -2));
        assert_eq!(got.val(1), &CompMono::v_pow(2, 1));
        // and it matches shifting down by α1
        assert_eq!(got, lam.shift_down(&rd, &[1, 0]));
    }

    #[test]
    fn dot_action_composes() {
        let rd = a2();
        let w1 = WeylWord::from_one_based(&[1, 2]).unwrap();
        let w2 = WeylWord::from_one_based(&[2, 1]).unwrap();
        for lam in [
            WeightChar::v_weight(&rd, &[1, 0]),
            WeightChar::generic(&rd),
            WeightChar::generic(&rd).deformed(),
            WeightChar::v_weight(&rd, &[2, 1]).with_signs(&[-1, 1]),
        ] {
            let seq = lam.dot(&rd, &w2).dot(&rd, &w1);
            let joint = lam.dot(&rd, &w1.concat(&w2));
            assert_eq!(seq, joint);
        }
    }

    #[test]
    fn dot_reflection_matches_word_for_simple_roots() {
        let rd = RootDatum::from_name("B2").unwrap();
        let lam = WeightChar::generic(&rd);
        for i in 0..2 {
            assert_eq!(
                lam.dot_reflection(&rd, &rd.simple_root(i)),
                lam.dot(&rd, &WeylWord::simple(i))
            );
        }
        // non-simple root: s_β as a word via conjugation s1 s2 s1... in B2,
        // s_{a1+a2} = s1 s2 s1 (since s1(a2) = a1+a2)
        let beta = vec![1, 1];
        let word = WeylWord::from_one_based(&[1, 2, 1]).unwrap();
        assert_eq!(lam.dot_reflection(&rd, &beta), lam.dot(&rd, &word));
    }

    #[test]
    fn deformed_weight_multiplies_x_by_height() {
        let rd = a2();
        let lam = WeightChar::v_weight(&rd, &[1, 1]).deformed();
        let m = lam.eval(&[2, 1]); // K_{2a1+a2}
        assert_eq!(m.x_exp, 3);
    }

    #[test]
    fn verma_character_values() {
        let a1 = RootDatum::from_name("A1").unwrap();
        let ch = verma_character(&a1, &WeightChar::v_weight(&a1, &[5]), 3);
        for k in 0..=3 {
            assert_eq!(ch.dim_at(&[k]), 1);
        }
        let rd = a2();
        let ch2 = verma_character(&rd, &WeightChar::trivial(&rd), 4);
        assert_eq!(ch2.dim_at(&[0, 0]), 1);
        assert_eq!(ch2.dim_at(&[1, 1]), 2);
        assert_eq!(ch2.dim_at(&[1, 0]), 1);
    }

    #[test]
    fn char_combo_arithmetic() {
        let rd = a2();
        let lam = WeightChar::trivial(&rd);
        let c1 = verma_character(&rd, &lam, 2).to_combo(&rd);
        let c2 = verma_character(&rd, &lam, 2).to_combo(&rd);
        assert!((c1.clone() - c2).is_zero());
        let mu = lam.dot(&rd, &WeylWord::simple(0));
        let c3 = verma_character(&rd, &mu, 2).to_combo(&rd);
        assert!(!(c1 - c3).is_zero());
    }

    #[test]
    fn rho_shifted_eval_on_roots() {
        // for λ = v^0 in A2: q^ρ λ(K_β) = v^{(ρ|β)} = v^{ht β}
        let rd = a2();
        let lam = WeightChar::trivial(&rd);
        let co = ConvexOrder::for_longest(&rd);
        for beta in co.roots() {
            let m = lam.rho_shifted_eval(&rd, beta);
            assert_eq!(m.sign, 1);
            assert_eq!(m.v_exp, height(beta));
        }
    }
}

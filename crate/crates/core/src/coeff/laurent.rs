//! Laurent polynomials in the quantum parameter `v`.
//!
//! Stored sparsely as `exponent -> rational coefficient` with no zero entries,
//! so structural equality is semantic equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use super::{q_one, q_zero, Q};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    /// exponent -> coefficient, no zero coefficients.
    terms: BTreeMap<i64, Q>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, q_one())
    }

    /// `c * v^k`.
    pub fn monomial(k: i64, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        LaurentPoly { terms }
    }

    /// `v^k`.
    pub fn v_pow(k: i64) -> Self {
        LaurentPoly::monomial(k, q_one())
    }

    pub fn from_q(c: Q) -> Self {
        LaurentPoly::monomial(0, c)
    }

    pub fn from_int(c: i64) -> Self {
        LaurentPoly::from_q(Q::from_integer(c.into()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Q)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i64) -> Q {
        self.terms.get(&k).cloned().unwrap_or_else(q_zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Substitute `v -> v^-1`. (The bar involution on coefficients.)
    pub fn bar(&self) -> Self {
        let terms = self.terms.iter().map(|(k, c)| (-k, c.clone())).collect();
        LaurentPoly { terms }
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect();
        LaurentPoly { terms }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        let terms = self.terms.iter().map(|(e, k)| (*e, k * c)).collect();
        LaurentPoly { terms }
    }

    fn insert_add(&mut self, k: i64, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(k) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Exact division; `None` when `self` is not a multiple of `d`.
    pub fn divexact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        assert!(!d.is_zero(), "division by zero Laurent polynomial");
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        // If quot * d == self then min exponents add, so the quotient exponent
        // can never drop below this floor; hitting it means "not a multiple".
        let q_exp_floor = self.min_exp().unwrap() - d.min_exp().unwrap();
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        let (d_exp, d_coeff) = {
            let (k, c) = d.terms.iter().next_back().unwrap();
            (*k, c.clone())
        };
        while !rem.is_zero() {
            let (r_exp, r_coeff) = {
                let (k, c) = rem.terms.iter().next_back().unwrap();
                (*k, c.clone())
            };
            let q_exp = r_exp - d_exp;
            if q_exp < q_exp_floor {
                return None;
            }
            let t = LaurentPoly::monomial(q_exp, r_coeff / d_coeff.clone());
            rem = rem - t.clone() * d.clone();
            quot += t;
        }
        Some(quot)
    }

    /// Evaluate at `v = 1`.
    pub fn eval_at_one(&self) -> Q {
        let mut acc = q_zero();
        for c in self.terms.values() {
            acc += c.clone();
        }
        acc
    }

    /// True when every coefficient is an integer (membership in Z[v, v^-1]).
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// True when invariant under `v -> v^-1`.
    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: Self) {
        for (k, c) in rhs.terms {
            self.insert_add(k, c);
        }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> Self {
        let terms = self.terms.into_iter().map(|(k, c)| (k, -c)).collect();
        LaurentPoly { terms }
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: Self) -> Self {
        let mut out = LaurentPoly::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                out.insert_add(ka + kb, ca * cb);
            }
        }
        out
    }
}

fn fmt_q(c: &Q) -> String {
    if c.is_integer() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for LaurentPoly {
    /// Renders with explicit `+`/`-` separators and `v^k` powers, highest
    /// exponent first, e.g. `v^2 - 2 + v^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let power = match *k {
                0 => None,
                1 => Some("v".to_string()),
                e => Some(format!("v^{}", e)),
            };
            match power {
                None => write!(f, "{}", fmt_q(&abs))?,
                Some(p) => {
                    if abs.is_one() {
                        write!(f, "{}", p)?;
                    } else {
                        write!(f, "{}*{}", fmt_q(&abs), p)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divexact_roundtrip() {
        let a = LaurentPoly::v_pow(2) + LaurentPoly::from_int(3) + LaurentPoly::v_pow(-1);
        let b = LaurentPoly::v_pow(1) - LaurentPoly::from_int(2);
        let prod = a.clone() * b.clone();
        assert_eq!(prod.divexact(&b), Some(a.clone()));
        assert_eq!(prod.divexact(&a), Some(b));
    }

    #[test]
    fn divexact_rejects_non_multiple() {
        let a = LaurentPoly::v_pow(1) + LaurentPoly::one();
        let b = LaurentPoly::v_pow(1) - LaurentPoly::one();
        assert_eq!(a.divexact(&b), None);
    }

    #[test]
    fn display_signs() {
        let p = LaurentPoly::v_pow(2) - LaurentPoly::from_int(2) + LaurentPoly::v_pow(-2);
        assert_eq!(p.to_string(), "v^2 - 2 + v^-2");
    }
}

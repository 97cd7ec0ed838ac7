//! The working coefficient field: rational functions in `v`, `X`, `z1..zn`.
//!
//! Canonical form: `gcd(num, den) = 1`, denominator integer-primitive with
//! positive leading coefficient (graded-lex order). Structural equality is
//! then field equality, and hash-based caching is sound.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use super::{q_one, LaurentPoly, MPoly, Q, VAR_V, VAR_X};
use crate::error::{EngineError, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: MPoly,
    den: MPoly, // integer-primitive, positive leading coefficient, nonzero
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: MPoly::zero(),
            den: MPoly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar {
            num: MPoly::one(),
            den: MPoly::one(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        Scalar {
            num: MPoly::from_int(c),
            den: MPoly::one(),
        }
    }

    pub fn from_q(c: Q) -> Self {
        Scalar {
            num: MPoly::constant(c),
            den: MPoly::one(),
        }
    }

    pub fn from_poly(p: MPoly) -> Self {
        Scalar {
            num: p,
            den: MPoly::one(),
        }
    }

    /// `v^k` for any integer `k`.
    pub fn v_pow(k: i64) -> Self {
        if k >= 0 {
            Scalar::from_poly(MPoly::var_pow(VAR_V, k as u32))
        } else {
            Scalar {
                num: MPoly::one(),
                den: MPoly::var_pow(VAR_V, (-k) as u32),
            }
        }
    }

    /// `X^k` for any integer `k`.
    pub fn x_pow(k: i64) -> Self {
        if k >= 0 {
            Scalar::from_poly(MPoly::var_pow(VAR_X, k as u32))
        } else {
            Scalar {
                num: MPoly::one(),
                den: MPoly::var_pow(VAR_X, (-k) as u32),
            }
        }
    }

    /// The weight parameter `z{k}` (1-based), raised to any integer power.
    pub fn z_pow(k: usize, e: i64) -> Self {
        let idx = super::var_z(k);
        if e >= 0 {
            Scalar::from_poly(MPoly::var_pow(idx, e as u32))
        } else {
            Scalar {
                num: MPoly::one(),
                den: MPoly::var_pow(idx, (-e) as u32),
            }
        }
    }

    pub fn ratio(num: MPoly, den: MPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Scalar { num, den }.canonical()
    }

    fn canonical(self) -> Self {
        if self.num.is_zero() {
            return Scalar::zero();
        }
        let g = MPoly::gcd(&self.num, &self.den);
        let (num, den) = if g.is_one() {
            (self.num, self.den)
        } else {
            (
                self.num.divexact(&g).expect("gcd divides numerator"),
                self.den.divexact(&g).expect("gcd divides denominator"),
            )
        };
        let (c, den) = den.int_normalize();
        let num = num.scale(&(q_one() / c));
        Scalar { num, den }
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Scalar {
            num: self.den.clone(),
            den: self.num.clone(),
        }
        .canonical()
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..e.unsigned_abs() {
            acc *= base.clone();
        }
        acc
    }

    /// Interpret a Laurent polynomial in `v` as a scalar.
    pub fn from_laurent(p: &LaurentPoly) -> Self {
        if p.is_zero() {
            return Scalar::zero();
        }
        let min = p.min_exp().unwrap();
        let mut num = MPoly::zero();
        for (k, c) in p.terms() {
            num += MPoly::monomial(super::Mono::var(VAR_V, (k - min) as u32), c.clone());
        }
        Scalar::from_poly(num) * Scalar::v_pow(min)
    }

    /// Recover a Laurent polynomial in `v`; `None` when the scalar is not of
    /// the form `p(v) / (c * v^k)` with `p` a polynomial and `c` rational.
    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        if !self.num.is_univariate_in(VAR_V) {
            return None;
        }
        // denominator must be  c * v^k
        if self.den.num_terms() != 1 {
            return None;
        }
        let (dm, dc) = self.den.leading().unwrap();
        if !(0..dm.nvars()).all(|i| i == VAR_V || dm.exp(i) == 0) {
            return None;
        }
        let k = dm.exp(VAR_V) as i64;
        let mut out = LaurentPoly::zero();
        for (m, c) in self.num.terms() {
            out += LaurentPoly::monomial(m.exp(VAR_V) as i64 - k, c / dc);
        }
        Some(out)
    }

    /// Membership in the Laurent ring Z[v, v^-1] (the integral form's
    /// coefficient ring). Requires a Laurent shape and integer coefficients.
    pub fn is_integral_laurent(&self) -> bool {
        self.to_laurent().map(|p| p.is_integral()).unwrap_or(false)
    }

    /// Membership in Z[v, v^-1] localized at the quantum integers `[2]` and
    /// `[3]` (all `v_d` variants): the canonical denominator must divide a
    /// monomial times a product of the polynomials `v^{2d} + 1` and
    /// `v^{4d} + v^{2d} + 1` for `d` in `{1, 2, 3}`.
    pub fn is_a_prime(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        if !self.den.is_univariate_in(VAR_V) {
            return false;
        }
        let mut den = self.den.clone();
        // strip the monomial part
        den = den.div_mono(&den.mono_content());
        // candidate irreducible-ish factors: v^{2d}[2]_{v^d} and v-scaled [3]_{v^d}
        let mut factors: Vec<MPoly> = Vec::new();
        for d in 1..=3u32 {
            // [2]_{v^d} = v^d + v^-d  ~  v^{2d} + 1
            factors.push(MPoly::var_pow(VAR_V, 2 * d) + MPoly::one());
            // [3]_{v^d} = v^{2d} + 1 + v^{-2d}  ~  v^{4d} + v^{2d} + 1
            factors.push(MPoly::var_pow(VAR_V, 4 * d) + MPoly::var_pow(VAR_V, 2 * d) + MPoly::one());
        }
        let mut progress = true;
        while progress && !den.is_constant() {
            progress = false;
            for f in &factors {
                while let Some(q) = den.divexact(f) {
                    den = q;
                    progress = true;
                    if den.is_constant() {
                        break;
                    }
                }
            }
        }
        den.is_constant()
    }

    /// `(X-1)`-adic valuation. Errors on zero input.
    pub fn valuation_at_x1(&self) -> Result<i64> {
        if self.is_zero() {
            return Err(EngineError::ValuationOfZero);
        }
        Ok(x1_multiplicity(&self.num) as i64 - x1_multiplicity(&self.den) as i64)
    }

    /// Substitute `X = 1`. Errors when the denominator vanishes there (i.e.
    /// the scalar has negative valuation).
    pub fn eval_x1(&self) -> Result<Scalar> {
        let den1 = self.den.subst_one(VAR_X);
        if den1.is_zero() {
            return Err(EngineError::falsified(format!(
                "substituting X = 1 into a scalar with a pole there: {}",
                self
            )));
        }
        Ok(Scalar::ratio(self.num.subst_one(VAR_X), den1))
    }

    /// Divide out all `(X-1)` factors: returns `(val, unit)` with
    /// `self = (X-1)^val * unit` and `unit` having valuation 0.
    pub fn x1_split(&self) -> Result<(i64, Scalar)> {
        if self.is_zero() {
            return Err(EngineError::ValuationOfZero);
        }
        let (vn, num) = x1_strip(&self.num);
        let (vd, den) = x1_strip(&self.den);
        Ok((vn as i64 - vd as i64, Scalar::ratio(num, den)))
    }

    /// Sum many scalars with a shared running denominator; faster than a
    /// fold of binary `+` when many terms share denominators.
    pub fn sum<I: IntoIterator<Item = Scalar>>(items: I) -> Scalar {
        let mut acc = Scalar::zero();
        for s in items {
            acc += s;
        }
        acc
    }
}

/// Multiplicity of `(X-1)` in a polynomial (0 for X-free polynomials).
fn x1_multiplicity(p: &MPoly) -> u32 {
    x1_strip(p).0
}

fn x1_strip(p: &MPoly) -> (u32, MPoly) {
    let mut count = 0;
    let mut cur = p.clone();
    let x_minus_1 = MPoly::var(VAR_X) - MPoly::one();
    while !cur.is_zero() && cur.subst_one(VAR_X).is_zero() {
        cur = cur
            .divexact(&x_minus_1)
            .expect("vanishing at X=1 implies divisibility by X-1");
        count += 1;
    }
    (count, cur)
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Self) {
        if rhs.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = rhs;
            return;
        }
        let out = if self.den == rhs.den {
            Scalar {
                num: self.num.clone() + rhs.num,
                den: self.den.clone(),
            }
        } else {
            Scalar {
                num: self.num.clone() * rhs.den.clone() + rhs.num * self.den.clone(),
                den: self.den.clone() * rhs.den,
            }
        };
        *self = out.canonical();
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, rhs: Self) -> Scalar {
        self += rhs;
        self
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Self) {
        *self += -rhs;
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Self) -> Scalar {
        self + (-rhs)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: -self.num,
            den: self.den,
        }
    }
}

impl MulAssign for Scalar {
    fn mul_assign(&mut self, rhs: Self) {
        if self.is_zero() || rhs.is_zero() {
            *self = Scalar::zero();
            return;
        }
        // cross-cancel to keep intermediate products small
        let g1 = MPoly::gcd(&self.num, &rhs.den);
        let g2 = MPoly::gcd(&rhs.num, &self.den);
        let a = self.num.divexact(&g1).unwrap();
        let d = rhs.den.divexact(&g1).unwrap();
        let c = rhs.num.divexact(&g2).unwrap();
        let b = self.den.divexact(&g2).unwrap();
        *self = Scalar {
            num: a * c,
            den: b * d,
        }
        .canonical();
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(mut self, rhs: Self) -> Scalar {
        self *= rhs;
        self
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Self) -> Scalar {
        self * rhs.inv()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_cancellation() {
        // (X^2 - 1)/(X + 1) == X - 1
        let x = Scalar::from_poly(MPoly::var(VAR_X));
        let num = x.clone() * x.clone() - Scalar::one();
        let den = x.clone() + Scalar::one();
        let r = num / den;
        assert_eq!(r, x - Scalar::one());
        assert!(r.den().is_one());
    }

    #[test]
    fn valuation_examples() {
        let x = Scalar::from_poly(MPoly::var(VAR_X));
        // (X^2-1)/(X+1) has valuation 1
        let r = (x.clone() * x.clone() - Scalar::one()) / (x.clone() + Scalar::one());
        assert_eq!(r.valuation_at_x1().unwrap(), 1);
        // 1/(X-1)^2 has valuation -2
        let r2 = Scalar::one() / ((x.clone() - Scalar::one()) * (x.clone() - Scalar::one()));
        assert_eq!(r2.valuation_at_x1().unwrap(), -2);
        // v-only scalars have valuation 0
        assert_eq!(Scalar::v_pow(5).valuation_at_x1().unwrap(), 0);
        // zero input is an error
        assert!(Scalar::zero().valuation_at_x1().is_err());
    }

    #[test]
    fn valuation_additivity() {
        let x = Scalar::from_poly(MPoly::var(VAR_X));
        let a = (x.clone() - Scalar::one()).pow(2) * (x.clone() + Scalar::from_int(3));
        let b = Scalar::v_pow(-2) / (x.clone() - Scalar::one());
        let va = a.valuation_at_x1().unwrap();
        let vb = b.valuation_at_x1().unwrap();
        assert_eq!((a * b).valuation_at_x1().unwrap(), va + vb);
    }

    #[test]
    fn laurent_roundtrip() {
        let p = LaurentPoly::v_pow(3) - LaurentPoly::from_int(2) + LaurentPoly::v_pow(-2);
        let s = Scalar::from_laurent(&p);
        assert_eq!(s.to_laurent(), Some(p));
    }

    #[test]
    fn integral_laurent_predicate() {
        assert!(Scalar::v_pow(-4).is_integral_laurent());
        let half = Scalar::from_q(Q::new(1.into(), 2.into()));
        assert!(!half.is_integral_laurent());
        let x = Scalar::from_poly(MPoly::var(VAR_X));
        assert!(!x.is_integral_laurent());
    }

    #[test]
    fn a_prime_membership() {
        // 1/[2] is allowed
        let two = Scalar::from_laurent(&(LaurentPoly::v_pow(1) + LaurentPoly::v_pow(-1)));
        assert!(two.inv().is_a_prime());
        // 1/[2]_{v^2} is allowed (long-root variant)
        let two_long = Scalar::from_laurent(&(LaurentPoly::v_pow(2) + LaurentPoly::v_pow(-2)));
        assert!(two_long.inv().is_a_prime());
        // 1/(v - 1) is not
        let vm1 = Scalar::v_pow(1) - Scalar::one();
        assert!(!vm1.inv().is_a_prime());
        // plain Laurent elements are in the localization too
        assert!(Scalar::v_pow(7).is_a_prime());
    }

    #[test]
    fn x1_split_unit_part() {
        let x = Scalar::from_poly(MPoly::var(VAR_X));
        let s = (x.clone() - Scalar::one()).pow(3) * Scalar::v_pow(2)
            / (x.clone() + Scalar::from_int(1));
        let (val, unit) = s.x1_split().unwrap();
        assert_eq!(val, 3);
        assert_eq!(unit.valuation_at_x1().unwrap(), 0);
        assert_eq!(
            unit * (x.clone() - Scalar::one()).pow(3),
            (x.clone() - Scalar::one()).pow(3) * Scalar::v_pow(2) / (x + Scalar::from_int(1))
        );
    }
}

//! Sparse multivariate polynomials over Q in `v`, `X`, `z1, z2, ...`.
//!
//! Monomial order is graded lexicographic with variable significance
//! `v < X < z1 < z2 < ...` (degree first; ties broken on the highest-index
//! variable where the exponents differ). The order only matters for
//! deterministic normalization choices; all ring arithmetic is order-free.
//!
//! The gcd uses a primitive pseudo-remainder sequence recursing over the
//! variable of highest index, with a fast univariate path. Polynomials here
//! stay small (a handful of variables, modest degrees), which keeps the PRS
//! comfortably cheap.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num::{BigInt, Integer, One, Signed, Zero};
use smallvec::SmallVec;

use super::{q_one, q_zero, var_name, Q, VAR_V};

/// Exponent vector, trailing zeros trimmed so equal monomials are
/// structurally equal.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Mono(SmallVec<[u32; 4]>);

impl Mono {
    pub fn unit() -> Self {
        Mono::default()
    }

    pub fn var(idx: usize, exp: u32) -> Self {
        let mut v = SmallVec::new();
        if exp > 0 {
            v.resize(idx + 1, 0);
            v[idx] = exp;
        }
        Mono(v)
    }

    pub fn exp(&self, idx: usize) -> u32 {
        self.0.get(idx).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    fn trim(mut v: SmallVec<[u32; 4]>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        Mono(v)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let n = self.0.len().max(other.0.len());
        let mut v = SmallVec::with_capacity(n);
        for i in 0..n {
            v.push(self.exp(i) + other.exp(i));
        }
        Mono::trim(v)
    }

    /// Componentwise min.
    pub fn gcd(&self, other: &Mono) -> Mono {
        let n = self.0.len().min(other.0.len());
        let mut v = SmallVec::with_capacity(n);
        for i in 0..n {
            v.push(self.exp(i).min(other.exp(i)));
        }
        Mono::trim(v)
    }

    pub fn divides(&self, other: &Mono) -> bool {
        (0..self.0.len()).all(|i| self.exp(i) <= other.exp(i))
    }

    /// `other / self`; caller must ensure divisibility.
    pub fn div(&self, other: &Mono) -> Mono {
        debug_assert!(self.divides(other));
        let mut v = SmallVec::with_capacity(other.0.len());
        for i in 0..other.0.len() {
            v.push(other.exp(i) - self.exp(i));
        }
        Mono::trim(v)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let n = self.0.len().max(other.0.len());
        for i in (0..n).rev() {
            match self.exp(i).cmp(&other.exp(i)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    /// monomial -> coefficient, no zero coefficients.
    terms: BTreeMap<Mono, Q>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(q_one())
    }

    pub fn constant(c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::unit(), c);
        }
        MPoly { terms }
    }

    pub fn from_int(c: i64) -> Self {
        MPoly::constant(Q::from_integer(c.into()))
    }

    pub fn var(idx: usize) -> Self {
        MPoly::monomial(Mono::var(idx, 1), q_one())
    }

    pub fn var_pow(idx: usize, exp: u32) -> Self {
        MPoly::monomial(Mono::var(idx, exp), q_one())
    }

    pub fn monomial(m: Mono, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Mono::unit())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(Mono::is_unit)
    }

    pub fn as_constant(&self) -> Option<Q> {
        if self.is_zero() {
            return Some(q_zero());
        }
        if self.is_constant() {
            return self.terms.get(&Mono::unit()).cloned();
        }
        None
    }

    /// True when only the single variable `idx` occurs.
    pub fn is_univariate_in(&self, idx: usize) -> bool {
        self.terms
            .keys()
            .all(|m| (0..m.nvars()).all(|i| i == idx || m.exp(i) == 0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<(&Mono, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn degree_in(&self, idx: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(idx)).max().unwrap_or(0)
    }

    /// Highest variable index that actually occurs, if any.
    pub fn top_var(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter_map(|m| (0..m.nvars()).rev().find(|&i| m.exp(i) > 0))
            .max()
    }

    /// Componentwise-min monomial over all terms (the monomial content).
    pub fn mono_content(&self) -> Mono {
        let mut it = self.terms.keys();
        let first = match it.next() {
            None => return Mono::unit(),
            Some(m) => m.clone(),
        };
        it.fold(first, |acc, m| acc.gcd(m))
    }

    fn insert_add(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return MPoly::zero();
        }
        let terms = self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect();
        MPoly { terms }
    }

    pub fn mul_mono(&self, m: &Mono) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(t, c)| (t.mul(m), c.clone()))
            .collect();
        MPoly { terms }
    }

    /// Divide every term by `m`; caller must ensure divisibility.
    pub fn div_mono(&self, m: &Mono) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(t, c)| (m.div(t), c.clone()))
            .collect();
        MPoly { terms }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = MPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            n >>= 1;
        }
        acc
    }

    /// Multivariate exact division; `None` if not a multiple.
    pub fn divexact(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&(q_one() / c)));
        }
        let (dm, dc) = d.leading().unwrap();
        let dm = dm.clone();
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        while !rem.is_zero() {
            let (rm, rc) = rem.leading().unwrap();
            if !dm.divides(rm) {
                return None;
            }
            let qm = dm.div(rm);
            let qc = rc / &dc;
            let t = MPoly::monomial(qm, qc);
            rem = rem - t.clone() * d.clone();
            quot += t;
        }
        Some(quot)
    }

    /// Integer content and primitive part: returns `(c, p)` with
    /// `self = c * p`, `p` having coprime integer coefficients and positive
    /// leading coefficient.
    pub fn int_normalize(&self) -> (Q, MPoly) {
        if self.is_zero() {
            return (q_zero(), MPoly::zero());
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut scale = Q::new(num_gcd, den_lcm);
        if self.leading().unwrap().1.is_negative() {
            scale = -scale;
        }
        let inv = q_one() / scale.clone();
        (scale, self.scale(&inv))
    }

    /// Primitive part only (see [`MPoly::int_normalize`]).
    pub fn primitive(&self) -> MPoly {
        self.int_normalize().1
    }

    /// Substitute 1 for variable `idx`.
    pub fn subst_one(&self, idx: usize) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut v: SmallVec<[u32; 4]> = SmallVec::new();
            for i in 0..m.nvars() {
                v.push(if i == idx { 0 } else { m.exp(i) });
            }
            out.insert_add(Mono::trim(v), c.clone());
        }
        out
    }

    /// View as univariate in `idx`: coefficients by ascending degree.
    fn univariate_view(&self, idx: usize) -> Vec<MPoly> {
        let deg = self.degree_in(idx) as usize;
        let mut coeffs = vec![MPoly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exp(idx) as usize;
            let mut v: SmallVec<[u32; 4]> = SmallVec::new();
            for i in 0..m.nvars() {
                v.push(if i == idx { 0 } else { m.exp(i) });
            }
            coeffs[e].insert_add(Mono::trim(v), c.clone());
        }
        coeffs
    }

    fn from_univariate(coeffs: Vec<MPoly>, idx: usize) -> MPoly {
        let mut out = MPoly::zero();
        for (e, p) in coeffs.into_iter().enumerate() {
            out += p * MPoly::var_pow(idx, e as u32);
        }
        out
    }

    /// Greatest common divisor, integer-primitive with positive leading
    /// coefficient (so `gcd(0, p) = primitive(p)` and `gcd` of coprime
    /// polynomials is `1`).
    pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
        if a.is_zero() {
            return b.primitive();
        }
        if b.is_zero() {
            return a.primitive();
        }
        // Pull out monomial content first; it is cheap and very common here
        // (powers of v).
        let ma = a.mono_content();
        let mb = b.mono_content();
        let mg = ma.gcd(&mb);
        let a1 = a.div_mono(&ma);
        let b1 = b.div_mono(&mb);
        let core = MPoly::gcd_content_free(&a1.primitive(), &b1.primitive());
        core.mul_mono(&mg)
    }

    /// gcd of monomial-content-free primitive inputs.
    fn gcd_content_free(a: &MPoly, b: &MPoly) -> MPoly {
        if a.is_one() || b.is_one() || a.is_constant() || b.is_constant() {
            return MPoly::one();
        }
        if a == b {
            return a.clone();
        }
        let var = match a.top_var().max(b.top_var()) {
            None => return MPoly::one(),
            Some(v) => v,
        };
        if a.is_univariate_in(VAR_V) && b.is_univariate_in(VAR_V) && var == VAR_V {
            return MPoly::gcd_univariate(a, b, VAR_V);
        }
        if a.degree_in(var) == 0 || b.degree_in(var) == 0 {
            // One input does not involve the top variable: the gcd divides the
            // content of the other with respect to that variable.
            let (with_var, without) = if a.degree_in(var) == 0 { (b, a) } else { (a, b) };
            let cont = with_var
                .univariate_view(var)
                .into_iter()
                .filter(|p| !p.is_zero())
                .fold(MPoly::zero(), |acc, p| MPoly::gcd(&acc, &p));
            return MPoly::gcd(&cont, without);
        }
        if a.is_univariate_in(var) && b.is_univariate_in(var) {
            return MPoly::gcd_univariate(a, b, var);
        }
        // Primitive PRS in `var` over the polynomial ring in the lower
        // variables.
        let content = |p: &MPoly| -> MPoly {
            p.univariate_view(var)
                .into_iter()
                .filter(|c| !c.is_zero())
                .fold(MPoly::zero(), |acc, c| MPoly::gcd(&acc, &c))
        };
        let ca = content(a);
        let cb = content(b);
        let cg = MPoly::gcd(&ca, &cb);
        let mut f = a.divexact(&ca).expect("content divides").primitive();
        let mut g = b.divexact(&cb).expect("content divides").primitive();
        if f.degree_in(var) < g.degree_in(var) {
            std::mem::swap(&mut f, &mut g);
        }
        loop {
            let r = MPoly::pseudo_rem(&f, &g, var);
            if r.is_zero() {
                let gp = g.primitive();
                return (gp * cg).primitive();
            }
            if r.degree_in(var) == 0 {
                return cg;
            }
            f = g;
            // strip the content of the remainder in the lower variables;
            // without this, factors from the pseudo-division leading
            // coefficients contaminate the result
            let rc = content(&r);
            g = r.divexact(&rc).expect("content divides").primitive();
            if f.degree_in(var) < g.degree_in(var) {
                std::mem::swap(&mut f, &mut g);
            }
        }
    }

    /// Pseudo-remainder of `f` by `g` in variable `var`.
    fn pseudo_rem(f: &MPoly, g: &MPoly, var: usize) -> MPoly {
        let mut fc = f.univariate_view(var);
        let gc = g.univariate_view(var);
        let dg = gc.len() - 1;
        let lg = gc[dg].clone();
        loop {
            while fc.last().map(|p| p.is_zero()).unwrap_or(false) {
                fc.pop();
            }
            if fc.is_empty() || fc.len() - 1 < dg {
                return MPoly::from_univariate(fc, var);
            }
            let df = fc.len() - 1;
            let lead = fc[df].clone();
            // multiply f by lc(g), then subtract lead * x^(df-dg) * g
            for p in fc.iter_mut() {
                *p = p.clone() * lg.clone();
            }
            for (i, gpart) in gc.iter().enumerate() {
                let idx = df - dg + i;
                let sub = lead.clone() * gpart.clone();
                fc[idx] = fc[idx].clone() - sub;
            }
        }
    }

    /// Monic Euclid for univariate inputs over Q, rescaled to a primitive
    /// integer polynomial.
    fn gcd_univariate(a: &MPoly, b: &MPoly, var: usize) -> MPoly {
        let to_dense = |p: &MPoly| -> Vec<Q> {
            let mut d = vec![q_zero(); p.degree_in(var) as usize + 1];
            for (m, c) in &p.terms {
                d[m.exp(var) as usize] = c.clone();
            }
            d
        };
        let mut f = to_dense(a);
        let mut g = to_dense(b);
        let trim = |v: &mut Vec<Q>| {
            while v.last().map(|c| c.is_zero()).unwrap_or(false) {
                v.pop();
            }
        };
        trim(&mut f);
        trim(&mut g);
        while !g.is_empty() {
            // f mod g
            let dg = g.len() - 1;
            let lg = g[dg].clone();
            while f.len() > dg {
                let df = f.len() - 1;
                let ratio = f[df].clone() / lg.clone();
                for i in 0..=dg {
                    let t = ratio.clone() * g[i].clone();
                    f[df - dg + i] -= t;
                }
                trim(&mut f);
                if f.is_empty() {
                    break;
                }
            }
            std::mem::swap(&mut f, &mut g);
        }
        let mut out = MPoly::zero();
        for (e, c) in f.into_iter().enumerate() {
            out.insert_add(Mono::var(var, e as u32), c);
        }
        out.primitive()
    }
}

impl AddAssign for MPoly {
    fn add_assign(&mut self, rhs: Self) {
        for (m, c) in rhs.terms {
            self.insert_add(m, c);
        }
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> Self {
        let terms = self.terms.into_iter().map(|(m, c)| (m, -c)).collect();
        MPoly { terms }
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: Self) -> Self {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.insert_add(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
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
            let mut parts: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_unit() {
                if abs.is_integer() {
                    parts.push(format!("{}", abs.numer()));
                } else {
                    parts.push(format!("{}/{}", abs.numer(), abs.denom()));
                }
            }
            for i in 0..m.nvars() {
                match m.exp(i) {
                    0 => {}
                    1 => parts.push(var_name(i)),
                    e => parts.push(format!("{}^{}", var_name(i), e)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::VAR_X;

    fn v() -> MPoly {
        MPoly::var(VAR_V)
    }

    fn x() -> MPoly {
        MPoly::var(VAR_X)
    }

    #[test]
    fn grlex_order() {
        // degree dominates
        assert!(Mono::var(VAR_V, 3) > Mono::var(VAR_X, 2));
        // on equal degree the higher-index variable is more significant
        assert!(Mono::var(VAR_X, 2) > Mono::var(VAR_V, 2));
    }

    #[test]
    fn gcd_univariate_common_factor() {
        // (v-1)(v+2) and (v-1)(v-3) share (v-1)
        let p = (v() - MPoly::one()) * (v() + MPoly::from_int(2));
        let q = (v() - MPoly::one()) * (v() - MPoly::from_int(3));
        assert_eq!(MPoly::gcd(&p, &q), v() - MPoly::one());
    }

    #[test]
    fn gcd_multivariate_common_factor() {
        // (X - v) is a common factor across two variables
        let f = (x() - v()) * (v() + MPoly::one());
        let g = (x() - v()) * (x() + MPoly::from_int(2));
        assert_eq!(MPoly::gcd(&f, &g), x() - v());
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let f = x() + MPoly::one();
        let g = v() + MPoly::one();
        assert_eq!(MPoly::gcd(&f, &g), MPoly::one());
    }

    #[test]
    fn gcd_handles_monomial_content() {
        // v^2 * X and v^3 share v^2
        let f = MPoly::var_pow(VAR_V, 2) * x();
        let g = MPoly::var_pow(VAR_V, 3);
        assert_eq!(MPoly::gcd(&f, &g), MPoly::var_pow(VAR_V, 2));
    }

    #[test]
    fn gcd_strips_prs_leading_coefficient_factors() {
        // (X+1)(vX-1) vs v(X+1)^2: the pseudo-remainder picks up a (v+1)
        // factor from the leading coefficients which must not survive
        let xp1 = x() + MPoly::one();
        let f = xp1.clone() * (v() * x() - MPoly::one());
        let g = v() * xp1.clone() * xp1.clone();
        assert_eq!(MPoly::gcd(&f, &g), xp1);
    }

    #[test]
    fn divexact_multivariate() {
        let f = (x() - v()) * (x() + v());
        let d = x() - v();
        assert_eq!(f.divexact(&d), Some(x() + v()));
        assert_eq!(f.divexact(&(x() + MPoly::one())), None);
    }

    #[test]
    fn int_normalize_sign() {
        let p = (v() * MPoly::constant(Q::new((-4).into(), 6.into()))).clone()
            + MPoly::constant(Q::new(2.into(), 6.into()));
        let (c, prim) = p.int_normalize();
        // leading coefficient of the primitive part must be positive
        assert!(prim.leading().unwrap().1.is_positive());
        assert_eq!(prim.scale(&c), p);
    }
}

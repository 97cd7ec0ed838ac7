//! Ore localization along a root vector `F_β`: formal divided tails
//! `u · F_β^{(−a)} F_β^{−1}`, the laws for commuting elements across
//! negative powers, and the rank-1 divided-power laws with `[K;c⌈t]`
//! factors.
//!
//! Fix a root vector `F_β` of weight `−β`, let `d = d_β`, `v_β = v^d`,
//! and for homogeneous `u` write `r = −⟨wt u, β^∨⟩`. The module of
//! tails is spanned by classes of `u · F_β^{(−a)} F_β^{−1}` where
//! `F_β^{(−a)} F_β^{−1} = [a]_β! · F_β^{−a−1}`; expressions that land
//! back inside the unlocalized algebra are zero in the quotient.
//!
//! The two plain commutation laws, with `ad`/`ãd` the adjoint actions
//! from [`crate::qcomm`]:
//!
//! ```text
//! u · F_β^{−a}  =  Σ_{i≥0} v_β^{−ar−(a+1)i} [a+i−1 ⌈ i]_β · F_β^{−a−i} · ad(F_β)^i(u)
//! F_β^{−a} · u  =  Σ_{i≥0} v_β^{−ar−(a+1)i} [a+i−1 ⌈ i]_β · ãd(F_β)^i(u) · F_β^{−a−i}
//! ```
//!
//! and their divided-tail forms (Gaussian binomial absorbed, so the
//! emitted coefficients stay integral):
//!
//! ```text
//! u · F_β^{(−a)}F_β^{−1}  =  Σ_i v_β^{−(a+1)r−(a+2)i} · F_β^{(−a−i)}F_β^{−1} · ad(F_β^{(i)})(u)
//! F_β^{(−a)}F_β^{−1} · u  =  Σ_i v_β^{−(a+1)r−(a+2)i} · ãd(F_β^{(i)})(u) · F_β^{(−a−i)}F_β^{−1}
//! ```
//!
//! No localized arithmetic is ever trusted blindly: every law has a
//! *clearing* form obtained by multiplying back with positive powers of
//! `F_β`, which is an identity inside the ordinary algebra and is
//! checked exactly there. The sums are finite precisely when the
//! relevant adjoint action is nilpotent on `u`; non-nilpotent inputs
//! are rejected with a diagnostic listing the first nonzero levels.

use std::collections::BTreeMap;

use crate::cartan::{neg_vec, RootVec};
use crate::coeff::{k_bracket, q_binom_scalar, q_factorial, q_int, LaurentPoly, Scalar};
use crate::engine::{Elem, Engine};
use crate::error::{EngineError, Result};
use crate::qcomm::{ad, tilde_ad};

/// Default cap on adjoint-nilpotency searches.
const DEFAULT_MAX_LEVELS: u32 = 24;

/// Which side of the tail an element approaches from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `u · F_β^{(−a)}F_β^{−1}`: `u` starts on the left, carried images
    /// end on the right of the deeper tails.
    Left,
    /// `F_β^{(−a)}F_β^{−1} · u`: `u` starts on the right, carried images
    /// end on the left of the deeper tails.
    Right,
}

/// Localization context along one fixed root vector.
pub struct TailContext<'a> {
    engine: &'a Engine,
    f_beta: Elem,
    beta: RootVec,
    d: i64,
    max_levels: u32,
}

impl<'a> TailContext<'a> {
    /// Context along an arbitrary root vector (possibly a braid-built
    /// composite one). The element must be a pure `F`-part element.
    pub fn new(engine: &'a Engine, f_beta: Elem) -> Result<TailContext<'a>> {
        if !f_beta.is_negative_part() {
            return Err(EngineError::falsified(
                "tail context requires a pure F-part root vector",
            ));
        }
        let beta = neg_vec(&f_beta.weight(engine.rank())?);
        let d = engine.datum().root_d(&beta);
        Ok(TailContext {
            engine,
            f_beta,
            beta,
            d,
            max_levels: DEFAULT_MAX_LEVELS,
        })
    }

    /// Context along the simple root vector `F_{α_i}`.
    pub fn for_simple(engine: &'a Engine, i: usize) -> Result<TailContext<'a>> {
        TailContext::new(engine, engine.f(i))
    }

    pub fn with_max_levels(mut self, cap: u32) -> TailContext<'a> {
        self.max_levels = cap;
        self
    }

    pub fn engine(&self) -> &Engine {
        self.engine
    }

    pub fn f_beta(&self) -> &Elem {
        &self.f_beta
    }

    pub fn beta(&self) -> &RootVec {
        &self.beta
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// `r = −⟨wt u, β^∨⟩` for homogeneous `u`.
    pub fn r_of(&self, u: &Elem) -> Result<i64> {
        let w = u.weight(self.engine.rank())?;
        let pairing = self.engine.datum().bilin(&self.beta, &w);
        Ok(-pairing / self.d)
    }

    /// `v_β^e = v^{d e}` as a scalar.
    pub fn v_beta(&self, e: i64) -> Scalar {
        Scalar::v_pow(self.d * e)
    }

    /// `[n]_β!` as a scalar.
    pub fn q_fact(&self, n: u32) -> Scalar {
        Scalar::from_laurent(&q_factorial(n, self.d as u32))
    }

    /// `F_β^n`.
    pub fn f_pow(&self, n: u32) -> Result<Elem> {
        self.engine.pow(&self.f_beta, n)
    }

    /// Iterated adjoint images `[u, ad(F_β)(u), …]` up to (but not
    /// including) the first zero. Errors when `u` is not nilpotent
    /// within the level cap.
    fn adjoint_levels(&self, u: &Elem, tilde: bool) -> Result<Vec<Elem>> {
        let mut levels: Vec<Elem> = Vec::new();
        let mut cur = u.clone();
        while !cur.is_zero() {
            if levels.len() as u32 >= self.max_levels {
                let described = levels
                    .iter()
                    .take(5)
                    .enumerate()
                    .map(|(i, x)| format!("i={}: {} terms", i, x.num_terms()))
                    .collect();
                return Err(EngineError::NotNilpotent {
                    beta: self.beta.clone(),
                    cap: self.max_levels,
                    levels: described,
                });
            }
            levels.push(cur.clone());
            cur = if tilde {
                tilde_ad(self.engine, &self.f_beta, &cur)?
            } else {
                ad(self.engine, &self.f_beta, &cur)?
            };
        }
        Ok(levels)
    }
}

// ---------------------------------------------------------------------------
// Emission primitives
// ---------------------------------------------------------------------------

/// `u · F_β^{−a} = Σ_i c_i F_β^{−(a+i)} w_i` with
/// `c_i w_i = v_β^{−ar−(a+1)i} [a+i−1 ⌈ i]_β · ad(F_β)^i(u)`.
///
/// Returns the pairs `(a+i, c_i w_i)`; the carried elements sit on the
/// **right** of the negative powers.
pub fn emit_right_plain(ctx: &TailContext<'_>, u: &Elem, a: u32) -> Result<Vec<(u32, Elem)>> {
    if a == 0 {
        // `F_β^0 = 1`: nothing to pass.
        return Ok(if u.is_zero() { vec![] } else { vec![(0, u.clone())] });
    }
    let r = ctx.r_of(u)?;
    let levels = ctx.adjoint_levels(u, false)?;
    let mut out = Vec::new();
    for (i, w) in levels.iter().enumerate() {
        let ii = i as i64;
        let c = ctx.v_beta(-(a as i64) * r - (a as i64 + 1) * ii)
            * q_binom_scalar(a as i64 + ii - 1, i as u32, ctx.d as u32);
        let t = w.scale(&c);
        if !t.is_zero() {
            out.push((a + i as u32, t));
        }
    }
    Ok(out)
}

/// `F_β^{−a} · u = Σ_i c_i w̃_i F_β^{−(a+i)}` with the same scalars as
/// [`emit_right_plain`] but `w̃_i = ãd(F_β)^i(u)`; the carried elements
/// sit on the **left** of the negative powers.
pub fn emit_left_plain(ctx: &TailContext<'_>, u: &Elem, a: u32) -> Result<Vec<(u32, Elem)>> {
    if a == 0 {
        return Ok(if u.is_zero() { vec![] } else { vec![(0, u.clone())] });
    }
    let r = ctx.r_of(u)?;
    let levels = ctx.adjoint_levels(u, true)?;
    let mut out = Vec::new();
    for (i, w) in levels.iter().enumerate() {
        let ii = i as i64;
        let c = ctx.v_beta(-(a as i64) * r - (a as i64 + 1) * ii)
            * q_binom_scalar(a as i64 + ii - 1, i as u32, ctx.d as u32);
        let t = w.scale(&c);
        if !t.is_zero() {
            out.push((a + i as u32, t));
        }
    }
    Ok(out)
}

/// `u · F_β^{(−a)}F_β^{−1} = Σ_i F_β^{(−a−i)}F_β^{−1} · w_i` with
/// `w_i = v_β^{−(a+1)r−(a+2)i} ad(F_β^{(i)})(u)`.
///
/// Returns the pairs `(a+i, w_i)`; carried elements on the **right**.
pub fn emit_right_divided(ctx: &TailContext<'_>, u: &Elem, a: u32) -> Result<Vec<(u32, Elem)>> {
    let r = ctx.r_of(u)?;
    let levels = ctx.adjoint_levels(u, false)?;
    let mut out = Vec::new();
    for (i, w) in levels.iter().enumerate() {
        let ii = i as i64;
        let c = ctx.v_beta(-(a as i64 + 1) * r - (a as i64 + 2) * ii) * ctx.q_fact(i as u32).inv();
        let t = w.scale(&c);
        if !t.is_zero() {
            out.push((a + i as u32, t));
        }
    }
    Ok(out)
}

/// `F_β^{(−a)}F_β^{−1} · u = Σ_i w̃_i · F_β^{(−a−i)}F_β^{−1}` with
/// `w̃_i = v_β^{−(a+1)r−(a+2)i} ãd(F_β^{(i)})(u)`.
///
/// Returns the pairs `(a+i, w̃_i)`; carried elements on the **left**.
pub fn emit_left_divided(ctx: &TailContext<'_>, u: &Elem, a: u32) -> Result<Vec<(u32, Elem)>> {
    let r = ctx.r_of(u)?;
    let levels = ctx.adjoint_levels(u, true)?;
    let mut out = Vec::new();
    for (i, w) in levels.iter().enumerate() {
        let ii = i as i64;
        let c = ctx.v_beta(-(a as i64 + 1) * r - (a as i64 + 2) * ii) * ctx.q_fact(i as u32).inv();
        let t = w.scale(&c);
        if !t.is_zero() {
            out.push((a + i as u32, t));
        }
    }
    Ok(out)
}

/// Pass a homogeneous element through the bare divided tail
/// `F_β^{(−a)}F_β^{−1}`.
///
/// * `Side::Left`: the class of `u · F_β^{(−a)}F_β^{−1}` as
///   `Σ F_β^{(−depth)}F_β^{−1} · w` (carried elements right).
/// * `Side::Right`: the class of `F_β^{(−a)}F_β^{−1} · u` as
///   `Σ w̃ · F_β^{(−depth)}F_β^{−1}` (carried elements left).
pub fn commute_into_tail(
    ctx: &TailContext<'_>,
    u: &Elem,
    a: u32,
    side: Side,
) -> Result<Vec<(u32, Elem)>> {
    match side {
        Side::Left => emit_right_divided(ctx, u, a),
        Side::Right => emit_left_divided(ctx, u, a),
    }
}

// ---------------------------------------------------------------------------
// Clearing self-checks: each law, multiplied back into the plain algebra
// ---------------------------------------------------------------------------

/// Verify `u·F_β^{−a} = Σ (depth, w)` by the clearing identity
/// `F_β^M u = Σ F_β^{M−depth} · w · F_β^a` with `M` the maximal depth.
/// Returns the verified emission.
pub fn check_right_plain(ctx: &TailContext<'_>, u: &Elem, a: u32) -> Result<Vec<(u32, Elem)>> {
    let em = emit_right_plain(ctx, u, a)?;
    let m = em.iter().map(|p| p.0).max().unwrap_or(a);
    let lhs = ctx.engine.mul(&ctx.f_pow(m)?, u)?;
    let fa = ctx.f_pow(a)?;
    let mut rhs = Elem::zero();
    for (depth, w) in &em {
        let t = ctx.engine.mul_many(&[ctx.f_pow(m - depth)?, w.clone(), fa.clone()])?;
        rhs = rhs + t;
    }
    if lhs != rhs {
        return Err(EngineError::falsified(format!(
            "right plain Ore law failed clearing along beta={:?} at a={a}",
            ctx.beta
        )));
    }
    Ok(em)
}

/// Verify `F_β^{−a}·u = Σ (depth, w̃)` by the clearing identity
/// `u F_β^M = Σ F_β^a · w̃ · F_β^{M−depth}`.
pub fn check_left_plain(ctx: &TailContext<'_>, u: &Elem, a: u32) -> Result<Vec<(u32, Elem)>> {
    let em = emit_left_plain(ctx, u, a)?;
    let m = em.iter().map(|p| p.0).max().unwrap_or(a);
    let lhs = ctx.engine.mul(u, &ctx.f_pow(m)?)?;
    let fa = ctx.f_pow(a)?;
    let mut rhs = Elem::zero();
    for (depth, w) in &em {
        let t = ctx.engine.mul_many(&[fa.clone(), w.clone(), ctx.f_pow(m - depth)?])?;
        rhs = rhs + t;
    }
    if lhs != rhs {
        return Err(EngineError::falsified(format!(
            "left plain Ore law failed clearing along beta={:?} at a={a}",
            ctx.beta
        )));
    }
    Ok(em)
}

/// Verify `u·F_β^{(−a)}F_β^{−1} = Σ (depth, w)` by the clearing identity
/// `[a]_β! F_β^M u = Σ [depth]_β! F_β^{M−depth−1} · w · F_β^{a+1}`.
pub fn check_right_divided(ctx: &TailContext<'_>, u: &Elem, a: u32) -> Result<Vec<(u32, Elem)>> {
    let em = emit_right_divided(ctx, u, a)?;
    let m = em.iter().map(|p| p.0).max().unwrap_or(a) + 1;
    let lhs = ctx.engine.mul(&ctx.f_pow(m)?, u)?.scale(&ctx.q_fact(a));
    let fa1 = ctx.f_pow(a + 1)?;
    let mut rhs = Elem::zero();
    for (depth, w) in &em {
        let t = ctx
            .engine
            .mul_many(&[ctx.f_pow(m - depth - 1)?, w.clone(), fa1.clone()])?
            .scale(&ctx.q_fact(*depth));
        rhs = rhs + t;
    }
    if lhs != rhs {
        return Err(EngineError::falsified(format!(
            "right divided Ore law failed clearing along beta={:?} at a={a}",
            ctx.beta
        )));
    }
    Ok(em)
}

/// Verify `F_β^{(−a)}F_β^{−1}·u = Σ (depth, w̃)` by the clearing identity
/// `[a]_β! u F_β^M = Σ [depth]_β! F_β^{a+1} · w̃ · F_β^{M−depth−1}`.
pub fn check_left_divided(ctx: &TailContext<'_>, u: &Elem, a: u32) -> Result<Vec<(u32, Elem)>> {
    let em = emit_left_divided(ctx, u, a)?;
    let m = em.iter().map(|p| p.0).max().unwrap_or(a) + 1;
    let lhs = ctx.engine.mul(u, &ctx.f_pow(m)?)?.scale(&ctx.q_fact(a));
    let fa1 = ctx.f_pow(a + 1)?;
    let mut rhs = Elem::zero();
    for (depth, w) in &em {
        let t = ctx
            .engine
            .mul_many(&[fa1.clone(), w.clone(), ctx.f_pow(m - depth - 1)?])?
            .scale(&ctx.q_fact(*depth));
        rhs = rhs + t;
    }
    if lhs != rhs {
        return Err(EngineError::falsified(format!(
            "left divided Ore law failed clearing along beta={:?} at a={a}",
            ctx.beta
        )));
    }
    Ok(em)
}

// ---------------------------------------------------------------------------
// Tails and tail sums
// ---------------------------------------------------------------------------

/// The class of `prefix · F_β^{(−a)} F_β^{−1}`.
///
/// Equality is decided by clearing (right-multiplying by a positive
/// power of `F_β`), i.e. equality in the localization; no syntactic
/// canonical form for the prefix is imposed.
#[derive(Clone, Debug)]
pub struct LocalizedTail {
    pub prefix: Elem,
    pub a: u32,
}

impl LocalizedTail {
    pub fn new(prefix: Elem, a: u32) -> LocalizedTail {
        LocalizedTail { prefix, a }
    }

    /// The bare tail `F_β^{(−a)}F_β^{−1}`.
    pub fn bare(ctx: &TailContext<'_>, a: u32) -> LocalizedTail {
        LocalizedTail {
            prefix: ctx.engine.one(),
            a,
        }
    }

    /// Right-multiply by `F_β^{m+1}` (requires `m ≥ a`):
    /// `prefix·F_β^{(−a)}F_β^{−1}·F_β^{m+1} = [a]_β!·prefix·F_β^{m−a}`.
    pub fn cleared(&self, ctx: &TailContext<'_>, m: u32) -> Result<Elem> {
        if m < self.a {
            return Err(EngineError::falsified(format!(
                "clearing exponent {m} is below tail depth {}",
                self.a
            )));
        }
        let t = ctx.engine.mul(&self.prefix, &ctx.f_pow(m - self.a)?)?;
        Ok(t.scale(&ctx.q_fact(self.a)))
    }

    pub fn eq_tail(&self, ctx: &TailContext<'_>, other: &LocalizedTail) -> Result<bool> {
        let m = self.a.max(other.a);
        Ok(self.cleared(ctx, m)? == other.cleared(ctx, m)?)
    }
}

/// A finite sum `Σ_a p_a · F_β^{(−a)}F_β^{−1}` over one fixed `β`.
#[derive(Clone, Debug, Default)]
pub struct TailSum {
    terms: BTreeMap<u32, Elem>,
}

impl TailSum {
    pub fn zero() -> TailSum {
        TailSum::default()
    }

    pub fn from_tail(t: &LocalizedTail) -> TailSum {
        let mut s = TailSum::zero();
        s.add(t.a, t.prefix.clone());
        s
    }

    pub fn add(&mut self, a: u32, prefix: Elem) {
        if prefix.is_zero() {
            return;
        }
        let entry = self.terms.entry(a).or_insert_with(Elem::zero);
        *entry = entry.clone() + prefix;
        if entry.is_zero() {
            self.terms.remove(&a);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &Elem)> {
        self.terms.iter()
    }

    pub fn max_depth(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, c: &Scalar) -> TailSum {
        let mut s = TailSum::zero();
        for (a, p) in &self.terms {
            s.add(*a, p.scale(c));
        }
        s
    }

    /// Right-multiply by `F_β^{m+1}`: `Σ_a [a]_β! · p_a · F_β^{m−a}`.
    pub fn cleared(&self, ctx: &TailContext<'_>, m: u32) -> Result<Elem> {
        let mut acc = Elem::zero();
        for (a, p) in &self.terms {
            acc = acc + LocalizedTail::new(p.clone(), *a).cleared(ctx, m)?;
        }
        Ok(acc)
    }

    pub fn eq_by_clearing(&self, ctx: &TailContext<'_>, other: &TailSum) -> Result<bool> {
        let m = self
            .max_depth()
            .unwrap_or(0)
            .max(other.max_depth().unwrap_or(0));
        Ok(self.cleared(ctx, m)? == other.cleared(ctx, m)?)
    }

    /// Left action `u · Σ_a p_a·(tail)`: plain prefix concatenation.
    pub fn mul_left(&self, ctx: &TailContext<'_>, u: &Elem) -> Result<TailSum> {
        let mut s = TailSum::zero();
        for (a, p) in &self.terms {
            s.add(*a, ctx.engine.mul(u, p)?);
        }
        Ok(s)
    }

    /// Right action `(Σ_a p_a·(tail)) · u`: each tail passes `u`
    /// leftward by the divided mirror law, the images landing inside
    /// the prefixes. Requires `u` homogeneous and `ãd`-nilpotent.
    pub fn mul_right(&self, ctx: &TailContext<'_>, u: &Elem) -> Result<TailSum> {
        let mut s = TailSum::zero();
        for (a, p) in &self.terms {
            for (depth, w) in emit_left_divided(ctx, u, *a)? {
                s.add(depth, ctx.engine.mul(p, &w)?);
            }
        }
        Ok(s)
    }

    /// Interpret each prefix as carrying a right factor `F_β^n` and
    /// absorb it into the tail:
    /// `p·F_β^n·F_β^{(−a)}F_β^{−1} = ([a]_β!/[a−n]_β!)·p·F_β^{(−(a−n))}F_β^{−1}`
    /// for `n ≤ a`, and zero in the quotient for `n > a` (the product
    /// lands back inside the plain algebra).
    pub fn absorb_right_f(&self, ctx: &TailContext<'_>, n: u32) -> Result<TailSum> {
        let mut s = TailSum::zero();
        for (a, p) in &self.terms {
            if n > *a {
                continue;
            }
            let c = ctx.q_fact(*a) * ctx.q_fact(a - n).inv();
            s.add(a - n, p.scale(&c));
        }
        Ok(s)
    }
}

// ---------------------------------------------------------------------------
// The rank-1 divided-power laws with [K;c⌈t] factors
// ---------------------------------------------------------------------------

/// `[K_μ; c ⌈ t] = ∏_{n=1}^{t} (K_μ v_μ^{c−n+1} − K_μ^{−1} v_μ^{−c+n−1}) / (v_μ^n − v_μ^{−n})`
/// as an element of the Cartan part, with `v_μ = v^{d_μ}`.
pub fn k_bracket_elem(engine: &Engine, mu: &[i32], c: i64, t: u32) -> Result<Elem> {
    let d = engine.datum().root_d(mu);
    let k = engine.k(mu);
    let ki = engine.k(&neg_vec(mu));
    let mut acc = engine.one();
    for n in 1..=t as i64 {
        let num = k.scale(&Scalar::v_pow(d * (c - n + 1))) - ki.scale(&Scalar::v_pow(-d * (c - n + 1)));
        let den = Scalar::from_laurent(&(LaurentPoly::v_pow(d * n) - LaurentPoly::v_pow(-d * n)));
        acc = engine.mul(&acc, &num.scale(&den.inv()))?;
    }
    Ok(acc)
}

/// Rank-1 ground identity
/// `E F^{s+1} = F^{s+1} E + [s+1] F^{s} [K;−s⌈1]`, checked exactly.
pub fn sl2_ground_identity(engine: &Engine, s: u32) -> Result<()> {
    let e = engine.e(0);
    let f = engine.f(0);
    let fs1 = engine.pow(&f, s + 1)?;
    let fs = engine.pow(&f, s)?;
    let kb = k_bracket_elem(engine, &[1], -(s as i64), 1)?;
    let lhs = engine.mul(&e, &fs1)?;
    let rhs = engine.mul(&fs1, &e)?
        + engine
            .mul(&fs, &kb)?
            .scale(&Scalar::from_laurent(&q_int(s as i64 + 1, 1)));
    if lhs != rhs {
        return Err(EngineError::falsified(format!(
            "rank-1 ground identity failed at s={s}"
        )));
    }
    Ok(())
}

/// Cleared form of the negative-power commutation
/// `E F^{−m} = F^{−m} E + [−m] F^{−m−1} [K;1+m⌈1]`, namely
/// `F^{m+1} E = F E F^{m} + [−m] F^{m} [K;1−m⌈1]`, checked exactly.
pub fn sl2_negative_power_law(engine: &Engine, m: u32) -> Result<()> {
    let e = engine.e(0);
    let f = engine.f(0);
    let lhs = engine.mul(&engine.pow(&f, m + 1)?, &e)?;
    let kb = k_bracket_elem(engine, &[1], 1 - m as i64, 1)?;
    let rhs = engine.mul_many(&[f.clone(), e, engine.pow(&f, m)?])?
        + engine
            .mul(&engine.pow(&f, m)?, &kb)?
            .scale(&Scalar::from_laurent(&q_int(-(m as i64), 1)));
    if lhs != rhs {
        return Err(EngineError::falsified(format!(
            "rank-1 negative-power law failed clearing at m={m}"
        )));
    }
    Ok(())
}

/// The two rank-1 divided-power laws for moving `E^{(r)}` across a tail:
///
/// ```text
/// F^{(−s)}F^{−1} E^{(r)} = Σ_{t=0}^r E^{(r−t)} [K;r−s−t−2⌈t] F^{(−s−t)}F^{−1}
/// E^{(r)} F^{(−s)}F^{−1} = Σ_{t=0}^r (−1)^t F^{(−s−t)}F^{−1} [K;s+2t−r+1⌈t] E^{(r−t)}
/// ```
///
/// The second is the image of the first under the transpose
/// anti-automorphism `E↦E, F↦F, K↦K^{−1}`, which sends `[K;c⌈t]` to
/// `(−1)^t [K;t−1−c⌈t]`; its signs and bracket arguments are pinned at
/// `r=1` by the induction start
/// `E·F^{(−s)}F^{−1} = F^{(−s)}F^{−1}E − F^{(−s−1)}F^{−1}[K;s+2⌈1]`.
///
/// Both are verified two independent ways: (1) the cleared identities
/// inside the plain algebra, and (2) as operator identities on the
/// localized weight module with symbolic highest weight κ.
pub fn sl2_e_past_tail(engine: &Engine, r: u32, s: u32) -> Result<()> {
    let f = engine.f(0);
    let d1 = |n: i64| Scalar::from_laurent(&q_int(n, 1));
    let fact = |n: u32| Scalar::from_laurent(&q_factorial(n, 1));

    // (1a) Law A cleared:
    // [s]! E^{(r)} F^{s+r+1} == Σ_t [s+t]! F^{s+1} E^{(r−t)} [K;r−s−t−2⌈t] F^{r−t}
    let lhs_a = engine
        .mul(&engine.e_divided(0, r), &engine.pow(&f, s + r + 1)?)?
        .scale(&fact(s));
    let mut rhs_a = Elem::zero();
    for t in 0..=r {
        let c = r as i64 - s as i64 - t as i64 - 2;
        let term = engine
            .mul_many(&[
                engine.pow(&f, s + 1)?,
                engine.e_divided(0, r - t),
                k_bracket_elem(engine, &[1], c, t)?,
                engine.pow(&f, r - t)?,
            ])?
            .scale(&fact(s + t));
        rhs_a = rhs_a + term;
    }
    if lhs_a != rhs_a {
        return Err(EngineError::falsified(format!(
            "rank-1 tail law (E on the right) failed clearing at r={r}, s={s}"
        )));
    }

    // (1b) Mirror law cleared:
    // [s]! F^{s+r+1} E^{(r)} == Σ_t (−1)^t [s+t]! F^{r−t} [K;s+2t−r+1⌈t] E^{(r−t)} F^{s+1}
    let lhs_b = engine
        .mul(&engine.pow(&f, s + r + 1)?, &engine.e_divided(0, r))?
        .scale(&fact(s));
    let mut rhs_b = Elem::zero();
    for t in 0..=r {
        let c = s as i64 + 2 * t as i64 - r as i64 + 1;
        let sign = if t % 2 == 0 { 1 } else { -1 };
        let term = engine
            .mul_many(&[
                engine.pow(&f, r - t)?,
                k_bracket_elem(engine, &[1], c, t)?,
                engine.e_divided(0, r - t),
                engine.pow(&f, s + 1)?,
            ])?
            .scale(&(fact(s + t) * Scalar::from_int(sign)));
        rhs_b = rhs_b + term;
    }
    if lhs_b != rhs_b {
        return Err(EngineError::falsified(format!(
            "rank-1 tail law (E on the left) failed clearing at r={r}, s={s}"
        )));
    }

    // (2) Operator route on the localized weight module, symbolic κ.
    let module = LocalizedVerma::symbolic();
    for j in -3..=(r as i64 + s as i64 + 3) {
        // Law A on b_j: both sides land on b_{j−r−s−1}.
        let lhs = module.e_divided_times(r, j) * fact(s);
        let mut rhs = Scalar::zero();
        for t in 0..=r {
            let c = r as i64 - s as i64 - t as i64 - 2;
            let mid = j - (s as i64 + t as i64 + 1);
            rhs += fact(s + t)
                * module.k_bracket_times(c, t, mid)
                * module.e_divided_times(r - t, mid);
        }
        if lhs != rhs {
            return Err(EngineError::falsified(format!(
                "rank-1 tail law (E right) failed on chain at r={r}, s={s}, j={j}"
            )));
        }
        // Mirror law on b_j: both sides land on b_{j−r−s−1}.
        let lhs = fact(s) * module.e_divided_times(r, j - s as i64 - 1);
        let mut rhs = Scalar::zero();
        for t in 0..=r {
            let c = s as i64 + 2 * t as i64 - r as i64 + 1;
            let sign = if t % 2 == 0 { 1 } else { -1 };
            rhs += fact(s + t)
                * Scalar::from_int(sign)
                * module.e_divided_times(r - t, j)
                * module.k_bracket_times(c, t, j - (r - t) as i64);
        }
        if lhs != rhs {
            return Err(EngineError::falsified(format!(
                "rank-1 tail law (E left) failed on chain at r={r}, s={s}, j={j}"
            )));
        }
    }
    let _ = d1; // retained for symmetry with the scalar forms above
    Ok(())
}

// ---------------------------------------------------------------------------
// The localized rank-1 weight module with symbolic highest weight
// ---------------------------------------------------------------------------

/// The rank-1 weight module with basis `b_j = F^j v_κ` for **all**
/// `j ∈ Z`, where `K v_κ = κ v_κ` and `E v_κ = 0`:
///
/// * `F b_j = b_{j+1}`,
/// * `K b_j = v^{−2j} κ b_j`,
/// * `E b_j = [j] [K;1−j⌈1](κ) · b_{j−1}`.
///
/// For `j ≥ 0` the `E`-action is the Verma relation
/// `E F^j = F^j E + [j] F^{j−1} [K;1−j⌈1]`; extending the same formula
/// to negative `j` is exactly the localized action, certified by
/// [`sl2_negative_power_law`]. κ is kept symbolic (a free parameter),
/// so every identity checked here holds for all weights at once.
pub struct LocalizedVerma {
    kappa: Scalar,
}

impl LocalizedVerma {
    pub fn new(kappa: Scalar) -> LocalizedVerma {
        LocalizedVerma { kappa }
    }

    /// κ as the free parameter `z_1`.
    pub fn symbolic() -> LocalizedVerma {
        LocalizedVerma {
            kappa: Scalar::z_pow(1, 1),
        }
    }

    pub fn kappa(&self) -> &Scalar {
        &self.kappa
    }

    /// `K`-eigenvalue of `b_j`.
    pub fn k_eigen(&self, j: i64) -> Scalar {
        Scalar::v_pow(-2 * j) * self.kappa.clone()
    }

    /// Coefficient of `b_{j−1}` in `E b_j`.
    pub fn e_times(&self, j: i64) -> Scalar {
        Scalar::from_laurent(&q_int(j, 1)) * k_bracket(&self.kappa, 1 - j, 1, 1)
    }

    /// Coefficient of `b_{j−r}` in `E^{(r)} b_j`.
    pub fn e_divided_times(&self, r: u32, j: i64) -> Scalar {
        let mut c = Scalar::from_laurent(&q_factorial(r, 1)).inv();
        for i in 0..r as i64 {
            c *= self.e_times(j - i);
        }
        c
    }

    /// Scalar by which `[K;c⌈t]` acts on `b_j`.
    pub fn k_bracket_times(&self, c: i64, t: u32, j: i64) -> Scalar {
        k_bracket(&self.k_eigen(j), c, t, 1)
    }

    /// Scalar by which the tail `F^{(−s)}F^{−1}` acts (sending `b_j`
    /// to `b_{j−s−1}`).
    pub fn tail_times(&self, s: u32) -> Scalar {
        Scalar::from_laurent(&q_factorial(s, 1))
    }

    /// Exact relation checks on the window `|j| ≤ w`: the commutator
    /// `EF − FE = [K;0⌈1]` and the `K`-conjugations.
    pub fn relations_check(&self, w: i64) -> Result<()> {
        for j in -w..=w {
            // (EF − FE) b_j = [K;0⌈1](k_eigen(j)) b_j.
            let lhs = self.e_times(j + 1) - self.e_times(j);
            let rhs = self.k_bracket_times(0, 1, j);
            if lhs != rhs {
                return Err(EngineError::falsified(format!(
                    "localized rank-1 module: EF−FE failed at j={j}"
                )));
            }
            // K E b_j = v^2 E K b_j.
            let lhs = self.k_eigen(j - 1) * self.e_times(j);
            let rhs = Scalar::v_pow(2) * self.e_times(j) * self.k_eigen(j);
            if lhs != rhs {
                return Err(EngineError::falsified(format!(
                    "localized rank-1 module: KE=v^2EK failed at j={j}"
                )));
            }
            // K F b_j = v^{−2} F K b_j.
            let lhs = self.k_eigen(j + 1);
            let rhs = Scalar::v_pow(-2) * self.k_eigen(j);
            if lhs != rhs {
                return Err(EngineError::falsified(format!(
                    "localized rank-1 module: KF=v^{{-2}}FK failed at j={j}"
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::pbw::PbwContext;
    use crate::braid::RootVectors;
    use crate::cartan::{ConvexOrder, WeylWord};

    fn a2_engine() -> Engine {
        Engine::for_type("A2", 14).unwrap()
    }

    fn b2_engine() -> Engine {
        Engine::for_type("B2", 16).unwrap()
    }

    /// Root vectors for the standard orders used in tests.
    fn root_vectors(engine: &Engine, word: Vec<usize>) -> (ConvexOrder, Vec<Elem>) {
        let order = ConvexOrder::new(engine.datum(), WeylWord::from_indices(word)).unwrap();
        let rv = RootVectors::new(engine, &order).unwrap();
        let elems = (0..rv.len()).map(|j| rv.f_vec(j).clone()).collect();
        (order, elems)
    }

    #[test]
    fn plain_laws_clear_a2() {
        let en = a2_engine();
        let (_, rv) = root_vectors(&en, vec![0, 1, 0]);
        let f_mid = rv[1].clone();

        // Right emission along F_{α_2}: ad(F_{α_2})-nilpotent pool.
        let ctx = TailContext::for_simple(&en, 1).unwrap();
        let pool = vec![
            en.f(0),
            en.pow(&en.f(0), 2).unwrap(),
            f_mid.clone(),
            en.mul(&en.f(0), &f_mid).unwrap(),
        ];
        for u in &pool {
            for a in 1..=2 {
                check_right_plain(&ctx, u, a).unwrap();
                check_right_divided(&ctx, u, a).unwrap();
            }
            check_right_divided(&ctx, u, 0).unwrap();
        }

        // Left emission along F_{α_1}: ãd(F_{α_1})-nilpotent pool.
        let ctx = TailContext::for_simple(&en, 0).unwrap();
        let pool = vec![
            en.f(1),
            en.pow(&en.f(1), 2).unwrap(),
            f_mid.clone(),
            en.mul(&f_mid, &en.f(1)).unwrap(),
        ];
        for u in &pool {
            for a in 1..=2 {
                check_left_plain(&ctx, u, a).unwrap();
                check_left_divided(&ctx, u, a).unwrap();
            }
            check_left_divided(&ctx, u, 0).unwrap();
        }
    }

    #[test]
    fn plain_laws_clear_b2() {
        let en = b2_engine();
        let (_, rv) = root_vectors(&en, vec![0, 1, 0, 1]);

        // Right emission along F_{α_2} = F_{β_3}: every lower root vector
        // is ad-nilpotent.
        let ctx = TailContext::for_simple(&en, 1).unwrap();
        for u in [&rv[0], &rv[1], &rv[2]] {
            for a in 1..=2 {
                check_right_plain(&ctx, u, a).unwrap();
                check_right_divided(&ctx, u, a).unwrap();
            }
        }

        // Left emission along F_{α_1} = F_{β_0}: every higher root vector
        // is ãd-nilpotent.
        let ctx = TailContext::for_simple(&en, 0).unwrap();
        for u in [&rv[1], &rv[2], &rv[3]] {
            for a in 1..=2 {
                check_left_plain(&ctx, u, a).unwrap();
                check_left_divided(&ctx, u, a).unwrap();
            }
        }
    }

    #[test]
    fn a2_frozen_expansion() {
        // F_{α_1}·F_{α_2}^{−1} = v^{+1} F_{α_2}^{−1} F_{α_1}
        //                       + v^{−1} F_{α_2}^{−2} (F_2F_1 − v F_1F_2).
        // The exponents are pinned by the clearing identity
        // F_2^M F_1 = Σ_i c_i F_2^{M−1−i}(w_i F_2), which reduces to the
        // quantum Serre relation F_2²F_1 − [2]F_2F_1F_2 + F_1F_2² = 0.
        let en = a2_engine();
        let ctx = TailContext::for_simple(&en, 1).unwrap();
        let u = en.f(0);
        let em = check_right_plain(&ctx, &u, 1).unwrap();
        assert_eq!(em.len(), 2);

        let (d0, w0) = &em[0];
        assert_eq!(*d0, 1);
        assert_eq!(*w0, u.scale(&Scalar::v_pow(1)));

        let (d1, w1) = &em[1];
        assert_eq!(*d1, 2);
        let serre_half = en.mul(&en.f(1), &en.f(0)).unwrap()
            - en.mul(&en.f(0), &en.f(1)).unwrap().scale(&Scalar::v_pow(1));
        assert_eq!(*w1, serre_half.scale(&Scalar::v_pow(-1)));
    }

    #[test]
    fn trivial_single_term() {
        // Along the composite root vector F_{α_1+α_2} the element F_{α_1}
        // has ad-image zero, so the emission is a single term v_β^{−ar}·u
        // with r = 1 here.
        let en = a2_engine();
        let (_, rv) = root_vectors(&en, vec![0, 1, 0]);
        let ctx = TailContext::new(&en, rv[1].clone()).unwrap();
        let u = en.f(0);
        for a in 1..=3 {
            let em = check_right_plain(&ctx, &u, a).unwrap();
            assert_eq!(em.len(), 1);
            assert_eq!(em[0].0, a);
            assert_eq!(em[0].1, u.scale(&Scalar::v_pow(-(a as i64))));
        }
    }

    #[test]
    fn not_nilpotent_diagnostic() {
        let en = a2_engine();
        let ctx = TailContext::for_simple(&en, 1).unwrap().with_max_levels(8);
        for u in [en.f(1), en.e(0)] {
            let err = emit_right_plain(&ctx, &u, 1).unwrap_err();
            assert!(err.is_falsification());
            match err {
                EngineError::NotNilpotent { beta, cap, levels } => {
                    assert_eq!(beta, vec![0, 1]);
                    assert_eq!(cap, 8);
                    assert!(!levels.is_empty() && levels.len() <= 5);
                }
                other => panic!("expected NotNilpotent, got {other:?}"),
            }
        }
    }

    #[test]
    fn divided_plain_consistency() {
        // The divided-tail law at depth a coincides with the plain law at
        // a+1 after scaling: [depth]_β!·w_div,i = [a]_β!·w_plain,i.
        let en = b2_engine();
        let (_, rv) = root_vectors(&en, vec![0, 1, 0, 1]);
        let ctx = TailContext::for_simple(&en, 1).unwrap();
        for u in [&rv[0], &rv[1], &rv[2]] {
            for a in 0..=2u32 {
                let div = emit_right_divided(&ctx, u, a).unwrap();
                let plain = emit_right_plain(&ctx, u, a + 1).unwrap();
                assert_eq!(div.len(), plain.len());
                for ((dd, wd), (dp, wp)) in div.iter().zip(plain.iter()) {
                    assert_eq!(dd + 1, *dp);
                    assert_eq!(wd.scale(&ctx.q_fact(*dd)), wp.scale(&ctx.q_fact(a)));
                }
            }
        }
    }

    #[test]
    fn divided_integrality() {
        // Divided-power u across divided tails: all carried coefficients
        // lie in Z[v,v^{−1}] when expanded in the divided root-vector
        // basis.
        for (name, word, simple_u, simple_beta) in [
            ("A2", vec![0usize, 1, 0], 0usize, 1usize),
            ("B2", vec![0usize, 1, 0, 1], 0usize, 1usize),
            ("B2", vec![1usize, 0, 1, 0], 1usize, 0usize),
        ] {
            let en = Engine::for_type(name, 16).unwrap();
            let order =
                ConvexOrder::new(en.datum(), WeylWord::from_indices(word)).unwrap();
            let pbw = PbwContext::new(&en, &order).unwrap();
            let ctx = TailContext::for_simple(&en, simple_beta).unwrap();
            let d_u = en.datum().root_d(&{
                let mut v = vec![0i32; en.rank()];
                v[simple_u] = 1;
                v
            }) as u32;
            for n in 1..=2u32 {
                let u = en.f_divided(simple_u, n);
                for a in 0..=2u32 {
                    for (_, w) in emit_right_divided(&ctx, &u, a).unwrap() {
                        let exp = pbw.from_negative_elem(&w).unwrap();
                        for (tuple, c) in exp.terms() {
                            // Rescale to the divided PBW basis:
                            // c·F^t = c·[t]!·F^{(t)}.
                            let mut scaled = c.clone();
                            for (p, t) in tuple.iter().enumerate() {
                                let dp = en.datum().root_d(order.root(p)) as u32;
                                scaled = scaled * Scalar::from_laurent(&q_factorial(*t, dp));
                            }
                            assert!(
                                scaled.is_integral_laurent(),
                                "{name}: non-integral coefficient {scaled:?} at {tuple:?} \
                                 (u=F_{simple_u}^({n}), a={a}, d_u={d_u})"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn tail_sums_and_absorption() {
        let en = a2_engine();
        let ctx = TailContext::for_simple(&en, 1).unwrap();

        // (tail at depth 1)·F_{α_1} built by the mirror law, verified by
        // clearing against the left divided check.
        let t = LocalizedTail::bare(&ctx, 1);
        let s = TailSum::from_tail(&t).mul_right(&ctx, &en.f(0)).unwrap();
        let mut expected = TailSum::zero();
        for (depth, w) in check_left_divided(&ctx, &en.f(0), 1).unwrap() {
            expected.add(depth, w);
        }
        assert!(s.eq_by_clearing(&ctx, &expected).unwrap());

        // Clearing is linear.
        let sum2 = s.scale(&Scalar::v_pow(3));
        let m = s.max_depth().unwrap();
        assert_eq!(
            sum2.cleared(&ctx, m).unwrap(),
            s.cleared(&ctx, m).unwrap().scale(&Scalar::v_pow(3))
        );

        // Absorption: p·F_β^n across the divided tail.
        let mut base = TailSum::zero();
        base.add(2, en.f(0));
        let one_step = base.absorb_right_f(&ctx, 1).unwrap();
        let mut expect = TailSum::zero();
        expect.add(1, en.f(0).scale(&Scalar::from_laurent(&q_int(2, 1))));
        assert!(one_step.eq_by_clearing(&ctx, &expect).unwrap());
        // n = a: absorb everything down to depth 0, scaled [a]_β!.
        let two_step = base.absorb_right_f(&ctx, 2).unwrap();
        let mut expect = TailSum::zero();
        expect.add(0, en.f(0).scale(&ctx.q_fact(2)));
        assert!(two_step.eq_by_clearing(&ctx, &expect).unwrap());
        // n > a: the class dies.
        assert!(base.absorb_right_f(&ctx, 3).unwrap().is_zero());

        // Left action is prefix concatenation.
        let left = s.mul_left(&ctx, &en.f(0)).unwrap();
        for ((a1, p1), (a2, p2)) in left.terms().zip(s.terms()) {
            assert_eq!(a1, a2);
            assert_eq!(*p1, en.mul(&en.f(0), p2).unwrap());
        }
    }

    #[test]
    fn k_bracket_elem_structure() {
        let en = Engine::for_type("A1", 12).unwrap();
        // Conjugation: [K;c⌈t]·F = F·[K;c−2⌈t].
        let f = en.f(0);
        for c in -2..=2i64 {
            for t in 0..=3u32 {
                let kb = k_bracket_elem(&en, &[1], c, t).unwrap();
                let kb_shift = k_bracket_elem(&en, &[1], c - 2, t).unwrap();
                assert_eq!(
                    en.mul(&kb, &f).unwrap(),
                    en.mul(&f, &kb_shift).unwrap(),
                    "c={c}, t={t}"
                );
                // Coefficient-wise evaluation at a symbolic K-eigenvalue
                // matches the scalar product formula.
                let kappa = Scalar::z_pow(1, 1);
                let mut val = Scalar::zero();
                for (mono, coeff) in kb.terms() {
                    assert!(mono.f_word.is_empty() && mono.e_word.is_empty());
                    val += coeff.clone() * kappa.pow(mono.k[0] as i64);
                }
                assert_eq!(val, k_bracket(&kappa, c, t, 1), "c={c}, t={t}");
            }
        }
    }

    #[test]
    fn sl2_laws() {
        let en = Engine::for_type("A1", 14).unwrap();
        for s in 0..=4 {
            sl2_ground_identity(&en, s).unwrap();
            sl2_negative_power_law(&en, s).unwrap();
        }
        for r in 0..=2 {
            for s in 0..=2 {
                sl2_e_past_tail(&en, r, s).unwrap();
            }
        }
        // The un-divided display F^{−1}E = EF^{−1} + [K;−2]F^{−2} is the
        // r=1, s=0 instance; check its cleared form explicitly:
        // E F² = F E F + F·[K;−2⌈1].
        let e = en.e(0);
        let f = en.f(0);
        let lhs = en.mul(&e, &en.pow(&f, 2).unwrap()).unwrap();
        let rhs = en.mul_many(&[f.clone(), e, f.clone()]).unwrap()
            + en.mul(&f, &k_bracket_elem(&en, &[1], -2, 1).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn localized_verma_relations() {
        LocalizedVerma::symbolic().relations_check(6).unwrap();
        // A specialized weight behaves identically.
        LocalizedVerma::new(Scalar::v_pow(3)).relations_check(6).unwrap();
    }
}

//! Generic right-crossing of elements past localized tails.
//!
//! The emission laws in [`crate::ore`] move an element past a tail
//! `F_β^{(−a)}F_β^{−1}` when its adjoint chain `ad(F_β)^i(u)` dies.  Tail
//! chains also need to cross elements whose chain never dies — Cartan
//! factors, raising letters, and the mixed monomials they generate.  For
//! those this module uses the exact one-step recursion in the Ore
//! localization at `F_β`:
//!
//! ```text
//! u·F_β^{−1} = v_β^{−r} F_β^{−1}·u + F_β^{−1}·( ad(F_β)(u)·F_β^{−1} ),
//!     r = −⟨wt u, β^∨⟩,
//! ```
//!
//! which closes as soon as an iterate `y` *q-commutes* with `F_β`
//! (`y F_β = c F_β y` for a scalar `c`, verified by an engine product
//! comparison); then `y F_β^{−1} = c^{−1} F_β^{−1} y` exactly.  Cartan
//! monomials q-commute immediately; raising letters reach a q-commuting
//! iterate after a bounded number of bracket steps because each step
//! trades a raising letter for Cartan content.  Iterates with several
//! monomials are split term by term (the q-commutation factor is not
//! linear).  A depth cap guards against divergence: exhausting it is a
//! loud [`EngineError::NotNilpotent`], never a truncation.

use crate::coeff::Scalar;
use crate::engine::Elem;
use crate::error::{EngineError, Result};
use crate::ore::{emit_right_divided, TailContext};
use crate::qcomm::ad;

/// Default cap on recursion depth for the generic crossing.
pub const DEFAULT_CROSS_CAP: u32 = 16;

/// If `u F_β = c F_β u` for a scalar `c`, return `Some(c)`.
///
/// The check is an exact engine identity: both products are expanded to
/// normal form and compared after scaling.  `u = 0` yields `Some(1)`.
pub fn q_commute_factor(ctx: &TailContext<'_>, u: &Elem) -> Result<Option<Scalar>> {
    if u.is_zero() {
        return Ok(Some(Scalar::one()));
    }
    let engine = ctx.engine();
    let f = ctx.f_pow(1)?;
    let uf = engine.mul(u, &f)?;
    let fu = engine.mul(&f, u)?;
    let (mono, coeff) = match fu.terms().next() {
        Some((m, c)) => (m.clone(), c.clone()),
        None => {
            return Err(EngineError::falsified(
                "left product with a root vector vanished on a nonzero element",
            ))
        }
    };
    let target = uf.coeff(&mono);
    if target.is_zero() {
        return Ok(None);
    }
    let c = target / coeff;
    let mut diff = uf;
    for (m, co) in fu.terms() {
        diff.add_term(m.clone(), -(c.clone() * co.clone()));
    }
    if diff.is_zero() {
        Ok(Some(c))
    } else {
        Ok(None)
    }
}

/// `u·F_β^{−1} = Σ_i F_β^{−1−i}·w_i`, returned as pairs `(i, w_i)`.
///
/// Resolution order per summand: a q-commuting element closes exactly at
/// extra depth 0; a sum splits into monomials; a single non-q-commuting
/// monomial recurses through its twisted bracket.
pub fn cross_neg_one(ctx: &TailContext<'_>, u: &Elem, cap: u32) -> Result<Vec<(u32, Elem)>> {
    if u.is_zero() {
        return Ok(Vec::new());
    }
    if let Some(c) = q_commute_factor(ctx, u)? {
        return Ok(vec![(0, u.scale(&c.inv()))]);
    }
    if u.num_terms() > 1 {
        let mut out: Vec<(u32, Elem)> = Vec::new();
        for (m, c) in u.terms() {
            let piece = Elem::monomial(m.clone(), c.clone());
            merge(&mut out, cross_neg_one(ctx, &piece, cap)?);
        }
        return Ok(out);
    }
    if cap == 0 {
        return Err(EngineError::NotNilpotent {
            beta: ctx.beta().clone(),
            cap: DEFAULT_CROSS_CAP,
            levels: vec![format!("crossing stalled on {u}")],
        });
    }
    let r = ctx.r_of(u)?;
    let bracket = ad(ctx.engine(), ctx.f_beta(), u)?;
    let mut out = vec![(0, u.scale(&ctx.v_beta(-r)))];
    for (i, w) in cross_neg_one(ctx, &bracket, cap - 1)? {
        merge(&mut out, vec![(i + 1, w)]);
    }
    Ok(out)
}

/// `u·F_β^{−m} = Σ_i F_β^{−m−i}·w_i`, returned as pairs `(i, w_i)`.
pub fn cross_plain(ctx: &TailContext<'_>, u: &Elem, m: u32, cap: u32) -> Result<Vec<(u32, Elem)>> {
    let mut cur: Vec<(u32, Elem)> = vec![(0, u.clone())];
    for _ in 0..m {
        let mut next: Vec<(u32, Elem)> = Vec::new();
        for (i, w) in cur {
            for (j, w2) in cross_neg_one(ctx, &w, cap)? {
                merge(&mut next, vec![(i + j, w2)]);
            }
        }
        cur = next;
    }
    Ok(cur)
}

/// `u·F_β^{(−a)}F_β^{−1} = Σ F_β^{(−b)}F_β^{−1}·w_b`, as pairs `(b, w_b)`
/// with `b ≥ a`.
///
/// Fast path: the frozen divided emission law when the adjoint chain of
/// `u` dies.  Otherwise the tail is converted to a plain negative power
/// (`F^{(−a)}F^{−1} = [a]_β! F^{−a−1}`), crossed one inverse at a time,
/// and converted back.
pub fn cross_divided(ctx: &TailContext<'_>, u: &Elem, a: u32, cap: u32) -> Result<Vec<(u32, Elem)>> {
    if u.is_zero() {
        return Ok(Vec::new());
    }
    match emit_right_divided(ctx, u, a) {
        Ok(terms) => Ok(terms),
        Err(EngineError::NotNilpotent { .. }) => {
            let mut out = Vec::new();
            for (i, w) in cross_plain(ctx, u, a + 1, cap)? {
                let b = a + i;
                let factor = ctx.q_fact(a) / ctx.q_fact(b);
                merge(&mut out, vec![(b, w.scale(&factor))]);
            }
            Ok(out)
        }
        Err(e) => Err(e),
    }
}

/// Absorb a left factor `F_β^t` into the tail: the class of
/// `F_β^t · F_β^{(−b)}F_β^{−1}` is `([b]_β!/[b−t]_β!) F_β^{(−b+t)}F_β^{−1}`
/// when `t ≤ b` and zero (a regular element of the plain algebra) when
/// `t > b`.
pub fn absorb_left_f(ctx: &TailContext<'_>, t: u32, b: u32) -> Option<(u32, Scalar)> {
    if t > b {
        return None;
    }
    let factor = &ctx.q_fact(b) / &ctx.q_fact(b - t);
    Some((b - t, factor))
}

/// Clearing certification of [`cross_divided`]: multiply the claimed
/// expansion back into the plain algebra and compare.
///
/// With `M = max b`, the claim `u·F^{(−a)}F^{−1} = Σ_b F^{(−b)}F^{−1} w_b`
/// is equivalent to
/// `[a]_β!·F_β^{M+1}·u == Σ_b [b]_β!·F_β^{M−b}·w_b·F_β^{a+1}`.
pub fn check_cross_divided(ctx: &TailContext<'_>, u: &Elem, a: u32, cap: u32) -> Result<Vec<(u32, Elem)>> {
    let terms = cross_divided(ctx, u, a, cap)?;
    let engine = ctx.engine();
    let m = terms.iter().map(|p| p.0).max().unwrap_or(a);
    let lhs = engine
        .mul(&ctx.f_pow(m + 1)?, u)?
        .scale(&ctx.q_fact(a));
    let fa1 = ctx.f_pow(a + 1)?;
    let mut rhs = Elem::zero();
    for (b, w) in &terms {
        let t = engine.mul_many(&[ctx.f_pow(m - b)?, w.clone(), fa1.clone()])?;
        rhs = &rhs + &t.scale(&ctx.q_fact(*b));
    }
    if &lhs - &rhs != Elem::zero() {
        return Err(EngineError::falsified(format!(
            "generic crossing failed its clearing certificate at depth {a} along β = {:?}",
            ctx.beta()
        )));
    }
    Ok(terms)
}

fn merge(acc: &mut Vec<(u32, Elem)>, terms: Vec<(u32, Elem)>) {
    for (d, w) in terms {
        if w.is_zero() {
            continue;
        }
        if let Some(slot) = acc.iter_mut().find(|(e, _)| *e == d) {
            slot.1 = &slot.1 + &w;
        } else {
            acc.push((d, w));
        }
    }
    acc.retain(|(_, w)| !w.is_zero());
    acc.sort_by_key(|(d, _)| *d);
}

//! Graded `v`-commutators and the twisted adjoint actions of root
//! vectors, with their divided-power closed forms.
//!
//! For homogeneous `x, y` of weights `μ, γ` the bracket is
//! `[x,y]_v = xy − v^{−(μ|γ)} yx`. The two adjoint actions of a root
//! vector `F_β` on homogeneous `u` are
//!
//! * `ad(F_β)(u)  = [F_β, u]_v = F_β u − v^{(β|wt u)} u F_β`,
//! * `ãd(F_β)(u) = [u, F_β]_v = u F_β − v^{(β|wt u)} F_β u`,
//!
//! with iterated powers `ad(F_β^i) = ad(F_β)^i`. Writing
//! `r = −⟨wt u, β^∨⟩` and `v_β = v^{d_β}`, the closed forms are
//!
//! ```text
//! ad(F_β^{(i)})(u)  = Σ_{n=0}^{i} (−1)^n v_β^{n(1−i−r)} F_β^{(i−n)} u F_β^{(n)}
//! ãd(F_β^{(i)})(u) = Σ_{n=0}^{i} (−1)^n v_β^{n(1−i−r)} F_β^{(n)} u F_β^{(i−n)}
//! ```
//!
//! and the divided-power commutation expansions are
//!
//! ```text
//! u F_β^{(a)} = Σ_{i=0}^{a} v_β^{−(a−i)(r+i)} F_β^{(a−i)} ãd(F_β^{(i)})(u)
//! F_β^{(a)} u = Σ_{i=0}^{a} v_β^{−(a−i)(r+i)} ad(F_β^{(i)})(u) F_β^{(a−i)}
//! ```
//!
//! Every function here recomputes nothing blindly: the closed forms are
//! verified against the iterated definitions by the tests and the
//! acceptance suite.

use crate::braid::pbw::{PbwContext, PbwElem};
use crate::cartan::{neg_vec, RootVec};
use crate::coeff::{q_factorial, Scalar};
use crate::engine::{Elem, Engine};
use crate::error::{EngineError, Result};

/// `[x, y]_v = xy − v^{−(wt x|wt y)} yx`; both inputs must be homogeneous.
pub fn vcomm(engine: &Engine, x: &Elem, y: &Elem) -> Result<Elem> {
    let rank = engine.rank();
    let wx = x.weight(rank)?;
    let wy = y.weight(rank)?;
    let xy = engine.mul(x, y)?;
    let yx = engine.mul(y, x)?;
    Ok(xy - yx.scale(&Scalar::v_pow(-engine.datum().bilin(&wx, &wy))))
}

/// `ad(F_β)(u) = [F_β, u]_v`.
pub fn ad(engine: &Engine, f_beta: &Elem, u: &Elem) -> Result<Elem> {
    vcomm(engine, f_beta, u)
}

/// `ãd(F_β)(u) = [u, F_β]_v`.
pub fn tilde_ad(engine: &Engine, f_beta: &Elem, u: &Elem) -> Result<Elem> {
    vcomm(engine, u, f_beta)
}

/// Iterated `ad(F_β)^i(u)`.
pub fn ad_iter(engine: &Engine, f_beta: &Elem, u: &Elem, i: u32) -> Result<Elem> {
    let mut acc = u.clone();
    for _ in 0..i {
        acc = ad(engine, f_beta, &acc)?;
    }
    Ok(acc)
}

/// Iterated `ãd(F_β)^i(u)`.
pub fn tilde_ad_iter(engine: &Engine, f_beta: &Elem, u: &Elem, i: u32) -> Result<Elem> {
    let mut acc = u.clone();
    for _ in 0..i {
        acc = tilde_ad(engine, f_beta, &acc)?;
    }
    Ok(acc)
}

/// Weight data of a root vector and a homogeneous element:
/// `(β, d_β, r = −⟨wt u, β^∨⟩)`.
pub(crate) fn pairing_data(engine: &Engine, f_beta: &Elem, u: &Elem) -> Result<(RootVec, i64, i64)> {
    let rank = engine.rank();
    let beta = neg_vec(&f_beta.weight(rank)?);
    let d = engine.datum().root_d(&beta);
    let pairing = engine.datum().bilin(&beta, &u.weight(rank)?);
    debug_assert_eq!(pairing % d, 0, "coroot pairing must be integral");
    Ok((beta, d, -pairing / d))
}

pub(crate) fn divided_powers(engine: &Engine, f_beta: &Elem, d: i64, top: u32) -> Result<Vec<Elem>> {
    let mut out = Vec::with_capacity(top as usize + 1);
    let mut pow = engine.one();
    for n in 0..=top {
        if n > 0 {
            pow = engine.mul(&pow, f_beta)?;
        }
        let fact = q_factorial(n, d as u32);
        out.push(pow.scale(&Scalar::from_laurent(&fact).inv()));
    }
    Ok(out)
}

/// Closed form for `ad(F_β^{(i)})(u) = ad(F_β^i)(u)/[i]_β!`.
pub fn ad_closed_divided(engine: &Engine, f_beta: &Elem, u: &Elem, i: u32) -> Result<Elem> {
    let (_, d, r) = pairing_data(engine, f_beta, u)?;
    let fp = divided_powers(engine, f_beta, d, i)?;
    let mut acc = Elem::zero();
    for n in 0..=i {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let exp = d * (n as i64) * (1 - i as i64 - r);
        let term = engine.mul(&engine.mul(&fp[(i - n) as usize], u)?, &fp[n as usize])?;
        acc = acc + term.scale(&(Scalar::from_int(sign) * Scalar::v_pow(exp)));
    }
    Ok(acc)
}

/// Closed form for `ãd(F_β^{(i)})(u)`.
pub fn tilde_ad_closed_divided(engine: &Engine, f_beta: &Elem, u: &Elem, i: u32) -> Result<Elem> {
    let (_, d, r) = pairing_data(engine, f_beta, u)?;
    let fp = divided_powers(engine, f_beta, d, i)?;
    let mut acc = Elem::zero();
    for n in 0..=i {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let exp = d * (n as i64) * (1 - i as i64 - r);
        let term = engine.mul(&engine.mul(&fp[n as usize], u)?, &fp[(i - n) as usize])?;
        acc = acc + term.scale(&(Scalar::from_int(sign) * Scalar::v_pow(exp)));
    }
    Ok(acc)
}

/// Expansion of `u F_β^{(a)}` as `Σ_i v_β^{−(a−i)(r+i)} F_β^{(a−i)} ãd(F_β^{(i)})(u)`.
pub fn commute_right_divided(engine: &Engine, f_beta: &Elem, u: &Elem, a: u32) -> Result<Elem> {
    let (_, d, r) = pairing_data(engine, f_beta, u)?;
    let fp = divided_powers(engine, f_beta, d, a)?;
    let ifact = |i: u32| Scalar::from_laurent(&q_factorial(i, d as u32)).inv();
    let mut acc = Elem::zero();
    for i in 0..=a {
        let exp = -d * (a - i) as i64 * (r + i as i64);
        let adi = tilde_ad_iter(engine, f_beta, u, i)?.scale(&ifact(i));
        let term = engine.mul(&fp[(a - i) as usize], &adi)?;
        acc = acc + term.scale(&Scalar::v_pow(exp));
    }
    Ok(acc)
}

/// Expansion of `F_β^{(a)} u` as `Σ_i v_β^{−(a−i)(r+i)} ad(F_β^{(i)})(u) F_β^{(a−i)}`.
pub fn commute_left_divided(engine: &Engine, f_beta: &Elem, u: &Elem, a: u32) -> Result<Elem> {
    let (_, d, r) = pairing_data(engine, f_beta, u)?;
    let fp = divided_powers(engine, f_beta, d, a)?;
    let ifact = |i: u32| Scalar::from_laurent(&q_factorial(i, d as u32)).inv();
    let mut acc = Elem::zero();
    for i in 0..=a {
        let exp = -d * (a - i) as i64 * (r + i as i64);
        let adi = ad_iter(engine, f_beta, u, i)?.scale(&ifact(i));
        let term = engine.mul(&adi, &fp[(a - i) as usize])?;
        acc = acc + term.scale(&Scalar::v_pow(exp));
    }
    Ok(acc)
}

/// Expansion of `u F_β^{(a)}` with alternating signs through `ad` instead
/// of `ãd`: `Σ_i (−1)^i v_β^{a(r+i)−i} F_β^{(a−i)} ad(F_β^{(i)})(u)`.
pub fn commute_right_alternating(
    engine: &Engine,
    f_beta: &Elem,
    u: &Elem,
    a: u32,
) -> Result<Elem> {
    let (_, d, r) = pairing_data(engine, f_beta, u)?;
    let fp = divided_powers(engine, f_beta, d, a)?;
    let ifact = |i: u32| Scalar::from_laurent(&q_factorial(i, d as u32)).inv();
    let mut acc = Elem::zero();
    for i in 0..=a {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let exp = d * (a as i64 * (r + i as i64) - i as i64);
        let adi = ad_iter(engine, f_beta, u, i)?.scale(&ifact(i));
        let term = engine.mul(&fp[(a - i) as usize], &adi)?;
        acc = acc + term.scale(&(Scalar::from_int(sign) * Scalar::v_pow(exp)));
    }
    Ok(acc)
}

/// Expansion of `F_β^{(a)} u` with alternating signs through `ãd`:
/// `Σ_i (−1)^i v_β^{a(r+i)−i} ãd(F_β^{(i)})(u) F_β^{(a−i)}`.
pub fn commute_left_alternating(
    engine: &Engine,
    f_beta: &Elem,
    u: &Elem,
    a: u32,
) -> Result<Elem> {
    let (_, d, r) = pairing_data(engine, f_beta, u)?;
    let fp = divided_powers(engine, f_beta, d, a)?;
    let ifact = |i: u32| Scalar::from_laurent(&q_factorial(i, d as u32)).inv();
    let mut acc = Elem::zero();
    for i in 0..=a {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let exp = d * (a as i64 * (r + i as i64) - i as i64);
        let adi = tilde_ad_iter(engine, f_beta, u, i)?.scale(&ifact(i));
        let term = engine.mul(&adi, &fp[(a - i) as usize])?;
        acc = acc + term.scale(&(Scalar::from_int(sign) * Scalar::v_pow(exp)));
    }
    Ok(acc)
}

/// Graded Leibniz rule: `ad(F_β)(xy) = ad(F_β)(x)·y + v^{(β|wt x)}·x·ad(F_β)(y)`.
/// Returns the right-hand side for comparison.
pub fn ad_leibniz_rhs(engine: &Engine, f_beta: &Elem, x: &Elem, y: &Elem) -> Result<Elem> {
    let rank = engine.rank();
    let beta = neg_vec(&f_beta.weight(rank)?);
    let shift = engine.datum().bilin(&beta, &x.weight(rank)?);
    let t1 = engine.mul(&ad(engine, f_beta, x)?, y)?;
    let t2 = engine.mul(x, &ad(engine, f_beta, y)?)?;
    Ok(t1 + t2.scale(&Scalar::v_pow(shift)))
}

/// First derivation rule: for homogeneous `x₁, x₂, y`,
/// `[x₁x₂, y]_v = x₁[x₂,y]_v + v^{−(wt y|wt x₂)}[x₁,y]_v x₂`.
/// Returns the right-hand side for comparison.
pub fn derivation_first_rhs(engine: &Engine, x1: &Elem, x2: &Elem, y: &Elem) -> Result<Elem> {
    let rank = engine.rank();
    let shift = -engine.datum().bilin(&y.weight(rank)?, &x2.weight(rank)?);
    let t1 = engine.mul(x1, &vcomm(engine, x2, y)?)?;
    let t2 = engine.mul(&vcomm(engine, x1, y)?, x2)?;
    Ok(t1 + t2.scale(&Scalar::v_pow(shift)))
}

/// Second derivation rule: for homogeneous `y, x₁, x₂`,
/// `[y, x₁x₂]_v = v^{−(wt y|wt x₁)} x₁[y,x₂]_v + [y,x₁]_v x₂`.
/// Returns the right-hand side for comparison.
pub fn derivation_second_rhs(engine: &Engine, y: &Elem, x1: &Elem, x2: &Elem) -> Result<Elem> {
    let rank = engine.rank();
    let shift = -engine.datum().bilin(&y.weight(rank)?, &x1.weight(rank)?);
    let t1 = engine.mul(x1, &vcomm(engine, y, x2)?)?;
    let t2 = engine.mul(&vcomm(engine, y, x1)?, x2)?;
    Ok(t1.scale(&Scalar::v_pow(shift)) + t2)
}

/// Graded Jacobi identity with boundary corrections: for homogeneous
/// `x, y, z`,
///
/// ```text
/// [x,[y,z]] − [[x,y],z] = v^{−(wt x|wt y)} y·[x,z] − v^{−(wt y|wt z)} [x,z]·y
/// ```
///
/// Returns `(lhs, rhs)` for comparison.
pub fn jacobi_sides(
    engine: &Engine,
    x: &Elem,
    y: &Elem,
    z: &Elem,
) -> Result<(Elem, Elem)> {
    let rank = engine.rank();
    let wx = x.weight(rank)?;
    let wy = y.weight(rank)?;
    let wz = z.weight(rank)?;
    let lhs = vcomm(engine, x, &vcomm(engine, y, z)?)?
        - vcomm(engine, &vcomm(engine, x, y)?, z)?;
    let xz = vcomm(engine, x, z)?;
    let rhs = engine
        .mul(y, &xz)?
        .scale(&Scalar::v_pow(-engine.datum().bilin(&wx, &wy)))
        - engine
            .mul(&xz, y)?
            .scale(&Scalar::v_pow(-engine.datum().bilin(&wy, &wz)));
    Ok((lhs, rhs))
}

/// Graded Jacobi identity in its single-correction arrangement: for
/// homogeneous `x, y, z` of weights `μ, ν, γ`,
///
/// ```text
/// [[x,y],z] = [x,[y,z]] − v^{−(μ|ν)}[y,[x,z]]
///             + v^{−(ν|μ+γ)}(v^{(ν|μ)} − v^{−(ν|μ)})·[x,z]·y
/// ```
///
/// Returns `(lhs, rhs)` for comparison; equivalent to [`jacobi_sides`] by
/// expanding the middle bracket.
pub fn jacobi_exact_sides(
    engine: &Engine,
    x: &Elem,
    y: &Elem,
    z: &Elem,
) -> Result<(Elem, Elem)> {
    let rank = engine.rank();
    let datum = engine.datum();
    let wx = x.weight(rank)?;
    let wy = y.weight(rank)?;
    let wz = z.weight(rank)?;
    let mu_nu = datum.bilin(&wx, &wy);
    let nu_mu_gamma = datum.bilin(&wy, &crate::cartan::add_vec(&wx, &wz));
    let lhs = vcomm(engine, &vcomm(engine, x, y)?, z)?;
    let xz = vcomm(engine, x, z)?;
    let correction = Scalar::v_pow(-nu_mu_gamma)
        * (Scalar::v_pow(mu_nu) - Scalar::v_pow(-mu_nu));
    let rhs = vcomm(engine, x, &vcomm(engine, y, z)?)?
        - vcomm(engine, y, &xz)?.scale(&Scalar::v_pow(-mu_nu))
        + engine.mul(&xz, y)?.scale(&correction);
    Ok((lhs, rhs))
}

/// Ordered-monomial expansion of the pair bracket
/// `[F_{β_hi}^b, F_{β_lo}^a]_v = F_hi^b F_lo^a − v^{−ab(β_lo|β_hi)} F_lo^a F_hi^b`
/// for positions `lo < hi`, asserting support confinement: every monomial
/// lives on positions `lo..=hi` with exponent `< a` at `lo` and `< b` at
/// `hi`. A confinement violation is reported as a falsification (it would
/// contradict the Levendorskii–Soibelman triangularity the PBW layer is
/// built on).
pub fn straighten_pair(
    ctx: &PbwContext<'_>,
    hi: usize,
    lo: usize,
    b: u32,
    a: u32,
) -> Result<PbwElem> {
    assert!(lo < hi, "straighten_pair wants lo < hi");
    let datum = ctx.engine().datum();
    let pairing = datum.bilin(ctx.order().root(lo), ctx.order().root(hi));
    let fhi = ctx.pow(&ctx.f_beta(hi), b);
    let flo = ctx.pow(&ctx.f_beta(lo), a);
    let bracket = ctx.mul(&fhi, &flo)
        - ctx
            .mul(&flo, &fhi)
            .scale(&Scalar::v_pow(-(a as i64) * (b as i64) * pairing));
    for (t, _) in bracket.terms() {
        let inside = t.iter().enumerate().all(|(p, &e)| {
            (lo..=hi).contains(&p) || e == 0
        });
        if !inside || t[lo] >= a || t[hi] >= b {
            return Err(EngineError::falsified(format!(
                "pair bracket ({hi},{lo}) powers ({b},{a}) escaped its window: \
                 monomial {t:?}"
            )));
        }
    }
    Ok(bracket)
}

/// Divided-power pair bracket `[F_{β_hi}^{(b)}, F_{β_lo}^{(a)}]_v`
/// expressed on the divided-power PBW basis: returns `(tuple, coefficient)`
/// pairs where `tuple` indexes `F_{β_1}^{(t_1)}⋯F_{β_N}^{(t_N)}`.
pub fn straighten_pair_divided(
    ctx: &PbwContext<'_>,
    hi: usize,
    lo: usize,
    b: u32,
    a: u32,
) -> Result<Vec<(Vec<u32>, Scalar)>> {
    let datum = ctx.engine().datum();
    let bracket = straighten_pair(ctx, hi, lo, b, a)?;
    let norm = Scalar::from_laurent(&q_factorial(a, datum.root_d(ctx.order().root(lo)) as u32))
        * Scalar::from_laurent(&q_factorial(b, datum.root_d(ctx.order().root(hi)) as u32));
    let mut out = Vec::new();
    for (t, c) in bracket.terms() {
        let mut fact = Scalar::one();
        for (p, &e) in t.iter().enumerate() {
            fact = fact
                * Scalar::from_laurent(&q_factorial(e, datum.root_d(ctx.order().root(p)) as u32));
        }
        out.push((t.clone(), c.clone() * fact * norm.inv().clone()));
    }
    Ok(out)
}

/// Largest coefficient of a simple root appearing in any positive root of
/// the order — the `d` in the `n·d + 1` nilpotency bound.
pub fn max_simple_coefficient(ctx: &PbwContext<'_>) -> u32 {
    let order = ctx.order();
    (0..order.len())
        .flat_map(|j| order.root(j).iter().copied())
        .max()
        .unwrap_or(0)
        .max(0) as u32
}

/// Smallest `i` with `ãd(F_{β_j}^{(i)})(F_{β_k}^{(n)}) = 0` for `j < k`,
/// certified against the bound `n·d + 1` where `d` is the largest simple
/// root coefficient in the system. Exceeding the bound is a falsification.
/// The right-bracketing `ãd` is the finite orientation for `j < k`.
pub fn nilpotency_index_pair(
    ctx: &PbwContext<'_>,
    j: usize,
    k: usize,
    n: u32,
) -> Result<u32> {
    assert!(j < k, "nilpotency_index_pair wants j < k");
    let bound = n * max_simple_coefficient(ctx) + 1;
    let dk = ctx.engine().datum().root_d(ctx.order().root(k)) as u32;
    let target = ctx
        .pow(&ctx.f_beta(k), n)
        .scale(&Scalar::from_laurent(&q_factorial(n, dk)).inv());
    tilde_nilpotency_index(ctx, j, &target, bound)
}

/// Weight of a homogeneous PBW element.
pub fn pbw_weight(ctx: &PbwContext<'_>, x: &PbwElem) -> Result<RootVec> {
    let mut seen: Vec<RootVec> = Vec::new();
    for (t, _) in x.terms() {
        let w = ctx.tuple_weight(t);
        if !seen.contains(&w) {
            seen.push(w);
        }
    }
    match seen.len() {
        0 => Ok(vec![0; ctx.engine().rank()]),
        1 => Ok(seen.pop().unwrap()),
        _ => Err(EngineError::NotHomogeneous(seen)),
    }
}

/// `ad(F_{β_j})(u)` inside the PBW layer (no height limit). Weights here
/// are negative roots, so the pairing uses `−weight`.
pub fn pbw_ad(ctx: &PbwContext<'_>, j: usize, u: &PbwElem) -> Result<PbwElem> {
    let beta = ctx.order().root(j).clone();
    let wu = pbw_weight(ctx, u)?;
    // wt of a PBW element is −(content); the bracket pairing wants the
    // actual weight, which is the negative of the tuple weight
    let pairing = -ctx.engine().datum().bilin(&beta, &wu);
    let f = ctx.f_beta(j);
    let fu = ctx.mul(&f, u);
    let uf = ctx.mul(u, &f);
    Ok(fu - uf.scale(&Scalar::v_pow(pairing)))
}

/// Iterated `ad(F_{β_j})^t(u)` in the PBW layer.
pub fn pbw_ad_iter(ctx: &PbwContext<'_>, j: usize, u: &PbwElem, t: u32) -> Result<PbwElem> {
    let mut acc = u.clone();
    for _ in 0..t {
        acc = pbw_ad(ctx, j, &acc)?;
    }
    Ok(acc)
}

/// `ãd(F_{β_j})(u) = [u, F_{β_j}]_v` inside the PBW layer.
///
/// Orientation matters for finiteness: on `F_{β_k}` with `j < k` this is
/// the Levendorskii–Soibelman-oriented bracket, confined strictly between
/// the two positions and nilpotent under iteration, while [`pbw_ad`] is
/// the finite one for `j > k`.
pub fn pbw_tilde_ad(ctx: &PbwContext<'_>, j: usize, u: &PbwElem) -> Result<PbwElem> {
    let beta = ctx.order().root(j).clone();
    let wu = pbw_weight(ctx, u)?;
    let pairing = -ctx.engine().datum().bilin(&wu, &beta);
    let f = ctx.f_beta(j);
    let uf = ctx.mul(u, &f);
    let fu = ctx.mul(&f, u);
    Ok(uf - fu.scale(&Scalar::v_pow(pairing)))
}

/// Iterated `ãd(F_{β_j})^t(u)` in the PBW layer.
pub fn pbw_tilde_ad_iter(ctx: &PbwContext<'_>, j: usize, u: &PbwElem, t: u32) -> Result<PbwElem> {
    let mut acc = u.clone();
    for _ in 0..t {
        acc = pbw_tilde_ad(ctx, j, &acc)?;
    }
    Ok(acc)
}

/// Smallest `t ≤ cap` with `ad(F_{β_j})^t(u) = 0`, or an error carrying
/// the sizes of all computed levels.
pub fn nilpotency_index(
    ctx: &PbwContext<'_>,
    j: usize,
    u: &PbwElem,
    cap: u32,
) -> Result<u32> {
    nilpotency_index_oriented(ctx, j, u, cap, false)
}

/// Smallest `t ≤ cap` with `ãd(F_{β_j})^t(u) = 0`.
pub fn tilde_nilpotency_index(
    ctx: &PbwContext<'_>,
    j: usize,
    u: &PbwElem,
    cap: u32,
) -> Result<u32> {
    nilpotency_index_oriented(ctx, j, u, cap, true)
}

fn nilpotency_index_oriented(
    ctx: &PbwContext<'_>,
    j: usize,
    u: &PbwElem,
    cap: u32,
    tilde: bool,
) -> Result<u32> {
    let mut acc = u.clone();
    let mut levels = Vec::new();
    for t in 0..=cap {
        if acc.is_zero() {
            return Ok(t);
        }
        levels.push(format!("level {t}: {} terms", acc.num_terms()));
        acc = if tilde {
            pbw_tilde_ad(ctx, j, &acc)?
        } else {
            pbw_ad(ctx, j, &acc)?
        };
    }
    if acc.is_zero() {
        return Ok(cap + 1);
    }
    Err(EngineError::NotNilpotent {
        beta: ctx.order().root(j).clone(),
        cap,
        levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::RootVectors;
    use crate::cartan::{ConvexOrder, WeylWord};
    use crate::sample::Sampler;

    #[test]
    fn vcomm_rejects_inhomogeneous() {
        let en = Engine::for_type("A2", 8).unwrap();
        let bad = en.f(0) + en.f(1);
        assert!(matches!(
            vcomm(&en, &bad, &en.e(0)),
            Err(EngineError::NotHomogeneous(_))
        ));
    }

    #[test]
    fn rank_one_ad_values() {
        let en = Engine::for_type("A1", 8).unwrap();
        let f = en.f(0);
        let e = en.e(0);
        // ad(F)(E) = FE − v^{(α|α)·(+1)}·... wt E = α, (α|α) = 2
        let expect = en.mul(&f, &e).unwrap()
            - en.mul(&e, &f).unwrap().scale(&Scalar::v_pow(2));
        assert_eq!(ad(&en, &f, &e).unwrap(), expect);
        // ad(F)(F) is the trivial bracket: FF − v^{−2}... wt F = −α
        let expect2 = en.mul(&f, &f).unwrap()
            - en.mul(&f, &f).unwrap().scale(&Scalar::v_pow(-2));
        assert_eq!(ad(&en, &f, &f).unwrap(), expect2);
    }

    #[test]
    fn closed_forms_match_iterated_sl2() {
        let en = Engine::for_type("A1", 10).unwrap();
        let f = en.f(0);
        let us = [
            en.e(0),
            en.mul(&en.e(0), &en.e(0)).unwrap(),
            en.mul(&en.f(0), &en.e(0)).unwrap(),
        ];
        for u in &us {
            for i in 0..=3u32 {
                let fact = Scalar::from_laurent(&q_factorial(i, 1));
                let iter = ad_iter(&en, &f, u, i).unwrap();
                let closed = ad_closed_divided(&en, &f, u, i).unwrap().scale(&fact);
                assert_eq!(iter, closed, "ad^{i} closed form");
                let titer = tilde_ad_iter(&en, &f, u, i).unwrap();
                let tclosed = tilde_ad_closed_divided(&en, &f, u, i).unwrap().scale(&fact);
                assert_eq!(titer, tclosed, "ãd^{i} closed form");
            }
        }
    }

    #[test]
    fn closed_forms_match_iterated_root_vectors() {
        for (name, word) in [("A2", vec![0, 1, 0]), ("B2", vec![0, 1, 0, 1])] {
            let en = Engine::for_type(name, 12).unwrap();
            let order =
                ConvexOrder::new(en.datum(), WeylWord::from_indices(word)).unwrap();
            let rv = RootVectors::new(&en, &order).unwrap();
            let mut s = Sampler::new(23);
            for j in 0..rv.len() {
                let f = rv.f_vec(j).clone();
                let d = en.datum().root_d(order.root(j)) as u32;
                let nu = s.positive_weight(2, 2);
                let u = s.negative_elem(&en, &nu, 2).unwrap();
                for i in 0..=2u32 {
                    let fact = Scalar::from_laurent(&q_factorial(i, d));
                    let iter = ad_iter(&en, &f, &u, i).unwrap();
                    let closed = ad_closed_divided(&en, &f, &u, i).unwrap().scale(&fact);
                    assert_eq!(iter, closed, "{name} β_{j} ad^{i}");
                    let titer = tilde_ad_iter(&en, &f, &u, i).unwrap();
                    let tclosed =
                        tilde_ad_closed_divided(&en, &f, &u, i).unwrap().scale(&fact);
                    assert_eq!(titer, tclosed, "{name} β_{j} ãd^{i}");
                }
            }
        }
    }

    #[test]
    fn commute_expansions_match_products() {
        let en = Engine::for_type("B2", 12).unwrap();
        let order =
            ConvexOrder::new(en.datum(), WeylWord::from_indices(vec![0, 1, 0, 1])).unwrap();
        let rv = RootVectors::new(&en, &order).unwrap();
        let mut s = Sampler::new(31);
        for j in [0usize, 1, 3] {
            let f = rv.f_vec(j).clone();
            let d = en.datum().root_d(order.root(j));
            let nu = s.positive_weight(2, 2);
            let u = s.negative_elem(&en, &nu, 2).unwrap();
            for a in 1..=2u32 {
                let fa = en
                    .pow(&f, a)
                    .unwrap()
                    .scale(&Scalar::from_laurent(&q_factorial(a, d as u32)).inv());
                let direct_r = en.mul(&u, &fa).unwrap();
                assert_eq!(
                    commute_right_divided(&en, &f, &u, a).unwrap(),
                    direct_r,
                    "u·F^({a}) at position {j}"
                );
                let direct_l = en.mul(&fa, &u).unwrap();
                assert_eq!(
                    commute_left_divided(&en, &f, &u, a).unwrap(),
                    direct_l,
                    "F^({a})·u at position {j}"
                );
            }
        }
    }

    #[test]
    fn alternating_families_match_products() {
        let en = Engine::for_type("B2", 12).unwrap();
        let order =
            ConvexOrder::new(en.datum(), WeylWord::from_indices(vec![0, 1, 0, 1])).unwrap();
        let rv = RootVectors::new(&en, &order).unwrap();
        let mut s = Sampler::new(47);
        for j in [0usize, 2, 3] {
            let f = rv.f_vec(j).clone();
            let d = en.datum().root_d(order.root(j));
            let nu = s.positive_weight(2, 2);
            let u = s.negative_elem(&en, &nu, 2).unwrap();
            for a in 1..=2u32 {
                let fa = en
                    .pow(&f, a)
                    .unwrap()
                    .scale(&Scalar::from_laurent(&q_factorial(a, d as u32)).inv());
                assert_eq!(
                    commute_right_alternating(&en, &f, &u, a).unwrap(),
                    en.mul(&u, &fa).unwrap(),
                    "alternating u·F^({a}) at position {j}"
                );
                assert_eq!(
                    commute_left_alternating(&en, &f, &u, a).unwrap(),
                    en.mul(&fa, &u).unwrap(),
                    "alternating F^({a})·u at position {j}"
                );
            }
        }
    }

    #[test]
    fn derivation_rules_hold() {
        for name in ["A2", "B2"] {
            let en = Engine::for_type(name, 12).unwrap();
            let mut s = Sampler::new(59);
            let mut pool = vec![en.e(0), en.e(1), en.k(&[1, -1])];
            for _ in 0..3 {
                let nu = s.positive_weight(2, 3);
                pool.push(s.negative_elem(&en, &nu, 2).unwrap());
            }
            pool.push(en.mul(&en.f(0), &en.e(1)).unwrap());
            for x1 in &pool[..4] {
                for x2 in &pool[2..6] {
                    for y in &pool[3..] {
                        let x1x2 = en.mul(x1, x2).unwrap();
                        assert_eq!(
                            vcomm(&en, &x1x2, y).unwrap(),
                            derivation_first_rhs(&en, x1, x2, y).unwrap(),
                            "{name}: first derivation rule"
                        );
                        assert_eq!(
                            vcomm(&en, y, &x1x2).unwrap(),
                            derivation_second_rhs(&en, y, x1, x2).unwrap(),
                            "{name}: second derivation rule"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn leibniz_rule() {
        let en = Engine::for_type("A2", 10).unwrap();
        let f = en.f(0);
        let x = en.mul(&en.f(1), &en.e(0)).unwrap();
        let y = en.e(1);
        let lhs = ad(&en, &f, &en.mul(&x, &y).unwrap()).unwrap();
        let rhs = ad_leibniz_rhs(&en, &f, &x, &y).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn jacobi_with_corrections() {
        let en = Engine::for_type("A2", 10).unwrap();
        let xs = [en.f(0), en.e(1), en.mul(&en.f(0), &en.f(1)).unwrap()];
        for x in &xs {
            for y in &xs {
                for z in &xs {
                    let (lhs, rhs) = jacobi_sides(&en, x, y, z).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn jacobi_exact_display() {
        let en = Engine::for_type("A2", 10).unwrap();
        let xs = [en.f(0), en.e(1), en.mul(&en.f(0), &en.f(1)).unwrap()];
        for x in &xs {
            for y in &xs {
                for z in &xs {
                    let (lhs, rhs) = jacobi_exact_sides(&en, x, y, z).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn straighten_pair_values_a2() {
        let en = Engine::for_type("A2", 8).unwrap();
        let order =
            ConvexOrder::new(en.datum(), WeylWord::from_indices(vec![0, 1, 0])).unwrap();
        let ctx = PbwContext::new(&en, &order).unwrap();
        // outermost pair: bracket is exactly the middle root vector
        let b = straighten_pair(&ctx, 2, 0, 1, 1).unwrap();
        assert_eq!(b.num_terms(), 1);
        assert!(b.coeff(&[0, 1, 0]).is_one());
        // adjacent pairs straighten to zero
        assert!(straighten_pair(&ctx, 1, 0, 1, 2).unwrap().is_zero());
        assert!(straighten_pair(&ctx, 2, 1, 2, 1).unwrap().is_zero());
    }

    #[test]
    fn straighten_pair_divided_integrality() {
        let en = Engine::for_type("B2", 10).unwrap();
        let order =
            ConvexOrder::new(en.datum(), WeylWord::from_indices(vec![0, 1, 0, 1])).unwrap();
        let ctx = PbwContext::new(&en, &order).unwrap();
        let coeffs = straighten_pair_divided(&ctx, 3, 0, 2, 2).unwrap();
        assert!(!coeffs.is_empty());
        for (t, c) in &coeffs {
            assert!(
                c.is_integral_laurent(),
                "B2 divided coefficient at {t:?} not in Z[v,v^-1]: {c}"
            );
        }
        let en2 = Engine::for_type("A2", 10).unwrap();
        let order2 =
            ConvexOrder::new(en2.datum(), WeylWord::from_indices(vec![0, 1, 0])).unwrap();
        let ctx2 = PbwContext::new(&en2, &order2).unwrap();
        for (t, c) in straighten_pair_divided(&ctx2, 2, 0, 2, 2).unwrap() {
            assert!(
                c.is_integral_laurent(),
                "A2 divided coefficient at {t:?} not integral: {c}"
            );
        }
    }

    #[test]
    fn nilpotency_pair_witnesses() {
        let en = Engine::for_type("A2", 8).unwrap();
        let order =
            ConvexOrder::new(en.datum(), WeylWord::from_indices(vec![0, 1, 0])).unwrap();
        let ctx = PbwContext::new(&en, &order).unwrap();
        assert_eq!(max_simple_coefficient(&ctx), 1);
        assert_eq!(nilpotency_index_pair(&ctx, 0, 2, 1).unwrap(), 2);
        assert!(nilpotency_index_pair(&ctx, 0, 1, 1).unwrap() <= 2);
        assert_eq!(nilpotency_index_pair(&ctx, 0, 2, 0).unwrap(), 1);

        let enb = Engine::for_type("B2", 8).unwrap();
        let orderb =
            ConvexOrder::new(enb.datum(), WeylWord::from_indices(vec![0, 1, 0, 1])).unwrap();
        let ctxb = PbwContext::new(&enb, &orderb).unwrap();
        assert_eq!(max_simple_coefficient(&ctxb), 2);
        for j in 0..4usize {
            for k in (j + 1)..4 {
                for n in 1..=2u32 {
                    let idx = nilpotency_index_pair(&ctxb, j, k, n).unwrap();
                    assert!(
                        idx <= 2 * n + 1,
                        "B2 pair ({j},{k}) n={n}: witness {idx} exceeds bound {}",
                        2 * n + 1
                    );
                }
            }
        }
    }

    #[test]
    fn nilpotency_indices_b2() {
        let en = Engine::for_type("B2", 8).unwrap();
        let order =
            ConvexOrder::new(en.datum(), WeylWord::from_indices(vec![0, 1, 0, 1])).unwrap();
        let ctx = PbwContext::new(&en, &order).unwrap();
        // order roots: a1, a1+a2, a1+2a2, a2 (positions 0..3)
        // ad(F_{a1}) on F_{a2}: the a1-string through a2 has length 2
        let idx = nilpotency_index(&ctx, 0, &ctx.f_beta(3), 6).unwrap();
        assert_eq!(idx, 2);
        // ad(F_{a2}) on F_{a1}: ⟨α_1, α_2^∨⟩ = −2 gives index 3
        let idx2 = nilpotency_index(&ctx, 3, &ctx.f_beta(0), 6).unwrap();
        assert_eq!(idx2, 3);
    }

    #[test]
    fn pbw_ad_matches_engine_ad() {
        let en = Engine::for_type("A2", 8).unwrap();
        let order =
            ConvexOrder::new(en.datum(), WeylWord::from_indices(vec![0, 1, 0])).unwrap();
        let ctx = PbwContext::new(&en, &order).unwrap();
        let u = ctx.mul(&ctx.f_beta(2), &ctx.f_beta(1));
        for j in 0..3 {
            let pbw_side = pbw_ad(&ctx, j, &u).unwrap();
            let engine_side = ad(
                &en,
                ctx.roots().f_vec(j),
                &ctx.to_elem(&u).unwrap(),
            )
            .unwrap();
            assert_eq!(ctx.to_elem(&pbw_side).unwrap(), engine_side, "position {j}");
        }
    }
}

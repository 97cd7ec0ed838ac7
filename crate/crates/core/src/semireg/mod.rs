//! Dual-layer chains over a convex order.
//!
//! For a convex order `β_1 < … < β_r` coming from a reduced word, the span of
//! ordered monomials `F_{β_1}^{a_1} ⋯ F_{β_r}^{a_r}` has a graded dual with
//! basis the chain functionals labelled by layer exponents `(m_1, …, m_r)`:
//! the functional takes value one on the monomial with exactly those exponents
//! and zero on every other ordered monomial.  A tensor `u ⊗ f` with such a
//! functional can be rewritten layer by layer into a factored form in which
//! layer `k` contributes a tail `F_{β_k}^{−m_k−1} K_{β_k}`; the two directions
//! of that rewriting are [`phi_step`] (descent, functional layer to tail) and
//! [`psi_step`] (ascent, tail to functional layer), with mirrored versions for
//! functionals written on the other side of the algebra factor.
//!
//! Negative root vectors act on chain functionals by the transpose of right
//! multiplication, `(F_{β_j} · f)(x) = f(x · F_{β_j})`.  [`dual_act_f`]
//! computes that action layer by layer: at its own layer a root vector lowers
//! the layer index; across an outer layer `k > j` it emits, per adjoint level
//! `i`, the layer index `m_k + i` together with a carried image
//! `ad(F_{β_k})^i(F_{β_j})` scaled by `v_{β_k}^{−m_k(r+i)} [m_k+i ⌈ i]_{β_k}`
//! (`r = ⟨β_j, β_k^∨⟩`), which then acts on the inner layers.  These are the
//! same commutation data as the tail emission laws in [`crate::ore`], and the
//! tests certify both routes against each other and against direct transpose
//! evaluation on whole weight slices.
//!
//! Everything is exact.  Round trips of the structure maps are the identity on
//! the nose (the printed scalars cancel, which the tests assert element-wise),
//! and carried adjoint images are checked to stay strictly between the layer
//! positions they connect.

use crate::braid::pbw::{PbwContext, PbwElem};
use crate::cartan::{ConvexOrder, RootVec};
use crate::coeff::{q_binom_scalar, Scalar};
use crate::engine::{Elem, Engine};
use crate::error::{EngineError, Result};
use crate::ore::TailContext;
use crate::qcomm;

/// Cap on adjoint iteration when expanding a layer action; exceeding it means
/// the carried element is not nilpotent along the layer root, which falsifies
/// the directional assumptions of the chain construction.
const MAX_AD_LEVELS: usize = 24;

/// A convex order together with the straightening caches the chain maps need.
pub struct ChainContext<'a> {
    engine: &'a Engine,
    pbw: PbwContext<'a>,
}

impl<'a> ChainContext<'a> {
    pub fn new(engine: &'a Engine, order: &ConvexOrder) -> Result<ChainContext<'a>> {
        Ok(ChainContext {
            engine,
            pbw: PbwContext::new(engine, order)?,
        })
    }

    pub fn engine(&self) -> &'a Engine {
        self.engine
    }

    pub fn pbw(&self) -> &PbwContext<'a> {
        &self.pbw
    }

    /// Number of layer positions (the length of the reduced word).
    pub fn len(&self) -> usize {
        self.pbw.n_roots()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn root(&self, k: usize) -> &RootVec {
        self.pbw.order().root(k)
    }

    /// `(β_k | β_k)`.
    pub fn root_norm(&self, k: usize) -> i64 {
        let datum = self.engine().datum();
        datum.bilin(self.root(k), self.root(k))
    }

    /// The root vector `F_{β_k}`.
    pub fn f_root(&self, k: usize) -> &Elem {
        self.pbw.roots().f_vec(k)
    }

    /// `K_{β_k}`.
    pub fn k_root(&self, k: usize) -> Elem {
        self.engine().k(self.root(k))
    }

    /// `K_{β_k}^{−1}`.
    pub fn k_root_inv(&self, k: usize) -> Elem {
        let neg: RootVec = self.root(k).iter().map(|c| -c).collect();
        self.engine().k(&neg)
    }

    /// Tail context along the layer root `β_k`.
    pub fn tail(&self, k: usize) -> Result<TailContext<'a>> {
        TailContext::new(self.engine(), self.f_root(k).clone())
    }
}

/// Grading `γ = Σ_j m_j β_j` of the chain functional with layer exponents `m`.
pub fn chain_grading(cctx: &ChainContext<'_>, m: &[u32]) -> RootVec {
    let rank = cctx.engine().rank();
    let mut g = vec![0i32; rank];
    for (j, &mj) in m.iter().enumerate() {
        for (c, &r) in g.iter_mut().zip(cctx.root(j).iter()) {
            *c += mj as i32 * r;
        }
    }
    g
}

/// The chain functional with layer exponents `m` as a one-term combination.
/// Combinations of chain functionals share the tuple-keyed container of the
/// straightening layer: each term is a tuple of layer exponents with a scalar
/// coefficient, and the value on a basis monomial is the coefficient at the
/// monomial's exponent tuple.
pub fn chain_functional(m: &[u32]) -> PbwElem {
    PbwElem::monomial(m.to_vec(), Scalar::one())
}

fn conversion_exponent(cctx: &ChainContext<'_>, m: &[u32]) -> i64 {
    m.iter()
        .enumerate()
        .map(|(j, &mj)| (mj as i64 + 1) * cctx.root_norm(j))
        .sum()
}

/// Scalar `v^{−Σ_j ((m_j+1) β_j | β_j)}` picked up when a basis tensor with the
/// algebra factor on the left of the functional is rewritten with the
/// functional on the left.
pub fn left_to_right_scalar(cctx: &ChainContext<'_>, m: &[u32]) -> Scalar {
    Scalar::v_pow(-conversion_exponent(cctx, m))
}

/// Inverse of [`left_to_right_scalar`]: the scalar for the opposite rewriting.
pub fn right_to_left_scalar(cctx: &ChainContext<'_>, m: &[u32]) -> Scalar {
    Scalar::v_pow(conversion_exponent(cctx, m))
}

/// Tensor with the outermost layer factored off: `lead · F_{β_k}^{−m−1} K_{β_k}`
/// tensored against the inner layers.  The tail is recorded by its layer
/// exponent `m`; `lead` carries the algebra factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredStep {
    pub lead: Elem,
    pub m: u32,
}

/// Mirrored factored tensor: the inner layers tensored against
/// `K_{β_l} F_{β_l}^{−m−1} · lead`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredStepRight {
    pub m: u32,
    pub lead: Elem,
}

/// Descent at layer `k`: `u ⊗ f_m·g ↦ u · F_{β_k}^{−m−1} K_{β_k} ⊗ (1 ⊗ g)`.
pub fn phi_step(_cctx: &ChainContext<'_>, _k: usize, u: &Elem, m: u32) -> FactoredStep {
    FactoredStep { lead: u.clone(), m }
}

/// The factored tail rewritten with its `K` carried to the left:
/// `lead · F_β^{−m−1} K_β = (v^{−(m+1)(β|β)} · lead · K_β) · F_β^{−(m+1)}`.
/// Returns the rewritten lead and the bare tail exponent `m + 1`, the shape
/// [`psi_step`] consumes.
pub fn ascent_form(cctx: &ChainContext<'_>, k: usize, step: &FactoredStep) -> Result<(Elem, u32)> {
    let e = (step.m as i64 + 1) * cctx.root_norm(k);
    let lead = cctx
        .engine()
        .mul(&step.lead, &cctx.k_root(k))?
        .scale(&Scalar::v_pow(-e));
    Ok((lead, step.m + 1))
}

/// Ascent at layer `k`:
/// `u′ · F_{β_k}^{−n} ⊗ (1 ⊗ g) ↦ v^{n(β_k|β_k)} · u′ · K_{β_k}^{−1} ⊗ f_{n−1}·g`.
/// At `n = 0` the would-be layer index is `−1`, whose functional is zero, so
/// the image is `None`.
pub fn psi_step(
    cctx: &ChainContext<'_>,
    k: usize,
    u_prime: &Elem,
    n: u32,
) -> Result<Option<(Elem, u32)>> {
    if n == 0 {
        return Ok(None);
    }
    let e = n as i64 * cctx.root_norm(k);
    let lead = cctx
        .engine()
        .mul(u_prime, &cctx.k_root_inv(k))?
        .scale(&Scalar::v_pow(e));
    Ok(Some((lead, n - 1)))
}

/// Mirrored descent at layer `l`:
/// `g·f_m ⊗ u ↦ (g ⊗ 1) ⊗ K_{β_l} F_{β_l}^{−m−1} · u`.
pub fn phi_step_right(
    _cctx: &ChainContext<'_>,
    _l: usize,
    m: u32,
    u: &Elem,
) -> FactoredStepRight {
    FactoredStepRight { m, lead: u.clone() }
}

/// The mirrored tail rewritten with its `K` carried to the right:
/// `K_β F_β^{−m−1} · lead = F_β^{−(m+1)} · (v^{(m+1)(β|β)} · K_β · lead)`.
/// Returns the tail exponent `m` (the tail reads `F_β^{−m−1}`) and the
/// rewritten lead, the shape [`psi_step_right`] consumes.
pub fn ascent_form_right(
    cctx: &ChainContext<'_>,
    l: usize,
    step: &FactoredStepRight,
) -> Result<(u32, Elem)> {
    let e = (step.m as i64 + 1) * cctx.root_norm(l);
    let lead = cctx
        .engine()
        .mul(&cctx.k_root(l), &step.lead)?
        .scale(&Scalar::v_pow(e));
    Ok((step.m, lead))
}

/// Mirrored ascent at layer `l`:
/// `(g ⊗ 1) ⊗ F_{β_l}^{−m−1} · u′ ↦ v^{−((m+1)β_l|β_l)} · g·f_m ⊗ K_{β_l}^{−1} u′`.
pub fn psi_step_right(
    cctx: &ChainContext<'_>,
    l: usize,
    m: u32,
    u_prime: &Elem,
) -> Result<(u32, Elem)> {
    let e = (m as i64 + 1) * cctx.root_norm(l);
    let lead = cctx
        .engine()
        .mul(&cctx.k_root_inv(l), u_prime)?
        .scale(&Scalar::v_pow(-e));
    Ok((m, lead))
}

/// Nonzero iterated adjoint images `ad(F_{β_k})^i(F_{β_j})`, `i = 0, 1, …`.
fn ad_levels(cctx: &ChainContext<'_>, k: usize, j: usize) -> Result<Vec<Elem>> {
    let fk = cctx.f_root(k);
    let mut w = cctx.f_root(j).clone();
    let mut out = Vec::new();
    while !w.is_zero() {
        if out.len() > MAX_AD_LEVELS {
            return Err(EngineError::falsified(
                "adjoint chain along a layer root did not terminate",
            ));
        }
        out.push(w.clone());
        w = qcomm::ad(cctx.engine(), fk, &w)?;
    }
    Ok(out)
}

/// Outer-layer expansion of `F_{β_j}` acting across layer `k` (`j < k`) with
/// layer exponent `m`: for each adjoint level `i` with
/// `w_i = ad(F_{β_k})^i(F_{β_j}) ≠ 0`, emits the new layer index `m + i`
/// together with the carried element
/// `v_{β_k}^{−m(r+i)} [m+i ⌈ i]_{β_k} · w_i`, where `r = ⟨β_j, β_k^∨⟩`.
/// The carried element acts on the inner layers.
pub fn dual_layer_terms(
    cctx: &ChainContext<'_>,
    k: usize,
    j: usize,
    m: u32,
) -> Result<Vec<(u32, Elem)>> {
    if j >= k || k >= cctx.len() {
        return Err(EngineError::falsified(
            "layer expansion requires an inner position acting across an outer layer",
        ));
    }
    let tctx = cctx.tail(k)?;
    let r = tctx.r_of(cctx.f_root(j))?;
    let d = tctx.d();
    let levels = ad_levels(cctx, k, j)?;
    let mut out = Vec::with_capacity(levels.len());
    for (i, w) in levels.into_iter().enumerate() {
        let i64i = i as i64;
        let c = Scalar::v_pow(-(m as i64) * (r + i64i) * d)
            * q_binom_scalar(m as i64 + i64i, i as u32, d as u32);
        out.push((m + i as u32, w.scale(&c)));
    }
    Ok(out)
}

/// Left action of `F_{β_j}` on the chain functional with layer exponents `m`,
/// as a combination of chain functionals.  This is the transpose of right
/// multiplication: the result agrees with `x ↦ f(x · F_{β_j})` on every basis
/// monomial `x` (certified in the tests via [`dual_act_f_value`]).
pub fn dual_act_f(cctx: &ChainContext<'_>, j: usize, m: &[u32]) -> Result<PbwElem> {
    if m.len() != cctx.len() || j >= cctx.len() {
        return Err(EngineError::falsified(
            "layer exponents must cover the convex order and the acting position must be in range",
        ));
    }
    act_single(cctx, j, m)
}

/// Worker on a prefix of the layer positions: `m` covers layers `0 ⵈ k` with
/// `k = m.len() − 1`, and `j ≤ k` indexes the acting root vector.
fn act_single(cctx: &ChainContext<'_>, j: usize, m: &[u32]) -> Result<PbwElem> {
    let k = m.len() - 1;
    if j == k {
        // Same-root layer: composing with one more factor of `F_{β_k}` lowers
        // the layer index; index zero maps to the zero functional.
        if m[k] == 0 {
            return Ok(PbwElem::zero());
        }
        let mut t = m.to_vec();
        t[k] -= 1;
        return Ok(PbwElem::monomial(t, Scalar::one()));
    }
    let terms = dual_layer_terms(cctx, k, j, m[k])?;
    let mut out = PbwElem::zero();
    for (i, (layer, carried)) in terms.into_iter().enumerate() {
        let pw = cctx.pbw().from_negative_elem(&carried)?;
        for (tuple, c) in pw.terms() {
            for (p, &tp) in tuple.iter().enumerate() {
                if tp == 0 {
                    continue;
                }
                let inside = p < k && (i == 0 || p > j);
                if !inside {
                    return Err(EngineError::falsified(
                        "carried adjoint image escaped the open interval between layer positions",
                    ));
                }
            }
            // Act the carried monomial on the inner layers.  Transposing a
            // product reverses it, so the rightmost letter (highest position)
            // acts first, one root-vector factor at a time.
            let mut inner = PbwElem::monomial(m[..k].to_vec(), c.clone());
            'letters: for p in (0..k).rev() {
                for _ in 0..tuple[p] {
                    inner = apply_single(cctx, p, &inner)?;
                    if inner.is_zero() {
                        break 'letters;
                    }
                }
            }
            for (t_in, c_in) in inner.terms() {
                let mut t = t_in.clone();
                t.push(layer);
                out.add_term(t, c_in.clone());
            }
        }
    }
    Ok(out)
}

/// Extends [`act_single`] linearly to a combination of chain functionals.
fn apply_single(cctx: &ChainContext<'_>, p: usize, combo: &PbwElem) -> Result<PbwElem> {
    let mut out = PbwElem::zero();
    for (t, c) in combo.terms() {
        let part = act_single(cctx, p, t)?;
        for (t2, c2) in part.terms() {
            out.add_term(t2.clone(), c2.clone() * c.clone());
        }
    }
    Ok(out)
}

/// Independent evaluation of the layer action: the value of the chain
/// functional with exponents `m` on `x · F_{β_j}`, where `x` is the basis
/// monomial with exponents `x_tuple`.
pub fn dual_act_f_value(
    cctx: &ChainContext<'_>,
    j: usize,
    m: &[u32],
    x_tuple: &[u32],
) -> Result<Scalar> {
    let x = cctx.pbw().expand_tuple(x_tuple)?;
    let prod = cctx.engine().mul(&x, cctx.f_root(j))?;
    Ok(cctx.pbw().from_negative_elem(&prod)?.coeff(m))
}

/// Diagonal scalar of `K_μ` on the tensor of a chain functional with the unit
/// algebra factor: `v^{(γ + β_1 + … + β_r | μ)}`, where `γ` is the chain
/// grading.
pub fn k_dual_scalar(cctx: &ChainContext<'_>, mu: &[i32], m: &[u32]) -> Scalar {
    let mut g = chain_grading(cctx, m);
    for k in 0..cctx.len() {
        for (c, &r) in g.iter_mut().zip(cctx.root(k).iter()) {
            *c += r;
        }
    }
    Scalar::v_pow(cctx.engine().datum().bilin(&g, mu))
}

/// The same scalar assembled by carrying `K_μ` through every factored tail
/// `F_{β_k}^{−m_k−1} K_{β_k}` in turn.  Each per-tail exponent is certified
/// against the engine product identity
/// `K_μ · F_{β_k}^{m_k+1} = v^{−(m_k+1)(μ|β_k)} · F_{β_k}^{m_k+1} · K_μ`
/// before its sign is flipped for the negative power; the two conversion
/// scalars at the ends of the rewriting cancel and do not appear.
pub fn k_dual_scalar_by_carry(
    cctx: &ChainContext<'_>,
    mu: &[i32],
    m: &[u32],
) -> Result<Scalar> {
    let engine = cctx.engine();
    let kmu = engine.k(mu);
    let mut total = 0i64;
    for k in 0..cctx.len() {
        let e = (m[k] as i64 + 1) * engine.datum().bilin(mu, cctx.root(k));
        let fp = engine.pow(cctx.f_root(k), m[k] + 1)?;
        let lhs = engine.mul(&kmu, &fp)?;
        let rhs = engine.mul(&fp, &kmu)?.scale(&Scalar::v_pow(-e));
        if lhs != rhs {
            return Err(EngineError::falsified(
                "carried K-scalar disagreed with the engine product identity",
            ));
        }
        total += e;
    }
    Ok(Scalar::v_pow(total))
}

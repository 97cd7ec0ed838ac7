//! Verma modules, duals, twisted Vermas, deformed intertwiner chains and
//! linkage closure.
//!
//! The objects here are *weight models*: families of finite-dimensional
//! weight slices below a base character, with the generator action given
//! by exact matrices over [`Scalar`](crate::coeff::Scalar).  The central
//! construction is [`ChainModel`]: the twisted Verma module `T_w M(λ)`
//! realized on exponent tuples over a convex order whose first `l(w)`
//! positions carry localized tails `F_β^{(−a)}F_β^{−1}`.  Generator
//! matrices are assembled by commuting the braid-twisted generator
//! across the tail chain with the crossing laws from [`cross`].
//!
//! Everything downstream reuses the same slice interface:
//! * [`model`] — the [`WeightModel`] trait, plain Verma models, module
//!   axioms certification and exact intertwiner solving;
//! * [`dual`] — graded duals acting through the twisted antipode, and
//!   the longest-twist/dual comparison;
//! * [`sl2`] — the rank-1 catalogue (finite quotients, the short exact
//!   sequence, the explicit duality map);
//! * [`jantzen`] — deformed coefficient maps, valuation tables, the
//!   filtration layer characters and the character sum rule;
//! * [`linkage`] — closure of a weight under the dot reflections that
//!   admit nonzero maps between the corresponding Vermas.

pub mod chain;
pub mod cross;
pub mod dual;
pub mod functor;
pub mod jantzen;
pub mod linkage;
pub mod model;
pub mod sl2;

pub use chain::{ChainModel, DescPbw};
pub use cross::{absorb_left_f, cross_divided, cross_neg_one, cross_plain, q_commute_factor};
pub use dual::{duality_check_w0, DualModel, DualityReport};
pub use functor::StepModel;
pub use jantzen::{
    a_coeff, jantzen_maps, jantzen_sum, JantzenData, JantzenSlice, JantzenStep, StepKind,
};
pub use linkage::{linkage_closure, verma_homs_exist};
pub use model::{
    act_elem, axioms_check, elem_matrix, model_character, solve_intertwiner, IntertwinerSolve,
    VermaModel, WeightModel,
};
pub use sl2::{sl2_duality_map, sl2_ses_check, Sl2Finite};

use crate::cartan::{height, RootDatum, RootVec, WeightChar};

/// All offsets `ν ∈ N^rank` with `height(ν) == h`.
pub(crate) fn slices_of_height(rank: usize, h: i64) -> Vec<RootVec> {
    fn rec(rank: usize, h: i64, cur: &mut RootVec, out: &mut Vec<RootVec>) {
        if cur.len() + 1 == rank {
            cur.push(h as i32);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for c in 0..=h {
            cur.push(c as i32);
            rec(rank, h - c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if rank == 0 {
        return out;
    }
    rec(rank, h, &mut Vec::new(), &mut out);
    out
}

/// All offsets `ν ∈ N^rank` with `0 ≤ height(ν) ≤ cutoff`, by height.
pub(crate) fn slices_up_to(rank: usize, cutoff: i64) -> Vec<RootVec> {
    let mut out = Vec::new();
    for h in 0..=cutoff {
        out.extend(slices_of_height(rank, h));
    }
    out
}

/// All exponent tuples `t ∈ N^n` with `Σ t_j · roots[j] == target`.
pub(crate) fn tuples_with_sum(roots: &[RootVec], target: &RootVec) -> Vec<Vec<u32>> {
    fn rec(roots: &[RootVec], pos: usize, rem: &mut RootVec, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == roots.len() {
            if rem.iter().all(|&c| c == 0) {
                out.push(cur.clone());
            }
            return;
        }
        let root = &roots[pos];
        // Remaining positions can only add nonnegative multiples, so cap the
        // exponent by the coordinate-wise quotient.
        let mut cap = i32::MAX;
        for (i, &c) in root.iter().enumerate() {
            if c > 0 {
                cap = cap.min(rem[i] / c);
            }
        }
        if cap == i32::MAX {
            cap = 0;
        }
        for t in 0..=cap {
            if t > 0 {
                for (i, &c) in root.iter().enumerate() {
                    rem[i] -= c;
                }
            }
            cur.push(t as u32);
            rec(roots, pos + 1, rem, cur, out);
            cur.pop();
            if t == cap {
                for (i, &c) in root.iter().enumerate() {
                    rem[i] += t * c;
                }
            }
        }
    }
    if target.iter().any(|&c| c < 0) {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(roots, 0, &mut target.clone(), &mut Vec::new(), &mut out);
    out
}

/// Strictly positive reflection exponent of `λ` across the positive root
/// `β`: returns `Some(m)` when `v^ρ λ(K_β) = ± v_β^m` with `m > 0` and the
/// value is an honest monomial (no deformation or generic parameters).
///
/// This is the gate for a nonzero non-isomorphism map between `M(λ)` and
/// `M(s_β.λ)`: the coefficient `a_m` along the `β`-string degenerates
/// exactly when the exponent is a positive integer multiple of `d_β`.
pub fn reflection_exponent(datum: &RootDatum, lambda: &WeightChar, beta: &RootVec) -> Option<i64> {
    let m = lambda.rho_shifted_eval(datum, beta);
    if !m.is_integral() {
        return None;
    }
    let d = datum.root_d(beta);
    if m.v_exp % d != 0 {
        return None;
    }
    let e = m.v_exp / d;
    if e > 0 {
        Some(e)
    } else {
        None
    }
}

/// The set `Φ⁺(λ)` of positive roots with a strictly positive reflection
/// exponent, in the fixed height-sorted order of the root system.
pub fn linked_roots(datum: &RootDatum, lambda: &WeightChar) -> Vec<RootVec> {
    datum
        .positive_roots()
        .into_iter()
        .filter(|beta| reflection_exponent(datum, lambda, beta).is_some())
        .collect()
}

/// Height of a slice offset (sum of simple-root coordinates).
pub(crate) fn offset_height(nu: &RootVec) -> i64 {
    height(nu)
}

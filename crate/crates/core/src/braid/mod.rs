//! Braid-group operators on the algebra and the root vectors they
//! generate.
//!
//! `braid_op(engine, i, false)` is the automorphism `R_i` acting by
//!
//! * `R_i(E_i) = −F_i K_i`, `R_i(F_i) = −K_i^{−1} E_i`,
//! * `R_i(E_j) = Σ_{r+s=−a_ij} (−1)^s v_i^{−s} E_i^{(r)} E_j E_i^{(s)}` for `j ≠ i`,
//! * `R_i(F_j) = Σ_{r+s=−a_ij} (−1)^s v_i^{s} F_i^{(s)} F_j F_i^{(r)}`,
//! * `R_i(K_μ) = K_{s_i μ}`,
//!
//! with the inverse mirroring the divided powers to the other side. These
//! satisfy the braid relations, so a reduced word for a Weyl-group element
//! gives a well-defined operator `R_w`.
//!
//! For a convex order from a reduced word `w_0 = s_{i_1} ⋯ s_{i_N}`, the
//! root vectors are `F_{β_j} = R_{i_1} ⋯ R_{i_{j−1}}(F_{α_{i_j}})`; each
//! lies in `U_v^-` with weight `−β_j`.

pub mod pbw;

use crate::cartan::{neg_vec, ConvexOrder, WeylWord};
use crate::coeff::Scalar;
use crate::engine::{Elem, Engine, GeneratorMap, NormalMono};
use crate::error::{EngineError, Result};

/// The braid operator `R_i` (or its inverse) as a generator map.
pub fn braid_op(engine: &Engine, i: usize, inverse: bool) -> Result<GeneratorMap> {
    let rank = engine.rank();
    let datum = engine.datum();
    let d2 = 2 * datum.d(i);
    let alpha_i = datum.simple_root(i);
    let mut e_images = Vec::with_capacity(rank);
    let mut f_images = Vec::with_capacity(rank);
    for j in 0..rank {
        if j == i {
            if !inverse {
                // R_i(E_i) = −F_i K_i,  R_i(F_i) = −K_i^{−1} E_i
                let mut me = NormalMono::unit(rank);
                me.f_word.push(i);
                me.k = alpha_i.clone();
                e_images.push(Elem::monomial(me, -Scalar::one()));
                let mut mf = NormalMono::unit(rank);
                mf.k = neg_vec(&alpha_i);
                mf.e_word.push(i);
                f_images.push(Elem::monomial(mf, -Scalar::one()));
            } else {
                // R_i^{−1}(E_i) = −K_i^{−1} F_i = −v^{2d_i} F_i K_i^{−1}
                let mut me = NormalMono::unit(rank);
                me.f_word.push(i);
                me.k = neg_vec(&alpha_i);
                e_images.push(Elem::monomial(me, -Scalar::v_pow(d2)));
                // R_i^{−1}(F_i) = −E_i K_i = −v^{−2d_i} K_i E_i
                let mut mf = NormalMono::unit(rank);
                mf.k = alpha_i.clone();
                mf.e_word.push(i);
                f_images.push(Elem::monomial(mf, -Scalar::v_pow(-d2)));
            }
            continue;
        }
        let a_ij = datum.cartan_entry(i, j);
        let top = (-a_ij) as u32;
        let d_i = datum.d(i);
        let mut e_img = Elem::zero();
        let mut f_img = Elem::zero();
        for s in 0..=top {
            let r = top - s;
            let sign = if s % 2 == 0 {
                Scalar::one()
            } else {
                -Scalar::one()
            };
            // divided powers go on the left of E_j for R_i, on the right
            // for R_i^{-1} (and mirrored for F_j)
            let (e_factors, f_factors) = if !inverse {
                (
                    [engine.e_divided(i, r), engine.e(j), engine.e_divided(i, s)],
                    [engine.f_divided(i, s), engine.f(j), engine.f_divided(i, r)],
                )
            } else {
                (
                    [engine.e_divided(i, s), engine.e(j), engine.e_divided(i, r)],
                    [engine.f_divided(i, r), engine.f(j), engine.f_divided(i, s)],
                )
            };
            let e_term = engine.mul_many(&e_factors)?;
            let f_term = engine.mul_many(&f_factors)?;
            e_img = e_img + e_term.scale(&(sign.clone() * Scalar::v_pow(-d_i * s as i64)));
            f_img = f_img + f_term.scale(&(sign * Scalar::v_pow(d_i * s as i64)));
        }
        e_images.push(e_img);
        f_images.push(f_img);
    }
    let k_rows = (0..rank)
        .map(|j| {
            let mut e_j = vec![0; rank];
            e_j[j] = 1;
            datum.reflect_simple(&e_j, i)
        })
        .collect();
    let label = if inverse {
        format!("R{}^-1", i + 1)
    } else {
        format!("R{}", i + 1)
    };
    Ok(GeneratorMap::new(label, e_images, f_images, k_rows, false))
}

/// Apply `R_w` for `w = s_{i_1} ⋯ s_{i_k}`: operators compose with the
/// leftmost letter outermost, so letters act right to left.
pub fn apply_braid_word(engine: &Engine, word: &WeylWord, x: &Elem) -> Result<Elem> {
    let mut acc = x.clone();
    for &i in word.indices().iter().rev() {
        let op = braid_op(engine, i, false)?;
        acc = op.apply(engine, &acc)?;
    }
    Ok(acc)
}

/// Apply `R_w^{−1}` (inverse letters in reverse order).
pub fn apply_braid_word_inv(engine: &Engine, word: &WeylWord, x: &Elem) -> Result<Elem> {
    let mut acc = x.clone();
    for &i in word.indices() {
        let op = braid_op(engine, i, true)?;
        acc = op.apply(engine, &acc)?;
    }
    Ok(acc)
}

/// The root vectors attached to a convex order, with certified weights.
pub struct RootVectors {
    order: ConvexOrder,
    f_vecs: Vec<Elem>,
    e_vecs: Vec<Elem>,
}

impl RootVectors {
    /// Compute all `F_{β_j}` and `E_{β_j}` for the order, checking that
    /// each `F_{β_j}` is a pure `F`-element of weight `−β_j` (and dually).
    pub fn new(engine: &Engine, order: &ConvexOrder) -> Result<RootVectors> {
        let rank = engine.rank();
        let mut f_vecs = Vec::with_capacity(order.len());
        let mut e_vecs = Vec::with_capacity(order.len());
        for j in 0..order.len() {
            let letter = order.word().indices()[j];
            let prefix = WeylWord::from_indices(order.word().indices()[..j].to_vec());
            let f = apply_braid_word(engine, &prefix, &engine.f(letter))?;
            let e = apply_braid_word(engine, &prefix, &engine.e(letter))?;
            let beta = order.root(j);
            if !f.is_negative_part() || f.weight(rank)? != neg_vec(beta) {
                return Err(EngineError::falsified(format!(
                    "root vector F[{}] is not a pure F-element of weight -{:?}: {}",
                    j, beta, f
                )));
            }
            let e_ok = f.weight(rank)? == neg_vec(beta)
                && e.weight(rank)? == beta.clone()
                && e.terms().all(|(m, _)| {
                    m.f_word.is_empty() && m.k.iter().all(|&c| c == 0)
                });
            if !e_ok {
                return Err(EngineError::falsified(format!(
                    "root vector E[{}] is not a pure E-element of weight {:?}: {}",
                    j, beta, e
                )));
            }
            f_vecs.push(f);
            e_vecs.push(e);
        }
        Ok(RootVectors {
            order: order.clone(),
            f_vecs,
            e_vecs,
        })
    }

    pub fn order(&self) -> &ConvexOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.f_vecs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f_vecs.is_empty()
    }

    pub fn f_vec(&self, j: usize) -> &Elem {
        &self.f_vecs[j]
    }

    pub fn e_vec(&self, j: usize) -> &Elem {
        &self.e_vecs[j]
    }

    /// `F_{β_j}^n` expanded in the algebra.
    pub fn f_power(&self, engine: &Engine, j: usize, n: u32) -> Result<Elem> {
        engine.pow(&self.f_vecs[j], n)
    }

    /// `F_{β_j}^{(n)} = F_{β_j}^n / [n]_{d_β}!` expanded in the algebra.
    pub fn f_divided_power(&self, engine: &Engine, j: usize, n: u32) -> Result<Elem> {
        let d = engine.datum().root_d(self.order.root(j)) as u32;
        let fact = crate::coeff::q_factorial(n, d);
        Ok(self
            .f_power(engine, j, n)?
            .scale(&Scalar::from_laurent(&fact).inv()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(en: &Engine) -> Vec<Elem> {
        let mut g = Vec::new();
        for i in 0..en.rank() {
            g.push(en.e(i));
            g.push(en.f(i));
            g.push(en.k_gen(i));
        }
        g
    }

    #[test]
    fn rank_one_images() {
        let en = Engine::for_type("A1", 6).unwrap();
        let r = braid_op(&en, 0, false).unwrap();
        let ek = en.mul(&en.f(0), &en.k(&[1])).unwrap();
        assert_eq!(r.apply(&en, &en.e(0)).unwrap(), -ek);
        let ke = en.mul(&en.k(&[-1]), &en.e(0)).unwrap();
        assert_eq!(r.apply(&en, &en.f(0)).unwrap(), -ke);
        assert_eq!(r.apply(&en, &en.k(&[1])).unwrap(), en.k(&[-1]));
    }

    #[test]
    fn braid_inverse_round_trip() {
        for name in ["A2", "B2"] {
            let en = Engine::for_type(name, 8).unwrap();
            for i in 0..2 {
                let r = braid_op(&en, i, false).unwrap();
                let r_inv = braid_op(&en, i, true).unwrap();
                for x in gens(&en) {
                    let a = r_inv.apply(&en, &r.apply(&en, &x).unwrap()).unwrap();
                    let b = r.apply(&en, &r_inv.apply(&en, &x).unwrap()).unwrap();
                    assert_eq!(a, x, "{name}: R{i}⁻¹R{i} on {x}");
                    assert_eq!(b, x, "{name}: R{i}R{i}⁻¹ on {x}");
                }
            }
        }
    }

    #[test]
    fn braid_ops_are_homomorphisms() {
        for name in ["A2", "B2"] {
            let en = Engine::for_type(name, 8).unwrap();
            for i in 0..2 {
                let r = braid_op(&en, i, false).unwrap();
                let gs = gens(&en);
                for x in &gs {
                    for y in &gs {
                        let lhs = r.apply(&en, &en.mul(x, y).unwrap()).unwrap();
                        let rhs = en
                            .mul(&r.apply(&en, x).unwrap(), &r.apply(&en, y).unwrap())
                            .unwrap();
                        assert_eq!(lhs, rhs, "{name}: R{i} on product {x} · {y}");
                    }
                }
            }
        }
    }

    #[test]
    fn braid_relation_a2() {
        let en = Engine::for_type("A2", 8).unwrap();
        let lhs_word = WeylWord::from_indices(vec![0, 1, 0]);
        let rhs_word = WeylWord::from_indices(vec![1, 0, 1]);
        for x in gens(&en) {
            let lhs = apply_braid_word(&en, &lhs_word, &x).unwrap();
            let rhs = apply_braid_word(&en, &rhs_word, &x).unwrap();
            assert_eq!(lhs, rhs, "R1R2R1 ≠ R2R1R2 on {x}");
        }
    }

    #[test]
    fn braid_relation_b2() {
        let en = Engine::for_type("B2", 10).unwrap();
        let lhs_word = WeylWord::from_indices(vec![0, 1, 0, 1]);
        let rhs_word = WeylWord::from_indices(vec![1, 0, 1, 0]);
        for x in gens(&en) {
            let lhs = apply_braid_word(&en, &lhs_word, &x).unwrap();
            let rhs = apply_braid_word(&en, &rhs_word, &x).unwrap();
            assert_eq!(lhs, rhs, "braid relation fails on {x}");
        }
    }

    #[test]
    fn word_inverse_round_trip() {
        let en = Engine::for_type("A2", 8).unwrap();
        let w = WeylWord::from_indices(vec![0, 1]);
        let x = en.mul(&en.f(0), &en.e(1)).unwrap();
        let there = apply_braid_word(&en, &w, &x).unwrap();
        let back = apply_braid_word_inv(&en, &w, &there).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn a2_root_vector_values() {
        let en = Engine::for_type("A2", 8).unwrap();
        let order = ConvexOrder::new(
            en.datum(),
            WeylWord::from_indices(vec![0, 1, 0]),
        )
        .unwrap();
        let rv = RootVectors::new(&en, &order).unwrap();
        assert_eq!(rv.f_vec(0), &en.f(0));
        assert_eq!(rv.f_vec(2), &en.f(1));
        // F_{a1+a2} = R_1(F_2) = F_2 F_1 − v F_1 F_2
        let mut expect = Elem::zero();
        let m21 = NormalMono {
            f_word: vec![1, 0],
            k: vec![0, 0],
            e_word: vec![],
        };
        let m12 = NormalMono {
            f_word: vec![0, 1],
            k: vec![0, 0],
            e_word: vec![],
        };
        expect.add_term(m21, Scalar::one());
        expect.add_term(m12, -Scalar::v_pow(1));
        assert_eq!(rv.f_vec(1), &expect);
    }

    #[test]
    fn root_vectors_certified_for_all_longest_words() {
        for name in ["A2", "B2", "A3"] {
            let en = Engine::for_type(name, 10).unwrap();
            let w0 = WeylWord::longest_element(en.datum());
            for word in w0.reduced_words(en.datum()) {
                let order = ConvexOrder::new(en.datum(), word).unwrap();
                // construction runs the purity and weight certificates
                let rv = RootVectors::new(&en, &order).unwrap();
                assert_eq!(rv.len(), en.datum().num_positive_roots());
            }
        }
    }
}

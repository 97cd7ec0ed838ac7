//! Algebra and anti-algebra maps defined by their values on generators.
//!
//! A [`GeneratorMap`] stores the image of each `E_i` and `F_i` as an
//! element, plus an integer-lattice matrix for `K`. Applying it to a
//! normal monomial multiplies generator images in order (reversed for
//! anti-homomorphisms). Stock maps:
//!
//! * `omega`  — the involution `E_i ↦ F_i`, `F_i ↦ E_i`, `K_μ ↦ K_{−μ}`;
//! * `antipode` / `antipode_inv` — the antipode `S` and its inverse;
//! * `tau`    — the transpose anti-involution fixing `E_i` and `F_i`
//!   with `K_μ ↦ K_{−μ}`.

use crate::cartan::RootVec;
use crate::error::Result;

use super::{Elem, Engine, NormalMono};
use crate::coeff::Scalar;

#[derive(Clone, Debug)]
pub struct GeneratorMap {
    label: String,
    e_images: Vec<Elem>,
    f_images: Vec<Elem>,
    /// Row `i` is the lattice image of `α_i`, so `K_{α_i} ↦ K_{rows[i]}`.
    k_rows: Vec<RootVec>,
    anti: bool,
}

impl GeneratorMap {
    pub fn new(
        label: impl Into<String>,
        e_images: Vec<Elem>,
        f_images: Vec<Elem>,
        k_rows: Vec<RootVec>,
        anti: bool,
    ) -> GeneratorMap {
        let rank = k_rows.len();
        assert_eq!(e_images.len(), rank);
        assert_eq!(f_images.len(), rank);
        assert!(k_rows.iter().all(|r| r.len() == rank));
        GeneratorMap {
            label: label.into(),
            e_images,
            f_images,
            k_rows,
            anti,
        }
    }

    fn neg_identity(rank: usize) -> Vec<RootVec> {
        (0..rank)
            .map(|i| {
                let mut r = vec![0; rank];
                r[i] = -1;
                r
            })
            .collect()
    }

    /// `ω`: swaps `E_i ↔ F_i`, sends `K_μ ↦ K_{−μ}`; a homomorphism.
    pub fn omega(rank: usize) -> GeneratorMap {
        GeneratorMap::new(
            "omega",
            (0..rank).map(|i| Elem::gen_f(rank, i)).collect(),
            (0..rank).map(|i| Elem::gen_e(rank, i)).collect(),
            Self::neg_identity(rank),
            false,
        )
    }

    /// The antipode `S`: `S(E_i) = −K_i^{−1}E_i`, `S(F_i) = −F_iK_i`,
    /// `S(K_μ) = K_{−μ}`; an anti-homomorphism.
    pub fn antipode(engine: &Engine) -> GeneratorMap {
        let rank = engine.rank();
        let e_images = (0..rank)
            .map(|i| {
                let mut m = NormalMono::unit(rank);
                m.k = engine.datum().simple_root(i);
                for c in m.k.iter_mut() {
                    *c = -*c;
                }
                m.e_word.push(i);
                Elem::monomial(m, -Scalar::one())
            })
            .collect();
        let f_images = (0..rank)
            .map(|i| {
                let mut m = NormalMono::unit(rank);
                m.f_word.push(i);
                m.k = engine.datum().simple_root(i);
                Elem::monomial(m, -Scalar::one())
            })
            .collect();
        GeneratorMap::new("antipode", e_images, f_images, Self::neg_identity(rank), true)
    }

    /// `S^{−1}`: `S^{−1}(E_i) = −E_iK_i^{−1}`, `S^{−1}(F_i) = −K_iF_i`.
    pub fn antipode_inv(engine: &Engine) -> GeneratorMap {
        let rank = engine.rank();
        let e_images = (0..rank)
            .map(|i| {
                let d2 = 2 * engine.datum().d(i);
                let mut m = NormalMono::unit(rank);
                m.k = engine.datum().simple_root(i);
                for c in m.k.iter_mut() {
                    *c = -*c;
                }
                m.e_word.push(i);
                Elem::monomial(m, -Scalar::v_pow(d2))
            })
            .collect();
        let f_images = (0..rank)
            .map(|i| {
                let d2 = 2 * engine.datum().d(i);
                let mut m = NormalMono::unit(rank);
                m.f_word.push(i);
                m.k = engine.datum().simple_root(i);
                Elem::monomial(m, -Scalar::v_pow(-d2))
            })
            .collect();
        GeneratorMap::new(
            "antipode_inv",
            e_images,
            f_images,
            Self::neg_identity(rank),
            true,
        )
    }

    /// `τ`: fixes `E_i` and `F_i`, sends `K_μ ↦ K_{−μ}`; an
    /// anti-homomorphism.
    pub fn tau(rank: usize) -> GeneratorMap {
        GeneratorMap::new(
            "tau",
            (0..rank).map(|i| Elem::gen_e(rank, i)).collect(),
            (0..rank).map(|i| Elem::gen_f(rank, i)).collect(),
            Self::neg_identity(rank),
            true,
        )
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_anti(&self) -> bool {
        self.anti
    }

    pub fn e_image(&self, i: usize) -> &Elem {
        &self.e_images[i]
    }

    pub fn f_image(&self, i: usize) -> &Elem {
        &self.f_images[i]
    }

    pub fn k_image(&self, mu: &[i32]) -> RootVec {
        let rank = self.k_rows.len();
        let mut out = vec![0i32; rank];
        for (i, &c) in mu.iter().enumerate() {
            for j in 0..rank {
                out[j] += c * self.k_rows[i][j];
            }
        }
        out
    }

    /// Image of a whole element. Generator images multiply in the monomial
    /// order for homomorphisms and in reverse for anti-homomorphisms.
    pub fn apply(&self, engine: &Engine, x: &Elem) -> Result<Elem> {
        let mut out = Elem::zero();
        for (m, c) in x.terms() {
            let mut factors: Vec<&Elem> = Vec::new();
            let k_img = Elem::k_elem(self.k_image(&m.k));
            if self.anti {
                factors.extend(m.e_word.iter().rev().map(|&i| &self.e_images[i]));
                factors.push(&k_img);
                factors.extend(m.f_word.iter().rev().map(|&i| &self.f_images[i]));
            } else {
                factors.extend(m.f_word.iter().map(|&i| &self.f_images[i]));
                factors.push(&k_img);
                factors.extend(m.e_word.iter().map(|&i| &self.e_images[i]));
            }
            let mut prod = engine.one();
            for f in factors {
                prod = engine.mul(&prod, f)?;
            }
            out = out + prod.scale(c);
        }
        Ok(out)
    }

    /// Composition `self ∘ other` as a new generator map (images of the
    /// outer map applied to the inner images).
    pub fn compose(&self, engine: &Engine, other: &GeneratorMap) -> Result<GeneratorMap> {
        let rank = self.k_rows.len();
        let mut e_images = Vec::with_capacity(rank);
        let mut f_images = Vec::with_capacity(rank);
        for i in 0..rank {
            e_images.push(self.apply(engine, &other.e_images[i])?);
            f_images.push(self.apply(engine, &other.f_images[i])?);
        }
        let k_rows = (0..rank).map(|i| self.k_image(&other.k_rows[i])).collect();
        Ok(GeneratorMap::new(
            format!("{}∘{}", self.label, other.label),
            e_images,
            f_images,
            k_rows,
            self.anti != other.anti,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Engine {
        Engine::for_type("A2", 8).unwrap()
    }

    fn sample_elems(en: &Engine) -> Vec<Elem> {
        vec![
            en.e(0),
            en.f(1),
            en.k(&[1, -1]),
            en.mul(&en.e(0), &en.f(0)).unwrap(),
            en.mul(&en.f(0), &en.mul(&en.f(1), &en.e(0)).unwrap()).unwrap(),
        ]
    }

    #[test]
    fn omega_is_an_involution_and_hom() {
        let en = a2();
        let w = GeneratorMap::omega(2);
        for x in sample_elems(&en) {
            let back = w.apply(&en, &w.apply(&en, &x).unwrap()).unwrap();
            assert_eq!(back, x);
        }
        let (a, b) = (en.mul(&en.e(0), &en.f(1)).unwrap(), en.f(0));
        let lhs = w.apply(&en, &en.mul(&a, &b).unwrap()).unwrap();
        let rhs = en
            .mul(&w.apply(&en, &a).unwrap(), &w.apply(&en, &b).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn antipode_inverse_and_antihom() {
        let en = a2();
        let s = GeneratorMap::antipode(&en);
        let s_inv = GeneratorMap::antipode_inv(&en);
        for x in sample_elems(&en) {
            let a = s_inv.apply(&en, &s.apply(&en, &x).unwrap()).unwrap();
            let b = s.apply(&en, &s_inv.apply(&en, &x).unwrap()).unwrap();
            assert_eq!(a, x);
            assert_eq!(b, x);
        }
        let (a, b) = (en.e(0), en.mul(&en.f(0), &en.k(&[0, 1])).unwrap());
        let lhs = s.apply(&en, &en.mul(&a, &b).unwrap()).unwrap();
        let rhs = en
            .mul(&s.apply(&en, &b).unwrap(), &s.apply(&en, &a).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn tau_is_an_anti_involution() {
        let en = a2();
        let t = GeneratorMap::tau(2);
        for x in sample_elems(&en) {
            let back = t.apply(&en, &t.apply(&en, &x).unwrap()).unwrap();
            assert_eq!(back, x);
        }
        let (a, b) = (en.e(0), en.f(0));
        let lhs = t.apply(&en, &en.mul(&a, &b).unwrap()).unwrap();
        let rhs = en
            .mul(&t.apply(&en, &b).unwrap(), &t.apply(&en, &a).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn antipode_on_ef_products() {
        let en = a2();
        let s = GeneratorMap::antipode(&en);
        // S(E_1 F_1) = S(F_1) S(E_1) = (−F_1 K_1)(−K_1^{−1} E_1) = F_1 E_1
        let x = en.mul(&en.e(0), &en.f(0)).unwrap();
        let img = s.apply(&en, &x).unwrap();
        assert_eq!(img, en.mul(&en.f(0), &en.e(0)).unwrap());
    }

    #[test]
    fn stau_omega_composite_matches_rank_one_braid_images() {
        let en = a2();
        let s = GeneratorMap::antipode(&en);
        let t = GeneratorMap::tau(2);
        let w = GeneratorMap::omega(2);
        let composite = s.compose(&en, &t.compose(&en, &w).unwrap()).unwrap();
        // On E_i the composite gives −F_i K_i; on F_i it gives −K_i^{−1} E_i.
        for i in 0..2 {
            let alpha = en.datum().simple_root(i);
            let mut m = NormalMono::unit(2);
            m.f_word.push(i);
            m.k = alpha.clone();
            assert_eq!(
                composite.apply(&en, &en.e(i)).unwrap(),
                Elem::monomial(m, -Scalar::one())
            );
            let mut m2 = NormalMono::unit(2);
            m2.k = alpha.iter().map(|&c| -c).collect();
            m2.e_word.push(i);
            assert_eq!(
                composite.apply(&en, &en.f(i)).unwrap(),
                Elem::monomial(m2, -Scalar::one())
            );
        }
    }
}

//! Deterministic random generation of test data: coefficients, letter
//! words, and homogeneous elements. Everything is driven by an explicit
//! seed so failures reproduce exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cartan::RootVec;
use crate::coeff::{LaurentPoly, Scalar, Q};
use crate::engine::{Elem, Engine, NormalMono};
use crate::error::Result;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn int_range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// A nonzero Laurent polynomial in `v` with small integer coefficients
    /// and exponents in `[-max_deg, max_deg]`.
    pub fn laurent(&mut self, max_deg: i64, max_terms: usize) -> LaurentPoly {
        loop {
            let mut p = LaurentPoly::zero();
            let terms = self.rng.gen_range(1..=max_terms.max(1));
            for _ in 0..terms {
                let e = self.rng.gen_range(-max_deg..=max_deg);
                let c = self.rng.gen_range(-3i64..=3);
                p = p + LaurentPoly::monomial(e, Q::from_integer(c.into()));
            }
            if !p.is_zero() {
                return p;
            }
        }
    }

    pub fn scalar(&mut self, max_deg: i64, max_terms: usize) -> Scalar {
        Scalar::from_laurent(&self.laurent(max_deg, max_terms))
    }

    /// A uniformly random letter word of the given length over the rank.
    pub fn word(&mut self, rank: usize, len: usize) -> Vec<usize> {
        (0..len).map(|_| self.rng.gen_range(0..rank)).collect()
    }

    /// A random weight in the positive cone with height in `[1, max_ht]`.
    pub fn positive_weight(&mut self, rank: usize, max_ht: i64) -> RootVec {
        let ht = self.rng.gen_range(1..=max_ht);
        let mut nu = vec![0i32; rank];
        for _ in 0..ht {
            nu[self.rng.gen_range(0..rank)] += 1;
        }
        nu
    }

    /// A random homogeneous element of `U_v^-` of weight `−ν`: a
    /// combination of canonical basis words at `ν` with random nonzero
    /// Laurent coefficients.
    pub fn negative_elem(&mut self, engine: &Engine, nu: &RootVec, max_terms: usize) -> Result<Elem> {
        let basis = engine.negative_basis(nu)?;
        let rank = engine.rank();
        let mut out = Elem::zero();
        let take = self.rng.gen_range(1..=max_terms.min(basis.len()).max(1));
        for _ in 0..take {
            let w = &basis[self.rng.gen_range(0..basis.len())];
            let mut m = NormalMono::unit(rank);
            m.f_word = w.clone();
            out.add_term(m, self.scalar(3, 3));
        }
        if out.is_zero() {
            // coefficients can cancel when the same word is drawn twice
            let mut m = NormalMono::unit(rank);
            m.f_word = basis[0].clone();
            out.add_term(m, Scalar::one());
        }
        Ok(out)
    }

    /// A random homogeneous element with fixed `F`-content and `E`-content
    /// and varying `K` parts (all of one weight).
    pub fn mixed_elem(
        &mut self,
        engine: &Engine,
        f_content: &RootVec,
        e_content: &RootVec,
        max_terms: usize,
    ) -> Result<Elem> {
        let rank = engine.rank();
        let f_basis = engine.negative_basis(f_content)?;
        let e_basis = engine.negative_basis(e_content)?;
        let mut out = Elem::zero();
        for _ in 0..max_terms.max(1) {
            let mut m = NormalMono::unit(rank);
            m.f_word = f_basis[self.rng.gen_range(0..f_basis.len())].clone();
            m.e_word = e_basis[self.rng.gen_range(0..e_basis.len())].clone();
            for c in m.k.iter_mut() {
                *c = self.rng.gen_range(-1i32..=1);
            }
            out.add_term(m, self.scalar(2, 2));
        }
        if out.is_zero() {
            let mut m = NormalMono::unit(rank);
            m.f_word = f_basis[0].clone();
            m.e_word = e_basis[0].clone();
            out.add_term(m, Scalar::one());
        }
        Ok(out)
    }
}

//! The coefficient tower.
//!
//! Everything downstream computes over a single field: multivariate rational
//! functions over Q in the quantum parameter `v`, the deformation variable
//! `X`, and finitely many weight parameters `z1, z2, ...`. Three layers:
//!
//! * [`Q`] — arbitrary-precision rationals (re-exported from `num`).
//! * [`LaurentPoly`] — Laurent polynomials in `v` alone, the natural home of
//!   q-integers, q-factorials and Gaussian binomials.
//! * [`MPoly`] / [`Scalar`] — sparse multivariate polynomials and their
//!   fraction field with canonical forms: `gcd(num, den) = 1`, denominator
//!   integer-primitive with positive leading coefficient under graded-lex
//!   order (`v < X < z1 < ...`).
//!
//! The localizations used downstream (Laurent rings, `[2][3]`-inverted rings,
//! the local ring at `X = 1`) are *predicates on canonical forms*, not
//! separate data structures: see [`Scalar::to_laurent`],
//! [`Scalar::is_a_prime`] and [`Scalar::valuation_at_x1`].

mod laurent;
mod mpoly;
mod parse;
mod qnum;
mod scalar;

pub use laurent::LaurentPoly;
pub use mpoly::{Mono, MPoly};
pub use parse::parse_scalar;
pub use qnum::{k_bracket, q_binom, q_binom_scalar, q_factorial, q_int};
pub use scalar::Scalar;

/// Arbitrary-precision rational numbers.
pub type Q = num::BigRational;

/// Variable indices inside [`Mono`] exponent vectors.
pub const VAR_V: usize = 0;
pub const VAR_X: usize = 1;

/// Index of the weight parameter `z{k}` (1-based `k`).
pub fn var_z(k: usize) -> usize {
    debug_assert!(k >= 1);
    1 + k
}

/// Human-readable variable name for a [`Mono`] index.
pub fn var_name(idx: usize) -> String {
    match idx {
        VAR_V => "v".to_string(),
        VAR_X => "X".to_string(),
        k => format!("z{}", k - 1),
    }
}

pub(crate) fn q_zero() -> Q {
    use num::Zero;
    Q::zero()
}

pub(crate) fn q_one() -> Q {
    use num::One;
    Q::one()
}

//! Exact symbolic computation for quantized enveloping algebras at a
//! generic parameter.
//!
//! The crate is organized as a tower:
//!
//! * [`coeff`] — exact coefficient arithmetic: rationals, Laurent
//!   polynomials in `v`, and the multivariate rational-function field
//!   `Q(v, X, z1..zn)` with `(X-1)`-adic valuations.
//! * [`cartan`] — finite Cartan data (types A/B/C/D and products), root
//!   systems, Weyl-group words, convex orders from reduced words, and
//!   deformed weight characters.
//! * [`engine`] — the algebra itself: normal-form elements
//!   `F-monomial * K * E-monomial`, exact multiplication via cached
//!   weight-space echelon bases for the Serre ideal.
//! * [`braid`] — Lusztig symmetries, root vectors attached to reduced
//!   words, and PBW straightening.
//! * [`qcomm`] — graded `v`-commutators, the two twisted adjoint actions,
//!   and divided-power commutation formulas.
//! * [`ore`] — Ore localization at a root vector: commuting elements into
//!   negative-power tails.
//! * [`semireg`] — the tail-chain normalizer used to present twisted
//!   modules on explicit bases.
//! * [`verma`] — highest-weight modules, their twists, dualities, Jantzen
//!   filtrations, and the linkage order.
//!
//! Everything is exact: no floating point, no truncation without an error.

pub mod braid;
pub mod cartan;
pub mod coeff;
pub mod engine;
pub mod error;
pub mod linalg;
pub mod ore;
pub mod qcomm;
pub mod sample;
pub mod semireg;

pub use braid::{
    apply_braid_word, apply_braid_word_inv, braid_op,
    pbw::{PbwContext, PbwElem},
    RootVectors,
};
pub use cartan::{
    verma_character,
    CharCombo, Character, CompMono, ConvexOrder, RootDatum, RootVec, WeightChar, WeylWord,
};
pub use coeff::{
    k_bracket, parse_scalar, q_binom, q_binom_scalar, q_factorial, q_int, LaurentPoly, MPoly,
    Scalar, Q,
};
pub use engine::{parse_elem, Elem, Engine, GeneratorMap, NormalMono};
pub use error::{EngineError, Result};
pub use linalg::Matrix;
pub use ore::{
    commute_into_tail, k_bracket_elem, LocalizedTail, LocalizedVerma, Side, TailContext, TailSum,
};
pub use qcomm::{ad, nilpotency_index, nilpotency_index_pair, straighten_pair, tilde_ad, vcomm};
pub use sample::Sampler;
pub use semireg::{
    chain_functional, chain_grading, dual_act_f, dual_act_f_value, dual_layer_terms,
    k_dual_scalar, k_dual_scalar_by_carry, left_to_right_scalar, phi_step, phi_step_right,
    psi_step, psi_step_right, right_to_left_scalar, ChainContext, FactoredStep,
    FactoredStepRight,
};

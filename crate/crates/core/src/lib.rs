//! Exact-arithmetic kernels around the Johnson filtration of Aut(F_n):
//! reduced words in free groups, truncated noncommutative series and the
//! Magnus embedding, the free Lie algebra on a Lyndon basis with Witt ranks,
//! the Magnus/McCool generators of IA_n with their relation verifiers,
//! Johnson homomorphism values in the derivation algebra, and closed-form
//! rank tables. Everything computes over arbitrary-precision integers; no
//! floating point anywhere.

pub mod automorphisms;
pub mod error;
pub mod freegroup;
pub mod intmat;
pub mod johnson;
pub mod lielyndon;
pub mod magnus;
pub mod parse;
pub mod ranks;
pub mod tensorseries;

pub use automorphisms::{alpha, big_a, rho, AutLetter, AutWord, Endomorphism, SubgroupSpec};
pub use error::{Error, Result};
pub use freegroup::{AbelianVector, Letter, Word};
pub use johnson::{tau, Derivation, JohnsonDegree};
pub use lielyndon::{lie_bracket, lie_to_lyndon, lyndon_words, witt_rank, LieElement, LyndonWord};
pub use magnus::{filtration_degree, leading_lie, magnus_expand, FiltrationDegree};
pub use parse::{parse_aut_expr, parse_word, AutExpr};
pub use tensorseries::{Monomial, Series};

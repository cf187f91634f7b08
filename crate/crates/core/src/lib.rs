//! Exact computations with the two rational forms of the cyclotomic double
//! shuffle Lie algebra: the classical form on the alphabet `X = {x0, x_z}` and
//! the congruent form on the alphabet `X~ = {x~, x~_a}`, together with the
//! Fourier-type isomorphism between them, Galois descent, distribution
//! relations and floating-point checks of the underlying series identities.
//!
//! Letters are encoded as small integers. Code `0` is `x0` (resp. `x~`); a code
//! `m` in `1..=N` is `x_{zeta^m}` (resp. `x~_{class of m}`), so code `N` stands
//! for `x1` (resp. the class of zero).

pub mod cyclo;
pub mod dist;
pub mod dshuffle;
pub mod error;
#[doc(hidden)]
pub mod fault;
pub mod linalg;
pub mod maps;
pub mod numeric;
pub mod products;
pub mod series;
pub mod subst;
pub mod suites;
pub mod words;

pub use cyclo::{CycContext, CycNum, GaloisElement};
pub use error::{Error, ParseError, Result};
pub use series::{Series, TensorSeries};
pub use words::{Alphabet, Word};

//! Exact computational algebra over small finite fields: cyclotomic coset
//! factorization with sparse-factor search, Yekhanin-style matching-vector
//! families and their homomorphism identities, dual-function hypercube
//! certification, width-functional covering-number bounds, and a q-query
//! locally decodable code with a simulated corruption channel.
//!
//! Everything on the algebraic path is exact: field elements are coordinate
//! vectors over F_r, character sums are integer multiplicities of roots of
//! unity, and the flagship certifications compare canonical forms with zero
//! tolerance. Floating point only enters the statistical estimators and the
//! complex-valued Fourier demos, with stated tolerances.
//!
//! Data-parallel loops run on rayon when the `parallel` feature (default) is
//! enabled and degrade to plain loops without it; either way results are
//! bit-identical.

pub mod character;
pub mod cyclotomic;
pub mod dualfn;
pub mod entropy;
pub mod error;
pub mod ext;
pub mod fp;
pub mod ldc;
pub mod matching;
pub mod poly;

pub(crate) mod par;

pub use character::{character_eval, CharacterValue};
pub use error::{Error, Result};
pub use ext::{ExtElem, ExtField};
pub use fp::{mult_order, FpVec, PrimeModulus};
pub use poly::{PolyFr, SparsePoly};

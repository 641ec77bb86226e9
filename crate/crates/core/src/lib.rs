//! Exact computational commutative algebra over quotients of multivariate
//! polynomial rings: Groebner bases, minimal free resolutions, Ext/Tor,
//! Bass invariants, Auslander-Bridger transposes, and the classification
//! machinery for tilting and cotilting classes cut out by sequences of
//! specialization-closed sets of primes.

pub mod arith;
pub mod classify;
pub mod cmserre;
pub mod error;
pub mod factor;
pub mod fpmod;
pub mod gb;
pub mod homology;
pub mod ideal;
pub mod invariants;
pub mod monomial;
pub mod poly;
pub mod resolution;
pub mod support;
pub mod text;
pub mod transpose;
pub mod ring;

pub use arith::{FieldElem, FieldKind};
pub use error::{Error, Result};
pub use monomial::{Monomial, MonomialOrder, OrderKind};
pub use poly::Poly;

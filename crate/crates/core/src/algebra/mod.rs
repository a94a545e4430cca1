//! Exact arithmetic: rationals, prime and extension fields, polynomials.

pub mod element;
pub mod extension;
pub mod factor;
pub mod field;
pub mod linalg;
pub mod multipoly;
pub mod rational;
pub mod unipoly;

pub use element::{field_arith, ArithOp, FieldElement, FieldSpec};
pub use extension::{make_extension, ExtElem, ExtField, Subfield};
pub use factor::{factor_univariate, roots_in_field, splitting_degree};
pub use field::{is_prime, Field, FiniteField, PrimeField, RationalField};
pub use multipoly::{Monomial, MonomialOrder, MultiPoly, PolyRing};
pub use rational::Rational;
pub use unipoly::{squarefree_check, UniPoly};

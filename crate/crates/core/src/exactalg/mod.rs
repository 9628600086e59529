//! Exact arithmetic substrate.
//!
//! Rationals are [`num_rational::BigRational`]. On top of that live small
//! number fields (degree at most 4, plus cyclotomic fields built directly
//! from their cyclotomic polynomial), sparse univariate Laurent polynomials
//! over a number field, integer Laurent polynomials for Kazhdan–Lusztig
//! work, finite fields `F_{l^r}` with table arithmetic, and reduction maps
//! from characteristic 0 to characteristic `l`.

mod cyclotomic;
mod error;
mod finfield;
mod laurent;
pub mod matrix;
mod numfield;
mod poly;
mod rational;
mod reduction;
mod ring;

pub use cyclotomic::{cyclotomic_polynomial, Cyclotomic};
pub use error::ExactError;
pub use finfield::{FieldEmbedding, FiniteField, FiniteFieldElem, FfRef};
pub use laurent::LaurentPoly;
pub use numfield::{field_create, FieldRef, NumberField, NumberFieldElem};
pub use poly::{poly_eval, Poly};
pub use rational::{rat, rat_to_string, valuation, Rational};
pub use reduction::{reduce, ReductionMap};
pub use ring::{LaurentRing, Ring};

//! Exact machinery for Kazhdan–Lusztig cells, Iwahori–Hecke algebra
//! decomposition numbers, unipotent supports and dimension-polynomial
//! registries on small Weyl groups and small groups of Lie type.
//!
//! Everything is computed exactly: rationals with arbitrary precision,
//! small number fields, integer Laurent polynomials and finite fields.
//! The [`verify`] module glues the pieces into scenario reports.

pub mod combinat;
pub mod coxeter;
pub mod degrees;
pub mod exactalg;
pub mod hecke;
pub mod kl;
pub mod lietype;
pub mod meataxe;
pub mod verify;

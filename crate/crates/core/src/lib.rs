//! Exact computations on the miniversal deformation of the cusp germ
//! `x^2 - y^3 - z^2 + w^3` over Q(eps), eps a primitive cube root of unity.
//!
//! Layers, bottom up: [`cyclo`] (the coefficient field), [`poly`] (sparse
//! polynomials, parsing, division), [`singularity`] (Tjurina algebras,
//! the miniversal family, singular loci), [`verifier`] (the three-node
//! locus, the family F_a and the map g), [`blowup`] (strict transforms and
//! the flop construction) and [`report`] (check suites for the CLI).

pub mod blowup;
pub mod cyclo;
pub mod matrix;
pub mod numeric;
pub mod poly;
pub mod report;
pub mod singularity;
pub mod verifier;

pub use cyclo::{ArithError, Cyclo, Rational};
pub use poly::{Monomial, PolyError, Polynomial, Table, VarTable};

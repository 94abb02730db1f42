//! Exact computer algebra for sparse Laurent polynomials under monomial
//! substitution.
//!
//! The library is organized in layers:
//!
//! * [`coeff`] — exact scalars: rationals, univariate rational functions and
//!   cyclotomic numbers modulo `Phi_N`.
//! * [`lattice`] — integer linear algebra: Hermite/Smith normal forms,
//!   lattice intersection, kernel groups of isogenies and their factorization
//!   through subgroups.
//! * [`laurent`] — sparse Laurent polynomials, monomial pullbacks `F(x^A, z)`
//!   and line specializations `F(t^a, z)`.
//! * [`parse`] — the text format for polynomials and matrices.
//! * [`factor`] — exact factorization over `Q`, `Q(t)[z^±1]` and related
//!   rings, plus cyclotomic- and constant-part extraction.
//! * [`toric`] — the pipelines built on top: degree-drop sets, kernel actions
//!   on factors, the three-alternative irreducibility checker and
//!   certificate search for specialization families.
//!
//! All arithmetic is exact; every factorization result carries enough data to
//! reconstruct its input and the test suite asserts that it does.

pub mod coeff;
pub mod factor;
pub mod lattice;
pub mod laurent;
pub mod parse;
pub mod toric;

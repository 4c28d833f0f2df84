//! Multidimensional continued fraction algorithms, their S-adic substitutive
//! realizations, Rauzy fractals, and the verification machinery around them:
//! balanced-pair runs, Pisot certification, effective geometric coincidence,
//! Lyapunov exponents and bounded-remainder diagnostics.
//!
//! Everything combinatorial is exact: words and substitutions over `{1,…,d}`,
//! big-integer incidence matrices and cocycle products, rational simplex
//! points. Numerical diagnostics (Lyapunov estimates, density histograms,
//! raster tiling checks) run in `f64` with seeds recorded.

pub mod bigfloat;
pub mod directive;
pub mod dynamics;
pub mod matrix;
pub mod mcf;
pub mod rauzy;
pub mod simplex;
pub mod spectral;
pub mod substitution;
pub mod word;

pub use bigfloat::BigFloat;
pub use directive::DirectiveSequence;
pub use matrix::{IntMatrix, SmallIntMatrix};
pub use mcf::{CellLabel, ExpansionRecord, MCFAlgorithm};
pub use simplex::SimplexPoint;
pub use substitution::Substitution;
pub use word::{abelianize, AbelianVector, Letter, Word};

//! Spectral verification: characteristic polynomials, Pisot certification,
//! the balanced-pair algorithm, effective geometric coincidence, and the
//! bounded-deviation word construction.

mod bpa;
mod charpoly;
mod gcc;
mod pisot;
mod tijdeman;

pub use bpa::{bpa_run, decompose, BalancedPair, BpaResult, BpaVerdict};
pub use charpoly::{char_poly, IntPoly};
pub use gcc::{effective_gcc, gcc_grid_search, GccConfig, GccWitness};
pub use pisot::{pisot_certify, PisotCertificate, RootEnclosure};
pub use tijdeman::tijdeman_word;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpectralError {
    #[error("flags undecidable at {bits} bits of precision")]
    IndeterminatePrecision { bits: u32 },
    #[error("lattice enumeration exceeds budget of {budget} points")]
    EnumerationTooLarge { budget: usize },
    #[error("no word satisfying the deviation bound was found")]
    SearchExhausted,
    #[error("polynomial must be monic with integer coefficients")]
    NotMonic,
    #[error("bad input: {0}")]
    BadInput(String),
    #[error(transparent)]
    Sadic(#[from] crate::directive::SadicError),
}

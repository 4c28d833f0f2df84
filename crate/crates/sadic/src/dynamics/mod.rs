//! Numerical dynamics diagnostics: Lyapunov exponents of algorithm cocycles,
//! letter-count discrepancy of limit words, the Cassaigne–Selmer invariant
//! density, torus translations, and the natural-coding cross-check.
//!
//! Everything here is Monte Carlo or trajectory-based and runs in f64; seeds
//! and precisions are recorded in every report so runs reproduce exactly.

mod density;
mod discrepancy;
mod lyapunov;
mod rng;
mod torus;

pub use density::{
    cs_analytic_cell_mass, cs_density_histogram, cs_invariant_density, DensityCell, DensityReport,
};
pub use discrepancy::{letter_discrepancy, DiscrepancyTrace};
pub use lyapunov::{lyapunov, lyapunov_periodic, LyapunovEstimate, PeriodicLyapunov};
pub use rng::SplitMix64;
pub use torus::{coding_consistency, CodingReport, ProjectionSign, TorusTranslation};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum DynamicsError {
    #[error("algorithm {0} has no Lebesgue-generic invariant measure to sample")]
    UnsupportedMeasure(String),
    #[error("orbit sampling failed after {0} restarts")]
    OrbitSampling(usize),
    #[error("cloud or word too sparse: have {have}, need {need}")]
    TooSparse { have: usize, need: usize },
    #[error(transparent)]
    Sadic(#[from] crate::directive::SadicError),
    #[error(transparent)]
    Rauzy(#[from] crate::rauzy::RauzyError),
    #[error(transparent)]
    Mcf(#[from] crate::mcf::McfError),
}

//! Empirical vs analytic invariant density for the Cassaigne–Selmer map.
//!
//! In the `(x₁, x₃)` chart the simplex is the triangle `x₁, x₃ ≥ 0,
//! x₁ + x₃ ≤ 1` and the invariant probability density is proportional to
//! `1/((1−x₁)(1−x₃))`. The probability normalization over that triangle is
//! `6/π²`: the integral of `1/((1−x₁)(1−x₃))` over the triangle is `π²/6`
//! (published statements sometimes carry the constant `12/π²`, which
//! normalizes the half-domain cut along the symmetry `x₁ ↔ x₃`; over the
//! full simplex it integrates to 2, and the orbit histogram settles the
//! question empirically — see the tests).
//!
//! Cell masses have a closed form through the dilogarithm, cross-checked
//! against midpoint quadrature in tests.

use serde::Serialize;

use super::rng::SplitMix64;
use super::DynamicsError;
use crate::mcf::MCFAlgorithm;

/// Normalization of `1/((1−x₁)(1−x₃))` as a probability density w.r.t.
/// Lebesgue measure in the `(x₁, x₃)` chart of the full simplex.
pub const CS_DENSITY_NORMALIZATION: f64 = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);

/// Invariant probability density of the Cassaigne–Selmer map in the
/// `(x₁, x₃)` chart.
pub fn cs_invariant_density(x1: f64, x3: f64) -> f64 {
    CS_DENSITY_NORMALIZATION / ((1.0 - x1) * (1.0 - x3))
}

#[derive(Debug, Clone, Serialize)]
pub struct DensityCell {
    pub i: usize,
    pub j: usize,
    pub x1_range: (f64, f64),
    pub x3_range: (f64, f64),
    pub empirical: f64,
    pub analytic: f64,
    pub relative_error: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DensityReport {
    pub steps: usize,
    pub grid: usize,
    pub seed: u64,
    pub burn_in: usize,
    pub cells: Vec<DensityCell>,
    pub analytic_total: f64,
    pub max_relative_error: f64,
}

const BURN_IN: usize = 1_000;

/// Runs a long Cassaigne–Selmer orbit and compares the `(x₁, x₃)` histogram
/// on a `grid × grid` partition of the triangle against the exact analytic
/// cell masses.
pub fn cs_density_histogram(
    steps: usize,
    grid: usize,
    seed: u64,
) -> Result<DensityReport, DynamicsError> {
    let cs = MCFAlgorithm::cassaigne_selmer();
    let mut rng = SplitMix64::stream(seed, 0);
    let mut x = rng.next_simplex(3);
    for _ in 0..BURN_IN.min(steps) {
        cs.step_f64_in_place(&mut x)?;
    }
    let mut hist = vec![0u64; grid * grid];
    for _ in 0..steps {
        cs.step_f64_in_place(&mut x)?;
        let i = ((x[0] * grid as f64) as usize).min(grid - 1);
        let j = ((x[2] * grid as f64) as usize).min(grid - 1);
        hist[i * grid + j] += 1;
    }
    let mut cells = Vec::new();
    let mut analytic_total = 0.0;
    let mut max_rel = 0.0f64;
    let h = 1.0 / grid as f64;
    for i in 0..grid {
        for j in 0..grid {
            let (a, b) = (i as f64 * h, (i + 1) as f64 * h);
            let (c, d) = (j as f64 * h, (j + 1) as f64 * h);
            let analytic = cs_analytic_cell_mass(a, b, c, d);
            analytic_total += analytic;
            if analytic <= 0.0 {
                continue; // cell outside the triangle
            }
            let empirical = if steps > 0 {
                hist[i * grid + j] as f64 / steps as f64
            } else {
                0.0
            };
            let relative_error = (empirical - analytic).abs() / analytic;
            if steps > 0 {
                max_rel = max_rel.max(relative_error);
            }
            cells.push(DensityCell {
                i,
                j,
                x1_range: (a, b),
                x3_range: (c, d),
                empirical,
                analytic,
                relative_error,
            });
        }
    }
    Ok(DensityReport {
        steps,
        grid,
        seed,
        burn_in: BURN_IN.min(steps),
        cells,
        analytic_total,
        max_relative_error: max_rel,
    })
}

/// Exact mass of the invariant measure on `[a,b] × [c,d] ∩ {x₁ + x₃ < 1}`,
/// through the closed form
/// `∫ dx₁/(1−x₁) ∫ dx₃/(1−x₃) = [ln(1−c) − ln(max(1−d, x₁))]`-type terms and
/// the dilogarithm for the diagonal-clipped part.
pub fn cs_analytic_cell_mass(a: f64, b: f64, c: f64, d: f64) -> f64 {
    // clip to the triangle footprint
    let b = b.min(1.0 - c);
    if b <= a {
        return 0.0;
    }
    // inner integral over x₃ from c to min(d, 1−x₁):
    //   ln(1−c) − ln(max(1−d, x₁))
    // split the x₁ range at 1−d where the min switches branch
    let split = (1.0 - d).clamp(a, b);
    let mut mass = 0.0;
    // x₁ ∈ [a, split]: full height d
    if split > a {
        mass += (ln1m(c) - ln1m(d)) * (ln1m(a) - ln1m(split));
    }
    // x₁ ∈ [split, b]: height 1−x₁, inner = ln(1−c) − ln(x₁)
    if b > split {
        let part = ln1m(c) * (ln1m(split) - ln1m(b)) - (dilog(1.0 - b) - dilog(1.0 - split));
        mass += part;
    }
    CS_DENSITY_NORMALIZATION * mass
}

fn ln1m(x: f64) -> f64 {
    (1.0 - x).max(f64::MIN_POSITIVE).ln()
}

/// Dilogarithm Li₂(z) for z ∈ [0, 1], via the series on [0, 1/2] and the
/// Euler reflection on (1/2, 1].
fn dilog(z: f64) -> f64 {
    const PI2_6: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;
    if z <= 0.0 {
        return 0.0;
    }
    if z > 1.0 {
        return PI2_6;
    }
    if z > 0.5 {
        let w = 1.0 - z;
        if w == 0.0 {
            return PI2_6;
        }
        return PI2_6 - z.ln() * w.ln() - dilog(w);
    }
    let mut term = z;
    let mut sum = 0.0;
    for k in 1..200 {
        sum += term / (k * k) as f64;
        term *= z;
        if term < 1e-18 {
            break;
        }
    }
    sum
}

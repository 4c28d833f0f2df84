//! Rauzy fractals: generalized right eigenvectors, projections onto the
//! hyperplane 1⊥, tagged point clouds, raster tiling checks, and export.
//!
//! A cloud point is the projection `π'_u l(p)` of an abelianized prefix `p`
//! of `σ_[0,n)(j)`, tagged by the word that follows `p`. Tags of length 1
//! partition the cloud into the subtiles whose lattice translates should
//! tile 1⊥ exactly when the spectrum is purely discrete; the raster check
//! measures coverage and overlap of that candidate tiling at pixel level.

use std::collections::BTreeSet;
use std::io::Write;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::bigfloat::BigFloat;
use crate::directive::{DirectiveSequence, SadicError};
use crate::matrix::IntMatrix;
use crate::simplex::SimplexPoint;
use crate::word::{Letter, Word};

#[derive(Debug, Error)]
pub enum RauzyError {
    #[error("no positive cocycle product within window {window}")]
    NotPrimitive { window: usize },
    #[error("cloud has too few points ({have}, need {need})")]
    CloudTooSparse { have: usize, need: usize },
    #[error("operation requires d = {want}, got {got}")]
    UnsupportedDimension { want: usize, got: usize },
    #[error("point budget {budget} exceeded")]
    PointBudget { budget: usize },
    #[error(transparent)]
    Sadic(#[from] SadicError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Fixed color palette for letters (stable across runs).
pub const PALETTE: [[u8; 3]; 8] = [
    [68, 119, 170],
    [238, 102, 119],
    [34, 136, 51],
    [204, 187, 68],
    [102, 204, 238],
    [170, 51, 119],
    [187, 187, 187],
    [0, 0, 0],
];

// ---------------------------------------------------------------------------
// generalized right eigenvector

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EigenvectorMode {
    /// The expanded point of a CF-driven sequence.
    CfPoint,
    /// Perron vector of the period product of a periodic sequence.
    Periodic,
    /// Nested-cone iteration `M_{σ_[0,n)}·1` until stabilization.
    Cone,
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenvectorDiagnostics {
    pub mode: EigenvectorMode,
    /// Achieved sup-norm difference of successive normalized iterates.
    pub residual: f64,
    /// Iterations (periodic) or cocycle depth (cone).
    pub steps: usize,
    /// Perron-root estimate for periodic mode.
    pub lambda: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct RightEigenvector {
    pub point: SimplexPoint,
    pub diagnostics: EigenvectorDiagnostics,
}

const PRIMITIVITY_WINDOW: usize = 64;

/// Computes the generalized right eigenvector in the requested mode.
pub fn right_eigenvector(
    seq: &DirectiveSequence,
    mode: EigenvectorMode,
    tol: f64,
    prec: u32,
) -> Result<RightEigenvector, RauzyError> {
    match mode {
        EigenvectorMode::CfPoint => {
            let start = seq
                .cf_start()
                .ok_or(RauzyError::NotPrimitive { window: 0 })?;
            Ok(RightEigenvector {
                point: start,
                diagnostics: EigenvectorDiagnostics {
                    mode,
                    residual: 0.0,
                    steps: 0,
                    lambda: None,
                },
            })
        }
        EigenvectorMode::Periodic => {
            let period = seq
                .period_length()
                .ok_or(RauzyError::NotPrimitive { window: 0 })?;
            let m = seq.product(period)?;
            if !some_power_positive(&m, 4 * m.dim()) {
                return Err(RauzyError::NotPrimitive {
                    window: PRIMITIVITY_WINDOW,
                });
            }
            let (v, lambda, residual, steps) = perron_vector(&m, tol, prec);
            Ok(RightEigenvector {
                point: SimplexPoint::from_bigfloats_normalized(v)
                    .expect("Perron vector is nonnegative"),
                diagnostics: EigenvectorDiagnostics {
                    mode,
                    residual,
                    steps,
                    lambda: Some(lambda),
                },
            })
        }
        EigenvectorMode::Cone => {
            if !seq.primitive_within(PRIMITIVITY_WINDOW) {
                return Err(RauzyError::NotPrimitive {
                    window: PRIMITIVITY_WINDOW,
                });
            }
            let d = seq.dim() as usize;
            let mut prev: Option<Vec<BigFloat>> = None;
            let mut n = 1;
            loop {
                let m = seq.product(n)?;
                let col: Vec<BigFloat> = (0..d)
                    .map(|i| {
                        let s: BigInt = (0..d).map(|j| m[(i, j)].clone()).sum();
                        BigFloat::from_bigint(s, prec)
                    })
                    .collect();
                let norm = col.iter().fold(BigFloat::zero(prec), |a, c| a.add(c));
                let v: Vec<BigFloat> = col.iter().map(|c| c.div(&norm)).collect();
                if let Some(p) = &prev {
                    let res = v
                        .iter()
                        .zip(p)
                        .map(|(a, b)| a.sub(b).abs().to_f64())
                        .fold(0.0f64, f64::max);
                    if res < tol {
                        return Ok(RightEigenvector {
                            point: SimplexPoint::from_bigfloats_normalized(v)
                                .expect("cone iterate is nonnegative"),
                            diagnostics: EigenvectorDiagnostics {
                                mode,
                                residual: res,
                                steps: n,
                                lambda: None,
                            },
                        });
                    }
                }
                prev = Some(v);
                n += 1;
                if n > 4096 {
                    return Err(RauzyError::NotPrimitive { window: n });
                }
            }
        }
    }
}

/// Picks the natural mode for the sequence source.
pub fn right_eigenvector_auto(
    seq: &DirectiveSequence,
    tol: f64,
    prec: u32,
) -> Result<RightEigenvector, RauzyError> {
    if seq.cf_start().is_some() {
        right_eigenvector(seq, EigenvectorMode::CfPoint, tol, prec)
    } else if seq.period_length().is_some() {
        right_eigenvector(seq, EigenvectorMode::Periodic, tol, prec)
    } else {
        right_eigenvector(seq, EigenvectorMode::Cone, tol, prec)
    }
}

fn some_power_positive(m: &IntMatrix, cap: usize) -> bool {
    let mut p = m.clone();
    for _ in 0..cap {
        if p.is_positive() {
            return true;
        }
        p = p.mul(m);
    }
    false
}

fn perron_vector(m: &IntMatrix, tol: f64, prec: u32) -> (Vec<BigFloat>, f64, f64, usize) {
    let d = m.dim();
    let norm1 = |v: &[BigFloat]| v.iter().fold(BigFloat::zero(prec), |a, c| a.add(c));
    let mut v: Vec<BigFloat> =
        vec![BigFloat::from_ratio(&BigInt::from(1), &BigInt::from(d as i64), prec,); d];
    let mut lambda = 0.0f64;
    let mut residual = f64::MAX;
    let mut steps = 0;
    let tol = tol.max(2f64.powi(-(prec as i32) + 8));
    while steps < 40_000 {
        steps += 1;
        let mut w = vec![BigFloat::zero(prec); d];
        for i in 0..d {
            for j in 0..d {
                if m[(i, j)] != BigInt::from(0) {
                    let term = BigFloat::from_bigint(m[(i, j)].clone(), prec).mul(&v[j]);
                    w[i] = w[i].add(&term);
                }
            }
        }
        let norm = norm1(&w);
        lambda = norm.to_f64(); // ‖v‖₁ = 1 each round, so ‖Mv‖₁ estimates the root
        let w: Vec<BigFloat> = w.iter().map(|c| c.div(&norm)).collect();
        residual = w
            .iter()
            .zip(&v)
            .map(|(a, b)| a.sub(b).abs().to_f64())
            .fold(0.0f64, f64::max);
        v = w;
        if residual < tol {
            break;
        }
    }
    (v, lambda, residual, steps)
}

// ---------------------------------------------------------------------------
// projection frame

/// The direction `u`, an orthonormal basis of 1⊥, and the projection `π'_u`
/// along `u` onto 1⊥ (in R^d and in basis coordinates).
#[derive(Debug, Clone)]
pub struct ProjectionFrame {
    d: usize,
    pub precision_bits: u32,
    u: Vec<BigFloat>,
    u_f64: Vec<f64>,
    basis: Vec<Vec<BigFloat>>,
    basis_f64: Vec<Vec<f64>>,
}

impl ProjectionFrame {
    /// Builds the frame for a direction with ‖u‖₁ = 1; the basis comes from
    /// Gram–Schmidt on `{e_i − e_d}` in a fixed order, so exports are stable.
    pub fn new(u: &SimplexPoint, prec: u32) -> Self {
        let d = u.dim();
        let uf = u.to_bigfloat_vec(prec);
        let mut basis: Vec<Vec<BigFloat>> = Vec::with_capacity(d - 1);
        for i in 0..d - 1 {
            let mut v: Vec<BigFloat> = vec![BigFloat::zero(prec); d];
            v[i] = BigFloat::one(prec);
            v[d - 1] = BigFloat::from_i64(-1, prec);
            for b in &basis {
                let dot = dot_bf(&v, b, prec);
                for k in 0..d {
                    v[k] = v[k].sub(&dot.mul(&b[k]));
                }
            }
            let norm = dot_bf(&v, &v, prec).sqrt();
            for c in v.iter_mut() {
                *c = c.div(&norm);
            }
            basis.push(v);
        }
        ProjectionFrame {
            d,
            precision_bits: prec,
            u_f64: uf.iter().map(BigFloat::to_f64).collect(),
            basis_f64: basis
                .iter()
                .map(|b| b.iter().map(BigFloat::to_f64).collect())
                .collect(),
            u: uf,
            basis,
        }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn u_f64(&self) -> &[f64] {
        &self.u_f64
    }

    pub fn u_bigfloat(&self) -> &[BigFloat] {
        &self.u
    }

    pub fn basis_f64(&self) -> &[Vec<f64>] {
        &self.basis_f64
    }

    pub fn basis_bigfloat(&self) -> &[Vec<BigFloat>] {
        &self.basis
    }

    /// `π'_u v = v − ⟨1, v⟩·u` in R^d (high precision).
    pub fn project(&self, v: &[BigFloat]) -> Vec<BigFloat> {
        let prec = self.precision_bits;
        let total = v.iter().fold(BigFloat::zero(prec), |a, c| a.add(c));
        v.iter()
            .zip(&self.u)
            .map(|(c, u)| c.sub(&total.mul(u)))
            .collect()
    }

    pub fn project_f64(&self, v: &[f64]) -> Vec<f64> {
        let total: f64 = v.iter().sum();
        v.iter()
            .zip(&self.u_f64)
            .map(|(c, u)| c - total * u)
            .collect()
    }

    /// Basis coordinates of a vector already lying in 1⊥.
    pub fn to_basis_f64(&self, v: &[f64]) -> Vec<f64> {
        self.basis_f64
            .iter()
            .map(|b| b.iter().zip(v).map(|(bk, vk)| bk * vk).sum())
            .collect()
    }

    pub fn from_basis_f64(&self, coords: &[f64]) -> Vec<f64> {
        let mut v = vec![0.0; self.d];
        for (b, &c) in self.basis_f64.iter().zip(coords) {
            for k in 0..self.d {
                v[k] += c * b[k];
            }
        }
        v
    }

    /// Basis coordinates of `π'_u l(p)` for a prefix with counts `l` and
    /// length `len`; with ‖u‖₁ = 1 this is `l − len·u`.
    pub fn prefix_coords_f64(&self, counts: &[i64], len: i64) -> Vec<f64> {
        let v: Vec<f64> = counts
            .iter()
            .zip(&self.u_f64)
            .map(|(&c, u)| c as f64 - len as f64 * u)
            .collect();
        self.to_basis_f64(&v)
    }

    /// Sup norm of `π'_u l(p)` in R^d coordinates.
    pub fn prefix_supnorm_f64(&self, counts: &[i64], len: i64) -> f64 {
        counts
            .iter()
            .zip(&self.u_f64)
            .map(|(&c, u)| (c as f64 - len as f64 * u).abs())
            .fold(0.0, f64::max)
    }
}

fn dot_bf(a: &[BigFloat], b: &[BigFloat], prec: u32) -> BigFloat {
    a.iter()
        .zip(b)
        .fold(BigFloat::zero(prec), |acc, (x, y)| acc.add(&x.mul(y)))
}

// ---------------------------------------------------------------------------
// fractal clouds

#[derive(Debug, Clone, Serialize)]
pub struct CloudPoint {
    /// Coordinates in the 1⊥ basis (length d−1).
    pub coords: Vec<f64>,
    /// The length-m word following the prefix.
    pub tag: Word,
    /// Seed letter whose image produced this prefix.
    pub seed: Letter,
}

#[derive(Debug)]
pub struct FractalCloud {
    pub frame: ProjectionFrame,
    pub points: Vec<CloudPoint>,
    pub depth: usize,
    pub tag_len: usize,
    pub prefix_count: usize,
    /// Largest sup-norm of a projected prefix in R^d coordinates.
    pub max_supnorm: f64,
}

#[derive(Debug, Clone)]
pub struct CloudOptions {
    /// Seed letters to expand; `None` aggregates over the whole alphabet.
    pub seeds: Option<Vec<Letter>>,
    pub point_budget: usize,
    pub precision_bits: u32,
    /// Eigenvector tolerance for cone mode.
    pub tol: f64,
}

impl Default for CloudOptions {
    fn default() -> Self {
        CloudOptions {
            seeds: None,
            point_budget: 20_000_000,
            precision_bits: 192,
            tol: 1e-40,
        }
    }
}

/// Generates the depth-`n` cloud with tags of length `m`. One point per
/// prefix of `σ_[0,n)(j)` that is followed by at least `m` letters.
pub fn cloud(
    seq: &DirectiveSequence,
    n: usize,
    m: usize,
    options: &CloudOptions,
) -> Result<FractalCloud, RauzyError> {
    assert!(m >= 1, "tag length must be ≥ 1");
    let eig = right_eigenvector_auto(seq, options.tol, options.precision_bits)?;
    cloud_with_direction(seq, n, m, &eig.point, options)
}

/// Cloud generation with an explicit direction `u` (‖u‖₁ = 1).
pub fn cloud_with_direction(
    seq: &DirectiveSequence,
    n: usize,
    m: usize,
    u: &SimplexPoint,
    options: &CloudOptions,
) -> Result<FractalCloud, RauzyError> {
    let d = seq.dim();
    let frame = ProjectionFrame::new(u, options.precision_bits);
    let seeds: Vec<Letter> = match &options.seeds {
        Some(s) => s.clone(),
        None => (1..=d).collect(),
    };
    let mut points = Vec::new();
    let mut max_supnorm = 0.0f64;
    let mut prefix_count = 0usize;
    for &j in &seeds {
        let mut w = Word::letter(j);
        for t in (0..n).rev() {
            w = seq.substitution(t)?.apply(&w);
            if w.len() > options.point_budget {
                return Err(RauzyError::PointBudget {
                    budget: options.point_budget,
                });
            }
        }
        let letters = w.letters();
        let mut counts = vec![0i64; d as usize];
        for k in 0..letters.len() {
            if k + m <= letters.len() {
                let coords = frame.prefix_coords_f64(&counts, k as i64);
                max_supnorm = max_supnorm.max(frame.prefix_supnorm_f64(&counts, k as i64));
                points.push(CloudPoint {
                    coords,
                    tag: Word::from(&letters[k..k + m]),
                    seed: j,
                });
                prefix_count += 1;
                if points.len() > options.point_budget {
                    return Err(RauzyError::PointBudget {
                        budget: options.point_budget,
                    });
                }
            }
            counts[(letters[k] - 1) as usize] += 1;
        }
    }
    Ok(FractalCloud {
        frame,
        points,
        depth: n,
        tag_len: m,
        prefix_count,
        max_supnorm,
    })
}

impl FractalCloud {
    /// Fraction of points per first-tag letter.
    pub fn letter_fractions(&self) -> Vec<f64> {
        let d = self.frame.dim();
        let mut counts = vec![0usize; d];
        for p in &self.points {
            counts[(p.tag.letters()[0] - 1) as usize] += 1;
        }
        let total = self.points.len().max(1) as f64;
        counts.into_iter().map(|c| c as f64 / total).collect()
    }

    pub fn bounding_box(&self) -> (f64, f64, f64, f64) {
        let (mut min_x, mut min_y, mut max_x, mut max_y) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for p in &self.points {
            min_x = min_x.min(p.coords[0]);
            max_x = max_x.max(p.coords[0]);
            min_y = min_y.min(p.coords[1]);
            max_y = max_y.max(p.coords[1]);
        }
        (min_x, min_y, max_x, max_y)
    }
}

// ---------------------------------------------------------------------------
// raster tiling check

#[derive(Debug, Serialize)]
pub struct TilingRaster {
    pub resolution: usize,
    pub lattice_radius: i64,
    pub window: (f64, f64, f64, f64),
    pub coverage_fraction: f64,
    pub overlap_fraction: f64,
    pub claimed_pixels: usize,
    pub translate_count: usize,
    /// 0 = unclaimed, 1 = one (translate, letter) pair, 2 = two or more.
    #[serde(skip)]
    pub claim_counts: Vec<u8>,
    /// Letter of the first claim per pixel (0 when unclaimed), for rendering.
    #[serde(skip)]
    pub first_letter: Vec<u8>,
}

/// Rasterizes the cloud translated by lattice vectors of `Z^d ∩ 1⊥`
/// (coefficient box `|a|, |b| ≤ lattice_radius` on the generators
/// `(1,−1,0)` and `(0,1,−1)`) and measures coverage of the central window
/// and the fraction of pixels claimed by two or more (translate, letter)
/// pairs. Planar clouds (d = 3) only.
pub fn raster_tiling_check(
    cloud: &FractalCloud,
    lattice_radius: i64,
    resolution: usize,
) -> Result<TilingRaster, RauzyError> {
    if cloud.frame.dim() != 3 {
        return Err(RauzyError::UnsupportedDimension {
            want: 3,
            got: cloud.frame.dim(),
        });
    }
    let r = lattice_radius;
    let side = (2 * r + 1) as usize;
    let mut raster = TilingRaster {
        resolution,
        lattice_radius,
        window: (0.0, 0.0, 0.0, 0.0),
        coverage_fraction: 0.0,
        overlap_fraction: 0.0,
        claimed_pixels: 0,
        translate_count: side * side,
        claim_counts: vec![0u8; resolution * resolution],
        first_letter: vec![0u8; resolution * resolution],
    };
    if cloud.points.is_empty() {
        return Ok(raster);
    }
    let window = cloud.bounding_box();
    raster.window = window;
    let (min_x, min_y, max_x, max_y) = window;
    let (span_x, span_y) = (max_x - min_x, max_y - min_y);
    if span_x <= 0.0 || span_y <= 0.0 {
        return Ok(raster);
    }
    let g1 = cloud.frame.to_basis_f64(&[1.0, -1.0, 0.0]);
    let g2 = cloud.frame.to_basis_f64(&[0.0, 1.0, -1.0]);
    let mut first_pair = vec![0u32; resolution * resolution];
    for a in -r..=r {
        for b in -r..=r {
            let tx = a as f64 * g1[0] + b as f64 * g2[0];
            let ty = a as f64 * g1[1] + b as f64 * g2[1];
            let pair_base = (((a + r) as usize * side) + (b + r) as usize) as u32 * 256;
            for p in &cloud.points {
                let x = p.coords[0] + tx;
                let y = p.coords[1] + ty;
                if x < min_x || x >= max_x || y < min_y || y >= max_y {
                    continue;
                }
                let px = ((x - min_x) / span_x * resolution as f64) as usize;
                let py = ((y - min_y) / span_y * resolution as f64) as usize;
                let idx = py.min(resolution - 1) * resolution + px.min(resolution - 1);
                let letter = p.tag.letters()[0];
                let pair_id = pair_base + letter as u32 + 1;
                if first_pair[idx] == 0 {
                    first_pair[idx] = pair_id;
                    raster.claim_counts[idx] = 1;
                    raster.first_letter[idx] = letter;
                } else if first_pair[idx] != pair_id && raster.claim_counts[idx] == 1 {
                    raster.claim_counts[idx] = 2;
                }
            }
        }
    }
    let claimed = raster.claim_counts.iter().filter(|&&c| c >= 1).count();
    let overlapped = raster.claim_counts.iter().filter(|&&c| c >= 2).count();
    // interior coverage: central 80% of the window
    let lo = resolution / 10;
    let hi = resolution - lo;
    let mut interior = 0usize;
    let mut interior_claimed = 0usize;
    for py in lo..hi {
        for px in lo..hi {
            interior += 1;
            if raster.claim_counts[py * resolution + px] >= 1 {
                interior_claimed += 1;
            }
        }
    }
    raster.claimed_pixels = claimed;
    raster.coverage_fraction = if interior > 0 {
        interior_claimed as f64 / interior as f64
    } else {
        0.0
    };
    raster.overlap_fraction = if claimed > 0 {
        overlapped as f64 / claimed as f64
    } else {
        0.0
    };
    Ok(raster)
}

// ---------------------------------------------------------------------------
// export

/// Writes `x,y,tag` rows; `dedup` collapses points with identical coordinate
/// bit patterns and tags.
pub fn cloud_to_csv<W: Write>(
    cloud: &FractalCloud,
    out: &mut W,
    dedup: bool,
) -> Result<(), RauzyError> {
    writeln!(out, "x,y,tag")?;
    let mut seen = BTreeSet::new();
    for p in &cloud.points {
        if dedup {
            let key: (Vec<u64>, Word) = (
                p.coords.iter().map(|c| c.to_bits()).collect(),
                p.tag.clone(),
            );
            if !seen.insert(key) {
                continue;
            }
        }
        let coords: Vec<String> = p.coords.iter().map(|c| format!("{c}")).collect();
        writeln!(out, "{},{}", coords.join(","), p.tag)?;
    }
    Ok(())
}

/// Scatter SVG with one small circle per point, colored by first tag letter.
pub fn cloud_to_svg<W: Write>(
    cloud: &FractalCloud,
    out: &mut W,
    size: usize,
) -> Result<(), RauzyError> {
    if cloud.points.is_empty() {
        writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\"/>"
        )?;
        return Ok(());
    }
    let (min_x, min_y, max_x, max_y) = cloud.bounding_box();
    let span = (max_x - min_x).max(max_y - min_y).max(1e-12);
    let scale = (size as f64 - 8.0) / span;
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
    )?;
    writeln!(
        out,
        "<rect width=\"{size}\" height=\"{size}\" fill=\"white\"/>"
    )?;
    for p in &cloud.points {
        let c = PALETTE[((p.tag.letters()[0] - 1) % 8) as usize];
        let x = (p.coords[0] - min_x) * scale + 4.0;
        let y = (p.coords[1] - min_y) * scale + 4.0;
        writeln!(
            out,
            "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"0.8\" fill=\"rgb({},{},{})\"/>",
            c[0], c[1], c[2]
        )?;
    }
    writeln!(out, "</svg>")?;
    Ok(())
}

/// Rasterizes the cloud to an RGB PNG with the fixed per-letter palette.
/// Byte output is deterministic for fixed inputs.
pub fn cloud_to_png(
    cloud: &FractalCloud,
    path: &std::path::Path,
    resolution: usize,
) -> Result<(), RauzyError> {
    if cloud.frame.dim() != 3 {
        return Err(RauzyError::UnsupportedDimension {
            want: 3,
            got: cloud.frame.dim(),
        });
    }
    let mut img = vec![255u8; resolution * resolution * 3];
    if !cloud.points.is_empty() {
        let (min_x, min_y, max_x, max_y) = cloud.bounding_box();
        let (span_x, span_y) = ((max_x - min_x).max(1e-12), (max_y - min_y).max(1e-12));
        for p in &cloud.points {
            let px = ((p.coords[0] - min_x) / span_x * (resolution - 1) as f64) as usize;
            let py = ((p.coords[1] - min_y) / span_y * (resolution - 1) as f64) as usize;
            let idx = (py.min(resolution - 1) * resolution + px.min(resolution - 1)) * 3;
            let c = PALETTE[((p.tag.letters()[0] - 1) % 8) as usize];
            img[idx..idx + 3].copy_from_slice(&c);
        }
    }
    write_png(path, resolution, resolution, &img)
}

/// Renders a tiling raster: claimed pixels by first-claim letter, overlaps
/// in black, unclaimed in white.
pub fn raster_to_png(raster: &TilingRaster, path: &std::path::Path) -> Result<(), RauzyError> {
    let res = raster.resolution;
    let mut img = vec![255u8; res * res * 3];
    for idx in 0..res * res {
        let c = match raster.claim_counts[idx] {
            0 => [255, 255, 255],
            1 => PALETTE[((raster.first_letter[idx].max(1) - 1) % 8) as usize],
            _ => [0, 0, 0],
        };
        img[idx * 3..idx * 3 + 3].copy_from_slice(&c);
    }
    write_png(path, res, res, &img)
}

fn write_png(path: &std::path::Path, w: usize, h: usize, rgb: &[u8]) -> Result<(), RauzyError> {
    let file = std::fs::File::create(path)?;
    let mut encoder = png::Encoder::new(std::io::BufWriter::new(file), w as u32, h as u32);
    encoder.set_color(png::ColorType::Rgb);
    encoder.set_depth(png::BitDepth::Eight);
    let mut writer = encoder.write_header().map_err(std::io::Error::other)?;
    writer
        .write_image_data(rgb)
        .map_err(std::io::Error::other)?;
    Ok(())
}

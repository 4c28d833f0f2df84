//! Torus translations and the natural-coding cross-check.
//!
//! The coding check validates the projection and sign conventions end to
//! end: with `t = π(u)` the direct translation orbit of 0 must coincide
//! (mod Z^{d−1}) with the points `−π(π'_u l(prefix_n))` read off the limit
//! word, whose tags are by construction the coding letters. A deliberately
//! flipped sign must destroy the match — that control is part of the API.

use num_bigint::BigInt;
use serde::Serialize;

use super::DynamicsError;
use crate::bigfloat::BigFloat;
use crate::directive::DirectiveSequence;
use crate::rauzy::right_eigenvector_auto;

/// Translation `x ↦ x + t mod Z^k` with high-precision data.
#[derive(Debug, Clone)]
pub struct TorusTranslation {
    pub t: Vec<BigFloat>,
    pub start: Vec<BigFloat>,
}

impl TorusTranslation {
    pub fn new(t: Vec<BigFloat>, start: Vec<BigFloat>) -> Self {
        assert_eq!(t.len(), start.len());
        TorusTranslation { t, start }
    }

    pub fn dim(&self) -> usize {
        self.t.len()
    }

    /// `x₀ + n·t mod 1` by the direct formula.
    pub fn point_direct(&self, n: u64) -> Vec<f64> {
        let prec = self.t[0].precision();
        let nf = BigFloat::from_bigint(BigInt::from(n), prec);
        self.start
            .iter()
            .zip(&self.t)
            .map(|(x0, t)| x0.add(&nf.mul(t)).fract_mod1().to_f64())
            .collect()
    }

    /// Orbit by the direct formula, points as f64.
    pub fn orbit_direct(&self, n: u64) -> Vec<Vec<f64>> {
        (0..=n).map(|k| self.point_direct(k)).collect()
    }

    /// Orbit by repeated addition (for cross-checking the direct formula).
    pub fn orbit_iterated(&self, n: u64) -> Vec<Vec<f64>> {
        let mut cur = self.start.clone();
        let mut out = Vec::with_capacity(n as usize + 1);
        out.push(cur.iter().map(|c| c.fract_mod1().to_f64()).collect());
        for _ in 0..n {
            cur = cur
                .iter()
                .zip(&self.t)
                .map(|(x, t)| x.add(t).fract_mod1())
                .collect();
            out.push(cur.iter().map(BigFloat::to_f64).collect());
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ProjectionSign {
    /// The correct convention: domains are `π(−R(i))`.
    Minus,
    /// Falsification control; must destroy the match fraction.
    Plus,
}

#[derive(Debug, Clone, Serialize)]
pub struct CodingReport {
    pub n_points: usize,
    pub epsilon: f64,
    pub sign: ProjectionSign,
    pub match_fraction: f64,
    pub max_matched_distance: f64,
    pub word_prefix_len: usize,
}

/// For each `n < N`, compares the direct translation orbit point of
/// `R_{π(u)}` against `sign·π(π'_u l(prefix_n))` mod Z^{d−1}.
pub fn coding_consistency(
    seq: &DirectiveSequence,
    n_points: usize,
    epsilon: f64,
    sign: ProjectionSign,
) -> Result<CodingReport, DynamicsError> {
    let d = seq.dim() as usize;
    if n_points == 0 {
        return Ok(CodingReport {
            n_points: 0,
            epsilon,
            sign,
            match_fraction: 1.0,
            max_matched_distance: 0.0,
            word_prefix_len: 0,
        });
    }
    // require a comfortably larger cloud than the N orbit points checked
    let need = n_points.saturating_mul(10);
    let word = seq.limit_word_prefix(need)?;
    if word.len() < n_points {
        return Err(DynamicsError::TooSparse {
            have: word.len(),
            need: n_points,
        });
    }
    let prec = 128 + (64 - (n_points as u64).leading_zeros());
    let eig = right_eigenvector_auto(seq, 1e-30, prec)?;
    let u = eig.point.to_bigfloat_vec(prec);
    let u_f64: Vec<f64> = u.iter().map(BigFloat::to_f64).collect();
    // t = π(u): drop the last coordinate
    let translation = TorusTranslation::new(u[..d - 1].to_vec(), vec![BigFloat::zero(prec); d - 1]);
    let mut counts = vec![0i64; d];
    let mut matched = 0usize;
    let mut max_dist = 0.0f64;
    for n in 0..n_points {
        let orbit = translation.point_direct(n as u64);
        // π'_u l(p_n) = l(p_n) − n·u; apply sign and π, then compare mod 1
        let s = match sign {
            ProjectionSign::Minus => -1.0,
            ProjectionSign::Plus => 1.0,
        };
        let mut ok = true;
        let mut dist = 0.0f64;
        for k in 0..d - 1 {
            let proj = counts[k] as f64 - n as f64 * u_f64[k];
            let val = s * proj;
            let diff = val - orbit[k];
            let wrapped = (diff - diff.round()).abs();
            dist = dist.max(wrapped);
            if wrapped > epsilon {
                ok = false;
            }
        }
        if ok {
            matched += 1;
            max_dist = max_dist.max(dist);
        }
        counts[(word.letters()[n] - 1) as usize] += 1;
    }
    Ok(CodingReport {
        n_points,
        epsilon,
        sign,
        match_fraction: matched as f64 / n_points as f64,
        max_matched_distance: max_dist,
        word_prefix_len: word.len(),
    })
}

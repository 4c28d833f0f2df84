//! Effective geometric coincidence check.
//!
//! For a directive sequence with generalized right eigenvector `u`, level
//! `n`, constant `C`, shift `z ∈ 1⊥` and letter `i`, enumerate
//! `{(y, j) ∈ Z^d × A : ‖π'_{u⁽ⁿ⁾} M⁻¹y − z‖_∞ ≤ C, 0 ≤ ⟨1, y⟩ < |σ_[0,n)(j)|}`
//! (with `M = M_{σ_[0,n)}`, `u⁽ⁿ⁾ = M⁻¹u`) and test containment in the
//! prefix-abelianization set `{(l(p), j) : p·i ≺ σ_[0,n)(j)}`. A passing
//! witness certifies an exclusive point of the tile collection, hence a
//! tiling and purely discrete spectrum.
//!
//! Since `M` is unimodular, the substitution `w = M⁻¹y` ranges over `Z^d`;
//! the enumeration walks `w` in a box derived from the slab and the norm
//! condition, padded by `⌈C⌉+1`.

use std::collections::HashSet;

use num_traits::ToPrimitive;
use serde::Serialize;

use super::SpectralError;
use crate::bigfloat::BigFloat;
use crate::directive::DirectiveSequence;
use crate::word::Letter;

#[derive(Debug, Clone, Serialize)]
pub struct GccWitness {
    pub n: usize,
    pub c: f64,
    pub z: Vec<f64>,
    pub letter: Letter,
    pub lhs_size: usize,
    pub prefix_set_size: usize,
    pub verdict: bool,
    /// Left set empty (vacuously true).
    pub degenerate: bool,
    /// Measured balance constant of the shifted language and its scan scope,
    /// when the balance check was performed.
    pub balance_c: Option<i64>,
    pub balance_depth: Option<usize>,
    pub balance_scan: Option<usize>,
}

#[derive(Debug, Clone, Copy)]
pub struct GccConfig {
    /// Maximum number of lattice points visited before giving up.
    pub budget: usize,
    /// Scan length for the balance verification of the shifted language;
    /// `None` skips the check.
    pub balance_scan: Option<usize>,
    pub balance_depth_cap: usize,
}

impl Default for GccConfig {
    fn default() -> Self {
        GccConfig {
            budget: 10_000_000,
            balance_scan: Some(64),
            balance_depth_cap: 60,
        }
    }
}

/// Runs the effective geometric coincidence check for one tuple
/// `(n, C, z, i)`. `u` is the generalized right eigenvector of the sequence
/// at high precision, `‖u‖₁ = 1`.
pub fn effective_gcc(
    seq: &DirectiveSequence,
    u: &[BigFloat],
    n: usize,
    c: f64,
    z: &[f64],
    letter: Letter,
    config: &GccConfig,
) -> Result<GccWitness, SpectralError> {
    let d = seq.dim() as usize;
    assert_eq!(u.len(), d);
    assert_eq!(z.len(), d);
    let m = seq.product(n)?;
    let m_inv = m
        .inverse_unimodular()
        .map_err(|e| SpectralError::BadInput(format!("cocycle product not unimodular: {e}")))?;

    // û = u⁽ⁿ⁾ / ⟨1, u⁽ⁿ⁾⟩ computed exactly from the integer inverse
    let prec = u.iter().map(BigFloat::precision).max().unwrap_or(192);
    let mut u_n = vec![BigFloat::zero(prec); d];
    for i in 0..d {
        for (j, uj) in u.iter().enumerate() {
            let term = BigFloat::from_bigint(m_inv[(i, j)].clone(), prec).mul(uj);
            u_n[i] = u_n[i].add(&term);
        }
    }
    let mut s = BigFloat::zero(prec);
    for c in &u_n {
        s = s.add(c);
    }
    if s.is_zero() || s.is_negative() {
        return Err(SpectralError::BadInput("u^(n) has nonpositive mass".into()));
    }
    let u_hat: Vec<f64> = u_n.iter().map(|c| c.div(&s).to_f64()).collect();

    // image lengths |σ_[0,n)(j)|
    let lengths: Vec<i64> = (0..d)
        .map(|j| {
            m.column_sum(j)
                .to_i64()
                .ok_or(SpectralError::EnumerationTooLarge {
                    budget: config.budget,
                })
        })
        .collect::<Result<_, _>>()?;
    let max_len = *lengths.iter().max().unwrap();

    // prefix sets per letter j: abelianizations of prefixes p with p·i ≺ σ_[0,n)(j)
    let mut prefix_sets: Vec<HashSet<Vec<i64>>> = vec![HashSet::new(); d];
    let mut prefix_total = 0usize;
    for j in 1..=d as u8 {
        let mut w = crate::word::Word::letter(j);
        for t in (0..n).rev() {
            w = seq.substitution(t)?.apply(&w);
        }
        let mut counts = vec![0i64; d];
        for &a in w.letters() {
            if a == letter {
                prefix_sets[(j - 1) as usize].insert(counts.clone());
                prefix_total += 1;
            }
            counts[(a - 1) as usize] += 1;
        }
    }

    // enumeration bounds: w ≈ s·û + z ± (C+1)
    let pad = c.max(0.0) + 1.0;
    let mut degenerate = true;
    let mut lhs_size = 0usize;
    let mut verdict = true;
    if c >= 0.0 {
        // s = ⟨1, w⟩ range from the slab 0 ≤ Σ len_k w_k < max_len, padded
        // by the box extents including the shift (Σ len_k û_k ≥ 1, so not
        // dividing by it only widens the range)
        let slab_pad: f64 = lengths
            .iter()
            .zip(z)
            .map(|(&l, &zk)| l as f64 * (pad + zk.abs()))
            .sum();
        let s_lo = (-slab_pad - 1.0).floor() as i64;
        let s_hi = ((max_len as f64 + slab_pad) + 1.0).ceil() as i64;
        let mut visited = 0usize;
        let mut w = vec![0i64; d];
        for s in s_lo..=s_hi {
            // box for the first d−1 coordinates
            let lo_hi: Vec<(i64, i64)> = (0..d - 1)
                .map(|k| {
                    let center = s as f64 * u_hat[k] + z[k];
                    ((center - pad).floor() as i64, (center + pad).ceil() as i64)
                })
                .collect();
            let mut idx = vec![0i64; d - 1];
            for k in 0..d - 1 {
                idx[k] = lo_hi[k].0;
            }
            'boxes: loop {
                visited += 1;
                if visited > config.budget {
                    return Err(SpectralError::EnumerationTooLarge {
                        budget: config.budget,
                    });
                }
                let head_sum: i64 = idx.iter().sum();
                w[..d - 1].copy_from_slice(&idx);
                w[d - 1] = s - head_sum;
                // exact norm condition in f64 with a hair of slack toward
                // inclusion (larger left set = stricter check)
                let mut ok = true;
                for k in 0..d {
                    let proj = w[k] as f64 - s as f64 * u_hat[k] - z[k];
                    if proj.abs() > c + 1e-9 {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    // slab per j and membership
                    let slab: i64 = (0..d).map(|k| lengths[k] * w[k]).sum();
                    if slab >= 0 {
                        // y = M·w
                        let y: Vec<i64> = (0..d)
                            .map(|r| {
                                (0..d)
                                    .map(|k| {
                                        m[(r, k)].to_i64().expect("small cocycle entries") * w[k]
                                    })
                                    .sum()
                            })
                            .collect();
                        for j in 0..d {
                            if slab < lengths[j] {
                                degenerate = false;
                                lhs_size += 1;
                                if !prefix_sets[j].contains(&y) {
                                    verdict = false;
                                }
                            }
                        }
                    }
                }
                // advance the box index
                for k in 0..d - 1 {
                    idx[k] += 1;
                    if idx[k] <= lo_hi[k].1 {
                        continue 'boxes;
                    }
                    idx[k] = lo_hi[k].0;
                }
                break;
            }
        }
    }

    // balance verification of the shifted language at the same constant
    let (mut balance_c, mut balance_depth, mut balance_scan) = (None, None, None);
    if let Some(scan) = config.balance_scan {
        let shifted = seq.shift(n)?;
        if let Ok(report) = shifted
            .saturated_language(scan, config.balance_depth_cap)
            .map(|t| (t.depth, t))
            .and_then(|(depth, _)| shifted.balance(scan, depth, None))
        {
            balance_c = Some(report.c_max);
            balance_depth = Some(report.depth);
            balance_scan = Some(scan);
        }
    }

    Ok(GccWitness {
        n,
        c,
        z: z.to_vec(),
        letter,
        lhs_size,
        prefix_set_size: prefix_total,
        verdict,
        degenerate,
        balance_c,
        balance_depth,
        balance_scan,
    })
}

/// Grid search for a passing witness: levels from `n_candidates`, shifts on
/// a grid inside `[-z_extent, z_extent]²` in the 1⊥ basis, all letters.
/// Returns the first passing non-degenerate witness.
#[allow(clippy::too_many_arguments)]
pub fn gcc_grid_search(
    seq: &DirectiveSequence,
    u: &[BigFloat],
    basis: &[Vec<f64>],
    n_candidates: &[usize],
    c: f64,
    z_extent: f64,
    z_steps: usize,
    config: &GccConfig,
) -> Result<Option<GccWitness>, SpectralError> {
    let d = seq.dim() as usize;
    // scan without the (expensive, tuple-independent) balance verification;
    // attach it to the final witness only
    let scan_config = GccConfig {
        balance_scan: None,
        ..*config
    };
    for &n in n_candidates {
        for a_idx in 0..z_steps {
            for b_idx in 0..z_steps {
                let frac =
                    |idx: usize| 2.0 * z_extent * (idx as f64 / (z_steps - 1) as f64) - z_extent;
                let (a, b) = (frac(a_idx), frac(b_idx));
                let mut z = vec![0.0; d];
                for k in 0..d {
                    z[k] = a * basis[0][k] + b * basis.get(1).map(|r| r[k]).unwrap_or(0.0);
                }
                for letter in 1..=seq.dim() {
                    let w = effective_gcc(seq, u, n, c, &z, letter, &scan_config)?;
                    if w.verdict && !w.degenerate {
                        return Ok(Some(effective_gcc(seq, u, n, c, &z, letter, config)?));
                    }
                }
            }
        }
    }
    Ok(None)
}

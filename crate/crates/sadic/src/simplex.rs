//! Points of the standard simplex Δ_d = {x ∈ [0,1]^d : ‖x‖₁ = 1}.
//!
//! Rational mode is exact: the coordinate sum is 1 and stays 1 under every
//! algorithm step. Float mode carries a precision in bits; the sum is kept
//! within `2^(1-prec)·d`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::bigfloat::{BigFloat, DEFAULT_PRECISION};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimplexError {
    #[error("coordinate {0} is negative")]
    NegativeCoordinate(usize),
    #[error("coordinates sum to {0}, expected 1")]
    BadSum(String),
    #[error("zero vector cannot be normalized")]
    ZeroVector,
    #[error("cannot parse {0:?} as a simplex point")]
    Unparsable(String),
}

#[derive(Debug, Clone)]
pub enum Coords {
    Rational(Vec<BigRational>),
    Float(Vec<BigFloat>),
}

/// A point of Δ_d, either exact rational or high-precision float.
#[derive(Debug, Clone)]
pub struct SimplexPoint {
    coords: Coords,
}

impl SimplexPoint {
    /// Exact rational point; requires nonnegative coordinates summing to 1.
    pub fn from_rationals_exact(coords: Vec<BigRational>) -> Result<Self, SimplexError> {
        for (i, c) in coords.iter().enumerate() {
            if c.is_negative() {
                return Err(SimplexError::NegativeCoordinate(i));
            }
        }
        let sum: BigRational = coords.iter().sum();
        if sum != BigRational::from(BigInt::from(1)) {
            return Err(SimplexError::BadSum(sum.to_string()));
        }
        Ok(SimplexPoint {
            coords: Coords::Rational(coords),
        })
    }

    /// Projective constructor: divides by the coordinate sum.
    pub fn from_rationals_normalized(coords: Vec<BigRational>) -> Result<Self, SimplexError> {
        for (i, c) in coords.iter().enumerate() {
            if c.is_negative() {
                return Err(SimplexError::NegativeCoordinate(i));
            }
        }
        let sum: BigRational = coords.iter().sum();
        if sum.is_zero() {
            return Err(SimplexError::ZeroVector);
        }
        Ok(SimplexPoint {
            coords: Coords::Rational(coords.into_iter().map(|c| c / &sum).collect()),
        })
    }

    /// Float-mode point from big floats, normalized to sum 1 at their precision.
    pub fn from_bigfloats_normalized(coords: Vec<BigFloat>) -> Result<Self, SimplexError> {
        for (i, c) in coords.iter().enumerate() {
            if c.is_negative() {
                return Err(SimplexError::NegativeCoordinate(i));
            }
        }
        let prec = coords
            .iter()
            .map(BigFloat::precision)
            .max()
            .unwrap_or(DEFAULT_PRECISION);
        let mut sum = BigFloat::zero(prec);
        for c in &coords {
            sum = sum.add(c);
        }
        if sum.is_zero() {
            return Err(SimplexError::ZeroVector);
        }
        Ok(SimplexPoint {
            coords: Coords::Float(coords.into_iter().map(|c| c.div(&sum)).collect()),
        })
    }

    pub fn from_f64_normalized(coords: &[f64], prec: u32) -> Result<Self, SimplexError> {
        Self::from_bigfloats_normalized(
            coords
                .iter()
                .map(|&x| BigFloat::from_f64(x, prec))
                .collect(),
        )
    }

    /// Parses `2/5,1/4,7/20` (rationals, exact mode) or `0.4,0.25,0.35`
    /// (decimals, rational mode via exact decimal fractions). Coordinates are
    /// normalized by their sum.
    pub fn parse(s: &str, _prec: u32) -> Result<Self, SimplexError> {
        let mut coords = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            let q =
                parse_rational_token(tok).ok_or_else(|| SimplexError::Unparsable(s.to_string()))?;
            coords.push(q);
        }
        if coords.is_empty() {
            return Err(SimplexError::Unparsable(s.to_string()));
        }
        SimplexPoint::from_rationals_normalized(coords)
    }

    pub fn dim(&self) -> usize {
        match &self.coords {
            Coords::Rational(v) => v.len(),
            Coords::Float(v) => v.len(),
        }
    }

    pub fn coords(&self) -> &Coords {
        &self.coords
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.coords, Coords::Rational(_))
    }

    pub fn precision_bits(&self) -> Option<u32> {
        match &self.coords {
            Coords::Rational(_) => None,
            Coords::Float(v) => v.iter().map(BigFloat::precision).max(),
        }
    }

    pub fn rational_coords(&self) -> Option<&[BigRational]> {
        match &self.coords {
            Coords::Rational(v) => Some(v),
            Coords::Float(_) => None,
        }
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        match &self.coords {
            Coords::Rational(v) => v
                .iter()
                .map(|q| BigFloat::from_ratio(q.numer(), q.denom(), 64).to_f64())
                .collect(),
            Coords::Float(v) => v.iter().map(BigFloat::to_f64).collect(),
        }
    }

    pub fn to_bigfloat_vec(&self, prec: u32) -> Vec<BigFloat> {
        match &self.coords {
            Coords::Rational(v) => v.iter().map(|q| BigFloat::from_rational(q, prec)).collect(),
            Coords::Float(v) => v.iter().map(|c| c.with_precision(prec)).collect(),
        }
    }

    /// Renders coordinates as exact fraction strings (rational mode) or
    /// decimal approximations (float mode).
    pub fn coord_strings(&self) -> Vec<String> {
        match &self.coords {
            Coords::Rational(v) => v.iter().map(|q| q.to_string()).collect(),
            Coords::Float(v) => v.iter().map(|c| format!("{}", c.to_f64())).collect(),
        }
    }
}

fn parse_rational_token(tok: &str) -> Option<BigRational> {
    if let Some((n, d)) = tok.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((int, frac)) = tok.split_once('.') {
        let int_part: BigInt = if int.is_empty() {
            BigInt::zero()
        } else {
            int.parse().ok()?
        };
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let num: BigInt = frac.parse().ok()?;
        let den = BigInt::from(10).pow(frac.len() as u32);
        let sign = if tok.trim_start().starts_with('-') {
            -1
        } else {
            1
        };
        let frac_q = BigRational::new(num * sign, den);
        return Some(BigRational::from(int_part) + frac_q);
    }
    let n: BigInt = tok.parse().ok()?;
    Some(BigRational::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_fractions() {
        let p = SimplexPoint::parse("2/5,1/4,7/20", 64).unwrap();
        let v = p.rational_coords().unwrap();
        assert_eq!(v[0], BigRational::new(2.into(), 5.into()));
        let sum: BigRational = v.iter().sum();
        assert_eq!(sum, BigRational::from(BigInt::from(1)));
    }

    #[test]
    fn parse_decimals_normalizes() {
        let p = SimplexPoint::parse("0.4,0.25,0.35", 64).unwrap();
        let v = p.rational_coords().unwrap();
        assert_eq!(v[0], BigRational::new(2.into(), 5.into()));
    }

    #[test]
    fn rejects_negative_and_zero() {
        assert!(SimplexPoint::parse("-1/2,3/2", 64).is_err());
        assert!(SimplexPoint::parse("0,0,0", 64).is_err());
    }

    #[test]
    fn float_mode_sum_within_tolerance() {
        let prec = 128;
        let p = SimplexPoint::from_f64_normalized(&[0.3, 0.45, 0.25], prec).unwrap();
        let s: f64 = p.to_f64_vec().iter().sum();
        assert!((s - 1.0).abs() < 3.0 * 2f64.powi(-(prec as i32) + 1) + 1e-15);
    }
}

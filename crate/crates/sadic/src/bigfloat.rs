//! Arbitrary-precision binary floating point.
//!
//! A [`BigFloat`] is a dyadic rational `mantissa · 2^exp` kept to a working
//! precision: after every arithmetic operation the mantissa is truncated
//! toward zero to `prec` bits, so each operation has relative error at most
//! `2^(1-prec)`. Comparisons, `floor`, and the `*_exact` variants are exact.
//!
//! This is deliberately minimal: the crate needs +, −, ×, ÷, √, floor and
//! exact ordering at a few hundred bits, not a full MPFR.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 256;

#[derive(Debug, Clone)]
pub struct BigFloat {
    mantissa: BigInt,
    exp: i64,
    prec: u32,
}

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        BigFloat {
            mantissa: BigInt::zero(),
            exp: 0,
            prec,
        }
    }

    pub fn one(prec: u32) -> Self {
        BigFloat::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        BigFloat {
            mantissa: BigInt::from(v),
            exp: 0,
            prec,
        }
        .normalized()
    }

    pub fn from_bigint(v: BigInt, prec: u32) -> Self {
        BigFloat {
            mantissa: v,
            exp: 0,
            prec,
        }
        .normalized()
    }

    /// Exact conversion from an IEEE double.
    pub fn from_f64(x: f64, prec: u32) -> Self {
        assert!(x.is_finite(), "cannot represent {x}");
        if x == 0.0 {
            return BigFloat::zero(prec);
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & 0x000f_ffff_ffff_ffff;
        let (mant, exp) = if raw_exp == 0 {
            (frac, -1074i64)
        } else {
            (frac | 0x0010_0000_0000_0000, raw_exp - 1075)
        };
        BigFloat {
            mantissa: BigInt::from(sign * mant as i64),
            exp,
            prec,
        }
        .normalized()
    }

    /// Rounded value of the exact fraction `num/den`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        assert!(!den.is_zero(), "division by zero");
        BigFloat::from_bigint(num.clone(), prec + den.bits() as u32 + 2)
            .div(&BigFloat::from_bigint(den.clone(), prec + 2))
            .with_precision(prec)
    }

    pub fn from_rational(q: &num_rational::BigRational, prec: u32) -> Self {
        BigFloat::from_ratio(q.numer(), q.denom(), prec)
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn with_precision(&self, prec: u32) -> Self {
        BigFloat {
            mantissa: self.mantissa.clone(),
            exp: self.exp,
            prec,
        }
        .normalized()
    }

    fn normalized(mut self) -> Self {
        if self.mantissa.is_zero() {
            self.exp = 0;
            return self;
        }
        let bits = self.mantissa.bits() as i64;
        let excess = bits - self.prec as i64;
        if excess > 0 {
            // truncate toward zero; BigInt >> would round toward -inf,
            // so shift the magnitude and reapply the sign
            let sign = self.mantissa.sign();
            let mag = self.mantissa.magnitude() >> excess as usize;
            self.mantissa = BigInt::from_biguint(sign, mag);
            self.exp += excess;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn neg(&self) -> Self {
        BigFloat {
            mantissa: -&self.mantissa,
            exp: self.exp,
            prec: self.prec,
        }
    }

    pub fn abs(&self) -> Self {
        BigFloat {
            mantissa: self.mantissa.abs(),
            exp: self.exp,
            prec: self.prec,
        }
    }

    /// Exact sum, then rounding to the larger operand precision.
    pub fn add(&self, rhs: &BigFloat) -> Self {
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() {
            return rhs.with_precision(prec);
        }
        if rhs.is_zero() {
            return self.with_precision(prec);
        }
        // If the magnitudes are so far apart that the smaller cannot affect
        // the rounded result, skip the (possibly enormous) alignment shift.
        let hi_self = self.mantissa.bits() as i64 + self.exp;
        let hi_rhs = rhs.mantissa.bits() as i64 + rhs.exp;
        let gap = (hi_self - hi_rhs).abs();
        if gap > prec as i64 + 4 {
            return if hi_self > hi_rhs {
                self.with_precision(prec)
            } else {
                rhs.with_precision(prec)
            };
        }
        let (a, b) = (self, rhs);
        let (mantissa, exp) = if a.exp >= b.exp {
            (
                (&a.mantissa << (a.exp - b.exp) as usize) + &b.mantissa,
                b.exp,
            )
        } else {
            (
                (&b.mantissa << (b.exp - a.exp) as usize) + &a.mantissa,
                a.exp,
            )
        };
        BigFloat {
            mantissa,
            exp,
            prec,
        }
        .normalized()
    }

    pub fn sub(&self, rhs: &BigFloat) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &BigFloat) -> Self {
        let prec = self.prec.max(rhs.prec);
        BigFloat {
            mantissa: &self.mantissa * &rhs.mantissa,
            exp: self.exp + rhs.exp,
            prec,
        }
        .normalized()
    }

    /// Exact product (no rounding); used for boundary guards.
    pub fn mul_exact(&self, rhs: &BigFloat) -> Self {
        let mantissa = &self.mantissa * &rhs.mantissa;
        let prec = (mantissa.bits() as u32).max(1);
        BigFloat {
            mantissa,
            exp: self.exp + rhs.exp,
            prec,
        }
    }

    pub fn div(&self, rhs: &BigFloat) -> Self {
        assert!(!rhs.is_zero(), "division by zero");
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() {
            return BigFloat::zero(prec);
        }
        let shift = prec as i64 + 2 + rhs.mantissa.bits() as i64 - self.mantissa.bits() as i64;
        let shift = shift.max(0) as usize;
        let num = &self.mantissa << shift;
        // truncating division toward zero
        let q = num / &rhs.mantissa;
        BigFloat {
            mantissa: q,
            exp: self.exp - rhs.exp - shift as i64,
            prec,
        }
        .normalized()
    }

    /// √x truncated to the working precision. Panics on negative input.
    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "sqrt of negative value");
        if self.is_zero() {
            return self.clone();
        }
        let prec = self.prec;
        // Bring the mantissa to ~2·prec bits with an even exponent.
        let mut shift = (2 * prec as i64 + 2 - self.mantissa.bits() as i64).max(0);
        if (self.exp - shift) % 2 != 0 {
            shift += 1;
        }
        let m = &self.mantissa << shift as usize;
        let r = m.sqrt();
        BigFloat {
            mantissa: r,
            exp: (self.exp - shift) / 2,
            prec,
        }
        .normalized()
    }

    /// Largest integer ≤ x, exact.
    pub fn floor_bigint(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mantissa << self.exp as usize
        } else {
            let den = BigInt::from(1) << (-self.exp) as usize;
            self.mantissa.div_floor(&den)
        }
    }

    /// x mod 1, in [0, 1).
    pub fn fract_mod1(&self) -> Self {
        let fl = BigFloat::from_bigint(self.floor_bigint(), self.prec.max(64));
        self.sub(&fl)
    }

    /// Exact three-way comparison.
    pub fn cmp_exact(&self, rhs: &BigFloat) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        let diff_sign = self.sub_exact_sign(rhs);
        match diff_sign {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }

    fn sub_exact_sign(&self, rhs: &BigFloat) -> Sign {
        // sign of self - rhs without rounding
        if self.is_zero() && rhs.is_zero() {
            return Sign::NoSign;
        }
        let s_sign = self.mantissa.sign();
        let r_sign = rhs.mantissa.sign();
        if s_sign != r_sign {
            return if s_sign == Sign::Minus || (s_sign == Sign::NoSign && r_sign == Sign::Plus) {
                Sign::Minus
            } else {
                Sign::Plus
            };
        }
        // same sign: compare magnitudes via aligned mantissas, guarding huge gaps
        let hi_self = self.mantissa.bits() as i64 + self.exp;
        let hi_rhs = rhs.mantissa.bits() as i64 + rhs.exp;
        if hi_self != hi_rhs {
            let bigger_self = hi_self > hi_rhs;
            return match (bigger_self, s_sign) {
                (true, Sign::Minus) => Sign::Minus,
                (true, _) => Sign::Plus,
                (false, Sign::Minus) => Sign::Plus,
                (false, _) => Sign::Minus,
            };
        }
        let (a, b) = if self.exp >= rhs.exp {
            (
                (&self.mantissa << (self.exp - rhs.exp) as usize),
                rhs.mantissa.clone(),
            )
        } else {
            (
                self.mantissa.clone(),
                &rhs.mantissa << (rhs.exp - self.exp) as usize,
            )
        };
        (a - b).sign()
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        // keep the top 64 bits to stay in f64 range during conversion
        let bits = self.mantissa.bits() as i64;
        let drop = (bits - 64).max(0);
        let mut m = (&self.mantissa >> drop as usize)
            .to_f64()
            .unwrap_or(f64::NAN);
        let mut e = self.exp + drop;
        // scale in chunks: a single powi under/overflows beyond ±1023
        while e != 0 {
            let step = e.clamp(-500, 500);
            m *= 2f64.powi(step as i32);
            e -= step;
            if m == 0.0 || m.is_infinite() {
                break;
            }
        }
        m
    }

    /// log2 of |x| as f64; useful for growth-rate diagnostics on huge values.
    pub fn log2_abs(&self) -> f64 {
        assert!(!self.is_zero());
        let bits = self.mantissa.bits() as i64;
        let drop = (bits - 64).max(0);
        let m = (self.mantissa.magnitude() >> drop as usize)
            .to_f64()
            .expect("64-bit magnitude converts");
        m.log2() + (self.exp + drop) as f64
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_exact(other) == std::cmp::Ordering::Equal
    }
}

impl Eq for BigFloat {}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.cmp_exact(other)
    }
}

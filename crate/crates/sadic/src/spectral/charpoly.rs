//! Integer polynomials and exact characteristic polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntMatrix;

/// Dense integer polynomial; `coeffs[k]` is the coefficient of `X^k` and the
/// leading coefficient is nonzero (the zero polynomial has no coefficients).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map(Zero::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    pub fn monomial(c: BigInt, deg: usize) -> Self {
        let mut v = vec![BigInt::zero(); deg + 1];
        v[deg] = c;
        IntPoly::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn eval_bigint(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + bigint_to_f64(c);
        }
        acc
    }

    /// Coefficients reversed: `X^d · p(1/X)`.
    pub fn reversed(&self) -> IntPoly {
        let mut v = self.coeffs.clone();
        v.reverse();
        IntPoly::new(v)
    }

    /// Exact Euclidean division when the divisor is monic.
    /// Returns `(quotient, remainder)` with `deg r < deg g`.
    pub fn div_rem_monic(&self, g: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(g.is_monic(), "divisor must be monic");
        let mut rem = self.coeffs.clone();
        let dg = g.degree();
        if rem.len() <= dg {
            return (IntPoly::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dg];
        for k in (dg..rem.len()).rev() {
            let q = rem[k].clone();
            if q.is_zero() {
                continue;
            }
            quot[k - dg] = q.clone();
            for (j, gj) in g.coeffs.iter().enumerate() {
                let idx = k - dg + j;
                rem[idx] -= &q * gj;
            }
        }
        (IntPoly::new(quot), IntPoly::new(rem))
    }

    pub fn divides_exactly(&self, candidate_factor: &IntPoly) -> bool {
        if candidate_factor.is_zero() || !candidate_factor.is_monic() {
            return false;
        }
        let (_, r) = self.div_rem_monic(candidate_factor);
        r.is_zero()
    }
}

pub(crate) fn bigint_to_f64(x: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "X")?;
                    } else {
                        write!(f, "X^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Characteristic polynomial `det(X·I − M)`, monic with exact coefficients.
///
/// Computed by Faddeev–LeVerrier and cross-checked against an independent
/// route: cofactor expansion over the polynomial ring for `d ≤ 5`, exact
/// evaluation–interpolation otherwise.
pub fn char_poly(m: &IntMatrix) -> IntPoly {
    let fl = char_poly_faddeev(m);
    let other = if m.dim() <= 5 {
        char_poly_cofactor(m)
    } else {
        char_poly_interpolate(m)
    };
    assert_eq!(fl, other, "characteristic polynomial routes disagree");
    fl
}

fn trace(m: &IntMatrix) -> BigInt {
    (0..m.dim()).map(|i| m[(i, i)].clone()).sum()
}

fn char_poly_faddeev(m: &IntMatrix) -> IntPoly {
    let d = m.dim();
    let mut coeffs = vec![BigInt::zero(); d + 1];
    coeffs[d] = BigInt::one();
    let mut b = IntMatrix::identity(d);
    for k in 1..=d {
        let mb = m.mul(&b);
        let t = trace(&mb);
        // the division by k is exact (Newton's identities over Z)
        let (c, rem) = num_integer::Integer::div_rem(&-t, &BigInt::from(k));
        assert!(rem.is_zero(), "Faddeev-LeVerrier division must be exact");
        coeffs[d - k] = c.clone();
        b = mb;
        for i in 0..d {
            b[(i, i)] += &c;
        }
    }
    IntPoly::new(coeffs)
}

fn char_poly_cofactor(m: &IntMatrix) -> IntPoly {
    let d = m.dim();
    // entries of X·I − M as degree ≤ 1 polynomials
    let entries: Vec<IntPoly> = (0..d * d)
        .map(|idx| {
            let (i, j) = (idx / d, idx % d);
            let c = -m[(i, j)].clone();
            if i == j {
                IntPoly::new(vec![c, BigInt::one()])
            } else {
                IntPoly::constant(c)
            }
        })
        .collect();
    poly_det(&entries, d)
}

fn poly_det(entries: &[IntPoly], d: usize) -> IntPoly {
    if d == 1 {
        return entries[0].clone();
    }
    let mut acc = IntPoly::zero();
    for col in 0..d {
        let top = &entries[col];
        if top.is_zero() {
            continue;
        }
        let mut minor = Vec::with_capacity((d - 1) * (d - 1));
        for i in 1..d {
            for j in 0..d {
                if j != col {
                    minor.push(entries[i * d + j].clone());
                }
            }
        }
        let sub = poly_det(&minor, d - 1);
        let term = top.mul(&sub);
        acc = if col % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

fn char_poly_interpolate(m: &IntMatrix) -> IntPoly {
    let d = m.dim();
    // evaluate det(kI − M) at k = 0..=d and Lagrange-interpolate exactly
    let values: Vec<BigRational> = (0..=d as i64)
        .map(|k| {
            let mut shifted = IntMatrix::zero(d);
            for i in 0..d {
                for j in 0..d {
                    shifted[(i, j)] = if i == j {
                        BigInt::from(k) - &m[(i, j)]
                    } else {
                        -m[(i, j)].clone()
                    };
                }
            }
            BigRational::from(shifted.det())
        })
        .collect();
    let nodes: Vec<BigRational> = (0..=d as i64)
        .map(|k| BigRational::from(BigInt::from(k)))
        .collect();
    let mut coeffs = vec![BigRational::zero(); d + 1];
    for (i, node_i) in nodes.iter().enumerate() {
        // basis polynomial ∏_{j≠i} (X − x_j), then scale by value/∏(x_i − x_j)
        let mut poly = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, node_j) in nodes.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k + 1] = &next[k + 1] + c;
                next[k] = &next[k] - &(c * node_j);
            }
            poly = next;
            denom *= node_i - node_j;
        }
        let scale = &values[i] / &denom;
        for (k, c) in poly.iter().enumerate() {
            coeffs[k] = &coeffs[k] + &(c * &scale);
        }
    }
    IntPoly::new(
        coeffs
            .into_iter()
            .map(|c| {
                assert!(c.is_integer(), "interpolated charpoly must be integral");
                c.to_integer()
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::{cs_tau, d_bonacci};

    #[test]
    fn char_poly_of_tau() {
        let p = char_poly(cs_tau().incidence());
        assert_eq!(p, IntPoly::from_i64(&[-1, 1, -2, 1]));
        assert_eq!(p.to_string(), "X^3 - 2*X^2 + X - 1");
    }

    #[test]
    fn char_poly_of_identity() {
        let p = char_poly(&IntMatrix::identity(3));
        // (X-1)^3 = X^3 - 3X^2 + 3X - 1
        assert_eq!(p, IntPoly::from_i64(&[-1, 3, -3, 1]));
    }

    #[test]
    fn char_poly_of_tribonacci() {
        let p = char_poly(d_bonacci(3).incidence());
        assert_eq!(p, IntPoly::from_i64(&[-1, -1, -1, 1]));
    }

    #[test]
    fn interpolation_route_matches_on_larger_matrices() {
        let sub = d_bonacci(7);
        let m = sub.incidence();
        let a = char_poly_faddeev(m);
        let b = char_poly_interpolate(m);
        assert_eq!(a, b);
        // d-bonacci: X^d - X^{d-1} - ... - 1
        let mut want = vec![-1i64; 7];
        want.push(1);
        assert_eq!(a, IntPoly::from_i64(&want));
    }

    #[test]
    fn division_and_exact_divisibility() {
        let p = IntPoly::from_i64(&[-1, 1, -2, 1]);
        let g = IntPoly::from_i64(&[-1, 1]); // X - 1
        let (q, r) = p.div_rem_monic(&g);
        assert_eq!(g.mul(&q).add(&r), p);
        assert!(!p.divides_exactly(&g));
        let prod = p.mul(&g);
        assert!(prod.divides_exactly(&g));
        assert!(prod.divides_exactly(&p));
    }

    #[test]
    fn eval_routes_agree() {
        let p = IntPoly::from_i64(&[-1, 1, -2, 1]);
        let x = BigRational::new(7.into(), 3.into());
        let exact = p.eval_rational(&x);
        let approx = p.eval_f64(7.0 / 3.0);
        let exact_f = bigint_to_f64(exact.numer()) / bigint_to_f64(exact.denom());
        assert!((exact_f - approx).abs() < 1e-12);
    }
}

//! Pisot certification from certified root enclosures.
//!
//! Strategy: split the polynomial into its exact rational roots (decided with
//! zero-radius enclosures) and a squarefree factor without rational roots,
//! whose roots are isolated by Aberth iteration in f64, polished by complex
//! Newton steps at working precision, and enclosed by Weierstrass-style radii
//! `r_k = m·|p(z_k)| / ∏_{j≠k}|z_k − z_j|`. Pairwise disjoint disks then
//! contain exactly one root each. Every unit-circle or dominance decision
//! must clear a 2⁻³² margin, otherwise the precision doubles (up to 4 times)
//! before giving up.
//!
//! Irreducibility is decided exactly: a rational root of a higher-degree
//! polynomial is an immediate factor; otherwise every proper subset of root
//! enclosures is multiplied out, subsets whose coefficient intervals miss the
//! integers are excluded, and near-integer candidates are settled by exact
//! polynomial division.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::charpoly::{bigint_to_f64, IntPoly};
use super::SpectralError;
use crate::bigfloat::BigFloat;

const DECISION_MARGIN: f64 = 2.3283064365386963e-10; // 2^-32
const BASE_PRECISION: u32 = 192;
const MAX_DOUBLINGS: u32 = 4;

#[derive(Debug, Clone, Serialize)]
pub struct RootEnclosure {
    pub re: f64,
    pub im: f64,
    pub radius: f64,
    /// Set when the root is known exactly (an integer root).
    pub exact_integer: Option<i64>,
}

impl RootEnclosure {
    pub fn modulus_bounds(&self) -> (f64, f64) {
        if let Some(t) = self.exact_integer {
            let m = (t as f64).abs();
            return (m, m);
        }
        let c = (self.re * self.re + self.im * self.im).sqrt();
        ((c - self.radius).max(0.0), c + self.radius)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PisotCertificate {
    pub degree: usize,
    pub coefficients: Vec<String>,
    pub roots: Vec<RootEnclosure>,
    pub irreducible: bool,
    pub dominant_real_gt_one: bool,
    pub conjugates_inside_unit: bool,
    pub unit: bool,
    /// Dominant root real and > 1, all other roots strictly inside the disk.
    pub is_pisot: bool,
    /// `is_pisot` together with irreducibility and |constant term| = 1: the
    /// polynomial is the minimal polynomial of a Pisot unit.
    pub is_pisot_unit: bool,
    pub precision_bits: u32,
    pub dominant_root: Option<f64>,
}

/// Certifies the Pisot flags of a monic integer polynomial. A leading
/// coefficient of −1 is normalized away (the root set is unchanged).
pub fn pisot_certify(input: &IntPoly) -> Result<PisotCertificate, SpectralError> {
    let poly = &if input.leading() == BigInt::from(-1) {
        input.neg()
    } else {
        input.clone()
    };
    if poly.is_zero() || !poly.is_monic() || poly.degree() == 0 {
        return Err(SpectralError::NotMonic);
    }
    let unit = poly.coeff(0).abs().is_one();
    let gcd = rational_poly_gcd(poly, &poly.derivative());
    let squarefree = if gcd.degree() == 0 {
        poly.clone()
    } else {
        let (q, r) = poly.div_rem_monic(&gcd);
        assert!(r.is_zero(), "gcd must divide the polynomial");
        q
    };
    let not_squarefree = gcd.degree() > 0;

    // exact rational roots (monic ⇒ integer roots dividing the constant term)
    let (int_roots, residual) = extract_integer_roots(&squarefree);
    let has_linear_factor = !int_roots.is_empty() && poly.degree() > 1;

    let mut attempt = 0;
    let mut prec = BASE_PRECISION;
    // f64 seeds for the residual factor, shared across precision attempts
    let seeds = if residual.degree() > 0 {
        aberth_roots(&residual)
    } else {
        Vec::new()
    };
    loop {
        match certify_at_precision(
            poly,
            &residual,
            &int_roots,
            &seeds,
            prec,
            unit,
            not_squarefree,
            has_linear_factor,
        ) {
            Some(cert) => return Ok(cert),
            None => {
                attempt += 1;
                if attempt > MAX_DOUBLINGS {
                    return Err(SpectralError::IndeterminatePrecision { bits: prec });
                }
                prec *= 2;
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn certify_at_precision(
    poly: &IntPoly,
    residual: &IntPoly,
    int_roots: &[i64],
    seeds: &[Complex64],
    prec: u32,
    unit: bool,
    not_squarefree: bool,
    has_linear_factor: bool,
) -> Option<PisotCertificate> {
    let refined = refine_roots(residual, seeds, prec)?;
    let mut roots: Vec<RootEnclosure> = int_roots
        .iter()
        .map(|&t| RootEnclosure {
            re: t as f64,
            im: 0.0,
            radius: 0.0,
            exact_integer: Some(t),
        })
        .collect();
    roots.extend(refined.iter().map(|(z, r)| RootEnclosure {
        re: z.re_f64(),
        im: z.im_f64(),
        radius: *r,
        exact_integer: None,
    }));

    // number of real roots > 1 (exact via Sturm on the residual factor)
    let real_gt_one =
        int_roots.iter().filter(|&&t| t > 1).count() + sturm_roots_above_one(residual);

    let mut dominant_real_gt_one = false;
    let mut conjugates_inside_unit = false;
    let mut dominant_root = None;
    if real_gt_one == 1 {
        // identify the dominant enclosure: real axis, lower bound above 1
        let mut dom_idx = None;
        for (k, e) in roots.iter().enumerate() {
            let real_possible = e.exact_integer.is_some() || e.im.abs() <= e.radius + 1e-300;
            let (lo, _) = e.modulus_bounds();
            if real_possible && e.re > 0.0 && lo > 1.0 + DECISION_MARGIN {
                dom_idx = Some(k);
                break;
            }
        }
        if let Some(k) = dom_idx {
            let (dom_lo, _) = roots[k].modulus_bounds();
            let mut others_below_dom = true;
            let mut others_inside_unit = true;
            let mut undecided = false;
            for (j, e) in roots.iter().enumerate() {
                if j == k {
                    continue;
                }
                let (_, hi) = e.modulus_bounds();
                if hi >= dom_lo - DECISION_MARGIN {
                    others_below_dom = false;
                }
                if e.exact_integer.is_some() {
                    // exact modulus: decide with no margin needed
                    if hi >= 1.0 {
                        others_inside_unit = false;
                    }
                } else if hi < 1.0 - DECISION_MARGIN {
                    // strictly inside with margin
                } else if e.modulus_bounds().0 > 1.0 + DECISION_MARGIN {
                    others_inside_unit = false;
                } else {
                    undecided = true;
                }
            }
            if undecided {
                return None;
            }
            dominant_real_gt_one = others_below_dom;
            conjugates_inside_unit = others_inside_unit;
            dominant_root = Some(roots[k].re);
        } else if !int_roots.iter().any(|&t| t > 1) && residual.degree() > 0 {
            // a real root above 1 exists but no enclosure certifies it yet
            return None;
        }
    }

    let irreducible = if poly.degree() == 1 {
        true
    } else if not_squarefree || has_linear_factor {
        false
    } else {
        irreducibility_by_subsets(poly, &refined, prec)?
    };

    let is_pisot = dominant_real_gt_one && conjugates_inside_unit;
    Some(PisotCertificate {
        degree: poly.degree(),
        coefficients: poly.coeffs().iter().map(BigInt::to_string).collect(),
        roots,
        irreducible,
        dominant_real_gt_one,
        conjugates_inside_unit,
        unit,
        is_pisot,
        is_pisot_unit: is_pisot && unit && irreducible,
        precision_bits: prec,
        dominant_root,
    })
}

// ---------------------------------------------------------------------------
// exact helpers

fn extract_integer_roots(p: &IntPoly) -> (Vec<i64>, IntPoly) {
    let mut roots = Vec::new();
    let mut cur = p.clone();
    loop {
        if cur.degree() == 0 {
            break;
        }
        let c0 = cur.coeff(0);
        let mut found = None;
        if c0.is_zero() {
            found = Some(0i64);
        } else {
            // integer roots divide the constant term; enumerate divisor
            // pairs up to √|c0|
            let limit = c0.abs();
            let mut t = BigInt::one();
            'search: while &t * &t <= limit {
                if (&limit % &t).is_zero() {
                    let partner = &limit / &t;
                    for cand in [t.clone(), -t.clone(), partner.clone(), -partner] {
                        if cur.eval_bigint(&cand).is_zero() {
                            found = cand.to_i64();
                            break 'search;
                        }
                    }
                }
                t += 1;
            }
        }
        match found {
            Some(r) => {
                let lin = IntPoly::new(vec![BigInt::from(-r), BigInt::one()]);
                let (q, rem) = cur.div_rem_monic(&lin);
                assert!(rem.is_zero());
                roots.push(r);
                cur = q;
            }
            None => break,
        }
    }
    (roots, cur)
}

fn to_rational_vec(p: &IntPoly) -> Vec<BigRational> {
    p.coeffs()
        .iter()
        .map(|c| BigRational::from(c.clone()))
        .collect()
}

fn rp_degree(p: &[BigRational]) -> usize {
    p.len().saturating_sub(1)
}

fn rp_trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().map(Zero::is_zero).unwrap_or(false) {
        p.pop();
    }
    p
}

fn rp_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut rem = a.to_vec();
    let db = rp_degree(b);
    let blead = b.last().unwrap().clone();
    while rp_degree(&rem) >= db && !rem.is_empty() {
        let dr = rp_degree(&rem);
        let f = rem.last().unwrap() / &blead;
        for (j, bj) in b.iter().enumerate() {
            let idx = dr - db + j;
            rem[idx] = &rem[idx] - &(&f * bj);
        }
        rem = rp_trim(rem);
        if rem.is_empty() {
            break;
        }
        if rp_degree(&rem) == dr {
            // leading term must vanish; enforce to guarantee progress
            rem.pop();
            rem = rp_trim(rem);
        }
    }
    rem
}

/// Monic gcd over Q, returned as a monic integer polynomial (valid for monic
/// inputs, where the gcd of p and p′ has algebraic-integer coefficients).
fn rational_poly_gcd(p: &IntPoly, q: &IntPoly) -> IntPoly {
    let mut a = to_rational_vec(p);
    let mut b = to_rational_vec(q);
    while !b.is_empty() {
        let r = rp_rem(&a, &b);
        a = b;
        b = r;
    }
    // monicize and clear denominators
    let lead = a.last().expect("gcd of nonzero polynomials").clone();
    let monic: Vec<BigRational> = a.iter().map(|c| c / &lead).collect();
    let mut denom = BigInt::one();
    for c in &monic {
        denom = num_integer::Integer::lcm(&denom, c.denom());
    }
    let scaled: Vec<BigInt> = monic
        .iter()
        .map(|c| (c * BigRational::from(denom.clone())).to_integer())
        .collect();
    let g = IntPoly::new(scaled);
    if g.is_monic() {
        g
    } else {
        // denominators cleared a monic rational poly; for our use (gcd with
        // the derivative of a monic integer poly) this cannot happen
        IntPoly::new(monic.iter().map(|c| c.to_integer()).collect())
    }
}

/// Number of real roots in (1, ∞) of a squarefree polynomial with p(1) ≠ 0.
fn sturm_roots_above_one(p: &IntPoly) -> usize {
    if p.degree() == 0 {
        return 0;
    }
    let mut chain: Vec<Vec<BigRational>> =
        vec![to_rational_vec(p), to_rational_vec(&p.derivative())];
    loop {
        let last = chain.last().unwrap();
        if last.is_empty() {
            chain.pop();
            break;
        }
        if rp_degree(last) == 0 {
            break;
        }
        let prev = &chain[chain.len() - 2];
        let r = rp_rem(prev, last);
        if r.is_empty() {
            break;
        }
        chain.push(r.iter().map(|c| -c).collect());
    }
    let one = BigRational::one();
    let sign_at_one = |poly: &[BigRational]| -> i32 {
        let mut acc = BigRational::zero();
        for c in poly.iter().rev() {
            acc = acc * &one + c;
        }
        match acc.cmp(&BigRational::zero()) {
            std::cmp::Ordering::Less => -1,
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => 1,
        }
    };
    let sign_at_inf = |poly: &[BigRational]| -> i32 {
        match poly.last().unwrap().cmp(&BigRational::zero()) {
            std::cmp::Ordering::Less => -1,
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => 1,
        }
    };
    let variations = |signs: Vec<i32>| -> usize {
        let nz: Vec<i32> = signs.into_iter().filter(|&s| s != 0).collect();
        nz.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let v1 = variations(chain.iter().map(|p| sign_at_one(p)).collect());
    let vinf = variations(chain.iter().map(|p| sign_at_inf(p)).collect());
    v1.saturating_sub(vinf)
}

// ---------------------------------------------------------------------------
// numeric root isolation

fn aberth_roots(p: &IntPoly) -> Vec<Complex64> {
    let deg = p.degree();
    let coeffs: Vec<f64> = p.coeffs().iter().map(bigint_to_f64).collect();
    let cauchy = 1.0 + coeffs[..deg].iter().map(|c| c.abs()).fold(0.0f64, f64::max);
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut v = Complex64::new(0.0, 0.0);
        let mut dv = Complex64::new(0.0, 0.0);
        for &c in coeffs.iter().rev() {
            dv = dv * z + v;
            v = v * z + c;
        }
        (v, dv)
    };
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * (k as f64 / deg as f64 + 0.3711);
            Complex64::from_polar(cauchy * 0.7 + 0.1, angle)
        })
        .collect();
    for _ in 0..400 {
        let mut max_corr = 0.0f64;
        for k in 0..deg {
            let (v, dv) = eval(z[k]);
            if v.norm() == 0.0 {
                continue;
            }
            let newton = v / dv;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..deg {
                if j != k {
                    s += (z[k] - z[j]).finv();
                }
            }
            let corr = newton / (Complex64::new(1.0, 0.0) - newton * s);
            z[k] -= corr;
            max_corr = max_corr.max(corr.norm() / (1.0 + z[k].norm()));
        }
        if max_corr < 1e-14 {
            break;
        }
    }
    z
}

#[derive(Clone)]
struct CF {
    re: BigFloat,
    im: BigFloat,
}

impl CF {
    fn from_c64(z: Complex64, prec: u32) -> Self {
        CF {
            re: BigFloat::from_f64(z.re, prec),
            im: BigFloat::from_f64(z.im, prec),
        }
    }
    fn sub(&self, o: &CF) -> CF {
        CF {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
    }
    fn mul(&self, o: &CF) -> CF {
        CF {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }
    fn div(&self, o: &CF) -> CF {
        let den = o.re.mul(&o.re).add(&o.im.mul(&o.im));
        let num = self.mul(&CF {
            re: o.re.clone(),
            im: o.im.neg(),
        });
        CF {
            re: num.re.div(&den),
            im: num.im.div(&den),
        }
    }
    fn abs(&self) -> BigFloat {
        self.re.mul(&self.re).add(&self.im.mul(&self.im)).sqrt()
    }
    fn re_f64(&self) -> f64 {
        self.re.to_f64()
    }
    fn im_f64(&self) -> f64 {
        self.im.to_f64()
    }
}

fn eval_cf(p: &IntPoly, z: &CF, prec: u32) -> CF {
    let mut acc = CF {
        re: BigFloat::zero(prec),
        im: BigFloat::zero(prec),
    };
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(z);
        acc.re = acc.re.add(&BigFloat::from_bigint(c.clone(), prec));
    }
    acc
}

/// Newton-polishes the f64 seeds at `prec` bits and produces Weierstrass
/// enclosure radii; `None` when the disks are not pairwise disjoint.
fn refine_roots(p: &IntPoly, seeds: &[Complex64], prec: u32) -> Option<Vec<(CF, f64)>> {
    if seeds.is_empty() {
        return Some(Vec::new());
    }
    let deriv = p.derivative();
    let mut roots: Vec<CF> = seeds.iter().map(|&z| CF::from_c64(z, prec)).collect();
    let newton_iters = 4 + (prec / 48) as usize;
    for z in roots.iter_mut() {
        for _ in 0..newton_iters {
            let v = eval_cf(p, z, prec);
            let dv = eval_cf(&deriv, z, prec);
            if dv.abs().is_zero() {
                return None;
            }
            let step = v.div(&dv);
            *z = z.sub(&step);
        }
    }
    let deg = p.degree() as f64;
    let mut out = Vec::with_capacity(roots.len());
    for (k, z) in roots.iter().enumerate() {
        let v = eval_cf(p, z, prec).abs();
        let mut denom = BigFloat::one(prec);
        for (j, w) in roots.iter().enumerate() {
            if j != k {
                denom = denom.mul(&z.sub(w).abs());
            }
        }
        if denom.is_zero() {
            return None;
        }
        let r = v.div(&denom).to_f64() * deg * 1.0001 + 1e-280;
        out.push((z.clone(), r));
    }
    // pairwise disjoint disks ⇒ one root in each
    for k in 0..out.len() {
        for j in k + 1..out.len() {
            let dist = out[k].0.sub(&out[j].0).abs().to_f64();
            if dist <= out[k].1 + out[j].1 {
                return None;
            }
        }
    }
    Some(out)
}

/// Exact irreducibility over Q for a squarefree monic polynomial without
/// rational roots, from certified enclosures of its complex roots.
fn irreducibility_by_subsets(p: &IntPoly, roots: &[(CF, f64)], _prec: u32) -> Option<bool> {
    let m = roots.len();
    if m <= 1 {
        return Some(true);
    }
    let zs: Vec<Complex64> = roots
        .iter()
        .map(|(z, _)| Complex64::new(z.re_f64(), z.im_f64()))
        .collect();
    let rmax = roots.iter().map(|&(_, r)| r).fold(0.0f64, f64::max);
    let zmax = zs.iter().map(|z| z.norm()).fold(1.0f64, f64::max);
    // uncertainty of any product coefficient: enclosure radii plus f64 noise
    let uncertainty = (m as f64) * zmax.powi(m as i32 - 1) * rmax
        + 64.0 * (m as f64) * zmax.powi(m as i32) * f64::EPSILON;
    for mask in 1u32..((1u32 << m) - 1) {
        // coefficients of ∏_{k in mask}(X − z_k)
        let mut coeffs: Vec<Complex64> = vec![Complex64::new(1.0, 0.0)];
        for (k, z) in zs.iter().enumerate() {
            if mask & (1 << k) == 0 {
                continue;
            }
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * z;
            }
            coeffs = next;
        }
        let mut all_near_integers = true;
        let mut candidate = Vec::with_capacity(coeffs.len());
        for c in &coeffs {
            let nearest = c.re.round();
            if (c.re - nearest).abs() <= uncertainty && c.im.abs() <= uncertainty {
                candidate.push(BigInt::from(nearest as i64));
            } else if (c.re - nearest).abs() > 2.0 * uncertainty || c.im.abs() > 2.0 * uncertainty {
                all_near_integers = false;
                break;
            } else {
                // inside the gray zone: cannot decide at this precision
                return None;
            }
        }
        if all_near_integers {
            let factor = IntPoly::new(candidate);
            if factor.degree() >= 1 && factor.is_monic() && p.divides_exactly(&factor) {
                return Some(false);
            }
            // coefficients look integral but the division fails: enclosures
            // are too coarse to rule the subset out
            return None;
        }
    }
    Some(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::char_poly;
    use crate::substitution::{cs_tau, d_bonacci};

    #[test]
    fn tau_polynomial_is_unit_pisot() {
        let cert = pisot_certify(&char_poly(cs_tau().incidence())).unwrap();
        assert!(cert.is_pisot);
        assert!(cert.unit);
        assert!(cert.irreducible);
        assert!(cert.is_pisot_unit);
        let lambda = cert.dominant_root.unwrap();
        assert!((lambda - 1.7548776662466927).abs() < 1e-9);
    }

    #[test]
    fn repeated_root_is_not_pisot() {
        // (X-1)^3
        let p = IntPoly::from_i64(&[-1, 3, -3, 1]);
        let cert = pisot_certify(&p).unwrap();
        assert!(!cert.is_pisot);
        assert!(!cert.dominant_real_gt_one);
        assert!(!cert.irreducible);
        assert!(cert.unit);
    }

    #[test]
    fn golden_like_quadratic_is_pisot_unit() {
        // X^2 - 3X + 1, roots (3 ± √5)/2
        let p = IntPoly::from_i64(&[1, -3, 1]);
        let cert = pisot_certify(&p).unwrap();
        assert!(cert.is_pisot);
        assert!(cert.unit);
        assert!(cert.irreducible);
    }

    #[test]
    fn tribonacci_and_dbonacci_are_pisot_units() {
        for d in 3u8..=5 {
            let cert = pisot_certify(&char_poly(d_bonacci(d).incidence())).unwrap();
            assert!(cert.is_pisot_unit, "d-bonacci d={d}");
        }
    }

    #[test]
    fn reducible_product_detected() {
        // (X^2 - 3X + 1)(X - 2): no rational roots in the quadratic part,
        // but the cubic has the rational root 2
        let p = IntPoly::from_i64(&[1, -3, 1]).mul(&IntPoly::from_i64(&[-2, 1]));
        let cert = pisot_certify(&p).unwrap();
        assert!(!cert.irreducible);
    }

    #[test]
    fn reducible_product_of_irrational_factors_detected() {
        // (X^2 - 3X + 1)(X^2 - X - 1): all roots irrational
        let p = IntPoly::from_i64(&[1, -3, 1]).mul(&IntPoly::from_i64(&[-1, -1, 1]));
        let cert = pisot_certify(&p).unwrap();
        assert!(!cert.irreducible);
        // dominant 2.618 vs golden 1.618: not all conjugates inside the disk
        assert!(!cert.is_pisot);
    }

    #[test]
    fn cyclotomic_quadratic_is_indeterminate_or_rejected() {
        // X^2 - X + 1 has both roots exactly on the unit circle; the inside
        // flag can never clear the margin
        let p = IntPoly::from_i64(&[1, -1, 1]);
        match pisot_certify(&p) {
            Ok(cert) => assert!(!cert.is_pisot),
            Err(SpectralError::IndeterminatePrecision { .. }) => {}
            Err(e) => panic!("unexpected error {e:?}"),
        }
    }

    #[test]
    fn reversed_polynomial_unit_flag_agrees() {
        for poly in [
            char_poly(cs_tau().incidence()),
            char_poly(d_bonacci(3).incidence()),
            IntPoly::from_i64(&[1, -3, 1]),
        ] {
            let a = pisot_certify(&poly).unwrap();
            match pisot_certify(&poly.reversed()) {
                Ok(b) => assert_eq!(a.unit, b.unit),
                Err(_) => panic!("reversed certification failed"),
            }
        }
    }

    #[test]
    fn root_moduli_product_matches_constant_term() {
        let poly = char_poly(cs_tau().incidence());
        let cert = pisot_certify(&poly).unwrap();
        let mut lo = 1.0f64;
        let mut hi = 1.0f64;
        for r in &cert.roots {
            let (a, b) = r.modulus_bounds();
            lo *= a;
            hi *= b;
        }
        let c0 = 1.0; // |constant term| of X^3-2X^2+X-1
        assert!(lo <= c0 + 1e-9 && c0 <= hi + 1e-9);
    }

    #[test]
    fn sturm_counts_roots_above_one() {
        assert_eq!(
            sturm_roots_above_one(&IntPoly::from_i64(&[-1, 1, -2, 1])),
            1
        );
        assert_eq!(sturm_roots_above_one(&IntPoly::from_i64(&[1, -3, 1])), 1);
        // X^2 - 2: roots ±√2, one above 1
        assert_eq!(sturm_roots_above_one(&IntPoly::from_i64(&[-2, 0, 1])), 1);
        // X^2 + 1: none
        assert_eq!(sturm_roots_above_one(&IntPoly::from_i64(&[1, 0, 1])), 0);
        // (X^2-3X+1)(X^2-X-1): dominant pair 2.618 and 1.618
        let p = IntPoly::from_i64(&[1, -3, 1]).mul(&IntPoly::from_i64(&[-1, -1, 1]));
        assert_eq!(sturm_roots_above_one(&p), 2);
    }
}

//! Multidimensional continued fraction algorithms.
//!
//! An algorithm is a triple (Δ, T, A): a branch map from simplex points to
//! discrete cells, a unimodular nonnegative matrix A(x) per cell, and the
//! projective step `x ↦ trA(x)⁻¹x / ‖trA(x)⁻¹x‖₁`. Each cell also selects a
//! substitution whose incidence matrix is trA(x), so that the cocycle product
//! satisfies `M_{σ_[0,n)} = trA⁽ⁿ⁾(x)` verbatim.
//!
//! Cocycle order: `A⁽ⁿ⁾(x) = A(Tⁿ⁻¹x)⋯A(x)`, hence the *transposed* product
//! stored here accumulates on the right:
//! `trA⁽ⁿ⁾(x) = trA(x)·trA(Tx)⋯trA(Tⁿ⁻¹x)`.
//! Reversing this order is the classic bug; `ExpansionRecord` keeps the
//! convention in one place and the cocycle identity is unit-tested.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::bigfloat::BigFloat;
use crate::matrix::{IntMatrix, SmallIntMatrix};
use crate::simplex::{Coords, SimplexPoint};
use crate::substitution::{
    arnoux_rauzy_sub, brun_sub, gamma1, gamma2, jacobi_perron_sub, Substitution,
};
use crate::word::Letter;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum McfError {
    #[error("point lies in no cell of the algorithm domain")]
    OutsideDomain,
    #[error("degenerate boundary (zero denominator or unbounded digit)")]
    DegenerateBoundary,
    #[error("step image vanished")]
    ZeroImage,
    #[error("dimension mismatch: point has {0}, algorithm wants {1}")]
    DimensionMismatch(usize, usize),
    #[error("cell label {0} invalid for this algorithm")]
    InvalidCell(String),
}

/// Discrete branch label; the shape depends on the algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CellLabel {
    /// Cassaigne–Selmer: 1 (x₁ ≥ x₃) or 2 (x₁ < x₃).
    Cs(u8),
    /// Arnoux–Rauzy: the dominant letter.
    Ar(Letter),
    /// Brun: (largest, second largest) coordinate indices, 1-based.
    Brun(Letter, Letter),
    /// Jacobi–Perron digits (a, b) with 0 ≤ a ≤ b, b ≠ 0.
    Jp(u64, u64),
}

impl fmt::Display for CellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellLabel::Cs(c) => write!(f, "{c}"),
            CellLabel::Ar(i) => write!(f, "{i}"),
            CellLabel::Brun(i, j) => write!(f, "({i},{j})"),
            CellLabel::Jp(a, b) => write!(f, "({a},{b})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum AlgoKind {
    CassaigneSelmer,
    ArnouxRauzy,
    Brun,
    JacobiPerron,
}

/// Per-cell data: the selected substitution, the cocycle value A, and the
/// exact integer inverse of trA used by the step.
#[derive(Debug, Clone)]
pub struct CellData {
    pub substitution: Substitution,
    /// A(x) for points of this cell; equals `tr(M_substitution)`.
    pub a_matrix: SmallIntMatrix,
    /// `(trA)⁻¹ = M_substitution⁻¹`, exact.
    pub inv_tr_a: SmallIntMatrix,
}

/// A positive (d−1)-dimensional continued fraction algorithm.
pub struct MCFAlgorithm {
    kind: AlgoKind,
    d: u8,
    name: &'static str,
    cell_cache: Mutex<HashMap<CellLabel, CellData>>,
}

/// Scalar abstraction so that branch/step run identically over exact
/// rationals, high-precision floats, and f64.
trait Coord: Clone + PartialOrd {
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn div_ref(&self, o: &Self) -> Self;
    fn scale_i64(&self, k: i64) -> Self;
    fn is_zero_val(&self) -> bool;
    fn is_negative_val(&self) -> bool;
    /// floor(self / den) for nonnegative self and positive den, exact.
    fn floor_div_u64(&self, den: &Self) -> Option<u64>;
}

impl Coord for BigRational {
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn div_ref(&self, o: &Self) -> Self {
        self / o
    }
    fn scale_i64(&self, k: i64) -> Self {
        self * BigRational::from(BigInt::from(k))
    }
    fn is_zero_val(&self) -> bool {
        self.is_zero()
    }
    fn is_negative_val(&self) -> bool {
        self.is_negative()
    }
    fn floor_div_u64(&self, den: &Self) -> Option<u64> {
        use num_integer::Integer;
        let q = self / den;
        q.numer().div_floor(q.denom()).to_u64()
    }
}

impl Coord for f64 {
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn div_ref(&self, o: &Self) -> Self {
        self / o
    }
    fn scale_i64(&self, k: i64) -> Self {
        self * k as f64
    }
    fn is_zero_val(&self) -> bool {
        *self == 0.0
    }
    fn is_negative_val(&self) -> bool {
        *self < 0.0
    }
    fn floor_div_u64(&self, den: &Self) -> Option<u64> {
        let q = (self / den).floor();
        if q.is_finite() && q >= 0.0 && q <= u64::MAX as f64 {
            Some(q as u64)
        } else {
            None
        }
    }
}

impl Coord for BigFloat {
    fn add_ref(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn div_ref(&self, o: &Self) -> Self {
        self.div(o)
    }
    fn scale_i64(&self, k: i64) -> Self {
        self.mul(&BigFloat::from_i64(k, self.precision()))
    }
    fn is_zero_val(&self) -> bool {
        self.is_zero()
    }
    fn is_negative_val(&self) -> bool {
        self.is_negative()
    }
    fn floor_div_u64(&self, den: &Self) -> Option<u64> {
        // rounded division, then exact verification `f·den ≤ self < (f+1)·den`
        // with unrounded products; the rounded quotient is off by at most one
        let q = self.div(den);
        let mut f = q.floor_bigint();
        for _ in 0..4 {
            let lo = BigFloat::from_bigint(f.clone(), self.precision()).mul_exact(den);
            let hi = BigFloat::from_bigint(&f + 1, self.precision()).mul_exact(den);
            if lo.cmp_exact(self) == std::cmp::Ordering::Greater {
                f -= 1;
            } else if hi.cmp_exact(self) != std::cmp::Ordering::Greater {
                f += 1;
            } else {
                return f.to_u64();
            }
        }
        None
    }
}

fn branch_generic<T: Coord>(kind: AlgoKind, d: usize, x: &[T]) -> Result<CellLabel, McfError> {
    match kind {
        AlgoKind::CassaigneSelmer => {
            if x[0] >= x[2] {
                Ok(CellLabel::Cs(1))
            } else {
                Ok(CellLabel::Cs(2))
            }
        }
        AlgoKind::ArnouxRauzy => {
            let total = x.iter().skip(1).fold(x[0].clone(), |acc, c| acc.add_ref(c));
            for (i, xi) in x.iter().enumerate() {
                // x_i ≥ Σ_{j≠i} x_j, boundary assigned to Δ(i); smallest i wins
                let rest = total.sub_ref(xi);
                if *xi >= rest {
                    return Ok(CellLabel::Ar(i as Letter + 1));
                }
            }
            Err(McfError::OutsideDomain)
        }
        AlgoKind::Brun => {
            let mut i = 0;
            for k in 1..d {
                if x[k] > x[i] {
                    i = k;
                }
            }
            let mut j = usize::MAX;
            for k in 0..d {
                if k == i {
                    continue;
                }
                if j == usize::MAX || x[k] > x[j] {
                    j = k;
                }
            }
            Ok(CellLabel::Brun(i as Letter + 1, j as Letter + 1))
        }
        AlgoKind::JacobiPerron => {
            if x[0] > x[2] || x[1] > x[2] {
                return Err(McfError::OutsideDomain);
            }
            if x[0].is_zero_val() {
                return Err(McfError::DegenerateBoundary);
            }
            let a = x[1]
                .floor_div_u64(&x[0])
                .ok_or(McfError::DegenerateBoundary)?;
            let b = x[2]
                .floor_div_u64(&x[0])
                .ok_or(McfError::DegenerateBoundary)?;
            if a > (1 << 62) || b > (1 << 62) {
                return Err(McfError::DegenerateBoundary);
            }
            debug_assert!(a <= b && b >= 1);
            Ok(CellLabel::Jp(a, b))
        }
    }
}

fn step_coords<T: Coord>(inv: &SmallIntMatrix, x: &[T]) -> Result<Vec<T>, McfError> {
    let d = x.len();
    let mut y: Vec<T> = Vec::with_capacity(d);
    for i in 0..d {
        let mut acc: Option<T> = None;
        for (j, xj) in x.iter().enumerate() {
            let k = inv[(i, j)];
            if k == 0 {
                continue;
            }
            let term = xj.scale_i64(k);
            acc = Some(match acc {
                None => term,
                Some(a) => a.add_ref(&term),
            });
        }
        y.push(acc.unwrap_or_else(|| x[0].scale_i64(0)));
    }
    let sum = y.iter().skip(1).fold(y[0].clone(), |a, c| a.add_ref(c));
    if sum.is_zero_val() {
        return Err(McfError::ZeroImage);
    }
    debug_assert!(
        !y.iter().any(Coord::is_negative_val),
        "negative coordinate after a step from a valid cell"
    );
    Ok(y.into_iter().map(|c| c.div_ref(&sum)).collect())
}

impl MCFAlgorithm {
    pub fn cassaigne_selmer() -> Self {
        MCFAlgorithm {
            kind: AlgoKind::CassaigneSelmer,
            d: 3,
            name: "cassaigne-selmer",
            cell_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn arnoux_rauzy(d: u8) -> Self {
        assert!(d >= 2);
        MCFAlgorithm {
            kind: AlgoKind::ArnouxRauzy,
            d,
            name: "arnoux-rauzy",
            cell_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn brun(d: u8) -> Self {
        assert!(d >= 2);
        MCFAlgorithm {
            kind: AlgoKind::Brun,
            d,
            name: "brun",
            cell_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn jacobi_perron() -> Self {
        MCFAlgorithm {
            kind: AlgoKind::JacobiPerron,
            d: 3,
            name: "jacobi-perron",
            cell_cache: Mutex::new(HashMap::new()),
        }
    }

    /// Looks up an algorithm by id: `cs`, `ar`, `brun`, `jp`.
    pub fn by_name(name: &str, d: u8) -> Option<Self> {
        match name {
            "cs" | "cassaigne-selmer" => Some(Self::cassaigne_selmer()),
            "ar" | "arnoux-rauzy" => Some(Self::arnoux_rauzy(d)),
            "brun" => Some(Self::brun(d)),
            "jp" | "jacobi-perron" => Some(Self::jacobi_perron()),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn dim(&self) -> u8 {
        self.d
    }

    pub fn cell_is_valid(&self, cell: &CellLabel) -> bool {
        match (self.kind, cell) {
            (AlgoKind::CassaigneSelmer, CellLabel::Cs(c)) => *c == 1 || *c == 2,
            (AlgoKind::ArnouxRauzy, CellLabel::Ar(i)) => *i >= 1 && *i <= self.d,
            (AlgoKind::Brun, CellLabel::Brun(i, j)) => {
                *i != *j && *i >= 1 && *i <= self.d && *j >= 1 && *j <= self.d
            }
            (AlgoKind::JacobiPerron, CellLabel::Jp(a, b)) => a <= b && *b != 0,
            _ => false,
        }
    }

    /// The substitution selection φ on a cell.
    pub fn substitution(&self, cell: &CellLabel) -> Result<Substitution, McfError> {
        Ok(self.cell_data(cell)?.substitution)
    }

    /// The cocycle value A on a cell (the transposed incidence matrix of the
    /// selected substitution).
    pub fn a_matrix(&self, cell: &CellLabel) -> Result<SmallIntMatrix, McfError> {
        Ok(self.cell_data(cell)?.a_matrix)
    }

    pub fn cell_data(&self, cell: &CellLabel) -> Result<CellData, McfError> {
        if !self.cell_is_valid(cell) {
            return Err(McfError::InvalidCell(cell.to_string()));
        }
        let mut cache = self.cell_cache.lock().unwrap();
        if let Some(d) = cache.get(cell) {
            return Ok(d.clone());
        }
        let substitution = match (self.kind, cell) {
            (AlgoKind::CassaigneSelmer, CellLabel::Cs(1)) => gamma1(),
            (AlgoKind::CassaigneSelmer, CellLabel::Cs(_)) => gamma2(),
            (AlgoKind::ArnouxRauzy, CellLabel::Ar(i)) => arnoux_rauzy_sub(self.d, *i),
            (AlgoKind::Brun, CellLabel::Brun(i, j)) => brun_sub(self.d, *i, *j),
            (AlgoKind::JacobiPerron, CellLabel::Jp(a, b)) => jacobi_perron_sub(*a, *b),
            _ => unreachable!("validity checked above"),
        };
        let m = substitution
            .incidence()
            .to_small()
            .map_err(|_| McfError::DegenerateBoundary)?;
        let data = CellData {
            a_matrix: m.transpose(),
            inv_tr_a: m.inverse_unimodular(),
            substitution,
        };
        cache.insert(*cell, data.clone());
        Ok(data)
    }

    /// Locates the cell containing `x`; ties follow the documented policy
    /// (CS: `x₁ ≥ x₃` is cell 1; Brun: smallest index first; AR: closed
    /// condition, smallest dominant letter).
    pub fn branch(&self, x: &SimplexPoint) -> Result<CellLabel, McfError> {
        if x.dim() != self.d as usize {
            return Err(McfError::DimensionMismatch(x.dim(), self.d as usize));
        }
        match x.coords() {
            Coords::Rational(v) => branch_generic(self.kind, self.d as usize, v),
            Coords::Float(v) => branch_generic(self.kind, self.d as usize, v),
        }
    }

    pub fn branch_f64(&self, x: &[f64]) -> Result<CellLabel, McfError> {
        if x.len() != self.d as usize {
            return Err(McfError::DimensionMismatch(x.len(), self.d as usize));
        }
        branch_generic(self.kind, self.d as usize, x)
    }

    /// One algorithm step `x ↦ trA(x)⁻¹x / ‖·‖₁`, exact in rational mode.
    pub fn step(&self, x: &SimplexPoint) -> Result<(CellLabel, SimplexPoint), McfError> {
        let cell = self.branch(x)?;
        let data = self.cell_data(&cell)?;
        let next = match x.coords() {
            Coords::Rational(v) => {
                let y = step_coords(&data.inv_tr_a, v)?;
                debug_assert_eq!(
                    y.iter().sum::<BigRational>(),
                    BigRational::from(BigInt::from(1)),
                    "rational step must conserve the coordinate sum exactly"
                );
                SimplexPoint::from_rationals_exact(y).map_err(|_| McfError::ZeroImage)?
            }
            Coords::Float(v) => {
                let y = step_coords(&data.inv_tr_a, v)?;
                SimplexPoint::from_bigfloats_normalized(y).map_err(|_| McfError::ZeroImage)?
            }
        };
        Ok((cell, next))
    }

    /// Fast f64 step for Monte Carlo work; writes T(x) back into `x`.
    pub fn step_f64_in_place(&self, x: &mut [f64]) -> Result<CellLabel, McfError> {
        let cell = self.branch_f64(x)?;
        let d = self.d as usize;
        match cell {
            CellLabel::Cs(1) => {
                let (x0, x1, x2) = (x[0], x[1], x[2]);
                let n = x0 + x1;
                x[0] = (x0 - x2) / n;
                x[1] = x2 / n;
                x[2] = x1 / n;
            }
            CellLabel::Cs(_) => {
                let (x0, x1, x2) = (x[0], x[1], x[2]);
                let n = x1 + x2;
                x[0] = x1 / n;
                x[1] = x0 / n;
                x[2] = (x2 - x0) / n;
            }
            CellLabel::Ar(i) => {
                let i = (i - 1) as usize;
                let xi = x[i];
                let rest: f64 = x.iter().sum::<f64>() - xi;
                x[i] = xi - rest;
                for c in x.iter_mut() {
                    *c /= xi;
                }
            }
            CellLabel::Brun(i, j) => {
                let (i, j) = ((i - 1) as usize, (j - 1) as usize);
                x[i] -= x[j];
                let n: f64 = x.iter().sum();
                for c in x.iter_mut() {
                    *c /= n;
                }
            }
            CellLabel::Jp(a, b) => {
                let (x0, x1, x2) = (x[0], x[1], x[2]);
                let y0 = x1 - a as f64 * x0;
                let y1 = x2 - b as f64 * x0;
                let n = y0 + y1 + x0;
                x[0] = y0 / n;
                x[1] = y1 / n;
                x[2] = x0 / n;
            }
        }
        debug_assert_eq!(x.len(), d);
        for c in x.iter_mut() {
            // f64 cancellation can leave a tiny negative residue on a boundary
            if *c < 0.0 {
                if *c < -1e-12 {
                    return Err(McfError::OutsideDomain);
                }
                *c = 0.0;
            }
        }
        Ok(cell)
    }

    /// Writes A(cell) row-major into `buf` (length ≥ d²).
    pub fn a_matrix_f64(&self, cell: &CellLabel, buf: &mut [f64]) {
        let d = self.d as usize;
        buf[..d * d].fill(0.0);
        match *cell {
            CellLabel::Jp(a, b) => {
                // A = J_{a,b}
                buf[1] = 1.0;
                buf[d + 2] = 1.0;
                buf[2 * d] = 1.0;
                buf[2 * d + 1] = a as f64;
                buf[2 * d + 2] = b as f64;
            }
            _ => {
                let data = self.cell_data(cell).expect("valid cell");
                for i in 0..d {
                    for j in 0..d {
                        buf[i * d + j] = data.a_matrix[(i, j)] as f64;
                    }
                }
            }
        }
    }

    /// Runs `n` steps from `x`, recording cells, iterates, and the exact
    /// transposed-cocycle products. Stops early on a domain error, recording
    /// the failing step index.
    pub fn expand(&self, x: &SimplexPoint, n: usize) -> ExpansionRecord {
        let mut cells = Vec::with_capacity(n);
        let mut products = Vec::with_capacity(n + 1);
        let mut iterates = Vec::with_capacity(n + 1);
        products.push(IntMatrix::identity(self.d as usize));
        iterates.push(x.clone());
        let mut error = None;
        let mut cur = x.clone();
        for k in 0..n {
            match self.step(&cur) {
                Ok((cell, next)) => {
                    let m = self
                        .cell_data(&cell)
                        .expect("cell data for branched cell")
                        .a_matrix
                        .transpose()
                        .to_big();
                    // trA^{k+1} = trA^{k} · trA(T^k x)
                    let prod = products.last().unwrap().mul(&m);
                    products.push(prod);
                    cells.push(cell);
                    iterates.push(next.clone());
                    cur = next;
                }
                Err(e) => {
                    error = Some((k, e));
                    break;
                }
            }
        }
        ExpansionRecord {
            start: x.clone(),
            d: self.d,
            cells,
            products,
            iterates,
            error,
        }
    }

    /// Checks the algorithm's digit-sequence transition rule.
    ///
    /// CS and AR admit every label sequence. Brun admits `(β_ij, β_ij)` and
    /// `(β_ij, β_jk)` transitions. Jacobi–Perron requires `a ≥ 1` right after
    /// a step with `a = b`: on the cylinder `a = b` the image point satisfies
    /// `y₂ ≥ y₁`, so the next first digit cannot vanish.
    pub fn admissible(&self, cells: &[CellLabel]) -> bool {
        if !cells.iter().all(|c| self.cell_is_valid(c)) {
            return false;
        }
        match self.kind {
            AlgoKind::CassaigneSelmer | AlgoKind::ArnouxRauzy => true,
            AlgoKind::Brun => cells.windows(2).all(|w| match (w[0], w[1]) {
                (CellLabel::Brun(i0, j0), CellLabel::Brun(i1, j1)) => {
                    (i1 == i0 && j1 == j0) || i1 == j0
                }
                _ => false,
            }),
            AlgoKind::JacobiPerron => cells.windows(2).all(|w| match (w[0], w[1]) {
                (CellLabel::Jp(a0, b0), CellLabel::Jp(a1, _)) => a0 != b0 || a1 >= 1,
                _ => false,
            }),
        }
    }
}

impl fmt::Debug for MCFAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MCFAlgorithm({}, d={})", self.name, self.d)
    }
}

/// Record of an expansion: cells `c₀..c_{n−1}`, iterates `xₖ = Tᵏx`, and the
/// exact products `trA⁽ᵏ⁾(x)` for `k ≤ n` (index 0 is the identity).
#[derive(Debug)]
pub struct ExpansionRecord {
    pub start: SimplexPoint,
    d: u8,
    pub cells: Vec<CellLabel>,
    pub products: Vec<IntMatrix>,
    pub iterates: Vec<SimplexPoint>,
    pub error: Option<(usize, McfError)>,
}

/// Strong and weak convergence errors per step and column.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceErrors {
    /// `e_i⁽ⁿ⁾ = ‖y_i⁽ⁿ⁾ − ‖y_i⁽ⁿ⁾‖₁·x‖₂`, indexed `[n][i]`.
    pub strong: Vec<Vec<f64>>,
    /// `‖y_i⁽ⁿ⁾/‖y_i⁽ⁿ⁾‖₁ − x‖₂`, indexed `[n][i]`.
    pub weak: Vec<Vec<f64>>,
}

impl ExpansionRecord {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Column vectors `y_i⁽ⁿ⁾` of `trA⁽ⁿ⁾(x)`: the rational convergents.
    pub fn convergents(&self, n: usize) -> Vec<Vec<BigInt>> {
        let m = &self.products[n];
        (0..self.d as usize).map(|i| m.column(i)).collect()
    }

    /// Strong/weak approximation errors of the convergents against the start
    /// point, computed in high precision before rounding to f64.
    pub fn convergence_errors(&self) -> ConvergenceErrors {
        let prec = self.start.precision_bits().unwrap_or(0).max(192);
        let x = self.start.to_bigfloat_vec(prec);
        let d = self.d as usize;
        let mut strong = Vec::with_capacity(self.products.len());
        let mut weak = Vec::with_capacity(self.products.len());
        for m in &self.products {
            let mut srow = Vec::with_capacity(d);
            let mut wrow = Vec::with_capacity(d);
            for i in 0..d {
                let col = m.column(i);
                let norm1: BigInt = col.iter().sum();
                let normf = BigFloat::from_bigint(norm1, prec);
                let mut s_acc = BigFloat::zero(prec);
                let mut w_acc = BigFloat::zero(prec);
                for (k, xk) in x.iter().enumerate() {
                    let yk = BigFloat::from_bigint(col[k].clone(), prec);
                    let s_diff = yk.sub(&normf.mul(xk));
                    s_acc = s_acc.add(&s_diff.mul(&s_diff));
                    let w_diff = yk.div(&normf).sub(xk);
                    w_acc = w_acc.add(&w_diff.mul(&w_diff));
                }
                srow.push(s_acc.sqrt().to_f64());
                wrow.push(w_acc.sqrt().to_f64());
            }
            strong.push(srow);
            weak.push(wrow);
        }
        ConvergenceErrors { strong, weak }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::SimplexPoint;

    fn pt(s: &str) -> SimplexPoint {
        SimplexPoint::parse(s, 128).unwrap()
    }

    #[test]
    fn cs_branch_and_step() {
        let cs = MCFAlgorithm::cassaigne_selmer();
        let x = pt("2/5,1/4,7/20");
        assert_eq!(cs.branch(&x).unwrap(), CellLabel::Cs(1));
        let (cell, y) = cs.step(&x).unwrap();
        assert_eq!(cell, CellLabel::Cs(1));
        assert_eq!(
            y.coord_strings(),
            vec!["1/13".to_string(), "7/13".to_string(), "5/13".to_string()]
        );
    }

    #[test]
    fn jp_branch_and_step() {
        let jp = MCFAlgorithm::jacobi_perron();
        let x = pt("1/5,3/10,1/2");
        assert_eq!(jp.branch(&x).unwrap(), CellLabel::Jp(1, 2));
        let (cell, y) = jp.step(&x).unwrap();
        assert_eq!(cell, CellLabel::Jp(1, 2));
        assert_eq!(
            y.coord_strings(),
            vec!["1/4".to_string(), "1/4".to_string(), "1/2".to_string()]
        );
    }

    #[test]
    fn brun_step() {
        let brun = MCFAlgorithm::brun(3);
        let x = pt("1/2,3/10,1/5");
        let (cell, y) = brun.step(&x).unwrap();
        assert_eq!(cell, CellLabel::Brun(1, 2));
        assert_eq!(
            y.coord_strings(),
            vec!["2/7".to_string(), "3/7".to_string(), "2/7".to_string()]
        );
    }

    #[test]
    fn ar_step_and_domain_error() {
        let ar = MCFAlgorithm::arnoux_rauzy(3);
        let center = pt("1/3,1/3,1/3");
        assert_eq!(ar.branch(&center), Err(McfError::OutsideDomain));
        let x = pt("3/5,1/5,1/5");
        let (cell, y) = ar.step(&x).unwrap();
        assert_eq!(cell, CellLabel::Ar(1));
        assert_eq!(
            y.coord_strings(),
            vec!["1/3".to_string(), "1/3".to_string(), "1/3".to_string()]
        );
    }

    #[test]
    fn jp_degenerate_boundary() {
        use num_rational::BigRational;
        let jp = MCFAlgorithm::jacobi_perron();
        let x = SimplexPoint::from_rationals_normalized(vec![
            BigRational::from(BigInt::from(0)),
            BigRational::new(1.into(), 2.into()),
            BigRational::new(1.into(), 2.into()),
        ])
        .unwrap();
        assert_eq!(jp.branch(&x), Err(McfError::DegenerateBoundary));
        // and outside-domain when x1 > x3
        assert_eq!(jp.branch(&pt("1/2,3/10,1/5")), Err(McfError::OutsideDomain));
    }

    #[test]
    fn faithfulness_on_random_points() {
        // incidence(substitution(cell)) == transpose(A(cell)), exactly
        let algos = [
            MCFAlgorithm::cassaigne_selmer(),
            MCFAlgorithm::arnoux_rauzy(4),
            MCFAlgorithm::brun(4),
            MCFAlgorithm::jacobi_perron(),
        ];
        let mut state = 7u64;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for algo in &algos {
            let d = algo.dim() as usize;
            let mut checked = 0;
            let mut tries = 0;
            while checked < 1000 && tries < 40000 {
                tries += 1;
                let mut x: Vec<f64> = (0..d).map(|_| -next().max(1e-300).ln()).collect();
                let s: f64 = x.iter().sum();
                x.iter_mut().for_each(|c| *c /= s);
                let Ok(cell) = algo.branch_f64(&x) else {
                    continue;
                };
                let data = algo.cell_data(&cell).unwrap();
                assert_eq!(
                    data.substitution.incidence(),
                    &data.a_matrix.transpose().to_big(),
                    "faithfulness fails for {} at {:?}",
                    algo.name(),
                    cell
                );
                checked += 1;
            }
            assert!(checked >= 1000, "not enough samples for {}", algo.name());
        }
    }

    #[test]
    fn rational_steps_conserve_sum_and_nonnegativity() {
        let algos = [MCFAlgorithm::cassaigne_selmer(), MCFAlgorithm::brun(3)];
        let mut state = 99u64;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            state >> 40
        };
        for algo in &algos {
            for _ in 0..20 {
                let raw: Vec<BigRational> = (0..3)
                    .map(|_| BigRational::new(BigInt::from(next() + 1), BigInt::from(1u64 << 24)))
                    .collect();
                let mut x = SimplexPoint::from_rationals_normalized(raw).unwrap();
                for _ in 0..30 {
                    let (_, y) = algo.step(&x).unwrap();
                    let coords = y.rational_coords().unwrap();
                    let sum: BigRational = coords.iter().sum();
                    assert_eq!(sum, BigRational::from(BigInt::from(1)));
                    assert!(coords.iter().all(|c| !c.is_negative()));
                    x = y;
                }
            }
        }
    }

    #[test]
    fn cocycle_identity_exact() {
        // trA^{m+n}(x) = trA^{n}(x) · trA^{m}(T^n x)
        let cs = MCFAlgorithm::cassaigne_selmer();
        let x = pt("2/5,1/4,7/20");
        let rec = cs.expand(&x, 24);
        assert!(rec.error.is_none());
        for (m, n) in [(3usize, 5usize), (7, 9), (1, 20), (11, 13)] {
            let rec_shift = cs.expand(&rec.iterates[n], m);
            let lhs = &rec.products[m + n];
            let rhs = rec.products[n].mul(&rec_shift.products[m]);
            assert_eq!(lhs, &rhs);
        }
    }

    #[test]
    fn expansion_cells_are_admissible() {
        let mut state = 3u64;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            state >> 12
        };
        let algos = [
            MCFAlgorithm::cassaigne_selmer(),
            MCFAlgorithm::brun(4),
            MCFAlgorithm::jacobi_perron(),
        ];
        for algo in &algos {
            let d = algo.dim() as usize;
            let mut runs = 0;
            while runs < 10 {
                // large denominators: JP expansions of rationals terminate
                // Euclid-style, so small ones would exit after a few steps
                let raw: Vec<BigRational> = (0..d)
                    .map(|_| BigRational::new(BigInt::from(next() + 1), BigInt::from(1u64 << 52)))
                    .collect();
                let x = SimplexPoint::from_rationals_normalized(raw).unwrap();
                if algo.branch(&x).is_err() {
                    continue; // JP rejection sampling
                }
                let rec = algo.expand(&x, 25);
                assert!(
                    algo.admissible(&rec.cells),
                    "{} run inadmissible",
                    algo.name()
                );
                assert!(rec.cells.len() >= 10, "{} exited too early", algo.name());
                runs += 1;
            }
        }
    }

    #[test]
    fn jp_admissibility_rule() {
        let jp = MCFAlgorithm::jacobi_perron();
        // after a=b the next first digit must be ≥ 1
        assert!(jp.admissible(&[CellLabel::Jp(1, 1), CellLabel::Jp(1, 2)]));
        assert!(!jp.admissible(&[CellLabel::Jp(1, 1), CellLabel::Jp(0, 2)]));
        assert!(jp.admissible(&[CellLabel::Jp(0, 1), CellLabel::Jp(0, 2)]));
        assert!(!jp.admissible(&[CellLabel::Jp(2, 1), CellLabel::Jp(0, 2)])); // invalid label
    }

    #[test]
    fn brun_admissibility_rule() {
        let brun = MCFAlgorithm::brun(3);
        assert!(!brun.admissible(&[CellLabel::Brun(1, 2), CellLabel::Brun(1, 3)]));
        assert!(brun.admissible(&[CellLabel::Brun(1, 2), CellLabel::Brun(1, 2)]));
        assert!(brun.admissible(&[CellLabel::Brun(1, 2), CellLabel::Brun(2, 3)]));
        assert!(brun.admissible(&[CellLabel::Brun(1, 2), CellLabel::Brun(2, 1)]));
    }

    #[test]
    fn column_sums_grow_across_positive_windows() {
        // substitutions that fix a letter stall its column sum, so strict
        // growth is guaranteed exactly across windows whose own cocycle
        // product is positive: each new column sum then dominates the whole
        // previous length vector
        let cs = MCFAlgorithm::cassaigne_selmer();
        let q = 1u64 << 52;
        let x = pt(&format!(
            "{}/{q},{}/{q},{}/{q}",
            1761634261547237u64, 1351079888211149u64, 1391685449983166u64
        ));
        let rec = cs.expand(&x, 24);
        let n = rec.cells.len();
        let mut checked = 0;
        for k in 0..n {
            let mut window = IntMatrix::identity(3);
            for (kp, cell) in rec.cells.iter().enumerate().take(n).skip(k) {
                let m = cs.cell_data(cell).unwrap().a_matrix.transpose().to_big();
                window = window.mul(&m);
                if window.is_positive() {
                    for j in 0..3 {
                        assert!(
                            rec.products[kp + 1].column_sum(j) > rec.products[k].column_sum(j),
                            "column {j} stalled across positive window [{k}, {}]",
                            kp + 1
                        );
                    }
                    checked += 1;
                    break;
                }
            }
        }
        assert!(checked > 10);
    }

    #[test]
    fn convergents_start_at_standard_basis() {
        let cs = MCFAlgorithm::cassaigne_selmer();
        let x = pt("2/5,1/4,7/20");
        let rec = cs.expand(&x, 2);
        let y0 = rec.convergents(0);
        for (i, col) in y0.iter().enumerate() {
            for (k, v) in col.iter().enumerate() {
                assert_eq!(*v, BigInt::from((i == k) as i64));
            }
        }
    }

    #[test]
    fn branch_constant_within_cell() {
        // rational perturbation staying strictly inside the cell keeps the label
        let cs = MCFAlgorithm::cassaigne_selmer();
        let brun = MCFAlgorithm::brun(3);
        let x = pt("2/5,1/4,7/20");
        let eps = BigRational::new(1.into(), 10_000.into());
        for algo in [&cs, &brun] {
            let cell = algo.branch(&x).unwrap();
            let v = x.rational_coords().unwrap().to_vec();
            for k in 0..3 {
                let mut w = v.clone();
                w[k] += &eps;
                let y = SimplexPoint::from_rationals_normalized(w).unwrap();
                assert_eq!(algo.branch(&y).unwrap(), cell);
            }
        }
    }

    #[test]
    fn step_f64_matches_exact_on_rationals() {
        let algos = [
            MCFAlgorithm::cassaigne_selmer(),
            MCFAlgorithm::brun(4),
            MCFAlgorithm::jacobi_perron(),
            MCFAlgorithm::arnoux_rauzy(3),
        ];
        let mut state = 12u64;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            state >> 40
        };
        for algo in &algos {
            let d = algo.dim() as usize;
            let mut done = 0;
            let mut tries = 0;
            while done < 30 && tries < 5000 {
                tries += 1;
                let raw: Vec<BigRational> = (0..d)
                    .map(|_| BigRational::new(BigInt::from(next() + 1), BigInt::from(1u64 << 24)))
                    .collect();
                let x = SimplexPoint::from_rationals_normalized(raw).unwrap();
                let mut xf = x.to_f64_vec();
                match (algo.step(&x), algo.step_f64_in_place(&mut xf)) {
                    (Ok((cell, y)), Ok(cell_f)) => {
                        assert_eq!(cell, cell_f);
                        let yf = y.to_f64_vec();
                        for k in 0..d {
                            assert!((yf[k] - xf[k]).abs() < 1e-9);
                        }
                        done += 1;
                    }
                    (Err(_), Err(_)) => {}
                    (a, b) => panic!("exact/f64 disagree: {a:?} vs {b:?}"),
                }
            }
            assert!(done >= 30);
        }
    }
}

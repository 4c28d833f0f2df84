//! Exact dense integer matrices.
//!
//! [`IntMatrix`] carries arbitrary-size entries and is used for cocycle
//! products, which grow without bound. [`SmallIntMatrix`] is the `i64`
//! counterpart for per-step algorithm data where entries stay tiny.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}x{0} vs {1}x{1}")]
    DimMismatch(usize, usize),
    #[error("matrix is not unimodular (|det| = {0})")]
    NotUnimodular(String),
    #[error("entry does not fit in i64")]
    Overflow,
    #[error("cannot parse {0:?} as a matrix")]
    Unparsable(String),
}

/// Square matrix with exact big-integer entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    d: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(d: usize) -> Self {
        IntMatrix {
            d,
            entries: vec![BigInt::zero(); d * d],
        }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Self::zero(d);
        for i in 0..d {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows_i64(rows: &[&[i64]]) -> Self {
        let d = rows.len();
        assert!(
            rows.iter().all(|r| r.len() == d),
            "rows must form a square matrix"
        );
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| BigInt::from(x)))
            .collect();
        IntMatrix { d, entries }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.d);
        for i in 0..self.d {
            for j in 0..self.d {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.d, other.d, "dimension mismatch");
        let d = self.d;
        let mut m = IntMatrix::zero(d);
        for i in 0..d {
            for k in 0..d {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let prod = a * &other[(k, j)];
                    m[(i, j)] += prod;
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.d);
        (0..self.d)
            .map(|i| (0..self.d).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn pow(&self, n: usize) -> IntMatrix {
        let mut acc = IntMatrix::identity(self.d);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.d).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn column_sum(&self, j: usize) -> BigInt {
        (0..self.d).map(|i| &self[(i, j)]).sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|e| !e.is_negative())
    }

    pub fn is_positive(&self) -> bool {
        self.entries.iter().all(|e| e.is_positive())
    }

    /// Exact determinant via fraction-free Gaussian elimination (Bareiss).
    pub fn det(&self) -> BigInt {
        let d = self.d;
        if d == 0 {
            return BigInt::one();
        }
        let mut a = self.entries.clone();
        let at = |a: &Vec<BigInt>, i: usize, j: usize| a[i * d + j].clone();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..d - 1 {
            if at(&a, k, k).is_zero() {
                // pivot search
                let swap = (k + 1..d).find(|&i| !at(&a, i, k).is_zero());
                match swap {
                    Some(i) => {
                        for j in 0..d {
                            a.swap(i * d + j, k * d + j);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..d {
                for j in k + 1..d {
                    let num = at(&a, k, k) * at(&a, i, j) - at(&a, i, k) * at(&a, k, j);
                    // Bareiss: division is exact
                    a[i * d + j] = num / &prev;
                }
                a[i * d + k] = BigInt::zero();
            }
            prev = at(&a, k, k);
        }
        let det = at(&a, d - 1, d - 1);
        if sign < 0 {
            -det
        } else {
            det
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    /// Inverse of a unimodular matrix; entries stay integral.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix, MatrixError> {
        let det = self.det();
        if !det.abs().is_one() {
            return Err(MatrixError::NotUnimodular(det.to_string()));
        }
        let adj = self.adjugate();
        if det == BigInt::one() {
            Ok(adj)
        } else {
            let entries = adj.entries.into_iter().map(|e| -e).collect();
            Ok(IntMatrix { d: adj.d, entries })
        }
    }

    fn minor(&self, row: usize, col: usize) -> IntMatrix {
        let d = self.d;
        let mut m = IntMatrix::zero(d - 1);
        let mut r = 0;
        for i in 0..d {
            if i == row {
                continue;
            }
            let mut c = 0;
            for j in 0..d {
                if j == col {
                    continue;
                }
                m[(r, c)] = self[(i, j)].clone();
                c += 1;
            }
            r += 1;
        }
        m
    }

    fn adjugate(&self) -> IntMatrix {
        let d = self.d;
        if d == 1 {
            return IntMatrix::identity(1);
        }
        let mut adj = IntMatrix::zero(d);
        for i in 0..d {
            for j in 0..d {
                let cof = self.minor(i, j).det();
                adj[(j, i)] = if (i + j) % 2 == 0 { cof } else { -cof };
            }
        }
        adj
    }

    pub fn to_small(&self) -> Result<SmallIntMatrix, MatrixError> {
        use num_traits::ToPrimitive;
        let entries = self
            .entries
            .iter()
            .map(|e| e.to_i64().ok_or(MatrixError::Overflow))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SmallIntMatrix { d: self.d, entries })
    }

    /// Entries as decimal strings, row-major rows.
    pub fn to_decimal_rows(&self) -> Vec<Vec<String>> {
        (0..self.d)
            .map(|i| (0..self.d).map(|j| self[(i, j)].to_string()).collect())
            .collect()
    }

    /// Parses `"1,1,0;0,0,1;0,1,0"` (rows separated by `;`).
    pub fn parse(s: &str) -> Result<IntMatrix, MatrixError> {
        let rows: Vec<&str> = s
            .split(';')
            .map(str::trim)
            .filter(|r| !r.is_empty())
            .collect();
        let d = rows.len();
        let mut entries = Vec::with_capacity(d * d);
        for row in &rows {
            let cells: Vec<&str> = row.split(',').map(str::trim).collect();
            if cells.len() != d {
                return Err(MatrixError::Unparsable(s.to_string()));
            }
            for c in cells {
                let e: BigInt = c
                    .parse()
                    .map_err(|_| MatrixError::Unparsable(s.to_string()))?;
                entries.push(e);
            }
        }
        Ok(IntMatrix { d, entries })
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.d + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.d + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.d {
            let row: Vec<String> = (0..self.d).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Square `i64` matrix for per-step algorithm data.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SmallIntMatrix {
    d: usize,
    entries: Vec<i64>,
}

impl SmallIntMatrix {
    pub fn zero(d: usize) -> Self {
        SmallIntMatrix {
            d,
            entries: vec![0; d * d],
        }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Self::zero(d);
        for i in 0..d {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn transpose(&self) -> SmallIntMatrix {
        let mut m = SmallIntMatrix::zero(self.d);
        for i in 0..self.d {
            for j in 0..self.d {
                m[(j, i)] = self[(i, j)];
            }
        }
        m
    }

    pub fn to_big(&self) -> IntMatrix {
        IntMatrix {
            d: self.d,
            entries: self.entries.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    /// Inverse of a unimodular matrix; panics if |det| ≠ 1 (use on catalog data).
    pub fn inverse_unimodular(&self) -> SmallIntMatrix {
        self.to_big()
            .inverse_unimodular()
            .expect("unimodular by construction")
            .to_small()
            .expect("inverse entries fit i64")
    }

    pub fn mul_vec_f64(&self, v: &[f64], out: &mut [f64]) {
        let d = self.d;
        for i in 0..d {
            let mut acc = 0.0;
            for j in 0..d {
                acc += self.entries[i * d + j] as f64 * v[j];
            }
            out[i] = acc;
        }
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }
}

impl std::ops::Index<(usize, usize)> for SmallIntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.entries[i * self.d + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for SmallIntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.entries[i * self.d + j]
    }
}

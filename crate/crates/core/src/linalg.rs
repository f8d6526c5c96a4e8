//! Exact linear algebra over arbitrary-precision rationals.
//!
//! Every computation in this crate that looks numerical is really algebraic:
//! ranks, kernels and solutions are obtained by fraction-free friendly
//! Gaussian elimination over [`Rat`], so there are no pivot thresholds and no
//! epsilons anywhere. The matrices involved are tiny (at most 6x6), which
//! keeps the arbitrary-precision cost irrelevant.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar: arbitrary-precision, always in reduced form with a
/// positive denominator.
pub type Rat = BigRational;

/// Shape errors for matrix construction and arithmetic.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("shape mismatch: left is {left_rows}x{left_cols}, right is {right_rows}x{right_cols}")]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
}

/// Small-constant constructor, `rat(n, d) = n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Integer constant as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Render `p/q`, omitting the denominator when it is 1.
pub fn format_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Render a vector as `(a, b, ...)` using [`format_rat`] for each entry.
pub fn format_vec(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(format_rat).collect();
    format!("({})", parts.join(", "))
}

fn vec_is_zero(v: &[Rat]) -> bool {
    v.iter().all(Rat::is_zero)
}

/// Scale a vector by a positive rational so that its entries are coprime
/// integers. The direction is preserved, which is what rays of a cone need.
/// Returns `None` for the zero vector.
pub fn primitive_ray(v: &[Rat]) -> Option<Vec<Rat>> {
    if vec_is_zero(v) {
        return None;
    }
    let mut denom_lcm = BigInt::one();
    for x in v {
        denom_lcm = denom_lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&denom_lcm / x.denom()))
        .collect();
    let mut g = BigInt::zero();
    for n in &ints {
        g = g.gcd(n);
    }
    Some(ints.iter().map(|n| Rat::from_integer(n / &g)).collect())
}

/// Like [`primitive_ray`], but additionally flips the sign so the first
/// nonzero entry is positive. Use this for sign-free vectors only (kernel
/// elements, lineality directions), never for rays.
pub fn primitive_signed(v: &[Rat]) -> Option<Vec<Rat>> {
    let p = primitive_ray(v)?;
    let flip = p
        .iter()
        .find(|x| !x.is_zero())
        .map(|x| x.is_negative())
        .unwrap_or(false);
    if flip {
        Some(p.into_iter().map(|x| -x).collect())
    } else {
        Some(p)
    }
}

/// Dot product of two equal-length vectors.
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Dense row-major matrix over exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    /// Zero matrix of the given shape.
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    /// Identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Build from rows; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let ncols = rows.first().map(Vec::len).unwrap_or(0);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != ncols {
                return Err(LinalgError::RaggedRow {
                    row: i,
                    expected: ncols,
                    found: r.len(),
                });
            }
        }
        Ok(QMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Build from integer rows; convenient in tests and for pairing tables.
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        QMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| rat_int(n)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    /// Borrow row `r` as a slice.
    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &QMatrix) -> Result<QMatrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::ShapeMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: rhs.rows,
                right_cols: rhs.cols,
            });
        }
        let mut out = QMatrix::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = Rat::zero();
                for k in 0..self.cols {
                    acc += self.get(r, k) * rhs.get(k, c);
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `self * v`.
    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>, LinalgError> {
        if self.cols != v.len() {
            return Err(LinalgError::ShapeMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: v.len(),
                right_cols: 1,
            });
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), v)).collect())
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if src != pivot_row {
                for c in 0..m.cols {
                    let a = m.get(pivot_row, c).clone();
                    let b = m.get(src, c).clone();
                    m.set(pivot_row, c, b);
                    m.set(src, c, a);
                }
            }
            let inv = m.get(pivot_row, col).recip();
            for c in col..m.cols {
                let v = m.get(pivot_row, c) * &inv;
                m.set(pivot_row, c, v);
            }
            for r in 0..m.rows {
                if r != pivot_row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    for c in col..m.cols {
                        let v = m.get(r, c) - &factor * m.get(pivot_row, c);
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{x : self * x = 0}`.
    ///
    /// One vector per free column, ordered by free column index, each
    /// normalized to coprime integer entries with positive leading sign.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, free).clone();
            }
            basis.push(primitive_signed(&v).expect("kernel vector is nonzero"));
        }
        basis
    }

    /// One exact solution of `self * x = rhs`, or `None` when the system is
    /// inconsistent. Free variables are set to zero, so the answer is
    /// deterministic; add kernel vectors for the general solution.
    pub fn solve(&self, rhs: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(rhs.len(), self.rows, "right-hand side has wrong length");
        let mut aug = QMatrix::zero(self.rows, self.cols + 1);
        for (r, rhs_r) in rhs.iter().enumerate() {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, rhs_r.clone());
        }
        let (red, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = red.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = QMatrix::zero(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, Rat::one());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = QMatrix::zero(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c).clone());
            }
        }
        Some(inv)
    }
}

//! Dense complex and real small-matrix kernel.
//!
//! Everything in this crate runs on matrices of dimension 16 or less, so the
//! representation is a plain row-major `Vec` of complex scalars with no
//! attempt at sparsity or blocking. States are `N x 1` matrices.

mod eig;
mod expm;

pub use eig::{canonical_phase, eig_normal, EigenDecomposition};
pub use expm::expm;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;
use thiserror::Error;

/// Complex scalar: a pair of 64-bit floats.
pub type C64 = Complex<f64>;

/// Errors from the matrix kernel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("{rows}x{cols} matrix needs {} entries, got {found}", rows * cols)]
    BadEntryCount {
        rows: usize,
        cols: usize,
        found: usize,
    },
    #[error("matrix must be non-empty")]
    Empty,
    #[error("shape mismatch: {0}x{1} vs {2}x{3}")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("matrix must be square, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("matrix is not normal: residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    NotNormal { residual: f64, tol: f64 },
    #[error("eigensolver did not converge within {0} sweeps")]
    NoConvergence(usize),
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<C64>,
}

impl ComplexMatrix {
    /// Build a matrix from row-major entries, rejecting non-finite values.
    pub fn new(rows: usize, cols: usize, entries: Vec<C64>) -> Result<Self, NumericsError> {
        if rows == 0 || cols == 0 {
            return Err(NumericsError::Empty);
        }
        if entries.len() != rows * cols {
            return Err(NumericsError::BadEntryCount {
                rows,
                cols,
                found: entries.len(),
            });
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(NumericsError::NonFinite);
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Build from nested rows; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self, NumericsError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(NumericsError::BadEntryCount {
                rows: r,
                cols: c,
                found: rows.iter().map(Vec::len).sum(),
            });
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Build a real matrix (imaginary parts exactly zero) from nested rows.
    pub fn from_real_rows(rows: Vec<Vec<f64>>) -> Result<Self, NumericsError> {
        Self::from_rows(
            rows.into_iter()
                .map(|row| row.into_iter().map(|x| C64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    /// Column vector from a slice of complex amplitudes.
    pub fn column_vector(amplitudes: &[C64]) -> Result<Self, NumericsError> {
        Self::new(amplitudes.len(), 1, amplitudes.to_vec())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    /// The `j`-th column as an `N x 1` matrix.
    pub fn column(&self, j: usize) -> Self {
        let entries = (0..self.rows).map(|i| self[(i, j)]).collect();
        Self {
            rows: self.rows,
            cols: 1,
            entries,
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        self.transpose().conj()
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    /// Real parts, as a matrix with zero imaginary parts.
    pub fn re_part(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| C64::new(z.re, 0.0)).collect(),
        }
    }

    /// Imaginary parts, as a matrix with zero imaginary parts.
    pub fn im_part(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| C64::new(z.im, 0.0)).collect(),
        }
    }

    /// Largest entry magnitude, max over |Re| and |Im| separately.
    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.re.abs().max(z.im.abs()))
            .fold(0.0, f64::max)
    }

    /// Max-abs norm of the entrywise difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "max_abs_diff: shape mismatch"
        );
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| {
                let d = a - b;
                d.re.abs().max(d.im.abs())
            })
            .fold(0.0, f64::max)
    }

    /// Euclidean norm of a column vector (Frobenius norm for matrices).
    pub fn norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest absolute imaginary part; zero for real matrices.
    pub fn max_imag(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.im.abs())
            .fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.is_square() && (&self.dagger() * self).max_abs_diff(&Self::identity(self.rows)) < tol
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.dagger().max_abs_diff(self) < tol
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.entries[i * self.cols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product: {}x{} times {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                for j in 0..rhs.cols {
                    out[(i, j)] += aik * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let z = self[(i, j)];
                if j > 0 {
                    write!(f, "  ")?;
                }
                write!(f, "{:+.6}{:+.6}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Kronecker product `a (x) b`, left factor on the slow index.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(a.rows * b.rows, a.cols * b.cols);
    for ai in 0..a.rows {
        for aj in 0..a.cols {
            let f = a[(ai, aj)];
            for bi in 0..b.rows {
                for bj in 0..b.cols {
                    out[(ai * b.rows + bi, aj * b.cols + bj)] = f * b[(bi, bj)];
                }
            }
        }
    }
    out
}

/// Frobenius inner product `Tr[a^dagger b]`.
pub fn frobenius(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<C64, NumericsError> {
    if (a.rows, a.cols) != (b.rows, b.cols) {
        return Err(NumericsError::ShapeMismatch(a.rows, a.cols, b.rows, b.cols));
    }
    Ok(a.entries
        .iter()
        .zip(&b.entries)
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// Determinant via LU with partial pivoting. Singular matrices return 0.
pub fn determinant(m: &ComplexMatrix) -> Result<C64, NumericsError> {
    if !m.is_square() {
        return Err(NumericsError::NotSquare(m.rows, m.cols));
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut det = C64::new(1.0, 0.0);
    for k in 0..n {
        let pivot_row = (k..n)
            .max_by(|&i, &j| {
                a[(i, k)]
                    .norm()
                    .partial_cmp(&a[(j, k)].norm())
                    .expect("finite entries")
            })
            .expect("non-empty range");
        if a[(pivot_row, k)].norm() == 0.0 {
            return Ok(C64::new(0.0, 0.0));
        }
        if pivot_row != k {
            for j in 0..n {
                let tmp = a[(k, j)];
                a[(k, j)] = a[(pivot_row, j)];
                a[(pivot_row, j)] = tmp;
            }
            det = -det;
        }
        let pivot = a[(k, k)];
        det *= pivot;
        for i in (k + 1)..n {
            let factor = a[(i, k)] / pivot;
            for j in k..n {
                let akj = a[(k, j)];
                a[(i, j)] -= factor * akj;
            }
        }
    }
    Ok(det)
}

//! The Pauli-tensor basis of End(R^{2^n}) and the footprint of the
//! complex-to-real mapping inside it.
//!
//! Four real 2x2 matrices e0=I, e1=X, e2=J, e3=Z generate, by n-fold
//! Kronecker products scaled by 2^{-n/2}, a Frobenius-orthonormal basis
//! of all real 2^n x 2^n matrices. An element is antisymmetric exactly
//! when an odd number of J factors appears, which reproduces the
//! dimension count N(N-1)/2 of the antisymmetric space. Matrices that
//! arrive through the complex embedding occupy only the half of the
//! basis whose factor at the J slot commutes with J.

use thiserror::Error;

use crate::numerics::{frobenius, kron, ComplexMatrix, NumericsError, C64};
use crate::realspace::Convention;

/// Commutators of exact-entry matrices are compared against this.
const COMMUTE_TOL: f64 = 1e-12;

/// Pivot threshold for the rank computation in [`mapping_image_dimension`];
/// the coefficients are dyadic rationals, so anything below is noise.
const RANK_PIVOT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EndomorphismError {
    #[error("index {index} out of range for order {n} (need 0..{limit})")]
    IndexOutOfRange { n: usize, index: usize, limit: usize },
    #[error("order {0} out of supported range 1..=4")]
    OrderOutOfRange(usize),
    #[error("expected a {expected}x{expected} matrix, got {rows}x{cols}")]
    DimensionMismatch {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("matrix must have exactly zero imaginary parts")]
    NotReal,
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// One normalized Kronecker word `2^{-n/2} e_{i_n} (x) ... (x) e_{i_1}`.
///
/// `digits[k-1]` is the factor label at position k counting from the
/// right of the chain, so `index = sum_k digits[k-1] * 4^{k-1}` is the
/// plain base-4 reading.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisElement {
    pub n: usize,
    pub digits: Vec<u8>,
    pub index: usize,
    pub matrix: ComplexMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetryClass {
    Symmetric,
    Antisymmetric,
}

/// Pairwise orthonormality scan result for one order n.
#[derive(Debug, Clone, Copy)]
pub struct VerifyReport {
    pub count: usize,
    pub max_off_diagonal: f64,
    pub max_diagonal_error: f64,
    pub passed: bool,
}

fn factor(label: u8) -> ComplexMatrix {
    let rows = match label {
        0 => vec![vec![1.0, 0.0], vec![0.0, 1.0]],
        1 => vec![vec![0.0, 1.0], vec![1.0, 0.0]],
        2 => vec![vec![0.0, -1.0], vec![1.0, 0.0]],
        3 => vec![vec![1.0, 0.0], vec![0.0, -1.0]],
        _ => unreachable!("digits are base 4"),
    };
    ComplexMatrix::from_real_rows(rows).expect("static")
}

fn check_order(n: usize) -> Result<(), EndomorphismError> {
    if n == 0 || n > 4 {
        return Err(EndomorphismError::OrderOutOfRange(n));
    }
    Ok(())
}

/// Construct the basis element of End(R^{2^n}) at a base-4 index.
pub fn basis_element(n: usize, index: usize) -> Result<BasisElement, EndomorphismError> {
    check_order(n)?;
    let limit = 4usize.pow(n as u32);
    if index >= limit {
        return Err(EndomorphismError::IndexOutOfRange { n, index, limit });
    }
    let mut digits = Vec::with_capacity(n);
    let mut rest = index;
    for _ in 0..n {
        digits.push((rest % 4) as u8);
        rest /= 4;
    }
    // The chain runs e_{i_n} (x) ... (x) e_{i_1}: highest digit leftmost.
    let mut matrix = factor(digits[n - 1]);
    for k in (0..n - 1).rev() {
        matrix = kron(&matrix, &factor(digits[k]));
    }
    let norm = 2f64.powf(-(n as f64) / 2.0);
    Ok(BasisElement {
        n,
        digits,
        index,
        matrix: matrix.scale(C64::new(norm, 0.0)),
    })
}

/// Scan all 4^n x 4^n Frobenius pairings against the Kronecker delta.
pub fn verify_basis(n: usize, tol: f64) -> Result<VerifyReport, EndomorphismError> {
    check_order(n)?;
    let count = 4usize.pow(n as u32);
    let elements: Vec<BasisElement> = (0..count)
        .map(|i| basis_element(n, i).expect("index in range"))
        .collect();
    let mut max_off = 0.0f64;
    let mut max_diag = 0.0f64;
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            let overlap = frobenius(&a.matrix, &b.matrix).expect("same shape");
            if i == j {
                max_diag = max_diag.max((overlap - C64::new(1.0, 0.0)).norm());
            } else {
                max_off = max_off.max(overlap.norm());
            }
        }
    }
    Ok(VerifyReport {
        count,
        max_off_diagonal: max_off,
        max_diagonal_error: max_diag,
        passed: max_off < tol && max_diag < tol,
    })
}

/// Read the symmetry class off the matrix itself; the digit-parity rule
/// (odd count of J factors <=> antisymmetric) is what the tests check
/// this against.
pub fn classify(b: &BasisElement) -> SymmetryClass {
    let t = b.matrix.transpose();
    if t.max_abs_diff(&b.matrix) == 0.0 {
        SymmetryClass::Symmetric
    } else {
        debug_assert_eq!(
            t.max_abs_diff(&b.matrix.scale(C64::new(-1.0, 0.0))),
            0.0,
            "every Kronecker word is exactly symmetric or antisymmetric"
        );
        SymmetryClass::Antisymmetric
    }
}

/// Frobenius coefficients of a real 2^n x 2^n matrix in the basis.
pub fn expand(m: &ComplexMatrix, n: usize) -> Result<Vec<f64>, EndomorphismError> {
    check_order(n)?;
    let dim = 1usize << n;
    if m.rows() != dim || m.cols() != dim {
        return Err(EndomorphismError::DimensionMismatch {
            expected: dim,
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if m.max_imag() != 0.0 {
        return Err(EndomorphismError::NotReal);
    }
    let count = 4usize.pow(n as u32);
    let mut coeffs = Vec::with_capacity(count);
    for i in 0..count {
        let v = basis_element(n, i)?;
        coeffs.push(frobenius(&v.matrix, m)?.re);
    }
    Ok(coeffs)
}

/// Rebuild `sum_i c_i v_i` from an expansion.
pub fn reconstruct(coeffs: &[f64], n: usize) -> Result<ComplexMatrix, EndomorphismError> {
    check_order(n)?;
    let count = 4usize.pow(n as u32);
    if coeffs.len() != count {
        return Err(EndomorphismError::DimensionMismatch {
            expected: count,
            rows: coeffs.len(),
            cols: 1,
        });
    }
    let dim = 1usize << n;
    let mut out = ComplexMatrix::zeros(dim, dim);
    for (i, &c) in coeffs.iter().enumerate() {
        if c != 0.0 {
            out = &out + &basis_element(n, i)?.matrix.scale(C64::new(c, 0.0));
        }
    }
    Ok(out)
}

/// The single-J structure `I (x) ... (x) J (at slot k) (x) ... (x) I`,
/// with k counted from the right starting at 1.
pub fn single_j_structure(n: usize, k: usize) -> ComplexMatrix {
    assert!(k >= 1 && k <= n, "slot out of range");
    let left = ComplexMatrix::identity(1 << (n - k));
    let right = ComplexMatrix::identity(1 << (k - 1));
    kron(&kron(&left, &factor(2)), &right)
}

/// All slots k whose single-J structure commutes with the element,
/// found by direct commutator evaluation. The digit picture says this
/// is exactly the set of slots carrying I or J.
pub fn commuting_j_positions(b: &BasisElement) -> Vec<usize> {
    (1..=b.n)
        .filter(|&k| {
            let j = single_j_structure(b.n, k);
            (&(&b.matrix * &j) - &(&j * &b.matrix)).max_abs() < COMMUTE_TOL
        })
        .collect()
}

// The elimination loop reads the pivot row while mutating another, so
// plain indexing is clearer than a split_at_mut iterator dance.
#[allow(clippy::needless_range_loop)]
fn rank(mut rows: Vec<Vec<f64>>, tol: f64) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let pivot = (rank..rows.len())
            .max_by(|&a, &b| rows[a][col].abs().total_cmp(&rows[b][col].abs()));
        let Some(pivot) = pivot else { break };
        if rows[pivot][col].abs() < tol {
            continue;
        }
        rows.swap(rank, pivot);
        for r in rank + 1..rows.len() {
            let f = rows[r][col] / rows[rank][col];
            if f != 0.0 {
                for c in col..ncols {
                    rows[r][c] -= f * rows[rank][c];
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Dimension of the real span of the embedding's image inside
/// End(R^{2^n}): embed every real generator of End(C^{2^{n-1}})
/// (the matrix units E_pq and their i-multiples), expand each in the
/// basis, and count independent rows. The answer is half of 4^n — the
/// embedding fills exactly the directions commuting with its J.
pub fn mapping_image_dimension(
    n: usize,
    convention: Convention,
) -> Result<usize, EndomorphismError> {
    check_order(n)?;
    if n < 2 {
        return Err(EndomorphismError::OrderOutOfRange(n));
    }
    let m = 1usize << (n - 1);
    let mut rows = Vec::with_capacity(2 * m * m);
    for p in 0..m {
        for q in 0..m {
            for unit in [C64::new(1.0, 0.0), C64::new(0.0, 1.0)] {
                let mut gen = ComplexMatrix::zeros(m, m);
                gen[(p, q)] = unit;
                let image = crate::realspace::embed(&gen, convention).matrix;
                rows.push(expand(&image, n)?);
            }
        }
    }
    Ok(rank(rows, RANK_PIVOT_TOL))
}

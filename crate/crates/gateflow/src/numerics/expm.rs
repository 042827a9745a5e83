//! Matrix exponential by scaling and squaring.

use super::{ComplexMatrix, NumericsError, C64};

/// Number of Taylor terms; with the argument scaled to norm <= 1/2 the
/// truncation error is far below machine precision.
const TAYLOR_TERMS: u32 = 20;

/// exp(m) for a square matrix.
pub fn expm(m: &ComplexMatrix) -> Result<ComplexMatrix, NumericsError> {
    if !m.is_square() {
        return Err(NumericsError::NotSquare(m.rows(), m.cols()));
    }
    let n = m.rows();
    let mut norm = 0.0f64;
    for i in 0..n {
        let row: f64 = (0..n).map(|j| m[(i, j)].norm()).sum();
        norm = norm.max(row);
    }
    let squarings = if norm <= 0.5 {
        0
    } else {
        (norm / 0.5).log2().ceil() as i32
    };
    let b = m.scale(C64::new(0.5f64.powi(squarings), 0.0));
    let mut sum = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..=TAYLOR_TERMS {
        term = (&term * &b).scale(C64::new(1.0 / f64::from(k), 0.0));
        sum = &sum + &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    Ok(sum)
}

//! The complex-to-real embedding and its special-orthogonal geometry.
//!
//! A complex N x N matrix `A = X + iY` embeds as a real 2N x 2N matrix in
//! either of two interleavings: `A_FIRST` keeps the complex-plane pair on
//! the fast index (`X (x) I2 + Y (x) J2`, each scalar becomes a 2x2 block)
//! and `J_FIRST` keeps it on the slow index (`I2 (x) X + J2 (x) Y`, the
//! matrix splits into four N x N quadrants). Both send multiplication to
//! multiplication, conjugation to transposition, and unitaries into
//! SO(2N); a real matrix is such an embedding exactly when it commutes
//! with the convention's J, the embedded image of the scalar i.

use thiserror::Error;

use crate::gates::{effective_hamiltonian, GateSpec};
use crate::numerics::{determinant, kron, ComplexMatrix, NumericsError, C64};

/// Block-form tolerance used by [`unembed`].
const BLOCK_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RealspaceError {
    #[error("matrix is not an embedding image: block residual {0:.3e}")]
    NotComplexStructured(f64),
    #[error("matrix dimension must be even, got {0}")]
    OddDimension(usize),
    #[error("matrix must be square, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("matrix must have exactly zero imaginary parts")]
    NotReal,
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Which tensor factor carries the complex-plane pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// `X (x) I2 + Y (x) J2`: each complex scalar becomes a 2x2 block.
    AFirst,
    /// `I2 (x) X + J2 (x) Y`: four N x N quadrants [[X, -Y], [Y, X]].
    JFirst,
}

impl Convention {
    pub fn label(self) -> &'static str {
        match self {
            Convention::AFirst => "A_FIRST",
            Convention::JFirst => "J_FIRST",
        }
    }
}

/// A real 2N x 2N matrix tagged with the convention that produced it.
#[derive(Debug, Clone)]
pub struct RealEmbedding {
    pub matrix: ComplexMatrix,
    pub convention: Convention,
    pub source_dim: usize,
}

impl RealEmbedding {
    /// Wrap an existing real even-dimensional matrix so it can be passed to
    /// [`unembed`]; the complex-form block check happens there.
    pub fn from_matrix(
        matrix: ComplexMatrix,
        convention: Convention,
    ) -> Result<Self, RealspaceError> {
        if !matrix.is_square() {
            return Err(RealspaceError::NotSquare(matrix.rows(), matrix.cols()));
        }
        if !matrix.rows().is_multiple_of(2) {
            return Err(RealspaceError::OddDimension(matrix.rows()));
        }
        if matrix.max_imag() != 0.0 {
            return Err(RealspaceError::NotReal);
        }
        let source_dim = matrix.rows() / 2;
        Ok(Self {
            matrix,
            convention,
            source_dim,
        })
    }
}

/// An antisymmetric real generator, `exp(matrix * t)` tracing an SO path.
#[derive(Debug, Clone)]
pub struct GeneratorMatrix {
    pub matrix: ComplexMatrix,
}

fn j2() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(vec![vec![0.0, -1.0], vec![1.0, 0.0]]).expect("static")
}

/// Embed a square complex matrix as a real matrix of twice the dimension.
pub fn embed(a: &ComplexMatrix, convention: Convention) -> RealEmbedding {
    assert!(a.is_square(), "embed expects a square matrix");
    let re = a.re_part();
    let im = a.im_part();
    let i2 = ComplexMatrix::identity(2);
    let matrix = match convention {
        Convention::AFirst => &kron(&re, &i2) + &kron(&im, &j2()),
        Convention::JFirst => &kron(&i2, &re) + &kron(&j2(), &im),
    };
    RealEmbedding {
        matrix,
        convention,
        source_dim: a.rows(),
    }
}

/// Invert [`embed`]: read the complex entries back out of the 2x2 blocks
/// (A_FIRST) or N x N quadrants (J_FIRST). Exact on true embedding images;
/// fails if any block departs from the [[x, -y], [y, x]] form by more
/// than 1e-10.
pub fn unembed(e: &RealEmbedding) -> Result<ComplexMatrix, RealspaceError> {
    let n = e.source_dim;
    let m = &e.matrix;
    let mut out = ComplexMatrix::zeros(n, n);
    let mut worst = 0.0f64;
    for p in 0..n {
        for q in 0..n {
            let (b00, b01, b10, b11) = match e.convention {
                Convention::AFirst => (
                    m[(2 * p, 2 * q)].re,
                    m[(2 * p, 2 * q + 1)].re,
                    m[(2 * p + 1, 2 * q)].re,
                    m[(2 * p + 1, 2 * q + 1)].re,
                ),
                Convention::JFirst => (
                    m[(p, q)].re,
                    m[(p, q + n)].re,
                    m[(p + n, q)].re,
                    m[(p + n, q + n)].re,
                ),
            };
            worst = worst.max((b00 - b11).abs()).max((b01 + b10).abs());
            out[(p, q)] = C64::new((b00 + b11) / 2.0, (b10 - b01) / 2.0);
        }
    }
    if worst > BLOCK_TOL {
        return Err(RealspaceError::NotComplexStructured(worst));
    }
    Ok(out)
}

/// The embedded image of the scalar i: `I_N (x) J2` (A_FIRST) or
/// `J2 (x) I_N` (J_FIRST). Squares to -I exactly.
pub fn j_matrix(n: usize, convention: Convention) -> ComplexMatrix {
    let i_n = ComplexMatrix::identity(n);
    match convention {
        Convention::AFirst => kron(&i_n, &j2()),
        Convention::JFirst => kron(&j2(), &i_n),
    }
}

/// Whether a real even-dimensional matrix commutes with the convention's J,
/// i.e. lies in the image of the embedding.
pub fn is_complex_structure(
    m: &ComplexMatrix,
    convention: Convention,
    tol: f64,
) -> Result<bool, RealspaceError> {
    if !m.is_square() {
        return Err(RealspaceError::NotSquare(m.rows(), m.cols()));
    }
    if !m.rows().is_multiple_of(2) {
        return Err(RealspaceError::OddDimension(m.rows()));
    }
    let j = j_matrix(m.rows() / 2, convention);
    Ok((&(m * &j) - &(&j * m)).max_abs() < tol)
}

/// The perfect-shuffle permutation P with
/// `P . embed(A, A_FIRST) . P^T = embed(A, J_FIRST)`: row 2p+s of the
/// A_FIRST layout moves to row sN+p of the J_FIRST layout.
pub fn convention_permutation(n: usize) -> ComplexMatrix {
    let mut p_mat = ComplexMatrix::zeros(2 * n, 2 * n);
    for p in 0..n {
        for s in 0..2 {
            p_mat[(s * n + p, 2 * p + s)] = C64::new(1.0, 0.0);
        }
    }
    p_mat
}

/// Orthogonal with determinant +1, both within `tol`. Matrices with any
/// imaginary content beyond `tol` are rejected outright.
pub fn is_special_orthogonal(m: &ComplexMatrix, tol: f64) -> bool {
    if !m.is_square() || m.max_imag() > tol {
        return false;
    }
    let n = m.rows();
    let gram_residual = (&m.transpose() * m).max_abs_diff(&ComplexMatrix::identity(n));
    if gram_residual >= tol {
        return false;
    }
    let det = determinant(m).expect("square");
    (det - C64::new(1.0, 0.0)).norm() < tol
}

/// The antisymmetric generator of the embedded evolution:
/// `Omega = embed(-iH)` for the gate's effective Hamiltonian, explicitly
/// antisymmetrized so `Omega^T = -Omega` holds exactly, with
/// `e^{Omega t} = embed(U(t))`.
pub fn so_generator(spec: &GateSpec, convention: Convention) -> GeneratorMatrix {
    let h = effective_hamiltonian(spec).matrix();
    let raw = embed(&h.scale(C64::new(0.0, -1.0)), convention).matrix;
    let matrix = (&raw - &raw.transpose()).scale(C64::new(0.5, 0.0));
    GeneratorMatrix { matrix }
}

/// Whether `h` embeds to a symmetric real matrix, i.e. its real part is
/// symmetric and its imaginary part antisymmetric; this is exactly the
/// Hermiticity of `h` seen through real eyes.
pub fn hermitian_embed_check(h: &ComplexMatrix, tol: f64) -> bool {
    if !h.is_square() {
        return false;
    }
    let e = embed(h, Convention::AFirst).matrix;
    e.max_abs_diff(&e.transpose()) < tol
}

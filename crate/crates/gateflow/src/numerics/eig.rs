//! Eigendecomposition of normal matrices by a two-stage Jacobi iteration.
//!
//! A normal matrix splits as `M = H + iK` with `H = (M + M^dagger)/2` and
//! `K = (M - M^dagger)/(2i)` both Hermitian and commuting. Stage one runs
//! cyclic complex Jacobi on `H`. Stage two diagonalizes `K` restricted to
//! each cluster of near-equal `H` eigenvalues, which is the only place `K`
//! can still act. Eigenvalues are then read off the diagonal of the
//! transformed `M`, so `lambda = h + ik` pairs stay consistent.

use std::cmp::Ordering;
use std::f64::consts::PI;

use super::{ComplexMatrix, NumericsError, C64};

const MAX_SWEEPS: usize = 100;

/// Clusters of Hermitian-part eigenvalues closer than this (relative to the
/// spectral scale) are treated as degenerate. Gaps between the threshold and
/// roughly 1e-6 lose accuracy to the restriction step; the matrices this
/// crate works with have exact degeneracies or order-one gaps.
const CLUSTER_REL_TOL: f64 = 1e-8;

/// Spectral decomposition `m = Phi Lambda Phi^dagger` with unitary `Phi`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Eigenvalues ordered by phase in (-pi, pi] ascending.
    pub eigenvalues: Vec<C64>,
    /// Matching eigenvectors as columns; orthonormal, including inside
    /// degenerate eigenspaces.
    pub eigenvectors: ComplexMatrix,
}

/// Principal phase of `z` on the branch (-pi, pi], sending exact -pi to +pi
/// so that eigenvalue -1 lands on the positive branch.
pub fn canonical_phase(z: C64) -> f64 {
    let p = z.arg();
    if p <= -PI {
        PI
    } else {
        p
    }
}

/// Diagonalize a normal matrix.
///
/// `tol` bounds both the accepted normality residual `max|MM^dagger -
/// M^dagger M|` and the verified reconstruction error
/// `max|Phi Lambda Phi^dagger - m|`.
pub fn eig_normal(m: &ComplexMatrix, tol: f64) -> Result<EigenDecomposition, NumericsError> {
    if !m.is_square() {
        return Err(NumericsError::NotSquare(m.rows(), m.cols()));
    }
    let n = m.rows();
    let md = m.dagger();
    let residual = (&(m * &md) - &(&md * m)).max_abs();
    if residual > tol {
        return Err(NumericsError::NotNormal { residual, tol });
    }

    let h = (m + &md).scale(C64::new(0.5, 0.0));
    let k = (m - &md).scale(C64::new(0.0, -0.5));

    let mut a = h;
    let mut v = ComplexMatrix::identity(n);
    jacobi_hermitian(&mut a, &mut v)?;

    let hdiag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let cluster_tol =
        CLUSTER_REL_TOL * hdiag.iter().fold(1.0f64, |acc, x| acc.max(x.abs()));
    let mut by_h: Vec<usize> = (0..n).collect();
    by_h.sort_by(|&i, &j| hdiag[i].partial_cmp(&hdiag[j]).expect("finite"));

    let w = &(&v.dagger() * &k) * &v;
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && hdiag[by_h[end]] - hdiag[by_h[end - 1]] <= cluster_tol {
            end += 1;
        }
        let cluster = &by_h[start..end];
        if cluster.len() > 1 {
            rotate_cluster(&mut v, &w, cluster)?;
        }
        start = end;
    }

    // Eigenvalues from the diagonal of the fully transformed matrix.
    let lam_mat = &(&v.dagger() * m) * &v;
    let mut eigenvalues: Vec<C64> = (0..n).map(|i| lam_mat[(i, i)]).collect();

    // Gauge: the largest-magnitude component of each eigenvector is made
    // real and non-negative. Near-ties resolve to the first such component
    // so the choice is stable under last-bit rounding.
    for j in 0..n {
        let maxmag = (0..n).map(|i| v[(i, j)].norm()).fold(0.0, f64::max);
        let best = (0..n)
            .find(|&i| v[(i, j)].norm() >= maxmag * (1.0 - 1e-12))
            .unwrap_or(0);
        let z = v[(best, j)];
        if z.norm() > 0.0 {
            let factor = z.conj().scale(1.0 / z.norm());
            for i in 0..n {
                v[(i, j)] *= factor;
            }
        }
    }

    // Order by phase ascending; exact phase ties fall back to descending
    // lexicographic order on the vectors, keeping identity eigenvectors in
    // natural order.
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| {
        canonical_phase(eigenvalues[i])
            .partial_cmp(&canonical_phase(eigenvalues[j]))
            .expect("finite")
            .then_with(|| column_cmp_desc(&v, i, j))
    });
    eigenvalues = idx.iter().map(|&i| eigenvalues[i]).collect();
    let mut phi = ComplexMatrix::zeros(n, n);
    for (new_j, &old_j) in idx.iter().enumerate() {
        for i in 0..n {
            phi[(i, new_j)] = v[(i, old_j)];
        }
    }

    let mut lam = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        lam[(i, i)] = eigenvalues[i];
    }
    let recon = &(&phi * &lam) * &phi.dagger();
    if recon.max_abs_diff(m) > tol {
        return Err(NumericsError::NoConvergence(MAX_SWEEPS));
    }
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors: phi,
    })
}

/// Cyclic complex Jacobi on a Hermitian matrix, accumulating rotations into
/// the columns of `v`.
fn jacobi_hermitian(a: &mut ComplexMatrix, v: &mut ComplexMatrix) -> Result<(), NumericsError> {
    let n = a.rows();
    let thresh = 1e-14 * a.max_abs().max(1.0);
    for _ in 0..MAX_SWEEPS {
        let mut max_off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                max_off = max_off.max(a[(p, q)].norm());
            }
        }
        if max_off <= thresh {
            return Ok(());
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(a, v, p, q, thresh);
            }
        }
    }
    Err(NumericsError::NoConvergence(MAX_SWEEPS))
}

/// One Jacobi rotation zeroing `a[(p, q)]`: a phase transform aligning the
/// pivot onto the real axis followed by a real Givens rotation through
/// `theta = atan2(2|a_pq|, a_pp - a_qq) / 2`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, thresh: f64) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r <= thresh {
        return;
    }
    let alpha = apq.arg();
    let theta = 0.5 * (2.0 * r).atan2(a[(p, p)].re - a[(q, q)].re);
    let (s, co) = theta.sin_cos();
    let ph = C64::new(alpha.cos(), -alpha.sin());
    let phc = ph.conj();
    let n = a.rows();
    for j in 0..n {
        let ap = a[(p, j)];
        let aq = a[(q, j)];
        a[(p, j)] = ap * co + aq * phc * s;
        a[(q, j)] = -ap * s + aq * phc * co;
    }
    for i in 0..n {
        let ap = a[(i, p)];
        let aq = a[(i, q)];
        a[(i, p)] = ap * co + aq * ph * s;
        a[(i, q)] = -ap * s + aq * ph * co;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
    for i in 0..v.rows() {
        let vp = v[(i, p)];
        let vq = v[(i, q)];
        v[(i, p)] = vp * co + vq * ph * s;
        v[(i, q)] = -vp * s + vq * ph * co;
    }
}

/// Diagonalize `w` (the transformed anti-Hermitian part) restricted to one
/// degenerate cluster and fold the rotation back into `v`'s columns.
fn rotate_cluster(
    v: &mut ComplexMatrix,
    w: &ComplexMatrix,
    cluster: &[usize],
) -> Result<(), NumericsError> {
    let csize = cluster.len();
    let mut kb = ComplexMatrix::zeros(csize, csize);
    for (bi, &gi) in cluster.iter().enumerate() {
        for (bj, &gj) in cluster.iter().enumerate() {
            // Symmetrized read: w is Hermitian only up to rounding.
            kb[(bi, bj)] = (w[(gi, gj)] + w[(gj, gi)].conj()).scale(0.5);
        }
    }
    let mut vc = ComplexMatrix::identity(csize);
    jacobi_hermitian(&mut kb, &mut vc)?;
    for i in 0..v.rows() {
        let old: Vec<C64> = cluster.iter().map(|&g| v[(i, g)]).collect();
        for (bj, &gj) in cluster.iter().enumerate() {
            let mut sum = C64::new(0.0, 0.0);
            for (bi, o) in old.iter().enumerate() {
                sum += o * vc[(bi, bj)];
            }
            v[(i, gj)] = sum;
        }
    }
    Ok(())
}

/// Descending lexicographic comparison of columns `i` and `j` of `v`,
/// componentwise on (re, im).
fn column_cmp_desc(v: &ComplexMatrix, i: usize, j: usize) -> Ordering {
    for r in 0..v.rows() {
        let a = v[(r, i)];
        let b = v[(r, j)];
        let ord = b
            .re
            .partial_cmp(&a.re)
            .expect("finite")
            .then(b.im.partial_cmp(&a.im).expect("finite"));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    Ordering::Equal
}

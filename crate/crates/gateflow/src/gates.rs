//! Gate catalog and effective-Hamiltonian time interpolation.
//!
//! A gate `U` with spectral decomposition `U = sum_i e^{i phi_i} P_i` is the
//! endpoint of the continuous family `U(t) = sum_i e^{i phi_i t/tau} P_i`,
//! which is the evolution generated by the effective Hamiltonian
//! `H = sum_i omega_i P_i` with `omega_i = -phi_i / tau` (hbar = 1). The
//! catalog pins the eigenphases and eigenvector conventions of the standard
//! single- and two-qubit gates so intermediate times are reproducible.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use thiserror::Error;

use crate::numerics::{eig_normal, ComplexMatrix, NumericsError, C64};

/// Tolerance for treating two eigenphases as the same degenerate value.
const PHASE_GROUP_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GateError {
    #[error("unknown gate '{0}'")]
    UnknownGate(String),
    #[error("matrix is not unitary: residual {0:.3e}")]
    NotUnitary(f64),
    #[error("characteristic time must be positive and finite, got {0}")]
    InvalidTau(f64),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// A gate with its spectral data: `matrix = sum_i e^{i eigenphases[i]}
/// |phi_i><phi_i|` where `|phi_i>` is column `i` of `eigenvectors`.
///
/// Eigenphases live on the branch (-pi, pi] with eigenvalue -1 assigned
/// phase +pi; any other branch would change the intermediate `U(t)`.
#[derive(Debug, Clone)]
pub struct GateSpec {
    pub name: String,
    pub matrix: ComplexMatrix,
    pub eigenphases: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
    pub tau: f64,
}

impl GateSpec {
    /// Build a spec from an arbitrary unitary by diagonalizing it.
    pub fn from_unitary(
        name: &str,
        matrix: ComplexMatrix,
        tau: f64,
        tol: f64,
    ) -> Result<Self, GateError> {
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(GateError::InvalidTau(tau));
        }
        if !matrix.is_square() {
            return Err(GateError::DimensionMismatch(matrix.rows(), matrix.cols()));
        }
        let residual = (&matrix.dagger() * &matrix)
            .max_abs_diff(&ComplexMatrix::identity(matrix.rows()));
        if residual > tol {
            return Err(GateError::NotUnitary(residual));
        }
        let eig = eig_normal(&matrix, tol)?;
        let eigenphases = eig
            .eigenvalues
            .iter()
            .map(|&z| crate::numerics::canonical_phase(z))
            .collect();
        Ok(Self {
            name: name.to_string(),
            matrix,
            eigenphases,
            eigenvectors: eig.eigenvectors,
            tau,
        })
    }

    /// Same gate with a different characteristic time.
    pub fn with_tau(mut self, tau: f64) -> Result<Self, GateError> {
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(GateError::InvalidTau(tau));
        }
        self.tau = tau;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }
}

/// Effective Hamiltonian data: `H = sum_i frequencies[i] |phi_i><phi_i|`
/// with `frequencies[i] = -eigenphases[i] / tau` (hbar = 1).
#[derive(Debug, Clone)]
pub struct HamiltonianSpec {
    pub frequencies: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HamiltonianSpec {
    /// The Hamiltonian matrix `sum_i omega_i |phi_i><phi_i|`.
    pub fn matrix(&self) -> ComplexMatrix {
        let n = self.eigenvectors.rows();
        let mut h = ComplexMatrix::zeros(n, n);
        for (i, &w) in self.frequencies.iter().enumerate() {
            let col = self.eigenvectors.column(i);
            h = &h + &(&col * &col.dagger()).scale(C64::new(w, 0.0));
        }
        h
    }
}

/// Names accepted by [`catalog`].
pub const CATALOG_NAMES: [&str; 9] = ["I", "X", "Y", "Z", "S", "T", "H", "CNOT", "BELL"];

/// Look up a standard gate with pinned spectral conventions
/// (case-insensitive name).
pub fn catalog(name: &str) -> Result<GateSpec, GateError> {
    let canonical = name.to_ascii_uppercase();
    let r = FRAC_1_SQRT_2;
    let (matrix, eigenphases, eigenvectors) = match canonical.as_str() {
        "I" => (
            ComplexMatrix::identity(2),
            vec![0.0, 0.0],
            ComplexMatrix::identity(2),
        ),
        "X" => (
            ComplexMatrix::from_real_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap(),
            vec![0.0, PI],
            // Second column carries the global phase -1: (-1, 1)/sqrt(2).
            ComplexMatrix::from_real_rows(vec![vec![r, -r], vec![r, r]]).unwrap(),
        ),
        "Y" => (
            ComplexMatrix::from_rows(vec![
                vec![C64::new(0.0, 0.0), C64::new(0.0, -1.0)],
                vec![C64::new(0.0, 1.0), C64::new(0.0, 0.0)],
            ])
            .unwrap(),
            vec![0.0, PI],
            ComplexMatrix::from_rows(vec![
                vec![C64::new(r, 0.0), C64::new(-r, 0.0)],
                vec![C64::new(0.0, r), C64::new(0.0, r)],
            ])
            .unwrap(),
        ),
        "Z" => (
            ComplexMatrix::from_real_rows(vec![vec![1.0, 0.0], vec![0.0, -1.0]]).unwrap(),
            vec![0.0, PI],
            ComplexMatrix::identity(2),
        ),
        "S" => (
            ComplexMatrix::from_rows(vec![
                vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
                vec![C64::new(0.0, 0.0), C64::new(0.0, 1.0)],
            ])
            .unwrap(),
            vec![0.0, PI / 2.0],
            ComplexMatrix::identity(2),
        ),
        "T" => (
            ComplexMatrix::from_rows(vec![
                vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
                vec![C64::new(0.0, 0.0), C64::from_polar(1.0, PI / 4.0)],
            ])
            .unwrap(),
            vec![0.0, PI / 4.0],
            ComplexMatrix::identity(2),
        ),
        "H" => {
            let (si, co) = (PI / 8.0).sin_cos();
            (
                ComplexMatrix::from_real_rows(vec![vec![r, r], vec![r, -r]]).unwrap(),
                vec![0.0, PI],
                ComplexMatrix::from_real_rows(vec![vec![co, -si], vec![si, co]]).unwrap(),
            )
        }
        "CNOT" => (
            ComplexMatrix::from_real_rows(vec![
                vec![1.0, 0.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0, 0.0],
                vec![0.0, 0.0, 0.0, 1.0],
                vec![0.0, 0.0, 1.0, 0.0],
            ])
            .unwrap(),
            vec![0.0, 0.0, 0.0, PI],
            ComplexMatrix::from_real_rows(vec![
                vec![1.0, 0.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0, 0.0],
                vec![0.0, 0.0, r, -r],
                vec![0.0, 0.0, r, r],
            ])
            .unwrap(),
        ),
        "BELL" => {
            let b = ComplexMatrix::from_real_rows(vec![
                vec![r, 0.0, r, 0.0],
                vec![0.0, r, 0.0, r],
                vec![0.0, r, 0.0, -r],
                vec![r, 0.0, -r, 0.0],
            ])
            .unwrap();
            return GateSpec::from_unitary("BELL", b, 1.0, 1e-10);
        }
        _ => return Err(GateError::UnknownGate(name.to_string())),
    };
    Ok(GateSpec {
        name: canonical,
        matrix,
        eigenphases,
        eigenvectors,
        tau: 1.0,
    })
}

/// Evolution operator at time `t`: `sum e^{i phi t/tau} P_phi`, where the sum
/// runs over distinct phases and `P_phi` is the full projector onto that
/// eigenspace. Summing per distinct phase (grouped within 1e-12) keeps
/// degenerate eigenspaces free of eigenvector-ordering artifacts.
pub fn gate_at_time(spec: &GateSpec, t: f64) -> ComplexMatrix {
    let n = spec.dim();
    let mut groups: Vec<(f64, ComplexMatrix)> = Vec::new();
    for (i, &phi) in spec.eigenphases.iter().enumerate() {
        let col = spec.eigenvectors.column(i);
        let proj = &col * &col.dagger();
        match groups
            .iter_mut()
            .find(|(p, _)| (*p - phi).abs() < PHASE_GROUP_TOL)
        {
            Some((_, acc)) => *acc = &*acc + &proj,
            None => groups.push((phi, proj)),
        }
    }
    let mut u = ComplexMatrix::zeros(n, n);
    for (phi, proj) in &groups {
        let f = C64::from_polar(1.0, phi * t / spec.tau);
        u = &u + &proj.scale(f);
    }
    u
}

/// Transplant an evolution onto a gate that shares its eigenvalues:
/// `U_B(t) = Phi_B Phi_A^dagger U_A(t) Phi_A Phi_B^dagger`.
pub fn transfer_common_eigs(
    target_phi: &ComplexMatrix,
    source_phi: &ComplexMatrix,
    source_at_t: &ComplexMatrix,
) -> Result<ComplexMatrix, GateError> {
    let n = source_at_t.rows();
    for m in [target_phi, source_phi, source_at_t] {
        if !m.is_square() || m.rows() != n {
            return Err(GateError::DimensionMismatch(m.rows(), n));
        }
    }
    for phi in [target_phi, source_phi] {
        if !phi.is_unitary(1e-8) {
            let residual = (&phi.dagger() * phi).max_abs_diff(&ComplexMatrix::identity(n));
            return Err(GateError::NotUnitary(residual));
        }
    }
    let bridge = &target_phi.clone() * &source_phi.dagger();
    Ok(&(&bridge * source_at_t) * &bridge.dagger())
}

/// The effective Hamiltonian generating the gate's evolution:
/// frequencies `omega_i = -phi_i / tau`, shared eigenvectors.
pub fn effective_hamiltonian(spec: &GateSpec) -> HamiltonianSpec {
    HamiltonianSpec {
        frequencies: spec.eigenphases.iter().map(|&p| -p / spec.tau).collect(),
        eigenvectors: spec.eigenvectors.clone(),
    }
}

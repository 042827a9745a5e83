//! Two-qubit evolution under an interaction Hamiltonian and an
//! entanglement monitor.
//!
//! The joint system evolves as `sum_ij e^{-i omega_ij t} |phi_ij><phi_ij|`
//! over the joint eigenstates. When the frequency grid splits as
//! `omega_ij = omega_i + omega_j` the phases factor into one per subsystem
//! and a product state stays a product; the CNOT grid (0, 0, 0, -pi/tau)
//! does not split, which is exactly what lets it entangle.
//!
//! Basis order throughout is (|00>, |01>, |10>, |11>) with the first
//! (control) qubit on the slow index.

use std::f64::consts::PI;

use thiserror::Error;

use crate::gates::{catalog, effective_hamiltonian, GateSpec};
use crate::numerics::{kron, ComplexMatrix, C64};

/// Frequencies closer than this are evolved through one shared projector.
const FREQ_GROUP_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EntanglementError {
    #[error("expected a {0}x{1} matrix")]
    DimensionMismatch(usize, usize),
    #[error("state vector must be nonzero")]
    ZeroVector,
    #[error("joint eigenstates must be unitary: residual {0:.3e}")]
    NotUnitary(f64),
    #[error("basis index must be in 0..=3, got {0}")]
    BadBasisIndex(usize),
    #[error("characteristic time must be positive and finite, got {0}")]
    InvalidTau(f64),
}

/// A pure two-qubit state: 4x1 amplitudes over (|00>, |01>, |10>, |11>),
/// unit norm by construction.
#[derive(Debug, Clone)]
pub struct BipartiteState {
    pub amplitudes: ComplexMatrix,
}

impl BipartiteState {
    /// Normalize a nonzero 4x1 amplitude vector.
    pub fn new(amplitudes: ComplexMatrix) -> Result<Self, EntanglementError> {
        if (amplitudes.rows(), amplitudes.cols()) != (4, 1) {
            return Err(EntanglementError::DimensionMismatch(4, 1));
        }
        let norm = amplitudes.norm();
        if norm == 0.0 {
            return Err(EntanglementError::ZeroVector);
        }
        Ok(Self {
            amplitudes: amplitudes.scale(C64::new(1.0 / norm, 0.0)),
        })
    }

    /// The standard basis state |00>, |01>, |10>, or |11>.
    pub fn basis(index: usize) -> Result<Self, EntanglementError> {
        if index > 3 {
            return Err(EntanglementError::BadBasisIndex(index));
        }
        let mut v = ComplexMatrix::zeros(4, 1);
        v[(index, 0)] = C64::new(1.0, 0.0);
        Ok(Self { amplitudes: v })
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amplitudes[(index, 0)]
    }
}

/// Interaction Hamiltonian data for the joint system: frequencies
/// `omega_ij` in basis order (00, 01, 10, 11) and the joint eigenstates
/// `|phi_ij>` as columns.
#[derive(Debug, Clone)]
pub struct InteractionSpec {
    pub frequencies: [f64; 4],
    pub eigenstates: ComplexMatrix,
}

impl InteractionSpec {
    pub fn new(frequencies: [f64; 4], eigenstates: ComplexMatrix) -> Result<Self, EntanglementError> {
        if (eigenstates.rows(), eigenstates.cols()) != (4, 4) {
            return Err(EntanglementError::DimensionMismatch(4, 4));
        }
        if !eigenstates.is_unitary(1e-10) {
            let residual = (&eigenstates.dagger() * &eigenstates)
                .max_abs_diff(&ComplexMatrix::identity(4));
            return Err(EntanglementError::NotUnitary(residual));
        }
        Ok(Self {
            frequencies,
            eigenstates,
        })
    }

    /// Interaction data of a 4x4 gate: the gate's effective-Hamiltonian
    /// frequencies over its own eigenstates.
    pub fn from_gate(spec: &GateSpec) -> Result<Self, EntanglementError> {
        if spec.dim() != 4 {
            return Err(EntanglementError::DimensionMismatch(4, 4));
        }
        let h = effective_hamiltonian(spec);
        let mut frequencies = [0.0; 4];
        frequencies.copy_from_slice(&h.frequencies);
        Self::new(frequencies, h.eigenvectors)
    }

    /// The CNOT interaction: frequencies (0, 0, 0, -pi/tau).
    pub fn cnot(tau: f64) -> Result<Self, EntanglementError> {
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(EntanglementError::InvalidTau(tau));
        }
        let spec = catalog("CNOT")
            .expect("CNOT in catalog")
            .with_tau(tau)
            .expect("tau validated");
        Self::from_gate(&spec)
    }
}

/// Product state `a (x) b` of two single-qubit states (each normalized
/// internally).
pub fn tensor_state(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
) -> Result<BipartiteState, EntanglementError> {
    for v in [a, b] {
        if (v.rows(), v.cols()) != (2, 1) {
            return Err(EntanglementError::DimensionMismatch(2, 1));
        }
    }
    BipartiteState::new(kron(a, b))
}

/// Evolve under the interaction: `sum e^{-i omega t} P_omega |Psi_0>`,
/// summing the projector per distinct frequency.
pub fn evolve_bipartite(spec: &InteractionSpec, initial: &BipartiteState, t: f64) -> BipartiteState {
    let mut groups: Vec<(f64, ComplexMatrix)> = Vec::new();
    for (i, &w) in spec.frequencies.iter().enumerate() {
        let col = spec.eigenstates.column(i);
        let proj = &col * &col.dagger();
        match groups
            .iter_mut()
            .find(|(g, _)| (*g - w).abs() < FREQ_GROUP_TOL)
        {
            Some((_, acc)) => *acc = &*acc + &proj,
            None => groups.push((w, proj)),
        }
    }
    let mut u = ComplexMatrix::zeros(4, 4);
    for (w, proj) in &groups {
        u = &u + &proj.scale(C64::from_polar(1.0, -w * t));
    }
    BipartiteState {
        amplitudes: &u * &initial.amplitudes,
    }
}

/// The CNOT evolution operator at time `t`: identity on the |0x> block, the
/// interpolated bit flip `(1 pm e^{i pi t/tau})/2` on the |1x> block.
pub fn cnot_at_time(t: f64, tau: f64) -> Result<ComplexMatrix, EntanglementError> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(EntanglementError::InvalidTau(tau));
    }
    let e = C64::from_polar(1.0, PI * t / tau);
    let one = C64::new(1.0, 0.0);
    let p = (one + e).scale(0.5);
    let m = (one - e).scale(0.5);
    let zero = C64::new(0.0, 0.0);
    Ok(ComplexMatrix::from_rows(vec![
        vec![one, zero, zero, zero],
        vec![zero, one, zero, zero],
        vec![zero, zero, p, m],
        vec![zero, zero, m, p],
    ])
    .expect("finite entries"))
}

/// Bell preparation circuit at intermediate time: apply `H (x) I` to the
/// chosen standard basis state, then `cnot_at_time(t, tau)`. At `t = tau`
/// the four basis indices yield the four Bell states.
pub fn bell_prepare(
    basis_index: usize,
    t: f64,
    tau: f64,
) -> Result<BipartiteState, EntanglementError> {
    let start = BipartiteState::basis(basis_index)?;
    let h = catalog("H").expect("H in catalog");
    let spread = kron(&h.matrix, &ComplexMatrix::identity(2));
    let cnot = cnot_at_time(t, tau)?;
    BipartiteState::new(&cnot * &(&spread * &start.amplitudes))
}

/// Concurrence of a pure two-qubit state: `2 |alpha delta - beta gamma|`,
/// clamped into [0, 1]. Zero exactly on product states, one on Bell states.
pub fn concurrence(state: &BipartiteState) -> f64 {
    let a = state.amplitude(0);
    let b = state.amplitude(1);
    let g = state.amplitude(2);
    let d = state.amplitude(3);
    (2.0 * (a * d - b * g).norm()).min(1.0)
}

/// Whether the frequency grid splits as `omega_ij = omega_i + omega_j`,
/// which holds iff `omega_00 + omega_11 = omega_01 + omega_10` within `tol`.
pub fn phase_factorizable(spec: &InteractionSpec, tol: f64) -> bool {
    let [w00, w01, w10, w11] = spec.frequencies;
    (w00 + w11 - w01 - w10).abs() <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::gate_at_time;
    use crate::test_util::{c, random_state, random_unitary, Rng64};

    fn assert_state(got: &BipartiteState, want: &[C64; 4], tol: f64) {
        for (i, w) in want.iter().enumerate() {
            assert!(
                (got.amplitude(i) - w).norm() < tol,
                "component {i}: {} vs {}",
                got.amplitude(i),
                w
            );
        }
    }

    #[test]
    fn tensor_state_examples() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let zero = ComplexMatrix::column_vector(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let x0 = ComplexMatrix::column_vector(&[c(r, 0.0), c(r, 0.0)]).unwrap();

        let s = tensor_state(&zero, &zero).unwrap();
        assert_state(&s, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)], 1e-15);

        let s = tensor_state(&x0, &zero).unwrap();
        assert_state(&s, &[c(r, 0.0), c(0.0, 0.0), c(r, 0.0), c(0.0, 0.0)], 1e-15);

        let s = tensor_state(&x0, &x0).unwrap();
        assert_state(
            &s,
            &[c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0)],
            1e-15,
        );
    }

    #[test]
    fn tensor_state_matches_kron_indexing() {
        let mut rng = Rng64::seeded(601);
        for _ in 0..20 {
            let a = random_state(&mut rng, 2);
            let b = random_state(&mut rng, 2);
            let s = tensor_state(&a, &b).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    let want = a[(i, 0)] * b[(j, 0)];
                    assert!((s.amplitude(2 * i + j) - want).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn evolve_at_zero_is_identity() {
        let mut rng = Rng64::seeded(607);
        let spec = InteractionSpec::cnot(1.0).unwrap();
        for _ in 0..10 {
            let psi = BipartiteState::new(random_state(&mut rng, 4)).unwrap();
            let out = evolve_bipartite(&spec, &psi, 0.0);
            assert!(out.amplitudes.max_abs_diff(&psi.amplitudes) < 1e-12);
        }
    }

    #[test]
    fn cnot_interaction_builds_bell_state() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let spec = InteractionSpec::cnot(1.0).unwrap();
        let zero = ComplexMatrix::column_vector(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let x0 = ComplexMatrix::column_vector(&[c(r, 0.0), c(r, 0.0)]).unwrap();
        let initial = tensor_state(&x0, &zero).unwrap();

        let end = evolve_bipartite(&spec, &initial, 1.0);
        assert_state(&end, &[c(r, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(r, 0.0)], 1e-10);

        let half = evolve_bipartite(&spec, &initial, 0.5);
        assert_state(
            &half,
            &[
                c(r, 0.0),
                c(0.0, 0.0),
                c(0.25 * std::f64::consts::SQRT_2, 0.25 * std::f64::consts::SQRT_2),
                c(0.25 * std::f64::consts::SQRT_2, -0.25 * std::f64::consts::SQRT_2),
            ],
            1e-12,
        );
    }

    #[test]
    fn cnot_at_time_endpoints_and_midpoint() {
        let cnot = catalog("CNOT").unwrap();
        assert!(cnot_at_time(0.0, 1.0)
            .unwrap()
            .max_abs_diff(&ComplexMatrix::identity(4))
            < 1e-15);
        assert!(cnot_at_time(1.0, 1.0).unwrap().max_abs_diff(&cnot.matrix) < 1e-12);
        let half = cnot_at_time(0.5, 1.0).unwrap();
        assert!((half[(2, 2)] - c(0.5, 0.5)).norm() < 1e-15);
        assert!((half[(2, 3)] - c(0.5, -0.5)).norm() < 1e-15);
        assert!((half[(3, 2)] - c(0.5, -0.5)).norm() < 1e-15);
        assert!((half[(3, 3)] - c(0.5, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn cnot_path_is_unitary_and_matches_gate_module() {
        let spec = catalog("CNOT").unwrap();
        for k in 0..100 {
            let t = 2.0 * f64::from(k) / 99.0;
            let u = cnot_at_time(t, 1.0).unwrap();
            assert!(u.is_unitary(1e-10));
            assert!(u.max_abs_diff(&gate_at_time(&spec, t)) < 1e-10);
        }
    }

    #[test]
    fn cnot_at_time_rejects_bad_tau() {
        assert!(matches!(
            cnot_at_time(0.5, 0.0),
            Err(EntanglementError::InvalidTau(_))
        ));
    }

    #[test]
    fn bell_prepare_reaches_all_four_bell_states() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let zero = c(0.0, 0.0);
        let cases: [[C64; 4]; 4] = [
            [c(r, 0.0), zero, zero, c(r, 0.0)],
            [zero, c(r, 0.0), c(r, 0.0), zero],
            [c(r, 0.0), zero, zero, c(-r, 0.0)],
            [zero, c(r, 0.0), c(-r, 0.0), zero],
        ];
        for (idx, want) in cases.iter().enumerate() {
            let state = bell_prepare(idx, 1.0, 1.0).unwrap();
            assert_state(&state, want, 1e-12);
            assert!((concurrence(&state) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn bell_prepare_start_is_product() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let state = bell_prepare(0, 0.0, 1.0).unwrap();
        assert_state(
            &state,
            &[c(r, 0.0), c(0.0, 0.0), c(r, 0.0), c(0.0, 0.0)],
            1e-15,
        );
        assert!(concurrence(&state) < 1e-15);
        assert!(matches!(
            bell_prepare(4, 0.0, 1.0),
            Err(EntanglementError::BadBasisIndex(4))
        ));
    }

    #[test]
    fn concurrence_on_products_is_zero() {
        let mut rng = Rng64::seeded(613);
        for _ in 0..20 {
            let a = random_state(&mut rng, 2);
            let b = random_state(&mut rng, 2);
            let s = tensor_state(&a, &b).unwrap();
            assert!(concurrence(&s) < 1e-12);
        }
    }

    #[test]
    fn concurrence_follows_sine_law_on_bell_path() {
        for k in 0..=40 {
            let t = f64::from(k) / 40.0;
            let state = bell_prepare(0, t, 1.0).unwrap();
            let want = (PI * t / 2.0).sin();
            assert!(
                (concurrence(&state) - want).abs() < 1e-9,
                "t={t}: {} vs {want}",
                concurrence(&state)
            );
        }
    }

    #[test]
    fn concurrence_matches_schmidt_oracle() {
        // Oracle: 2 l1 l2 from the Gram matrix of the 2x2 amplitude
        // reshuffle, via trace and determinant instead of the direct
        // cross term.
        let mut rng = Rng64::seeded(617);
        for _ in 0..50 {
            let psi = BipartiteState::new(random_state(&mut rng, 4)).unwrap();
            let m = ComplexMatrix::from_rows(vec![
                vec![psi.amplitude(0), psi.amplitude(1)],
                vec![psi.amplitude(2), psi.amplitude(3)],
            ])
            .unwrap();
            let gram = &m.dagger() * &m;
            let tr = gram.trace().re;
            let det = (gram[(0, 0)] * gram[(1, 1)] - gram[(0, 1)] * gram[(1, 0)]).re;
            let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
            let l1 = ((tr + disc) / 2.0).max(0.0).sqrt();
            let l2 = ((tr - disc) / 2.0).max(0.0).sqrt();
            let oracle = 2.0 * l1 * l2;
            assert!((concurrence(&psi) - oracle).abs() < 1e-10);
        }
    }

    #[test]
    fn concurrence_invariant_under_local_unitaries() {
        let mut rng = Rng64::seeded(619);
        for _ in 0..20 {
            let psi = BipartiteState::new(random_state(&mut rng, 4)).unwrap();
            let u = random_unitary(&mut rng, 2);
            let v = random_unitary(&mut rng, 2);
            let local = kron(&u, &v);
            let rotated = BipartiteState::new(&local * &psi.amplitudes).unwrap();
            assert!((concurrence(&psi) - concurrence(&rotated)).abs() < 1e-10);
        }
    }

    #[test]
    fn phase_factorizable_examples() {
        let id = ComplexMatrix::identity(4);
        let zero_spec = InteractionSpec::new([0.0; 4], id.clone()).unwrap();
        assert!(phase_factorizable(&zero_spec, 1e-12));

        let cnot_spec = InteractionSpec::cnot(1.0).unwrap();
        assert!(!phase_factorizable(&cnot_spec, 1e-9));

        // omega_ij = i * 1.0 + j * 2.0 in basis order (00, 01, 10, 11).
        let additive = InteractionSpec::new([0.0, 2.0, 1.0, 3.0], id).unwrap();
        assert!(phase_factorizable(&additive, 1e-12));
    }

    #[test]
    fn factorizable_product_eigenstates_never_entangle() {
        let mut rng = Rng64::seeded(631);
        let ua = random_unitary(&mut rng, 2);
        let ub = random_unitary(&mut rng, 2);
        let eigenstates = kron(&ua, &ub);
        let (wa, wb) = ([0.3, -0.7], [0.2, 0.5]);
        let freqs = [
            wa[0] + wb[0],
            wa[0] + wb[1],
            wa[1] + wb[0],
            wa[1] + wb[1],
        ];
        let spec = InteractionSpec::new(freqs, eigenstates).unwrap();
        assert!(phase_factorizable(&spec, 1e-12));
        for _ in 0..5 {
            let a = random_state(&mut rng, 2);
            let b = random_state(&mut rng, 2);
            let psi = tensor_state(&a, &b).unwrap();
            for k in 0..20 {
                let t = 2.0 * f64::from(k) / 19.0;
                let out = evolve_bipartite(&spec, &psi, t);
                assert!((out.amplitudes.norm() - 1.0).abs() < 1e-10);
                assert!(concurrence(&out) < 1e-10, "t={t}");
            }
        }
    }

    #[test]
    fn norm_preserved_along_cnot_evolution() {
        let mut rng = Rng64::seeded(641);
        let spec = InteractionSpec::cnot(1.0).unwrap();
        for _ in 0..10 {
            let psi = BipartiteState::new(random_state(&mut rng, 4)).unwrap();
            for k in 0..20 {
                let t = 2.0 * f64::from(k) / 19.0;
                let out = evolve_bipartite(&spec, &psi, t);
                assert!((out.amplitudes.norm() - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn interaction_spec_validation() {
        let bad = ComplexMatrix::from_real_rows(vec![
            vec![1.0, 1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0, 0.0],
            vec![0.0, 0.0, 0.0, 1.0],
        ])
        .unwrap();
        assert!(matches!(
            InteractionSpec::new([0.0; 4], bad),
            Err(EntanglementError::NotUnitary(_))
        ));
        let z = catalog("Z").unwrap();
        assert!(matches!(
            InteractionSpec::from_gate(&z),
            Err(EntanglementError::DimensionMismatch(4, 4))
        ));
    }
}

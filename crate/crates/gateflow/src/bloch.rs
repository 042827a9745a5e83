//! Bloch-sphere geometry for single-qubit states and trajectories.
//!
//! A unit state `(cos theta/2, sin theta/2 e^{i phi})` maps to the sphere
//! point `(sin theta cos phi, sin theta sin phi, cos theta)`. Evolving a
//! state under a gate's interpolated unitary traces an orbit; the functions
//! here sample such orbits, test whether they stay on one line of latitude
//! about an axis, and measure how far a state sits from the real
//! (rebit) great circle.

use std::f64::consts::PI;

use thiserror::Error;

use crate::gates::{gate_at_time, GateSpec};
use crate::numerics::ComplexMatrix;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BlochError {
    #[error("state vector must be nonzero")]
    ZeroVector,
    #[error("expected a {0}x{1} matrix")]
    DimensionMismatch(usize, usize),
    #[error("trajectory needs at least 2 samples, got {0}")]
    TooFewSamples(usize),
    #[error("trajectory time span must be positive and finite, got {0}")]
    InvalidTimeSpan(f64),
}

/// A point on the unit sphere in polar form: `theta` in [0, pi] from the
/// +z pole, `phi` in [0, 2 pi) from the +x axis. The azimuth is reported as
/// 0 at the poles, where it is pure gauge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochPoint {
    pub theta: f64,
    pub phi: f64,
}

impl BlochPoint {
    /// Wrap arbitrary angles into the canonical ranges.
    pub fn new(theta: f64, phi: f64) -> Self {
        let mut th = theta.rem_euclid(2.0 * PI);
        let mut ph = phi;
        if th > PI {
            th = 2.0 * PI - th;
            ph += PI;
        }
        let mut ph = ph.rem_euclid(2.0 * PI);
        if th == 0.0 || th == PI {
            ph = 0.0;
        }
        Self { theta: th, phi: ph }
    }

    /// Cartesian coordinates (x, y, z) on the unit sphere.
    pub fn cart(&self) -> [f64; 3] {
        let (st, ct) = (self.theta.sin(), self.theta.cos());
        let (sp, cp) = (self.phi.sin(), self.phi.cos());
        [st * cp, st * sp, ct]
    }
}

/// One trajectory sample: the evolved state, its sphere point, and its
/// distance from the rebit great circle.
#[derive(Debug, Clone)]
pub struct TrajectorySample {
    pub t: f64,
    pub state: ComplexMatrix,
    pub point: BlochPoint,
    pub imag_residue: f64,
}

/// An ordered sweep of samples with strictly increasing times.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub samples: Vec<TrajectorySample>,
}

/// The qubit at polar angles (theta, phi): `(cos theta/2, sin theta/2
/// e^{i phi})`, after wrapping the angles into canonical ranges.
pub fn qubit_from_angles(theta: f64, phi: f64) -> ComplexMatrix {
    let p = BlochPoint::new(theta, phi);
    let (s, c) = (p.theta / 2.0).sin_cos();
    ComplexMatrix::column_vector(&[
        crate::numerics::C64::new(c, 0.0),
        crate::numerics::C64::from_polar(s, p.phi),
    ])
    .expect("finite amplitudes")
}

/// Invert the angle map: fix the global phase so the first nonzero
/// component is real non-negative, then read off (theta, phi).
pub fn bloch_point(state: &ComplexMatrix) -> Result<BlochPoint, BlochError> {
    if (state.rows(), state.cols()) != (2, 1) {
        return Err(BlochError::DimensionMismatch(2, 1));
    }
    let norm = state.norm();
    if norm == 0.0 {
        return Err(BlochError::ZeroVector);
    }
    let mut a = state[(0, 0)] / norm;
    let mut b = state[(1, 0)] / norm;
    let anchor = if a.norm() > 0.0 { a } else { b };
    let factor = anchor.conj().scale(1.0 / anchor.norm());
    a *= factor;
    b *= factor;
    let theta = 2.0 * b.norm().atan2(a.re.max(0.0));
    if theta == 0.0 || theta == PI {
        return Ok(BlochPoint { theta, phi: 0.0 });
    }
    let raw = b.arg();
    let phi = if raw < 0.0 { raw + 2.0 * PI } else { raw + 0.0 };
    Ok(BlochPoint { theta, phi })
}

/// Distance of a state from the rebit great circle (the phi = 0 union
/// phi = pi longitude): `min_chi || Im(e^{i chi} psi) ||`.
///
/// Writing `psi = u + iv` with real `u`, `v`, the squared minimum is
/// `(|u|^2 + |v|^2)/2 - sqrt((|u|^2 - |v|^2)^2 + 4 (u.v)^2) / 2`, the small
/// eigenvalue of the 2x2 Gram matrix of (u, v); the minimizing phase aligns
/// the state with its "most real" direction.
pub fn rebit_deviation(state: &ComplexMatrix) -> f64 {
    let mut nu = 0.0f64;
    let mut nv = 0.0f64;
    let mut uv = 0.0f64;
    for z in state.entries() {
        nu += z.re * z.re;
        nv += z.im * z.im;
        uv += z.re * z.im;
    }
    let dev_sq = 0.5 * (nu + nv) - 0.5 * ((nu - nv).powi(2) + 4.0 * uv * uv).sqrt();
    dev_sq.max(0.0).sqrt()
}

/// Evolve `initial` under the gate's interpolated unitary at `n_samples`
/// uniformly spaced times on [0, t_max].
pub fn sample_trajectory(
    spec: &GateSpec,
    initial: &ComplexMatrix,
    n_samples: usize,
    t_max: f64,
) -> Result<Trajectory, BlochError> {
    if spec.dim() != 2 {
        return Err(BlochError::DimensionMismatch(2, 2));
    }
    if (initial.rows(), initial.cols()) != (2, 1) {
        return Err(BlochError::DimensionMismatch(2, 1));
    }
    if n_samples < 2 {
        return Err(BlochError::TooFewSamples(n_samples));
    }
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(BlochError::InvalidTimeSpan(t_max));
    }
    let norm = initial.norm();
    if norm == 0.0 {
        return Err(BlochError::ZeroVector);
    }
    let psi = initial.scale(crate::numerics::C64::new(1.0 / norm, 0.0));
    let mut samples = Vec::with_capacity(n_samples);
    for k in 0..n_samples {
        let t = t_max * (k as f64) / ((n_samples - 1) as f64);
        let state = &gate_at_time(spec, t) * &psi;
        let point = bloch_point(&state).expect("unit state");
        let imag_residue = rebit_deviation(&state);
        samples.push(TrajectorySample {
            t,
            state,
            point,
            imag_residue,
        });
    }
    Ok(Trajectory { samples })
}

/// How far the orbit drifts off one line of latitude about `axis`: the
/// maximum over samples of |<cart_k, axis> - <cart_0, axis>|. Zero for an
/// empty trajectory.
pub fn latitude_residual(traj: &Trajectory, axis: &BlochPoint) -> f64 {
    let a = axis.cart();
    let dot = |p: &BlochPoint| {
        let c = p.cart();
        c[0] * a[0] + c[1] * a[1] + c[2] * a[2]
    };
    let Some(first) = traj.samples.first() else {
        return 0.0;
    };
    let base = dot(&first.point);
    traj.samples
        .iter()
        .map(|s| (dot(&s.point) - base).abs())
        .fold(0.0, f64::max)
}

//! Seeded random-matrix helpers shared by the unit tests.

use num_complex::Complex;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::numerics::{ComplexMatrix, C64};

pub fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

/// Deterministic generator; every test picks its own seed.
pub struct Rng64(ChaCha8Rng);

impl Rng64 {
    pub fn seeded(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform draw from [-1, 1).
    pub fn uniform(&mut self) -> f64 {
        self.0.gen_range(-1.0..1.0)
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.0.gen_range(0..bound)
    }
}

pub fn random_complex(rng: &mut Rng64, rows: usize, cols: usize) -> ComplexMatrix {
    let entries = (0..rows * cols)
        .map(|_| c(rng.uniform(), rng.uniform()))
        .collect();
    ComplexMatrix::new(rows, cols, entries).expect("finite random entries")
}

/// Random Hermitian matrix: (A + A^dagger) / 2.
pub fn random_hermitian(rng: &mut Rng64, n: usize) -> ComplexMatrix {
    let a = random_complex(rng, n, n);
    (&a + &a.dagger()).scale(c(0.5, 0.0))
}

/// Exactly unitary matrix built from a product of random complex Givens
/// rotations and phase factors.
pub fn random_unitary(rng: &mut Rng64, n: usize) -> ComplexMatrix {
    let mut u = ComplexMatrix::identity(n);
    for _ in 0..(3 * n * n) {
        let p = rng.index(n);
        let mut q = rng.index(n);
        while q == p {
            q = rng.index(n);
        }
        let theta = rng.uniform() * std::f64::consts::PI;
        let alpha = rng.uniform() * std::f64::consts::PI;
        let (s, co) = theta.sin_cos();
        let phase = c(alpha.cos(), alpha.sin());
        // Columns p and q of u are mixed by the rotation; others untouched.
        for i in 0..n {
            let up = u[(i, p)];
            let uq = u[(i, q)];
            u[(i, p)] = up * co + uq * phase * s;
            u[(i, q)] = -up * s + uq * phase * co;
        }
    }
    u
}

/// Random normal matrix U diag(lambda) U^dagger with bounded spectrum.
pub fn random_normal(rng: &mut Rng64, n: usize) -> ComplexMatrix {
    let u = random_unitary(rng, n);
    let mut d = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        d[(i, i)] = c(rng.uniform(), rng.uniform());
    }
    &(&u * &d) * &u.dagger()
}

/// Random normalized state vector of dimension n.
pub fn random_state(rng: &mut Rng64, n: usize) -> ComplexMatrix {
    let mut v = random_complex(rng, n, 1);
    let norm = v.norm();
    if norm < 1e-6 {
        v[(0, 0)] = c(1.0, 0.0);
        return random_state(rng, n);
    }
    v.scale(c(1.0 / norm, 0.0))
}

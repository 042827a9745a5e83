//! Deterministic random generators shared by the integration suites.
#![allow(dead_code)]

use gateflow::numerics::{ComplexMatrix, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Rng64(ChaCha8Rng);

impl Rng64 {
    pub fn seeded(seed: u64) -> Self {
        Rng64(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform draw from [-1, 1).
    pub fn uniform(&mut self) -> f64 {
        self.0.gen_range(-1.0..1.0)
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.0.gen_range(0..bound)
    }
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn random_complex(rng: &mut Rng64, rows: usize, cols: usize) -> ComplexMatrix {
    let entries: Vec<C64> = (0..rows * cols)
        .map(|_| c(rng.uniform(), rng.uniform()))
        .collect();
    ComplexMatrix::new(rows, cols, entries).expect("finite entries")
}

pub fn random_hermitian(rng: &mut Rng64, n: usize) -> ComplexMatrix {
    let a = random_complex(rng, n, n);
    (&a + &a.dagger()).scale(c(0.5, 0.0))
}

/// Product of random complex Givens rotations: exactly unitary by
/// construction up to rounding in the factors themselves.
pub fn random_unitary(rng: &mut Rng64, n: usize) -> ComplexMatrix {
    let mut u = ComplexMatrix::identity(n);
    if n < 2 {
        return u;
    }
    for _ in 0..3 * n * n {
        let p = rng.index(n);
        let mut q = rng.index(n);
        while q == p {
            q = rng.index(n);
        }
        let theta = rng.uniform() * std::f64::consts::PI;
        let alpha = rng.uniform() * std::f64::consts::PI;
        let (s, co) = theta.sin_cos();
        let ph = C64::from_polar(1.0, alpha);
        let mut g = ComplexMatrix::identity(n);
        g[(p, p)] = c(co, 0.0);
        g[(p, q)] = -ph.conj() * s;
        g[(q, p)] = ph * s;
        g[(q, q)] = c(co, 0.0);
        u = &u * &g;
    }
    u
}

pub fn random_normal(rng: &mut Rng64, n: usize) -> ComplexMatrix {
    let u = random_unitary(rng, n);
    let mut d = ComplexMatrix::zeros(n, n);
    for k in 0..n {
        d[(k, k)] = c(rng.uniform() * 2.0, rng.uniform() * 2.0);
    }
    &(&u * &d) * &u.dagger()
}

/// Normalized random column state.
pub fn random_state(rng: &mut Rng64, n: usize) -> ComplexMatrix {
    loop {
        let v = random_complex(rng, n, 1);
        let norm = v.norm();
        if norm > 1e-3 {
            return v.scale(c(1.0 / norm, 0.0));
        }
    }
}

//! Hand-written matrix oracles and random-state helpers shared by the
//! integration suites. Nothing here calls into the compiler.

#![allow(dead_code)]

use iontrap_core::{ChainSpec, HybridState};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type C = Complex64;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn real(rows: usize, entries: &[f64]) -> DMatrix<C> {
    DMatrix::from_row_iterator(rows, rows, entries.iter().map(|&x| c(x, 0.0)))
}

pub fn hadamard() -> DMatrix<C> {
    real(2, &[1.0, 1.0, 1.0, -1.0]) * c(std::f64::consts::FRAC_1_SQRT_2, 0.0)
}

pub fn identity(n: usize) -> DMatrix<C> {
    DMatrix::identity(n, n)
}

pub fn cz() -> DMatrix<C> {
    real(
        4,
        &[
            1.0, 0.0, 0.0, 0.0, //
            0.0, 1.0, 0.0, 0.0, //
            0.0, 0.0, 1.0, 0.0, //
            0.0, 0.0, 0.0, -1.0,
        ],
    )
}

pub fn cnot() -> DMatrix<C> {
    real(
        4,
        &[
            1.0, 0.0, 0.0, 0.0, //
            0.0, 1.0, 0.0, 0.0, //
            0.0, 0.0, 0.0, 1.0, //
            0.0, 0.0, 1.0, 0.0,
        ],
    )
}

/// `H ⊗ I`, ion 0 being the left factor.
pub fn h_on_first() -> DMatrix<C> {
    hadamard().kronecker(&identity(2))
}

/// `max |a − e^{iχ} b|` minimized over χ.
pub fn phase_error(a: &DMatrix<C>, b: &DMatrix<C>) -> f64 {
    let overlap: C = a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum();
    let rot = if overlap.norm() > 0.0 {
        C::from_polar(1.0, -overlap.arg())
    } else {
        c(1.0, 0.0)
    };
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - rot * y).norm())
        .fold(0.0, f64::max)
}

/// Haar-ish random vector: normalized complex Gaussian entries.
pub fn random_vector(rng: &mut ChaCha8Rng, len: usize) -> Vec<C> {
    let mut gauss = || {
        let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
        let u2: f64 = rng.gen();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    };
    let v: Vec<C> = (0..len).map(|_| c(gauss(), gauss())).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

pub fn random_atomic_state(rng: &mut ChaCha8Rng, spec: &ChainSpec) -> (Vec<C>, HybridState) {
    let atomic = random_vector(rng, spec.atomic_dim());
    let state = HybridState::from_atomic(spec.clone(), &atomic, 0).unwrap();
    (atomic, state)
}

pub fn apply_matrix(m: &DMatrix<C>, v: &[C]) -> Vec<C> {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|k| m[(r, k)] * v[k]).sum())
        .collect()
}

pub fn overlap_fidelity(a: &[C], b: &[C]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.conj() * y)
        .sum::<C>()
        .norm_sqr()
}

/// Atomic amplitudes on phonon level 0.
pub fn atomic_part(state: &HybridState) -> Vec<C> {
    (0..state.spec().atomic_dim())
        .map(|bits| state.amplitude(bits, 0))
        .collect()
}

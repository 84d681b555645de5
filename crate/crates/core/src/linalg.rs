//! Small dense-matrix helpers shared by the verification paths.

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;

pub type C64 = Complex64;

/// 2×2 complex matrix acting on a pair of basis states.
pub type Unitary2 = Matrix2<C64>;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// `max |U†U - I|` over all entries.
pub fn unitarity_error(u: &DMatrix<C64>) -> f64 {
    let n = u.nrows();
    let prod = u.adjoint() * u;
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            let expected = if i == j { ONE } else { ZERO };
            worst = worst.max((prod[(i, j)] - expected).norm());
        }
    }
    worst
}

pub fn unitarity_error2(u: &Unitary2) -> f64 {
    let prod = u.adjoint() * u;
    (prod - Unitary2::identity())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Global phase `χ` that best aligns `b` onto `a` (maximizes `Re tr(a† e^{iχ} b)`).
pub fn aligning_phase(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    let overlap: C64 = a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum();
    if overlap.norm() == 0.0 {
        0.0
    } else {
        -overlap.arg()
    }
}

/// `max |a - e^{iχ} b|` for the aligning phase `χ`, i.e. equality up to a
/// global phase. Returns the error together with `χ`.
pub fn phase_aligned_error(a: &DMatrix<C64>, b: &DMatrix<C64>) -> (f64, f64) {
    let chi = aligning_phase(a, b);
    let rot = C64::from_polar(1.0, chi);
    let err = a
        .iter()
        .zip(b.iter())
        .map(|(x, y)| (x - rot * y).norm())
        .fold(0.0, f64::max);
    (err, chi)
}

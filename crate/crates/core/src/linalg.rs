//! 2×2 complex matrices in the ordered basis (|R⟩, |T⟩).

use std::ops::Index;

use num_complex::Complex64;

/// Row index of the unmarked state |R⟩.
pub const R: usize = 0;
/// Row index of the marked state |T⟩.
pub const T: usize = 1;

pub type Mat2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub const IDENTITY: Mat2 = [[ONE, ZERO], [ZERO, ONE]];

pub const PAULI_X: Mat2 = [[ZERO, ONE], [ONE, ZERO]];
pub const PAULI_Y: Mat2 = [
    [ZERO, Complex64::new(0.0, -1.0)],
    [Complex64::new(0.0, 1.0), ZERO],
];
pub const PAULI_Z: Mat2 = [[ONE, ZERO], [ZERO, Complex64::new(-1.0, 0.0)]];

pub fn mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[ZERO; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn adjoint(a: &Mat2) -> Mat2 {
    [
        [a[0][0].conj(), a[1][0].conj()],
        [a[0][1].conj(), a[1][1].conj()],
    ]
}

pub fn scale(a: &Mat2, s: Complex64) -> Mat2 {
    a.map(|row| row.map(|z| z * s))
}

pub fn add(a: &Mat2, b: &Mat2) -> Mat2 {
    [
        [a[0][0] + b[0][0], a[0][1] + b[0][1]],
        [a[1][0] + b[1][0], a[1][1] + b[1][1]],
    ]
}

pub fn det(a: &Mat2) -> Complex64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

pub fn trace(a: &Mat2) -> Complex64 {
    a[0][0] + a[1][1]
}

/// Largest elementwise modulus of `a - b`.
pub fn max_abs_diff(a: &Mat2, b: &Mat2) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// A 2×2 unitary. Constructed only by this crate's operator builders and
/// decompositions, so it is unitary up to rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2(pub(crate) Mat2);

impl Unitary2 {
    pub fn identity() -> Self {
        Self(IDENTITY)
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(adjoint(&self.0))
    }

    pub fn compose(&self, rhs: &Self) -> Self {
        Self(mul(&self.0, &rhs.0))
    }

    pub fn det(&self) -> Complex64 {
        det(&self.0)
    }

    /// Elementwise deviation of `U U†` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        max_abs_diff(&mul(&self.0, &adjoint(&self.0)), &IDENTITY)
    }

    pub fn conjugate(&self, rho: &DensityMatrix2) -> DensityMatrix2 {
        DensityMatrix2(mul(&mul(&self.0, &rho.0), &adjoint(&self.0)))
    }
}

impl Index<(usize, usize)> for Unitary2 {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.0[i][j]
    }
}

/// A single-qubit density matrix over (|R⟩, |T⟩).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix2(pub(crate) Mat2);

impl DensityMatrix2 {
    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn trace(&self) -> Complex64 {
        trace(&self.0)
    }

    /// Population of the marked state, `⟨T|ρ|T⟩`.
    pub fn marked_population(&self) -> f64 {
        self.0[T][T].re
    }

    pub fn hermiticity_defect(&self) -> f64 {
        max_abs_diff(&self.0, &adjoint(&self.0))
    }

    /// `tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        trace(&mul(&self.0, &self.0)).re
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let a = self.0[R][R].re;
        let d = self.0[T][T].re;
        let b = 0.5 * (self.0[R][T] + self.0[T][R].conj());
        let mean = 0.5 * (a + d);
        let radius = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        [mean - radius, mean + radius]
    }
}

impl Index<(usize, usize)> for DensityMatrix2 {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.0[i][j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_algebra() {
        // σx σy = i σz
        let xy = mul(&PAULI_X, &PAULI_Y);
        let i_z = scale(&PAULI_Z, Complex64::i());
        assert_eq!(max_abs_diff(&xy, &i_z), 0.0);
        for p in [PAULI_X, PAULI_Y, PAULI_Z] {
            assert_eq!(max_abs_diff(&mul(&p, &p), &IDENTITY), 0.0);
            assert_eq!(trace(&p), ZERO);
        }
    }

    #[test]
    fn eigenvalues_of_pure_state() {
        let rho = DensityMatrix2([
            [
                Complex64::new(0.75, 0.0),
                Complex64::new(0.75f64.sqrt() * 0.5, 0.0),
            ],
            [
                Complex64::new(0.75f64.sqrt() * 0.5, 0.0),
                Complex64::new(0.25, 0.0),
            ],
        ]);
        let [lo, hi] = rho.eigenvalues();
        assert!(lo.abs() < 1e-15);
        assert!((hi - 1.0).abs() < 1e-15);
        assert!((rho.purity() - 1.0).abs() < 1e-15);
    }
}

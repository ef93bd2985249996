//! Unitary transfer matrices over optical modes.

use ndarray::Array2;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{qr, unitarity_deviation};

pub const DEFAULT_UNITARITY_TOLERANCE: f64 = 1e-9;

/// An m×m unitary transfer matrix. Construction verifies unitarity.
#[derive(Debug, Clone, PartialEq)]
pub struct Interferometer {
    matrix: Array2<Complex64>,
    tolerance: f64,
}

impl Interferometer {
    pub fn new(matrix: Array2<Complex64>) -> Result<Self> {
        Self::with_tolerance(matrix, DEFAULT_UNITARITY_TOLERANCE)
    }

    pub fn with_tolerance(matrix: Array2<Complex64>, tolerance: f64) -> Result<Self> {
        let (rows, cols) = matrix.dim();
        if rows != cols {
            return Err(Error::NonSquareMatrix { rows, cols });
        }
        if rows == 0 {
            return Err(Error::invalid("matrix", "mode count must be at least 1"));
        }
        let deviation = unitarity_deviation(&matrix);
        if deviation > tolerance {
            return Err(Error::NotUnitary {
                deviation,
                tolerance,
            });
        }
        Ok(Interferometer { matrix, tolerance })
    }

    pub fn identity(mode_count: usize) -> Result<Self> {
        Self::new(Array2::eye(mode_count))
    }

    /// Symmetric 50/50 beamsplitter: 1/√2 on the diagonal, i/√2 off it.
    pub fn beamsplitter_50_50() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut m = Array2::zeros((2, 2));
        m[[0, 0]] = Complex64::new(s, 0.0);
        m[[0, 1]] = Complex64::new(0.0, s);
        m[[1, 0]] = Complex64::new(0.0, s);
        m[[1, 1]] = Complex64::new(s, 0.0);
        Interferometer {
            matrix: m,
            tolerance: DEFAULT_UNITARITY_TOLERANCE,
        }
    }

    pub fn mode_count(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.matrix
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn unitarity_residual(&self) -> f64 {
        unitarity_deviation(&self.matrix)
    }
}

/// Embed a 2×2 block acting on modes (p, q) into an m×m identity.
pub fn embed_two_mode(
    mode_count: usize,
    p: usize,
    q: usize,
    block: [[Complex64; 2]; 2],
) -> Array2<Complex64> {
    let mut m = Array2::eye(mode_count);
    m[[p, p]] = block[0][0];
    m[[p, q]] = block[0][1];
    m[[q, p]] = block[1][0];
    m[[q, q]] = block[1][1];
    m
}

/// Haar-random unitary: QR of a complex Ginibre matrix with the phases of
/// R's diagonal folded back into Q.
pub fn haar_random_unitary<R: Rng + ?Sized>(mode_count: usize, rng: &mut R) -> Result<Interferometer> {
    if mode_count < 1 {
        return Err(Error::invalid("mode_count", "must be at least 1"));
    }
    let mut g = Array2::<Complex64>::zeros((mode_count, mode_count));
    for i in 0..mode_count {
        for j in 0..mode_count {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            g[[i, j]] = Complex64::new(re, im);
        }
    }
    let (mut q, r) = qr(&g);
    for j in 0..mode_count {
        let d = r[[j, j]];
        let phase = if d.norm() < 1e-300 {
            Complex64::new(1.0, 0.0)
        } else {
            d / d.norm()
        };
        for i in 0..mode_count {
            q[[i, j]] *= phase;
        }
    }
    Interferometer::with_tolerance(q, 1e-11)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn beamsplitter_is_unitary() {
        let bs = Interferometer::beamsplitter_50_50();
        assert!(bs.unitarity_residual() < 1e-15);
    }

    #[test]
    fn non_unitary_rejected() {
        let mut m = Array2::<Complex64>::eye(2);
        m[[0, 0]] = Complex64::new(1.5, 0.0);
        assert!(matches!(
            Interferometer::new(m),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn haar_single_mode_is_phase() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = haar_random_unitary(1, &mut rng).unwrap();
        assert!((u.matrix()[[0, 0]].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn haar_seeded_is_deterministic_and_unitary() {
        let mut rng1 = ChaCha8Rng::seed_from_u64(42);
        let mut rng2 = ChaCha8Rng::seed_from_u64(42);
        let u1 = haar_random_unitary(4, &mut rng1).unwrap();
        let u2 = haar_random_unitary(4, &mut rng2).unwrap();
        assert_eq!(u1.matrix(), u2.matrix());
        assert!(u1.unitarity_residual() < 1e-12);
    }

    #[test]
    fn haar_rejects_zero_modes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(haar_random_unitary(0, &mut rng).is_err());
    }
}

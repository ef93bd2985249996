//! Qubit registers: state vectors and density operators.
//!
//! Basis convention: qubit q is bit q of the basis index (little-endian), so
//! |b_{k−1} … b_1 b_0⟩ has index Σ b_q·2^q.

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::hermitian_eigenvalues;

pub const DEFAULT_QUBIT_CAP: usize = 12;
pub const DENSITY_QUBIT_CAP: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QubitKind {
    Spin,
    PhotonTimeBin,
    PhotonPolarization,
}

/// Pure state of k labelled qubits.
#[derive(Debug, Clone)]
pub struct QubitStateVector {
    amps: Vec<Complex64>,
    kinds: Vec<QubitKind>,
}

impl QubitStateVector {
    pub fn new(amps: Vec<Complex64>, kinds: Vec<QubitKind>) -> Result<Self> {
        Self::with_cap(amps, kinds, DEFAULT_QUBIT_CAP)
    }

    pub fn with_cap(amps: Vec<Complex64>, kinds: Vec<QubitKind>, cap: usize) -> Result<Self> {
        let k = kinds.len();
        if k == 0 {
            return Err(Error::invalid("kinds", "needs at least one qubit"));
        }
        if k > cap {
            return Err(Error::ResourceLimit {
                quantity: "qubit count",
                requested: k,
                limit: cap,
            });
        }
        if amps.len() != 1 << k {
            return Err(Error::DimensionMismatch {
                left: amps.len(),
                right: 1 << k,
            });
        }
        let state = QubitStateVector { amps, kinds };
        let norm = state.norm();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::invalid(
                "amps",
                format!("state norm {norm} deviates from 1"),
            ));
        }
        Ok(state)
    }

    /// |0…0⟩ of the given qubit kinds.
    pub fn zero(kinds: Vec<QubitKind>) -> Result<Self> {
        if kinds.is_empty() {
            return Err(Error::invalid("kinds", "needs at least one qubit"));
        }
        if kinds.len() > DEFAULT_QUBIT_CAP {
            return Err(Error::ResourceLimit {
                quantity: "qubit count",
                requested: kinds.len(),
                limit: DEFAULT_QUBIT_CAP,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << kinds.len()];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(QubitStateVector { amps, kinds })
    }

    pub fn qubit_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn kinds(&self) -> &[QubitKind] {
        &self.kinds
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub(crate) fn renormalize(&mut self) {
        let n = self.norm();
        if n > 0.0 {
            for a in self.amps.iter_mut() {
                *a /= n;
            }
        }
    }

    pub fn inner(&self, other: &QubitStateVector) -> Result<Complex64> {
        if self.amps.len() != other.amps.len() {
            return Err(Error::DimensionMismatch {
                left: self.amps.len(),
                right: other.amps.len(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Apply a single-qubit gate in place.
    pub fn apply_single(&mut self, qubit: usize, gate: &[[Complex64; 2]; 2]) {
        let mask = 1usize << qubit;
        for i in 0..self.amps.len() {
            if i & mask == 0 {
                let a = self.amps[i];
                let b = self.amps[i | mask];
                self.amps[i] = gate[0][0] * a + gate[0][1] * b;
                self.amps[i | mask] = gate[1][0] * a + gate[1][1] * b;
            }
        }
    }

    pub fn apply_h(&mut self, qubit: usize) {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let h = [
            [Complex64::new(s, 0.0), Complex64::new(s, 0.0)],
            [Complex64::new(s, 0.0), Complex64::new(-s, 0.0)],
        ];
        self.apply_single(qubit, &h);
    }

    pub fn apply_x(&mut self, qubit: usize) {
        let x = [
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        ];
        self.apply_single(qubit, &x);
    }

    pub fn apply_z(&mut self, qubit: usize) {
        let z = [
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0)],
        ];
        self.apply_single(qubit, &z);
    }

    /// Rotation about Y by `angle` (for coherent rotation errors).
    pub fn apply_ry(&mut self, qubit: usize, angle: f64) {
        let c = (angle / 2.0).cos();
        let s = (angle / 2.0).sin();
        let g = [
            [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
            [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
        ];
        self.apply_single(qubit, &g);
    }

    pub fn apply_cz(&mut self, a: usize, b: usize) {
        let ma = 1usize << a;
        let mb = 1usize << b;
        for i in 0..self.amps.len() {
            if i & ma != 0 && i & mb != 0 {
                self.amps[i] = -self.amps[i];
            }
        }
    }

    /// Probability of finding `qubit` in X-basis outcome `plus`.
    pub fn x_outcome_probability(&self, qubit: usize, plus: bool) -> f64 {
        let mask = 1usize << qubit;
        let sign = if plus { 1.0 } else { -1.0 };
        let mut p = 0.0;
        for i in 0..self.amps.len() {
            if i & mask == 0 {
                let proj = (self.amps[i] + sign * self.amps[i | mask])
                    / std::f64::consts::SQRT_2;
                p += proj.norm_sqr();
            }
        }
        p
    }

    /// Project `qubit` onto an X-basis outcome and trace it out.
    ///
    /// Returns the outcome probability and the reduced (renormalized) state.
    pub fn measure_x_and_remove(&self, qubit: usize, plus: bool) -> Result<(f64, QubitStateVector)> {
        if self.qubit_count() < 2 {
            return Err(Error::invalid("qubit", "cannot remove the last qubit"));
        }
        let mask = 1usize << qubit;
        let sign = if plus { 1.0 } else { -1.0 };
        let mut reduced = vec![Complex64::new(0.0, 0.0); self.amps.len() / 2];
        let mut p = 0.0;
        for i in 0..self.amps.len() {
            if i & mask == 0 {
                let proj = (self.amps[i] + sign * self.amps[i | mask])
                    / std::f64::consts::SQRT_2;
                p += proj.norm_sqr();
                let low = i & (mask - 1);
                let high = (i >> 1) & !(mask - 1);
                reduced[high | low] = proj;
            }
        }
        let mut kinds = self.kinds.clone();
        kinds.remove(qubit);
        let mut state = QubitStateVector {
            amps: reduced,
            kinds,
        };
        state.renormalize();
        Ok((p, state))
    }

    pub fn to_density(&self) -> Result<DensityOperator> {
        DensityOperator::from_pure(self)
    }
}

/// Mixed state of k labelled qubits.
#[derive(Debug, Clone)]
pub struct DensityOperator {
    mat: Array2<Complex64>,
    kinds: Vec<QubitKind>,
}

impl DensityOperator {
    /// Validating constructor: Hermitian, unit trace, PSD within 1e-9.
    pub fn new(mat: Array2<Complex64>, kinds: Vec<QubitKind>) -> Result<Self> {
        let rho = Self::from_parts(mat, kinds)?;
        rho.validate()?;
        Ok(rho)
    }

    /// Shape-checked but not PSD-validated (internal accumulation paths).
    pub fn from_parts(mat: Array2<Complex64>, kinds: Vec<QubitKind>) -> Result<Self> {
        let k = kinds.len();
        if k == 0 {
            return Err(Error::invalid("kinds", "needs at least one qubit"));
        }
        if k > DENSITY_QUBIT_CAP {
            return Err(Error::ResourceLimit {
                quantity: "density-operator qubit count",
                requested: k,
                limit: DENSITY_QUBIT_CAP,
            });
        }
        let dim = 1usize << k;
        if mat.nrows() != dim || mat.ncols() != dim {
            return Err(Error::DimensionMismatch {
                left: mat.nrows(),
                right: dim,
            });
        }
        Ok(DensityOperator { mat, kinds })
    }

    pub fn from_pure(state: &QubitStateVector) -> Result<Self> {
        let dim = state.amps.len();
        let mut mat = Array2::<Complex64>::zeros((dim, dim));
        for i in 0..dim {
            for j in 0..dim {
                mat[[i, j]] = state.amps[i] * state.amps[j].conj();
            }
        }
        Self::from_parts(mat, state.kinds.clone())
    }

    pub fn zero_like(kinds: Vec<QubitKind>) -> Result<Self> {
        let dim = 1usize << kinds.len();
        Self::from_parts(Array2::zeros((dim, dim)), kinds)
    }

    pub fn validate(&self) -> Result<()> {
        let t = self.trace();
        if (t - 1.0).abs() > 1e-9 {
            return Err(Error::invalid("density", format!("trace {t} deviates from 1")));
        }
        let n = self.mat.nrows();
        for i in 0..n {
            for j in 0..n {
                if (self.mat[[i, j]] - self.mat[[j, i]].conj()).norm() > 1e-9 {
                    return Err(Error::invalid("density", "matrix is not Hermitian"));
                }
            }
        }
        let eigs = hermitian_eigenvalues(&self.mat)?;
        if let Some(&min) = eigs.first() {
            if min < -1e-9 {
                return Err(Error::invalid(
                    "density",
                    format!("negative eigenvalue {min:.3e}"),
                ));
            }
        }
        Ok(())
    }

    pub fn qubit_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn kinds(&self) -> &[QubitKind] {
        &self.kinds
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.mat
    }

    pub fn trace(&self) -> f64 {
        (0..self.mat.nrows()).map(|i| self.mat[[i, i]].re).sum()
    }

    /// ρ += weight·|ψ⟩⟨ψ| (trajectory averaging).
    pub fn accumulate(&mut self, state: &QubitStateVector, weight: f64) -> Result<()> {
        if state.amps.len() != self.mat.nrows() {
            return Err(Error::DimensionMismatch {
                left: state.amps.len(),
                right: self.mat.nrows(),
            });
        }
        for i in 0..state.amps.len() {
            for j in 0..state.amps.len() {
                self.mat[[i, j]] += weight * state.amps[i] * state.amps[j].conj();
            }
        }
        Ok(())
    }

    pub fn scale(&mut self, factor: f64) {
        self.mat.mapv_inplace(|z| z * factor);
    }

    /// ⟨target|ρ|target⟩ for a pure target.
    pub fn fidelity_pure(&self, target: &QubitStateVector) -> Result<f64> {
        if target.amps.len() != self.mat.nrows() {
            return Err(Error::DimensionMismatch {
                left: target.amps.len(),
                right: self.mat.nrows(),
            });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..target.amps.len() {
            for j in 0..target.amps.len() {
                acc += target.amps[i].conj() * self.mat[[i, j]] * target.amps[j];
            }
        }
        Ok(acc.re.clamp(0.0, 1.0))
    }

    /// Apply a single-qubit unitary: ρ → UρU†.
    pub fn apply_single(&mut self, qubit: usize, gate: &[[Complex64; 2]; 2]) {
        let dim = self.mat.nrows();
        let mask = 1usize << qubit;
        // Left multiply
        for col in 0..dim {
            for i in 0..dim {
                if i & mask == 0 {
                    let a = self.mat[[i, col]];
                    let b = self.mat[[i | mask, col]];
                    self.mat[[i, col]] = gate[0][0] * a + gate[0][1] * b;
                    self.mat[[i | mask, col]] = gate[1][0] * a + gate[1][1] * b;
                }
            }
        }
        // Right multiply by U†
        for row in 0..dim {
            for j in 0..dim {
                if j & mask == 0 {
                    let a = self.mat[[row, j]];
                    let b = self.mat[[row, j | mask]];
                    self.mat[[row, j]] = a * gate[0][0].conj() + b * gate[0][1].conj();
                    self.mat[[row, j | mask]] = a * gate[1][0].conj() + b * gate[1][1].conj();
                }
            }
        }
    }

    /// Phase-damping channel on one qubit: ρ → (1−p)ρ + p·ZρZ.
    pub fn dephase(&mut self, qubit: usize, p: f64) {
        let dim = self.mat.nrows();
        let mask = 1usize << qubit;
        for i in 0..dim {
            for j in 0..dim {
                if (i & mask) != (j & mask) {
                    self.mat[[i, j]] *= 1.0 - 2.0 * p;
                }
            }
        }
    }
}

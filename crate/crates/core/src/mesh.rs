//! Rectangular Mach-Zehnder mesh (de)composition.
//!
//! A cell on adjacent modes (p, p+1) applies the physical double-beamsplitter
//! MZI with internal phase θ ∈ [0, π] and external phase φ ∈ [0, 2π):
//!
//!   T(θ, φ) = i·e^{iθ/2} · [ e^{iφ}·sin(θ/2)   cos(θ/2) ]
//!                          [ e^{iφ}·cos(θ/2)  −sin(θ/2) ]
//!
//! `mesh_compose` applies the cells in list order followed by the per-mode
//! output phases; `clements_decompose` inverts it by nulling anti-diagonals
//! from alternating sides and commuting the residual diagonal through.

use std::f64::consts::{PI, TAU};

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interferometer::Interferometer;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MzCell {
    /// Target mode pair (p, p+1).
    pub modes: (usize, usize),
    /// Internal phase, [0, π].
    pub theta: f64,
    /// External phase, [0, 2π).
    pub phi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshParams {
    pub mode_count: usize,
    /// Cells in application order (first cell acts on the input first).
    pub cells: Vec<MzCell>,
    /// Final per-mode output phases.
    pub output_phases: Vec<f64>,
}

fn cell_block(theta: f64, phi: f64) -> [[Complex64; 2]; 2] {
    let half = theta / 2.0;
    let s = half.sin();
    let c = half.cos();
    let global = Complex64::new(0.0, 1.0) * Complex64::from_polar(1.0, half);
    let eip = Complex64::from_polar(1.0, phi);
    [
        [global * eip * s, global * c],
        [global * eip * c, global * (-s)],
    ]
}

fn apply_cell_left(u: &mut Array2<Complex64>, p: usize, theta: f64, phi: f64) {
    // u <- T(p) · u
    let b = cell_block(theta, phi);
    let m = u.ncols();
    for col in 0..m {
        let top = u[[p, col]];
        let bot = u[[p + 1, col]];
        u[[p, col]] = b[0][0] * top + b[0][1] * bot;
        u[[p + 1, col]] = b[1][0] * top + b[1][1] * bot;
    }
}

fn apply_cell_dagger_right(u: &mut Array2<Complex64>, p: usize, theta: f64, phi: f64) {
    // u <- u · T†(p)
    let b = cell_block(theta, phi);
    let m = u.nrows();
    // (T†)[k][l] = conj(T[l][k])
    for row in 0..m {
        let left = u[[row, p]];
        let right = u[[row, p + 1]];
        u[[row, p]] = left * b[0][0].conj() + right * b[0][1].conj();
        u[[row, p + 1]] = left * b[1][0].conj() + right * b[1][1].conj();
    }
}

fn wrap_phi(phi: f64) -> f64 {
    let mut x = phi.rem_euclid(TAU);
    if x >= TAU {
        x -= TAU;
    }
    x
}

/// Rebuild the unitary from mesh parameters.
pub fn mesh_compose(params: &MeshParams) -> Result<Interferometer> {
    let m = params.mode_count;
    if m == 0 {
        return Err(Error::invalid("mode_count", "must be at least 1"));
    }
    if params.output_phases.len() != m {
        return Err(Error::DimensionMismatch {
            left: params.output_phases.len(),
            right: m,
        });
    }
    let mut u = Array2::<Complex64>::eye(m);
    for cell in &params.cells {
        let (p, q) = cell.modes;
        if q != p + 1 || q >= m {
            return Err(Error::invalid(
                "cell",
                format!("mode pair ({p}, {q}) is not an adjacent pair within {m} modes"),
            ));
        }
        if !cell.theta.is_finite() || !cell.phi.is_finite() {
            return Err(Error::invalid("cell", "non-finite phase"));
        }
        apply_cell_left(&mut u, p, cell.theta, cell.phi);
    }
    for (k, &phase) in params.output_phases.iter().enumerate() {
        if !phase.is_finite() {
            return Err(Error::invalid("output_phases", "non-finite phase"));
        }
        let f = Complex64::from_polar(1.0, phase);
        for col in 0..m {
            u[[k, col]] *= f;
        }
    }
    Interferometer::new(u)
}

/// Decompose a unitary into a rectangular mesh of m(m−1)/2 MZI cells plus
/// output phases, with compose∘decompose reproducing the matrix.
pub fn clements_decompose(u: &Interferometer) -> Result<MeshParams> {
    let m = u.mode_count();
    let mut work = u.matrix().clone();
    let mut right_cells: Vec<MzCell> = Vec::new();
    let mut left_cells: Vec<MzCell> = Vec::new();

    for diag in 1..m {
        if diag % 2 == 1 {
            for j in 0..diag {
                let row = m - 1 - j;
                let p = diag - 1 - j;
                let a = work[[row, p]];
                let b = work[[row, p + 1]];
                let theta = 2.0 * b.norm().atan2(a.norm());
                let phi = if a.norm() < 1e-300 || b.norm() < 1e-300 {
                    0.0
                } else {
                    wrap_phi(a.arg() - b.arg() - PI)
                };
                apply_cell_dagger_right(&mut work, p, theta, phi);
                right_cells.push(MzCell {
                    modes: (p, p + 1),
                    theta,
                    phi,
                });
            }
        } else {
            for j in 1..=diag {
                let col = j - 1;
                let p = m + j - diag - 2;
                let a = work[[p, col]];
                let b = work[[p + 1, col]];
                let theta = 2.0 * a.norm().atan2(b.norm());
                let phi = if a.norm() < 1e-300 || b.norm() < 1e-300 {
                    0.0
                } else {
                    wrap_phi(b.arg() - a.arg())
                };
                apply_cell_left(&mut work, p, theta, phi);
                left_cells.push(MzCell {
                    modes: (p, p + 1),
                    theta,
                    phi,
                });
            }
        }
    }

    // work is now diagonal: U = (Π lefts)^{-1} · D · (Π rights).
    let mut diag_phases: Vec<Complex64> = (0..m).map(|k| {
        let d = work[[k, k]];
        if d.norm() < 1e-300 {
            Complex64::new(1.0, 0.0)
        } else {
            d / d.norm()
        }
    }).collect();

    // Commute T† through the diagonal: T†(θ,φ)·D = D'·T(θ,φ') with
    //   φ' = arg(a) − arg(b), a' = −e^{−iθ}e^{−iφ}·b, b' = −e^{−iθ}·b
    // for (a, b) the diagonal entries at the cell's mode pair. Processing the
    // left cells innermost-first puts them in application order.
    let mut cells = right_cells;
    for cell in left_cells.into_iter().rev() {
        let p = cell.modes.0;
        let a = diag_phases[p];
        let b = diag_phases[p + 1];
        let phi_new = wrap_phi(a.arg() - b.arg());
        let rot = -Complex64::from_polar(1.0, -cell.theta);
        diag_phases[p] = rot * Complex64::from_polar(1.0, -cell.phi) * b;
        diag_phases[p + 1] = rot * b;
        cells.push(MzCell {
            modes: cell.modes,
            theta: cell.theta,
            phi: phi_new,
        });
    }

    Ok(MeshParams {
        mode_count: m,
        cells,
        output_phases: diag_phases.iter().map(|z| wrap_phi(z.arg())).collect(),
    })
}

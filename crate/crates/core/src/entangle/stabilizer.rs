//! Pauli strings and stabilizer verification of entangled states.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::entangle::qubit::{DensityOperator, QubitStateVector};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn is_identity(self) -> bool {
        matches!(self, Pauli::I)
    }

    /// (bit flip?, phase when acting on basis bit b).
    fn action(self, bit: u8) -> (bool, Complex64) {
        match self {
            Pauli::I => (false, Complex64::new(1.0, 0.0)),
            Pauli::X => (true, Complex64::new(1.0, 0.0)),
            Pauli::Y => (
                true,
                if bit == 0 {
                    Complex64::new(0.0, 1.0)
                } else {
                    Complex64::new(0.0, -1.0)
                },
            ),
            Pauli::Z => (
                false,
                if bit == 0 {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(-1.0, 0.0)
                },
            ),
        }
    }
}

/// A signed Pauli string such as +ZXZ. Qubit 0 is the leftmost character.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PauliString {
    pub sign: i8,
    pub paulis: Vec<Pauli>,
}

impl PauliString {
    pub fn new(sign: i8, paulis: Vec<Pauli>) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(Error::invalid("sign", "must be +1 or -1"));
        }
        if paulis.is_empty() {
            return Err(Error::invalid("paulis", "needs at least one qubit"));
        }
        Ok(PauliString { sign, paulis })
    }

    pub fn qubit_count(&self) -> usize {
        self.paulis.len()
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        let anticommuting = self
            .paulis
            .iter()
            .zip(&other.paulis)
            .filter(|(a, b)| !a.is_identity() && !b.is_identity() && a != b)
            .count();
        anticommuting % 2 == 0
    }

    /// Apply to a state vector (qubit q = bit q of the index).
    pub fn apply(&self, state: &QubitStateVector) -> Result<QubitStateVector> {
        if state.qubit_count() != self.qubit_count() {
            return Err(Error::DimensionMismatch {
                left: state.qubit_count(),
                right: self.qubit_count(),
            });
        }
        let dim = state.amplitudes().len();
        let mut out = vec![Complex64::new(0.0, 0.0); dim];
        for (i, &amp) in state.amplitudes().iter().enumerate() {
            let (j, phase) = self.map_basis(i);
            out[j] += phase * amp;
        }
        QubitStateVector::with_cap(out, state.kinds().to_vec(), state.qubit_count())
    }

    /// Image of basis state |i⟩: (target index, phase).
    fn map_basis(&self, i: usize) -> (usize, Complex64) {
        let mut j = i;
        let mut phase = Complex64::new(self.sign as f64, 0.0);
        for (q, p) in self.paulis.iter().enumerate() {
            let bit = ((i >> q) & 1) as u8;
            let (flip, f) = p.action(bit);
            phase *= f;
            if flip {
                j ^= 1 << q;
            }
        }
        (j, phase)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.sign >= 0 { '+' } else { '-' })?;
        for p in &self.paulis {
            write!(f, "{}", match p {
                Pauli::I => 'I',
                Pauli::X => 'X',
                Pauli::Y => 'Y',
                Pauli::Z => 'Z',
            })?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (sign, body) = match s.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, s.strip_prefix('+').unwrap_or(s)),
        };
        let mut paulis = Vec::with_capacity(body.len());
        for ch in body.chars() {
            paulis.push(match ch {
                'I' | 'i' => Pauli::I,
                'X' | 'x' => Pauli::X,
                'Y' | 'y' => Pauli::Y,
                'Z' | 'z' => Pauli::Z,
                _ => {
                    return Err(Error::invalid(
                        "pauli",
                        format!("unknown Pauli character `{ch}`"),
                    ))
                }
            });
        }
        PauliString::new(sign, paulis)
    }
}

/// A mutually commuting set of Pauli strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilizerSet {
    elements: Vec<PauliString>,
}

impl StabilizerSet {
    pub fn new(elements: Vec<PauliString>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::invalid("elements", "needs at least one stabilizer"));
        }
        let k = elements[0].qubit_count();
        for e in &elements {
            if e.qubit_count() != k {
                return Err(Error::DimensionMismatch {
                    left: e.qubit_count(),
                    right: k,
                });
            }
        }
        for i in 0..elements.len() {
            for j in (i + 1)..elements.len() {
                if !elements[i].commutes_with(&elements[j]) {
                    return Err(Error::invalid(
                        "elements",
                        format!(
                            "stabilizers {} and {} anticommute",
                            elements[i], elements[j]
                        ),
                    ));
                }
            }
        }
        Ok(StabilizerSet { elements })
    }

    pub fn elements(&self) -> &[PauliString] {
        &self.elements
    }

    pub fn qubit_count(&self) -> usize {
        self.elements[0].qubit_count()
    }

    /// Full state description: one stabilizer per qubit.
    pub fn is_complete(&self) -> bool {
        self.elements.len() == self.qubit_count()
    }

    /// Linear-cluster stabilizers K_i = Z_{i−1}·X_i·Z_{i+1}.
    pub fn linear_cluster(qubits: usize) -> Result<Self> {
        if qubits == 0 {
            return Err(Error::invalid("qubits", "needs at least one qubit"));
        }
        let mut elements = Vec::with_capacity(qubits);
        for i in 0..qubits {
            let mut paulis = vec![Pauli::I; qubits];
            paulis[i] = Pauli::X;
            if i > 0 {
                paulis[i - 1] = Pauli::Z;
            }
            if i + 1 < qubits {
                paulis[i + 1] = Pauli::Z;
            }
            elements.push(PauliString::new(1, paulis)?);
        }
        StabilizerSet::new(elements)
    }
}

/// ⟨ψ|P|ψ⟩ for each stabilizer.
pub fn stabilizer_expectations_pure(
    state: &QubitStateVector,
    stabs: &StabilizerSet,
) -> Result<Vec<f64>> {
    stabs
        .elements()
        .iter()
        .map(|p| {
            let mapped = p.apply(state)?;
            Ok(state.inner(&mapped)?.re)
        })
        .collect()
}

/// Tr(ρ·P) for each stabilizer.
pub fn stabilizer_expectations(
    state: &DensityOperator,
    stabs: &StabilizerSet,
) -> Result<Vec<f64>> {
    if state.qubit_count() != stabs.qubit_count() {
        return Err(Error::DimensionMismatch {
            left: state.qubit_count(),
            right: stabs.qubit_count(),
        });
    }
    stabs
        .elements()
        .iter()
        .map(|p| {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..state.matrix().nrows() {
                let (j, phase) = p.map_basis(i);
                acc += phase * state.matrix()[[i, j]];
            }
            Ok(acc.re)
        })
        .collect()
}

/// Squared overlap of two pure states.
pub fn pure_fidelity(a: &QubitStateVector, b: &QubitStateVector) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr())
}

/// ⟨target|ρ|target⟩.
pub fn state_fidelity(state: &DensityOperator, target: &QubitStateVector) -> Result<f64> {
    state.fidelity_pure(target)
}

/// The canonical linear cluster state: |+⟩^⊗k followed by CZ on neighbours.
pub fn linear_cluster_state(kinds: Vec<super::qubit::QubitKind>) -> Result<QubitStateVector> {
    let k = kinds.len();
    let mut state = QubitStateVector::zero(kinds)?;
    for q in 0..k {
        state.apply_h(q);
    }
    for q in 0..k.saturating_sub(1) {
        state.apply_cz(q, q + 1);
    }
    Ok(state)
}

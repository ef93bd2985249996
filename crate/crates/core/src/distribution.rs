//! Transition amplitudes, exact output distributions, and sampling.

use std::collections::BTreeMap;

use ndarray::Array2;
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fock::{enumerate_patterns, EngineCaps, FockState};
use crate::interferometer::Interferometer;
use crate::permanent::permanent;

/// A probability map over Fock states, keyed in lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probs: BTreeMap<FockState, f64>,
}

impl Distribution {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (FockState, f64)>) -> Self {
        let mut probs = BTreeMap::new();
        for (state, p) in pairs {
            *probs.entry(state).or_insert(0.0) += p;
        }
        Distribution { probs }
    }

    /// All probability on a single state.
    pub fn point(state: FockState) -> Self {
        Distribution {
            probs: BTreeMap::from([(state, 1.0)]),
        }
    }

    pub fn prob(&self, state: &FockState) -> f64 {
        self.probs.get(state).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FockState, f64)> {
        self.probs.iter().map(|(s, &p)| (s, p))
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn total_probability(&self) -> f64 {
        self.probs.values().sum()
    }

    /// Total-variation distance ½·Σ|p−q| over the union of supports.
    pub fn tvd(&self, other: &Distribution) -> f64 {
        let mut acc = 0.0;
        for (state, p) in self.iter() {
            acc += (p - other.prob(state)).abs();
        }
        for (state, q) in other.iter() {
            if !self.probs.contains_key(state) {
                acc += q.abs();
            }
        }
        acc / 2.0
    }
}

fn check_same_modes(u: &Interferometer, state: &FockState) -> Result<()> {
    if u.mode_count() != state.mode_count() {
        return Err(Error::ModeCountMismatch {
            left: u.mode_count(),
            right: state.mode_count(),
        });
    }
    Ok(())
}

/// ⟨output|Φ(U)|input⟩ = Perm(U_sub)/√(∏ in_i!·∏ out_j!), where U_sub repeats
/// rows per output occupation and columns per input occupation.
pub fn transition_amplitude(
    u: &Interferometer,
    input: &FockState,
    output: &FockState,
) -> Result<Complex64> {
    check_same_modes(u, input)?;
    check_same_modes(u, output)?;
    if input.total_photons() != output.total_photons() {
        return Err(Error::PhotonNumberMismatch {
            input: input.total_photons(),
            output: output.total_photons(),
        });
    }
    let rows = output.mode_list();
    let cols = input.mode_list();
    let n = rows.len();
    let mut sub = Array2::<Complex64>::zeros((n, n));
    for (r, &row_mode) in rows.iter().enumerate() {
        for (c, &col_mode) in cols.iter().enumerate() {
            sub[[r, c]] = u.matrix()[[row_mode, col_mode]];
        }
    }
    let norm = (input.factorial_product() * output.factorial_product()).sqrt();
    Ok(permanent(&sub)? / norm)
}

/// Exact output distribution of `input` through `u` with default caps.
pub fn output_distribution(u: &Interferometer, input: &FockState) -> Result<Distribution> {
    output_distribution_with_caps(u, input, &EngineCaps::default())
}

pub fn output_distribution_with_caps(
    u: &Interferometer,
    input: &FockState,
    caps: &EngineCaps,
) -> Result<Distribution> {
    check_same_modes(u, input)?;
    caps.check(input.total_photons(), u.mode_count())?;
    let patterns = enumerate_patterns(u.mode_count(), input.total_photons());
    // Patterns are evaluated in parallel but collected in enumeration order,
    // so the reduction order is fixed.
    let probs: Vec<Result<(FockState, f64)>> = patterns
        .into_par_iter()
        .map(|out| {
            let amp = transition_amplitude(u, input, &out)?;
            Ok((out, amp.norm_sqr()))
        })
        .collect();
    let mut map = BTreeMap::new();
    for entry in probs {
        let (state, p) = entry?;
        map.insert(state, p);
    }
    Ok(Distribution { probs: map })
}

/// Push a classical mixture of Fock states through `u`.
pub fn evolve_distribution(
    u: &Interferometer,
    dist: &Distribution,
    caps: &EngineCaps,
) -> Result<Distribution> {
    let mut acc: BTreeMap<FockState, f64> = BTreeMap::new();
    for (state, weight) in dist.iter() {
        if weight == 0.0 {
            continue;
        }
        let out = output_distribution_with_caps(u, state, caps)?;
        for (s, p) in out.iter() {
            *acc.entry(s.clone()).or_insert(0.0) += weight * p;
        }
    }
    Ok(Distribution { probs: acc })
}

/// I.i.d. samples from the exact output distribution; deterministic given the
/// random stream.
pub fn sample_outputs<R: Rng + ?Sized>(
    u: &Interferometer,
    input: &FockState,
    rng: &mut R,
    count: usize,
) -> Result<Vec<FockState>> {
    sample_outputs_with_caps(u, input, rng, count, &EngineCaps::default())
}

pub fn sample_outputs_with_caps<R: Rng + ?Sized>(
    u: &Interferometer,
    input: &FockState,
    rng: &mut R,
    count: usize,
    caps: &EngineCaps,
) -> Result<Vec<FockState>> {
    let dist = output_distribution_with_caps(u, input, caps)?;
    let states: Vec<&FockState> = dist.probs.keys().collect();
    let mut cumulative = Vec::with_capacity(states.len());
    let mut acc = 0.0;
    for (_, p) in dist.iter() {
        acc += p;
        cumulative.push(acc);
    }
    let total = acc;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let x: f64 = rng.gen::<f64>() * total;
        let idx = match cumulative.binary_search_by(|c| c.partial_cmp(&x).unwrap()) {
            Ok(i) => (i + 1).min(states.len() - 1),
            Err(i) => i.min(states.len() - 1),
        };
        out.push(states[idx].clone());
    }
    Ok(out)
}

//! Per-mode photon loss as independent beamsplitters to the environment.

use std::collections::BTreeMap;

use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::fock::{binomial, FockState};

/// Per-mode transmissivities η_i ∈ [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct LossChannel {
    transmissivities: Vec<f64>,
}

impl LossChannel {
    pub fn new(transmissivities: impl Into<Vec<f64>>) -> Result<Self> {
        let transmissivities = transmissivities.into();
        if transmissivities.is_empty() {
            return Err(Error::invalid("transmissivities", "needs at least one mode"));
        }
        for (i, &eta) in transmissivities.iter().enumerate() {
            if !(0.0..=1.0).contains(&eta) || eta.is_nan() {
                return Err(Error::invalid(
                    "transmissivities",
                    format!("mode {i}: {eta} outside [0, 1]"),
                ));
            }
        }
        Ok(LossChannel { transmissivities })
    }

    pub fn uniform(eta: f64, mode_count: usize) -> Result<Self> {
        LossChannel::new(vec![eta; mode_count])
    }

    /// The identity channel.
    pub fn lossless(mode_count: usize) -> Self {
        LossChannel {
            transmissivities: vec![1.0; mode_count],
        }
    }

    pub fn mode_count(&self) -> usize {
        self.transmissivities.len()
    }

    pub fn transmissivities(&self) -> &[f64] {
        &self.transmissivities
    }
}

/// Each photon in mode i survives independently with probability η_i.
pub fn apply_loss(dist: &Distribution, loss: &LossChannel) -> Result<Distribution> {
    let mut acc: BTreeMap<FockState, f64> = BTreeMap::new();
    for (state, p) in dist.iter() {
        if state.mode_count() != loss.mode_count() {
            return Err(Error::ModeCountMismatch {
                left: state.mode_count(),
                right: loss.mode_count(),
            });
        }
        let mut survivors = vec![0usize; state.mode_count()];
        expand_loss(
            state.occupations(),
            loss.transmissivities(),
            0,
            p,
            &mut survivors,
            &mut acc,
        );
    }
    Ok(Distribution::from_pairs(acc))
}

fn expand_loss(
    occ: &[usize],
    etas: &[f64],
    mode: usize,
    weight: f64,
    survivors: &mut Vec<usize>,
    acc: &mut BTreeMap<FockState, f64>,
) {
    if weight == 0.0 {
        return;
    }
    if mode == occ.len() {
        let state = FockState::new(survivors.clone()).expect("non-empty");
        *acc.entry(state).or_insert(0.0) += weight;
        return;
    }
    let n = occ[mode];
    let eta = etas[mode];
    for k in 0..=n {
        let w = binomial(n, k) * eta.powi(k as i32) * (1.0 - eta).powi((n - k) as i32);
        if w == 0.0 {
            continue;
        }
        survivors[mode] = k;
        expand_loss(occ, etas, mode + 1, weight * w, survivors, acc);
    }
    survivors[mode] = 0;
}

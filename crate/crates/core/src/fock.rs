//! Occupation-number states and the exact-engine resource caps.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Photon occupation numbers over a fixed set of optical modes.
///
/// Equality and ordering are lexicographic over the occupation vector, which
/// fixes the basis enumeration order used everywhere (CSV goldens rely on it).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FockState {
    occupations: Vec<usize>,
}

impl FockState {
    pub fn new(occupations: impl Into<Vec<usize>>) -> Result<Self> {
        let occupations = occupations.into();
        if occupations.is_empty() {
            return Err(Error::invalid("occupations", "mode count must be at least 1"));
        }
        Ok(FockState { occupations })
    }

    pub fn vacuum(mode_count: usize) -> Result<Self> {
        FockState::new(vec![0; mode_count])
    }

    pub fn mode_count(&self) -> usize {
        self.occupations.len()
    }

    pub fn total_photons(&self) -> usize {
        self.occupations.iter().sum()
    }

    pub fn occupations(&self) -> &[usize] {
        &self.occupations
    }

    pub fn occupation(&self, mode: usize) -> usize {
        self.occupations[mode]
    }

    /// Mode indices listed with multiplicity, e.g. (2,0,1) → [0,0,2].
    pub fn mode_list(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.total_photons());
        for (mode, &n) in self.occupations.iter().enumerate() {
            out.extend(std::iter::repeat(mode).take(n));
        }
        out
    }

    /// ∏_i n_i! as a float.
    pub fn factorial_product(&self) -> f64 {
        self.occupations.iter().map(|&n| factorial(n)).product()
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for n in &self.occupations {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for FockState {
    type Err = Error;

    /// Parses comma-joined occupation numbers, e.g. "1,0,2".
    fn from_str(s: &str) -> Result<Self> {
        let mut occ = Vec::new();
        for part in s.split(',') {
            let n: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::invalid("occupation", format!("bad entry `{part}`")))?;
            occ.push(n);
        }
        FockState::new(occ)
    }
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// All occupation vectors of `photons` photons over `modes` modes, ascending
/// lexicographic order. (0,0,2) < (0,1,1) < (0,2,0) < …
pub fn enumerate_patterns(modes: usize, photons: usize) -> Vec<FockState> {
    let mut out = Vec::new();
    let mut current = vec![0usize; modes];
    fill_patterns(&mut current, 0, photons, &mut out);
    out
}

fn fill_patterns(current: &mut Vec<usize>, mode: usize, remaining: usize, out: &mut Vec<FockState>) {
    if mode == current.len() - 1 {
        current[mode] = remaining;
        out.push(FockState {
            occupations: current.clone(),
        });
        current[mode] = 0;
        return;
    }
    for k in 0..=remaining {
        current[mode] = k;
        fill_patterns(current, mode + 1, remaining - k, out);
    }
    current[mode] = 0;
}

/// Exact-engine resource caps. Exceeding a cap is an explicit error, never a
/// silent truncation: the permanent cost is 2^n.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EngineCaps {
    pub max_photons: usize,
    pub max_modes: usize,
}

impl Default for EngineCaps {
    fn default() -> Self {
        EngineCaps {
            max_photons: 8,
            max_modes: 16,
        }
    }
}

impl EngineCaps {
    pub fn check(&self, photons: usize, modes: usize) -> Result<()> {
        if photons > self.max_photons {
            return Err(Error::ResourceLimit {
                quantity: "photon number",
                requested: photons,
                limit: self.max_photons,
            });
        }
        if modes > self.max_modes {
            return Err(Error::ResourceLimit {
                quantity: "mode count",
                requested: modes,
                limit: self.max_modes,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern_enumeration_is_lexicographic_and_complete() {
        let pats = enumerate_patterns(3, 2);
        let expect = vec![
            vec![0, 0, 2],
            vec![0, 1, 1],
            vec![0, 2, 0],
            vec![1, 0, 1],
            vec![1, 1, 0],
            vec![2, 0, 0],
        ];
        assert_eq!(pats.len(), expect.len());
        for (p, e) in pats.iter().zip(&expect) {
            assert_eq!(p.occupations(), e.as_slice());
        }
        let mut sorted = pats.clone();
        sorted.sort();
        assert_eq!(sorted, pats);
    }

    #[test]
    fn display_and_parse_roundtrip() {
        let f = FockState::new(vec![1, 0, 2]).unwrap();
        assert_eq!(f.to_string(), "1,0,2");
        let back: FockState = "1,0,2".parse().unwrap();
        assert_eq!(back, f);
        assert!("".parse::<FockState>().is_err());
        assert!("1,x".parse::<FockState>().is_err());
    }

    #[test]
    fn caps_reject_over_limit() {
        let caps = EngineCaps::default();
        assert!(caps.check(8, 16).is_ok());
        let err = caps.check(9, 4).unwrap_err();
        assert!(err.to_string().contains("photon number"));
        let err = caps.check(4, 17).unwrap_err();
        assert!(err.to_string().contains("mode count"));
    }

    #[test]
    fn mode_list_expands_multiplicity() {
        let f = FockState::new(vec![2, 0, 1]).unwrap();
        assert_eq!(f.mode_list(), vec![0, 0, 2]);
        assert_eq!(f.total_photons(), 3);
        assert!((f.factorial_product() - 2.0).abs() < 1e-15);
    }
}

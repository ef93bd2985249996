//! Partial distinguishability of photons via internal-state Gram matrices.
//!
//! The scalar quality knob V is the pairwise Hong-Ou-Mandel visibility:
//! photons i ≠ j have internal overlap ⟨φ_i|φ_j⟩ with |⟨φ_i|φ_j⟩|² = V.
//! `uniform(V, N)` therefore puts √V on every off-diagonal of the Gram
//! matrix, realized by states √v·|ξ⟩ + √(1−v)·|ξ_j^⊥⟩ with v = √V over
//! mutually orthogonal bad bits.

use ndarray::Array2;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::fock::{enumerate_patterns, EngineCaps, FockState};
use crate::interferometer::{haar_random_unitary, Interferometer};
use crate::linalg::{hermitian_eigenvalues, psd_factor};
use crate::permanent::permanent;

pub const GRAM_PSD_TOLERANCE: f64 = 1e-9;

/// Pairwise internal-state overlaps ⟨φ_i|φ_j⟩ of the N photons.
#[derive(Debug, Clone)]
pub struct DistinguishabilityModel {
    gram: Array2<Complex64>,
    /// Row vectors c_j with ⟨c_i, c_j⟩ = G_ij (an explicit realization).
    internal: Vec<Vec<Complex64>>,
}

impl DistinguishabilityModel {
    pub fn new(gram: Array2<Complex64>) -> Result<Self> {
        let n = gram.nrows();
        if gram.ncols() != n || n == 0 {
            return Err(Error::NonSquareMatrix {
                rows: n,
                cols: gram.ncols(),
            });
        }
        for i in 0..n {
            if (gram[[i, i]] - Complex64::new(1.0, 0.0)).norm() > 1e-9 {
                return Err(Error::invalid(
                    "gram",
                    format!("diagonal entry {i} is not 1"),
                ));
            }
            for j in 0..n {
                if (gram[[i, j]] - gram[[j, i]].conj()).norm() > 1e-9 {
                    return Err(Error::invalid("gram", "matrix is not Hermitian"));
                }
            }
        }
        let eigs = hermitian_eigenvalues(&gram)?;
        let min_eig = eigs.first().copied().unwrap_or(0.0);
        if min_eig < -GRAM_PSD_TOLERANCE {
            return Err(Error::GramNotPsd {
                min_eigenvalue: min_eig,
            });
        }
        let internal = psd_factor(&gram, 1e-12)?;
        Ok(DistinguishabilityModel { gram, internal })
    }

    /// All pairwise overlaps equal to √V.
    pub fn uniform(v: f64, photons: usize) -> Result<Self> {
        if !(0.0..=1.0).contains(&v) || v.is_nan() {
            return Err(Error::invalid("v", format!("{v} outside [0, 1]")));
        }
        if photons == 0 {
            return Err(Error::invalid("photons", "must be at least 1"));
        }
        let overlap = v.sqrt();
        let mut gram = Array2::<Complex64>::from_elem(
            (photons, photons),
            Complex64::new(overlap, 0.0),
        );
        for i in 0..photons {
            gram[[i, i]] = Complex64::new(1.0, 0.0);
        }
        // Explicit orthogonal-bad-bit realization: shared component √v plus
        // a private component √(1−v), v = √V.
        let shared = overlap.sqrt();
        let private = (1.0 - overlap).sqrt();
        let internal: Vec<Vec<Complex64>> = (0..photons)
            .map(|j| {
                if private == 0.0 {
                    vec![Complex64::new(1.0, 0.0)]
                } else {
                    let mut c = vec![Complex64::new(0.0, 0.0); photons + 1];
                    c[0] = Complex64::new(shared, 0.0);
                    c[j + 1] = Complex64::new(private, 0.0);
                    c
                }
            })
            .collect();
        Ok(DistinguishabilityModel { gram, internal })
    }

    pub fn photon_count(&self) -> usize {
        self.gram.nrows()
    }

    pub fn gram(&self) -> &Array2<Complex64> {
        &self.gram
    }

    /// Internal-state vectors realizing the Gram matrix.
    pub fn internal_vectors(&self) -> &[Vec<Complex64>] {
        &self.internal
    }

    pub fn internal_dim(&self) -> usize {
        self.internal.first().map(|c| c.len()).unwrap_or(0)
    }
}

/// Coincidence probability of two photons with pairwise visibility V on a
/// balanced beamsplitter: (1 − V)/2.
pub fn hom_coincidence(v: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&v) || v.is_nan() {
        return Err(Error::invalid("v", format!("{v} outside [0, 1]")));
    }
    Ok((1.0 - v) / 2.0)
}

/// Default photon cap for the partially-distinguishable engine; internal
/// modes expand the state space, so it sits below the ideal-engine cap.
pub fn partial_engine_caps() -> EngineCaps {
    EngineCaps {
        max_photons: 6,
        max_modes: 16,
    }
}

/// Exact output distribution for partially distinguishable photons.
///
/// Marginalizing the internal labels gives, for an output pattern with mode
/// list d and input mode list s,
///
///   P = (1/(N_in·∏t_j!)) Σ_{σ,ρ} ∏_k G_{σ(k),ρ(k)} U[d_k, s_ρ(k)] Ū[d_k, s_σ(k)]
///
/// with N_in = Perm(B), B_jk = δ_{s_j,s_k}·G_jk, the input normalization.
pub fn partial_distribution(
    u: &Interferometer,
    input: &FockState,
    model: &DistinguishabilityModel,
) -> Result<Distribution> {
    partial_distribution_with_caps(u, input, model, &partial_engine_caps())
}

pub fn partial_distribution_with_caps(
    u: &Interferometer,
    input: &FockState,
    model: &DistinguishabilityModel,
    caps: &EngineCaps,
) -> Result<Distribution> {
    if u.mode_count() != input.mode_count() {
        return Err(Error::ModeCountMismatch {
            left: u.mode_count(),
            right: input.mode_count(),
        });
    }
    let n = input.total_photons();
    if n != model.photon_count() {
        return Err(Error::DimensionMismatch {
            left: n,
            right: model.photon_count(),
        });
    }
    caps.check(n, u.mode_count())?;
    let s = input.mode_list();
    let gram = model.gram();

    // Input normalization Perm(B): 1 for collision-free inputs.
    let mut b = Array2::<Complex64>::zeros((n, n));
    for j in 0..n {
        for k in 0..n {
            if s[j] == s[k] {
                b[[j, k]] = gram[[j, k]];
            }
        }
    }
    let n_in = permanent(&b)?.re;
    if n_in <= 0.0 {
        return Err(Error::Numerical(
            "input normalization is not positive".into(),
        ));
    }

    let perms = permutations(n);
    let patterns = enumerate_patterns(u.mode_count(), n);
    let entries: Vec<(FockState, f64)> = patterns
        .into_par_iter()
        .map(|t| {
            let d = t.mode_list();
            // V[k][j] = U[d_k, s_j]
            let v: Vec<Vec<Complex64>> = d
                .iter()
                .map(|&dk| s.iter().map(|&sj| u.matrix()[[dk, sj]]).collect())
                .collect();
            let mut acc = Complex64::new(0.0, 0.0);
            for sigma in &perms {
                for rho in &perms {
                    let mut prod = Complex64::new(1.0, 0.0);
                    for k in 0..n {
                        prod *= gram[[sigma[k], rho[k]]]
                            * v[k][rho[k]]
                            * v[k][sigma[k]].conj();
                    }
                    acc += prod;
                }
            }
            let p = acc.re / (n_in * t.factorial_product());
            (t, p.max(0.0))
        })
        .collect();
    Ok(Distribution::from_pairs(entries))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..n).permutations(n).collect()
}

/// Which reference sampler Δ is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Reference {
    /// Perfectly indistinguishable photons (V = 1).
    Ideal,
    /// Fully distinguishable photons (V = 0).
    Distinguishable,
}

/// One point of the boson-sampling quality benchmark.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkResult {
    pub photon_number: usize,
    pub id_value: f64,
    pub delta_to_ideal: f64,
    pub delta_to_distinguishable: f64,
    pub reference_unitary_seed: u64,
}

impl BenchmarkResult {
    pub fn delta(&self, reference: Reference) -> f64 {
        match reference {
            Reference::Ideal => self.delta_to_ideal,
            Reference::Distinguishable => self.delta_to_distinguishable,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkConfig {
    /// Exact-computation cap on the photon number.
    pub max_photons: usize,
    /// Interferometer size; defaults to N² (collision-sparse regime).
    pub modes_override: Option<usize>,
}

impl Default for BenchmarkConfig {
    fn default() -> Self {
        BenchmarkConfig {
            max_photons: 5,
            modes_override: None,
        }
    }
}

/// Total-variation distance of the V-degraded sampler to both reference
/// samplers on a seeded Haar interferometer with photons in the first N modes.
pub fn delta_benchmark(
    v: f64,
    photons: usize,
    unitary_seed: u64,
    config: &BenchmarkConfig,
) -> Result<BenchmarkResult> {
    if !(0.0..=1.0).contains(&v) || v.is_nan() {
        return Err(Error::invalid("v", format!("{v} outside [0, 1]")));
    }
    if photons == 0 {
        return Err(Error::invalid("photons", "must be at least 1"));
    }
    if photons > config.max_photons {
        return Err(Error::ResourceLimit {
            quantity: "benchmark photon number",
            requested: photons,
            limit: config.max_photons,
        });
    }
    let modes = config.modes_override.unwrap_or(photons * photons);
    if modes < photons {
        return Err(Error::invalid(
            "modes_override",
            "needs at least one mode per photon",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(unitary_seed);
    let u = haar_random_unitary(modes, &mut rng)?;
    let mut occ = vec![0usize; modes];
    for slot in occ.iter_mut().take(photons) {
        *slot = 1;
    }
    let input = FockState::new(occ)?;
    let caps = EngineCaps {
        max_photons: photons,
        max_modes: modes,
    };
    let p_real = partial_distribution_with_caps(
        &u,
        &input,
        &DistinguishabilityModel::uniform(v, photons)?,
        &caps,
    )?;
    let p_ideal = partial_distribution_with_caps(
        &u,
        &input,
        &DistinguishabilityModel::uniform(1.0, photons)?,
        &caps,
    )?;
    let p_dist = partial_distribution_with_caps(
        &u,
        &input,
        &DistinguishabilityModel::uniform(0.0, photons)?,
        &caps,
    )?;
    Ok(BenchmarkResult {
        photon_number: photons,
        id_value: v,
        delta_to_ideal: p_real.tvd(&p_ideal),
        delta_to_distinguishable: p_real.tvd(&p_dist),
        reference_unitary_seed: unitary_seed,
    })
}

/// One benchmark point per (photon number, seed) pair.
pub fn delta_curve(
    v: f64,
    n_values: &[usize],
    seeds: &[u64],
    config: &BenchmarkConfig,
) -> Result<Vec<BenchmarkResult>> {
    let jobs: Vec<(usize, u64)> = n_values
        .iter()
        .flat_map(|&n| seeds.iter().map(move |&s| (n, s)))
        .collect();
    jobs.into_par_iter()
        .map(|(n, seed)| delta_benchmark(v, n, seed, config))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fock(v: &[usize]) -> FockState {
        FockState::new(v.to_vec()).unwrap()
    }

    #[test]
    fn hom_limits() {
        assert_eq!(hom_coincidence(1.0).unwrap(), 0.0);
        assert_eq!(hom_coincidence(0.0).unwrap(), 0.5);
        assert!((hom_coincidence(0.96).unwrap() - 0.02).abs() < 1e-15);
        assert!(hom_coincidence(1.5).is_err());
        assert!(hom_coincidence(-0.1).is_err());
    }

    #[test]
    fn uniform_gram_limits() {
        let ideal = DistinguishabilityModel::uniform(1.0, 3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!((ideal.gram()[[i, j]] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
            }
        }
        assert_eq!(ideal.internal_dim(), 1);
        let dist = DistinguishabilityModel::uniform(0.0, 3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((dist.gram()[[i, j]] - Complex64::new(expect, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn uniform_internal_vectors_realize_gram() {
        let model = DistinguishabilityModel::uniform(0.7, 4).unwrap();
        let c = model.internal_vectors();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..model.internal_dim() {
                    acc += c[i][k].conj() * c[j][k];
                }
                assert!((acc - model.gram()[[i, j]]).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn non_psd_gram_rejected() {
        let mut gram = Array2::<Complex64>::eye(2);
        gram[[0, 1]] = Complex64::new(1.2, 0.0);
        gram[[1, 0]] = Complex64::new(1.2, 0.0);
        assert!(matches!(
            DistinguishabilityModel::new(gram),
            Err(Error::GramNotPsd { .. })
        ));
    }

    #[test]
    fn partial_ideal_photons_bunch() {
        let bs = Interferometer::beamsplitter_50_50();
        let model = DistinguishabilityModel::uniform(1.0, 2).unwrap();
        let dist = partial_distribution(&bs, &fock(&[1, 1]), &model).unwrap();
        assert!((dist.prob(&fock(&[2, 0])) - 0.5).abs() < 1e-12);
        assert!((dist.prob(&fock(&[0, 2])) - 0.5).abs() < 1e-12);
        assert!(dist.prob(&fock(&[1, 1])) < 1e-12);
    }

    #[test]
    fn partial_distinguishable_photons_split_classically() {
        let bs = Interferometer::beamsplitter_50_50();
        let model = DistinguishabilityModel::uniform(0.0, 2).unwrap();
        let dist = partial_distribution(&bs, &fock(&[1, 1]), &model).unwrap();
        assert!((dist.prob(&fock(&[2, 0])) - 0.25).abs() < 1e-12);
        assert!((dist.prob(&fock(&[0, 2])) - 0.25).abs() < 1e-12);
        assert!((dist.prob(&fock(&[1, 1])) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn partial_matches_hom_formula() {
        let bs = Interferometer::beamsplitter_50_50();
        for &v in &[0.0, 0.3, 0.96, 1.0] {
            let model = DistinguishabilityModel::uniform(v, 2).unwrap();
            let dist = partial_distribution(&bs, &fock(&[1, 1]), &model).unwrap();
            let expect = hom_coincidence(v).unwrap();
            assert!(
                (dist.prob(&fock(&[1, 1])) - expect).abs() < 1e-12,
                "V = {v}"
            );
            assert!((dist.total_probability() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn delta_trivial_references() {
        let cfg = BenchmarkConfig::default();
        let r = delta_benchmark(1.0, 3, 9, &cfg).unwrap();
        assert_eq!(r.delta_to_ideal, 0.0);
        let r0 = delta_benchmark(0.0, 3, 9, &cfg).unwrap();
        assert_eq!(r0.delta_to_distinguishable, 0.0);
        assert!(r0.delta_to_ideal > 0.0);
        assert!(r0.delta_to_ideal <= 1.0);
    }

    #[test]
    fn delta_cap_enforced() {
        let cfg = BenchmarkConfig::default();
        assert!(matches!(
            delta_benchmark(0.5, 6, 1, &cfg),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn photon_count_must_match_model() {
        let bs = Interferometer::beamsplitter_50_50();
        let model = DistinguishabilityModel::uniform(0.5, 3).unwrap();
        assert!(matches!(
            partial_distribution(&bs, &fock(&[1, 1]), &model),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}

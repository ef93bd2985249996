//! Independent oracles for derived expected values.
//!
//! Everything here avoids the library's Ryser/Glynn/formula paths: permanents
//! are naive permutation sums, and the partial-distinguishability oracle is a
//! literal internal⊗external mode expansion.

use ndarray::Array2;
use num_complex::Complex64;
use photonsim::distinguishability::DistinguishabilityModel;
use photonsim::distribution::Distribution;
use photonsim::fock::{enumerate_patterns, FockState};
use photonsim::interferometer::Interferometer;

/// All permutations of 0..n via simple recursion.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    permute(&mut items, 0, &mut out);
    out
}

fn permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, out);
        items.swap(k, i);
    }
}

/// Permanent as an explicit sum over all n! permutations.
pub fn naive_permanent(a: &Array2<Complex64>) -> Complex64 {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let mut total = Complex64::new(0.0, 0.0);
    for perm in all_permutations(n) {
        let mut prod = Complex64::new(1.0, 0.0);
        for (i, &j) in perm.iter().enumerate() {
            prod *= a[[i, j]];
        }
        total += prod;
    }
    total
}

/// Transition amplitude by brute force: naive permanent of the submatrix.
pub fn naive_amplitude(u: &Interferometer, input: &FockState, output: &FockState) -> Complex64 {
    let rows = output.mode_list();
    let cols = input.mode_list();
    let n = rows.len();
    let mut sub = Array2::<Complex64>::zeros((n, n));
    for (r, &rm) in rows.iter().enumerate() {
        for (c, &cm) in cols.iter().enumerate() {
            sub[[r, c]] = u.matrix()[[rm, cm]];
        }
    }
    naive_permanent(&sub) / (input.factorial_product() * output.factorial_product()).sqrt()
}

/// Exact output distribution by brute-force amplitude enumeration.
pub fn naive_distribution(u: &Interferometer, input: &FockState) -> Distribution {
    let pats = enumerate_patterns(u.mode_count(), input.total_photons());
    Distribution::from_pairs(pats.into_iter().map(|t| {
        let p = naive_amplitude(u, input, &t).norm_sqr();
        (t, p)
    }))
}

/// Brute-force density-operator simulation of partially distinguishable
/// photons in the expanded internal⊗external mode space.
///
/// Photon j enters external mode s_j carrying internal vector c_j; the
/// expanded interferometer is U⊗I. External-pattern probabilities sum the
/// squared amplitudes of every consistent expanded pattern.
pub fn expanded_space_distribution(
    u: &Interferometer,
    input: &FockState,
    model: &DistinguishabilityModel,
) -> Distribution {
    let m = u.mode_count();
    let d = model.internal_dim();
    let c = model.internal_vectors();
    let s = input.mode_list();
    let n = s.len();
    assert_eq!(n, model.photon_count());

    // Input normalization Perm(B), B_jk = δ(s_j, s_k)·⟨c_j, c_k⟩.
    let mut b = Array2::<Complex64>::zeros((n, n));
    for j in 0..n {
        for k in 0..n {
            if s[j] == s[k] {
                let mut dot = Complex64::new(0.0, 0.0);
                for l in 0..d {
                    dot += c[j][l].conj() * c[k][l];
                }
                b[[j, k]] = dot;
            }
        }
    }
    let n_in = naive_permanent(&b).re;

    let mut acc: std::collections::BTreeMap<FockState, f64> = std::collections::BTreeMap::new();
    for expanded in enumerate_patterns(m * d, n) {
        let modes = expanded.mode_list();
        let mut a = Array2::<Complex64>::zeros((n, n));
        for (l, &flat) in modes.iter().enumerate() {
            let ext = flat / d;
            let int = flat % d;
            for j in 0..n {
                a[[l, j]] = u.matrix()[[ext, s[j]]] * c[j][int];
            }
        }
        let amp = naive_permanent(&a)
            / (expanded.factorial_product().sqrt() * n_in.sqrt());
        let p = amp.norm_sqr();
        if p == 0.0 {
            continue;
        }
        let mut ext_occ = vec![0usize; m];
        for (mode, &occ) in expanded.occupations().iter().enumerate() {
            ext_occ[mode / d] += occ;
        }
        *acc.entry(FockState::new(ext_occ).unwrap()).or_insert(0.0) += p;
    }
    Distribution::from_pairs(acc)
}

pub fn max_entry_diff(a: &Distribution, b: &Distribution) -> f64 {
    let mut worst = 0.0f64;
    for (s, p) in a.iter() {
        worst = worst.max((p - b.prob(s)).abs());
    }
    for (s, q) in b.iter() {
        worst = worst.max((a.prob(s) - q).abs());
    }
    worst
}

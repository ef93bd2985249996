mod common;

use common::{max_entry_diff, naive_distribution, naive_permanent};
use ndarray::Array2;
use num_complex::Complex64;
use photonsim::distribution::{
    evolve_distribution, output_distribution, sample_outputs, Distribution,
};
use photonsim::fock::{EngineCaps, FockState};
use photonsim::interferometer::{haar_random_unitary, Interferometer};
use photonsim::loss::{apply_loss, LossChannel};
use photonsim::permanent::{permanent, permanent_glynn};
use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fock(v: &[usize]) -> FockState {
    FockState::new(v.to_vec()).unwrap()
}

fn random_complex_matrix(n: usize, rng: &mut ChaCha8Rng) -> Array2<Complex64> {
    let mut a = Array2::<Complex64>::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            a[[i, j]] = Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
        }
    }
    a
}

#[test]
fn seeded_4x4_permanent_matches_naive_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let a = random_complex_matrix(4, &mut rng);
    let expect = naive_permanent(&a);
    let got = permanent(&a).unwrap();
    assert!(
        (got - expect).norm() < 1e-12,
        "ryser {got} vs naive {expect}"
    );
    let glynn = permanent_glynn(&a).unwrap();
    assert!((glynn - expect).norm() < 1e-12);
}

#[test]
fn ryser_glynn_agree_up_to_n10() {
    for n in 1..=10usize {
        let mut rng = ChaCha8Rng::seed_from_u64(500 + n as u64);
        let a = random_complex_matrix(n, &mut rng);
        let r = permanent(&a).unwrap();
        let g = permanent_glynn(&a).unwrap();
        let rel = (r - g).norm() / r.norm().max(1e-30);
        assert!(rel < 1e-10, "n={n} relative disagreement {rel:.3e}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn permanent_invariant_under_row_permutation(seed in 0u64..5000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_complex_matrix(4, &mut rng);
        let base = permanent(&a).unwrap();
        let mut swapped = a.clone();
        for j in 0..4 {
            let tmp = swapped[[0, j]];
            swapped[[0, j]] = swapped[[2, j]];
            swapped[[2, j]] = tmp;
        }
        prop_assert!((permanent(&swapped).unwrap() - base).norm() < 1e-10);
        let mut col_swapped = a.clone();
        for i in 0..4 {
            let tmp = col_swapped[[i, 1]];
            col_swapped[[i, 1]] = col_swapped[[i, 3]];
            col_swapped[[i, 3]] = tmp;
        }
        prop_assert!((permanent(&col_swapped).unwrap() - base).norm() < 1e-10);
    }

    #[test]
    fn permanent_is_multilinear_in_rows(seed in 0u64..5000, scale in -3.0f64..3.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_complex_matrix(3, &mut rng);
        let base = permanent(&a).unwrap();
        let mut scaled = a.clone();
        for j in 0..3 {
            scaled[[1, j]] *= Complex64::new(scale, 0.0);
        }
        let expect = base * scale;
        prop_assert!((permanent(&scaled).unwrap() - expect).norm() < 1e-9);
    }
}

#[test]
fn haar_distribution_matches_brute_force_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let u = haar_random_unitary(4, &mut rng).unwrap();
    let input = fock(&[1, 1, 1, 0]);
    let exact = output_distribution(&u, &input).unwrap();
    let brute = naive_distribution(&u, &input);
    assert!(max_entry_diff(&exact, &brute) < 1e-9);
    assert!((exact.total_probability() - 1.0).abs() < 1e-9);
}

#[test]
fn oracle_equivalence_up_to_four_photons() {
    // Includes bunched inputs; per-entry agreement 1e-9.
    let cases: Vec<(usize, Vec<usize>, u64)> = vec![
        (3, vec![1, 1, 0], 11),
        (4, vec![1, 1, 1, 0], 12),
        (4, vec![2, 1, 1, 0], 13),
        (5, vec![1, 1, 1, 1, 0], 14),
        (4, vec![2, 2, 0, 0], 15),
    ];
    for (m, occ, seed) in cases {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = haar_random_unitary(m, &mut rng).unwrap();
        let input = fock(&occ);
        let exact = output_distribution(&u, &input).unwrap();
        let brute = naive_distribution(&u, &input);
        let diff = max_entry_diff(&exact, &brute);
        assert!(diff < 1e-9, "m={m} input={input} diff={diff:.3e}");
        assert!((exact.total_probability() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn sampling_tvd_against_exact_distribution() {
    let mut rng = ChaCha8Rng::seed_from_u64(314);
    let u = haar_random_unitary(4, &mut rng).unwrap();
    let input = fock(&[1, 1, 0, 0]);
    let exact = output_distribution(&u, &input).unwrap();
    let mut sample_rng = ChaCha8Rng::seed_from_u64(2718);
    let n = 100_000usize;
    let samples = sample_outputs(&u, &input, &mut sample_rng, n).unwrap();
    let mut counts: std::collections::BTreeMap<FockState, usize> = Default::default();
    for s in samples {
        *counts.entry(s).or_insert(0) += 1;
    }
    let empirical = Distribution::from_pairs(
        counts
            .into_iter()
            .map(|(s, c)| (s, c as f64 / n as f64)),
    );
    let tvd = exact.tvd(&empirical);
    assert!(tvd < 0.02, "TVD = {tvd}");
}

#[test]
fn uniform_loss_commutes_with_interferometer() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let u = haar_random_unitary(3, &mut rng).unwrap();
    let input = fock(&[1, 2, 0]);
    let caps = EngineCaps::default();
    let loss = LossChannel::uniform(0.7, 3).unwrap();

    let after = apply_loss(&output_distribution(&u, &input).unwrap(), &loss).unwrap();
    let before = evolve_distribution(
        &u,
        &apply_loss(&Distribution::point(input), &loss).unwrap(),
        &caps,
    )
    .unwrap();
    assert!(max_entry_diff(&after, &before) < 1e-9);
    assert!((after.total_probability() - 1.0).abs() < 1e-9);
}

#[test]
fn lossless_evolution_conserves_photon_number() {
    let mut rng = ChaCha8Rng::seed_from_u64(123);
    let u = haar_random_unitary(4, &mut rng).unwrap();
    let input = fock(&[2, 1, 0, 0]);
    let dist = output_distribution(&u, &input).unwrap();
    for (state, p) in dist.iter() {
        if p > 0.0 {
            assert_eq!(state.total_photons(), 3);
        }
    }
    assert!((dist.total_probability() - 1.0).abs() < 1e-9);
}

#[test]
fn haar_column_norms_match_moments() {
    // For Haar on U(3), |U_00|² ~ Beta(1,2): mean 1/3, second moment 1/6.
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let draws = 10_000usize;
    let mut mean = 0.0f64;
    let mut second = 0.0f64;
    for _ in 0..draws {
        let u = haar_random_unitary(3, &mut rng).unwrap();
        let x = u.matrix()[[0, 0]].norm_sqr();
        mean += x;
        second += x * x;
    }
    mean /= draws as f64;
    second /= draws as f64;
    assert!((mean - 1.0 / 3.0).abs() < 0.01, "mean {mean}");
    assert!((second - 1.0 / 6.0).abs() < 0.01, "second moment {second}");
}

#[test]
fn haar_invariant_under_fixed_left_unitary() {
    // |(F·U)_00|² must have the same Haar moments as |U_00|².
    let mut fixed_rng = ChaCha8Rng::seed_from_u64(404);
    let f = haar_random_unitary(3, &mut fixed_rng).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let draws = 10_000usize;
    let mut mean_plain = 0.0f64;
    let mut mean_rotated = 0.0f64;
    for _ in 0..draws {
        let u = haar_random_unitary(3, &mut rng).unwrap();
        mean_plain += u.matrix()[[0, 0]].norm_sqr();
        let rotated = f.matrix().dot(u.matrix());
        mean_rotated += rotated[[0, 0]].norm_sqr();
    }
    mean_plain /= draws as f64;
    mean_rotated /= draws as f64;
    assert!((mean_plain - mean_rotated).abs() < 0.015);
    assert!((mean_rotated - 1.0 / 3.0).abs() < 0.01);
}

#[test]
fn unitarity_residual_small_for_seeded_haar() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    let u = haar_random_unitary(4, &mut rng).unwrap();
    assert!(u.unitarity_residual() < 1e-12);
}

//! Exact matrix permanents.
//!
//! Two independent O(2^n·n) evaluators are provided: Gray-code Ryser as the
//! fast path and Glynn as a cross-check. Both switch to compensated summation
//! for n > 16 where the alternating sums start losing digits.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::KahanSum;

const KAHAN_THRESHOLD: usize = 16;
const MAX_DIM: usize = 30;

fn check_square(a: &Array2<Complex64>) -> Result<usize> {
    let (rows, cols) = a.dim();
    if rows != cols {
        return Err(Error::NonSquareMatrix { rows, cols });
    }
    if rows > MAX_DIM {
        return Err(Error::ResourceLimit {
            quantity: "permanent dimension",
            requested: rows,
            limit: MAX_DIM,
        });
    }
    Ok(rows)
}

/// Permanent via Ryser's formula with Gray-code subset updates.
pub fn permanent(a: &Array2<Complex64>) -> Result<Complex64> {
    let n = check_square(a)?;
    if n == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let mut row_sums = vec![Complex64::new(0.0, 0.0); n];
    let mut prev_gray = 0u64;
    let mut plain = Complex64::new(0.0, 0.0);
    let mut kahan = KahanSum::default();
    let use_kahan = n > KAHAN_THRESHOLD;
    for k in 1u64..(1u64 << n) {
        let gray = k ^ (k >> 1);
        let diff = gray ^ prev_gray;
        let j = diff.trailing_zeros() as usize;
        if gray & diff != 0 {
            for (i, rs) in row_sums.iter_mut().enumerate() {
                *rs += a[[i, j]];
            }
        } else {
            for (i, rs) in row_sums.iter_mut().enumerate() {
                *rs -= a[[i, j]];
            }
        }
        prev_gray = gray;
        let mut prod = Complex64::new(1.0, 0.0);
        for rs in &row_sums {
            prod *= *rs;
        }
        let sign = if (n as u32 - gray.count_ones()) % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        if use_kahan {
            kahan.add(sign * prod);
        } else {
            plain += sign * prod;
        }
    }
    Ok(if use_kahan { kahan.value() } else { plain })
}

/// Permanent via Glynn's formula (±1 weightings), Gray-coded.
pub fn permanent_glynn(a: &Array2<Complex64>) -> Result<Complex64> {
    let n = check_square(a)?;
    if n == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if n == 1 {
        return Ok(a[[0, 0]]);
    }
    // delta_0 is pinned to +1; Gray-code over delta_1..delta_{n-1}.
    let mut col_sums: Vec<Complex64> = (0..n)
        .map(|j| (0..n).map(|i| a[[i, j]]).sum())
        .collect();
    let use_kahan = n > KAHAN_THRESHOLD;
    let mut plain = Complex64::new(0.0, 0.0);
    let mut kahan = KahanSum::default();
    let first: Complex64 = col_sums.iter().product();
    if use_kahan {
        kahan.add(first);
    } else {
        plain += first;
    }
    let mut prev_gray = 0u64;
    for k in 1u64..(1u64 << (n - 1)) {
        let gray = k ^ (k >> 1);
        let diff = gray ^ prev_gray;
        let i = diff.trailing_zeros() as usize + 1;
        let flipped_to_minus = gray & diff != 0;
        for (j, cs) in col_sums.iter_mut().enumerate() {
            if flipped_to_minus {
                *cs -= 2.0 * a[[i, j]];
            } else {
                *cs += 2.0 * a[[i, j]];
            }
        }
        prev_gray = gray;
        let sign = if gray.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        let mut prod = Complex64::new(1.0, 0.0);
        for cs in &col_sums {
            prod *= *cs;
        }
        if use_kahan {
            kahan.add(sign * prod);
        } else {
            plain += sign * prod;
        }
    }
    let total = if use_kahan { kahan.value() } else { plain };
    Ok(total / 2f64.powi(n as i32 - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_2x2_is_one() {
        let a = Array2::<Complex64>::eye(2);
        assert!((permanent(&a).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        assert!((permanent_glynn(&a).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn all_ones_3x3_is_factorial() {
        let a = Array2::<Complex64>::from_elem((3, 3), c(1.0, 0.0));
        assert!((permanent(&a).unwrap() - c(6.0, 0.0)).norm() < 1e-12);
        assert!((permanent_glynn(&a).unwrap() - c(6.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn empty_matrix_is_one() {
        let a = Array2::<Complex64>::zeros((0, 0));
        assert_eq!(permanent(&a).unwrap(), c(1.0, 0.0));
        assert_eq!(permanent_glynn(&a).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn non_square_rejected() {
        let a = Array2::<Complex64>::zeros((2, 3));
        assert!(matches!(
            permanent(&a),
            Err(Error::NonSquareMatrix { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn hand_computed_2x2() {
        let a = array![[c(1.0, 0.0), c(2.0, 0.0)], [c(3.0, 0.0), c(4.0, 0.0)]];
        // perm = 1*4 + 2*3 = 10
        assert!((permanent(&a).unwrap() - c(10.0, 0.0)).norm() < 1e-12);
        assert!((permanent_glynn(&a).unwrap() - c(10.0, 0.0)).norm() < 1e-12);
    }
}

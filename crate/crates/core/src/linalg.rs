//! Small dense complex linear algebra: just enough for unitaries and Gram
//! matrices without pulling in a LAPACK binding.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Compensated (Kahan) accumulator for complex sums with many cancellations.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct KahanSum {
    sum: Complex64,
    comp: Complex64,
}

impl KahanSum {
    pub fn add(&mut self, value: Complex64) {
        let y = value - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> Complex64 {
        self.sum
    }
}

/// Max-norm of U·U† − I.
pub fn unitarity_deviation(u: &Array2<Complex64>) -> f64 {
    let n = u.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                acc += u[[i, k]] * u[[j, k]].conj();
            }
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((acc - Complex64::new(target, 0.0)).norm());
        }
    }
    worst
}

pub fn matmul(a: &Array2<Complex64>, b: &Array2<Complex64>) -> Array2<Complex64> {
    a.dot(b)
}

/// Householder QR of a square complex matrix; returns (Q, R) with A = Q·R.
pub fn qr(a: &Array2<Complex64>) -> (Array2<Complex64>, Array2<Complex64>) {
    let n = a.nrows();
    let mut r = a.clone();
    let mut q = Array2::<Complex64>::eye(n);
    for k in 0..n {
        // Build the Householder vector for column k below the diagonal.
        let mut norm_x = 0.0f64;
        for i in k..n {
            norm_x += r[[i, k]].norm_sqr();
        }
        let norm_x = norm_x.sqrt();
        if norm_x < 1e-300 {
            continue;
        }
        let x0 = r[[k, k]];
        let phase = if x0.norm() < 1e-300 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm_x;
        let mut v: Vec<Complex64> = (k..n).map(|i| r[[i, k]]).collect();
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm < 1e-300 {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        // r <- (I − 2 v v†) r on the trailing block, q <- q (I − 2 v v†).
        for col in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for i in k..n {
                dot += v[i - k].conj() * r[[i, col]];
            }
            for i in k..n {
                let upd = 2.0 * v[i - k] * dot;
                r[[i, col]] -= upd;
            }
        }
        for row in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for i in k..n {
                dot += q[[row, i]] * v[i - k];
            }
            for i in k..n {
                let upd = 2.0 * dot * v[i - k].conj();
                q[[row, i]] -= upd;
            }
        }
    }
    (q, r)
}

/// Eigenvalues of a Hermitian matrix, ascending, via cyclic Jacobi on the
/// real-symmetric embedding [[X, −Y],[Y, X]] of G = X + iY.
pub fn hermitian_eigenvalues(g: &Array2<Complex64>) -> Result<Vec<f64>> {
    let n = g.nrows();
    if g.ncols() != n {
        return Err(Error::NonSquareMatrix {
            rows: n,
            cols: g.ncols(),
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let m = 2 * n;
    let mut b = vec![0.0f64; m * m];
    for i in 0..n {
        for j in 0..n {
            let z = g[[i, j]];
            b[i * m + j] = z.re;
            b[(i + n) * m + (j + n)] = z.re;
            b[i * m + (j + n)] = -z.im;
            b[(i + n) * m + j] = z.im;
        }
    }
    jacobi_symmetric(&mut b, m);
    let mut eigs: Vec<f64> = (0..m).map(|i| b[i * m + i]).collect();
    eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // Each eigenvalue of G shows up twice in the embedding.
    Ok(eigs.into_iter().step_by(2).collect())
}

fn jacobi_symmetric(a: &mut [f64], n: usize) {
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[i * n + j] * a[i * n + j];
            }
        }
        if off < 1e-24 {
            return;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
}

/// Pivoted Cholesky factorization of a Hermitian PSD matrix.
///
/// Returns row vectors `c_j` (length = numerical rank) with
/// ⟨c_i, c_j⟩ = G_ij. Eigenvalues below `tol` are truncated.
pub fn psd_factor(g: &Array2<Complex64>, tol: f64) -> Result<Vec<Vec<Complex64>>> {
    let n = g.nrows();
    let mut l = Array2::<Complex64>::zeros((n, n));
    let mut diag: Vec<f64> = (0..n).map(|i| g[[i, i]].re).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut rank = 0usize;
    for k in 0..n {
        // Pick the largest remaining diagonal element as pivot.
        let (pmax, &dmax) = diag
            .iter()
            .enumerate()
            .skip(k)
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap();
        if dmax <= tol {
            break;
        }
        perm.swap(k, pmax);
        diag.swap(k, pmax);
        for c in 0..n {
            let tmp = l[[k, c]];
            l[[k, c]] = l[[pmax, c]];
            l[[pmax, c]] = tmp;
        }
        let pivot = dmax.sqrt();
        l[[k, k]] = Complex64::new(pivot, 0.0);
        for i in (k + 1)..n {
            let mut acc = g[[perm[i], perm[k]]];
            for c in 0..k {
                acc -= l[[i, c]] * l[[k, c]].conj();
            }
            l[[i, k]] = acc / pivot;
            diag[i] -= l[[i, k]].norm_sqr();
        }
        rank += 1;
    }
    // Undo the permutation: vectors indexed by original photon order.
    let mut out = vec![vec![Complex64::new(0.0, 0.0); rank]; n];
    for (row, &orig) in perm.iter().enumerate() {
        for c in 0..rank {
            // ⟨c_i, c_j⟩ = Σ_k conj(c_i[k]) c_j[k] must equal G_ij = Σ L_ik conj(L_jk)
            out[orig][c] = l[[row, c]].conj();
        }
    }
    Ok(out)
}

//! Small fixed-size complex matrices and a cyclic Jacobi eigensolver for the
//! Hermitian case.

#![allow(clippy::needless_range_loop)]

use num_complex::Complex64;

pub type Matrix<const N: usize> = [[Complex64; N]; N];
pub type Matrix4 = Matrix<4>;

/// Stop once the off-diagonal Frobenius norm falls below this.
pub const JACOBI_TOLERANCE: f64 = 1e-14;
pub const JACOBI_MAX_SWEEPS: usize = 30;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn zeros<const N: usize>() -> Matrix<N> {
    [[ZERO; N]; N]
}

pub fn identity<const N: usize>() -> Matrix<N> {
    let mut m = zeros();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = ONE;
    }
    m
}

pub fn mul<const N: usize>(a: &Matrix<N>, b: &Matrix<N>) -> Matrix<N> {
    let mut out = zeros();
    for i in 0..N {
        for k in 0..N {
            let aik = a[i][k];
            if aik == ZERO {
                continue;
            }
            for j in 0..N {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn adjoint<const N: usize>(a: &Matrix<N>) -> Matrix<N> {
    let mut out = zeros();
    for i in 0..N {
        for j in 0..N {
            out[j][i] = a[i][j].conj();
        }
    }
    out
}

pub fn trace<const N: usize>(a: &Matrix<N>) -> Complex64 {
    (0..N).map(|i| a[i][i]).sum()
}

/// Largest entrywise deviation `|a_ij - conj(a_ji)|`.
pub fn max_asymmetry<const N: usize>(a: &Matrix<N>) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..N {
        for j in i..N {
            worst = worst.max((a[i][j] - a[j][i].conj()).norm());
        }
    }
    worst
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff<const N: usize>(a: &Matrix<N>, b: &Matrix<N>) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..N {
        for j in 0..N {
            worst = worst.max((a[i][j] - b[i][j]).norm());
        }
    }
    worst
}

fn off_diagonal_norm<const N: usize>(a: &Matrix<N>) -> f64 {
    let mut sum = 0.0;
    for i in 0..N {
        for j in 0..N {
            if i != j {
                sum += a[i][j].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Eigen-decomposition of a Hermitian matrix. `vectors` holds the
/// eigenvectors as columns, ordered to match `values` (descending).
#[derive(Debug, Clone)]
pub struct HermitianEigen<const N: usize> {
    pub values: [f64; N],
    pub vectors: Matrix<N>,
}

impl<const N: usize> HermitianEigen<N> {
    /// Rebuilds `V f(D) V^†` for a scalar function of the eigenvalues.
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> Matrix<N> {
        let mut out = zeros();
        for k in 0..N {
            let w = f(self.values[k]);
            if w == 0.0 {
                continue;
            }
            for i in 0..N {
                let vik = self.vectors[i][k] * w;
                for j in 0..N {
                    out[i][j] += vik * self.vectors[j][k].conj();
                }
            }
        }
        out
    }
}

/// Cyclic Jacobi diagonalization. Only the Hermitian part of `a` is used.
///
/// Each pivot `(p, q)` is annihilated by the unitary rotation
/// `[[c, s e^{iφ}], [-s e^{-iφ}, c]]`, where `φ = arg a_pq`, which reduces the
/// complex case to the classical real rotation on `|a_pq|`.
pub fn hermitian_eigen<const N: usize>(a: &Matrix<N>) -> HermitianEigen<N> {
    let mut m = zeros::<N>();
    for i in 0..N {
        for j in 0..N {
            m[i][j] = (a[i][j] + a[j][i].conj()) * 0.5;
        }
    }
    let mut v = identity::<N>();

    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&m) < JACOBI_TOLERANCE {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: [usize; N] = std::array::from_fn(|i| i);
    order.sort_by(|&i, &j| m[j][j].re.total_cmp(&m[i][i].re));
    let values = std::array::from_fn(|k| m[order[k]][order[k]].re);
    let mut vectors = zeros::<N>();
    for (k, &src) in order.iter().enumerate() {
        for i in 0..N {
            vectors[i][k] = v[i][src];
        }
    }
    HermitianEigen { values, vectors }
}

fn rotate<const N: usize>(m: &mut Matrix<N>, v: &mut Matrix<N>, p: usize, q: usize) {
    let g = m[p][q];
    let magnitude = g.norm();
    if magnitude < f64::MIN_POSITIVE {
        return;
    }
    let phase = g / magnitude;
    let theta = (m[q][q].re - m[p][p].re) / (2.0 * magnitude);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    // signum(0.0) is 1.0, so theta == 0 gives t = 1 as required.
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let j_pp = Complex64::new(c, 0.0);
    let j_qq = j_pp;
    let j_pq = phase * s;
    let j_qp = -phase.conj() * s;

    // m <- m J
    for row in m.iter_mut() {
        let (x, y) = (row[p], row[q]);
        row[p] = x * j_pp + y * j_qp;
        row[q] = x * j_pq + y * j_qq;
    }
    // m <- J^† m
    for k in 0..N {
        let (x, y) = (m[p][k], m[q][k]);
        m[p][k] = j_pp.conj() * x + j_qp.conj() * y;
        m[q][k] = j_pq.conj() * x + j_qq.conj() * y;
    }
    m[p][q] = ZERO;
    m[q][p] = ZERO;
    m[p][p].im = 0.0;
    m[q][q].im = 0.0;

    for row in v.iter_mut() {
        let (x, y) = (row[p], row[q]);
        row[p] = x * j_pp + y * j_qp;
        row[q] = x * j_pq + y * j_qq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian<const N: usize>(rng: &mut ChaCha8Rng) -> Matrix<N> {
        let mut m = zeros::<N>();
        for i in 0..N {
            m[i][i] = Complex64::new(rng.gen_range(-2.0..2.0), 0.0);
            for j in (i + 1)..N {
                let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m[i][j] = z;
                m[j][i] = z.conj();
            }
        }
        m
    }

    #[test]
    fn reconstructs_random_hermitian_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let a = random_hermitian::<4>(&mut rng);
            let eig = hermitian_eigen(&a);
            let back = eig.map_values(|x| x);
            assert!(max_abs_diff(&a, &back) < 1e-13);
            let vv = mul(&adjoint(&eig.vectors), &eig.vectors);
            assert!(max_abs_diff(&vv, &identity()) < 1e-13);
            assert!(eig.values.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn eight_by_eight_trace_and_determinant_free_check() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = random_hermitian::<8>(&mut rng);
        let eig = hermitian_eigen(&a);
        let sum: f64 = eig.values.iter().sum();
        assert!((sum - trace(&a).re).abs() < 1e-12);
        let a2 = mul(&a, &a);
        let sum_sq: f64 = eig.values.iter().map(|x| x * x).sum();
        assert!((sum_sq - trace(&a2).re).abs() < 1e-11);
    }

    #[test]
    fn diagonal_input_is_returned_sorted() {
        let mut a = zeros::<4>();
        for (i, x) in [0.1, 0.7, -0.3, 0.2].iter().enumerate() {
            a[i][i] = Complex64::new(*x, 0.0);
        }
        let eig = hermitian_eigen(&a);
        assert_eq!(eig.values, [0.7, 0.2, 0.1, -0.3]);
    }

    #[test]
    fn degenerate_spectrum() {
        let eig = hermitian_eigen(&identity::<4>());
        assert_eq!(eig.values, [1.0; 4]);
        // Pauli-Y: eigenvalues ±1 with complex eigenvectors.
        let mut y = zeros::<2>();
        y[0][1] = Complex64::new(0.0, -1.0);
        y[1][0] = Complex64::new(0.0, 1.0);
        let eig = hermitian_eigen(&y);
        assert!((eig.values[0] - 1.0).abs() < 1e-15);
        assert!((eig.values[1] + 1.0).abs() < 1e-15);
    }
}

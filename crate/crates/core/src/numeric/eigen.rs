//! Cyclic Jacobi rotations for Hermitian matrices.

use num_complex::Complex64;

use super::{ComplexMatrix, HermitianMatrix};
use crate::error::{Error, Result};
use crate::inequalities::Spectrum;

const MAX_SWEEPS: usize = 100;
const OFF_TOL: f64 = 1e-14;

#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    /// Non-increasing.
    pub values: Vec<f64>,
    /// Column `i` is the eigenvector for `values[i]`.
    pub vectors: ComplexMatrix,
}

fn off_diagonal_mass(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

pub fn hermitian_eigen(m: &HermitianMatrix) -> Result<EigenDecomposition> {
    let n = m.dim();
    let mut a = m.matrix().clone();
    let mut v = ComplexMatrix::identity(n);
    let norm = a.frobenius_norm();
    let mut converged = norm == 0.0;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_mass(&a) <= OFF_TOL * norm {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_mass(&a) > OFF_TOL * norm {
        return Err(Error::Internal("Jacobi iteration did not converge".into()));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = v[(row, src)];
        }
    }
    Ok(EigenDecomposition { values, vectors })
}

/// Zeroes `a[p][q]` with `a ← U† a U`, `U = diag(1, e^{−iφ}) · R(θ)` on the
/// `(p, q)` plane, where `φ = arg a[p][q]`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let g = a[(p, q)];
    let mag = g.norm();
    if mag == 0.0 {
        return;
    }
    let phase = g / mag;
    let (app, aqq) = (a[(p, p)].re, a[(q, q)].re);
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let (cz, sz) = (Complex64::new(c, 0.0), Complex64::new(s, 0.0));
    let e = phase.conj();
    // columns of U restricted to the plane
    let (u_pp, u_pq, u_qp, u_qq) = (cz, sz, -sz * e, cz * e);

    let n = a.dim();
    for k in 0..n {
        let (x, y) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = x * u_pp + y * u_qp;
        a[(k, q)] = x * u_pq + y * u_qq;
    }
    for k in 0..n {
        let (x, y) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = u_pp.conj() * x + u_qp.conj() * y;
        a[(q, k)] = u_pq.conj() * x + u_qq.conj() * y;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
    for k in 0..n {
        let (x, y) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = x * u_pp + y * u_qp;
        v[(k, q)] = x * u_pq + y * u_qq;
    }
}

pub fn hermitian_eigenvalues(m: &HermitianMatrix) -> Result<Spectrum> {
    Spectrum::new(hermitian_eigen(m)?.values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{haar_unitary, random_hermitian};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_input() {
        let m = HermitianMatrix::from_real_diagonal(&[0.5, -2.0, 3.0, 0.0]);
        assert_eq!(
            hermitian_eigenvalues(&m).unwrap().values(),
            &[3.0, 0.5, 0.0, -2.0]
        );
    }

    #[test]
    fn two_by_two_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        use rand::Rng;
        for _ in 0..100 {
            let (a, d): (f64, f64) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            let b = c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            let m = HermitianMatrix::new(
                ComplexMatrix::from_rows(vec![vec![c(a, 0.0), b], vec![b.conj(), c(d, 0.0)]])
                    .unwrap(),
            )
            .unwrap();
            let mean = (a + d) / 2.0;
            let rad = (((a - d) / 2.0).powi(2) + b.norm_sqr()).sqrt();
            let got = hermitian_eigenvalues(&m).unwrap();
            assert!((got.values()[0] - (mean + rad)).abs() < 1e-12);
            assert!((got.values()[1] - (mean - rad)).abs() < 1e-12);
        }
    }

    #[test]
    fn conjugated_diagonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in [3, 8, 16] {
            let d: Vec<f64> = (0..n).map(|i| (n - i) as f64 * 0.37 - 1.0).collect();
            let u = haar_unitary(n, &mut rng);
            let m = HermitianMatrix::from_real_diagonal(&d).conjugate_by(&u);
            let got = hermitian_eigenvalues(&m).unwrap();
            for (x, y) in got.values().iter().zip(&d) {
                assert!((x - y).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn residuals_and_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in [2, 5, 12, 32] {
            let m = random_hermitian(n, &mut rng);
            let eig = hermitian_eigen(&m).unwrap();
            let norm = m.matrix().frobenius_norm();
            assert!((eig.values.iter().sum::<f64>() - m.trace()).abs() < 1e-10);
            for (i, &lam) in eig.values.iter().enumerate() {
                let v: Vec<Complex64> = (0..n).map(|r| eig.vectors[(r, i)]).collect();
                let mv = m.matrix().apply(&v);
                let res: f64 = mv
                    .iter()
                    .zip(&v)
                    .map(|(x, y)| (x - y * lam).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                assert!(res <= 1e-9 * norm, "residual {res} at n={n}");
            }
        }
    }
}

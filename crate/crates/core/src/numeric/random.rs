use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use super::{ComplexMatrix, HermitianMatrix};
use crate::inequalities::Spectrum;

/// SplitMix64 finalizer applied to `seed` and `index`, so every trial's
/// stream depends only on the pair.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im)
}

/// Haar-distributed unitary: Gram–Schmidt on the columns of a complex
/// Gaussian matrix. Column norms play the role of `R`'s diagonal, so it is
/// positive and no phase correction is needed afterwards.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|_| (0..n).map(|_| gaussian(rng)).collect())
        .collect();
    for j in 0..n {
        for i in 0..j {
            let (done, rest) = cols.split_at_mut(j);
            let q = &done[i];
            let proj: Complex64 = q.iter().zip(&rest[0]).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in rest[0].iter_mut().zip(q) {
                *x -= proj * y;
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for x in cols[j].iter_mut() {
            *x /= norm;
        }
    }
    let mut u = ComplexMatrix::zeros(n);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            u[(i, j)] = z;
        }
    }
    u
}

/// GUE-like matrix with Gaussian entries.
pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> HermitianMatrix {
    let mut m = ComplexMatrix::zeros(n);
    for i in 0..n {
        m[(i, i)] = Complex64::new(StandardNormal.sample(rng), 0.0);
        for j in i + 1..n {
            let z = gaussian(rng);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    HermitianMatrix::new(m).expect("constructed Hermitian")
}

/// `U diag(λ) U†` with `U` Haar-random; identical output for identical seeds.
pub fn random_state(lambda: &Spectrum, seed: u64) -> HermitianMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = haar_unitary(lambda.len(), &mut rng);
    HermitianMatrix::from_real_diagonal(lambda.values()).conjugate_by(&u)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SpectrumKind {
    /// Sorted Gaussian entries shifted to unit trace; entries may be negative.
    #[default]
    Hermitian,
    /// Uniform on the probability simplex.
    Density,
}

pub fn random_spectrum<R: Rng + ?Sized>(n: usize, kind: SpectrumKind, rng: &mut R) -> Spectrum {
    let mut v: Vec<f64> = match kind {
        SpectrumKind::Hermitian => {
            let g: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
            let mean = g.iter().sum::<f64>() / n as f64;
            g.iter().map(|x| x - mean + 1.0 / n as f64).collect()
        }
        SpectrumKind::Density => {
            let e: Vec<f64> = (0..n).map(|_| Exp1.sample(rng)).collect();
            let total: f64 = e.iter().sum();
            e.iter().map(|x| x / total).collect()
        }
    };
    v.sort_by(|a, b| b.total_cmp(a));
    Spectrum::new(v).expect("finite sorted spectrum")
}

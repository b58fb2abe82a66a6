//! Random matrices and states for exploration and testing.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::fock::{Species, TwoParticleState};
use crate::matrix::ComplexMatrix;
use crate::scalar::{c, Real, C};

fn gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> C<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c(T::lit(re), T::lit(im))
}

/// Matrix with i.i.d. standard complex Gaussian entries.
pub fn random_ginibre<T: Real, R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

pub fn random_hermitian<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix<T> {
    let g = random_ginibre::<T, R>(rng, n, n);
    let half = T::lit(0.5);
    ComplexMatrix::from_fn(n, n, |i, j| (g[(i, j)] + g[(j, i)].conj()) * half)
}

pub fn random_symmetric<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix<T> {
    let g = random_ginibre::<T, R>(rng, n, n);
    ComplexMatrix::from_fn(n, n, |i, j| g[(i.min(j), i.max(j))])
}

pub fn random_antisymmetric<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix<T> {
    let g = random_ginibre::<T, R>(rng, n, n);
    ComplexMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => g[(i, j)],
        std::cmp::Ordering::Greater => -g[(j, i)],
        std::cmp::Ordering::Equal => C::new(T::zero(), T::zero()),
    })
}

/// Haar-distributed unitary: Gram-Schmidt on a Ginibre matrix, which
/// already fixes the column phases so that the distribution is uniform.
pub fn random_unitary<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix<T> {
    let g = random_ginibre::<T, R>(rng, n, n);
    let mut cols: Vec<Vec<C<T>>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = g.column(j);
        for _ in 0..2 {
            for q in &cols {
                let proj = q
                    .iter()
                    .zip(&v)
                    .fold(C::new(T::zero(), T::zero()), |s, (a, b)| s + a.conj() * b);
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi = *vi - *qi * proj;
                }
            }
        }
        let norm = v.iter().fold(T::zero(), |s, z| s + z.norm_sqr()).sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// Normalized random two-particle state of the given species.
pub fn random_state<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    species: Species,
    dim: usize,
) -> TwoParticleState<T> {
    let m = match species {
        Species::Boson => random_symmetric::<T, R>(rng, dim),
        Species::Fermion => random_antisymmetric::<T, R>(rng, dim),
    };
    TwoParticleState::normalized(species, m).expect("random coefficient matrix is valid")
}

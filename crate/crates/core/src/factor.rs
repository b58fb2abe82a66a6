//! Congruence factorizations `M = Uᵀ D U` of complex symmetric and
//! antisymmetric matrices with unitary `U`.
//!
//! Both routines return `U` with rows that are the one-particle modes of the
//! generalized Schmidt decomposition. Singular values below
//! `T::truncation_tol()·max(d)` are set to zero and their modes are taken from
//! the orthogonal complement of the retained ones.

use std::cmp::Ordering;

use num_traits::Zero;

use crate::eig::hermitian_eig;
use crate::error::Result;
use crate::matrix::{ComplexMatrix, Symmetry};
use crate::scalar::{c, cr, Real, C};

/// Takagi factorization `M = Uᵀ diag(d) U`.
#[derive(Clone, Debug)]
pub struct TakagiResult<T> {
    pub u: ComplexMatrix<T>,
    /// Nonnegative, descending.
    pub d: Vec<T>,
}

impl<T: Real> TakagiResult<T> {
    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        let d: Vec<C<T>> = self.d.iter().map(|&x| cr(x)).collect();
        congruence(&self.u, &ComplexMatrix::from_diagonal(&d))
    }
}

/// Canonical form `M = Uᵀ D U` of an antisymmetric matrix where `D` holds
/// blocks `[[0, z], [−z, 0]]` followed by `null_dim` zeros.
#[derive(Clone, Debug)]
pub struct AntisymCanonical<T> {
    pub u: ComplexMatrix<T>,
    /// Block values `z_j`, nonnegative and descending.
    pub blocks: Vec<T>,
    pub null_dim: usize,
}

impl<T: Real> AntisymCanonical<T> {
    pub fn dim(&self) -> usize {
        self.u.rows()
    }

    /// The block-diagonal middle factor `D`.
    pub fn middle(&self) -> ComplexMatrix<T> {
        let mut d = ComplexMatrix::zeros(self.dim(), self.dim());
        for (j, &z) in self.blocks.iter().enumerate() {
            d[(2 * j, 2 * j + 1)] = cr(z);
            d[(2 * j + 1, 2 * j)] = cr(-z);
        }
        d
    }

    /// Singular values of `M`: each block value twice, then the zeros.
    pub fn singular_values(&self) -> Vec<T> {
        let mut s: Vec<T> = self.blocks.iter().flat_map(|&z| [z, z]).collect();
        s.resize(self.dim(), T::zero());
        s
    }

    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        congruence(&self.u, &self.middle())
    }
}

/// `Uᵀ D U`.
pub fn congruence<T: Real>(u: &ComplexMatrix<T>, d: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    u.transpose().matmul(d).matmul(u)
}

/// Takagi factorization of a complex symmetric matrix.
///
/// Writing `M = X + iY`, the real symmetric matrix `[[X, Y], [Y, −X]]` has
/// eigenvalues `±d_k`. A unit eigenvector `[a; b]` for `+d_k` gives a column
/// `q = a + ib` with `M q̄ = d_k q`, and eigenvectors of distinct positive
/// eigenvalues (or any orthonormal basis inside one positive eigenspace) give
/// orthonormal complex columns. `U` is the transpose of the column matrix.
pub fn takagi<T: Real>(m: &ComplexMatrix<T>) -> Result<TakagiResult<T>> {
    let m = m.project_symmetry(Symmetry::Symmetric, T::structure_tol())?;
    let n = m.rows();
    if m.frobenius_norm() == T::zero() {
        return Ok(TakagiResult {
            u: ComplexMatrix::identity(n),
            d: vec![T::zero(); n],
        });
    }

    let embed = ComplexMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let z = m[(i % n, j % n)];
        let val = match (i < n, j < n) {
            (true, true) => z.re,
            (false, false) => -z.re,
            _ => z.im,
        };
        cr(val)
    });
    let eig = hermitian_eig(&embed)?;
    let top = eig.eigenvalues[2 * n - 1];
    let cutoff = T::truncation_tol() * top;

    let mut modes: Vec<Vec<C<T>>> = Vec::with_capacity(n);
    for k in 0..n {
        let idx = 2 * n - 1 - k;
        if eig.eigenvalues[idx] <= cutoff {
            break;
        }
        let col = eig.eigenvectors.column(idx);
        let q: Vec<C<T>> = (0..n).map(|i| c(col[i].re, col[n + i].re)).collect();
        modes.push(q);
    }
    let rank = modes.len();
    reorthonormalize(&mut modes);
    let completion = complete_basis(&modes, n);
    modes.extend(completion);

    let mut entries: Vec<(T, Vec<C<T>>)> = Vec::with_capacity(n);
    for (k, mut q) in modes.into_iter().enumerate() {
        if k < rank {
            let val = bilinear_conj(&q, &m, &q);
            let half_phase = val.arg() * T::lit(0.5);
            let rot = C::from_polar(T::one(), half_phase);
            q.iter_mut().for_each(|z| *z = *z * rot);
            phase_fix_sign(&mut q);
            entries.push((val.norm(), q));
        } else {
            phase_fix_free(&mut q);
            entries.push((T::zero(), q));
        }
    }
    entries.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(Ordering::Equal));

    let d = entries.iter().map(|e| e.0).collect();
    let u = ComplexMatrix::from_fn(n, n, |r, col| entries[r].1[col]);
    Ok(TakagiResult { u, d })
}

/// Canonical form of a complex antisymmetric matrix.
///
/// Eigenvectors of `M†M` are processed by descending eigenvalue `z²`. A unit
/// vector `x` in such an eigenspace, orthogonal to everything already used,
/// yields the mode pair `q₁ = x̄`, `q₂ = −Mx/z` with `M q̄₂ = z q₁` and
/// `M q̄₁ = −z q₂`; both `x` and `q̄₂` then lie in the same eigenspace of
/// `M†M` and are removed from it before the next pair is drawn.
pub fn antisym_canonical<T: Real>(m: &ComplexMatrix<T>) -> Result<AntisymCanonical<T>> {
    let m = m.project_symmetry(Symmetry::Antisymmetric, T::structure_tol())?;
    let n = m.rows();
    if m.frobenius_norm() == T::zero() {
        return Ok(AntisymCanonical {
            u: ComplexMatrix::identity(n),
            blocks: Vec::new(),
            null_dim: n,
        });
    }

    let gram = m.adjoint().matmul(&m);
    let eig = hermitian_eig(&gram)?;
    let desc: Vec<usize> = (0..n).rev().collect();
    let top = eig.eigenvalues[n - 1].max(T::zero());
    let z_cut = T::truncation_tol() * top.sqrt();
    let cluster_tol = T::structure_tol() * top;

    // clusters of the retained eigenvalues, each of even size
    let retained: Vec<usize> = desc
        .iter()
        .copied()
        .filter(|&i| eig.eigenvalues[i].max(T::zero()).sqrt() > z_cut)
        .collect();
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for &i in &retained {
        match clusters.last_mut() {
            Some(cl)
                if cl.len() % 2 == 1
                    || eig.eigenvalues[*cl.last().unwrap()] - eig.eigenvalues[i] <= cluster_tol =>
            {
                cl.push(i)
            }
            _ => clusters.push(vec![i]),
        }
    }
    if clusters.last().is_some_and(|cl| cl.len() % 2 == 1) {
        clusters.last_mut().unwrap().pop();
    }

    let mut used: Vec<Vec<C<T>>> = Vec::new();
    let mut pairs: Vec<(Vec<C<T>>, Vec<C<T>>)> = Vec::new();
    for cluster in clusters {
        // ascending eigenvector index, so ties resolve toward the natural order
        let mut residuals: Vec<Vec<C<T>>> = cluster
            .iter()
            .rev()
            .map(|&i| {
                let mut v = eig.eigenvectors.column(i);
                orthogonalize(&mut v, &used);
                v
            })
            .collect();
        for _ in 0..cluster.len() / 2 {
            let (best, _) = residuals
                .iter()
                .enumerate()
                .map(|(j, r)| (j, norm(r)))
                .fold((0, T::neg_infinity()), |acc, x| if x.1 > acc.1 { x } else { acc });
            let mut x = residuals[best].clone();
            orthogonalize(&mut x, &used);
            normalize(&mut x);
            let y = m.mul_vec(&x);
            let z = norm(&y);
            let mut partner: Vec<C<T>> = y.iter().map(|w| -(w.conj()) / z).collect();
            used.push(x.clone());
            orthogonalize(&mut partner, &used);
            normalize(&mut partner);
            used.push(partner.clone());
            for r in residuals.iter_mut() {
                orthogonalize(r, &used[used.len() - 2..]);
            }
            let q1: Vec<C<T>> = x.iter().map(|w| w.conj()).collect();
            let q2: Vec<C<T>> = partner.iter().map(|w| w.conj()).collect();
            pairs.push((q1, q2));
        }
    }

    let mut blocks: Vec<(T, Vec<C<T>>, Vec<C<T>>)> = Vec::with_capacity(pairs.len());
    for (mut q1, mut q2) in pairs {
        let val = bilinear_conj(&q1, &m, &q2);
        let rot = C::from_polar(T::one(), val.arg());
        q1.iter_mut().for_each(|w| *w = *w * rot);
        // free relative phase: largest entry of q₁ real positive, q₂ compensates
        let phase = largest_entry_phase(&q1);
        q1.iter_mut().for_each(|w| *w = *w * phase.conj());
        q2.iter_mut().for_each(|w| *w = *w * phase);
        blocks.push((val.norm(), q1, q2));
    }
    blocks.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(Ordering::Equal));
    // the eigenvalue cut above sees roundoff amplified by the square root;
    // the block values themselves are accurate, so truncate on those
    let z_max = blocks.first().map_or(T::zero(), |b| b.0);
    blocks.retain(|b| b.0 > T::truncation_tol() * z_max);

    let mut rows: Vec<Vec<C<T>>> = Vec::with_capacity(n);
    for (_, q1, q2) in &blocks {
        rows.push(q1.clone());
        rows.push(q2.clone());
    }
    let mut null = complete_basis(&rows, n);
    null.iter_mut().for_each(|v| phase_fix_free(v));
    let null_dim = null.len();
    rows.extend(null);

    let u = ComplexMatrix::from_fn(n, n, |r, col| rows[r][col]);
    Ok(AntisymCanonical {
        u,
        blocks: blocks.into_iter().map(|b| b.0).collect(),
        null_dim,
    })
}

/// Which factorization a coefficient matrix calls for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Symmetric,
    Antisymmetric,
}

impl From<Parity> for Symmetry {
    fn from(p: Parity) -> Self {
        match p {
            Parity::Symmetric => Symmetry::Symmetric,
            Parity::Antisymmetric => Symmetry::Antisymmetric,
        }
    }
}

/// Eigenvalues of `M†M`, descending and clamped at zero, obtained without
/// performing the factorization.
pub fn canonical_spectrum<T: Real>(m: &ComplexMatrix<T>, parity: Parity) -> Result<Vec<T>> {
    let m = m.project_symmetry(parity.into(), T::structure_tol())?;
    let eig = hermitian_eig(&m.adjoint().matmul(&m))?;
    Ok(eig.eigenvalues.iter().rev().map(|&p| p.max(T::zero())).collect())
}

// ---------------------------------------------------------------------------
// vector helpers

pub(crate) fn dot<T: Real>(a: &[C<T>], b: &[C<T>]) -> C<T> {
    a.iter().zip(b).fold(C::zero(), |s, (x, y)| s + x.conj() * y)
}

pub(crate) fn norm<T: Real>(v: &[C<T>]) -> T {
    v.iter().fold(T::zero(), |s, z| s + z.norm_sqr()).sqrt()
}

fn normalize<T: Real>(v: &mut [C<T>]) {
    let n = norm(v);
    v.iter_mut().for_each(|z| *z = *z / n);
}

/// Removes the components along an orthonormal set, twice for stability.
fn orthogonalize<T: Real>(v: &mut [C<T>], basis: &[Vec<C<T>>]) {
    for _ in 0..2 {
        for q in basis {
            let p = dot(q, v);
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi = *vi - *qi * p;
            }
        }
    }
}

fn reorthonormalize<T: Real>(vs: &mut [Vec<C<T>>]) {
    for k in 0..vs.len() {
        let (done, rest) = vs.split_at_mut(k);
        let v = &mut rest[0];
        orthogonalize(v, done);
        normalize(v);
    }
}

/// Orthonormal basis of the complement of an orthonormal set, drawn from
/// the standard basis vector with the largest remaining component each step.
fn complete_basis<T: Real>(existing: &[Vec<C<T>>], n: usize) -> Vec<Vec<C<T>>> {
    let need = n - existing.len();
    let mut residuals: Vec<Vec<C<T>>> = (0..n)
        .map(|j| {
            let mut e = vec![C::zero(); n];
            e[j] = cr(T::one());
            orthogonalize(&mut e, existing);
            e
        })
        .collect();
    let mut out: Vec<Vec<C<T>>> = Vec::with_capacity(need);
    for _ in 0..need {
        let best = (0..n)
            .max_by(|&a, &b| {
                norm(&residuals[a])
                    .partial_cmp(&norm(&residuals[b]))
                    .unwrap_or(Ordering::Equal)
                    .then(b.cmp(&a))
            })
            .expect("nonempty");
        let mut v = residuals[best].clone();
        orthogonalize(&mut v, existing);
        orthogonalize(&mut v, &out);
        normalize(&mut v);
        for r in residuals.iter_mut() {
            let p = dot(&v, r);
            for (ri, vi) in r.iter_mut().zip(&v) {
                *ri = *ri - *vi * p;
            }
        }
        out.push(v);
    }
    out
}

/// `q₁† M q̄₂`, the entry of the middle factor coupling two modes.
fn bilinear_conj<T: Real>(q1: &[C<T>], m: &ComplexMatrix<T>, q2: &[C<T>]) -> C<T> {
    let q2c: Vec<C<T>> = q2.iter().map(|z| z.conj()).collect();
    dot(q1, &m.mul_vec(&q2c))
}

/// Unit phase of the first entry of largest modulus.
fn largest_entry_phase<T: Real>(v: &[C<T>]) -> C<T> {
    let mut best = 0;
    for (i, z) in v.iter().enumerate() {
        if z.norm() > v[best].norm() {
            best = i;
        }
    }
    let z = v[best];
    if z.norm() == T::zero() {
        cr(T::one())
    } else {
        z / z.norm()
    }
}

/// Null modes carry an arbitrary phase: make the largest entry real positive.
fn phase_fix_free<T: Real>(v: &mut [C<T>]) {
    let p = largest_entry_phase(v).conj();
    v.iter_mut().for_each(|z| *z = *z * p);
}

/// Modes with `d > 0` are fixed up to sign: make the largest entry have a
/// positive real part (positive imaginary part when purely imaginary).
fn phase_fix_sign<T: Real>(v: &mut [C<T>]) {
    let p = largest_entry_phase(v);
    let flip = p.re < T::zero() || (p.re == T::zero() && p.im < T::zero());
    if flip {
        v.iter_mut().for_each(|z| *z = -*z);
    }
}

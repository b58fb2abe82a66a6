//! Hermitian eigendecomposition.
//!
//! The matrix is reduced to real symmetric tridiagonal form with complex
//! Householder reflections followed by a diagonal phase change, then
//! diagonalized with the implicit QL algorithm. Both stages accumulate into
//! a single unitary so the eigenvectors come out in the original basis.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, Symmetry};
use crate::scalar::{cr, Real, C};

/// Eigenvalues in ascending order with orthonormal eigenvector columns.
#[derive(Clone, Debug)]
pub struct HermitianEig<T> {
    pub eigenvalues: Vec<T>,
    pub eigenvectors: ComplexMatrix<T>,
}

impl<T: Real> HermitianEig<T> {
    /// `V diag(λ) V†`.
    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        let v = &self.eigenvectors;
        let scaled = ComplexMatrix::from_fn(v.rows(), v.cols(), |i, j| v[(i, j)] * self.eigenvalues[j]);
        scaled.matmul(&v.adjoint())
    }

    pub fn eigenvector(&self, j: usize) -> Vec<C<T>> {
        self.eigenvectors.column(j)
    }
}

/// Diagonalizes a Hermitian matrix.
///
/// The input must satisfy `‖H − H†‖_F ≤ τ·‖H‖_F` with `τ = T::structure_tol()`;
/// it is then replaced by `(H + H†)/2`.
pub fn hermitian_eig<T: Real>(h: &ComplexMatrix<T>) -> Result<HermitianEig<T>> {
    let h = h.project_symmetry(Symmetry::Hermitian, T::structure_tol())?;
    let n = h.rows();
    let mut q = ComplexMatrix::identity(n);
    let (mut diag, mut off) = tridiagonalize(h, &mut q);
    tql(&mut diag, &mut off, &mut q)?;
    sort_ascending(&mut diag, &mut q);
    Ok(HermitianEig {
        eigenvalues: diag,
        eigenvectors: q,
    })
}

/// Reduces `a` in place and returns the real diagonal and the real
/// nonnegative off-diagonal (`off[i]` couples `i` and `i+1`, last entry 0).
fn tridiagonalize<T: Real>(mut a: ComplexMatrix<T>, q: &mut ComplexMatrix<T>) -> (Vec<T>, Vec<T>) {
    let n = a.rows();
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        let mut v: Vec<C<T>> = (k + 1..n).map(|i| a[(i, k)]).collect();
        let alpha = v.iter().fold(T::zero(), |s, z| s + z.norm_sqr()).sqrt();
        let tail = v[1..].iter().fold(T::zero(), |s, z| s + z.norm_sqr());
        if alpha == T::zero() || tail == T::zero() {
            continue;
        }
        let x0 = v[0];
        let phase = if x0.norm() > T::zero() { x0 / x0.norm() } else { cr(T::one()) };
        v[0] = v[0] + phase * alpha;
        let vnorm2 = v.iter().fold(T::zero(), |s, z| s + z.norm_sqr());
        let tau = two / vnorm2;

        // p = τ B v on the trailing block
        let mut p = vec![C::<T>::zero(); m];
        for (ii, pi) in p.iter_mut().enumerate() {
            let i = k + 1 + ii;
            let mut acc = C::zero();
            for (jj, vj) in v.iter().enumerate() {
                acc = acc + a[(i, k + 1 + jj)] * vj;
            }
            *pi = acc * tau;
        }
        let vp = v.iter().zip(&p).fold(C::<T>::zero(), |s, (vi, pi)| s + vi.conj() * pi);
        let kk = vp.re * tau * half;
        let w: Vec<C<T>> = p.iter().zip(&v).map(|(pi, vi)| *pi - *vi * kk).collect();
        for ii in 0..m {
            for jj in 0..m {
                let upd = v[ii] * w[jj].conj() + w[ii] * v[jj].conj();
                let e = &mut a[(k + 1 + ii, k + 1 + jj)];
                *e = *e - upd;
            }
        }
        let new_sub = -phase * alpha;
        a[(k + 1, k)] = new_sub;
        a[(k, k + 1)] = new_sub.conj();
        for i in k + 2..n {
            a[(i, k)] = C::zero();
            a[(k, i)] = C::zero();
        }

        // Q ← Q·diag(I, H)
        for r in 0..n {
            let mut s = C::<T>::zero();
            for (jj, vj) in v.iter().enumerate() {
                s = s + q[(r, k + 1 + jj)] * vj;
            }
            s = s * tau;
            for (jj, vj) in v.iter().enumerate() {
                let e = &mut q[(r, k + 1 + jj)];
                *e = *e - s * vj.conj();
            }
        }
    }

    // Phase change D making the off-diagonal real nonnegative: Q ← Q·D.
    let mut diag = Vec::with_capacity(n);
    let mut off = vec![T::zero(); n];
    let mut delta: C<T> = cr(T::one());
    for i in 0..n {
        diag.push(a[(i, i)].re);
        if i > 0 {
            for r in 0..n {
                let e = &mut q[(r, i)];
                *e = *e * delta;
            }
        }
        if i + 1 < n {
            let e = a[(i + 1, i)];
            let mag = e.norm();
            off[i] = mag;
            if mag > T::zero() {
                delta = delta * (e / mag);
            }
        }
    }
    (diag, off)
}

/// Implicit QL iteration on a real symmetric tridiagonal matrix, applying
/// the rotations to the columns of `z`.
fn tql<T: Real>(d: &mut [T], e: &mut [T], z: &mut ComplexMatrix<T>) -> Result<()> {
    let n = d.len();
    if n < 2 {
        return Ok(());
    }
    let eps = T::epsilon();
    let two = T::lit(2.0);
    let max_iter = 60 * n;
    let mut f = T::zero();
    let mut tst1 = T::zero();
    let mut iterations = 0usize;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            loop {
                iterations += 1;
                if iterations > max_iter {
                    return Err(Error::NoConvergence { iterations });
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (two * e[l]);
                let mut r = p.hypot(T::one());
                if p < T::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di = *di - h;
                }
                f = f + h;

                p = d[m];
                let mut c = T::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = T::zero();
                let mut s2 = T::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for k in 0..n {
                        let zi1 = z[(k, i + 1)];
                        let zi = z[(k, i)];
                        z[(k, i + 1)] = zi * s + zi1 * c;
                        z[(k, i)] = zi * c - zi1 * s;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] = d[l] + f;
        e[l] = T::zero();
    }
    Ok(())
}

/// Stable selection sort of eigenpairs; equal eigenvalues keep solver order.
fn sort_ascending<T: Real>(d: &mut [T], z: &mut ComplexMatrix<T>) {
    let n = d.len();
    for i in 0..n {
        let mut k = i;
        for j in i + 1..n {
            if d[j] < d[k] {
                k = j;
            }
        }
        if k != i {
            // rotate i..=k right by one so that the ordering of ties is preserved
            let val = d[k];
            let col = z.column(k);
            for j in (i..k).rev() {
                d[j + 1] = d[j];
                let cj = z.column(j);
                z.set_column(j + 1, &cj);
            }
            d[i] = val;
            z.set_column(i, &col);
        }
    }
}
